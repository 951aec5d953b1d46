#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hypercolor
{
    /// HYPERCOLOR_WORKERS, or 1 when unset or invalid.
    inline auto default_workers() -> unsigned
    {
        if (auto * env = std::getenv("HYPERCOLOR_WORKERS")) {
            try {
                auto v = std::stoul(env);
                if (v > 0)
                    return static_cast<unsigned>(v);
            }
            catch (const std::exception &) {
            }
        }
        return 1;
    }

    /// Runs body(i) for i in [0, count) over contiguous blocks. Each index must write
    /// only its own output slot; exceptions are rethrown on the calling thread.
    template <typename Body_>
    auto parallel_for(std::size_t count, unsigned workers, Body_ && body) -> void
    {
        workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
        if (workers == 1) {
            for (std::size_t i = 0 ; i < count ; ++i)
                body(i);
            return;
        }

        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> threads;
        auto block = (count + workers - 1) / workers;
        for (unsigned w = 0 ; w < workers ; ++w) {
            auto begin = w * block, end = std::min(count, begin + block);
            if (begin >= end)
                break;
            threads.emplace_back([&, begin, end] {
                try {
                    for (auto i = begin ; i < end ; ++i)
                        body(i);
                }
                catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (! failure)
                        failure = std::current_exception();
                }
            });
        }
        for (auto & t : threads)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }
}
