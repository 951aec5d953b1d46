#include <hypercolor/reduction.hpp>
#include <hypercolor/verify.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace hypercolor
{
    auto codegree_threshold(std::size_t delta) -> std::size_t
    {
        auto t = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(delta), 0.6) - 1e-12));
        return std::max<std::size_t>(2, t);
    }

    auto codegree_reduce(const Hypergraph & h, std::size_t delta) -> Reduction
    {
        auto before = h.profile();
        if (delta < before.delta3)
            throw InputError("delta = " + std::to_string(delta) + " is below the maximum 3-degree "
                    + std::to_string(before.delta3));

        ReductionReport report;
        report.delta = delta;
        report.threshold = codegree_threshold(delta);
        report.profile_before = before;

        std::unordered_set<std::uint64_t> replaced;
        for (auto & [pair, count] : h.codegree_pairs())
            if (count >= report.threshold) {
                report.pairs_replaced.push_back(pair);
                replaced.insert(pair_key(pair[0], pair[1]));
            }

        std::vector<Triple> e3;
        for (auto & t : h.edges3()) {
            if (replaced.contains(pair_key(t[0], t[1])) || replaced.contains(pair_key(t[0], t[2]))
                    || replaced.contains(pair_key(t[1], t[2])))
                ++report.edges3_removed;
            else
                e3.push_back(t);
        }

        std::vector<Pair> e2(h.edges2().begin(), h.edges2().end());
        for (auto & p : report.pairs_replaced)
            if (! h.has_edge2(p[0], p[1])) {
                e2.push_back(p);
                ++report.edges2_added;
            }

        Hypergraph reduced(h.vertex_count(), std::move(e2), std::move(e3));
        report.profile_after = reduced.profile();
        return Reduction{std::move(reduced), std::move(report)};
    }

    auto lift_coloring(const Hypergraph & original, const Hypergraph & reduced, std::span<const Color> coloring) -> bool
    {
        if (original.vertex_count() != reduced.vertex_count())
            throw InputError("lift_coloring: vertex counts differ");
        if (coloring.size() != reduced.vertex_count())
            throw InputError("lift_coloring: coloring has the wrong length");

        if (! is_proper(reduced, coloring))
            return false;
        if (! is_proper(original, coloring))
            throw ContractError("coloring proper on the reduced hypergraph but not on the original");
        return true;
    }
}
