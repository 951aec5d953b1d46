#include <hypercolor/nibble.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace hypercolor
{
    auto link_problem(const NibbleState & state, Vertex u, Color c) -> LinkProblem
    {
        LinkProblem link;
        std::unordered_map<Vertex, std::size_t> local;
        auto id = [&] (Vertex x) {
            auto [it, fresh] = local.try_emplace(x, link.vertices.size());
            if (fresh) {
                link.vertices.push_back(x);
                link.activation.push_back(state.params.theta * state.weight(x, c));
            }
            return it->second;
        };

        for (auto v : state.graphs.neighbours(c, u))
            link.singles.push_back(id(v));
        for (auto i : state.current.incident3(u)) {
            auto & e = state.current.edges3()[i];
            std::array<Vertex, 2> others{};
            std::size_t k = 0;
            for (auto x : e)
                if (x != u)
                    others[k++] = x;
            link.pairs.emplace_back(id(others[0]), id(others[1]));
        }
        return link;
    }

    namespace
    {
        // Pr[the set of activated vertices is independent] over one component given as
        // neighbour bitmasks; branches on a maximum-degree vertex.
        struct IndependentProbability
        {
            const std::vector<std::uint64_t> & nbrs;
            const std::vector<double> & a;
            std::unordered_map<std::uint64_t, double> memo;

            auto operator() (std::uint64_t mask) -> double
            {
                if (mask == 0)
                    return 1;
                if (auto it = memo.find(mask) ; it != memo.end())
                    return it->second;

                int best = -1, best_degree = 0;
                for (auto m = mask ; m ; m &= m - 1) {
                    auto x = std::countr_zero(m);
                    auto d = std::popcount(nbrs[x] & mask);
                    if (d > best_degree) {
                        best = x;
                        best_degree = d;
                    }
                }
                if (best < 0)
                    return 1;

                auto x = static_cast<std::size_t>(best);
                auto rest = mask & ~(std::uint64_t{1} << x);
                double blocked = 1;
                for (auto m = nbrs[x] & mask ; m ; m &= m - 1)
                    blocked *= 1 - a[std::countr_zero(m)];
                auto result = (1 - a[x]) * (*this)(rest) + a[x] * blocked * (*this)(rest & ~nbrs[x]);
                memo.emplace(mask, result);
                return result;
            }
        };

        auto monte_carlo(const std::vector<double> & a, const std::vector<std::size_t> & members,
                const std::vector<std::size_t> & singles, const std::vector<std::pair<std::size_t, std::size_t>> & pairs,
                std::size_t samples, const CounterKey & key, std::size_t stride) -> SurvivalEntry
        {
            std::vector<std::uint8_t> on(a.size(), 0);
            std::size_t good = 0;
            for (std::size_t s = 0 ; s < samples ; ++s) {
                for (auto j : members)
                    on[j] = draw_uniform(key, s * stride + j) < a[j];
                bool ok = true;
                for (auto j : singles)
                    if (on[j]) {
                        ok = false;
                        break;
                    }
                if (ok)
                    for (auto & [x, y] : pairs)
                        if (on[x] && on[y]) {
                            ok = false;
                            break;
                        }
                good += ok;
            }
            SurvivalEntry e;
            e.source = SurvivalSource::monte_carlo;
            e.samples = samples;
            e.q = samples ? static_cast<double>(good) / samples : 1;
            e.standard_error = samples ? std::sqrt(e.q * (1 - e.q) / samples) : 0;
            return e;
        }
    }

    auto solve_link(const LinkProblem & link, SurvivalMode mode, std::size_t component_limit,
            std::size_t mc_samples, const CounterKey & mc_key) -> SurvivalEntry
    {
        const auto & a = link.activation;
        auto size = a.size();

        if (mode == SurvivalMode::lower_bound) {
            double loss = 0;
            for (auto s : link.singles)
                loss += a[s];
            for (auto & [x, y] : link.pairs)
                loss += a[x] * a[y];
            return SurvivalEntry{std::clamp(1 - loss, 0.0, 1.0), SurvivalSource::lower_bound, 0, 0};
        }

        if (mode == SurvivalMode::monte_carlo) {
            std::vector<std::size_t> all(size);
            for (std::size_t j = 0 ; j < size ; ++j)
                all[j] = j;
            return monte_carlo(a, all, link.singles, link.pairs, mc_samples, mc_key, size);
        }

        component_limit = std::min<std::size_t>(component_limit, 62);

        SurvivalEntry result{1, SurvivalSource::exact, 0, 0};
        std::vector<std::uint8_t> blocked(size, 0);
        for (auto s : link.singles) {
            if (! blocked[s])
                result.q *= 1 - a[s];
            blocked[s] = 1;
        }

        // a pair through a blocked or never-activated vertex can no longer fire
        std::vector<std::pair<std::size_t, std::size_t>> live;
        for (auto [x, y] : link.pairs) {
            if (blocked[x] || blocked[y] || a[x] <= 0 || a[y] <= 0)
                continue;
            if (x > y)
                std::swap(x, y);
            live.emplace_back(x, y);
        }
        std::sort(live.begin(), live.end());
        live.erase(std::unique(live.begin(), live.end()), live.end());

        std::vector<std::vector<std::size_t>> adj(size);
        for (auto & [x, y] : live) {
            adj[x].push_back(y);
            adj[y].push_back(x);
        }

        std::vector<int> component(size, -1);
        double relative_variance = 0;
        for (std::size_t start = 0 ; start < size ; ++start) {
            if (adj[start].empty() || component[start] >= 0)
                continue;
            std::vector<std::size_t> members{start};
            component[start] = static_cast<int>(start);
            for (std::size_t k = 0 ; k < members.size() ; ++k)
                for (auto y : adj[members[k]])
                    if (component[y] < 0) {
                        component[y] = static_cast<int>(start);
                        members.push_back(y);
                    }
            std::sort(members.begin(), members.end());

            if (members.size() <= component_limit) {
                std::vector<std::uint64_t> nbrs(members.size(), 0);
                std::vector<double> local_a(members.size());
                for (std::size_t i = 0 ; i < members.size() ; ++i) {
                    local_a[i] = a[members[i]];
                    for (auto y : adj[members[i]]) {
                        auto j = std::lower_bound(members.begin(), members.end(), y) - members.begin();
                        nbrs[i] |= std::uint64_t{1} << j;
                    }
                }
                IndependentProbability solve{nbrs, local_a, {}};
                auto full = members.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << members.size()) - 1;
                result.q *= solve(full);
            }
            else {
                std::vector<std::pair<std::size_t, std::size_t>> comp_pairs;
                for (auto & p : live)
                    if (component[p.first] == static_cast<int>(start))
                        comp_pairs.push_back(p);
                auto est = monte_carlo(a, members, {}, comp_pairs, mc_samples, mc_key, size);
                result.q *= est.q;
                result.source = SurvivalSource::monte_carlo;
                result.samples = std::max(result.samples, est.samples);
                if (est.q > 0)
                    relative_variance += (est.standard_error / est.q) * (est.standard_error / est.q);
            }
        }
        if (result.source == SurvivalSource::monte_carlo)
            result.standard_error = result.q * std::sqrt(relative_variance);
        result.q = std::clamp(result.q, 0.0, 1.0);
        return result;
    }

    auto survival_prob(const NibbleState & state, Vertex u, Color c, SurvivalMode mode, std::uint64_t seed) -> SurvivalEntry
    {
        if (u >= state.vertex_count() || c >= state.palette)
            throw InputError("survival_prob: cell out of range");
        if (state.is_frozen(u, c))
            throw ContractError("survival_prob: color " + std::to_string(c) + " is frozen at vertex " + std::to_string(u));
        CounterKey key{seed, state.iteration, Stream::survival_mc, u, c};
        return solve_link(link_problem(state, u, c), mode, state.options.exact_component_limit,
                state.options.mc_samples, key);
    }

    auto survival_table(const NibbleState & state, std::uint64_t seed) -> SurvivalTable
    {
        SurvivalTable table;
        table.palette = state.palette;
        table.entries.assign(state.vertex_count() * state.palette, SurvivalEntry{});
        parallel_for(state.uncolored.size(), state.options.workers, [&] (std::size_t i) {
            auto u = state.uncolored[i];
            for (Color c = 0 ; c < state.palette ; ++c)
                if (state.weight(u, c) > 0 && ! state.is_frozen(u, c))
                    table.entries[state.cell(u, c)] = survival_prob(state, u, c, state.options.q_mode, seed);
        });
        return table;
    }
}
