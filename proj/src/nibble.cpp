#include <hypercolor/nibble.hpp>
#include <hypercolor/verify.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hypercolor
{
    namespace
    {
        auto describe_witness(const TriangleWitness & t) -> std::string
        {
            return "input contains a triangle (" + to_string(t.kind) + ") on vertices " + std::to_string(t.vertices[0]) + " "
                + std::to_string(t.vertices[1]) + " " + std::to_string(t.vertices[2]);
        }

        auto entropy(std::span<const double> row) -> double
        {
            double h = 0;
            for (auto p : row)
                if (p > 0)
                    h -= p * std::log(p);
            return h;
        }

        auto within(double measured, double bound) -> bool
        {
            return measured <= bound + 1e-9 * std::max(1.0, std::abs(bound));
        }
    }

    TriangleError::TriangleError(TriangleWitness witness) : InputError(describe_witness(witness)), _witness(witness) {}

    auto to_string(SurvivalMode mode) -> std::string
    {
        switch (mode) {
            case SurvivalMode::exact: return "exact";
            case SurvivalMode::lower_bound: return "bound";
            case SurvivalMode::monte_carlo: return "mc";
        }
        return "?";
    }

    auto parse_survival_mode(const std::string & text) -> SurvivalMode
    {
        if (text == "exact")
            return SurvivalMode::exact;
        if (text == "bound" || text == "lower_bound")
            return SurvivalMode::lower_bound;
        if (text == "mc" || text == "monte_carlo")
            return SurvivalMode::monte_carlo;
        throw InputError("unknown survival mode '" + text + "' (expected exact, bound or mc)");
    }

    auto NibbleParams::from(const Parameters & p) -> NibbleParams
    {
        NibbleParams n;
        n.colors = p.colors();
        n.iterations = p.iteration_count();
        n.theta = static_cast<double>(p.theta);
        n.p_hat = p.p_hat();
        n.epsilon = static_cast<double>(p.epsilon);
        n.omega = static_cast<double>(p.omega);
        n.omega1 = static_cast<double>(p.omega1);
        n.omega2 = static_cast<double>(std::exp(p.log_omega2));
        n.omega6 = static_cast<double>(std::exp(p.log_omega6));
        n.delta = static_cast<double>(std::exp(p.log_delta));
        return n;
    }

    ColorGraphs::ColorGraphs(std::size_t palette, std::size_t n) : _n(n), _adj(palette) {}

    auto ColorGraphs::neighbours(Color c, Vertex u) const -> std::span<const Vertex>
    {
        auto & rows = _adj.at(c);
        if (rows.empty())
            return {};
        return rows.at(u);
    }

    auto ColorGraphs::contains(Color c, Vertex u, Vertex v) const -> bool
    {
        auto row = neighbours(c, u);
        return std::binary_search(row.begin(), row.end(), v);
    }

    auto ColorGraphs::add(Color c, Vertex u, Vertex v) -> bool
    {
        if (u == v || u >= _n || v >= _n)
            throw InputError("ColorGraphs::add: bad edge");
        auto & rows = _adj.at(c);
        if (rows.empty())
            rows.resize(_n);
        auto & ru = rows[u];
        auto it = std::lower_bound(ru.begin(), ru.end(), v);
        if (it != ru.end() && *it == v)
            return false;
        ru.insert(it, v);
        auto & rv = rows[v];
        rv.insert(std::lower_bound(rv.begin(), rv.end(), u), u);
        return true;
    }

    auto ColorGraphs::remove_vertex(Vertex u) -> void
    {
        for (auto & rows : _adj) {
            if (rows.empty() || rows[u].empty())
                continue;
            for (auto v : rows[u]) {
                auto & rv = rows[v];
                rv.erase(std::lower_bound(rv.begin(), rv.end(), u));
            }
            rows[u].clear();
        }
    }

    auto ColorGraphs::edges(Color c) const -> std::vector<Pair>
    {
        std::vector<Pair> out;
        auto & rows = _adj.at(c);
        for (Vertex u = 0 ; u < rows.size() ; ++u)
            for (auto v : rows[u])
                if (u < v)
                    out.push_back({u, v});
        return out;
    }

    auto ColorGraphs::edge_count(Color c) const -> std::size_t
    {
        std::size_t twice = 0;
        for (auto & row : _adj.at(c))
            twice += row.size();
        return twice / 2;
    }

    auto init(const Hypergraph & h, const ListAssignment & lists, const NibbleParams & params,
            const EngineOptions & options) -> NibbleState
    {
        auto n = h.vertex_count();
        if (lists.vertex_count() != n)
            throw InputError("list assignment covers " + std::to_string(lists.vertex_count()) + " vertices, hypergraph has "
                + std::to_string(n));
        if (params.colors == 0)
            throw ParameterError("color count must be positive");
        for (Vertex u = 0 ; u < n ; ++u) {
            if (lists.lists[u].size() != params.colors)
                throw InputError("vertex " + std::to_string(u) + " has " + std::to_string(lists.lists[u].size())
                    + " colors, expected " + std::to_string(params.colors));
            for (auto c : lists.lists[u])
                if (c >= lists.palette)
                    throw InputError("vertex " + std::to_string(u) + " lists color outside the palette");
        }
        auto start = 1.0 / static_cast<double>(params.colors);
        if (! (params.p_hat > 0) || params.p_hat > 1)
            throw ParameterError("p-hat must lie in (0,1]");
        if (start > params.p_hat * (1 + 1e-12))
            throw ParameterError("1/C exceeds p-hat, so the capped-branch coin probability would exceed 1");
        if (! (params.theta > 0))
            throw ParameterError("theta must be positive");

        if (options.require_triangle_free)
            if (auto found = find_triangles(h, 1) ; ! found.empty())
                throw TriangleError(found.front());

        NibbleState s;
        s.params = params;
        s.options = options;
        s.original = h;
        s.current = h.without_edges2();
        s.palette = lists.palette;
        s.lists = lists;
        s.graphs = ColorGraphs(s.palette, n);
        for (auto & e : h.edges2())
            for (Color c = 0 ; c < s.palette ; ++c)
                s.graphs.add(c, e[0], e[1]);

        s.weights.assign(n * s.palette, 0);
        s.frozen.assign(n * s.palette, 0);
        for (Vertex u = 0 ; u < n ; ++u)
            for (auto c : lists.lists[u])
                s.weights[s.cell(u, c)] = start;
        s.is_uncolored.assign(n, 1);
        s.uncolored.resize(n);
        std::iota(s.uncolored.begin(), s.uncolored.end(), Vertex{0});
        s.coloring.assign(n, uncolored);
        s.initial_entropy.resize(n);
        for (Vertex u = 0 ; u < n ; ++u)
            s.initial_entropy[u] = entropy(std::span<const double>(s.weights).subspan(s.cell(u, 0), s.palette));
        return s;
    }

    auto ActivationSample::count() const -> std::size_t
    {
        std::size_t k = 0;
        for (auto & a : active)
            k += a.size();
        return k;
    }

    auto sample_activations(const NibbleState & state, std::uint64_t seed) -> ActivationSample
    {
        ActivationSample sample;
        sample.seed = seed;
        sample.iteration = state.iteration;
        sample.palette = state.palette;
        sample.active.resize(state.vertex_count());
        sample.mask.assign(state.vertex_count() * state.palette, 0);

        parallel_for(state.uncolored.size(), state.options.workers, [&] (std::size_t i) {
            auto u = state.uncolored[i];
            for (Color c = 0 ; c < state.palette ; ++c) {
                auto p = state.weight(u, c);
                if (p <= 0)
                    continue;
                auto a = state.params.theta * p;
                if (a > 1 + 1e-12)
                    throw ParameterError("activation probability theta*p exceeds 1 at vertex " + std::to_string(u));
                CounterKey key{seed, state.iteration, Stream::activation, u, c};
                if (draw_uniform(key) < a) {
                    sample.mask[state.cell(u, c)] = 1;
                    sample.active[u].push_back(c);
                }
            }
        });
        return sample;
    }

    auto LostColors::colors(Vertex u) const -> std::vector<Color>
    {
        std::vector<Color> out;
        for (Color c = 0 ; c < palette ; ++c)
            if (contains(u, c))
                out.push_back(c);
        return out;
    }

    auto lost_colors(const NibbleState & state, const ActivationSample & sample) -> LostColors
    {
        LostColors lost;
        lost.palette = state.palette;
        lost.mask.assign(state.vertex_count() * state.palette, 0);

        parallel_for(state.uncolored.size(), state.options.workers, [&] (std::size_t i) {
            auto u = state.uncolored[i];
            auto * row = lost.mask.data() + state.cell(u, 0);
            for (auto k : state.current.incident3(u)) {
                auto & e = state.current.edges3()[k];
                Vertex v = e[0] == u ? e[1] : e[0];
                Vertex w = e[2] == u ? e[1] : e[2];
                auto & av = sample.active[v];
                auto & aw = sample.active[w];
                // both lists ascending
                for (std::size_t x = 0, y = 0 ; x < av.size() && y < aw.size() ;) {
                    if (av[x] < aw[y])
                        ++x;
                    else if (aw[y] < av[x])
                        ++y;
                    else {
                        row[av[x]] = 1;
                        ++x;
                        ++y;
                    }
                }
            }
            for (Color c = 0 ; c < state.palette ; ++c) {
                if (row[c])
                    continue;
                for (auto v : state.graphs.neighbours(c, u))
                    if (sample.activated(v, c)) {
                        row[c] = 1;
                        break;
                    }
            }
        });
        return lost;
    }

    auto update_weights(const NibbleState & state, const ActivationSample & sample, const LostColors & lost,
            const SurvivalTable & survival) -> WeightUpdate
    {
        WeightUpdate out;
        out.weights = state.weights;
        out.frozen = state.frozen;
        auto p_hat = state.params.p_hat;

        std::vector<std::vector<Color>> heads(state.uncolored.size());
        std::vector<std::size_t> proportional(state.uncolored.size(), 0), capped(state.uncolored.size(), 0);

        parallel_for(state.uncolored.size(), state.options.workers, [&] (std::size_t i) {
            auto u = state.uncolored[i];
            for (Color c = 0 ; c < state.palette ; ++c) {
                auto cell = state.cell(u, c);
                auto p = state.weights[cell];
                if (p <= 0)
                    continue;
                bool frozen = state.frozen[cell] != 0;
                if (! frozen) {
                    auto & entry = survival.entries.at(cell);
                    if (entry.source == SurvivalSource::not_computed)
                        throw ContractError("update_weights: survival probability missing for vertex " + std::to_string(u));
                    if (entry.q > 0 && p / entry.q < p_hat) {
                        out.weights[cell] = lost.contains(u, c) ? 0 : p / entry.q;
                        ++proportional[i];
                        continue;
                    }
                }
                ++capped[i];
                CounterKey key{sample.seed, state.iteration, Stream::eta, u, c};
                if (draw_uniform(key) < std::min(1.0, p / p_hat)) {
                    out.weights[cell] = p_hat;
                    out.frozen[cell] = 1;
                    heads[i].push_back(c);
                }
                else {
                    out.weights[cell] = 0;
                    out.frozen[cell] = 0;
                }
            }
        });

        for (std::size_t i = 0 ; i < state.uncolored.size() ; ++i) {
            for (auto c : heads[i])
                out.eta_heads.emplace_back(state.uncolored[i], c);
            out.proportional_cells += proportional[i];
            out.capped_cells += capped[i];
        }
        return out;
    }

    auto assign_colors(const NibbleState & state, const ActivationSample & sample, const LostColors & lost)
        -> std::vector<std::pair<Vertex, Color>>
    {
        std::vector<std::pair<Vertex, Color>> out;
        for (auto u : state.uncolored)
            for (auto c : sample.active[u])
                if (! state.is_frozen(u, c) && ! lost.contains(u, c)) {
                    out.emplace_back(u, c);
                    break;
                }
        return out;
    }

    auto update_color_graphs(const NibbleState & state, std::span<const std::pair<Vertex, Color>> newly_colored) -> ColorGraphs
    {
        auto graphs = state.graphs;
        std::vector<std::uint8_t> leaving(state.vertex_count(), 0);
        for (auto & [w, c] : newly_colored)
            leaving[w] = 1;

        for (auto & [w, c] : newly_colored)
            for (auto k : state.current.incident3(w)) {
                auto & e = state.current.edges3()[k];
                Vertex u = e[0] == w ? e[1] : e[0];
                Vertex v = e[2] == w ? e[1] : e[2];
                if (! leaving[u] && ! leaving[v])
                    graphs.add(c, u, v);
            }
        for (auto & [w, c] : newly_colored)
            graphs.remove_vertex(w);
        return graphs;
    }

    auto Aggregate::of(std::span<const double> values) -> Aggregate
    {
        if (values.empty())
            return {};
        auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        return Aggregate{*lo, *hi, std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size())};
    }

    auto measure(const NibbleState & state) -> IterationStats
    {
        IterationStats st;
        st.iteration = state.iteration;
        st.uncolored_before = state.uncolored.size();
        st.vertices = state.uncolored;

        auto count = state.uncolored.size();
        st.weight_sum.resize(count);
        st.e_u.resize(count);
        st.f_u.resize(count);
        st.h_u.resize(count);
        st.degree3.resize(count);
        st.max_color_degree.resize(count);
        std::vector<double> drop(count), e_max(count, 0);

        parallel_for(count, state.options.workers, [&] (std::size_t i) {
            auto u = state.uncolored[i];
            auto row = std::span<const double>(state.weights).subspan(state.cell(u, 0), state.palette);
            st.weight_sum[i] = std::accumulate(row.begin(), row.end(), 0.0);
            st.h_u[i] = entropy(row);
            drop[i] = state.initial_entropy[u] - st.h_u[i];

            double f = 0, color_degree = 0;
            for (Color c = 0 ; c < state.palette ; ++c) {
                auto nbrs = state.graphs.neighbours(c, u);
                color_degree = std::max(color_degree, static_cast<double>(nbrs.size()));
                for (auto v : nbrs)
                    f += row[c] * state.weight(v, c);
            }
            st.f_u[i] = f;
            st.max_color_degree[i] = color_degree;

            double e = 0;
            for (auto k : state.current.incident3(u)) {
                auto & t = state.current.edges3()[k];
                double euvw = 0;
                for (Color c = 0 ; c < state.palette ; ++c)
                    euvw += state.weight(t[0], c) * state.weight(t[1], c) * state.weight(t[2], c);
                e += euvw;
                e_max[i] = std::max(e_max[i], euvw);
            }
            st.e_u[i] = e;
            st.degree3[i] = static_cast<double>(state.current.degree3(u));
        });

        st.weight_agg = Aggregate::of(st.weight_sum);
        st.e_agg = Aggregate::of(st.e_u);
        st.f_agg = Aggregate::of(st.f_u);
        st.h_agg = Aggregate::of(st.h_u);
        st.degree3_agg = Aggregate::of(st.degree3);
        st.max_e_uvw = count ? *std::max_element(e_max.begin(), e_max.end()) : 0;
        st.color_degree_max = count ? *std::max_element(st.max_color_degree.begin(), st.max_color_degree.end()) : 0;
        for (Color c = 0 ; c < state.palette ; ++c)
            st.color_graph_edges += state.graphs.edge_count(c);

        auto & pr = state.params;
        auto i = static_cast<double>(state.iteration);
        double weight_drift = 0;
        for (auto w : st.weight_sum)
            weight_drift = std::max(weight_drift, std::abs(1 - w));
        double entropy_drop = count ? *std::max_element(drop.begin(), drop.end()) : 0;
        double decay4 = 0;
        for (std::size_t j = 0 ; j < state.iteration ; ++j)
            decay4 += std::pow(1 - pr.theta / 4, static_cast<double>(j));

        auto add = [&] (std::string name, double measured, double bound) {
            st.envelopes.push_back(EnvelopeCheck{std::move(name), measured, bound, within(measured, bound)});
        };
        add("P1", weight_drift, pr.omega1 > 0 ? i / pr.omega1 : 0);
        add("P2", st.e_agg.max, std::pow(1 - pr.theta / 3, i) * pr.omega + (pr.omega2 > 0 ? i / pr.omega2 : 0));
        add("P3", st.f_agg.max, 8 * std::pow(1 - pr.theta / 4, i) * pr.omega);
        add("P4", entropy_drop, 21 * pr.epsilon * decay4);
        add("P5", st.degree3_agg.max, std::pow(1 - pr.theta / 3, i) * pr.delta);
        add("P6", st.color_degree_max, 3 * pr.omega6 * i * pr.theta * pr.delta * pr.p_hat);
        return st;
    }

    auto iterate(const NibbleState & state, std::uint64_t seed) -> IterationResult
    {
        auto stats = measure(state);
        auto sample = sample_activations(state, seed);
        auto lost = lost_colors(state, sample);
        auto survival = survival_table(state, seed);
        auto update = update_weights(state, sample, lost, survival);
        auto newly = assign_colors(state, sample, lost);

        NibbleState next;
        next.iteration = state.iteration + 1;
        next.params = state.params;
        next.options = state.options;
        next.original = state.original;
        next.lists = state.lists;
        next.palette = state.palette;
        next.initial_entropy = state.initial_entropy;
        next.graphs = update_color_graphs(state, newly);
        next.weights = std::move(update.weights);
        next.frozen = std::move(update.frozen);
        next.coloring = state.coloring;
        next.is_uncolored = state.is_uncolored;
        for (auto & [u, c] : newly) {
            next.coloring[u] = c;
            next.is_uncolored[u] = 0;
        }
        for (auto u : state.uncolored)
            if (next.is_uncolored[u])
                next.uncolored.push_back(u);
        next.current = state.current.induce(next.uncolored);

        stats.activations = sample.count();
        stats.proportional_cells = update.proportional_cells;
        stats.capped_cells = update.capped_cells;
        stats.colored_this_round = newly.size();
        stats.uncolored_after = next.uncolored.size();
        for (auto u : next.uncolored)
            for (Color c = 0 ; c < next.palette ; ++c)
                stats.frozen_cells += next.is_frozen(u, c);
        stats.starved = starved_vertices(next).size();
        for (auto & e : survival.entries) {
            switch (e.source) {
                case SurvivalSource::exact: ++stats.survival_exact; break;
                case SurvivalSource::lower_bound: ++stats.survival_bound; break;
                case SurvivalSource::monte_carlo: ++stats.survival_mc; break;
                default: break;
            }
            stats.max_survival_stderr = std::max(stats.max_survival_stderr, e.standard_error);
        }

        auto verdict = verify_partial_coloring(next.original, next.lists, next.coloring);
        stats.proper = verdict.ok();
        if (! stats.proper)
            stats.violations.push_back(verdict.describe());
        if (next.options.debug_invariants) {
            auto found = check_invariants(next, true);
            stats.triangle_checked = true;
            stats.triangle_free = std::none_of(found.begin(), found.end(),
                    [] (const std::string & v) { return v.starts_with("triangle"); });
            stats.violations.insert(stats.violations.end(), found.begin(), found.end());
        }
        return IterationResult{std::move(next), std::move(stats)};
    }

    auto run(const Hypergraph & h, const ListAssignment & lists, const NibbleParams & params,
            const EngineOptions & options, std::uint64_t seed) -> RunResult
    {
        RunResult result;
        result.state = init(h, lists, params, options);
        for (std::size_t i = 0 ; i < params.iterations && ! result.state.uncolored.empty() ; ++i) {
            auto step = iterate(result.state, seed);
            result.state = std::move(step.state);
            result.trace.push_back(std::move(step.stats));
        }
        result.coloring = result.state.coloring;
        return result;
    }

    auto starved_vertices(const NibbleState & state, double floor) -> std::vector<Vertex>
    {
        std::vector<Vertex> out;
        for (auto u : state.uncolored) {
            double mass = 0;
            for (Color c = 0 ; c < state.palette ; ++c)
                if (! state.is_frozen(u, c))
                    mass += state.weight(u, c);
            if (mass <= floor)
                out.push_back(u);
        }
        return out;
    }

    auto check_invariants(const NibbleState & state, bool triangles) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        auto n = state.vertex_count();

        if (auto v = verify_partial_coloring(state.original, state.lists, state.coloring) ; ! v.ok())
            out.push_back("improper partial coloring: " + v.describe());

        std::vector<Vertex> expected;
        for (Vertex u = 0 ; u < n ; ++u) {
            if ((state.coloring[u] == uncolored) != (state.is_uncolored[u] != 0))
                out.push_back("uncolored flag disagrees with coloring at vertex " + std::to_string(u));
            if (state.is_uncolored[u])
                expected.push_back(u);
        }
        if (expected != state.uncolored)
            out.push_back("uncolored list out of sync");

        if (! (state.current == state.original.without_edges2().induce(state.uncolored)))
            out.push_back("current hypergraph is not the input induced on the uncolored vertices");

        auto p_hat = state.params.p_hat;
        for (auto u : state.uncolored)
            for (Color c = 0 ; c < state.palette ; ++c) {
                auto p = state.weight(u, c);
                bool frozen = state.is_frozen(u, c);
                if (p < 0 || p > p_hat * (1 + 1e-12))
                    out.push_back("weight out of range at vertex " + std::to_string(u) + " color " + std::to_string(c));
                else if (frozen && p != p_hat)
                    out.push_back("frozen color without weight p-hat at vertex " + std::to_string(u));
                else if (! frozen && state.iteration > 0 && p >= p_hat)
                    out.push_back("weight p-hat without frozen flag at vertex " + std::to_string(u));
            }

        bool shared_checked = false;
        for (Color c = 0 ; c < state.palette ; ++c) {
            auto edges = state.graphs.edges(c);
            for (auto & e : edges)
                if (! state.is_uncolored[e[0]] || ! state.is_uncolored[e[1]])
                    out.push_back("color graph " + std::to_string(c) + " keeps a colored endpoint");
            if (! triangles)
                continue;
            if (edges.empty()) {
                if (shared_checked)
                    continue;
                shared_checked = true;
            }
            PairCoverIndex index(state.current, edges);
            if (auto found = find_triangles(index, 1) ; ! found.empty())
                out.push_back("triangle in H_i + G_" + std::to_string(c) + ": " + describe_witness(found.front()));
        }
        return out;
    }
}
