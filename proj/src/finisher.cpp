#include <hypercolor/finisher.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace hypercolor
{
    auto NormalizedDistribution::position(Vertex u) const -> std::optional<std::size_t>
    {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), u);
        if (it == vertices.end() || *it != u)
            return std::nullopt;
        return static_cast<std::size_t>(it - vertices.begin());
    }

    auto NormalizedDistribution::prob(Vertex u, Color c) const -> double
    {
        auto i = position(u);
        if (! i)
            return 0;
        auto & s = support[*i];
        auto it = std::lower_bound(s.begin(), s.end(), c);
        if (it == s.end() || *it != c)
            return 0;
        return probability[*i][it - s.begin()];
    }

    auto normalize(const NibbleState & state, double floor) -> NormalizedDistribution
    {
        NormalizedDistribution d;
        d.vertices = state.uncolored;
        auto k = d.vertices.size();
        d.support.resize(k);
        d.probability.resize(k);
        d.mass.resize(k);
        for (std::size_t i = 0 ; i < k ; ++i) {
            auto u = d.vertices[i];
            double mass = 0;
            for (auto c : state.lists.lists[u])
                if (! state.is_frozen(u, c) && state.weight(u, c) > 0)
                    mass += state.weight(u, c);
            d.mass[i] = mass;
            if (mass < floor) {
                d.starved.push_back(u);
                continue;
            }
            for (auto c : state.lists.lists[u])
                if (! state.is_frozen(u, c) && state.weight(u, c) > 0) {
                    d.support[i].push_back(c);
                    d.probability[i].push_back(state.weight(u, c) / mass);
                }
        }
        return d;
    }

    auto to_string(const BadEvent & e) -> std::string
    {
        std::string s = e.kind == BadEvent::Kind::A ? "A(" : "B(";
        for (auto x : e.members())
            s += std::to_string(x) + (x == e.members().back() ? "" : ",");
        if (e.kind == BadEvent::Kind::B)
            s += ";" + std::to_string(e.color);
        return s + ")";
    }

    namespace
    {
        auto events_at(const NibbleState & state, std::span<const Color> assignment, Vertex x, std::set<BadEvent> & out) -> void
        {
            auto c = assignment[x];
            if (c == uncolored)
                return;
            for (auto k : state.current.incident3(x)) {
                auto & e = state.current.edges3()[k];
                if (assignment[e[0]] == c && assignment[e[1]] == c && assignment[e[2]] == c)
                    out.insert(BadEvent{BadEvent::Kind::A, {e[0], e[1], e[2]}, c});
            }
            if (c < state.palette)
                for (auto v : state.graphs.neighbours(c, x))
                    if (assignment[v] == c)
                        out.insert(BadEvent{BadEvent::Kind::B, {std::min(x, v), std::max(x, v), Edge::pad}, c});
        }

        auto draw(const NormalizedDistribution & dist, std::size_t i, std::uint64_t seed, std::uint64_t counter) -> Color
        {
            auto & probs = dist.probability[i];
            auto r = draw_uniform(CounterKey{seed, 0, Stream::finisher, dist.vertices[i], 0}, counter);
            double acc = 0;
            for (std::size_t j = 0 ; j < probs.size() ; ++j) {
                acc += probs[j];
                if (r < acc)
                    return dist.support[i][j];
            }
            return dist.support[i].back();
        }
    }

    auto find_bad_events(const NibbleState & state, std::span<const Color> assignment) -> std::vector<BadEvent>
    {
        if (assignment.size() != state.vertex_count())
            throw InputError("find_bad_events: assignment has the wrong length");
        std::set<BadEvent> found;
        for (auto u : state.uncolored)
            events_at(state, assignment, u, found);
        return {found.begin(), found.end()};
    }

    auto to_string(FinishStatus status) -> std::string
    {
        switch (status) {
            case FinishStatus::success: return "success";
            case FinishStatus::fallback_needed: return "fallback_needed";
            case FinishStatus::infeasible: return "infeasible";
            case FinishStatus::report_only: return "report_only";
        }
        return "?";
    }

    auto resample_until_clear(const NibbleState & state, const NormalizedDistribution & dist, std::uint64_t seed,
            std::size_t budget) -> ResampleResult
    {
        if (budget == 0)
            throw InputError("resample budget must be at least 1");

        ResampleResult result;
        result.coloring = state.coloring;
        if (! dist.starved.empty())
            return result;

        std::vector<std::uint64_t> draws(dist.vertices.size(), 0);
        for (std::size_t i = 0 ; i < dist.vertices.size() ; ++i)
            result.coloring[dist.vertices[i]] = draw(dist, i, seed, draws[i]++);

        std::set<BadEvent> bad;
        for (auto u : dist.vertices)
            events_at(state, result.coloring, u, bad);
        result.initial_bad_events = bad.size();

        while (! bad.empty()) {
            if (result.resamples == budget)
                return result;
            auto event = *bad.begin();
            std::set<BadEvent> stale;
            for (auto x : event.members())
                events_at(state, result.coloring, x, stale);
            for (auto & e : stale)
                bad.erase(e);
            for (auto x : event.members()) {
                auto i = *dist.position(x);
                result.coloring[x] = draw(dist, i, seed, draws[i]++);
            }
            for (auto x : event.members())
                events_at(state, result.coloring, x, bad);
            ++result.resamples;
        }
        result.status = FinishStatus::success;
        return result;
    }

    auto lll_condition_report(const NibbleState & state, const NormalizedDistribution & dist) -> LllReport
    {
        LllReport report;
        report.starved = dist.starved.size();

        // probability vectors per residual vertex, dense over the palette
        std::vector<std::vector<double>> dense(dist.vertices.size(), std::vector<double>(state.palette, 0));
        for (std::size_t i = 0 ; i < dist.vertices.size() ; ++i)
            for (std::size_t j = 0 ; j < dist.support[i].size() ; ++j)
                dense[i][dist.support[i][j]] = dist.probability[i][j];
        auto p = [&] (Vertex u) -> const std::vector<double> & { return dense[*dist.position(u)]; };

        struct Weighted
        {
            std::array<Vertex, 3> vertices;
            std::size_t size;
            double probability;
        };
        std::vector<Weighted> events;
        for (auto & e : state.current.edges3()) {
            auto & a = p(e[0]);
            auto & b = p(e[1]);
            auto & c = p(e[2]);
            double pr = 0;
            for (Color k = 0 ; k < state.palette ; ++k)
                pr += a[k] * b[k] * c[k];
            ++report.events_a;
            if (pr > 0)
                events.push_back(Weighted{{e[0], e[1], e[2]}, 3, pr});
        }
        for (Color c = 0 ; c < state.palette ; ++c)
            for (auto & e : state.graphs.edges(c)) {
                ++report.events_b;
                auto pr = p(e[0])[c] * p(e[1])[c];
                if (pr > 0)
                    events.push_back(Weighted{{e[0], e[1], Edge::pad}, 2, pr});
            }

        std::vector<std::vector<std::uint32_t>> at(state.vertex_count());
        for (std::uint32_t k = 0 ; k < events.size() ; ++k)
            for (std::size_t j = 0 ; j < events[k].size ; ++j)
                at[events[k].vertices[j]].push_back(k);

        std::vector<std::uint32_t> near;
        for (std::uint32_t k = 0 ; k < events.size() ; ++k) {
            auto & e = events[k];
            report.max_probability = std::max(report.max_probability, e.probability);
            near.clear();
            for (std::size_t j = 0 ; j < e.size ; ++j)
                near.insert(near.end(), at[e.vertices[j]].begin(), at[e.vertices[j]].end());
            std::sort(near.begin(), near.end());
            near.erase(std::unique(near.begin(), near.end()), near.end());
            double sum = 0;
            for (auto f : near)
                if (f != k)
                    sum += events[f].probability;
            report.max_neighbourhood = std::max(report.max_neighbourhood, sum);
        }
        report.probability_condition = report.max_probability <= 0.25;
        report.neighbourhood_condition = report.max_neighbourhood <= 0.25;
        return report;
    }

    auto greedy_fallback(const NibbleState & state, const NormalizedDistribution & dist) -> FallbackResult
    {
        FallbackResult result;
        result.coloring = state.coloring;
        auto & h = state.original;

        std::vector<std::pair<std::size_t, Vertex>> order;
        for (auto u : state.uncolored) {
            std::size_t degree = 0;
            for (auto k : h.incident3(u)) {
                auto & e = h.edges3()[k];
                degree += std::all_of(e.begin(), e.end(), [&] (Vertex x) { return x == u || state.is_uncolored[x]; });
            }
            for (auto v : h.neighbours2(u))
                degree += state.is_uncolored[v];
            order.emplace_back(degree, u);
        }
        std::sort(order.begin(), order.end(), [] (auto & a, auto & b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });

        auto & col = result.coloring;
        auto blocked = [&] (Vertex u, Color c) {
            for (auto v : h.neighbours2(u))
                if (col[v] == c)
                    return true;
            for (auto k : h.incident3(u)) {
                auto & e = h.edges3()[k];
                Vertex v = e[0] == u ? e[1] : e[0];
                Vertex w = e[2] == u ? e[1] : e[2];
                if (col[v] == c && col[w] == c)
                    return true;
            }
            return false;
        };

        for (auto & [degree, u] : order) {
            std::vector<Color> candidates;
            if (auto i = dist.position(u))
                candidates = dist.support[*i];
            for (auto c : state.lists.lists[u])
                if (std::find(candidates.begin(), candidates.end(), c) == candidates.end())
                    candidates.push_back(c);
            auto pick = std::find_if(candidates.begin(), candidates.end(), [&] (Color c) { return ! blocked(u, c); });
            if (pick == candidates.end()) {
                result.status = FinishStatus::infeasible;
                result.witness = u;
                return result;
            }
            col[u] = *pick;
        }
        return result;
    }

    auto to_string(FinisherMode mode) -> std::string
    {
        switch (mode) {
            case FinisherMode::mt: return "mt";
            case FinisherMode::greedy: return "greedy";
            case FinisherMode::report_only: return "report-only";
        }
        return "?";
    }

    auto parse_finisher_mode(const std::string & text) -> FinisherMode
    {
        if (text == "mt")
            return FinisherMode::mt;
        if (text == "greedy")
            return FinisherMode::greedy;
        if (text == "report-only" || text == "report_only")
            return FinisherMode::report_only;
        throw InputError("unknown finisher '" + text + "' (expected mt, greedy or report-only)");
    }

    auto finish(const NibbleState & state, std::uint64_t seed, const FinishOptions & options) -> FinishResult
    {
        FinishResult result;
        auto dist = normalize(state, options.starvation_floor);
        result.report = lll_condition_report(state, dist);
        result.residual = dist.vertices.size();
        result.starved = dist.starved.size();
        result.coloring = state.coloring;

        if (options.mode == FinisherMode::report_only)
            return result;

        if (options.mode == FinisherMode::mt) {
            auto mt = resample_until_clear(state, dist, seed, options.budget);
            result.resamples = mt.resamples;
            if (mt.status == FinishStatus::success) {
                result.status = FinishStatus::success;
                result.coloring = std::move(mt.coloring);
                return result;
            }
        }

        auto fallback = greedy_fallback(state, dist);
        result.used_fallback = true;
        result.status = fallback.status;
        result.coloring = std::move(fallback.coloring);
        result.witness = fallback.witness;
        return result;
    }
}
