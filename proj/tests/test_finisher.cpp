#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <hypercolor/finisher.hpp>
#include <hypercolor/verify.hpp>

#include <cmath>
#include <numeric>
#include <random>

using namespace hypercolor;

namespace
{
    auto residual(const Hypergraph & h, std::size_t colors, bool check_triangles = true) -> NibbleState
    {
        NibbleParams p;
        p.colors = colors;
        p.iterations = 0;
        p.theta = 0.5;
        p.p_hat = 1;
        EngineOptions opts;
        opts.require_triangle_free = check_triangles;
        return init(h, ListAssignment::uniform(h.vertex_count(), colors), p, opts);
    }

    auto max_constraint_degree(const Hypergraph & h) -> std::size_t
    {
        std::size_t d = 0;
        for (Vertex u = 0 ; u < h.vertex_count() ; ++u)
            d = std::max(d, h.degree2(u) + h.degree3(u));
        return d;
    }
}

TEST_CASE("normalize: proportional weights, frozen and zero colors dropped")
{
    Hypergraph h(2, {}, {});
    auto s = residual(h, 4);
    s.weights[s.cell(0, 0)] = 0.3;
    s.weights[s.cell(0, 1)] = 0.1;
    s.weights[s.cell(0, 2)] = 0;
    s.weights[s.cell(0, 3)] = 1;
    s.frozen[s.cell(0, 3)] = 1;
    s.weights[s.cell(1, 0)] = 0;
    s.weights[s.cell(1, 1)] = 0;
    s.weights[s.cell(1, 2)] = 0.2;
    s.weights[s.cell(1, 3)] = 0;

    auto d = normalize(s);
    CHECK(d.vertices == std::vector<Vertex>{0, 1});
    CHECK(d.support[0] == std::vector<Color>{0, 1});
    CHECK(d.prob(0, 0) == doctest::Approx(0.75));
    CHECK(d.prob(0, 1) == doctest::Approx(0.25));
    CHECK(d.prob(0, 3) == 0);
    CHECK(d.prob(1, 2) == 1);
    CHECK(d.starved.empty());
    for (auto & row : d.probability)
        CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1).epsilon(1e-12));

    s.weights[s.cell(1, 2)] = 1e-9;
    d = normalize(s);
    CHECK(d.starved == std::vector<Vertex>{1});
    CHECK(d.support[1].empty());
}

TEST_CASE("normalize: mass at least one half bounds p* by twice p")
{
    Hypergraph h(1, {}, {});
    auto s = residual(h, 4);
    s.weights = {0.2, 0.3, 0.5, 0.5};
    s.frozen = {0, 0, 1, 1};
    auto d = normalize(s);
    CHECK(d.mass[0] == doctest::Approx(0.5));
    for (Color c = 0 ; c < 2 ; ++c)
        CHECK(d.prob(0, c) <= 2 * s.weight(0, c) + 1e-15);
}

TEST_CASE("bad events: examples and brute force")
{
    Hypergraph h(4, {{0, 3}}, {{0, 1, 2}});
    auto s = residual(h, 8);
    std::vector<Color> distinct{0, 1, 2, 3};
    CHECK(find_bad_events(s, distinct).empty());

    std::vector<Color> mono{5, 5, 5, 5};
    auto events = find_bad_events(s, mono);
    REQUIRE(events.size() == 2);
    CHECK(events[0].kind == BadEvent::Kind::A);
    CHECK(events[0].color == 5);
    CHECK(events[1].kind == BadEvent::Kind::B);
    CHECK(events[1].members().size() == 2);

    std::mt19937_64 rng(2);
    for (int k = 0 ; k < 50 ; ++k) {
        auto g = oracle::random_hypergraph(rng, 12, 10, 4);
        auto t = residual(g, 3, false);
        std::vector<Color> a(12);
        for (auto & c : a)
            c = rng() % 3;
        CHECK(find_bad_events(t, a).size() == oracle::bad_event_count(t, a));
    }
}

TEST_CASE("lll report: uniform four colors on one 3-edge")
{
    Hypergraph h(3, {}, {{0, 1, 2}});
    auto s = residual(h, 4);
    auto r = lll_condition_report(s, normalize(s));
    CHECK(r.events_a == 1);
    CHECK(r.max_probability == doctest::Approx(1.0 / 16));
    CHECK(r.max_neighbourhood == 0);
    CHECK(r.satisfied());

    Hypergraph none(0, {}, {});
    auto e = residual(none, 4);
    CHECK(lll_condition_report(e, normalize(e)).satisfied());
}

TEST_CASE("lll report: color-graph events")
{
    Hypergraph h(3, {{0, 1}, {1, 2}}, {});
    auto s = residual(h, 2);
    auto r = lll_condition_report(s, normalize(s));
    CHECK(r.events_b == 4);
    CHECK(r.max_probability == doctest::Approx(0.25));
    CHECK(r.probability_condition);
    // B(01,c) meets B(01,c'), B(12,c), B(12,c'): 3/4
    CHECK(r.max_neighbourhood == doctest::Approx(0.75));
    CHECK_FALSE(r.satisfied());
}

TEST_CASE("resample: trivial residuals need no resampling")
{
    Hypergraph h(5, {}, {});
    auto s = residual(h, 3);
    auto r = resample_until_clear(s, normalize(s), 1, 10);
    CHECK(r.status == FinishStatus::success);
    CHECK(r.resamples == 0);

    // disjoint supports on a 3-edge
    Hypergraph t(3, {}, {{0, 1, 2}});
    auto u = residual(t, 3);
    for (Vertex v = 0 ; v < 3 ; ++v)
        for (Color c = 0 ; c < 3 ; ++c)
            u.weights[u.cell(v, c)] = c == v ? 1 : 0;
    auto q = resample_until_clear(u, normalize(u), 1, 10);
    CHECK(q.status == FinishStatus::success);
    CHECK(q.resamples == 0);
    CHECK(q.coloring == std::vector<Color>{0, 1, 2});

    CHECK_THROWS_AS(resample_until_clear(u, normalize(u), 1, 0), InputError);
}

TEST_CASE("resample: forced conflict exhausts the budget")
{
    Hypergraph h(2, {{0, 1}}, {});
    auto s = residual(h, 2);
    for (Vertex v = 0 ; v < 2 ; ++v)
        s.weights[s.cell(v, 1)] = 0;
    auto r = resample_until_clear(s, normalize(s), 1, 100);
    CHECK(r.status == FinishStatus::fallback_needed);
    CHECK(r.initial_bad_events == 1);
}

TEST_CASE("resample: certified residuals succeed and verify")
{
    std::size_t certified = 0;
    for (std::uint64_t seed = 0 ; seed < 40 ; ++seed) {
        auto h = fixture::triangle_free(seed, 30, 3, 3);
        auto s = residual(h, 24);
        auto d = normalize(s);
        if (! lll_condition_report(s, d).satisfied())
            continue;
        ++certified;
        auto r = resample_until_clear(s, d, seed, 10000);
        REQUIRE(r.status == FinishStatus::success);
        CHECK(verify_coloring(h, s.lists, r.coloring).ok());
        for (Vertex u = 0 ; u < 30 ; ++u)
            CHECK(d.prob(u, r.coloring[u]) > 0);
    }
    CHECK(certified > 20);
}

TEST_CASE("greedy fallback: blocked color and empty residual")
{
    Hypergraph h(2, {{0, 1}}, {});
    auto s = residual(h, 2);
    s.coloring[1] = 0;
    s.is_uncolored[1] = 0;
    s.uncolored = {0};
    s.current = s.original.without_edges2().induce(s.uncolored);
    s.graphs.remove_vertex(1);
    auto r = greedy_fallback(s, normalize(s));
    CHECK(r.status == FinishStatus::success);
    CHECK(r.coloring[0] == 1);

    Hypergraph none(0, {}, {});
    auto e = residual(none, 2);
    CHECK(greedy_fallback(e, normalize(e)).status == FinishStatus::success);
}

TEST_CASE("greedy fallback: infeasible instance names a witness")
{
    Hypergraph h(2, {{0, 1}}, {});
    NibbleParams p;
    p.colors = 1;
    p.theta = 0.5;
    p.p_hat = 1;
    auto s = init(h, ListAssignment::uniform(2, 1), p);
    auto r = greedy_fallback(s, normalize(s));
    CHECK(r.status == FinishStatus::infeasible);
    CHECK(r.witness.has_value());
}

TEST_CASE("greedy fallback: enough colors are always feasible")
{
    std::mt19937_64 rng(8);
    for (int k = 0 ; k < 100 ; ++k) {
        auto h = oracle::random_hypergraph(rng, 20, 15, 10);
        auto colors = 2 * max_constraint_degree(h) + 2;
        auto s = residual(h, colors, false);
        auto r = greedy_fallback(s, normalize(s));
        REQUIRE(r.status == FinishStatus::success);
        CHECK(verify_coloring(h, s.lists, r.coloring).ok());
    }
}

TEST_CASE("finish: modes")
{
    auto h = fixture::triangle_free(3, 40, 4, 4);
    auto s = residual(h, 20);
    auto mt = finish(s, 1);
    CHECK(mt.status == FinishStatus::success);
    CHECK(verify_coloring(h, s.lists, mt.coloring).ok());

    FinishOptions greedy;
    greedy.mode = FinisherMode::greedy;
    auto g = finish(s, 1, greedy);
    CHECK(g.status == FinishStatus::success);
    CHECK(g.used_fallback);

    FinishOptions report;
    report.mode = FinisherMode::report_only;
    auto ro = finish(s, 1, report);
    CHECK(ro.status == FinishStatus::report_only);
    CHECK(ro.residual == 40);

    CHECK(parse_finisher_mode("report-only") == FinisherMode::report_only);
    CHECK(to_string(FinisherMode::mt) == "mt");
    CHECK_THROWS_AS(parse_finisher_mode("lll"), InputError);
}
