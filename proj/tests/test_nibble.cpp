#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <hypercolor/json_io.hpp>
#include <hypercolor/nibble.hpp>
#include <hypercolor/verify.hpp>

#include <cmath>
#include <random>

using namespace hypercolor;

namespace
{
    auto params(std::size_t colors, double theta, double p_hat, std::size_t iterations = 10) -> NibbleParams
    {
        NibbleParams p;
        p.colors = colors;
        p.iterations = iterations;
        p.theta = theta;
        p.p_hat = p_hat;
        p.omega = 2;
        p.omega1 = 10;
        p.omega2 = 10;
        p.omega6 = 2;
        p.epsilon = 0.025;
        p.delta = 1;
        return p;
    }

    auto start(const Hypergraph & h, std::size_t colors, double theta = 0.5, double p_hat = 1) -> NibbleState
    {
        return init(h, ListAssignment::uniform(h.vertex_count(), colors), params(colors, theta, p_hat));
    }

    auto empty_sample(const NibbleState & s) -> ActivationSample
    {
        ActivationSample a;
        a.palette = s.palette;
        a.active.resize(s.vertex_count());
        a.mask.assign(s.vertex_count() * s.palette, 0);
        return a;
    }

    auto activate(ActivationSample & a, Vertex u, Color c) -> void
    {
        a.mask[std::size_t{u} * a.palette + c] = 1;
        a.active[u].push_back(c);
        std::sort(a.active[u].begin(), a.active[u].end());
    }

    auto no_loss(const NibbleState & s) -> LostColors
    {
        return LostColors{s.palette, std::vector<std::uint8_t>(s.vertex_count() * s.palette, 0)};
    }

    auto table_with(const NibbleState & s, double q) -> SurvivalTable
    {
        SurvivalTable t;
        t.palette = s.palette;
        t.entries.assign(s.vertex_count() * s.palette, SurvivalEntry{q, SurvivalSource::exact, 0, 0});
        return t;
    }
}

TEST_CASE("init: uniform weights, color graphs seeded by 2-edges")
{
    Hypergraph h(3, {{0, 1}}, {});
    auto s = start(h, 2, 0.5, 0.5);
    for (Vertex u = 0 ; u < 3 ; ++u)
        for (Color c = 0 ; c < 2 ; ++c)
            CHECK(s.weight(u, c) == 0.5);
    for (Color c = 0 ; c < 2 ; ++c) {
        CHECK(s.graphs.contains(c, 0, 1));
        CHECK(s.graphs.edge_count(c) == 1);
    }
    CHECK(s.uncolored.size() == 3);
    CHECK(s.current.edges2().empty());
    CHECK(check_invariants(s, true).empty());
}

TEST_CASE("init: errors")
{
    Hypergraph loose(6, {}, {{0, 1, 2}, {2, 3, 4}, {0, 4, 5}});
    try {
        start(loose, 4);
        FAIL("expected a triangle error");
    }
    catch (const TriangleError & e) {
        CHECK(e.witness().kind == TriangleKind::C3);
    }
    EngineOptions unsafe;
    unsafe.require_triangle_free = false;
    CHECK_NOTHROW(init(loose, ListAssignment::uniform(6, 4), params(4, 0.5, 1), unsafe));

    Hypergraph h(3, {}, {{0, 1, 2}});
    // 1/C = 1/4 > p_hat
    CHECK_THROWS_AS(start(h, 4, 0.5, 0.2), ParameterError);
    CHECK_THROWS_AS(init(h, ListAssignment::uniform(3, 3), params(4, 0.5, 1)), InputError);
    CHECK_THROWS_AS(init(h, ListAssignment::uniform(2, 4), params(4, 0.5, 1)), InputError);
}

TEST_CASE("survival: single pair edge")
{
    Hypergraph h(3, {}, {{0, 1, 2}});
    auto s = start(h, 4, 0.5);
    double q = 1 - 0.5 * 0.5 * 0.25 * 0.25;
    CHECK(survival_prob(s, 0, 1, SurvivalMode::exact).q == doctest::Approx(q).epsilon(1e-15));
    CHECK(survival_prob(s, 0, 1, SurvivalMode::lower_bound).q == doctest::Approx(q).epsilon(1e-15));
}

TEST_CASE("survival: single color-graph edge")
{
    Hypergraph h(2, {{0, 1}}, {});
    auto s = start(h, 4, 0.5);
    s.weights[s.cell(1, 2)] = 0.3;
    CHECK(survival_prob(s, 0, 2, SurvivalMode::exact).q == doctest::Approx(1 - 0.5 * 0.3).epsilon(1e-15));
}

TEST_CASE("survival: two edges sharing a vertex")
{
    // u=0, v=1, w=2, x=3
    Hypergraph h(4, {}, {{0, 1, 2}, {0, 1, 3}});
    auto s = start(h, 4, 0.5);
    s.weights[s.cell(1, 0)] = 0.4;
    s.weights[s.cell(2, 0)] = 0.2;
    s.weights[s.cell(3, 0)] = 0.6;
    double av = 0.2, aw = 0.1, ax = 0.3;
    double expect = (1 - av) + av * (1 - aw) * (1 - ax);
    auto exact = survival_prob(s, 0, 0, SurvivalMode::exact);
    CHECK(exact.q == doctest::Approx(expect).epsilon(1e-15));
    CHECK(exact.source == SurvivalSource::exact);
    CHECK(exact.q == doctest::Approx(oracle::survival(link_problem(s, 0, 0))).epsilon(1e-15));
    auto bound = survival_prob(s, 0, 0, SurvivalMode::lower_bound);
    CHECK(bound.q == doctest::Approx(1 - av * aw - av * ax));
    CHECK(exact.q >= bound.q);

    auto mc = survival_prob(s, 0, 0, SurvivalMode::monte_carlo, 7);
    CHECK(mc.source == SurvivalSource::monte_carlo);
    CHECK(std::fabs(mc.q - expect) <= 5 * mc.standard_error + 1e-9);
}

TEST_CASE("survival: frozen color is a contract error")
{
    Hypergraph h(3, {}, {{0, 1, 2}});
    auto s = start(h, 4, 0.5);
    s.frozen[s.cell(0, 1)] = 1;
    s.weights[s.cell(0, 1)] = 1;
    CHECK_THROWS_AS(survival_prob(s, 0, 1, SurvivalMode::exact), ContractError);
}

TEST_CASE("survival: exact solver matches enumeration on random links")
{
    std::mt19937_64 rng(11);
    for (int k = 0 ; k < 300 ; ++k) {
        auto link = oracle::random_link(rng, rng() % 14 + 1);
        auto exact = solve_link(link, SurvivalMode::exact, 20, 0, {});
        auto bound = solve_link(link, SurvivalMode::lower_bound, 20, 0, {});
        auto truth = oracle::survival(link);
        CHECK(std::fabs(exact.q - truth) <= 1e-12);
        CHECK(exact.q >= bound.q - 1e-15);
    }
}

TEST_CASE("survival: components over the limit use Monte Carlo")
{
    std::mt19937_64 rng(3);
    LinkProblem link;
    for (std::size_t j = 0 ; j < 12 ; ++j) {
        link.vertices.push_back(static_cast<Vertex>(j));
        link.activation.push_back(0.3);
        if (j)
            link.pairs.emplace_back(j - 1, j);
    }
    auto mc = solve_link(link, SurvivalMode::exact, 4, 20000, CounterKey{5, 0, Stream::survival_mc, 0, 0});
    CHECK(mc.source == SurvivalSource::monte_carlo);
    CHECK(mc.samples == 20000);
    CHECK(std::fabs(mc.q - oracle::survival(link)) <= 5 * mc.standard_error);
}

TEST_CASE("activations: zero weight never activates, rate matches theta p")
{
    Hypergraph h(100000, {}, {});
    auto s = start(h, 1, 0.01);
    auto a = sample_activations(s, 17);
    double mean = static_cast<double>(a.count()) / 100000;
    CHECK(std::fabs(mean - 0.01) <= 3 * std::sqrt(0.01 * 0.99 / 100000));

    Hypergraph g(50, {}, {});
    auto t = start(g, 3, 0.9);
    for (Vertex u = 0 ; u < 50 ; ++u)
        t.weights[t.cell(u, 1)] = 0;
    for (std::uint64_t seed = 0 ; seed < 20 ; ++seed) {
        auto b = sample_activations(t, seed);
        for (Vertex u = 0 ; u < 50 ; ++u)
            CHECK_FALSE(b.activated(u, 1));
    }

    t.weights[t.cell(0, 0)] = 3;
    CHECK_THROWS_AS(sample_activations(t, 1), ParameterError);
}

TEST_CASE("activations: identical across worker counts")
{
    auto h = fixture::triangle_free(5, 300, 20);
    auto s = start(h, 8, 0.5);
    auto a = sample_activations(s, 99);
    s.options.workers = 4;
    auto b = sample_activations(s, 99);
    CHECK(a.mask == b.mask);
    CHECK(a.active == b.active);
}

TEST_CASE("lost colors follow the definition")
{
    Hypergraph h(5, {{0, 3}}, {{0, 1, 2}});
    auto s = start(h, 3);
    auto a = empty_sample(s);
    CHECK(lost_colors(s, a).colors(0).empty());

    activate(a, 1, 0);
    activate(a, 2, 0);
    activate(a, 1, 1);
    activate(a, 3, 2);
    auto lost = lost_colors(s, a);
    CHECK(lost.contains(0, 0));
    CHECK_FALSE(lost.contains(0, 1));
    CHECK(lost.contains(0, 2));
    CHECK_FALSE(lost.contains(4, 0));
    CHECK_FALSE(lost.contains(1, 0));
}

TEST_CASE("update_weights: proportional branch")
{
    Hypergraph h(1, {}, {});
    auto s = start(h, 10, 0.5, 0.2);
    s.weights[s.cell(0, 0)] = 0.1;
    auto table = table_with(s, 0.8);
    auto sample = empty_sample(s);
    auto up = update_weights(s, sample, no_loss(s), table);
    CHECK(up.weights[s.cell(0, 0)] == doctest::Approx(0.125));
    CHECK_FALSE(up.frozen[s.cell(0, 0)]);

    auto lost = no_loss(s);
    lost.mask[s.cell(0, 0)] = 1;
    CHECK(update_weights(s, sample, lost, table).weights[s.cell(0, 0)] == 0);
}

TEST_CASE("update_weights: capped branch coin")
{
    Hypergraph h(1, {}, {});
    auto s = start(h, 10, 0.5, 0.2);
    s.weights[s.cell(0, 0)] = 0.19;
    auto table = table_with(s, 0.8);
    auto sample = empty_sample(s);
    std::size_t heads = 0, trials = 20000;
    for (std::uint64_t seed = 0 ; seed < trials ; ++seed) {
        sample.seed = seed;
        auto up = update_weights(s, sample, no_loss(s), table);
        auto w = up.weights[s.cell(0, 0)];
        bool frozen = up.frozen[s.cell(0, 0)];
        CHECK((w == 0.2 || w == 0));
        CHECK(frozen == (w == 0.2));
        heads += frozen;
    }
    double rate = static_cast<double>(heads) / trials;
    CHECK(std::fabs(rate - 0.95) <= 5 * std::sqrt(0.95 * 0.05 / trials));

    // q = 0 with p > 0 routes to the coin
    auto zero = table_with(s, 0);
    sample.seed = 1;
    CHECK(update_weights(s, sample, no_loss(s), zero).capped_cells >= 1);

    SurvivalTable missing;
    missing.palette = s.palette;
    missing.entries.assign(s.palette, SurvivalEntry{});
    CHECK_THROWS_AS(update_weights(s, sample, no_loss(s), missing), ContractError);
}

TEST_CASE("assign_colors: survival required, smallest color wins")
{
    Hypergraph h(3, {}, {});
    auto s = start(h, 10);
    auto a = empty_sample(s);
    activate(a, 0, 7);
    activate(a, 0, 3);
    activate(a, 1, 4);
    auto lost = no_loss(s);
    lost.mask[s.cell(1, 4)] = 1;
    auto out = assign_colors(s, a, lost);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == std::pair<Vertex, Color>{0, 3});

    s.frozen[s.cell(0, 3)] = 1;
    out = assign_colors(s, a, no_loss(s));
    CHECK(out[0] == std::pair<Vertex, Color>{0, 7});
}

TEST_CASE("update_color_graphs: rule and cleanup")
{
    Hypergraph h(5, {}, {{0, 1, 2}, {2, 3, 4}});
    auto s = start(h, 3);
    std::vector<std::pair<Vertex, Color>> colored{{2, 1}};
    auto g = update_color_graphs(s, colored);
    CHECK(g.contains(1, 0, 1));
    CHECK(g.contains(1, 3, 4));
    CHECK(g.edge_count(0) == 0);

    // v also colored: no edge, and the vertex leaves every G_c
    Hypergraph k(4, {{0, 3}}, {{0, 1, 2}});
    auto t = start(k, 3);
    std::vector<std::pair<Vertex, Color>> both{{2, 1}, {1, 0}};
    auto g2 = update_color_graphs(t, both);
    CHECK(g2.edge_count(1) == 1);
    CHECK_FALSE(g2.contains(1, 0, 1));
    CHECK(g2.neighbours(0, 1).empty());
}

TEST_CASE("iterate: empty hypergraph keeps weights and colors at the expected rate")
{
    Hypergraph h(4000, {}, {});
    auto s = start(h, 4, 0.5);
    auto r = iterate(s, 3);
    std::size_t colored = 0;
    for (Vertex u = 0 ; u < 4000 ; ++u) {
        if (r.state.coloring[u] != uncolored) {
            ++colored;
            continue;
        }
        for (Color c = 0 ; c < 4 ; ++c)
            CHECK(r.state.weight(u, c) == 0.25);
    }
    double p = 1 - std::pow(1 - 0.125, 4);
    CHECK(std::fabs(colored / 4000.0 - p) <= 5 * std::sqrt(p * (1 - p) / 4000));
    CHECK(r.stats.proper);
    CHECK(r.state.iteration == 1);
}

TEST_CASE("iterate: properness and invariants on small instances")
{
    Hypergraph h(3, {}, {{0, 1, 2}});
    EngineOptions opts;
    opts.debug_invariants = true;
    for (std::uint64_t seed = 0 ; seed < 100 ; ++seed) {
        auto r = run(h, ListAssignment::uniform(3, 2), params(2, 0.9, 1, 8), opts, seed);
        CHECK(verify_partial_coloring(h, ListAssignment::uniform(3, 2), r.coloring).ok());
        for (auto & st : r.trace)
            CHECK(st.violations.empty());
    }

    auto g = fixture::planted(4, 40, 3, 5, 50, 10);
    auto lists = ListAssignment::uniform(40, 6);
    for (std::uint64_t seed = 0 ; seed < 10 ; ++seed) {
        auto r = run(g, lists, params(6, 0.5, 0.5, 12), opts, seed);
        CHECK(oracle::proper(g, lists.lists, r.coloring, true));
        for (auto & st : r.trace) {
            CHECK(st.proper);
            CHECK(st.triangle_checked);
            CHECK(st.triangle_free);
            CHECK(st.violations.empty());
        }
        CHECK(check_invariants(r.state, true).empty());
    }
}

TEST_CASE("run: one isolated vertex is eventually colored")
{
    Hypergraph h(1, {}, {});
    auto r = run(h, ListAssignment::uniform(1, 2), params(2, 0.5, 1, 200), {}, 5);
    CHECK(r.coloring[0] != uncolored);
    CHECK(r.trace.size() < 200);
}

TEST_CASE("run: trace identical across worker counts and replays")
{
    auto h = fixture::triangle_free(8, 300, 20, 10);
    auto lists = ListAssignment::uniform(300, 8);
    EngineOptions one, four;
    one.workers = 1;
    four.workers = 4;
    auto a = run(h, lists, params(8, 0.5, 0.5, 10), one, 21);
    auto b = run(h, lists, params(8, 0.5, 0.5, 10), four, 21);
    auto c = run(h, lists, params(8, 0.5, 0.5, 10), one, 21);
    CHECK(a.coloring == b.coloring);
    CHECK(trace_json(a.trace).dump() == trace_json(b.trace).dump());
    CHECK(trace_json(a.trace).dump() == trace_json(c.trace).dump());
    CHECK(a.state.weights == b.state.weights);
}

TEST_CASE("measure: weight sums and entropy")
{
    Hypergraph h(2, {}, {});
    auto s = start(h, 4);
    auto m = measure(s);
    REQUIRE(m.weight_sum.size() == 2);
    CHECK(m.weight_sum[0] == doctest::Approx(1));
    CHECK(m.h_u[0] == doctest::Approx(std::log(4.0)));
    s.weights[s.cell(1, 0)] = 0;
    m = measure(s);
    CHECK(m.weight_sum[1] == doctest::Approx(0.75));
    CHECK(m.h_u[1] == doctest::Approx(-3 * 0.25 * std::log(0.25)));
}

TEST_CASE("starved vertices")
{
    Hypergraph h(2, {}, {});
    auto s = start(h, 2);
    CHECK(starved_vertices(s).empty());
    s.weights[s.cell(1, 0)] = 0;
    s.weights[s.cell(1, 1)] = 0;
    CHECK(starved_vertices(s) == std::vector<Vertex>{1});
}

TEST_CASE("survival mode names")
{
    CHECK(parse_survival_mode("exact") == SurvivalMode::exact);
    CHECK(parse_survival_mode("bound") == SurvivalMode::lower_bound);
    CHECK(parse_survival_mode("mc") == SurvivalMode::monte_carlo);
    CHECK(to_string(SurvivalMode::lower_bound) == "bound");
    CHECK_THROWS_AS(parse_survival_mode("fast"), InputError);
}
