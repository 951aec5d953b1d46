#include <doctest.h>

#include "oracles.hpp"

#include <hypercolor/experiment.hpp>
#include <hypercolor/generators.hpp>
#include <hypercolor/json_io.hpp>
#include <hypercolor/verify.hpp>

#include <random>

using namespace hypercolor;

TEST_CASE("partial Steiner: full system on 9 points")
{
    auto h = generate(GeneratorSpec{GeneratorKind::partial_steiner, 9, 12, 0, 0, 4, 0});
    CHECK(h.edges3().size() == 12);
    for (Vertex u = 0 ; u < 9 ; ++u)
        for (Vertex v = u + 1 ; v < 9 ; ++v)
            CHECK(oracle::codegree(h, u, v) == 1);
    CHECK_THROWS_AS(generate(GeneratorSpec{GeneratorKind::partial_steiner, 9, 13, 0, 0, 4, 0}), InputError);
}

TEST_CASE("partial Steiner: random packing is linear and respects the degree cap")
{
    auto h = generate(GeneratorSpec{GeneratorKind::partial_steiner, 200, 0, 10, 0, 7, 0});
    CHECK(h.profile().codegree_max <= 1);
    CHECK(h.profile().delta3 <= 10);
    CHECK(h.edges3().size() > 500);
}

TEST_CASE("random3 with no edges is empty")
{
    auto h = generate(GeneratorSpec{GeneratorKind::random3, 10, 0, 0, 0, 1, 0});
    CHECK(h.edges3().empty());
    CHECK(h.edges2().empty());
    CHECK_THROWS_AS(generate(GeneratorSpec{GeneratorKind::random3, 10, 5, 0, 3, 1, 0}), InputError);
}

TEST_CASE("random rank-3 hits its targets")
{
    auto h = generate(GeneratorSpec{GeneratorKind::random_rank3, 30, 40, 0, 15, 2, 0});
    CHECK(h.edges3().size() == 40);
    CHECK(h.edges2().size() == 15);
}

TEST_CASE("triangle-free filtered instances pass the detector")
{
    for (std::uint64_t seed = 0 ; seed < 20 ; ++seed) {
        auto h = generate(GeneratorSpec{GeneratorKind::triangle_free_filtered, 200, 0, 30, 5, seed, 0});
        CHECK(is_triangle_free(h));
        CHECK(h.profile().delta3 <= 30);
    }
}

TEST_CASE("generators are seed-deterministic")
{
    for (auto kind : {GeneratorKind::partial_steiner, GeneratorKind::random3, GeneratorKind::triangle_free_filtered}) {
        GeneratorSpec spec{kind, 60, 0, 5, 0, 9, 0};
        if (kind == GeneratorKind::random3)
            spec.edges3 = 40;
        CHECK(serialize_hypergraph(generate(spec)) == serialize_hypergraph(generate(spec)));
    }
    CHECK(parse_generator_kind(to_string(GeneratorKind::random_rank3)) == GeneratorKind::random_rank3);
}

TEST_CASE("verifier: examples")
{
    Hypergraph h(4, {{2, 3}}, {{0, 1, 2}});
    auto lists = ListAssignment::uniform(4, 6);
    std::vector<Color> distinct{0, 1, 2, 3};
    CHECK(verify_coloring(h, lists, distinct).ok());

    std::vector<Color> mono{5, 5, 5, 4};
    auto v = verify_coloring(h, lists, mono);
    CHECK(v.violation == ViolationKind::monochromatic_edge3);
    REQUIRE(v.edge.has_value());
    CHECK(*v.edge == Edge::of(Triple{0, 1, 2}));

    std::vector<Color> pair{0, 1, 3, 3};
    CHECK(verify_coloring(h, lists, pair).violation == ViolationKind::monochromatic_edge2);

    std::vector<Color> outside{0, 1, 2, 9};
    auto w = verify_coloring(h, lists, outside);
    CHECK(w.violation == ViolationKind::color_not_in_list);
    CHECK(w.vertex == Vertex{3});

    std::vector<Color> partial{0, uncolored, 0, 1};
    CHECK(verify_coloring(h, lists, partial).violation == ViolationKind::uncolored_vertex);
    CHECK(verify_partial_coloring(h, lists, partial).ok());
}

TEST_CASE("verifier agrees with brute force on small instances")
{
    std::mt19937_64 rng(4);
    for (int k = 0 ; k < 300 ; ++k) {
        auto h = oracle::random_hypergraph(rng, 10, 8, 4);
        auto lists = ListAssignment::uniform(10, 3);
        std::vector<Color> col(10);
        for (auto & c : col)
            c = rng() % 4;
        CHECK(verify_coloring(h, lists, col).ok() == oracle::proper(h, lists.lists, col, false));
    }
}

TEST_CASE("independent set from a proper coloring")
{
    Hypergraph empty(10, {}, {});
    std::vector<Color> two{0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
    CHECK(independent_set_from_coloring(empty, two).size() >= 5);

    Hypergraph t(3, {}, {{0, 1, 2}});
    std::vector<Color> rainbow{0, 1, 2};
    CHECK(independent_set_from_coloring(t, rainbow).size() == 1);
    std::vector<Color> mono{0, 0, 0};
    CHECK_THROWS_AS(independent_set_from_coloring(t, mono), ContractError);

    std::mt19937_64 rng(6);
    for (int k = 0 ; k < 30 ; ++k) {
        auto h = oracle::random_hypergraph(rng, 25, 30, 10);
        auto col = oracle::greedy_coloring(h, rng);
        auto set = independent_set_from_coloring(h, col);
        CHECK(is_independent(h, set));
        std::set<Color> used(col.begin(), col.end());
        CHECK(set.size() * used.size() >= 25);
        for (auto & e : h.edges3())
            CHECK_FALSE((std::count(set.begin(), set.end(), e[0]) && std::count(set.begin(), set.end(), e[1])
                && std::count(set.begin(), set.end(), e[2])));
    }
}

TEST_CASE("practical parameters from a profile")
{
    CHECK(practical_colors(2.5, 50) == 9);
    CHECK(practical_colors(2.5, 1) == 1);
    DegreeProfile profile{50, 0, 1};
    auto p = practical_parameters(PracticalChoice{}, profile);
    CHECK(p.colors() == 9);
    CHECK(p.p_hat() == doctest::Approx(4.0 / 9));
    CHECK(p.regime == Regime::practical);
}

TEST_CASE("experiment: empty instances always succeed with one color")
{
    ExperimentConfig config;
    config.generator = GeneratorSpec{GeneratorKind::random3, 10, 0, 0, 0, 0, 0};
    config.seeds = {1, 2, 3};
    auto results = run_experiment(config);
    REQUIRE(results.size() == 3);
    for (auto & r : results) {
        CHECK(r.verified);
        CHECK(r.colors_used == 1);
        CHECK(r.error.empty());
    }
    auto s = summarize(results);
    CHECK(s.success_rate == 1);
    CHECK(s.mean_colors_used == 1);
    CHECK(results_csv(results).find("seed") == 0);
}

TEST_CASE("experiment: seeds ordered and identical across seed workers")
{
    ExperimentConfig config;
    config.generator = GeneratorSpec{GeneratorKind::triangle_free_filtered, 120, 0, 8, 4, 0, 0};
    config.seeds = {5, 3, 9, 1};
    auto one = run_experiment(config);
    config.seed_workers = 3;
    auto three = run_experiment(config);
    REQUIRE(one.size() == 4);
    for (std::size_t i = 0 ; i < 4 ; ++i) {
        CHECK(one[i].seed == config.seeds[i]);
        CHECK(one[i].uncolored_trace == three[i].uncolored_trace);
        CHECK(one[i].verified == three[i].verified);
        CHECK(one[i].verified);
    }
}

TEST_CASE("bound shape")
{
    CHECK(bound_shape(1, 1) == 0);
    CHECK(bound_shape(100, 0) == doctest::Approx(std::sqrt(100 / std::log(100.0))));
    CHECK(bound_shape(4, 100) == doctest::Approx(100 / std::log(100.0)));
}

TEST_CASE("json: colorings round-trip and records serialize")
{
    std::vector<Color> col{0, uncolored, 3};
    auto j = coloring_json(col);
    CHECK(j.dump() == "[0,-1,3]");
    CHECK(coloring_from_json(j) == col);
    CHECK(coloring_from_json(json{{"coloring", j}}) == col);

    json r = check_constraints(derived_assignment(1e6));
    CHECK(r["constraints"].size() == 21);

    Hypergraph h(3, {}, {{0, 1, 2}});
    json v = verify_coloring(h, ListAssignment::uniform(3, 1), std::vector<Color>{0, 0, 0});
    CHECK(v["ok"] == false);
}
