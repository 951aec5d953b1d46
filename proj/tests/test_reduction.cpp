#include "fixtures.hpp"
#include "oracles.hpp"

#include <hypercolor/reduction.hpp>
#include <hypercolor/verify.hpp>

#include <doctest.h>

#include <cmath>

using namespace hypercolor;

TEST_CASE("threshold arithmetic")
{
    CHECK(codegree_threshold(1) == 2);
    CHECK(codegree_threshold(3) == 2);
    CHECK(codegree_threshold(5) == 3);
    CHECK(codegree_threshold(32) == 8);
    CHECK(codegree_threshold(100) == 16);
    CHECK(codegree_threshold(1000) == 64);
}

TEST_CASE("a pair in three triples is replaced by a 2-edge")
{
    // u=0 v=1 with thirds 2,3,4 and an unrelated triple
    Hypergraph h(7, {}, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {2, 5, 6}});
    auto r = codegree_reduce(h, 3);
    CHECK(r.report.threshold == 2);
    REQUIRE(r.report.pairs_replaced.size() == 1);
    CHECK(r.report.pairs_replaced[0] == Pair{0, 1});
    CHECK(r.report.edges3_removed == 3);
    CHECK(r.report.edges2_added == 1);
    CHECK(r.reduced.edges3().size() == 1);
    CHECK(r.reduced.has_edge2(0, 1));
    CHECK(r.report.profile_before.codegree_max == 3);
    CHECK(r.report.profile_after.codegree_max < r.report.threshold);
}

TEST_CASE("existing 2-edges are not duplicated")
{
    Hypergraph h(5, {{0, 1}}, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
    auto r = codegree_reduce(h, 3);
    CHECK(r.report.edges2_added == 0);
    CHECK(r.reduced.edges2().size() == 1);
}

TEST_CASE("linear input is left alone")
{
    auto h = generate(GeneratorSpec{GeneratorKind::partial_steiner, 40, 0, 6, 0, 4, 0});
    auto r = codegree_reduce(h, h.profile().delta3);
    CHECK(r.reduced == h);
    CHECK(r.report.pairs_replaced.empty());
}

TEST_CASE("delta below the real maximum degree is rejected")
{
    Hypergraph h(5, {}, {{0, 1, 2}, {0, 3, 4}});
    CHECK_THROWS_AS(codegree_reduce(h, 1), InputError);
}

TEST_CASE("reduction contract on planted instances")
{
    for (std::uint64_t seed = 0 ; seed < 40 ; ++seed) {
        auto h = fixture::planted(seed);
        REQUIRE(is_triangle_free(h));
        auto delta = h.profile().delta3;
        auto r = codegree_reduce(h, delta);
        auto & g = r.reduced;
        auto threshold = r.report.threshold;

        for (auto & p : r.report.pairs_replaced) {
            CHECK(h.codegree(p[0], p[1]) >= threshold);
            CHECK(g.has_edge2(p[0], p[1]));
        }
        CHECK(g.profile().codegree_max < threshold);
        CHECK(is_triangle_free(g));

        // every removed triple contains a replaced pair
        for (auto & t : h.edges3())
            if (! g.has_edge3(t[0], t[1], t[2]))
                CHECK((g.has_edge2(t[0], t[1]) || g.has_edge2(t[0], t[2]) || g.has_edge2(t[1], t[2])));

        auto d = static_cast<double>(delta);
        std::vector<std::size_t> k(h.vertex_count(), 0);
        for (auto & p : r.report.pairs_replaced) {
            ++k[p[0]];
            ++k[p[1]];
        }
        for (auto x : k)
            CHECK(static_cast<double>(x) <= 2 * d / std::pow(d, 0.6) + 1e-9);
        CHECK(static_cast<double>(g.profile().delta2) <= h.profile().delta2 + 2 * std::pow(d, 0.4) + 1e-9);

        auto again = codegree_reduce(g, delta);
        CHECK(again.reduced == g);
        CHECK(again.report.pairs_replaced.empty());
    }
}

TEST_CASE("lifting colorings back to the original")
{
    std::mt19937_64 rng(17);
    for (std::uint64_t seed = 0 ; seed < 20 ; ++seed) {
        auto h = fixture::planted(seed + 100);
        auto r = codegree_reduce(h, h.profile().delta3);
        auto coloring = oracle::greedy_coloring(r.reduced, rng);
        CHECK(lift_coloring(h, r.reduced, coloring));
        CHECK(is_proper(h, coloring));

        if (! r.report.pairs_replaced.empty()) {
            auto bad = coloring;
            auto p = r.report.pairs_replaced.front();
            bad[p[1]] = bad[p[0]];
            CHECK(! lift_coloring(h, r.reduced, bad));
        }
    }
    Hypergraph a(3, {}, {}), b(4, {}, {});
    std::vector<Color> c(3, 0);
    CHECK_THROWS_AS(lift_coloring(a, b, c), InputError);
}
