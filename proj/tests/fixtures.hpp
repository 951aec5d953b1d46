#pragma once

// Instance builders shared by the unit and acceptance tests.

#include <hypercolor/generators.hpp>
#include <hypercolor/triangles.hpp>

#include <random>

namespace fixture
{
    using namespace hypercolor;

    /// Triangle-free instance with planted high-codegree pairs: a few sunflowers (many
    /// triples through one pair) plus random triples and pairs, each kept only if it
    /// closes no triangle.
    inline auto planted(std::uint64_t seed, std::size_t n = 40, std::size_t flowers = 3, std::size_t petals = 6,
            std::size_t extra3 = 60, std::size_t extra2 = 8) -> Hypergraph
    {
        std::mt19937_64 rng(seed);
        HypergraphBuilder b(n);
        PairCoverIndex index(n);
        auto offer = [&] (const Edge & e) {
            bool fresh = e.arity == 3 ? ! b.contains3(e.v[0], e.v[1], e.v[2]) : ! b.contains2(e.v[0], e.v[1]);
            if (! fresh || index.closes_triangle(e))
                return;
            index.add(e);
            if (e.arity == 3)
                b.add_edge3(e.v[0], e.v[1], e.v[2]);
            else
                b.add_edge2(e.v[0], e.v[1]);
        };
        for (std::size_t f = 0 ; f < flowers ; ++f) {
            Vertex x = rng() % n, y = rng() % n;
            if (x == y)
                continue;
            for (std::size_t k = 0 ; k < petals ; ++k) {
                Vertex z = rng() % n;
                if (z != x && z != y)
                    offer(Edge::of(make_triple(x, y, z)));
            }
        }
        for (std::size_t k = 0 ; k < extra3 * 4 && b.edge_count3() < extra3 + flowers * petals ; ++k) {
            Vertex x = rng() % n, y = rng() % n, z = rng() % n;
            if (x != y && y != z && x != z)
                offer(Edge::of(make_triple(x, y, z)));
        }
        for (std::size_t k = 0 ; k < extra2 * 4 && b.edge_count2() < extra2 ; ++k) {
            Vertex x = rng() % n, y = rng() % n;
            if (x != y)
                offer(Edge::of(make_pair_edge(x, y)));
        }
        return b.build();
    }

    inline auto triangle_free(std::uint64_t seed, std::size_t n, std::size_t delta, std::size_t edges2 = 0) -> Hypergraph
    {
        return generate(GeneratorSpec{GeneratorKind::triangle_free_filtered, n, 0, delta, edges2, seed, 0});
    }
}
