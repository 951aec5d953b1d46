#pragma once

#include <hypercolor/errors.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hypercolor
{
    using Vertex = std::uint32_t;
    using Color = std::uint32_t;

    inline constexpr Color uncolored = std::numeric_limits<Color>::max();

    /// Sorted vertex pair (a 2-edge).
    using Pair = std::array<Vertex, 2>;

    /// Sorted vertex triple (a 3-edge).
    using Triple = std::array<Vertex, 3>;

    auto make_pair_edge(Vertex a, Vertex b) -> Pair;
    auto make_triple(Vertex a, Vertex b, Vertex c) -> Triple;

    inline auto pair_key(Vertex a, Vertex b) -> std::uint64_t
    {
        if (a > b)
            std::swap(a, b);
        return (std::uint64_t{a} << 32) | b;
    }

    struct TripleHash
    {
        auto operator() (const Triple & t) const noexcept -> std::size_t
        {
            std::uint64_t h = t[0];
            h = h * 0x9E3779B97F4A7C15ull + t[1];
            h = h * 0x9E3779B97F4A7C15ull + t[2];
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };

    struct DegreeProfile
    {
        std::size_t delta3 = 0;
        std::size_t delta2 = 0;
        std::size_t codegree_max = 0;

        auto operator== (const DegreeProfile &) const -> bool = default;
    };

    /// A rank-3 hypergraph on vertices 0..n-1. Immutable once built; edges are kept
    /// canonically sorted so iteration order and serialization are deterministic.
    class Hypergraph
    {
    public:
        Hypergraph() = default;

        /// Throws InputError on repeated vertices inside an edge, vertices >= n or
        /// duplicate edges.
        Hypergraph(std::size_t n, std::vector<Pair> edges2, std::vector<Triple> edges3);

        auto vertex_count() const -> std::size_t { return _n; }
        auto edges2() const -> std::span<const Pair> { return _edges2; }
        auto edges3() const -> std::span<const Triple> { return _edges3; }

        auto degree3(Vertex u) const -> std::size_t;
        auto degree2(Vertex u) const -> std::size_t;

        /// Number of 3-edges containing both u and v.
        auto codegree(Vertex u, Vertex v) const -> std::size_t;

        /// Indices into edges3() of the 3-edges through u, ascending.
        auto incident3(Vertex u) const -> std::span<const std::uint32_t>;

        /// 2-edge neighbours of u, ascending.
        auto neighbours2(Vertex u) const -> std::span<const Vertex>;

        /// N_H(u): vertices sharing a 3-edge with u, ascending.
        auto neighbours3(Vertex u) const -> std::vector<Vertex>;

        /// N_H(u,v): third vertices of the 3-edges through u and v, ascending.
        auto common3(Vertex u, Vertex v) const -> std::vector<Vertex>;

        auto has_edge2(Vertex u, Vertex v) const -> bool;
        auto has_edge3(Vertex a, Vertex b, Vertex c) const -> bool;

        auto profile() const -> DegreeProfile;

        /// Every pair (u,v), u < v, with positive codegree, together with its codegree.
        auto codegree_pairs() const -> std::vector<std::pair<Pair, std::size_t>>;

        /// Sub-hypergraph on the same vertex ids holding exactly the edges fully inside keep.
        auto induce(const std::vector<bool> & keep) const -> Hypergraph;
        auto induce(std::span<const Vertex> keep) const -> Hypergraph;

        /// Only the 3-edges (the "H" part of the input).
        auto without_edges2() const -> Hypergraph;

        auto operator== (const Hypergraph & other) const -> bool
        {
            return _n == other._n && _edges2 == other._edges2 && _edges3 == other._edges3;
        }

    private:
        auto check_vertex(Vertex u) const -> void;

        std::size_t _n = 0;
        std::vector<Pair> _edges2;
        std::vector<Triple> _edges3;

        std::vector<std::uint32_t> _inc3_offsets{0};
        std::vector<std::uint32_t> _inc3;
        std::vector<std::uint32_t> _adj2_offsets{0};
        std::vector<Vertex> _adj2;
        std::unordered_map<std::uint64_t, std::uint32_t> _codegree;
    };

    /// Accumulates edges, rejecting duplicates; codegrees are tracked as edges arrive.
    class HypergraphBuilder
    {
    public:
        explicit HypergraphBuilder(std::size_t n) : _n(n) {}

        auto vertex_count() const -> std::size_t { return _n; }

        /// Returns false (and adds nothing) if the edge is already present.
        auto add_edge2(Vertex a, Vertex b) -> bool;
        auto add_edge3(Vertex a, Vertex b, Vertex c) -> bool;

        auto contains2(Vertex a, Vertex b) const -> bool;
        auto contains3(Vertex a, Vertex b, Vertex c) const -> bool;
        auto codegree(Vertex a, Vertex b) const -> std::size_t;
        auto degree3(Vertex u) const -> std::size_t { return _degree3.empty() ? 0 : _degree3[u]; }
        auto degree2(Vertex u) const -> std::size_t { return _degree2.empty() ? 0 : _degree2[u]; }
        auto edge_count2() const -> std::size_t { return _edges2.size(); }
        auto edge_count3() const -> std::size_t { return _edges3.size(); }

        auto build() const -> Hypergraph;

    private:
        auto check(Vertex u) const -> void;

        std::size_t _n;
        std::vector<Pair> _edges2;
        std::vector<Triple> _edges3;
        std::unordered_map<std::uint64_t, std::uint32_t> _codegree;
        std::unordered_set<std::uint64_t> _pairs2;
        std::unordered_set<Triple, TripleHash> _triples;
        std::vector<std::uint32_t> _degree3, _degree2;
    };

    /// Text format: header "n m2 m3", then m2 lines "2 u v" and m3 lines "3 u v w".
    /// '#' starts a comment. Throws ParseError carrying the 1-based line number.
    auto parse_hypergraph(std::string_view text) -> Hypergraph;
    auto serialize_hypergraph(const Hypergraph & h) -> std::string;

    auto read_hypergraph_file(const std::string & path) -> Hypergraph;
    auto write_hypergraph_file(const Hypergraph & h, const std::string & path) -> void;

    auto read_text_file(const std::string & path) -> std::string;
}
