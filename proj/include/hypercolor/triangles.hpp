#pragma once

#include <hypercolor/hypergraph.hpp>

#include <array>
#include <compare>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hypercolor
{
    /// An edge of either arity; unused trailing slots hold `uncolored`-like padding.
    struct Edge
    {
        std::array<Vertex, 3> v{};
        std::uint8_t arity = 0;

        static auto of(const Pair & p) -> Edge { return Edge{{p[0], p[1], pad}, 2}; }
        static auto of(const Triple & t) -> Edge { return Edge{{t[0], t[1], t[2]}, 3}; }

        auto contains(Vertex x) const -> bool
        {
            return v[0] == x || v[1] == x || (arity == 3 && v[2] == x);
        }

        auto vertices() const -> std::span<const Vertex> { return std::span<const Vertex>(v.data(), arity); }

        auto operator<=> (const Edge &) const = default;

        static constexpr Vertex pad = std::numeric_limits<Vertex>::max();
    };

    enum class TriangleKind
    {
        C3,
        F5,
        K4minus,
        mixed,
        graph
    };

    auto to_string(TriangleKind kind) -> std::string;

    /// Distinct vertices (u,v,w) and distinct edges (e,f,g) with u,v in e, v,w in f,
    /// w,u in g, and no vertex of {u,v,w} lying in all three edges.
    struct TriangleWitness
    {
        std::array<Vertex, 3> vertices{};
        std::array<Edge, 3> edges{};
        TriangleKind kind = TriangleKind::mixed;

        /// Sorted vertex triple followed by the sorted edge triple.
        auto key() const -> std::pair<std::array<Vertex, 3>, std::array<Edge, 3>>;
    };

    auto classify(const std::array<Edge, 3> & edges) -> TriangleKind;

    /// Checks the defining conditions of a triangle for the given labelling.
    auto is_triangle(const std::array<Vertex, 3> & vertices, const std::array<Edge, 3> & edges) -> bool;

    /// For every covered vertex pair, the edges that contain it. Supports incremental
    /// insertion so generators can reject edges that would close a triangle.
    class PairCoverIndex
    {
    public:
        explicit PairCoverIndex(std::size_t n);
        explicit PairCoverIndex(const Hypergraph & h);
        PairCoverIndex(const Hypergraph & h, std::span<const Pair> extra2);

        auto vertex_count() const -> std::size_t { return _adjacent.size(); }

        /// Returns false if the edge was already indexed.
        auto add(const Edge & e) -> bool;

        auto cover(Vertex a, Vertex b) const -> std::span<const Edge>;

        /// Vertices sharing at least one edge with u, ascending.
        auto adjacent(Vertex u) const -> std::span<const Vertex> { return _adjacent[u]; }

        /// A triangle that would use e if e were added, in canonical order; nothing if none.
        auto triangle_through(const Edge & e) const -> std::optional<TriangleWitness>;

        /// Whether adding e would create any triangle; stops at the first one found.
        auto closes_triangle(const Edge & e) const -> bool;

        /// Whether e, covering the pair (a, b), closes a triangle on a, b, w.
        auto closes_triangle_at(const Edge & e, Vertex a, Vertex b, Vertex w) const -> bool;

    private:
        auto search_through(const Edge & e, bool first) const -> std::optional<TriangleWitness>;

        std::unordered_map<std::uint64_t, std::vector<Edge>> _cover;
        std::vector<std::vector<Vertex>> _adjacent;
    };

    inline constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

    /// Up to limit witnesses in canonical order, one per distinct key().
    auto find_triangles(const PairCoverIndex & index, std::size_t limit = unlimited) -> std::vector<TriangleWitness>;
    auto find_triangles(const Hypergraph & h, std::size_t limit = unlimited) -> std::vector<TriangleWitness>;

    auto is_triangle_free(const Hypergraph & h) -> bool;
    auto is_triangle_free(const PairCoverIndex & index) -> bool;
}
