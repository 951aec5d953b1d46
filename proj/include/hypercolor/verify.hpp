#pragma once

#include <hypercolor/hypergraph.hpp>
#include <hypercolor/lists.hpp>
#include <hypercolor/triangles.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hypercolor
{
    enum class ViolationKind
    {
        none,
        wrong_length,
        uncolored_vertex,
        color_not_in_list,
        monochromatic_edge3,
        monochromatic_edge2
    };

    auto to_string(ViolationKind kind) -> std::string;

    /// Outcome of a coloring check; on failure names the first offending vertex or edge.
    struct Verdict
    {
        ViolationKind violation = ViolationKind::none;
        std::optional<Vertex> vertex;
        std::optional<Edge> edge;

        auto ok() const -> bool { return violation == ViolationKind::none; }
        auto describe() const -> std::string;
    };

    /// Total coloring drawn from the lists with no monochromatic edge. Reads only its
    /// arguments; shares no state with the coloring engine.
    auto verify_coloring(const Hypergraph & h, const ListAssignment & lists, std::span<const Color> coloring) -> Verdict;

    /// As verify_coloring but uncolored vertices are allowed; an edge only counts as
    /// monochromatic once all its vertices are colored.
    auto verify_partial_coloring(const Hypergraph & h, const ListAssignment & lists, std::span<const Color> coloring) -> Verdict;

    /// Properness only (no lists), total coloring required.
    auto is_proper(const Hypergraph & h, std::span<const Color> coloring) -> bool;

    /// The largest color class of a proper coloring; it contains no complete edge.
    /// Throws ContractError if the coloring is not proper.
    auto independent_set_from_coloring(const Hypergraph & h, std::span<const Color> coloring) -> std::vector<Vertex>;

    /// True when no edge of h lies entirely inside the set.
    auto is_independent(const Hypergraph & h, std::span<const Vertex> set) -> bool;
}
