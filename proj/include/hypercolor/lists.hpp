#pragma once

#include <hypercolor/hypergraph.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hypercolor
{
    /// Per-vertex lists of acceptable colors drawn from a palette 0..palette-1.
    struct ListAssignment
    {
        std::size_t palette = 0;
        std::vector<std::vector<Color>> lists;

        /// Every vertex gets the full palette {0..colors-1}.
        static auto uniform(std::size_t n, std::size_t colors) -> ListAssignment;

        auto vertex_count() const -> std::size_t { return lists.size(); }
        auto allows(Vertex u, Color c) const -> bool;

        /// The common list size, or 0 when sizes differ.
        auto uniform_size() const -> std::size_t;

        /// Sorts, rejects duplicates and colors outside the palette.
        auto validate() -> void;
    };

    /// Header "n palette", then one line per vertex: "k c1 ... ck". '#' comments.
    auto parse_lists(std::string_view text) -> ListAssignment;
    auto serialize_lists(const ListAssignment & lists) -> std::string;
}
