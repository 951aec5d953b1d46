#pragma once

#include <hypercolor/hypergraph.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace hypercolor
{
    struct ReductionReport
    {
        std::size_t delta = 0;
        std::size_t threshold = 0;
        std::vector<Pair> pairs_replaced;
        std::size_t edges3_removed = 0;
        std::size_t edges2_added = 0;
        DegreeProfile profile_before;
        DegreeProfile profile_after;
    };

    struct Reduction
    {
        Hypergraph reduced;
        ReductionReport report;
    };

    /// max(2, ceil(delta^(6/10))).
    auto codegree_threshold(std::size_t delta) -> std::size_t;

    /// Replaces every pair whose codegree reaches the threshold by a 2-edge and drops the
    /// 3-edges through it. Throws InputError if delta is below the actual maximum 3-degree.
    auto codegree_reduce(const Hypergraph & h, std::size_t delta) -> Reduction;

    /// True iff the coloring is proper for the reduced hypergraph. A proper coloring of the
    /// reduced hypergraph is also proper for the original; a failure of that implication
    /// throws ContractError.
    auto lift_coloring(const Hypergraph & original, const Hypergraph & reduced, std::span<const Color> coloring) -> bool;
}
