#pragma once

#include <hypercolor/hypergraph.hpp>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hypercolor
{
    enum class GeneratorKind
    {
        /// Linear 3-uniform: every pair of vertices lies in at most one triple.
        partial_steiner,
        /// Uniformly random distinct triples.
        random3,
        /// Random triples plus random pairs.
        random_rank3,
        /// Random edges, each rejected if it would close a triangle.
        triangle_free_filtered
    };

    auto to_string(GeneratorKind kind) -> std::string;
    auto parse_generator_kind(const std::string & text) -> GeneratorKind;

    struct GeneratorSpec
    {
        GeneratorKind kind = GeneratorKind::random3;
        std::size_t n = 0;
        /// Exact number of 3-edges wanted; 0 means "fill up to the degree cap".
        std::size_t edges3 = 0;
        /// Cap on the 3-degree of every vertex; 0 means no cap.
        std::size_t target_delta = 0;
        /// Number of 2-edges wanted (random_rank3, triangle_free_filtered).
        std::size_t edges2 = 0;
        std::uint64_t seed = 0;
        /// Consecutive rejected proposals before giving up; 0 picks a default from n.
        std::size_t max_stall = 0;
    };

    /// Raised when a filtered generator stalls before an explicit edge target.
    class GeneratorTimeout : public InputError
    {
    public:
        GeneratorTimeout(const std::string & what, std::size_t edges3, std::size_t edges2)
            : InputError(what), edges3_reached(edges3), edges2_reached(edges2) {}

        std::size_t edges3_reached;
        std::size_t edges2_reached;
    };

    /// Deterministic in the spec. Throws InputError when the target cannot exist (more
    /// triples than the kind allows) and GeneratorTimeout when sampling stalls.
    auto generate(const GeneratorSpec & spec) -> Hypergraph;
}
