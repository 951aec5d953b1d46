#pragma once

#include <hypercolor/nibble.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hypercolor
{
    /// p*_u(c) = p_T(c) / sum of p_T over C(u) - B_T(u), for every vertex still uncolored.
    struct NormalizedDistribution
    {
        /// Residual vertices, ascending; the per-vertex vectors below align with it.
        std::vector<Vertex> vertices;
        std::vector<std::vector<Color>> support;
        std::vector<std::vector<double>> probability;
        std::vector<double> mass;
        /// Residual vertices whose mass fell below the floor; they have empty support.
        std::vector<Vertex> starved;

        auto position(Vertex u) const -> std::optional<std::size_t>;
        auto prob(Vertex u, Color c) const -> double;
    };

    auto normalize(const NibbleState & state, double floor = 1e-6) -> NormalizedDistribution;

    /// A: the 3-edge of H_T is monochromatic. B: the G_T_c edge has both ends colored c.
    struct BadEvent
    {
        enum class Kind : std::uint8_t
        {
            A,
            B
        };

        Kind kind = Kind::A;
        /// Sorted; a B event leaves the third slot as Edge::pad.
        std::array<Vertex, 3> vertices{};
        Color color = 0;

        auto members() const -> std::span<const Vertex>
        {
            return std::span<const Vertex>(vertices.data(), kind == Kind::A ? 3 : 2);
        }

        auto operator<=> (const BadEvent &) const = default;
    };

    auto to_string(const BadEvent & e) -> std::string;

    /// Every occurring bad event among the residual vertices, in canonical order.
    auto find_bad_events(const NibbleState & state, std::span<const Color> assignment) -> std::vector<BadEvent>;

    enum class FinishStatus
    {
        success,
        fallback_needed,
        infeasible,
        report_only
    };

    auto to_string(FinishStatus status) -> std::string;

    struct ResampleResult
    {
        FinishStatus status = FinishStatus::fallback_needed;
        /// The nibble's partial coloring with the residual vertices filled in.
        std::vector<Color> coloring;
        std::size_t resamples = 0;
        std::size_t initial_bad_events = 0;
    };

    /// Samples every residual vertex from p*, then redraws the vertices of the lowest bad
    /// event until none is left. Starved vertices or an exhausted budget give
    /// fallback_needed. Throws InputError for a zero budget.
    auto resample_until_clear(const NibbleState & state, const NormalizedDistribution & dist, std::uint64_t seed,
            std::size_t budget) -> ResampleResult;

    struct LllReport
    {
        std::size_t events_a = 0;
        std::size_t events_b = 0;
        std::size_t starved = 0;
        double max_probability = 0;
        double max_neighbourhood = 0;
        /// Every Pr[E] <= 1/4.
        bool probability_condition = true;
        /// For every E, the sum of Pr[F] over the other events F sharing a vertex with E is <= 1/4.
        bool neighbourhood_condition = true;

        auto satisfied() const -> bool { return starved == 0 && probability_condition && neighbourhood_condition; }
    };

    auto lll_condition_report(const NibbleState & state, const NormalizedDistribution & dist) -> LllReport;

    struct FallbackResult
    {
        FinishStatus status = FinishStatus::success;
        std::vector<Color> coloring;
        /// The vertex left with no usable list color when infeasible.
        std::optional<Vertex> witness;
    };

    /// Colors the remaining vertices one at a time, most constrained first, checking the
    /// input hypergraph directly. Support colors are tried before other list colors.
    auto greedy_fallback(const NibbleState & state, const NormalizedDistribution & dist) -> FallbackResult;

    enum class FinisherMode
    {
        mt,
        greedy,
        report_only
    };

    auto to_string(FinisherMode mode) -> std::string;
    auto parse_finisher_mode(const std::string & text) -> FinisherMode;

    struct FinishOptions
    {
        FinisherMode mode = FinisherMode::mt;
        std::size_t budget = 1'000'000;
        double starvation_floor = 1e-6;
    };

    struct FinishResult
    {
        FinishStatus status = FinishStatus::report_only;
        std::vector<Color> coloring;
        LllReport report;
        std::size_t residual = 0;
        std::size_t starved = 0;
        std::size_t resamples = 0;
        bool used_fallback = false;
        std::optional<Vertex> witness;
    };

    auto finish(const NibbleState & state, std::uint64_t seed, const FinishOptions & options = {}) -> FinishResult;
}
