#pragma once

#include <hypercolor/counter_rng.hpp>
#include <hypercolor/hypergraph.hpp>
#include <hypercolor/lists.hpp>
#include <hypercolor/parallel.hpp>
#include <hypercolor/params.hpp>
#include <hypercolor/triangles.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hypercolor
{
    class TriangleError : public InputError
    {
    public:
        explicit TriangleError(TriangleWitness witness);
        auto witness() const -> const TriangleWitness & { return _witness; }

    private:
        TriangleWitness _witness;
    };

    enum class SurvivalMode
    {
        exact,
        lower_bound,
        monte_carlo
    };

    auto to_string(SurvivalMode mode) -> std::string;
    auto parse_survival_mode(const std::string & text) -> SurvivalMode;

    /// The quantities the engine needs from a Parameters set, materialized as doubles.
    struct NibbleParams
    {
        std::size_t colors = 0;
        std::size_t iterations = 0;
        double theta = 0;
        double p_hat = 0;

        // analysis envelope constants, report-only
        double epsilon = 0;
        double omega = 0;
        double omega1 = 0;
        double omega2 = 0;
        double omega6 = 0;
        double delta = 0;

        static auto from(const Parameters & p) -> NibbleParams;
    };

    struct EngineOptions
    {
        SurvivalMode q_mode = SurvivalMode::exact;
        /// Link components with more vertices than this are estimated by Monte Carlo.
        std::size_t exact_component_limit = 20;
        std::size_t mc_samples = 100000;
        unsigned workers = default_workers();
        /// Re-check properness, graph invariants and triangle-freeness every iteration.
        bool debug_invariants = false;
        /// Reject inputs containing a triangle.
        bool require_triangle_free = true;
    };

    /// One 2-graph per color over the vertex set; rows are allocated on first use.
    class ColorGraphs
    {
    public:
        ColorGraphs() = default;
        ColorGraphs(std::size_t palette, std::size_t n);

        auto palette() const -> std::size_t { return _adj.size(); }
        auto vertex_count() const -> std::size_t { return _n; }

        auto neighbours(Color c, Vertex u) const -> std::span<const Vertex>;
        auto contains(Color c, Vertex u, Vertex v) const -> bool;
        auto add(Color c, Vertex u, Vertex v) -> bool;
        auto remove_vertex(Vertex u) -> void;
        auto edges(Color c) const -> std::vector<Pair>;
        auto edge_count(Color c) const -> std::size_t;

        auto operator== (const ColorGraphs &) const -> bool = default;

    private:
        std::size_t _n = 0;
        std::vector<std::vector<std::vector<Vertex>>> _adj;
    };

    struct NibbleState
    {
        std::size_t iteration = 0;
        NibbleParams params;
        EngineOptions options;

        /// The full input: 3-edges form H, 2-edges form G.
        Hypergraph original;
        /// H_i: the 3-edges of the input induced on the uncolored vertices.
        Hypergraph current;
        ColorGraphs graphs;
        ListAssignment lists;

        std::size_t palette = 0;
        /// p_u(c), row-major n x palette.
        std::vector<double> weights;
        /// c in B(u); set exactly when the capped branch emits p-hat.
        std::vector<std::uint8_t> frozen;
        std::vector<std::uint8_t> is_uncolored;
        std::vector<Vertex> uncolored;
        std::vector<Color> coloring;
        /// h_u at iteration 0, for the entropy envelope.
        std::vector<double> initial_entropy;

        auto vertex_count() const -> std::size_t { return coloring.size(); }
        auto cell(Vertex u, Color c) const -> std::size_t { return std::size_t{u} * palette + c; }
        auto weight(Vertex u, Color c) const -> double { return weights[cell(u, c)]; }
        auto is_frozen(Vertex u, Color c) const -> bool { return frozen[cell(u, c)] != 0; }
    };

    /// Weights 1/C on list colors, no frozen colors, every G_c a copy of the 2-edges.
    /// Throws TriangleError (unless disabled), InputError for lists of the wrong size and
    /// ParameterError when 1/C > p-hat.
    auto init(const Hypergraph & h, const ListAssignment & lists, const NibbleParams & params,
            const EngineOptions & options = {}) -> NibbleState;

    struct ActivationSample
    {
        std::uint64_t seed = 0;
        std::size_t iteration = 0;
        std::size_t palette = 0;
        /// Colors with gamma_u(c) = 1, ascending, per vertex.
        std::vector<std::vector<Color>> active;
        std::vector<std::uint8_t> mask;

        auto activated(Vertex u, Color c) const -> bool { return mask[std::size_t{u} * palette + c] != 0; }
        auto count() const -> std::size_t;
    };

    /// Independent gamma_u(c) draws with Pr = theta p_u(c) for every uncolored u.
    /// Throws ParameterError if theta p_u(c) > 1.
    auto sample_activations(const NibbleState & state, std::uint64_t seed) -> ActivationSample;

    /// L(u) for every uncolored u, as a dense n x palette mask.
    struct LostColors
    {
        std::size_t palette = 0;
        std::vector<std::uint8_t> mask;

        auto contains(Vertex u, Color c) const -> bool { return mask[std::size_t{u} * palette + c] != 0; }
        auto colors(Vertex u) const -> std::vector<Color>;
    };

    auto lost_colors(const NibbleState & state, const ActivationSample & sample) -> LostColors;

    enum class SurvivalSource : std::uint8_t
    {
        not_computed,
        exact,
        lower_bound,
        monte_carlo
    };

    struct SurvivalEntry
    {
        double q = 1;
        SurvivalSource source = SurvivalSource::not_computed;
        double standard_error = 0;
        std::size_t samples = 0;
    };

    /// Survival constraints of one (u,c) cell: the G_c neighbours (single vertices whose
    /// activation kills c) and the pairs {v,w} of 3-edges uvw, with activation
    /// probabilities theta p_x(c) per local vertex.
    struct LinkProblem
    {
        std::vector<Vertex> vertices;
        std::vector<double> activation;
        std::vector<std::size_t> singles;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
    };

    auto link_problem(const NibbleState & state, Vertex u, Color c) -> LinkProblem;

    /// Pr[no single activated and no pair fully activated].
    auto solve_link(const LinkProblem & link, SurvivalMode mode, std::size_t component_limit,
            std::size_t mc_samples, const CounterKey & mc_key) -> SurvivalEntry;

    /// q_u(c). Throws ContractError when c is in B(u).
    auto survival_prob(const NibbleState & state, Vertex u, Color c, SurvivalMode mode, std::uint64_t seed = 0) -> SurvivalEntry;

    struct SurvivalTable
    {
        std::size_t palette = 0;
        std::vector<SurvivalEntry> entries;

        auto at(Vertex u, Color c) const -> const SurvivalEntry & { return entries[std::size_t{u} * palette + c]; }
    };

    /// q for every uncolored u and every c outside B(u) with p_u(c) > 0.
    auto survival_table(const NibbleState & state, std::uint64_t seed) -> SurvivalTable;

    struct WeightUpdate
    {
        std::vector<double> weights;
        std::vector<std::uint8_t> frozen;
        /// Cells whose capped-branch coin came up heads.
        std::vector<std::pair<Vertex, Color>> eta_heads;
        std::size_t proportional_cells = 0;
        std::size_t capped_cells = 0;
    };

    /// New weights: p/q on survival (else 0) while p/q < p-hat and c is not frozen,
    /// otherwise a coin with Pr = p/p-hat choosing between p-hat and 0.
    auto update_weights(const NibbleState & state, const ActivationSample & sample, const LostColors & lost,
            const SurvivalTable & survival) -> WeightUpdate;

    /// Each uncolored u with an activated, surviving, unfrozen color takes the smallest one.
    auto assign_colors(const NibbleState & state, const ActivationSample & sample, const LostColors & lost)
        -> std::vector<std::pair<Vertex, Color>>;

    /// Adds uv to G_c for every 3-edge uvw of H_i whose w was just colored c while u,v stay
    /// uncolored, then drops the newly colored vertices from every G_c.
    auto update_color_graphs(const NibbleState & state, std::span<const std::pair<Vertex, Color>> newly_colored) -> ColorGraphs;

    struct Aggregate
    {
        double min = 0;
        double max = 0;
        double mean = 0;

        static auto of(std::span<const double> values) -> Aggregate;
    };

    struct EnvelopeCheck
    {
        std::string name;
        double measured = 0;
        double bound = 0;
        bool within = true;
    };

    struct IterationStats
    {
        std::size_t iteration = 0;
        std::size_t uncolored_before = 0;
        std::size_t colored_this_round = 0;
        std::size_t uncolored_after = 0;
        std::size_t activations = 0;
        std::size_t proportional_cells = 0;
        std::size_t capped_cells = 0;
        std::size_t frozen_cells = 0;
        std::size_t starved = 0;
        std::size_t survival_exact = 0;
        std::size_t survival_bound = 0;
        std::size_t survival_mc = 0;
        double max_survival_stderr = 0;

        /// Per-vertex measurements at the start of the round, aligned with `vertices`.
        std::vector<Vertex> vertices;
        std::vector<double> weight_sum;
        std::vector<double> e_u;
        std::vector<double> f_u;
        std::vector<double> h_u;
        std::vector<double> degree3;
        std::vector<double> max_color_degree;
        double max_e_uvw = 0;

        Aggregate weight_agg, e_agg, f_agg, h_agg, degree3_agg;
        double color_degree_max = 0;
        std::size_t color_graph_edges = 0;

        std::vector<EnvelopeCheck> envelopes;

        bool proper = true;
        bool triangle_checked = false;
        bool triangle_free = true;
        std::vector<std::string> violations;
    };

    /// Measured w(p_u), e_u, f_u, h_u, d_H(u), d_Gc(u) and e_uvw on the current state.
    auto measure(const NibbleState & state) -> IterationStats;

    struct IterationResult
    {
        NibbleState state;
        IterationStats stats;
    };

    auto iterate(const NibbleState & state, std::uint64_t seed) -> IterationResult;

    struct RunResult
    {
        std::vector<Color> coloring;
        NibbleState state;
        std::vector<IterationStats> trace;
    };

    /// T rounds, stopping early once everything is colored.
    auto run(const Hypergraph & h, const ListAssignment & lists, const NibbleParams & params,
            const EngineOptions & options, std::uint64_t seed) -> RunResult;

    /// Uncolored vertices left with no positive weight outside B(u).
    auto starved_vertices(const NibbleState & state, double floor = 0) -> std::vector<Vertex>;

    /// Debug checks: properness against the input, G_c endpoints uncolored, weight range,
    /// frozen flags, and (optionally) triangle-freeness of H_i + G_c for every color.
    auto check_invariants(const NibbleState & state, bool triangles) -> std::vector<std::string>;
}
