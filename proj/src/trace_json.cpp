#include <hypercolor/json_io.hpp>

namespace hypercolor
{
    namespace
    {
        // long double does not round-trip through json; fields that overflow a double
        // are emitted as their logarithms alongside.
        auto num(long double x) -> double { return static_cast<double>(x); }
    }

    auto to_json(json & j, const DegreeProfile & p) -> void
    {
        j = json{{"delta3", p.delta3}, {"delta2", p.delta2}, {"codegree_max", p.codegree_max}};
    }

    auto to_json(json & j, const Edge & e) -> void
    {
        j = json(std::vector<Vertex>(e.vertices().begin(), e.vertices().end()));
    }

    auto to_json(json & j, const TriangleWitness & t) -> void
    {
        j = json{{"kind", to_string(t.kind)}, {"vertices", t.vertices}, {"edges", json{t.edges[0], t.edges[1], t.edges[2]}}};
    }

    auto to_json(json & j, const Verdict & v) -> void
    {
        j = json{{"ok", v.ok()}, {"violation", to_string(v.violation)}, {"description", v.describe()}};
        j["vertex"] = v.vertex ? json(*v.vertex) : json(nullptr);
        j["edge"] = v.edge ? json(*v.edge) : json(nullptr);
    }

    auto to_json(json & j, const ReductionReport & r) -> void
    {
        j = json{{"delta", r.delta}, {"threshold", r.threshold}, {"pairs_replaced", r.pairs_replaced},
            {"edges3_removed", r.edges3_removed}, {"edges2_added", r.edges2_added}, {"profile_before", r.profile_before},
            {"profile_after", r.profile_after}};
    }

    auto to_json(json & j, const Parameters & p) -> void
    {
        j = json{{"regime", to_string(p.regime)}, {"log_delta", num(p.log_delta)}, {"log_delta2", num(p.log_delta2)},
            {"log_codegree", num(p.log_codegree)}, {"epsilon", num(p.epsilon)}, {"omega", num(p.omega)},
            {"log_p_hat", num(p.log_p_hat)}, {"log_omega0", num(p.log_omega0)}, {"log_colors_raw", num(p.log_colors_raw)},
            {"log_colors", num(p.log_colors)}, {"iterations_raw", num(p.iterations_raw)}, {"iterations", num(p.iterations)},
            {"theta", num(p.theta)}, {"m", p.m}, {"omega1", num(p.omega1)}, {"log_omega2", num(p.log_omega2)},
            {"omega3", num(p.omega3)}, {"omega4", num(p.omega4)}, {"log_omega5", num(p.log_omega5)},
            {"log_omega6", num(p.log_omega6)}, {"c0", num(p.c0)}};
        if (p.log_colors < 40)
            j["colors"] = p.colors();
    }

    auto to_json(json & j, const ConstraintCheck & c) -> void
    {
        j = json{{"name", c.name}, {"statement", c.statement}, {"evaluable", c.evaluable}, {"satisfied", c.satisfied},
            {"strict", c.strict}, {"log_space", c.log_space}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)}, {"slack", num(c.slack)}};
        j["tail_log_bound"] = c.tail_log_bound ? json(num(*c.tail_log_bound)) : json(nullptr);
    }

    auto to_json(json & j, const ConstraintReport & r) -> void
    {
        j = json{{"regime", to_string(r.regime)}, {"o_ratio_threshold", num(r.o_ratio_threshold)},
            {"tolerance", num(r.tolerance)}, {"constraints", r.constraints}, {"sufficient_conditions", r.sufficient_conditions},
            {"domain", r.domain}, {"all_constraints_satisfied", r.all_constraints_satisfied()}, {"in_domain", r.in_domain()},
            {"omega_matches_derived", r.omega_matches_derived}, {"omega_below_sufficient_bound", r.omega_below_sufficient_bound},
            {"omega0_matches_derived", r.omega0_matches_derived}, {"omega0_above_sufficient_bound", r.omega0_above_sufficient_bound}};
    }

    auto to_json(json & j, const Aggregate & a) -> void
    {
        j = json{{"min", a.min}, {"max", a.max}, {"mean", a.mean}};
    }

    auto to_json(json & j, const EnvelopeCheck & e) -> void
    {
        j = json{{"name", e.name}, {"measured", e.measured}, {"bound", e.bound}, {"within", e.within}};
    }

    auto to_json(json & j, const IterationStats & s) -> void
    {
        j = json{{"iteration", s.iteration}, {"uncolored_before", s.uncolored_before},
            {"colored_this_round", s.colored_this_round}, {"uncolored_after", s.uncolored_after},
            {"activations", s.activations}, {"proportional_cells", s.proportional_cells}, {"capped_cells", s.capped_cells},
            {"frozen_cells", s.frozen_cells}, {"starved", s.starved}, {"survival_exact", s.survival_exact},
            {"survival_bound", s.survival_bound}, {"survival_mc", s.survival_mc},
            {"max_survival_stderr", s.max_survival_stderr}, {"vertices", s.vertices}, {"weight_sum", s.weight_sum},
            {"e_u", s.e_u}, {"f_u", s.f_u}, {"h_u", s.h_u}, {"degree3", s.degree3},
            {"max_color_degree", s.max_color_degree}, {"max_e_uvw", s.max_e_uvw}, {"weight", s.weight_agg},
            {"e", s.e_agg}, {"f", s.f_agg}, {"h", s.h_agg}, {"degree3_summary", s.degree3_agg},
            {"color_degree_max", s.color_degree_max}, {"color_graph_edges", s.color_graph_edges},
            {"envelopes", s.envelopes}, {"proper", s.proper}, {"triangle_checked", s.triangle_checked},
            {"triangle_free", s.triangle_free}, {"violations", s.violations}};
    }

    auto to_json(json & j, const LllReport & r) -> void
    {
        j = json{{"events_a", r.events_a}, {"events_b", r.events_b}, {"starved", r.starved},
            {"max_probability", r.max_probability}, {"max_neighbourhood", r.max_neighbourhood},
            {"probability_condition", r.probability_condition}, {"neighbourhood_condition", r.neighbourhood_condition},
            {"satisfied", r.satisfied()}};
    }

    auto to_json(json & j, const FinishResult & r) -> void
    {
        j = json{{"status", to_string(r.status)}, {"lll", r.report}, {"residual", r.residual}, {"starved", r.starved},
            {"resamples", r.resamples}, {"used_fallback", r.used_fallback}};
        j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
    }

    auto to_json(json & j, const ExperimentResult & r) -> void
    {
        j = json{{"seed", r.seed}, {"n", r.n}, {"edges2", r.edges2}, {"edges3", r.edges3}, {"profile", r.profile},
            {"pairs_replaced", r.pairs_replaced}, {"colors", r.colors}, {"iterations", r.iterations}, {"theta", r.theta},
            {"p_hat", r.p_hat}, {"rounds_run", r.rounds_run}, {"colored_fraction", r.colored_fraction},
            {"finisher", to_string(r.finisher)}, {"used_fallback", r.used_fallback}, {"resamples", r.resamples},
            {"lll_satisfied", r.lll_satisfied}, {"verified", r.verified}, {"verdict", r.verdict},
            {"colors_used", r.colors_used}, {"wall_seconds", r.wall_seconds}, {"error", r.error},
            {"uncolored_trace", r.uncolored_trace}};
    }

    auto to_json(json & j, const ExperimentSummary & s) -> void
    {
        j = json{{"runs", s.runs}, {"successes", s.successes}, {"success_rate", s.success_rate},
            {"mean_colored_fraction", s.mean_colored_fraction}, {"mean_colors_used", s.mean_colors_used},
            {"shape", s.shape}, {"ratio", s.ratio}};
    }

    auto coloring_json(std::span<const Color> coloring) -> json
    {
        auto out = json::array();
        for (auto c : coloring)
            out.push_back(c == uncolored ? json(-1) : json(c));
        return out;
    }

    auto coloring_from_json(const json & j) -> std::vector<Color>
    {
        auto & arr = j.is_object() ? j.at("coloring") : j;
        if (! arr.is_array())
            throw InputError("coloring must be a JSON array");
        std::vector<Color> out;
        for (auto & x : arr) {
            if (! x.is_number_integer())
                throw InputError("coloring entries must be integers");
            auto v = x.get<long long>();
            if (v < -1 || v >= static_cast<long long>(uncolored))
                throw InputError("coloring entry out of range");
            out.push_back(v == -1 ? uncolored : static_cast<Color>(v));
        }
        return out;
    }

    auto trace_json(const std::vector<IterationStats> & trace) -> json
    {
        json colored = json::array(), uncolored_after = json::array(), proper = json::array(), triangle_free = json::array();
        for (auto & s : trace) {
            colored.push_back(s.colored_this_round);
            uncolored_after.push_back(s.uncolored_after);
            proper.push_back(s.proper);
            triangle_free.push_back(s.triangle_free);
        }
        return json{{"rounds", trace.size()}, {"colored", colored}, {"uncolored_after", uncolored_after},
            {"proper", proper}, {"triangle_free", triangle_free}, {"stats", trace}};
    }
}
