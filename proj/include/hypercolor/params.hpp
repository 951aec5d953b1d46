#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hypercolor
{
    /// Where a parameter set came from. Derived and sufficient sets come from the
    /// degree bounds; practical sets override C, T, theta and p-hat for desk-scale runs.
    enum class Regime
    {
        derived,
        sufficient,
        practical
    };

    auto to_string(Regime regime) -> std::string;

    /// Algorithm parameters. Every quantity that can overflow a double at large
    /// degree is kept as a natural logarithm (fields prefixed log_).
    struct Parameters
    {
        Regime regime = Regime::derived;

        long double log_delta = 0;
        long double log_delta2 = 0;
        long double log_codegree = 0;

        long double epsilon = 0;
        long double omega = 0;
        long double log_p_hat = 0;
        long double log_omega0 = 0;

        /// sqrt(delta / omega) before rounding, and ln of the rounded color count C.
        long double log_colors_raw = 0;
        long double log_colors = 0;

        /// (5 omega / epsilon) ln omega before rounding, and the rounded iteration count T.
        long double iterations_raw = 0;
        long double iterations = 0;

        long double theta = 0;
        int m = 21;
        long double omega1 = 0;
        long double log_omega2 = 0;
        long double omega3 = 0;
        long double omega4 = 0;
        long double log_omega5 = 0;
        long double log_omega6 = 0;
        long double c0 = 1.0L / 86000.0L;

        auto p_hat() const -> double;

        /// C as an integer; throws ParameterError when it does not fit.
        auto colors() const -> std::size_t;
        auto iteration_count() const -> std::size_t;
        auto delta() const -> long double;
    };

    /// Fills the derived fields from the independent ones. C = ceil(sqrt(delta/omega)),
    /// T = max(0, ceil((5 omega/epsilon) ln omega)). Throws InputError on nonpositive or
    /// NaN inputs and when omega <= 1.
    auto derive(long double delta, long double delta2, long double codegree, long double epsilon,
            long double omega, long double p_hat, long double omega0) -> Parameters;

    auto derive_log(long double log_delta, long double log_delta2, long double log_codegree, long double epsilon,
            long double omega, long double log_p_hat, long double log_omega0) -> Parameters;

    /// epsilon = 1/40, omega = (1/25)(epsilon/86) ln delta, p-hat = delta^(-11/24),
    /// omega0 = 1/(19 theta p-hat), codegree = delta^(6/10). delta2 defaults to
    /// sqrt(c0 delta ln delta). omega may fall below 1 here; the report flags it.
    auto derived_assignment(long double delta, std::optional<long double> delta2 = std::nullopt) -> Parameters;
    auto derived_assignment_log(long double log_delta, std::optional<long double> log_delta2 = std::nullopt) -> Parameters;

    /// A parameter set sitting inside the sufficient conditions used to certify the
    /// constraint system: omega = (1/27)(epsilon/86) ln delta, omega0 = 11 omega^3 ln omega,
    /// p-hat = delta^(-11/24), codegree = delta^(6/10), delta2 = sqrt(delta omega).
    auto sufficient_assignment_log(long double log_delta) -> Parameters;

    /// Desk-scale parameters: C, T, theta, p-hat given directly; omega = delta / C^2 and
    /// omega0 = 1/(19 theta p-hat) so the analysis envelopes remain defined.
    auto practical_assignment(long double delta, long double delta2, long double codegree,
            std::size_t colors, std::size_t iterations, double theta, double p_hat) -> Parameters;

    struct ConstraintCheck
    {
        std::string name;
        std::string statement;
        bool evaluable = true;
        bool satisfied = false;
        bool strict = false;
        /// lhs/rhs are natural logs of the two sides when log_space is set.
        bool log_space = true;
        /// Oriented so that the constraint reads lhs >= rhs (or lhs > rhs when strict).
        long double lhs = 0;
        long double rhs = 0;
        long double slack = 0;
        /// ln of the concentration bound the constraint controls, where applicable.
        std::optional<long double> tail_log_bound;
    };

    struct ConstraintReport
    {
        Regime regime = Regime::derived;
        /// Surrogate for the o(.) constraints: ratio <= this value.
        long double o_ratio_threshold = 0.01L;
        /// Tolerance for non-strict comparisons, relative to the larger side.
        long double tolerance = 1e-12L;

        std::vector<ConstraintCheck> constraints;
        std::vector<ConstraintCheck> sufficient_conditions;
        std::vector<ConstraintCheck> domain;

        /// omega equals (1/25)(eps/86) ln delta, and omega < (1/26)(eps/86) ln delta.
        bool omega_matches_derived = false;
        bool omega_below_sufficient_bound = false;
        /// omega0 equals 1/(19 theta p-hat), and omega0 > 10 omega^3 ln omega.
        bool omega0_matches_derived = false;
        bool omega0_above_sufficient_bound = false;

        auto find(const std::string & name) const -> const ConstraintCheck &;
        auto all_constraints_satisfied() const -> bool;
        auto in_domain() const -> bool;
    };

    auto check_constraints(const Parameters & p) -> ConstraintReport;

    enum class TailKind
    {
        hoeffding,
        variance,
        mcdiarmid,
        conditioned_mcdiarmid
    };

    struct TailArgs
    {
        long double t = 0;
        /// |X_i| <= a_i (hoeffding) or differences d_i (mcdiarmid variants).
        std::vector<long double> bounds;
        long double variance = 0;
        long double b = 0;
        /// Pr[complement of the good event] for the conditioned variant.
        long double prob_bad = 0;
    };

    /// ln of the right-hand side of the named tail inequality. Throws InputError for
    /// t <= 0 or invalid variance/range arguments.
    auto tail_log_bound(TailKind kind, const TailArgs & args) -> long double;

    auto hoeffding_log_bound(long double t, std::span<const long double> ranges) -> long double;
    auto variance_log_bound(long double t, long double variance, long double b) -> long double;
    auto mcdiarmid_log_bound(long double t, std::span<const long double> differences) -> long double;
    auto conditioned_log_bound(long double t, std::span<const long double> differences, long double prob_bad) -> long double;

    /// Hoeffding/McDiarmid exponent from aggregated logs: ln bound = -2 t^2 / S.
    auto aggregated_log_bound(long double log_t, long double log_sum_squares) -> long double;
}
