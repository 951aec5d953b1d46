#include <hypercolor/params.hpp>
#include <hypercolor/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypercolor
{
    namespace
    {
        constexpr long double inf = std::numeric_limits<long double>::infinity();
        constexpr long double nan = std::numeric_limits<long double>::quiet_NaN();

        // Largest log we are willing to exponentiate into a concrete count.
        constexpr long double max_materialized_log = 700.0L;

        auto lse(std::initializer_list<long double> terms) -> long double
        {
            long double top = -inf;
            for (auto t : terms) {
                if (std::isnan(t))
                    return nan;
                top = std::max(top, t);
            }
            if (top == -inf)
                return -inf;
            if (top == inf)
                return inf;
            long double sum = 0;
            for (auto t : terms)
                sum += std::exp(t - top);
            return top + std::log(sum);
        }

        auto safe_log(long double x) -> long double
        {
            if (x < 0 || std::isnan(x))
                return nan;
            return x == 0 ? -inf : std::log(x);
        }

        auto require_positive(long double x, const char * what) -> void
        {
            if (! (x > 0) || std::isnan(x) || std::isinf(x))
                throw InputError(std::string(what) + " must be positive and finite");
        }

        auto derive_unchecked(long double log_delta, long double log_delta2, long double log_codegree, long double epsilon,
                long double omega, long double log_p_hat, long double log_omega0) -> Parameters
        {
            Parameters p;
            p.log_delta = log_delta;
            p.log_delta2 = log_delta2;
            p.log_codegree = log_codegree;
            p.epsilon = epsilon;
            p.omega = omega;
            p.log_p_hat = log_p_hat;
            p.log_omega0 = log_omega0;

            p.log_colors_raw = (log_delta - std::log(omega)) / 2;
            if (p.log_colors_raw < max_materialized_log) {
                auto c = std::ceil(std::exp(p.log_colors_raw) - 1e-9L);
                p.log_colors = std::log(std::max<long double>(c, 1));
            }
            else
                p.log_colors = p.log_colors_raw;

            p.iterations_raw = (5 * omega / epsilon) * std::log(omega);
            p.iterations = std::max<long double>(0, std::ceil(p.iterations_raw - 1e-9L));

            p.theta = epsilon / omega;
            p.omega1 = p.iterations * p.log_colors;
            p.log_omega2 = log_omega0 - std::log(16 * omega);
            p.omega3 = omega * omega;
            p.omega4 = omega * omega;
            p.log_omega5 = 19.0L / 20.0L * log_delta;
            p.log_omega6 = log_delta / 4;
            return p;
        }
    }

    auto to_string(Regime regime) -> std::string
    {
        switch (regime) {
            case Regime::derived: return "derived";
            case Regime::sufficient: return "sufficient";
            case Regime::practical: return "practical";
        }
        return "unknown";
    }

    auto Parameters::p_hat() const -> double
    {
        return static_cast<double>(std::exp(log_p_hat));
    }

    auto Parameters::colors() const -> std::size_t
    {
        if (! (log_colors < 40))
            throw ParameterError("color count too large to materialize");
        return static_cast<std::size_t>(std::llround(std::exp(log_colors)));
    }

    auto Parameters::iteration_count() const -> std::size_t
    {
        if (! (iterations < 1e15L))
            throw ParameterError("iteration count too large to materialize");
        return static_cast<std::size_t>(iterations);
    }

    auto Parameters::delta() const -> long double
    {
        return std::exp(log_delta);
    }

    auto derive_log(long double log_delta, long double log_delta2, long double log_codegree, long double epsilon,
            long double omega, long double log_p_hat, long double log_omega0) -> Parameters
    {
        for (auto x : {log_delta, log_delta2, log_codegree, log_p_hat, log_omega0})
            if (std::isnan(x) || std::isinf(x))
                throw InputError("parameter logarithms must be finite");
        require_positive(epsilon, "epsilon");
        require_positive(omega, "omega");
        if (! (omega > 1))
            throw InputError("omega must exceed 1 so that ln omega > 0");
        return derive_unchecked(log_delta, log_delta2, log_codegree, epsilon, omega, log_p_hat, log_omega0);
    }

    auto derive(long double delta, long double delta2, long double codegree, long double epsilon,
            long double omega, long double p_hat, long double omega0) -> Parameters
    {
        require_positive(delta, "delta");
        require_positive(delta2, "delta2");
        require_positive(codegree, "codegree");
        require_positive(p_hat, "p_hat");
        require_positive(omega0, "omega0");
        return derive_log(std::log(delta), std::log(delta2), std::log(codegree), epsilon, omega, std::log(p_hat),
                std::log(omega0));
    }

    auto derived_assignment_log(long double log_delta, std::optional<long double> log_delta2) -> Parameters
    {
        if (! (log_delta > 0) || std::isinf(log_delta))
            throw InputError("delta must exceed 1");
        const long double epsilon = 1.0L / 40.0L;
        auto omega = (1.0L / 25.0L) * (epsilon / 86.0L) * log_delta;
        auto theta = epsilon / omega;
        auto log_p_hat = -11.0L / 24.0L * log_delta;
        auto log_omega0 = -std::log(19.0L * theta) - log_p_hat;
        Parameters probe;
        auto l2 = log_delta2 ? *log_delta2 : 0.5L * (std::log(probe.c0) + log_delta + std::log(log_delta));
        auto p = derive_unchecked(log_delta, l2, 0.6L * log_delta, epsilon, omega, log_p_hat, log_omega0);
        p.regime = Regime::derived;
        return p;
    }

    auto derived_assignment(long double delta, std::optional<long double> delta2) -> Parameters
    {
        if (! (delta > 1))
            throw InputError("delta must exceed 1");
        std::optional<long double> l2;
        if (delta2) {
            require_positive(*delta2, "delta2");
            l2 = std::log(*delta2);
        }
        return derived_assignment_log(std::log(delta), l2);
    }

    auto sufficient_assignment_log(long double log_delta) -> Parameters
    {
        const long double epsilon = 1.0L / 40.0L;
        auto omega = (1.0L / 27.0L) * (epsilon / 86.0L) * log_delta;
        if (! (omega > 1))
            throw InputError("delta too small for omega > 1 inside the sufficient conditions");
        auto log_omega0 = std::log(11.0L) + 3 * std::log(omega) + std::log(std::log(omega));
        auto p = derive_log(log_delta, 0.5L * (log_delta + std::log(omega)), 0.6L * log_delta, epsilon, omega,
                -11.0L / 24.0L * log_delta, log_omega0);
        p.regime = Regime::sufficient;
        return p;
    }

    auto practical_assignment(long double delta, long double delta2, long double codegree,
            std::size_t colors, std::size_t iterations, double theta, double p_hat) -> Parameters
    {
        require_positive(delta, "delta");
        if (colors == 0)
            throw InputError("practical parameters need at least one color");
        if (! (theta > 0) || ! (p_hat > 0) || p_hat > 1)
            throw InputError("practical theta must be positive and p_hat in (0,1]");

        Parameters p;
        p.regime = Regime::practical;
        p.log_delta = std::log(delta);
        p.log_delta2 = safe_log(delta2);
        p.log_codegree = safe_log(codegree);
        p.epsilon = 1.0L / 40.0L;
        p.omega = delta / (static_cast<long double>(colors) * colors);
        p.log_p_hat = std::log(static_cast<long double>(p_hat));
        p.theta = theta;
        p.log_omega0 = -std::log(19.0L * theta) - p.log_p_hat;
        p.log_colors_raw = p.log_colors = std::log(static_cast<long double>(colors));
        p.iterations_raw = p.iterations = static_cast<long double>(iterations);
        p.omega1 = p.iterations * p.log_colors;
        p.log_omega2 = p.log_omega0 - std::log(16 * p.omega);
        p.omega3 = p.omega4 = p.omega * p.omega;
        p.log_omega5 = 19.0L / 20.0L * p.log_delta;
        p.log_omega6 = p.log_delta / 4;
        return p;
    }

    auto ConstraintReport::find(const std::string & name) const -> const ConstraintCheck &
    {
        for (auto * group : {&constraints, &sufficient_conditions, &domain})
            for (auto & c : *group)
                if (c.name == name)
                    return c;
        throw InputError("no constraint named " + name);
    }

    auto ConstraintReport::all_constraints_satisfied() const -> bool
    {
        return std::all_of(constraints.begin(), constraints.end(), [] (auto & c) { return c.satisfied; });
    }

    auto ConstraintReport::in_domain() const -> bool
    {
        return std::all_of(domain.begin(), domain.end(), [] (auto & c) { return c.satisfied; });
    }

    namespace
    {
        auto make_check(const std::string & name, const std::string & statement, long double lhs, long double rhs,
                bool strict, bool log_space, long double tolerance) -> ConstraintCheck
        {
            ConstraintCheck c;
            c.name = name;
            c.statement = statement;
            c.lhs = lhs;
            c.rhs = rhs;
            c.strict = strict;
            c.log_space = log_space;
            c.evaluable = ! std::isnan(lhs) && ! std::isnan(rhs) && ! (std::isinf(lhs) && std::isinf(rhs) && lhs == rhs);
            if (! c.evaluable) {
                c.slack = nan;
                c.satisfied = false;
                return c;
            }
            c.slack = lhs - rhs;
            auto scale = std::max<long double>({1, std::isinf(lhs) ? 1 : std::fabs(lhs), std::isinf(rhs) ? 1 : std::fabs(rhs)});
            c.satisfied = strict ? c.slack > tolerance * scale : c.slack >= -tolerance * scale;
            return c;
        }
    }

    auto check_constraints(const Parameters & p) -> ConstraintReport
    {
        ConstraintReport report;
        report.regime = p.regime;
        const auto tol = report.tolerance;
        const auto o_bound = std::log(report.o_ratio_threshold);

        const auto L = p.log_delta;
        const auto lnL = safe_log(L);
        const auto lC = p.log_colors;
        const auto lp = p.log_p_hat;
        const auto lw = safe_log(p.omega);
        const auto lth = safe_log(p.theta);
        const auto lT = safe_log(p.iterations);
        const auto lw1 = safe_log(p.omega1);
        const auto lw2 = p.log_omega2;
        const auto lw0 = p.log_omega0;
        const auto lw3 = safe_log(p.omega3);
        const auto lw4 = safe_log(p.omega4);
        const auto lw5 = p.log_omega5;
        const auto lw6 = p.log_omega6;
        const auto ld = p.log_codegree;
        const auto lm = std::log(static_cast<long double>(p.m));
        const auto T = p.iterations;
        const auto decay4 = p.theta < 4 ? T * std::log1p(-p.theta / 4) : nan;
        const auto decay3 = p.theta < 3 ? T * std::log1p(-p.theta / 3) : nan;
        const auto inv2m = 1.0L / (2 * p.m);
        const auto invm = 1.0L / p.m;

        auto add = [&] (const std::string & name, const std::string & statement, long double lhs, long double rhs,
                bool strict, bool log_space = true) -> ConstraintCheck & {
            report.constraints.push_back(make_check(name, statement, lhs, rhs, strict, log_space, tol));
            return report.constraints.back();
        };

        add("R1", "theta ln(p_hat C) >= 85", p.theta * (lp + lC), 85, false, false);
        add("R2", "(1/omega0) / theta <= 0.01", o_bound, -lw0 - lth, false);
        add("R3", "2 / (omega1^2 C p_hat^2) > 6 ln delta", std::log(2.0L) - 2 * lw1 - lC - 2 * lp, std::log(6.0L) + lnL, true)
            .tail_log_bound = aggregated_log_bound(-lw1, lC + 2 * lp);
        add("R4", "T / omega1 <= 0.01", o_bound, lT - lw1, false);
        add("R5", "(T ln C) / omega1 < epsilon / theta", std::log(p.epsilon) - lth, lT + safe_log(lC) - lw1, true);
        add("R6", "2 / (4 delta^2 omega2^2 C p_hat^6) > 6 ln delta",
                std::log(0.5L) - 2 * L - 2 * lw2 - lC - 6 * lp, std::log(6.0L) + lnL, true)
            .tail_log_bound = aggregated_log_bound(-L - lw2, std::log(4.0L) + lC + 6 * lp);
        add("R7", "theta T / omega2 <= 0.01", o_bound, lth + lT - lw2, false);
        add("R8", "omega omega2 + T < omega0 / 2", lw0 - std::log(2.0L), lse({lw + lw2, lT}), true);
        add("R9", "1/omega2 <= (1 - theta/4)^T omega", decay4 + lw, -lw2, false);
        add("R10", "1/(4 omega3^2 (6 omega6 T theta p_hat^5 delta^2 + 4 m p_hat^5 delta^(2+1/2m) + C m^2 p_hat^6 delta^(2+1/m))) >= 7 ln delta",
                -std::log(4.0L) - 2 * lw3 - lse({std::log(6.0L) + lw6 + lT + lth + 5 * lp + 2 * L,
                    std::log(4.0L) + lm + 5 * lp + (2 + inv2m) * L,
                    lC + 2 * lm + 6 * lp + (2 + invm) * L}),
                std::log(7.0L) + lnL, false);
        add("R11", "2/(4 omega3^2 C (m delta^(1+1/2m) p_hat^3 + codegree delta^(1/2+1/2m) p_hat^3)^2) >= 7 ln delta",
                std::log(0.5L) - 2 * lw3 - lC - 2 * lse({lm + (1 + inv2m) * L + 3 * lp, ld + (0.5L + inv2m) * L + 3 * lp}),
                std::log(7.0L) + lnL, false);
        {
            // -p_hat ln p_hat vanishes at p_hat = 1, making the left side unbounded
            auto lx = lp + safe_log(-lp);
            add("R12", "2/(omega4^2 C (-p_hat ln p_hat)^2) > 6 ln delta", std::log(2.0L) - 2 * lw4 - lC - 2 * lx,
                    std::log(6.0L) + lnL, true)
                .tail_log_bound = aggregated_log_bound(-lw4, lC + 2 * lx);
        }
        add("R13", "1/omega4 <= epsilon (1 - theta/4)^T", std::log(p.epsilon) + decay4, -lw4, false);
        add("R14", "2 omega5^2 / (C (m delta^(1+1/2m) p_hat + delta^(1/2+1/2m) p_hat codegree)^2) >= 7 ln delta",
                std::log(2.0L) + 2 * lw5 - lC - 2 * lse({lm + (1 + inv2m) * L + lp, (0.5L + inv2m) * L + lp + ld}),
                std::log(7.0L) + lnL, false);
        add("R15", "omega5 < (theta/6)(1 - theta/3)^T delta", lth - std::log(6.0L) + decay3 + L, lw5, true);
        add("R16", "omega6 delta theta p_hat / (5 codegree) >= 6 ln delta", lw6 + L + lth + lp - std::log(5.0L) - ld,
                std::log(6.0L) + lnL, false);
        add("R17", "theta omega (1 - theta/4)^T >= theta T / omega2 + 1/omega3", lth + lw + decay4,
                lse({lth + lT - lw2, -lw3}), false);
        add("R18", "1 - 10 epsilon >= 3/4", 1 - 10 * p.epsilon, 0.75L, false, false);
        add("R19", "delta2 <= omega6 theta delta p_hat", lw6 + lth + L + lp, p.log_delta2, false);
        add("R20", "delta2 <= sqrt(delta) sqrt(omega)", 0.5L * L + 0.5L * lw, p.log_delta2, false);
        add("R21", "p_hat >= delta^(-1/2)", lp, -0.5L * L, false);

        auto suff = [&] (const std::string & name, const std::string & statement, long double lhs, long double rhs,
                bool strict, bool log_space = true) {
            report.sufficient_conditions.push_back(make_check(name, statement, lhs, rhs, strict, log_space, tol));
        };
        const auto eps = p.epsilon;
        const auto p_hat_floor = 86 * p.omega / eps + 0.5L * lw - 0.5L * L;
        const auto chain_middle = (1.0L / 26.0L - 0.5L) * L + 0.5L * lw;
        suff("epsilon", "epsilon <= 1/40", 1.0L / 40.0L, eps, false, false);
        suff("omega", "omega < (1/26)(epsilon/86) ln delta", (1.0L / 26.0L) * (eps / 86.0L) * L, p.omega, true, false);
        suff("omega0", "omega0 > 10 omega^3 ln omega", lw0,
                p.omega > 1 ? std::log(10.0L) + 3 * lw + std::log(lw) : -inf, true);
        suff("delta2", "delta2 <= sqrt(delta) sqrt(omega)", 0.5L * L + 0.5L * lw, p.log_delta2, false);
        suff("codegree", "codegree <= delta^(6/10)", 0.6L * L, ld, false);
        suff("p_hat_lower", "p_hat > e^(86 omega/epsilon) sqrt(omega) / sqrt(delta)", lp, p_hat_floor, true);
        suff("p_hat_upper", "p_hat <= delta^(-11/24)", -11.0L / 24.0L * L, lp, false);
        suff("chain_lower", "e^(86 omega/epsilon) sqrt(omega)/sqrt(delta) < delta^(1/26 - 1/2) sqrt(omega)",
                chain_middle, p_hat_floor, true);
        suff("chain_upper", "delta^(1/26 - 1/2) sqrt(omega) <= delta^(-11/24)", -11.0L / 24.0L * L, chain_middle, false);

        auto dom = [&] (const std::string & name, const std::string & statement, long double lhs, long double rhs,
                bool strict) {
            report.domain.push_back(make_check(name, statement, lhs, rhs, strict, false, tol));
        };
        dom("omega>1", "omega > 1", p.omega, 1, true);
        dom("theta<1/2", "theta < 1/2", 0.5L, p.theta, true);
        dom("p_hat<=1", "p_hat <= 1", 0, lp, false);
        dom("T>=1", "T >= 1", T, 1, false);
        dom("theta*p_hat<=1", "theta p_hat <= 1", 0, lth + lp, false);
        dom("p_hat>=1/C", "p_hat >= 1/C", lp + lC, 0, false);

        auto omega5 = (1.0L / 25.0L) * (eps / 86.0L) * L;
        report.omega_matches_derived = std::fabs(p.omega - omega5) <= 1e-12L * std::max<long double>(1, omega5);
        report.omega_below_sufficient_bound = report.find("omega").satisfied;
        auto lw0_derived = -std::log(19.0L * p.theta) - lp;
        report.omega0_matches_derived = std::fabs(lw0 - lw0_derived) <= 1e-12L * std::max<long double>(1, std::fabs(lw0));
        report.omega0_above_sufficient_bound = report.find("omega0").satisfied;
        return report;
    }

    auto hoeffding_log_bound(long double t, std::span<const long double> ranges) -> long double
    {
        if (! (t > 0))
            throw InputError("deviation t must be positive");
        long double sum = 0;
        for (auto a : ranges) {
            if (! (a >= 0))
                throw InputError("ranges must be non-negative");
            sum += a * a;
        }
        if (! (sum > 0))
            throw InputError("ranges must not all vanish");
        return -2 * t * t / sum;
    }

    auto variance_log_bound(long double t, long double variance, long double b) -> long double
    {
        if (! (t > 0))
            throw InputError("deviation t must be positive");
        if (! (variance >= 0) || ! (b >= 0) || ! (2 * variance + b * t > 0))
            throw InputError("variance and b must be non-negative and not both zero");
        return -t * t / (2 * variance + b * t);
    }

    auto mcdiarmid_log_bound(long double t, std::span<const long double> differences) -> long double
    {
        return hoeffding_log_bound(t, differences);
    }

    auto conditioned_log_bound(long double t, std::span<const long double> differences, long double prob_bad) -> long double
    {
        if (! (prob_bad >= 0 && prob_bad <= 1))
            throw InputError("Pr[bad event] must lie in [0,1]");
        auto base = mcdiarmid_log_bound(t, differences);
        return lse({base, safe_log(prob_bad)});
    }

    auto aggregated_log_bound(long double log_t, long double log_sum_squares) -> long double
    {
        auto e = std::log(2.0L) + 2 * log_t - log_sum_squares;
        if (std::isnan(e))
            return nan;
        return -std::exp(e);
    }

    auto tail_log_bound(TailKind kind, const TailArgs & args) -> long double
    {
        switch (kind) {
            case TailKind::hoeffding: return hoeffding_log_bound(args.t, args.bounds);
            case TailKind::variance: return variance_log_bound(args.t, args.variance, args.b);
            case TailKind::mcdiarmid: return mcdiarmid_log_bound(args.t, args.bounds);
            case TailKind::conditioned_mcdiarmid: return conditioned_log_bound(args.t, args.bounds, args.prob_bad);
        }
        throw InputError("unknown tail bound");
    }
}
