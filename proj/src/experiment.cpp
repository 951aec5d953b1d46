#include <hypercolor/experiment.hpp>
#include <hypercolor/reduction.hpp>
#include <hypercolor/verify.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

namespace hypercolor
{
    auto practical_colors(double k, std::size_t delta) -> std::size_t
    {
        if (delta < 2)
            return 1;
        auto d = static_cast<double>(delta);
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(k * std::sqrt(d / std::log(d)) - 1e-9)));
    }

    auto practical_parameters(const PracticalChoice & choice, const DegreeProfile & profile) -> Parameters
    {
        auto colors = choice.colors ? choice.colors : practical_colors(choice.k, profile.delta3);
        auto p_hat = choice.p_hat > 0 ? choice.p_hat : std::min(1.0, choice.p_hat_factor / static_cast<double>(colors));
        auto delta = static_cast<long double>(std::max<std::size_t>(profile.delta3, 1));
        return practical_assignment(delta, profile.delta2, profile.codegree_max, colors, choice.iterations, choice.theta, p_hat);
    }

    auto bound_shape(double delta, double delta2) -> double
    {
        double a = delta2 >= 2 ? delta2 / std::log(delta2) : 0;
        double b = delta >= 2 ? std::sqrt(delta / std::log(delta)) : 0;
        return std::max(a, b);
    }

    auto run_single(const ExperimentConfig & config, std::uint64_t seed) -> ExperimentResult
    {
        ExperimentResult r;
        r.seed = seed;
        auto start = std::chrono::steady_clock::now();
        try {
            auto spec = config.generator;
            spec.seed = seed;
            auto h = generate(spec);
            r.n = h.vertex_count();

            auto target = h;
            if (config.reduce) {
                auto red = codegree_reduce(h, h.profile().delta3);
                r.pairs_replaced = red.report.pairs_replaced.size();
                target = std::move(red.reduced);
            }
            r.edges2 = target.edges2().size();
            r.edges3 = target.edges3().size();
            r.profile = target.profile();

            auto params = practical_parameters(config.choice, r.profile);
            auto np = NibbleParams::from(params);
            r.colors = np.colors;
            r.iterations = np.iterations;
            r.theta = np.theta;
            r.p_hat = np.p_hat;

            auto lists = ListAssignment::uniform(r.n, np.colors);
            auto engine = config.engine;
            auto run_result = run(target, lists, np, engine, seed);
            r.rounds_run = run_result.trace.size();
            for (auto & st : run_result.trace)
                r.uncolored_trace.push_back(st.uncolored_after);
            r.colored_fraction = r.n ? 1.0 - static_cast<double>(run_result.state.uncolored.size()) / r.n : 1.0;

            auto fin = finish(run_result.state, seed, config.finisher);
            r.finisher = fin.status;
            r.used_fallback = fin.used_fallback;
            r.resamples = fin.resamples;
            r.lll_satisfied = fin.report.satisfied();

            auto verdict = verify_coloring(target, lists, fin.coloring);
            r.verified = verdict.ok();
            if (r.verified && config.reduce)
                r.verified = lift_coloring(h, target, fin.coloring) && verify_coloring(h, lists, fin.coloring).ok();
            r.verdict = verdict.describe();
            if (r.verified)
                r.colors_used = std::set<Color>(fin.coloring.begin(), fin.coloring.end()).size();
        }
        catch (const std::exception & e) {
            r.error = e.what();
            r.verified = false;
            if (r.verdict.empty())
                r.verdict = "error";
        }
        r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }

    auto run_experiment(const ExperimentConfig & config) -> std::vector<ExperimentResult>
    {
        std::vector<ExperimentResult> results(config.seeds.size());
        parallel_for(config.seeds.size(), config.seed_workers, [&] (std::size_t i) {
            results[i] = run_single(config, config.seeds[i]);
        });
        return results;
    }

    auto summarize(const std::vector<ExperimentResult> & results) -> ExperimentSummary
    {
        ExperimentSummary s;
        s.runs = results.size();
        if (results.empty())
            return s;
        double delta = 0, delta2 = 0;
        for (auto & r : results) {
            s.successes += r.verified;
            s.mean_colored_fraction += r.colored_fraction;
            s.mean_colors_used += static_cast<double>(r.colors_used);
            delta += static_cast<double>(r.profile.delta3);
            delta2 += static_cast<double>(r.profile.delta2);
        }
        auto k = static_cast<double>(results.size());
        s.success_rate = s.successes / k;
        s.mean_colored_fraction /= k;
        s.mean_colors_used /= k;
        s.shape = bound_shape(delta / k, delta2 / k);
        s.ratio = s.shape > 0 ? s.mean_colors_used / s.shape : 0;
        return s;
    }

    auto results_csv(const std::vector<ExperimentResult> & results) -> std::string
    {
        std::ostringstream out;
        out << "seed,n,edges2,edges3,delta3,delta2,codegree,pairs_replaced,colors,iterations,theta,p_hat,rounds,"
               "colored_fraction,finisher,fallback,resamples,lll_ok,verified,colors_used,seconds,error\n";
        for (auto & r : results) {
            auto error = r.error;
            std::replace(error.begin(), error.end(), ',', ';');
            out << r.seed << ',' << r.n << ',' << r.edges2 << ',' << r.edges3 << ',' << r.profile.delta3 << ','
                << r.profile.delta2 << ',' << r.profile.codegree_max << ',' << r.pairs_replaced << ',' << r.colors << ','
                << r.iterations << ',' << r.theta << ',' << r.p_hat << ',' << r.rounds_run << ',' << r.colored_fraction << ','
                << to_string(r.finisher) << ',' << r.used_fallback << ',' << r.resamples << ',' << r.lll_satisfied << ','
                << r.verified << ',' << r.colors_used << ',' << r.wall_seconds << ',' << error << '\n';
        }
        return out.str();
    }
}
