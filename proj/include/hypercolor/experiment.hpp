#pragma once

#include <hypercolor/finisher.hpp>
#include <hypercolor/generators.hpp>
#include <hypercolor/nibble.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hypercolor
{
    /// Desk-scale parameter choice. C = ceil(k sqrt(delta / ln delta)) unless colors is
    /// set; p-hat = p_hat_factor / C (capped at 1) unless p_hat is set.
    struct PracticalChoice
    {
        double k = 2.5;
        std::size_t colors = 0;
        std::size_t iterations = 30;
        double theta = 0.5;
        double p_hat = 0;
        double p_hat_factor = 4;
    };

    auto practical_colors(double k, std::size_t delta) -> std::size_t;

    /// C, T, theta, p-hat for an instance with the given degree profile.
    auto practical_parameters(const PracticalChoice & choice, const DegreeProfile & profile) -> Parameters;

    struct ExperimentConfig
    {
        GeneratorSpec generator;
        bool reduce = false;
        PracticalChoice choice;
        EngineOptions engine;
        FinishOptions finisher;
        std::vector<std::uint64_t> seeds;
        /// Seeds run concurrently on this many workers; each run is single-threaded.
        unsigned seed_workers = 1;
    };

    struct ExperimentResult
    {
        std::uint64_t seed = 0;
        std::size_t n = 0;
        std::size_t edges2 = 0;
        std::size_t edges3 = 0;
        DegreeProfile profile;
        std::size_t pairs_replaced = 0;

        std::size_t colors = 0;
        std::size_t iterations = 0;
        double theta = 0;
        double p_hat = 0;

        std::size_t rounds_run = 0;
        double colored_fraction = 0;
        FinishStatus finisher = FinishStatus::report_only;
        bool used_fallback = false;
        std::size_t resamples = 0;
        bool lll_satisfied = false;

        bool verified = false;
        std::string verdict;
        std::size_t colors_used = 0;
        double wall_seconds = 0;
        std::string error;

        /// Uncolored count after each nibble round.
        std::vector<std::size_t> uncolored_trace;
    };

    struct ExperimentSummary
    {
        std::size_t runs = 0;
        std::size_t successes = 0;
        double success_rate = 0;
        double mean_colored_fraction = 0;
        double mean_colors_used = 0;
        /// max{D2 / ln D2, sqrt(D / ln D)} on the mean profile; terms with argument < 2 count as 0.
        double shape = 0;
        /// Mean colors used divided by shape (0 when shape is 0).
        double ratio = 0;
    };

    auto bound_shape(double delta, double delta2) -> double;

    auto run_single(const ExperimentConfig & config, std::uint64_t seed) -> ExperimentResult;
    auto run_experiment(const ExperimentConfig & config) -> std::vector<ExperimentResult>;
    auto summarize(const std::vector<ExperimentResult> & results) -> ExperimentSummary;

    auto results_csv(const std::vector<ExperimentResult> & results) -> std::string;
}
