#pragma once

#include "cocreate/ideation.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cocreate::exp
{

/// Evenly spaced values from `first` to `last` inclusive.
std::vector<double> linspace(double first, double last, std::size_t count);

/**
 * Every knob of the experiment pipeline.
 *
 * Defaults reproduce the reference design: a 100-node ring with k=4, a
 * 500-agent population with p uniform on [0.01, 0.5], walks of 20 steps,
 * 500 ordered pairs x 10 prompts for the exposure study and 5,000 matched
 * shared-source instances.
 */
struct ExperimentConfig {
    std::uint64_t master_seed = 42;
    std::size_t n = 100;
    std::size_t k = 4;

    // modularity-vs-p grid
    std::vector<double> p_grid = linspace(0.05, 1.0, 15);
    std::size_t graphs_per_p = 15;

    // agent population
    double p_min = 0.01;
    double p_max = 0.5;
    std::size_t population_size = 500;

    // walks
    std::size_t steps = 20;     ///< T
    std::size_t prompts = 20;   ///< S
    std::size_t replicates = 30; ///< R
    std::size_t bootstrap_iters = 1000;

    // dyadic exposures
    std::size_t iterations = 10;
    std::size_t ordered_pairs = 500;
    std::size_t prompts_per_pair = 10;
    std::size_t bins = 100;
    bool incorporate = true;
    ideation::TraceEdges trace_mode = ideation::TraceEdges::traversed;

    // shared-source redundancy
    std::size_t matched_instances = 5000;
    std::size_t redundancy_iterations = 1;
    double source_quantile = 0.2;
    double recipient_quantile = 0.2;

    std::string output_dir = "results";
    std::size_t threads = 0;

    /// Throws ParameterError naming the first violated constraint.
    void validate() const;
};

/// Parses TOML text; keys mirror the field names (T, S and R for the walk settings).
ExperimentConfig parse_config(std::string_view toml_text, ExperimentConfig base = {});

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/**
 * Multiplies population size, ordered pairs and matched instances by `factor`
 * (floored), keeping at least 10 clusters in each clustered analysis.
 */
ExperimentConfig scaled(ExperimentConfig config, double factor);

std::string_view to_string(ideation::TraceEdges mode);
ideation::TraceEdges parse_trace_mode(std::string_view text);

} // namespace cocreate::exp
