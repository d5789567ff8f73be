#pragma once

#include "cocreate/config.hpp"
#include "cocreate/random.hpp"
#include "cocreate/semgraph.hpp"
#include "cocreate/social.hpp"
#include "cocreate/stats.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cocreate::exp
{

struct Agent {
    semgraph::AgentSpec spec;
    semgraph::ConceptGraph graph;
    double modularity = 0.0;
};

struct AgentPopulation {
    semgraph::ConceptGraph substrate;
    std::vector<Agent> agents;
};

/// How agents get their rewiring probability.
struct PopulationLayout {
    /// Empty: population_size agents with p uniform on [p_min, p_max].
    /// Otherwise: `per_p` agents for every grid value, grid-major.
    std::vector<double> grid;
    std::size_t per_p = 0;
};

/**
 * Substrate plus one rewired graph per agent with its detected modularity.
 * Agent i draws p from rng.fork({"p", i}) and rewires with rng.fork({"graph", i}).
 */
AgentPopulation build_population(const ExperimentConfig& config, Stream& rng, const PopulationLayout& layout = {});

/// The population the exposure and redundancy studies share.
AgentPopulation default_population(const ExperimentConfig& config);

// ---------------------------------------------------------------------------

struct Exp1Row {
    double p = 0.0;
    std::size_t replicate = 0;
    double q = 0.0;
};

struct Exp1GridPoint {
    double p = 0.0;
    double mean_q = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct Exp1Result {
    std::vector<Exp1Row> rows;
    std::vector<Exp1GridPoint> grid;
    stats::CorrelationResult spearman;
    stats::CorrelationResult kendall;
    stats::RegressionResult linear;
    stats::RegressionResult quadratic;
};

/// Modularity across the p grid, graphs_per_p graphs per point.
Exp1Result experiment1_modularity_vs_p(const ExperimentConfig& config);

struct Exp2Row {
    std::uint32_t agent_id = 0;
    double p = 0.0;
    double q = 0.0;
    double b_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct Exp2Result {
    std::vector<Exp2Row> rows;
    stats::CorrelationResult pearson;
    stats::CorrelationResult spearman;
    stats::CorrelationResult kendall;
    stats::RegressionResult linear;
    stats::RegressionResult quadratic;
    stats::RegressionResult theil_sen;
};

/// Expected breadth against modularity for every agent.
Exp2Result experiment2_breadth_vs_modularity(const ExperimentConfig& config, const AgentPopulation& population);

struct Exp3Result {
    std::vector<social::ExposureRecord> exposures;
    stats::RegressionResult fe;
    std::vector<stats::BinPoint> binned;
    /// OLS slope through the unbinned residualized cloud; equals fe.coefficients[0]
    double residual_slope = 0.0;
    std::size_t pairs = 0;
};

/**
 * Ordered pairs drawn without replacement, distinct prompts within each pair,
 * one exposure per (pair, prompt); gain on overlap with pair and prompt fixed
 * effects, errors clustered by pair.
 */
Exp3Result experiment3_stimulation(const ExperimentConfig& config, const AgentPopulation& population);

struct Exp4Result {
    std::vector<social::RedundancyInstance> instances;
    stats::RegressionResult delta_test;
    stats::RegressionResult triad_mean;
    stats::RegressionResult control_mean;
    double cohens_dz = 0.0;
    /// d_z over the per-source mean differences
    double cohens_dz_sources = 0.0;
    std::vector<std::uint32_t> source_pool;
    std::vector<std::uint32_t> recipient_pool;
};

/**
 * Matched triad/control instances with sources from the lowest-modularity
 * quantile and recipients from the highest; deltas tested against zero with
 * errors clustered by the shared source h1.
 */
Exp4Result experiment4_redundancy(const ExperimentConfig& config, const AgentPopulation& population);

// ---------------------------------------------------------------------------

struct SweepAxes {
    std::vector<std::size_t> steps{20};
    std::vector<std::pair<std::size_t, std::size_t>> sizes{{100, 4}};
    std::vector<std::uint64_t> seeds{42};
    bool exp1 = true;
    bool exp2 = true;
    bool exp3 = true;
    bool exp4 = true;
};

struct SweepCell {
    std::size_t steps = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::optional<double> rho;    ///< Spearman(p, Q)
    std::optional<double> r;      ///< Pearson(Q, B_hat)
    std::optional<double> beta;   ///< exposure slope
    std::optional<double> delta;  ///< mean redundancy difference
    std::optional<double> t;      ///< clustered t of delta

    bool signs_hold() const;
};

struct SweepReport {
    std::vector<SweepCell> cells;
    bool signs_consistent = true;
};

/// Re-runs the selected experiments for every (T, (n, k), seed) combination.
SweepReport run_sweep(const ExperimentConfig& config, const SweepAxes& axes);

// ---------------------------------------------------------------------------

void write_exp1_csv(const std::filesystem::path& path, const Exp1Result& result);
void write_exp2_csv(const std::filesystem::path& path, const Exp2Result& result);
void write_exp3_csv(const std::filesystem::path& exposures_path, const std::filesystem::path& binned_path,
                    const Exp3Result& result);
void write_exp4_csv(const std::filesystem::path& path, const Exp4Result& result);
void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report);

nlohmann::ordered_json to_json(const stats::CorrelationResult& result);
nlohmann::ordered_json to_json(const stats::RegressionResult& result);
nlohmann::ordered_json to_json(const ExperimentConfig& config);
nlohmann::ordered_json summarize(const Exp1Result& result);
nlohmann::ordered_json summarize(const Exp2Result& result);
nlohmann::ordered_json summarize(const Exp3Result& result);
nlohmann::ordered_json summarize(const Exp4Result& result);
nlohmann::ordered_json summarize(const SweepReport& report);

/// Shortest round-trip decimal form, as written to the CSV files.
std::string format_number(double value);

} // namespace cocreate::exp
