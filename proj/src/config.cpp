#include "cocreate/config.hpp"
#include "cocreate/error.hpp"

#include <fmt/format.h>
#include <toml.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cocreate::exp
{
namespace
{

std::size_t as_count(const toml::node& node, std::string_view key)
{
    if (const auto* v = node.as_integer(); v && v->get() >= 0) {
        return static_cast<std::size_t>(v->get());
    }
    throw ParameterError(fmt::format("config: '{}' must be a non-negative integer", key));
}

double as_real(const toml::node& node, std::string_view key)
{
    if (node.is_number()) {
        return *node.value<double>();
    }
    throw ParameterError(fmt::format("config: '{}' must be a number", key));
}

std::vector<double> as_reals(const toml::node& node, std::string_view key)
{
    const auto* array = node.as_array();
    if (!array) {
        throw ParameterError(fmt::format("config: '{}' must be an array of numbers", key));
    }
    std::vector<double> values;
    for (const auto& item : *array) {
        values.push_back(as_real(item, key));
    }
    return values;
}

} // namespace

std::vector<double> linspace(double first, double last, std::size_t count)
{
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        values[i] = count == 1 ? first : first + (last - first) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return values;
}

void ExperimentConfig::validate() const
{
    auto positive = [](std::size_t v, std::string_view name) {
        if (v < 1) {
            throw ParameterError(fmt::format("config: '{}' must be >= 1", name));
        }
    };
    positive(n, "n");
    positive(k, "k");
    positive(graphs_per_p, "graphs_per_p");
    positive(population_size, "population_size");
    positive(prompts, "S");
    positive(replicates, "R");
    positive(iterations, "iterations");
    positive(ordered_pairs, "ordered_pairs");
    positive(prompts_per_pair, "prompts_per_pair");
    positive(bins, "bins");
    positive(matched_instances, "matched_instances");
    positive(redundancy_iterations, "redundancy_iterations");
    if (n < 3 || k < 2 || k % 2 != 0 || k >= n) {
        throw ParameterError(fmt::format("config: need n >= 3 and even k with 2 <= k < n (n={}, k={})", n, k));
    }
    if (p_grid.empty()) {
        throw ParameterError("config: 'p_grid' must not be empty");
    }
    for (double p : p_grid) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ParameterError(fmt::format("config: p_grid value {} outside [0, 1]", p));
        }
    }
    if (!(p_min >= 0.0 && p_min <= p_max && p_max <= 1.0)) {
        throw ParameterError(fmt::format("config: need 0 <= p_min <= p_max <= 1 (got {}, {})", p_min, p_max));
    }
    for (auto [q, name] : {std::pair{source_quantile, "source_quantile"}, {recipient_quantile, "recipient_quantile"}}) {
        if (!(q > 0.0 && q <= 0.5)) {
            throw ParameterError(fmt::format("config: '{}' must lie in (0, 0.5], got {}", name, q));
        }
    }
    if (bootstrap_iters < 100) {
        throw ParameterError("config: 'bootstrap_iters' must be >= 100");
    }
    if (prompts_per_pair > n) {
        throw ParameterError("config: 'prompts_per_pair' cannot exceed n (prompts are distinct within a pair)");
    }
    if (output_dir.empty()) {
        throw ParameterError("config: 'output_dir' must not be empty");
    }
}

ExperimentConfig parse_config(std::string_view toml_text, ExperimentConfig config)
{
    toml::table table;
    try {
        table = toml::parse(toml_text);
    }
    catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << "config: " << e.description() << " at " << e.source().begin;
        throw ParameterError(msg.str());
    }

    for (const auto& [key_node, node] : table) {
        const std::string_view key = key_node.str();
        if (key == "master_seed") {
            config.master_seed = as_count(node, key);
        }
        else if (key == "n") {
            config.n = as_count(node, key);
        }
        else if (key == "k") {
            config.k = as_count(node, key);
        }
        else if (key == "p_grid") {
            config.p_grid = as_reals(node, key);
        }
        else if (key == "graphs_per_p") {
            config.graphs_per_p = as_count(node, key);
        }
        else if (key == "p_range") {
            const auto range = as_reals(node, key);
            if (range.size() != 2) {
                throw ParameterError("config: 'p_range' must be [low, high]");
            }
            config.p_min = range[0];
            config.p_max = range[1];
        }
        else if (key == "population_size") {
            config.population_size = as_count(node, key);
        }
        else if (key == "T") {
            config.steps = as_count(node, key);
        }
        else if (key == "S") {
            config.prompts = as_count(node, key);
        }
        else if (key == "R") {
            config.replicates = as_count(node, key);
        }
        else if (key == "bootstrap_iters") {
            config.bootstrap_iters = as_count(node, key);
        }
        else if (key == "iterations") {
            config.iterations = as_count(node, key);
        }
        else if (key == "ordered_pairs") {
            config.ordered_pairs = as_count(node, key);
        }
        else if (key == "prompts_per_pair") {
            config.prompts_per_pair = as_count(node, key);
        }
        else if (key == "bins") {
            config.bins = as_count(node, key);
        }
        else if (key == "incorporate") {
            const auto* v = node.as_boolean();
            if (!v) {
                throw ParameterError("config: 'incorporate' must be a boolean");
            }
            config.incorporate = v->get();
        }
        else if (key == "trace_mode") {
            const auto* v = node.as_string();
            if (!v) {
                throw ParameterError("config: 'trace_mode' must be a string");
            }
            config.trace_mode = parse_trace_mode(v->get());
        }
        else if (key == "matched_instances") {
            config.matched_instances = as_count(node, key);
        }
        else if (key == "redundancy_iterations") {
            config.redundancy_iterations = as_count(node, key);
        }
        else if (key == "source_quantile") {
            config.source_quantile = as_real(node, key);
        }
        else if (key == "recipient_quantile") {
            config.recipient_quantile = as_real(node, key);
        }
        else if (key == "output_dir") {
            const auto* v = node.as_string();
            if (!v) {
                throw ParameterError("config: 'output_dir' must be a string");
            }
            config.output_dir = v->get();
        }
        else if (key == "threads") {
            config.threads = as_count(node, key);
        }
        else {
            throw ParameterError(fmt::format("config: unknown key '{}'", key));
        }
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base)
{
    std::ifstream in(path);
    if (!in) {
        throw ParameterError(fmt::format("config: cannot read '{}'", path.string()));
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), std::move(base));
}

ExperimentConfig scaled(ExperimentConfig config, double factor)
{
    if (!(factor > 0.0)) {
        throw ParameterError(fmt::format("scale factor must be positive, got {}", factor));
    }
    auto scale = [factor](std::size_t v, std::size_t floor_value) {
        const auto s = static_cast<std::size_t>(std::floor(static_cast<double>(v) * factor));
        return std::max(s, std::min(v, floor_value));
    };
    // 10 sources in the smaller quantile pool
    const double pool_share = std::min(config.source_quantile, config.recipient_quantile);
    const auto min_population = static_cast<std::size_t>(std::ceil(10.0 / pool_share));
    config.population_size = scale(config.population_size, min_population);
    config.ordered_pairs = scale(config.ordered_pairs, 10);
    config.matched_instances = scale(config.matched_instances, 10);
    return config;
}

std::string_view to_string(ideation::TraceEdges mode)
{
    return mode == ideation::TraceEdges::traversed ? "traversed" : "induced";
}

ideation::TraceEdges parse_trace_mode(std::string_view text)
{
    if (text == "traversed") {
        return ideation::TraceEdges::traversed;
    }
    if (text == "induced") {
        return ideation::TraceEdges::induced;
    }
    throw ParameterError(fmt::format("unknown trace mode '{}' (expected traversed or induced)", text));
}

} // namespace cocreate::exp
