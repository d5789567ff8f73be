#pragma once

#include "cocreate/config.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace cocreate::acceptance
{

struct CriterionResult {
    std::string id;
    std::string description;
    bool passed = false;
    std::string detail;
};

struct Options {
    /// Multiplies population size, ordered pairs and matched instances; thresholds widen with 1/sqrt(f).
    double scale_factor = 1.0;
    std::size_t threads = 0;
    std::uint64_t seed = 42;
    /// adds the 495,000-instance redundancy run
    bool full_scale = false;
    /// scratch space for the determinism check; a temporary directory when empty
    std::filesystem::path work_dir;
    /// called with each criterion as soon as it finishes
    std::function<void(const CriterionResult&)> on_result;
};

/// Threshold widening w = 1/sqrt(f) - 1 (0 at f >= 1).
double widening(double scale_factor);

CriterionResult check_knob_monotonicity(const Options& options);
CriterionResult check_breadth(const Options& options);
CriterionResult check_stimulation(const Options& options);
CriterionResult check_redundancy(const Options& options);
CriterionResult check_robustness(const Options& options);
CriterionResult check_oracles(const Options& options);
CriterionResult check_determinism(const Options& options);

/// All criteria in order AC1..AC7.
std::vector<CriterionResult> run_acceptance(const Options& options);

/// `PASS AC1 ...` / `FAIL AC1 ...`
std::string format_result(const CriterionResult& result);

} // namespace cocreate::acceptance
