// Prints one PASS/FAIL line per acceptance criterion; exits 0 only if all pass.

#include "cocreate/acceptance.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria AC1-AC7"};
    cocreate::acceptance::Options options;
    std::string work_dir;
    app.add_flag("--full-scale", options.full_scale, "add the 495,000-instance redundancy run");
    app.add_option("--work-dir", work_dir, "scratch directory for the determinism check");
    app.add_option("--scale-factor", options.scale_factor, "population and study size multiplier")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", options.seed, "master seed");
    app.add_option("--threads", options.threads, "worker threads, 0 = all cores");
    CLI11_PARSE(app, argc, argv);

    options.work_dir = work_dir;
    options.on_result = [](const cocreate::acceptance::CriterionResult& r) {
        std::cout << cocreate::acceptance::format_result(r) << std::endl;
    };
    const auto results = cocreate::acceptance::run_acceptance(options);
    const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
    return passed == static_cast<std::ptrdiff_t>(results.size()) ? 0 : 1;
}
