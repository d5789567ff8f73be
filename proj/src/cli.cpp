#include "cocreate/cli.hpp"
#include "cocreate/acceptance.hpp"
#include "cocreate/error.hpp"
#include "cocreate/experiments.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace cocreate::cli
{
namespace
{

namespace fs = std::filesystem;
using exp::ExperimentConfig;

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool force = false;
    std::optional<std::size_t> threads;
    std::optional<std::size_t> n;
    std::optional<std::size_t> k;
    std::optional<std::size_t> steps;
    std::optional<double> scale_factor;
    bool no_incorporate = false;
    std::optional<std::string> trace_mode;
    std::optional<std::size_t> iterations;
    std::optional<std::size_t> redundancy_iterations;
    std::optional<std::size_t> population;
    std::optional<std::size_t> pairs;
    std::optional<std::size_t> instances;
};

struct SweepFlags {
    std::vector<std::size_t> steps{10, 20, 30};
    std::vector<std::string> sizes{"100:4"};
    std::vector<std::uint64_t> seeds;
    std::vector<int> experiments{1, 2, 3, 4};
};

struct VerifyFlags {
    bool full_scale = false;
    std::string work_dir;
};

void add_common(CLI::App& app, Overrides& o)
{
    app.add_option("--config", o.config_path, "TOML config file")->check(CLI::ExistingFile);
    app.add_option("--seed", o.seed, "master seed");
    app.add_option("--out", o.out, fmt::format("output directory (default: ${} or 'results')", output_dir_env));
    app.add_flag("--force", o.force, "overwrite existing output files");
    app.add_option("--threads", o.threads, "worker threads, 0 = all cores");
    app.add_option("--n", o.n, "concepts per graph |V|");
    app.add_option("--k", o.k, "lattice degree (even)");
    app.add_option("--T", o.steps, "walk length");
    app.add_option("--scale-factor", o.scale_factor,
                   "multiply population, ordered pairs and matched instances (floored, at least 10 clusters)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--no-incorporate", o.no_incorporate, "ablation: recipients ignore the source trace");
    app.add_option("--trace-mode", o.trace_mode, "trace edges handed to recipients")
        ->check(CLI::IsMember({"traversed", "induced"}));
    app.add_option("--iterations", o.iterations, "exposure repeats per (pair, prompt)");
    app.add_option("--redundancy-iterations", o.redundancy_iterations, "repeats per matched instance");
    app.add_option("--population", o.population, "agents N_G");
    app.add_option("--pairs", o.pairs, "ordered pairs in the exposure study");
    app.add_option("--instances", o.instances, "matched instances in the redundancy study");
}

ExperimentConfig resolve_config(const Overrides& o)
{
    ExperimentConfig base;
    if (const char* env = std::getenv(output_dir_env); env && *env) {
        base.output_dir = env;
    }
    ExperimentConfig config = o.config_path.empty() ? base : exp::load_config(o.config_path, base);
    if (o.seed) {
        config.master_seed = *o.seed;
    }
    if (o.out) {
        config.output_dir = *o.out;
    }
    if (o.threads) {
        config.threads = *o.threads;
    }
    if (o.n) {
        config.n = *o.n;
    }
    if (o.k) {
        config.k = *o.k;
    }
    if (o.steps) {
        config.steps = *o.steps;
    }
    if (o.no_incorporate) {
        config.incorporate = false;
    }
    if (o.trace_mode) {
        config.trace_mode = exp::parse_trace_mode(*o.trace_mode);
    }
    if (o.iterations) {
        config.iterations = *o.iterations;
    }
    if (o.redundancy_iterations) {
        config.redundancy_iterations = *o.redundancy_iterations;
    }
    if (o.population) {
        config.population_size = *o.population;
    }
    if (o.pairs) {
        config.ordered_pairs = *o.pairs;
    }
    if (o.instances) {
        config.matched_instances = *o.instances;
    }
    if (o.scale_factor) {
        config = exp::scaled(config, *o.scale_factor);
    }
    config.validate();
    return config;
}

class OutputDir
{
public:
    OutputDir(const fs::path& root, bool force)
        : m_root(root)
        , m_force(force)
    {
    }

    /// Claims every file before anything is computed, so a refusal costs nothing.
    void claim(const std::vector<std::string>& names)
    {
        for (const auto& name : names) {
            const auto path = m_root / name;
            if (!m_force && fs::exists(path)) {
                throw OverwriteRefused(fmt::format("refusing to overwrite '{}' (use --force)", path.string()));
            }
        }
        std::error_code ec;
        fs::create_directories(m_root, ec);
        if (ec) {
            throw Error(fmt::format("cannot create output directory '{}': {}", m_root.string(), ec.message()));
        }
    }

    fs::path operator/(std::string_view name) const
    {
        return m_root / name;
    }

    struct OverwriteRefused : std::runtime_error {
        using std::runtime_error::runtime_error;
    };

private:
    fs::path m_root;
    bool m_force;
};

void write_json(const fs::path& path, const nlohmann::ordered_json& doc)
{
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw Error(fmt::format("cannot write '{}'", path.string()));
    }
    file << doc.dump(2) << '\n';
}

std::string ci(const stats::RegressionResult& r, std::size_t i)
{
    return fmt::format("[{:.4g}, {:.4g}]", r.ci_low.at(i), r.ci_high.at(i));
}

void print_exp1(std::ostream& out, const exp::Exp1Result& r)
{
    fmt::print(out, "exp1  rows={}  spearman rho={:.4f} (p={:.3g})  kendall tau={:.4f} (p={:.3g})\n", r.rows.size(),
               r.spearman.estimate, r.spearman.p_value, r.kendall.estimate, r.kendall.p_value);
    fmt::print(out, "      AIC linear={:.3f}  quadratic={:.3f}\n", r.linear.aic, r.quadratic.aic);
}

void print_exp2(std::ostream& out, const exp::Exp2Result& r)
{
    fmt::print(out, "exp2  agents={}  pearson r={:.4f}  spearman rho={:.4f}  kendall tau={:.4f}\n", r.rows.size(),
               r.pearson.estimate, r.spearman.estimate, r.kendall.estimate);
    fmt::print(out, "      OLS slope={:.4g} {}  Theil-Sen slope={:.4g} {}\n", r.linear.coefficients[1],
               ci(r.linear, 1), r.theil_sen.coefficients[1], ci(r.theil_sen, 1));
    fmt::print(out, "      AIC linear={:.3f}  quadratic={:.3f}\n", r.linear.aic, r.quadratic.aic);
}

void print_exp3(std::ostream& out, const exp::Exp3Result& r)
{
    const double beta = r.fe.coefficients[0];
    fmt::print(out, "exp3  exposures={}  pairs={}  beta={:.4g} {}  se={:.3g}  p={:.3g}\n", r.exposures.size(), r.pairs,
               beta, ci(r.fe, 0), r.fe.se[0], r.fe.p_value[0]);
    fmt::print(out, "      a 0.10 overlap increase ~ {:.3f} fewer new concepts\n", -beta * 0.10);
}

void print_exp4(std::ostream& out, const exp::Exp4Result& r)
{
    fmt::print(out, "exp4  instances={}  delta={:.4g} {}  t={:.3f}  clusters={}\n", r.instances.size(),
               r.delta_test.coefficients[0], ci(r.delta_test, 0), r.delta_test.t_stat[0], r.delta_test.n_clusters);
    fmt::print(out, "      R triad={:.4f}  R control={:.4f}  d_z(sources)={:.3f}  d_z(instances)={:.3f}\n",
               r.triad_mean.coefficients[0], r.control_mean.coefficients[0], r.cohens_dz_sources, r.cohens_dz);
}

int run_gen(const ExperimentConfig& config, OutputDir& dir, std::ostream& out)
{
    dir.claim({"substrate.edges", "population.csv"});
    const auto population = exp::default_population(config);
    {
        std::ofstream file(dir / "substrate.edges");
        semgraph::write_edge_list(file, population.substrate, {config.n, config.k, 0.0, config.master_seed});
    }
    const auto graphs = dir / "graphs";
    fs::create_directories(graphs);
    std::ofstream table(dir / "population.csv");
    table << "agent_id,p,Q\n";
    for (const auto& agent : population.agents) {
        fmt::print(table, "{},{},{}\n", agent.spec.agent_id, agent.spec.p, agent.modularity);
        std::ofstream file(graphs / fmt::format("agent_{:04}.edges", agent.spec.agent_id));
        semgraph::write_edge_list(file, agent.graph, {config.n, config.k, agent.spec.p, agent.spec.stream_key});
    }
    fmt::print(out, "gen   agents={}  n={}  k={}  -> {}\n", population.agents.size(), config.n, config.k,
               (dir / "").string());
    return exit_ok;
}

int run_experiments(const ExperimentConfig& config, OutputDir& dir, const std::vector<int>& which, std::ostream& out)
{
    auto wants = [&](int e) { return std::find(which.begin(), which.end(), e) != which.end(); };
    std::vector<std::string> files{"summary.json"};
    if (wants(1)) {
        files.push_back("exp1_modularity.csv");
    }
    if (wants(2)) {
        files.push_back("exp2_breadth.csv");
    }
    if (wants(3)) {
        files.push_back("exp3_exposures.csv");
        files.push_back("exp3_binned.csv");
    }
    if (wants(4)) {
        files.push_back("exp4_redundancy.csv");
    }
    dir.claim(files);

    nlohmann::ordered_json summary;
    summary["config"] = exp::to_json(config);
    if (wants(1)) {
        const auto r = exp::experiment1_modularity_vs_p(config);
        exp::write_exp1_csv(dir / "exp1_modularity.csv", r);
        summary["exp1"] = exp::summarize(r);
        print_exp1(out, r);
    }
    if (wants(2) || wants(3) || wants(4)) {
        const auto population = exp::default_population(config);
        if (wants(2)) {
            const auto r = exp::experiment2_breadth_vs_modularity(config, population);
            exp::write_exp2_csv(dir / "exp2_breadth.csv", r);
            summary["exp2"] = exp::summarize(r);
            print_exp2(out, r);
        }
        if (wants(3)) {
            const auto r = exp::experiment3_stimulation(config, population);
            exp::write_exp3_csv(dir / "exp3_exposures.csv", dir / "exp3_binned.csv", r);
            summary["exp3"] = exp::summarize(r);
            print_exp3(out, r);
        }
        if (wants(4)) {
            const auto r = exp::experiment4_redundancy(config, population);
            exp::write_exp4_csv(dir / "exp4_redundancy.csv", r);
            summary["exp4"] = exp::summarize(r);
            print_exp4(out, r);
        }
    }
    write_json(dir / "summary.json", summary);
    return exit_ok;
}

std::pair<std::size_t, std::size_t> parse_size(const std::string& text)
{
    const auto colon = text.find(':');
    try {
        if (colon != std::string::npos) {
            return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
        }
    }
    catch (const std::exception&) {
    }
    throw ParameterError(fmt::format("sweep size '{}' is not of the form n:k", text));
}

int run_sweep(const ExperimentConfig& config, OutputDir& dir, const SweepFlags& flags, std::ostream& out,
              std::ostream& err)
{
    exp::SweepAxes axes;
    axes.steps = flags.steps;
    axes.sizes.clear();
    for (const auto& s : flags.sizes) {
        axes.sizes.push_back(parse_size(s));
    }
    axes.seeds = flags.seeds.empty() ? std::vector<std::uint64_t>{config.master_seed} : flags.seeds;
    auto wants = [&](int e) { return std::find(flags.experiments.begin(), flags.experiments.end(), e) != flags.experiments.end(); };
    axes.exp1 = wants(1);
    axes.exp2 = wants(2);
    axes.exp3 = wants(3);
    axes.exp4 = wants(4);
    for (auto size : axes.sizes) {
        ExperimentConfig check = config;
        check.n = size.first;
        check.k = size.second;
        check.validate();
    }

    dir.claim({"sweep.csv", "summary.json"});
    const auto report = exp::run_sweep(config, axes);
    exp::write_sweep_csv(dir / "sweep.csv", report);
    nlohmann::ordered_json summary;
    summary["config"] = exp::to_json(config);
    summary["sweep"] = exp::summarize(report);
    write_json(dir / "summary.json", summary);

    auto show = [](const std::optional<double>& v) { return v ? fmt::format("{:>9.4f}", *v) : fmt::format("{:>9}", "-"); };
    fmt::print(out, "{:>4} {:>5} {:>4} {:>20} {:>9} {:>9} {:>9} {:>9} {:>9}  signs\n", "T", "n", "k", "seed", "rho", "r",
               "beta", "delta", "t");
    for (const auto& c : report.cells) {
        fmt::print(out, "{:>4} {:>5} {:>4} {:>20} {} {} {} {} {}  {}\n", c.steps, c.n, c.k, c.seed, show(c.rho),
                   show(c.r), show(c.beta), show(c.delta), show(c.t), c.signs_hold() ? "ok" : "VIOLATED");
    }
    if (!report.signs_consistent) {
        fmt::print(err, "sweep: headline signs are not consistent across cells\n");
        return exit_failure;
    }
    return exit_ok;
}

int run_verify(const ExperimentConfig& config, const Overrides& o, const VerifyFlags& flags, std::ostream& out)
{
    acceptance::Options options;
    options.scale_factor = o.scale_factor.value_or(1.0);
    options.threads = config.threads;
    options.seed = config.master_seed;
    options.full_scale = flags.full_scale;
    options.work_dir = flags.work_dir;
    options.on_result = [&out](const acceptance::CriterionResult& r) {
        out << acceptance::format_result(r) << '\n';
        out.flush();
    };
    const auto results = acceptance::run_acceptance(options);
    const bool all_passed =
        std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    return all_passed ? exit_ok : exit_failure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Socio-cognitive ideation simulator: semantic-network agents, ideation walks and trace exchange"};
    app.name("cocreate");
    app.require_subcommand(1, 1);

    Overrides overrides;
    SweepFlags sweep_flags;
    VerifyFlags verify_flags;

    struct Command {
        const char* name;
        const char* help;
    };
    const Command commands[] = {
        {"gen", "generate the substrate and agent population as edge lists"},
        {"exp1", "modularity against the rewiring probability p"},
        {"exp2", "expected breadth against modularity"},
        {"exp3", "dyadic stimulation: gain against pre-interaction overlap"},
        {"exp4", "shared-source redundancy: triad against control"},
        {"sweep", "headline signs across walk lengths, graph sizes and seeds"},
        {"all", "run experiments 1 to 4"},
        {"verify", "run the acceptance criteria and print PASS/FAIL per criterion"},
    };
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_common(*sub, overrides);
        if (std::string_view(c.name) == "sweep") {
            sub->add_option("--sweep-T", sweep_flags.steps, "walk lengths")->delimiter(',');
            sub->add_option("--sweep-size", sweep_flags.sizes, "n:k pairs")->delimiter(',');
            sub->add_option("--sweep-seeds", sweep_flags.seeds, "master seeds (default: --seed)")->delimiter(',');
            sub->add_option("--experiments", sweep_flags.experiments, "experiments to include")
                ->delimiter(',')
                ->check(CLI::Range(1, 4));
        }
        if (std::string_view(c.name) == "verify") {
            sub->add_flag("--full-scale", verify_flags.full_scale, "add the 495,000-instance redundancy run");
            sub->add_option("--work-dir", verify_flags.work_dir, "scratch directory for the determinism check");
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    }
    catch (const CLI::ParseError& e) {
        fmt::print(err, "cocreate: {}\n", e.what());
        return exit_usage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    ExperimentConfig config;
    try {
        config = resolve_config(overrides);
    }
    catch (const ParameterError& e) {
        fmt::print(err, "cocreate: {}\n", e.what());
        return exit_usage;
    }

    try {
        OutputDir dir(config.output_dir, overrides.force);
        if (command == "gen") {
            return run_gen(config, dir, out);
        }
        if (command == "sweep") {
            return run_sweep(config, dir, sweep_flags, out, err);
        }
        if (command == "verify") {
            return run_verify(config, overrides, verify_flags, out);
        }
        if (command == "all") {
            return run_experiments(config, dir, {1, 2, 3, 4}, out);
        }
        return run_experiments(config, dir, {command.back() - '0'}, out);
    }
    catch (const OutputDir::OverwriteRefused& e) {
        fmt::print(err, "cocreate: {}\n", e.what());
        return exit_usage;
    }
    catch (const ParameterError& e) {
        fmt::print(err, "cocreate: {}\n", e.what());
        return exit_usage;
    }
    catch (const std::exception& e) {
        fmt::print(err, "cocreate: {}\n", e.what());
        return exit_failure;
    }
}

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace cocreate::cli
