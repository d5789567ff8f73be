#include "cocreate/experiments.hpp"
#include "cocreate/error.hpp"
#include "cocreate/parallel.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace cocreate::exp
{
namespace
{

constexpr std::size_t retry_budget = 100;

using nlohmann::ordered_json;

std::vector<double> column(std::span<const Exp2Row> rows, double Exp2Row::*field)
{
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row.*field);
    }
    return out;
}

// NaN and infinities have no JSON form
ordered_json number(double value)
{
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return value;
}

ordered_json numbers(const std::vector<double>& values)
{
    auto out = ordered_json::array();
    for (double v : values) {
        out.push_back(number(v));
    }
    return out;
}

ordered_json p_value(double p)
{
    if (p < 1e-15) {
        return "< 1e-15";
    }
    return number(p);
}

ordered_json p_values(const std::vector<double>& values)
{
    auto out = ordered_json::array();
    for (double v : values) {
        out.push_back(p_value(v));
    }
    return out;
}

fmt::ostream open_csv(const std::filesystem::path& path)
{
    try {
        return fmt::output_file(path.string());
    }
    catch (const std::system_error& e) {
        throw Error(fmt::format("cannot write '{}': {}", path.string(), e.what()));
    }
}

std::uint32_t draw_other(Stream& rng, std::span<const std::uint32_t> pool, std::uint32_t avoid, std::string_view what)
{
    for (std::size_t attempt = 0; attempt < retry_budget; ++attempt) {
        const auto pick = pool[uniform_index(rng, pool.size())];
        if (pick != avoid) {
            return pick;
        }
    }
    throw DegenerateInputError(fmt::format("could not draw a distinct {} within {} attempts", what, retry_budget));
}

} // namespace

std::string format_number(double value)
{
    return fmt::format("{}", value);
}

AgentPopulation build_population(const ExperimentConfig& config, Stream& rng, const PopulationLayout& layout)
{
    config.validate();
    if (!layout.grid.empty() && layout.per_p < 1) {
        throw ParameterError("build_population: grid layout needs at least one graph per p");
    }
    AgentPopulation population{semgraph::generate_substrate({config.n, config.k}), {}};
    const std::size_t count = layout.grid.empty() ? config.population_size : layout.grid.size() * layout.per_p;

    std::vector<double> ps(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (layout.grid.empty()) {
            auto p_stream = rng.fork({"p", i});
            ps[i] = uniform_real(p_stream, config.p_min, config.p_max);
        }
        else {
            ps[i] = layout.grid[i / layout.per_p];
        }
    }

    std::vector<std::optional<Agent>> built(count);
    parallel_for(count, config.threads, [&](std::size_t i) {
        const auto key = rng.fork({"graph", i});
        auto graph_stream = key;
        auto graph = semgraph::rewire(population.substrate, ps[i], graph_stream);
        const double q = semgraph::agent_modularity(graph);
        built[i] = Agent{{static_cast<std::uint32_t>(i), ps[i], key.key()}, std::move(graph), q};
    });
    population.agents.reserve(count);
    for (auto& agent : built) {
        population.agents.push_back(std::move(*agent));
    }
    return population;
}

AgentPopulation default_population(const ExperimentConfig& config)
{
    auto rng = derive_stream(config.master_seed, {"population"});
    return build_population(config, rng);
}

Exp1Result experiment1_modularity_vs_p(const ExperimentConfig& config)
{
    config.validate();
    if (config.p_grid.size() < 10) {
        throw ParameterError(fmt::format("experiment 1 needs at least 10 grid values, got {}", config.p_grid.size()));
    }
    auto rng = derive_stream(config.master_seed, {"exp1"});
    const auto population = build_population(config, rng, {config.p_grid, config.graphs_per_p});

    Exp1Result result;
    std::vector<double> ps;
    std::vector<double> qs;
    for (std::size_t i = 0; i < population.agents.size(); ++i) {
        const auto& agent = population.agents[i];
        result.rows.push_back({agent.spec.p, i % config.graphs_per_p, agent.modularity});
        ps.push_back(agent.spec.p);
        qs.push_back(agent.modularity);
    }

    for (std::size_t g = 0; g < config.p_grid.size(); ++g) {
        std::span<const double> block(qs.data() + g * config.graphs_per_p, config.graphs_per_p);
        Exp1GridPoint point{config.p_grid[g], stats::mean(block), 0.0, 0.0};
        if (block.size() >= 2) {
            auto ci_stream = derive_stream(config.master_seed, {"exp1", "ci", g});
            const auto ci = stats::bootstrap_ci(block, config.bootstrap_iters, ci_stream);
            point.ci_low = ci.low;
            point.ci_high = ci.high;
        }
        else {
            point.ci_low = point.ci_high = point.mean_q;
        }
        result.grid.push_back(point);
    }

    result.spearman = stats::spearman(ps, qs);
    result.kendall = stats::kendall(ps, qs);
    result.linear = stats::ols(qs, {ps});
    result.quadratic = stats::ols_quadratic(ps, qs);
    return result;
}

Exp2Result experiment2_breadth_vs_modularity(const ExperimentConfig& config, const AgentPopulation& population)
{
    config.validate();
    if (population.agents.size() < 3) {
        throw ParameterError("experiment 2 needs at least 3 agents");
    }
    Exp2Result result;
    result.rows.resize(population.agents.size());
    parallel_for(population.agents.size(), config.threads, [&](std::size_t i) {
        const auto& agent = population.agents[i];
        auto rng = derive_stream(config.master_seed, {"exp2", "agent", agent.spec.agent_id});
        const auto estimate = ideation::expected_breadth(agent.graph, config.steps, config.prompts,
                                                         config.replicates, rng, config.bootstrap_iters);
        result.rows[i] = {agent.spec.agent_id, agent.spec.p, agent.modularity,
                          estimate.mean,       estimate.ci_low, estimate.ci_high};
    });

    const auto q = column(result.rows, &Exp2Row::q);
    const auto b = column(result.rows, &Exp2Row::b_hat);
    result.pearson = stats::pearson(q, b);
    result.spearman = stats::spearman(q, b);
    result.kendall = stats::kendall(q, b);
    result.linear = stats::ols(b, {q});
    result.quadratic = stats::ols_quadratic(q, b);
    auto ts_stream = derive_stream(config.master_seed, {"exp2", "theil_sen"});
    result.theil_sen = stats::theil_sen(q, b, config.bootstrap_iters, ts_stream);
    return result;
}

Exp3Result experiment3_stimulation(const ExperimentConfig& config, const AgentPopulation& population)
{
    config.validate();
    const std::size_t agents = population.agents.size();
    if (agents < 2 || agents * (agents - 1) < config.ordered_pairs) {
        throw ParameterError(fmt::format("experiment 3: {} agents cannot supply {} distinct ordered pairs", agents,
                                         config.ordered_pairs));
    }
    const std::size_t n = population.substrate.node_count();
    const std::size_t per_pair = config.prompts_per_pair;
    if (config.ordered_pairs * per_pair < config.bins) {
        throw ParameterError(fmt::format("experiment 3: {} exposures cannot fill {} bins",
                                         config.ordered_pairs * per_pair, config.bins));
    }

    auto draw = derive_stream(config.master_seed, {"exp3", "pairs"});
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::vector<std::vector<semgraph::NodeId>> prompts;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::vector<semgraph::NodeId> deck(n);
    for (std::size_t pair = 0; pair < config.ordered_pairs; ++pair) {
        bool placed = false;
        for (std::size_t attempt = 0; attempt < retry_budget && !placed; ++attempt) {
            const auto i = static_cast<std::uint32_t>(uniform_index(draw, agents));
            const auto j = static_cast<std::uint32_t>(uniform_index(draw, agents));
            if (i != j && seen.insert({i, j}).second) {
                pairs.emplace_back(i, j);
                placed = true;
            }
        }
        if (!placed) {
            throw DegenerateInputError(fmt::format("experiment 3: no fresh ordered pair within {} attempts",
                                                   retry_budget));
        }
        // partial Fisher-Yates: distinct prompts within the pair
        std::iota(deck.begin(), deck.end(), semgraph::NodeId{0});
        for (std::size_t slot = 0; slot < per_pair; ++slot) {
            const auto pick = slot + uniform_index(draw, n - slot);
            std::swap(deck[slot], deck[pick]);
        }
        prompts.emplace_back(deck.begin(), deck.begin() + static_cast<std::ptrdiff_t>(per_pair));
    }

    const social::ExposureOptions options{config.steps, config.iterations, config.incorporate, config.trace_mode};
    Exp3Result result;
    result.pairs = pairs.size();
    result.exposures.resize(pairs.size() * per_pair);
    parallel_for(result.exposures.size(), config.threads, [&](std::size_t idx) {
        const std::size_t pair = idx / per_pair;
        const std::size_t slot = idx % per_pair;
        const auto [source, recipient] = pairs[pair];
        auto rng = derive_stream(config.master_seed, {"exp3", "exposure", pair, slot});
        auto record = social::run_exposure(population.agents[source].graph, population.agents[recipient].graph,
                                           prompts[pair][slot], options, rng);
        record.pair_id = static_cast<std::uint32_t>(pair);
        record.source_id = population.agents[source].spec.agent_id;
        record.recipient_id = population.agents[recipient].spec.agent_id;
        result.exposures[idx] = record;
    });

    std::vector<stats::PanelObservation> panel;
    panel.reserve(result.exposures.size());
    for (const auto& e : result.exposures) {
        panel.push_back({e.gain_mean, e.overlap_mean, e.pair_id, e.prompt, e.pair_id});
    }
    result.fe = stats::two_way_fe(panel);
    result.binned = stats::quantile_bin_partial(panel, config.bins);

    const auto res = stats::residualize(panel);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < res.x.size(); ++i) {
        sxy += res.x[i] * res.y[i];
        sxx += res.x[i] * res.x[i];
    }
    result.residual_slope = sxy / sxx;
    return result;
}

Exp4Result experiment4_redundancy(const ExperimentConfig& config, const AgentPopulation& population)
{
    config.validate();
    const std::size_t agents = population.agents.size();
    std::vector<std::uint32_t> order(agents);
    std::iota(order.begin(), order.end(), std::uint32_t{0});
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::tuple(population.agents[a].modularity, a) < std::tuple(population.agents[b].modularity, b);
    });
    const auto source_count = static_cast<std::size_t>(std::floor(config.source_quantile * static_cast<double>(agents)));
    const auto recipient_count =
        static_cast<std::size_t>(std::floor(config.recipient_quantile * static_cast<double>(agents)));
    if (source_count < 2 || recipient_count < 2) {
        throw ParameterError(fmt::format("experiment 4: pools of {} sources and {} recipients are too small "
                                         "(need 2 each)",
                                         source_count, recipient_count));
    }

    Exp4Result result;
    result.source_pool.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(source_count));
    result.recipient_pool.assign(order.end() - static_cast<std::ptrdiff_t>(recipient_count), order.end());
    std::sort(result.source_pool.begin(), result.source_pool.end());
    std::sort(result.recipient_pool.begin(), result.recipient_pool.end());

    const auto n = population.substrate.node_count();
    const social::RedundancyOptions options{config.steps, config.redundancy_iterations, config.trace_mode};
    result.instances.resize(config.matched_instances);
    parallel_for(config.matched_instances, config.threads, [&](std::size_t idx) {
        auto rng = derive_stream(config.master_seed, {"exp4", "instance", idx});
        auto draw = rng.fork({"tuple"});
        const auto h1 = result.source_pool[uniform_index(draw, source_count)];
        const auto h2 = draw_other(draw, result.source_pool, h1, "second source");
        const auto a = result.recipient_pool[uniform_index(draw, recipient_count)];
        const auto b = draw_other(draw, result.recipient_pool, a, "second recipient");
        const auto s = static_cast<semgraph::NodeId>(uniform_index(draw, n));

        auto walks = rng.fork({"walks"});
        auto instance = social::run_redundancy_instance(population.agents[h1].graph, population.agents[h2].graph,
                                                        population.agents[a].graph, population.agents[b].graph, s,
                                                        options, walks);
        instance.instance_id = static_cast<std::uint32_t>(idx);
        instance.source1_id = population.agents[h1].spec.agent_id;
        instance.source2_id = population.agents[h2].spec.agent_id;
        instance.recipient_a_id = population.agents[a].spec.agent_id;
        instance.recipient_b_id = population.agents[b].spec.agent_id;
        result.instances[idx] = instance;
    });

    std::vector<double> deltas, triad, control;
    std::vector<std::uint32_t> cluster;
    std::map<std::uint32_t, std::pair<double, std::size_t>> by_source;
    for (const auto& inst : result.instances) {
        deltas.push_back(inst.delta);
        triad.push_back(inst.r_triad);
        control.push_back(inst.r_control);
        cluster.push_back(inst.source1_id);
        auto& [sum, count] = by_source[inst.source1_id];
        sum += inst.delta;
        ++count;
    }
    result.delta_test = stats::clustered_mean_test(deltas, cluster);
    result.triad_mean = stats::clustered_mean_test(triad, cluster);
    result.control_mean = stats::clustered_mean_test(control, cluster);
    result.cohens_dz = stats::cohens_dz(deltas);
    std::vector<double> source_means;
    for (const auto& [id, acc] : by_source) {
        source_means.push_back(acc.first / static_cast<double>(acc.second));
    }
    result.cohens_dz_sources = stats::cohens_dz(source_means);
    return result;
}

// ---------------------------------------------------------------------------

bool SweepCell::signs_hold() const
{
    return (!rho || *rho < 0.0) && (!r || *r < 0.0) && (!beta || *beta < 0.0) && (!delta || *delta > 0.0);
}

SweepReport run_sweep(const ExperimentConfig& config, const SweepAxes& axes)
{
    if (axes.steps.empty() || axes.sizes.empty() || axes.seeds.empty()) {
        throw ParameterError("sweep: every axis needs at least one value");
    }
    SweepReport report;
    for (auto seed : axes.seeds) {
        for (auto [n, k] : axes.sizes) {
            ExperimentConfig base = config;
            base.master_seed = seed;
            base.n = n;
            base.k = k;
            base.validate();

            // neither the population nor experiment 1 depends on T
            std::optional<double> rho;
            if (axes.exp1) {
                rho = experiment1_modularity_vs_p(base).spearman.estimate;
            }
            std::optional<AgentPopulation> population;
            if (axes.exp2 || axes.exp3 || axes.exp4) {
                population = default_population(base);
            }
            for (auto steps : axes.steps) {
                ExperimentConfig cell_config = base;
                cell_config.steps = steps;
                SweepCell cell{steps, n, k, seed, rho, {}, {}, {}, {}};
                if (axes.exp2) {
                    cell.r = experiment2_breadth_vs_modularity(cell_config, *population).pearson.estimate;
                }
                if (axes.exp3) {
                    cell.beta = experiment3_stimulation(cell_config, *population).fe.coefficients[0];
                }
                if (axes.exp4) {
                    const auto e4 = experiment4_redundancy(cell_config, *population);
                    cell.delta = e4.delta_test.coefficients[0];
                    cell.t = e4.delta_test.t_stat[0];
                }
                report.signs_consistent = report.signs_consistent && cell.signs_hold();
                report.cells.push_back(cell);
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

void write_exp1_csv(const std::filesystem::path& path, const Exp1Result& result)
{
    auto out = open_csv(path);
    out.print("p,replicate,Q\n");
    for (const auto& row : result.rows) {
        out.print("{},{},{}\n", row.p, row.replicate, row.q);
    }
}

void write_exp2_csv(const std::filesystem::path& path, const Exp2Result& result)
{
    auto out = open_csv(path);
    out.print("agent_id,p,Q,B_hat,ci_low,ci_high\n");
    for (const auto& row : result.rows) {
        out.print("{},{},{},{},{},{}\n", row.agent_id, row.p, row.q, row.b_hat, row.ci_low, row.ci_high);
    }
}

void write_exp3_csv(const std::filesystem::path& exposures_path, const std::filesystem::path& binned_path,
                    const Exp3Result& result)
{
    {
        auto out = open_csv(exposures_path);
        out.print("pair_id,source_id,recipient_id,prompt,overlap_mean,gain_mean\n");
        for (const auto& e : result.exposures) {
            out.print("{},{},{},{},{},{}\n", e.pair_id, e.source_id, e.recipient_id, e.prompt, e.overlap_mean,
                      e.gain_mean);
        }
    }
    auto out = open_csv(binned_path);
    out.print("bin,mean_resid_overlap,mean_resid_gain\n");
    for (std::size_t b = 0; b < result.binned.size(); ++b) {
        out.print("{},{},{}\n", b, result.binned[b].mean_x, result.binned[b].mean_y);
    }
}

void write_exp4_csv(const std::filesystem::path& path, const Exp4Result& result)
{
    auto out = open_csv(path);
    out.print("instance_id,source1_id,source2_id,recipient_a_id,recipient_b_id,prompt,r_triad,r_control,delta\n");
    for (const auto& i : result.instances) {
        out.print("{},{},{},{},{},{},{},{},{}\n", i.instance_id, i.source1_id, i.source2_id, i.recipient_a_id,
                  i.recipient_b_id, i.prompt, i.r_triad, i.r_control, i.delta);
    }
}

void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report)
{
    auto cell_value = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    auto out = open_csv(path);
    out.print("T,n,k,seed,rho,r,beta,delta,t,signs_hold\n");
    for (const auto& c : report.cells) {
        out.print("{},{},{},{},{},{},{},{},{},{}\n", c.steps, c.n, c.k, c.seed, cell_value(c.rho), cell_value(c.r),
                  cell_value(c.beta), cell_value(c.delta), cell_value(c.t), c.signs_hold() ? 1 : 0);
    }
}

// ---------------------------------------------------------------------------

ordered_json to_json(const stats::CorrelationResult& result)
{
    return {{"method", stats::to_string(result.method)},
            {"estimate", number(result.estimate)},
            {"p_value", p_value(result.p_value)},
            {"n", result.n}};
}

ordered_json to_json(const stats::RegressionResult& result)
{
    ordered_json out = {{"estimator", stats::to_string(result.estimator)},
                        {"coefficients", numbers(result.coefficients)},
                        {"se", numbers(result.se)},
                        {"t", numbers(result.t_stat)},
                        {"p_value", p_values(result.p_value)},
                        {"ci_low", numbers(result.ci_low)},
                        {"ci_high", numbers(result.ci_high)},
                        {"r_squared", number(result.r_squared)},
                        {"aic", number(result.aic)},
                        {"n", result.n_obs}};
    if (result.clustered) {
        out["clusters"] = result.n_clusters;
    }
    out["df"] = number(result.df);
    return out;
}

ordered_json to_json(const ExperimentConfig& config)
{
    return {{"master_seed", config.master_seed},
            {"n", config.n},
            {"k", config.k},
            {"p_grid", numbers(config.p_grid)},
            {"graphs_per_p", config.graphs_per_p},
            {"p_range", {number(config.p_min), number(config.p_max)}},
            {"population_size", config.population_size},
            {"T", config.steps},
            {"S", config.prompts},
            {"R", config.replicates},
            {"bootstrap_iters", config.bootstrap_iters},
            {"iterations", config.iterations},
            {"ordered_pairs", config.ordered_pairs},
            {"prompts_per_pair", config.prompts_per_pair},
            {"bins", config.bins},
            {"incorporate", config.incorporate},
            {"trace_mode", to_string(config.trace_mode)},
            {"matched_instances", config.matched_instances},
            {"redundancy_iterations", config.redundancy_iterations},
            {"source_quantile", number(config.source_quantile)},
            {"recipient_quantile", number(config.recipient_quantile)}};
}

ordered_json summarize(const Exp1Result& result)
{
    auto grid = ordered_json::array();
    std::size_t best = 0;
    for (std::size_t g = 0; g < result.grid.size(); ++g) {
        const auto& point = result.grid[g];
        grid.push_back({{"p", number(point.p)},
                        {"mean_Q", number(point.mean_q)},
                        {"ci_low", number(point.ci_low)},
                        {"ci_high", number(point.ci_high)}});
        if (point.mean_q > result.grid[best].mean_q) {
            best = g;
        }
    }
    return {{"rows", result.rows.size()},
            {"spearman", to_json(result.spearman)},
            {"kendall", to_json(result.kendall)},
            {"linear", to_json(result.linear)},
            {"quadratic", to_json(result.quadratic)},
            {"quadratic_preferred", result.quadratic.aic < result.linear.aic},
            {"p_of_max_mean_Q", result.grid.empty() ? ordered_json(nullptr) : number(result.grid[best].p)},
            {"grid", grid}};
}

ordered_json summarize(const Exp2Result& result)
{
    const double ols_slope = result.linear.coefficients.at(1);
    const double ts_slope = result.theil_sen.coefficients.at(1);
    return {{"agents", result.rows.size()},
            {"pearson", to_json(result.pearson)},
            {"spearman", to_json(result.spearman)},
            {"kendall", to_json(result.kendall)},
            {"linear", to_json(result.linear)},
            {"quadratic", to_json(result.quadratic)},
            {"quadratic_preferred", result.quadratic.aic < result.linear.aic},
            {"theil_sen", to_json(result.theil_sen)},
            {"theil_sen_over_ols_slope", number(ts_slope / ols_slope)}};
}

ordered_json summarize(const Exp3Result& result)
{
    const double beta = result.fe.coefficients.at(0);
    return {{"exposures", result.exposures.size()},
            {"pairs", result.pairs},
            {"two_way_fe", to_json(result.fe)},
            {"residual_slope", number(result.residual_slope)},
            {"fewer_new_concepts_per_0_10_overlap", number(-beta * 0.10)},
            {"bins", result.binned.size()}};
}

ordered_json summarize(const Exp4Result& result)
{
    auto arm = [](const stats::RegressionResult& r) {
        return ordered_json{{"mean", number(r.coefficients.at(0))},
                            {"se", number(r.se.at(0))},
                            {"ci_low", number(r.ci_low.at(0))},
                            {"ci_high", number(r.ci_high.at(0))}};
    };
    return {{"instances", result.instances.size()},
            {"source_pool", result.source_pool.size()},
            {"recipient_pool", result.recipient_pool.size()},
            {"delta", to_json(result.delta_test)},
            {"cohens_dz", number(result.cohens_dz)},
            {"cohens_dz_sources", number(result.cohens_dz_sources)},
            {"triad", arm(result.triad_mean)},
            {"control", arm(result.control_mean)}};
}

ordered_json summarize(const SweepReport& report)
{
    auto optional_number = [](const std::optional<double>& v) { return v ? number(*v) : ordered_json(nullptr); };
    auto cells = ordered_json::array();
    for (const auto& c : report.cells) {
        cells.push_back({{"T", c.steps},
                         {"n", c.n},
                         {"k", c.k},
                         {"seed", c.seed},
                         {"rho", optional_number(c.rho)},
                         {"r", optional_number(c.r)},
                         {"beta", optional_number(c.beta)},
                         {"delta", optional_number(c.delta)},
                         {"t", optional_number(c.t)},
                         {"signs_hold", c.signs_hold()}});
    }
    return {{"signs_consistent", report.signs_consistent}, {"cells", cells}};
}

} // namespace cocreate::exp
