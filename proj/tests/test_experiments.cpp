#include "cocreate/error.hpp"
#include "cocreate/experiments.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>

using namespace cocreate;
using namespace cocreate::exp;

namespace
{

ExperimentConfig small_config()
{
    ExperimentConfig c;
    c.population_size = 60;
    c.prompts = 8;
    c.replicates = 8;
    c.bootstrap_iters = 200;
    c.ordered_pairs = 40;
    c.prompts_per_pair = 5;
    c.bins = 20;
    c.iterations = 4;
    c.matched_instances = 200;
    c.graphs_per_p = 4;
    return c;
}

std::string first_line(const std::filesystem::path& path)
{
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    return line;
}

std::size_t line_count(const std::filesystem::path& path)
{
    std::ifstream in(path);
    std::size_t count = 0;
    for (std::string line; std::getline(in, line);) {
        ++count;
    }
    return count;
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("cocreate_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("default population: 500 agents, each a 200-edge rewiring")
{
    const ExperimentConfig config;
    const auto pop = default_population(config);
    REQUIRE(pop.agents.size() == 500);
    CHECK(pop.substrate == semgraph::generate_substrate({100, 4}));
    for (std::size_t i = 0; i < pop.agents.size(); ++i) {
        const auto& a = pop.agents[i];
        CHECK(a.spec.agent_id == i);
        CHECK(a.graph.node_count() == 100);
        CHECK(a.graph.edge_count() == 200);
        CHECK(a.spec.p >= 0.01);
        CHECK(a.spec.p <= 0.5);
    }
    // spot-check the stored modularity against a fresh detection
    for (std::size_t i : {0u, 137u, 499u}) {
        CHECK(pop.agents[i].modularity == semgraph::agent_modularity(pop.agents[i].graph));
    }
}

TEST_CASE("grid layout with p = 0 gives substrate copies")
{
    auto config = small_config();
    auto rng = derive_stream(1, {"population"});
    const auto pop = build_population(config, rng, {{0.0}, 3});
    REQUIRE(pop.agents.size() == 3);
    for (const auto& a : pop.agents) {
        CHECK(a.spec.p == 0.0);
        CHECK(a.graph == pop.substrate);
    }
}

TEST_CASE("results do not depend on the thread count")
{
    auto one = small_config();
    one.threads = 1;
    auto four = one;
    four.threads = 4;
    const auto pop1 = default_population(one);
    const auto pop4 = default_population(four);
    for (std::size_t i = 0; i < pop1.agents.size(); ++i) {
        REQUIRE(pop1.agents[i].graph == pop4.agents[i].graph);
        REQUIRE(pop1.agents[i].modularity == pop4.agents[i].modularity);
    }
    const auto e2a = experiment2_breadth_vs_modularity(one, pop1);
    const auto e2b = experiment2_breadth_vs_modularity(four, pop4);
    for (std::size_t i = 0; i < e2a.rows.size(); ++i) {
        CHECK(e2a.rows[i].b_hat == e2b.rows[i].b_hat);
    }
    const auto e3a = experiment3_stimulation(one, pop1);
    const auto e3b = experiment3_stimulation(four, pop4);
    CHECK(e3a.fe.coefficients == e3b.fe.coefficients);
    const auto e4a = experiment4_redundancy(one, pop1);
    const auto e4b = experiment4_redundancy(four, pop4);
    CHECK(e4a.delta_test.coefficients == e4b.delta_test.coefficients);
}

TEST_CASE("modularity-vs-p experiment")
{
    const ExperimentConfig config;
    const auto r = experiment1_modularity_vs_p(config);
    CHECK(r.rows.size() == 225);
    REQUIRE(r.grid.size() == 15);
    std::size_t best = 0;
    for (std::size_t g = 0; g < r.grid.size(); ++g) {
        CHECK(r.grid[g].ci_low <= r.grid[g].mean_q);
        CHECK(r.grid[g].mean_q <= r.grid[g].ci_high);
        if (r.grid[g].mean_q > r.grid[best].mean_q) {
            best = g;
        }
    }
    CHECK(best == 0);
    CHECK(r.spearman.estimate < 0.0);
    CHECK(r.kendall.estimate < 0.0);
    CHECK(r.linear.coefficients.size() == 2);
    CHECK(r.quadratic.coefficients.size() == 3);

    auto coarse = config;
    coarse.p_grid = {0.1, 0.5};
    CHECK_THROWS_AS(experiment1_modularity_vs_p(coarse), ParameterError);
}

TEST_CASE("breadth experiment: robust slope tracks OLS")
{
    const ExperimentConfig config;
    const auto pop = default_population(config);
    const auto r = experiment2_breadth_vs_modularity(config, pop);
    REQUIRE(r.rows.size() == 500);
    for (const auto& row : r.rows) {
        CHECK(row.ci_low <= row.b_hat);
        CHECK(row.b_hat <= row.ci_high);
        CHECK(row.b_hat >= 1.0);
        CHECK(row.b_hat <= 21.0);
    }
    const double ols_slope = r.linear.coefficients[1];
    const double ts_slope = r.theil_sen.coefficients[1];
    CHECK(ols_slope < 0.0);
    CHECK(std::abs(ts_slope - ols_slope) <= 0.2 * std::abs(ols_slope));
}

TEST_CASE("stimulation experiment structure")
{
    const auto config = small_config();
    const auto pop = default_population(config);
    const auto r = experiment3_stimulation(config, pop);
    CHECK(r.pairs == 40);
    REQUIRE(r.exposures.size() == 200);
    CHECK(r.binned.size() == 20);
    CHECK(r.residual_slope == doctest::Approx(r.fe.coefficients[0]).epsilon(1e-12));
    CHECK(r.fe.n_clusters == 40);

    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::set<std::pair<std::uint32_t, semgraph::NodeId>> prompts;
    for (const auto& e : r.exposures) {
        CHECK(e.source_id != e.recipient_id);
        pairs.insert({e.source_id, e.recipient_id});
        CHECK(prompts.insert({e.pair_id, e.prompt}).second);
    }
    CHECK(pairs.size() == 40);

    auto cramped = config;
    cramped.ordered_pairs = 10;
    cramped.prompts_per_pair = 1;
    cramped.bins = 20;
    CHECK_THROWS_AS(experiment3_stimulation(cramped, pop), ParameterError);
}

TEST_CASE("redundancy experiment structure")
{
    const auto config = small_config();
    const auto pop = default_population(config);
    const auto r = experiment4_redundancy(config, pop);
    REQUIRE(r.instances.size() == 200);
    CHECK(r.source_pool.size() == 12);
    CHECK(r.recipient_pool.size() == 12);
    double max_source_q = 0.0, min_recipient_q = 1.0;
    for (auto id : r.source_pool) {
        max_source_q = std::max(max_source_q, pop.agents[id].modularity);
    }
    for (auto id : r.recipient_pool) {
        min_recipient_q = std::min(min_recipient_q, pop.agents[id].modularity);
    }
    CHECK(max_source_q <= min_recipient_q);

    const std::set<std::uint32_t> sources(r.source_pool.begin(), r.source_pool.end());
    const std::set<std::uint32_t> recipients(r.recipient_pool.begin(), r.recipient_pool.end());
    for (const auto& i : r.instances) {
        CHECK(i.source1_id != i.source2_id);
        CHECK(i.recipient_a_id != i.recipient_b_id);
        CHECK(sources.count(i.source1_id) == 1);
        CHECK(sources.count(i.source2_id) == 1);
        CHECK(recipients.count(i.recipient_a_id) == 1);
        CHECK(recipients.count(i.recipient_b_id) == 1);
        CHECK(i.delta == i.r_triad - i.r_control);
    }
    CHECK(r.delta_test.clustered);
}

TEST_CASE("a one-cell sweep reproduces the plain experiments bit for bit")
{
    const auto config = small_config();
    SweepAxes axes;
    axes.steps = {config.steps};
    axes.sizes = {{config.n, config.k}};
    axes.seeds = {config.master_seed};
    const auto report = run_sweep(config, axes);
    REQUIRE(report.cells.size() == 1);
    const auto& cell = report.cells[0];

    const auto pop = default_population(config);
    CHECK(*cell.rho == experiment1_modularity_vs_p(config).spearman.estimate);
    CHECK(*cell.r == experiment2_breadth_vs_modularity(config, pop).pearson.estimate);
    CHECK(*cell.beta == experiment3_stimulation(config, pop).fe.coefficients[0]);
    const auto e4 = experiment4_redundancy(config, pop);
    CHECK(*cell.delta == e4.delta_test.coefficients[0]);
    CHECK(*cell.t == e4.delta_test.t_stat[0]);
}

TEST_CASE("sweep cells record only the selected experiments")
{
    auto config = small_config();
    SweepAxes axes;
    axes.steps = {10, 20};
    axes.exp3 = false;
    axes.exp4 = false;
    const auto report = run_sweep(config, axes);
    REQUIRE(report.cells.size() == 2);
    for (const auto& c : report.cells) {
        CHECK(c.rho.has_value());
        CHECK(c.r.has_value());
        CHECK_FALSE(c.beta.has_value());
        CHECK_FALSE(c.delta.has_value());
    }
    SweepCell flipped;
    flipped.rho = 0.2;
    CHECK_FALSE(flipped.signs_hold());
}

TEST_CASE("CSV files carry the documented headers and one row per record")
{
    const auto config = small_config();
    const auto dir = scratch("csv");
    const auto pop = default_population(config);

    auto e1_config = config;
    const auto e1 = experiment1_modularity_vs_p(e1_config);
    write_exp1_csv(dir / "exp1.csv", e1);
    CHECK(first_line(dir / "exp1.csv") == "p,replicate,Q");
    CHECK(line_count(dir / "exp1.csv") == e1.rows.size() + 1);

    const auto e2 = experiment2_breadth_vs_modularity(config, pop);
    write_exp2_csv(dir / "exp2.csv", e2);
    CHECK(first_line(dir / "exp2.csv") == "agent_id,p,Q,B_hat,ci_low,ci_high");
    CHECK(line_count(dir / "exp2.csv") == 61);

    const auto e3 = experiment3_stimulation(config, pop);
    write_exp3_csv(dir / "exp3.csv", dir / "exp3_binned.csv", e3);
    CHECK(first_line(dir / "exp3.csv") == "pair_id,source_id,recipient_id,prompt,overlap_mean,gain_mean");
    CHECK(first_line(dir / "exp3_binned.csv") == "bin,mean_resid_overlap,mean_resid_gain");
    CHECK(line_count(dir / "exp3_binned.csv") == 21);

    const auto e4 = experiment4_redundancy(config, pop);
    write_exp4_csv(dir / "exp4.csv", e4);
    CHECK(first_line(dir / "exp4.csv") ==
          "instance_id,source1_id,source2_id,recipient_a_id,recipient_b_id,prompt,r_triad,r_control,delta");
    CHECK(line_count(dir / "exp4.csv") == 201);

    SweepReport report;
    report.cells.push_back({20, 100, 4, 42, -0.9, std::nullopt, std::nullopt, std::nullopt, std::nullopt});
    write_sweep_csv(dir / "sweep.csv", report);
    CHECK(first_line(dir / "sweep.csv") == "T,n,k,seed,rho,r,beta,delta,t,signs_hold");
    std::filesystem::remove_all(dir);
}

TEST_CASE("JSON number formatting")
{
    stats::CorrelationResult tiny{-0.9, 1e-40, 225, stats::CorrelationMethod::spearman};
    const auto j = to_json(tiny);
    CHECK(j["p_value"] == "< 1e-15");
    CHECK(j["method"] == "spearman");
    CHECK(j["n"] == 225);

    stats::CorrelationResult plain{0.5, 0.03, 10, stats::CorrelationMethod::pearson};
    CHECK(to_json(plain)["p_value"] == 0.03);

    stats::RegressionResult reg;
    reg.coefficients = {1.0};
    reg.se = {std::numeric_limits<double>::quiet_NaN()};
    reg.p_value = {0.5};
    const auto rj = to_json(reg);
    CHECK(rj["se"][0].is_null());
    CHECK_FALSE(rj.contains("clusters"));

    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("summaries carry the headline fields")
{
    const auto config = small_config();
    const auto pop = default_population(config);
    const auto s3 = summarize(experiment3_stimulation(config, pop));
    CHECK(s3.contains("fewer_new_concepts_per_0_10_overlap"));
    const auto s4 = summarize(experiment4_redundancy(config, pop));
    CHECK(s4.contains("cohens_dz"));
    CHECK(s4.contains("cohens_dz_sources"));
    const auto cfg = to_json(config);
    CHECK(cfg["T"] == 20);
    CHECK(cfg["trace_mode"] == "traversed");
}
