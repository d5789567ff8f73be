#include "cocreate/config.hpp"
#include "cocreate/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace cocreate;
using namespace cocreate::exp;

TEST_CASE("defaults are valid and match the reference design")
{
    const ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.master_seed == 42);
    CHECK(c.n == 100);
    CHECK(c.k == 4);
    CHECK(c.p_grid.size() == 15);
    CHECK(c.p_grid.front() == doctest::Approx(0.05));
    CHECK(c.p_grid.back() == doctest::Approx(1.0));
    CHECK(c.graphs_per_p == 15);
    CHECK(c.population_size == 500);
    CHECK(c.steps == 20);
    CHECK(c.prompts == 20);
    CHECK(c.replicates == 30);
    CHECK(c.ordered_pairs == 500);
    CHECK(c.prompts_per_pair == 10);
    CHECK(c.matched_instances == 5000);
}

TEST_CASE("linspace")
{
    CHECK(linspace(0.0, 1.0, 5) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(linspace(0.3, 0.9, 1) == std::vector<double>{0.3});
    CHECK(linspace(0.0, 1.0, 0).empty());
}

TEST_CASE("TOML keys override the base")
{
    const auto c = parse_config(R"(
master_seed = 7
n = 60
k = 6
T = 12
S = 5
R = 4
p_grid = [0.1, 0.2, 0.3]
p_range = [0.05, 0.4]
trace_mode = "induced"
incorporate = false
matched_instances = 100
)");
    CHECK(c.master_seed == 7);
    CHECK(c.n == 60);
    CHECK(c.k == 6);
    CHECK(c.steps == 12);
    CHECK(c.prompts == 5);
    CHECK(c.replicates == 4);
    CHECK(c.p_grid == std::vector<double>{0.1, 0.2, 0.3});
    CHECK(c.p_min == 0.05);
    CHECK(c.p_max == 0.4);
    CHECK(c.trace_mode == ideation::TraceEdges::induced);
    CHECK_FALSE(c.incorporate);
    CHECK(c.matched_instances == 100);
    CHECK(c.population_size == 500);
}

TEST_CASE("integers are accepted where reals are expected")
{
    const auto c = parse_config("p_grid = [0, 1]\n");
    CHECK(c.p_grid == std::vector<double>{0.0, 1.0});
}

TEST_CASE("malformed or invalid configs are rejected")
{
    CHECK_THROWS_AS(parse_config("unknown_knob = 3\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("n = \n"), ParameterError);
    CHECK_THROWS_AS(parse_config("n = -4\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("n = \"big\"\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("k = 3\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("k = 100\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("p_grid = [0.5, 1.5]\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("p_grid = []\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("p_range = [0.6, 0.4]\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("p_range = [0.1]\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("source_quantile = 0.7\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("trace_mode = \"sideways\"\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("incorporate = 1\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("T = 20\nR = 0\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("bootstrap_iters = 10\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("prompts_per_pair = 101\n"), ParameterError);
}

TEST_CASE("config files load and missing files are reported")
{
    const auto path = std::filesystem::temp_directory_path() / "cocreate_test_config.toml";
    {
        std::ofstream out(path);
        out << "population_size = 50\nT = 10\n";
    }
    const auto c = load_config(path);
    CHECK(c.population_size == 50);
    CHECK(c.steps == 10);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config(path), ParameterError);
}

TEST_CASE("scaling keeps cluster floors")
{
    const ExperimentConfig base;
    const auto tenth = scaled(base, 0.1);
    CHECK(tenth.population_size == 50);
    CHECK(tenth.ordered_pairs == 50);
    CHECK(tenth.matched_instances == 500);
    const auto tiny = scaled(base, 0.001);
    // 10 agents in each 20% pool need 50 agents
    CHECK(tiny.population_size == 50);
    CHECK(tiny.ordered_pairs == 10);
    CHECK(tiny.matched_instances == 10);
    const auto big = scaled(base, 2.0);
    CHECK(big.population_size == 1000);
    CHECK(big.matched_instances == 10000);
    CHECK_THROWS_AS(scaled(base, 0.0), ParameterError);
    CHECK_THROWS_AS(scaled(base, -1.0), ParameterError);
}

TEST_CASE("trace mode names round trip")
{
    for (auto mode : {ideation::TraceEdges::traversed, ideation::TraceEdges::induced}) {
        CHECK(parse_trace_mode(to_string(mode)) == mode);
    }
}

TEST_CASE("values of the wrong TOML type are rejected")
{
    CHECK_THROWS_AS(parse_config("n = 100.0\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("n = true\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("source_quantile = \"0.2\"\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("trace_mode = 1\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("output_dir = 3\n"), ParameterError);
}
