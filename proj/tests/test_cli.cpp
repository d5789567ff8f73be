#include "cocreate/cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cocreate;
namespace fs = std::filesystem;

namespace
{

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("cocreate_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t line_count(const fs::path& path)
{
    std::ifstream in(path);
    std::size_t count = 0;
    for (std::string line; std::getline(in, line);) {
        ++count;
    }
    return count;
}

} // namespace

TEST_CASE("help exits cleanly")
{
    const auto top = invoke({"--help"});
    CHECK(top.code == cli::exit_ok);
    CHECK(top.out.find("exp1") != std::string::npos);
    CHECK(invoke({"exp4", "--help"}).code == cli::exit_ok);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(invoke({}).code == cli::exit_usage);
    CHECK(invoke({"exp9"}).code == cli::exit_usage);
    CHECK(invoke({"exp1", "--bogus"}).code == cli::exit_usage);
    CHECK(invoke({"exp1", "--seed", "abc"}).code == cli::exit_usage);
    CHECK(invoke({"exp1", "--k", "3"}).code == cli::exit_usage);
    CHECK(invoke({"exp3", "--trace-mode", "sideways"}).code == cli::exit_usage);
    CHECK(invoke({"exp1", "--config", "/nonexistent/cfg.toml"}).code == cli::exit_usage);

    const auto cfg = fs::temp_directory_path() / "cocreate_cli_bad.toml";
    {
        std::ofstream out(cfg);
        out << "not_a_knob = 1\n";
    }
    const auto bad = invoke({"exp1", "--config", cfg.string()});
    CHECK(bad.code == cli::exit_usage);
    CHECK(bad.err.find("not_a_knob") != std::string::npos);
    fs::remove(cfg);
}

TEST_CASE("exp1 writes 225 rows and refuses to overwrite without --force")
{
    const auto dir = scratch("exp1");
    const auto first = invoke({"exp1", "--out", dir.string()});
    REQUIRE(first.code == cli::exit_ok);
    CHECK(line_count(dir / "exp1_modularity.csv") == 226);
    CHECK(fs::exists(dir / "summary.json"));

    const auto again = invoke({"exp1", "--out", dir.string()});
    CHECK(again.code == cli::exit_usage);
    CHECK(again.err.find("--force") != std::string::npos);

    CHECK(invoke({"exp1", "--out", dir.string(), "--force"}).code == cli::exit_ok);
    fs::remove_all(dir);
}

TEST_CASE("output directory falls back to the environment variable")
{
    const auto dir = scratch("env");
    ::setenv(cli::output_dir_env, dir.string().c_str(), 1);
    const auto r = invoke({"exp1"});
    ::unsetenv(cli::output_dir_env);
    CHECK(r.code == cli::exit_ok);
    CHECK(fs::exists(dir / "exp1_modularity.csv"));
    fs::remove_all(dir);
}

TEST_CASE("gen writes the substrate, the population table and one edge list per agent")
{
    const auto dir = scratch("gen");
    REQUIRE(invoke({"gen", "--out", dir.string(), "--population", "20"}).code == cli::exit_ok);
    CHECK(fs::exists(dir / "substrate.edges"));
    CHECK(line_count(dir / "substrate.edges") == 201);
    CHECK(line_count(dir / "population.csv") == 21);
    CHECK(fs::exists(dir / "graphs" / "agent_0000.edges"));
    CHECK(fs::exists(dir / "graphs" / "agent_0019.edges"));
    CHECK(line_count(dir / "graphs" / "agent_0007.edges") == 201);
    fs::remove_all(dir);
}

TEST_CASE("`all` is reproducible")
{
    const auto a = scratch("all_a");
    const auto b = scratch("all_b");
    const std::vector<std::string> common{"--scale-factor", "0.1", "--seed", "7"};
    auto args_a = std::vector<std::string>{"all", "--out", a.string()};
    auto args_b = std::vector<std::string>{"all", "--out", b.string(), "--threads", "2"};
    args_a.insert(args_a.end(), common.begin(), common.end());
    args_b.insert(args_b.end(), common.begin(), common.end());
    REQUIRE(invoke(args_a).code == cli::exit_ok);
    REQUIRE(invoke(args_b).code == cli::exit_ok);
    for (const char* name : {"summary.json", "exp1_modularity.csv", "exp2_breadth.csv", "exp3_exposures.csv",
                             "exp3_binned.csv", "exp4_redundancy.csv"}) {
        CAPTURE(name);
        CHECK(slurp(a / name) == slurp(b / name));
    }
    CHECK(slurp(a / "summary.json").find("\"master_seed\": 7") != std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("sweep writes one row per cell")
{
    const auto dir = scratch("sweep");
    const auto r = invoke({"sweep", "--out", dir.string(), "--scale-factor", "0.1", "--sweep-T", "10,20",
                           "--experiments", "1,2"});
    CHECK(r.code == cli::exit_ok);
    CHECK(line_count(dir / "sweep.csv") == 3);
    fs::remove_all(dir);
}
