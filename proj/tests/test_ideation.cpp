#include "cocreate/error.hpp"
#include "cocreate/ideation.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cocreate;
using namespace cocreate::ideation;
using semgraph::generate_substrate;
using semgraph::rewire;

namespace
{

ConceptGraph complete(std::size_t n)
{
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            edges.push_back({u, v});
        }
    }
    return ConceptGraph(n, edges);
}

} // namespace

TEST_CASE("walk invariants")
{
    auto rng = derive_stream(1, {"walk graphs"});
    const auto g = rewire(generate_substrate({100, 4}), 0.3, rng);
    for (int rep = 0; rep < 50; ++rep) {
        auto walk_rng = derive_stream(1, {"walk", rep});
        const auto s = NodeId(rep * 2);
        const auto trace = random_walk(g, s, 20, walk_rng);
        REQUIRE(trace.sequence.size() == 21);
        CHECK(trace.prompt == s);
        CHECK(trace.sequence.front() == s);
        for (std::size_t i = 1; i < trace.sequence.size(); ++i) {
            REQUIRE(g.has_edge(trace.sequence[i - 1], trace.sequence[i]));
        }
        CHECK(std::is_sorted(trace.visited.begin(), trace.visited.end()));
        CHECK(std::adjacent_find(trace.visited.begin(), trace.visited.end()) == trace.visited.end());
        for (auto v : trace.sequence) {
            CHECK(std::binary_search(trace.visited.begin(), trace.visited.end(), v));
        }
        const auto b = breadth(trace);
        CHECK(b >= 1);
        CHECK(b <= 21);
        CHECK(b == trace.visited.size());
        for (const auto& e : trace.walk_edges) {
            CHECK(g.has_edge(e.u, e.v));
        }
    }
}

TEST_CASE("zero steps visit only the prompt")
{
    const auto g = generate_substrate({10, 2});
    auto rng = derive_stream(2, {"t0"});
    const auto trace = random_walk(g, 4, 0, rng);
    CHECK(trace.sequence == std::vector<NodeId>{4});
    CHECK(breadth(trace) == 1);
    CHECK(trace.walk_edges.empty());
}

TEST_CASE("a single edge alternates")
{
    const ConceptGraph g(2, {{0, 1}});
    auto rng = derive_stream(3, {"alternate"});
    const auto trace = random_walk(g, 0, 5, rng);
    CHECK(trace.sequence == std::vector<NodeId>{0, 1, 0, 1, 0, 1});
    CHECK(breadth(trace) == 2);
    CHECK(trace.walk_edges == std::vector<Edge>{{0, 1}});

    auto est_rng = derive_stream(3, {"estimate"});
    const auto est = expected_breadth(g, 5, 20, 3, est_rng, 200);
    CHECK(est.mean == 2.0);
    CHECK(est.ci_low == 2.0);
    CHECK(est.ci_high == 2.0);
}

TEST_CASE("an isolated prompt holds the walker")
{
    const ConceptGraph g(3, {{1, 2}});
    auto rng = derive_stream(4, {"isolated"});
    const auto trace = random_walk(g, 0, 7, rng);
    CHECK(std::all_of(trace.sequence.begin(), trace.sequence.end(), [](NodeId v) { return v == 0; }));
    CHECK(breadth(trace) == 1);
    CHECK(trace.walk_edges.empty());
}

TEST_CASE("invalid prompt is rejected")
{
    const auto g = generate_substrate({10, 2});
    auto rng = derive_stream(5, {"bad"});
    CHECK_THROWS_AS(random_walk(g, 10, 3, rng), ParameterError);
}

TEST_CASE("breadth on a complete graph is bounded by the node count")
{
    const auto g = complete(6);
    for (int rep = 0; rep < 30; ++rep) {
        auto rng = derive_stream(6, {"kn", rep});
        CHECK(breadth(random_walk(g, 0, 20, rng)) <= 6);
    }
    auto rng = derive_stream(6, {"kn estimate"});
    CHECK(expected_breadth(g, 20, 10, 10, rng, 100).mean <= 6.0);
}

TEST_CASE("expected breadth matches exact path enumeration")
{
    auto graph_rng = derive_stream(7, {"exact graph"});
    const auto g = rewire(generate_substrate({12, 4}), 0.3, graph_rng);
    constexpr std::size_t steps = 6;
    double exact = 0.0;
    for (NodeId s = 0; s < 12; ++s) {
        exact += oracle::exact_breadth(g, s, steps);
    }
    exact /= 12.0;

    // prompts drawn with replacement, so compare against a wide sample
    auto rng = derive_stream(7, {"exact estimate"});
    const auto est = expected_breadth(g, steps, 400, 50, rng, 300);
    CHECK(est.prompts_used == 400);
    CHECK(est.replicates_per_prompt == 50);
    CHECK(est.ci_low <= est.mean);
    CHECK(est.mean <= est.ci_high);
    CHECK(est.mean == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("walk on a path graph matches its exact breadth")
{
    const ConceptGraph path(4, {{0, 1}, {1, 2}, {2, 3}});
    // from an end node: 2 steps reach 3 nodes with prob 1/2, else 2 nodes
    CHECK(oracle::exact_breadth(path, 0, 2) == doctest::Approx(2.5));
    double total = 0.0;
    constexpr int reps = 20'000;
    for (int rep = 0; rep < reps; ++rep) {
        auto rng = derive_stream(8, {"path", rep});
        total += static_cast<double>(breadth(random_walk(path, 0, 2, rng)));
    }
    // sd of the mean is 0.5 / sqrt(reps)
    CHECK(std::abs(total / reps - 2.5) < 5.0 * 0.5 / std::sqrt(double(reps)));
}

TEST_CASE("induced trace edges contain the traversed ones")
{
    auto graph_rng = derive_stream(9, {"induced graph"});
    const auto g = rewire(generate_substrate({100, 4}), 0.2, graph_rng);
    for (int rep = 0; rep < 20; ++rep) {
        auto rng = derive_stream(9, {"induced", rep});
        const auto trace = random_walk(g, NodeId(rep), 20, rng);
        const auto traversed = trace_edges(trace, g, TraceEdges::traversed);
        const auto induced = trace_edges(trace, g, TraceEdges::induced);
        CHECK(traversed == trace.walk_edges);
        CHECK(std::includes(induced.begin(), induced.end(), traversed.begin(), traversed.end()));
        for (const auto& e : induced) {
            CHECK(g.has_edge(e.u, e.v));
            CHECK(std::binary_search(trace.visited.begin(), trace.visited.end(), e.u));
            CHECK(std::binary_search(trace.visited.begin(), trace.visited.end(), e.v));
        }
    }
}

TEST_CASE("trace format")
{
    const ConceptGraph g(2, {{0, 1}});
    auto rng = derive_stream(10, {"format"});
    CHECK(format_trace(random_walk(g, 1, 3, rng)) == "1; 1,0,1,0");
}

TEST_CASE("breadth falls as the graph becomes more modular")
{
    const auto substrate = generate_substrate({100, 4});
    auto a = derive_stream(11, {"g", 0});
    auto b = derive_stream(11, {"g", 1});
    const auto clustered = rewire(substrate, 0.01, a);
    const auto random = rewire(substrate, 1.0, b);
    auto ra = derive_stream(11, {"e", 0});
    auto rb = derive_stream(11, {"e", 1});
    CHECK(expected_breadth(clustered, 20, 20, 30, ra, 200).mean < expected_breadth(random, 20, 20, 30, rb, 200).mean);
}
