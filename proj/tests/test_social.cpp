#include "cocreate/error.hpp"
#include "cocreate/social.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace cocreate;
using namespace cocreate::social;
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

ConceptGraph agent_graph(std::uint64_t seed, int id, double p)
{
    auto rng = derive_stream(seed, {"agent", id});
    return rewire(generate_substrate({100, 4}), p, rng);
}

std::vector<NodeId> random_set(Stream& rng, std::size_t universe)
{
    std::vector<NodeId> s;
    for (NodeId v = 0; v < universe; ++v) {
        if (uniform01(rng) < 0.4) {
            s.push_back(v);
        }
    }
    return s;
}

} // namespace

TEST_CASE("jaccard examples")
{
    const std::vector<NodeId> a{1, 2, 3};
    const std::vector<NodeId> b{2, 3, 4};
    const std::vector<NodeId> c{7, 8};
    const std::vector<NodeId> none;
    CHECK(jaccard(a, b) == doctest::Approx(0.5));
    CHECK(jaccard(a, a) == 1.0);
    CHECK(jaccard(a, c) == 0.0);
    CHECK(jaccard(a, none) == 0.0);
    CHECK_THROWS_AS(jaccard(none, none), DegenerateInputError);
}

TEST_CASE("jaccard and count_new agree with std set algorithms")
{
    auto rng = derive_stream(1, {"sets"});
    for (int rep = 0; rep < 200; ++rep) {
        const auto a = random_set(rng, 30);
        const auto b = random_set(rng, 30);
        std::vector<NodeId> inter, uni, diff;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
        CHECK(count_new(a, b) == diff.size());
        if (uni.empty()) {
            continue;
        }
        const double j = jaccard(a, b);
        CHECK(j == doctest::Approx(double(inter.size()) / double(uni.size())));
        CHECK(j == jaccard(b, a));
        CHECK(j >= 0.0);
        CHECK(j <= 1.0);
    }
}

TEST_CASE("count_new examples")
{
    const std::vector<NodeId> a{1, 2, 3, 9};
    const std::vector<NodeId> b{2, 9};
    const std::vector<NodeId> none;
    CHECK(count_new(a, b) == 2);
    CHECK(count_new(b, a) == 0);
    CHECK(count_new(a, none) == 4);
    CHECK(count_new(none, a) == 0);
}

TEST_CASE("incorporation adds exactly the missing trace edges")
{
    const auto recipient = agent_graph(2, 0, 0.2);
    const auto source = agent_graph(2, 1, 0.8);
    auto rng = derive_stream(2, {"trace"});
    const auto trace = ideation::random_walk(source, 5, 20, rng);
    const auto merged = incorporate_trace(recipient, trace);
    CHECK(merged.node_count() == recipient.node_count());
    for (const auto& e : recipient.edges()) {
        CHECK(merged.has_edge(e.u, e.v));
    }
    for (const auto& e : trace.walk_edges) {
        CHECK(merged.has_edge(e.u, e.v));
    }
    std::size_t missing = 0;
    for (const auto& e : trace.walk_edges) {
        missing += !recipient.has_edge(e.u, e.v);
    }
    CHECK(merged.edge_count() == recipient.edge_count() + missing);
    CHECK(incorporate_trace(merged, trace) == merged);
    CHECK(incorporate_trace(recipient, std::span<const Edge>{}) == recipient);
}

TEST_CASE("identical two-node graphs give full overlap and no gain")
{
    const ConceptGraph g(2, {{0, 1}});
    auto rng = derive_stream(3, {"pair"});
    const auto rec = run_exposure(g, g, 0, {}, rng);
    CHECK(rec.overlap_mean == 1.0);
    CHECK(rec.gain_mean == 0.0);
    CHECK(rec.iterations == 10);
    CHECK(rec.prompt == 0);
}

TEST_CASE("exposure output ranges and validation")
{
    const auto a = agent_graph(4, 0, 0.05);
    const auto b = agent_graph(4, 1, 0.5);
    for (int rep = 0; rep < 20; ++rep) {
        auto rng = derive_stream(4, {"exposure", rep});
        const auto rec = run_exposure(a, b, NodeId(rep), {}, rng);
        CHECK(rec.overlap_mean > 0.0);
        CHECK(rec.overlap_mean <= 1.0);
        CHECK(rec.gain_mean >= 0.0);
        CHECK(rec.gain_mean <= 20.0);
    }
    auto rng = derive_stream(4, {"bad"});
    ExposureOptions none;
    none.iterations = 0;
    CHECK_THROWS_AS(run_exposure(a, b, 0, none, rng), ParameterError);
    CHECK_THROWS_AS(run_exposure(a, ConceptGraph(3, {{0, 1}}), 0, {}, rng), ParameterError);
}

TEST_CASE("exposure is deterministic for a given stream")
{
    const auto a = agent_graph(5, 0, 0.1);
    const auto b = agent_graph(5, 1, 0.3);
    auto r1 = derive_stream(5, {"exposure"});
    auto r2 = derive_stream(5, {"exposure"});
    const auto x = run_exposure(a, b, 7, {}, r1);
    const auto y = run_exposure(a, b, 7, {}, r2);
    CHECK(x.overlap_mean == y.overlap_mean);
    CHECK(x.gain_mean == y.gain_mean);
}

TEST_CASE("zero-step redundancy gives no difference")
{
    const auto g = agent_graph(6, 0, 0.2);
    auto rng = derive_stream(6, {"steps0"});
    RedundancyOptions opts;
    opts.steps = 0;
    const auto inst = run_redundancy_instance(g, agent_graph(6, 1, 0.2), g, agent_graph(6, 2, 0.2), 3, opts, rng);
    CHECK(inst.r_triad == 1.0);
    CHECK(inst.r_control == 1.0);
    CHECK(inst.delta == 0.0);
}

TEST_CASE("complete-graph recipients cannot tell the arms apart")
{
    const auto k = complete(100);
    const auto h1 = agent_graph(7, 0, 0.05);
    const auto h2 = agent_graph(7, 1, 0.05);
    for (int rep = 0; rep < 30; ++rep) {
        auto rng = derive_stream(7, {"instance", rep});
        const auto inst = run_redundancy_instance(h1, h2, k, k, NodeId(rep), {}, rng);
        CHECK(inst.r_triad == inst.r_control);
        CHECK(inst.delta == 0.0);
    }
}

TEST_CASE("redundancy instance invariants")
{
    const auto h1 = agent_graph(8, 0, 0.05);
    const auto h2 = agent_graph(8, 1, 0.05);
    const auto a = agent_graph(8, 2, 0.4);
    const auto b = agent_graph(8, 3, 0.4);
    double total = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        auto rng = derive_stream(8, {"instance", rep});
        const auto inst = run_redundancy_instance(h1, h2, a, b, NodeId(rep % 100), {}, rng);
        CHECK(inst.r_triad > 0.0);
        CHECK(inst.r_triad <= 1.0);
        CHECK(inst.r_control > 0.0);
        CHECK(inst.r_control <= 1.0);
        CHECK(inst.delta == inst.r_triad - inst.r_control);
        total += inst.delta;
    }
    // a shared source pushes the two recipients together on average
    CHECK(total / 200 > 0.0);

    auto rng = derive_stream(8, {"bad"});
    RedundancyOptions none;
    none.iterations = 0;
    CHECK_THROWS_AS(run_redundancy_instance(h1, h2, a, b, 0, none, rng), ParameterError);
}
