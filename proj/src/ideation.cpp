#include "cocreate/ideation.hpp"
#include "cocreate/error.hpp"
#include "cocreate/stats.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace cocreate::ideation
{

IdeationTrace random_walk(const ConceptGraph& graph, NodeId prompt, std::size_t steps, Stream& rng)
{
    if (prompt >= graph.node_count()) {
        throw ParameterError(fmt::format("random_walk: prompt {} outside node set of size {}", prompt,
                                         graph.node_count()));
    }
    IdeationTrace trace;
    trace.prompt = prompt;
    trace.sequence.reserve(steps + 1);
    trace.sequence.push_back(prompt);
    trace.walk_edges.reserve(steps);

    NodeId current = prompt;
    for (std::size_t step = 0; step < steps; ++step) {
        const auto nb = graph.neighbors(current);
        if (nb.empty()) {
            trace.sequence.push_back(current);
            continue;
        }
        const NodeId next = nb[uniform_index(rng, nb.size())];
        trace.walk_edges.push_back(Edge::between(current, next));
        trace.sequence.push_back(next);
        current = next;
    }

    trace.visited = trace.sequence;
    std::sort(trace.visited.begin(), trace.visited.end());
    trace.visited.erase(std::unique(trace.visited.begin(), trace.visited.end()), trace.visited.end());
    std::sort(trace.walk_edges.begin(), trace.walk_edges.end());
    trace.walk_edges.erase(std::unique(trace.walk_edges.begin(), trace.walk_edges.end()), trace.walk_edges.end());
    return trace;
}

std::size_t breadth(const IdeationTrace& trace)
{
    return trace.visited.size();
}

std::vector<Edge> trace_edges(const IdeationTrace& trace, const ConceptGraph& graph, TraceEdges mode)
{
    if (mode == TraceEdges::traversed) {
        return trace.walk_edges;
    }
    std::vector<Edge> induced;
    for (auto u : trace.visited) {
        for (auto v : graph.neighbors(u)) {
            if (u < v && std::binary_search(trace.visited.begin(), trace.visited.end(), v)) {
                induced.push_back(Edge{u, v});
            }
        }
    }
    return induced;
}

BreadthEstimate expected_breadth(const ConceptGraph& graph, std::size_t steps, std::size_t prompts,
                                 std::size_t replicates, Stream& rng, std::size_t bootstrap_iters)
{
    if (prompts < 1 || replicates < 1) {
        throw ParameterError("expected_breadth: need at least one prompt and one replicate");
    }
    if (bootstrap_iters < 100) {
        throw ParameterError(fmt::format("expected_breadth: bootstrap_iters must be >= 100, got {}", bootstrap_iters));
    }
    if (graph.node_count() == 0) {
        throw ParameterError("expected_breadth: empty graph");
    }

    std::vector<double> per_prompt(prompts);
    for (std::size_t k = 0; k < prompts; ++k) {
        const auto s = NodeId(uniform_index(rng, graph.node_count()));
        double total = 0.0;
        for (std::size_t r = 0; r < replicates; ++r) {
            total += static_cast<double>(breadth(random_walk(graph, s, steps, rng)));
        }
        per_prompt[k] = total / static_cast<double>(replicates);
    }

    BreadthEstimate estimate;
    estimate.prompts_used = prompts;
    estimate.replicates_per_prompt = replicates;
    estimate.bootstrap_iters = bootstrap_iters;
    estimate.mean = stats::mean(per_prompt);
    if (prompts == 1) {
        estimate.ci_low = estimate.ci_high = estimate.mean;
        return estimate;
    }
    const auto ci = stats::bootstrap_ci(per_prompt, bootstrap_iters, rng);
    // percentile bounds can miss the point estimate for very few prompts
    estimate.ci_low = std::min(ci.low, estimate.mean);
    estimate.ci_high = std::max(ci.high, estimate.mean);
    return estimate;
}

std::string format_trace(const IdeationTrace& trace)
{
    return fmt::format("{}; {}", trace.prompt, fmt::join(trace.sequence, ","));
}

} // namespace cocreate::ideation
