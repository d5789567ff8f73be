#pragma once

#include "cocreate/random.hpp"
#include "cocreate/semgraph.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace cocreate::ideation
{

using semgraph::ConceptGraph;
using semgraph::Edge;
using semgraph::NodeId;

/// Record of one walk. `visited` and `walk_edges` are sorted and unique.
struct IdeationTrace {
    NodeId prompt = 0;
    std::vector<NodeId> sequence;
    std::vector<NodeId> visited;
    std::vector<Edge> walk_edges;
};

/// Which edges of a trace are handed to a partner.
enum class TraceEdges {
    traversed, ///< edges the walk actually stepped along
    induced,   ///< every edge of the walker's graph between two visited nodes
};

struct BreadthEstimate {
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t prompts_used = 0;
    std::size_t replicates_per_prompt = 0;
    std::size_t bootstrap_iters = 0;
};

/**
 * Simple unbiased random walk of `steps` moves from `prompt`.
 *
 * Each move picks a uniform neighbor of the current node. A node with no
 * neighbors holds the walker in place for the rest of the walk.
 */
IdeationTrace random_walk(const ConceptGraph& graph, NodeId prompt, std::size_t steps, Stream& rng);

/// Number of distinct nodes visited.
std::size_t breadth(const IdeationTrace& trace);

/// Edges a partner receives from `trace`; `graph` is the walker's own graph.
std::vector<Edge> trace_edges(const IdeationTrace& trace, const ConceptGraph& graph, TraceEdges mode);

/**
 * Mean breadth over `prompts` prompts drawn uniformly with replacement and
 * `replicates` walks per prompt. The interval is the 2.5/97.5 percentile of the
 * mean over bootstrap resamples of the per-prompt means.
 */
BreadthEstimate expected_breadth(const ConceptGraph& graph, std::size_t steps, std::size_t prompts,
                                 std::size_t replicates, Stream& rng, std::size_t bootstrap_iters = 1000);

/// Debug record `s; n0,n1,...,nT`.
std::string format_trace(const IdeationTrace& trace);

} // namespace cocreate::ideation
