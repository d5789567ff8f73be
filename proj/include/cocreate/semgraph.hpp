#pragma once

#include "cocreate/random.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace cocreate::semgraph
{

using NodeId = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    /// Canonical edge for an unordered pair; u and v must differ.
    static Edge between(NodeId a, NodeId b) noexcept
    {
        return a < b ? Edge{a, b} : Edge{b, a};
    }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/**
 * Undirected simple graph on the node set 0..n-1.
 *
 * Immutable after construction. Edges are kept sorted lexicographically and the
 * adjacency is a compressed sparse row with each neighbor list sorted by id.
 */
class ConceptGraph
{
public:
    ConceptGraph() = default;

    /// Throws ParameterError on self-loops, duplicate edges or ids >= node_count.
    ConceptGraph(std::size_t node_count, std::vector<Edge> edges);

    std::size_t node_count() const noexcept
    {
        return m_node_count;
    }
    std::size_t edge_count() const noexcept
    {
        return m_edges.size();
    }
    const std::vector<Edge>& edges() const noexcept
    {
        return m_edges;
    }
    std::span<const NodeId> neighbors(NodeId node) const
    {
        return {m_adjacency.data() + m_offsets[node], m_adjacency.data() + m_offsets[node + 1]};
    }
    std::size_t degree(NodeId node) const
    {
        return m_offsets[node + 1] - m_offsets[node];
    }
    bool has_edge(NodeId a, NodeId b) const;

    friend bool operator==(const ConceptGraph& lhs, const ConceptGraph& rhs)
    {
        return lhs.m_node_count == rhs.m_node_count && lhs.m_edges == rhs.m_edges;
    }

private:
    struct Trusted {
    };
    ConceptGraph(Trusted, std::size_t node_count, std::vector<Edge> sorted_unique_edges);
    void build_adjacency();

    friend ConceptGraph with_added_edges(const ConceptGraph&, std::span<const Edge>);

    std::size_t m_node_count = 0;
    std::vector<Edge> m_edges;
    std::vector<std::size_t> m_offsets{0};
    std::vector<NodeId> m_adjacency;
};

/// Copy of `graph` plus every edge of `extra` it does not already contain.
ConceptGraph with_added_edges(const ConceptGraph& graph, std::span<const Edge> extra);

struct SubstrateSpec {
    std::size_t n = 100;
    std::size_t k = 4;

    /// Throws ParameterError unless n >= 3, k even and 2 <= k < n.
    void validate() const;
};

struct AgentSpec {
    std::uint32_t agent_id = 0;
    double p = 0.0;
    std::uint64_t stream_key = 0;
};

struct CommunityPartition {
    std::vector<std::uint32_t> assignment;
    std::size_t community_count = 0;

    /// Throws ParameterError if ids are out of range or some id in 0..count-1 is unused.
    void validate(std::size_t node_count) const;
};

/// Ring lattice: node i adjacent to i±1, ..., i±k/2 (mod n).
ConceptGraph generate_substrate(const SubstrateSpec& spec);

/**
 * Watts-Strogatz rewiring of a ring lattice from generate_substrate.
 *
 * Lattice edges are visited by near endpoint, then offset. Each is redirected
 * with probability p to a uniform far endpoint; self-loops and duplicates are
 * redrawn up to n times, after which the edge stays in place.
 */
ConceptGraph rewire(const ConceptGraph& substrate, double p, Stream& rng);

/**
 * Greedy agglomerative modularity maximization (Clauset-Newman-Moore).
 *
 * Starts from singletons and merges the connected pair with the largest gain
 * while that gain is positive. Gains are compared as exact integers
 * (2m * l_ij - d_i * d_j), and ties go to the lexicographically smallest pair of
 * community ids, where a community's id is its smallest node. Communities in
 * the result are numbered by their smallest node.
 */
CommunityPartition detect_communities(const ConceptGraph& graph);

/// Newman-Girvan Q = sum_c [L_c / m - (d_c / 2m)^2].
double modularity(const ConceptGraph& graph, const CommunityPartition& partition);

/// Q of the partition found by detect_communities.
double agent_modularity(const ConceptGraph& graph);

/// Maximal connected components, each sorted, ordered by smallest member.
std::vector<std::vector<NodeId>> connected_components(const ConceptGraph& graph);

/// Local clustering coefficient of one node; 0 when its degree is below 2.
double local_clustering(const ConceptGraph& graph, NodeId node);

struct EdgeListHeader {
    std::size_t n = 0;
    std::size_t k = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

/// Header line `n k p seed`, then one `u v` line per edge (u < v, sorted).
void write_edge_list(std::ostream& out, const ConceptGraph& graph, const EdgeListHeader& header);

struct EdgeListFile {
    EdgeListHeader header;
    ConceptGraph graph;
};

EdgeListFile read_edge_list(std::istream& in);

} // namespace cocreate::semgraph
