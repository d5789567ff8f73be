#include "cocreate/semgraph.hpp"
#include "cocreate/error.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace cocreate::semgraph
{

ConceptGraph::ConceptGraph(std::size_t node_count, std::vector<Edge> edges)
    : m_node_count(node_count)
    , m_edges(std::move(edges))
{
    for (auto& e : m_edges) {
        if (e.u == e.v) {
            throw ParameterError(fmt::format("ConceptGraph: self-loop on node {}", e.u));
        }
        if (e.u >= node_count || e.v >= node_count) {
            throw ParameterError(fmt::format("ConceptGraph: edge ({}, {}) outside node set of size {}", e.u,
                                             e.v, node_count));
        }
        e = Edge::between(e.u, e.v);
    }
    std::sort(m_edges.begin(), m_edges.end());
    if (auto dup = std::adjacent_find(m_edges.begin(), m_edges.end()); dup != m_edges.end()) {
        throw ParameterError(fmt::format("ConceptGraph: duplicate edge ({}, {})", dup->u, dup->v));
    }
    build_adjacency();
}

ConceptGraph::ConceptGraph(Trusted, std::size_t node_count, std::vector<Edge> sorted_unique_edges)
    : m_node_count(node_count)
    , m_edges(std::move(sorted_unique_edges))
{
    build_adjacency();
}

void ConceptGraph::build_adjacency()
{
    m_offsets.assign(m_node_count + 1, 0);
    for (const auto& e : m_edges) {
        ++m_offsets[e.u + 1];
        ++m_offsets[e.v + 1];
    }
    std::partial_sum(m_offsets.begin(), m_offsets.end(), m_offsets.begin());
    m_adjacency.resize(2 * m_edges.size());
    auto cursor = std::vector<std::size_t>(m_offsets.begin(), m_offsets.end() - 1);
    // lower neighbors first, then higher ones; edge order keeps both runs sorted
    for (const auto& e : m_edges) {
        m_adjacency[cursor[e.v]++] = e.u;
    }
    for (const auto& e : m_edges) {
        m_adjacency[cursor[e.u]++] = e.v;
    }
}

bool ConceptGraph::has_edge(NodeId a, NodeId b) const
{
    if (a >= m_node_count || b >= m_node_count) {
        return false;
    }
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

ConceptGraph with_added_edges(const ConceptGraph& graph, std::span<const Edge> extra)
{
    std::vector<Edge> added;
    added.reserve(extra.size());
    for (const auto& e : extra) {
        if (e.u >= graph.node_count() || e.v >= graph.node_count() || e.u == e.v) {
            throw ParameterError(fmt::format("with_added_edges: invalid edge ({}, {})", e.u, e.v));
        }
        auto c = Edge::between(e.u, e.v);
        if (!graph.has_edge(c.u, c.v)) {
            added.push_back(c);
        }
    }
    if (added.empty()) {
        return graph;
    }
    std::sort(added.begin(), added.end());
    added.erase(std::unique(added.begin(), added.end()), added.end());

    std::vector<Edge> merged;
    merged.reserve(graph.edge_count() + added.size());
    std::merge(graph.edges().begin(), graph.edges().end(), added.begin(), added.end(),
               std::back_inserter(merged));
    return ConceptGraph(ConceptGraph::Trusted{}, graph.node_count(), std::move(merged));
}

void SubstrateSpec::validate() const
{
    if (n < 3) {
        throw ParameterError(fmt::format("substrate: need n >= 3, got {}", n));
    }
    if (k < 2 || k % 2 != 0 || k >= n) {
        throw ParameterError(fmt::format("substrate: k must be even with 2 <= k < n, got k={} n={}", k, n));
    }
}

void CommunityPartition::validate(std::size_t node_count) const
{
    if (assignment.size() != node_count) {
        throw ParameterError(fmt::format("partition covers {} nodes, graph has {}", assignment.size(), node_count));
    }
    std::vector<bool> used(community_count, false);
    for (auto c : assignment) {
        if (c >= community_count) {
            throw ParameterError(fmt::format("community id {} out of range (count {})", c, community_count));
        }
        used[c] = true;
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) {
        throw ParameterError("partition has gaps in its community ids");
    }
}

ConceptGraph generate_substrate(const SubstrateSpec& spec)
{
    spec.validate();
    std::vector<Edge> edges;
    edges.reserve(spec.n * spec.k / 2);
    for (std::size_t i = 0; i < spec.n; ++i) {
        for (std::size_t offset = 1; offset <= spec.k / 2; ++offset) {
            edges.push_back(Edge::between(NodeId(i), NodeId((i + offset) % spec.n)));
        }
    }
    return ConceptGraph(spec.n, std::move(edges));
}

ConceptGraph rewire(const ConceptGraph& substrate, double p, Stream& rng)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError(fmt::format("rewire: p must lie in [0, 1], got {}", p));
    }
    const std::size_t n = substrate.node_count();
    const std::size_t k = n > 0 ? substrate.degree(0) : 0;
    SubstrateSpec{n, k}.validate();
    if (substrate.edge_count() != n * k / 2) {
        throw ParameterError("rewire: input is not a ring lattice");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t offset = 1; offset <= k / 2; ++offset) {
            if (!substrate.has_edge(NodeId(i), NodeId((i + offset) % n))) {
                throw ParameterError("rewire: input is not a ring lattice");
            }
        }
    }

    std::vector<std::vector<NodeId>> adj(n);
    for (const auto& e : substrate.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    auto linked = [&adj](NodeId a, NodeId b) {
        return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
    };
    auto unlink = [&adj](NodeId a, NodeId b) {
        adj[a].erase(std::find(adj[a].begin(), adj[a].end(), b));
        adj[b].erase(std::find(adj[b].begin(), adj[b].end(), a));
    };

    for (std::size_t i = 0; i < n; ++i) {
        const auto near = NodeId(i);
        for (std::size_t offset = 1; offset <= k / 2; ++offset) {
            const auto far = NodeId((i + offset) % n);
            if (uniform01(rng) >= p) {
                continue;
            }
            for (std::size_t attempt = 0; attempt < n; ++attempt) {
                const auto target = NodeId(uniform_index(rng, n));
                if (target == near || linked(near, target)) {
                    continue;
                }
                unlink(near, far);
                adj[near].push_back(target);
                adj[target].push_back(near);
                break;
            }
        }
    }

    std::vector<Edge> edges;
    edges.reserve(substrate.edge_count());
    for (std::size_t u = 0; u < n; ++u) {
        for (auto v : adj[u]) {
            if (u < v) {
                edges.push_back(Edge{NodeId(u), v});
            }
        }
    }
    return ConceptGraph(n, std::move(edges));
}

CommunityPartition detect_communities(const ConceptGraph& graph)
{
    const std::size_t n = graph.node_count();
    const auto m = static_cast<std::int64_t>(graph.edge_count());
    if (m == 0) {
        throw DegenerateInputError("detect_communities: graph has no edges");
    }

    // links[c][d] = number of edges between communities c and d (c != d)
    std::vector<std::map<NodeId, std::int64_t>> links(n);
    std::vector<std::int64_t> degree(n);
    std::vector<bool> alive(n, true);
    std::vector<NodeId> parent(n);
    std::iota(parent.begin(), parent.end(), NodeId(0));
    for (std::size_t v = 0; v < n; ++v) {
        degree[v] = static_cast<std::int64_t>(graph.degree(NodeId(v)));
    }
    for (const auto& e : graph.edges()) {
        links[e.u][e.v] += 1;
        links[e.v][e.u] += 1;
    }

    const std::int64_t two_m = 2 * m;
    while (true) {
        std::int64_t best = 0;
        NodeId best_a = 0;
        NodeId best_b = 0;
        bool found = false;
        for (std::size_t a = 0; a < n; ++a) {
            if (!alive[a]) {
                continue;
            }
            for (auto it = links[a].upper_bound(NodeId(a)); it != links[a].end(); ++it) {
                // scaled gain: 2 m^2 * dQ
                const std::int64_t gain = two_m * it->second - degree[a] * degree[it->first];
                if (gain > best) {
                    best = gain;
                    best_a = NodeId(a);
                    best_b = it->first;
                    found = true;
                }
            }
        }
        if (!found) {
            break;
        }

        // merge best_b into best_a (best_a < best_b keeps ids = smallest node)
        degree[best_a] += degree[best_b];
        alive[best_b] = false;
        parent[best_b] = best_a;
        auto absorbed = std::move(links[best_b]);
        links[best_b].clear();
        links[best_a].erase(best_b);
        for (const auto& [other, count] : absorbed) {
            if (other == best_a) {
                continue;
            }
            links[best_a][other] += count;
            links[other].erase(best_b);
            links[other][best_a] += count;
        }
    }

    auto root = [&parent](NodeId v) {
        while (parent[v] != v) {
            v = parent[v];
        }
        return v;
    };
    CommunityPartition partition;
    partition.assignment.assign(n, 0);
    std::vector<std::int64_t> label(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        const auto r = root(NodeId(v));
        if (label[r] < 0) {
            label[r] = static_cast<std::int64_t>(partition.community_count++);
        }
        partition.assignment[v] = static_cast<std::uint32_t>(label[r]);
    }
    return partition;
}

double modularity(const ConceptGraph& graph, const CommunityPartition& partition)
{
    partition.validate(graph.node_count());
    const auto m = static_cast<double>(graph.edge_count());
    if (graph.edge_count() == 0) {
        throw DegenerateInputError("modularity: graph has no edges");
    }
    std::vector<double> internal(partition.community_count, 0.0);
    std::vector<double> total_degree(partition.community_count, 0.0);
    for (const auto& e : graph.edges()) {
        const auto cu = partition.assignment[e.u];
        const auto cv = partition.assignment[e.v];
        total_degree[cu] += 1.0;
        total_degree[cv] += 1.0;
        if (cu == cv) {
            internal[cu] += 1.0;
        }
    }
    double q = 0.0;
    for (std::size_t c = 0; c < partition.community_count; ++c) {
        const double share = total_degree[c] / (2.0 * m);
        q += internal[c] / m - share * share;
    }
    return q;
}

double agent_modularity(const ConceptGraph& graph)
{
    return modularity(graph, detect_communities(graph));
}

std::vector<std::vector<NodeId>> connected_components(const ConceptGraph& graph)
{
    const std::size_t n = graph.node_count();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<NodeId>> components;
    std::vector<NodeId> frontier;
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) {
            continue;
        }
        std::vector<NodeId> component;
        frontier.assign(1, NodeId(start));
        seen[start] = true;
        while (!frontier.empty()) {
            const auto v = frontier.back();
            frontier.pop_back();
            component.push_back(v);
            for (auto w : graph.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = true;
                    frontier.push_back(w);
                }
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

double local_clustering(const ConceptGraph& graph, NodeId node)
{
    const auto nb = graph.neighbors(node);
    const std::size_t d = nb.size();
    if (d < 2) {
        return 0.0;
    }
    std::size_t triangles = 0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            if (graph.has_edge(nb[i], nb[j])) {
                ++triangles;
            }
        }
    }
    return static_cast<double>(triangles) / (static_cast<double>(d * (d - 1)) / 2.0);
}

void write_edge_list(std::ostream& out, const ConceptGraph& graph, const EdgeListHeader& header)
{
    fmt::print(out, "{} {} {} {}\n", header.n, header.k, header.p, header.seed);
    for (const auto& e : graph.edges()) {
        fmt::print(out, "{} {}\n", e.u, e.v);
    }
}

EdgeListFile read_edge_list(std::istream& in)
{
    EdgeListFile file;
    std::string line;
    if (!std::getline(in, line)) {
        throw ParameterError("edge list: missing header line");
    }
    {
        std::istringstream hs(line);
        if (!(hs >> file.header.n >> file.header.k >> file.header.p >> file.header.seed)) {
            throw ParameterError(fmt::format("edge list: malformed header '{}'", line));
        }
    }
    std::vector<Edge> edges;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        std::uint64_t u = 0;
        std::uint64_t v = 0;
        if (!(ls >> u >> v) || u >= v) {
            throw ParameterError(fmt::format("edge list: line {} must be 'u v' with u < v", line_no));
        }
        edges.push_back(Edge{NodeId(u), NodeId(v)});
    }
    file.graph = ConceptGraph(file.header.n, std::move(edges));
    return file;
}

} // namespace cocreate::semgraph
