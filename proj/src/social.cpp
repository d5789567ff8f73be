#include "cocreate/social.hpp"
#include "cocreate/error.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace cocreate::social
{

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b)
{
    if (a.empty() && b.empty()) {
        throw DegenerateInputError("jaccard: both sets are empty");
    }
    std::size_t shared = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        }
        else if (*ib < *ia) {
            ++ib;
        }
        else {
            ++shared;
            ++ia;
            ++ib;
        }
    }
    const std::size_t united = a.size() + b.size() - shared;
    return static_cast<double>(shared) / static_cast<double>(united);
}

std::size_t count_new(std::span<const NodeId> a, std::span<const NodeId> b)
{
    std::size_t fresh = 0;
    auto ib = b.begin();
    for (auto v : a) {
        while (ib != b.end() && *ib < v) {
            ++ib;
        }
        if (ib == b.end() || *ib != v) {
            ++fresh;
        }
    }
    return fresh;
}

ConceptGraph incorporate_trace(const ConceptGraph& recipient, std::span<const Edge> trace_edges)
{
    return semgraph::with_added_edges(recipient, trace_edges);
}

ConceptGraph incorporate_trace(const ConceptGraph& recipient, const IdeationTrace& source_trace)
{
    return incorporate_trace(recipient, std::span<const Edge>(source_trace.walk_edges));
}

ExposureRecord run_exposure(const ConceptGraph& source, const ConceptGraph& recipient, NodeId s,
                            const ExposureOptions& options, Stream& rng)
{
    if (options.iterations < 1) {
        throw ParameterError("run_exposure: iterations must be >= 1");
    }
    if (source.node_count() != recipient.node_count()) {
        throw ParameterError("run_exposure: source and recipient must share the node set");
    }
    double overlap_total = 0.0;
    double gain_total = 0.0;
    for (std::size_t it = 0; it < options.iterations; ++it) {
        const auto source_walk = ideation::random_walk(source, s, options.steps, rng);
        const auto first = ideation::random_walk(recipient, s, options.steps, rng);
        overlap_total += jaccard(source_walk.visited, first.visited);

        ideation::IdeationTrace second;
        if (options.incorporate) {
            const auto edges = ideation::trace_edges(source_walk, source, options.trace_mode);
            second = ideation::random_walk(incorporate_trace(recipient, edges), s, options.steps, rng);
        }
        else {
            second = ideation::random_walk(recipient, s, options.steps, rng);
        }
        gain_total += static_cast<double>(count_new(second.visited, first.visited));
    }
    ExposureRecord record;
    record.prompt = s;
    record.iterations = options.iterations;
    record.overlap_mean = overlap_total / static_cast<double>(options.iterations);
    record.gain_mean = gain_total / static_cast<double>(options.iterations);
    return record;
}

RedundancyInstance run_redundancy_instance(const ConceptGraph& h1, const ConceptGraph& h2, const ConceptGraph& a,
                                           const ConceptGraph& b, NodeId s, const RedundancyOptions& options,
                                           Stream& rng)
{
    if (options.iterations < 1) {
        throw ParameterError("run_redundancy_instance: iterations must be >= 1");
    }
    const std::size_t n = a.node_count();
    if (h1.node_count() != n || h2.node_count() != n || b.node_count() != n) {
        throw ParameterError("run_redundancy_instance: all graphs must share the node set");
    }

    double triad_total = 0.0;
    double control_total = 0.0;
    for (std::size_t it = 0; it < options.iterations; ++it) {
        auto h1_stream = rng.fork({"h1", it});
        auto h2_stream = rng.fork({"h2", it});
        const auto a_stream = rng.fork({"a", it});
        const auto b_stream = rng.fork({"b", it});

        const auto tau1 = ideation::random_walk(h1, s, options.steps, h1_stream);
        const auto tau2 = ideation::random_walk(h2, s, options.steps, h2_stream);
        const auto edges1 = ideation::trace_edges(tau1, h1, options.trace_mode);
        const auto edges2 = ideation::trace_edges(tau2, h2, options.trace_mode);

        // a sees h1 in both arms, so its second walk is shared
        auto walk_a = a_stream;
        const auto a_second = ideation::random_walk(incorporate_trace(a, edges1), s, options.steps, walk_a);

        auto walk_b_triad = b_stream;
        const auto b_triad = ideation::random_walk(incorporate_trace(b, edges1), s, options.steps, walk_b_triad);
        auto walk_b_control = b_stream;
        const auto b_control =
            ideation::random_walk(incorporate_trace(b, edges2), s, options.steps, walk_b_control);

        triad_total += jaccard(a_second.visited, b_triad.visited);
        control_total += jaccard(a_second.visited, b_control.visited);
    }

    RedundancyInstance instance;
    instance.prompt = s;
    instance.r_triad = triad_total / static_cast<double>(options.iterations);
    instance.r_control = control_total / static_cast<double>(options.iterations);
    instance.delta = instance.r_triad - instance.r_control;
    return instance;
}

} // namespace cocreate::social
