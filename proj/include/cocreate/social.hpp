#pragma once

#include "cocreate/ideation.hpp"
#include "cocreate/random.hpp"
#include "cocreate/semgraph.hpp"

#include <cstddef>
#include <cstdint>
#include <span>

namespace cocreate::social
{

using ideation::IdeationTrace;
using ideation::TraceEdges;
using semgraph::ConceptGraph;
using semgraph::Edge;
using semgraph::NodeId;

struct ExposureOptions {
    std::size_t steps = 20;
    std::size_t iterations = 10;
    /// false turns incorporation into a no-op (ablation)
    bool incorporate = true;
    TraceEdges trace_mode = TraceEdges::traversed;
};

struct ExposureRecord {
    std::uint32_t pair_id = 0;
    std::uint32_t source_id = 0;
    std::uint32_t recipient_id = 0;
    NodeId prompt = 0;
    double overlap_mean = 0.0;
    double gain_mean = 0.0;
    std::size_t iterations = 0;
};

struct RedundancyOptions {
    std::size_t steps = 20;
    /// independent repeats of both arms; r_triad and r_control are their means
    std::size_t iterations = 1;
    TraceEdges trace_mode = TraceEdges::traversed;
};

struct RedundancyInstance {
    std::uint32_t instance_id = 0;
    std::uint32_t source1_id = 0;
    std::uint32_t source2_id = 0;
    std::uint32_t recipient_a_id = 0;
    std::uint32_t recipient_b_id = 0;
    NodeId prompt = 0;
    double r_triad = 0.0;
    double r_control = 0.0;
    double delta = 0.0;
};

/// |a ∩ b| / |a ∪ b| of two sorted unique id sets. Throws DegenerateInputError if both are empty.
double jaccard(std::span<const NodeId> a, std::span<const NodeId> b);

/// Number of ids in sorted `a` that are absent from sorted `b`.
std::size_t count_new(std::span<const NodeId> a, std::span<const NodeId> b);

/// Recipient's graph plus the trace edges it lacks. Node set is unchanged.
ConceptGraph incorporate_trace(const ConceptGraph& recipient, std::span<const Edge> trace_edges);
ConceptGraph incorporate_trace(const ConceptGraph& recipient, const IdeationTrace& source_trace);

/**
 * Dyadic exposure on prompt `s`, repeated `iterations` times.
 *
 * Each iteration: source walk, independent recipient walk, Jaccard overlap of
 * the two visited sets, recipient incorporates the source trace and walks
 * again; gain counts nodes of the second walk missing from the recipient's
 * first. The record carries the means; ids are left for the caller.
 */
ExposureRecord run_exposure(const ConceptGraph& source, const ConceptGraph& recipient, NodeId s,
                            const ExposureOptions& options, Stream& rng);

/**
 * Matched shared-source (triad) versus independent-source (control) comparison.
 *
 * Source h1's trace goes to both recipients in the triad arm; in the control
 * arm b takes h2's trace instead. The h1 trace and both recipients' walk
 * streams are identical across arms, so the arms differ only in b's source.
 * Ids are left for the caller.
 */
RedundancyInstance run_redundancy_instance(const ConceptGraph& h1, const ConceptGraph& h2, const ConceptGraph& a,
                                           const ConceptGraph& b, NodeId s, const RedundancyOptions& options,
                                           Stream& rng);

} // namespace cocreate::social
