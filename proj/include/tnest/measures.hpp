#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tnest/temporal_graph.hpp"

namespace tnest {

struct CentralityParams {
    double alpha = 0.1;       // temporal Katz damping
    double beta = 1.0;        // communicability inverse temperature
    double sae_floor = 1e-16; // lower cap for sum_absolute_error
};

// Cosine similarity of every node's neighborhoods in consecutive slices,
// averaged with weight 1/E; node pairs where either slice degree is zero
// contribute nothing. Directed graphs compare out-neighborhoods.
double edge_persistence(const TemporalGraph& g);

// Triangles per temporal node: triples with one contact per side inside
// a single slice triangle (undirected: each unordered node triple once;
// directed: 3-cycles, both orientations distinct), counted over all
// combinations of contact times, divided by node_count * time_count.
double triangle_density(const TemporalGraph& g);

// Same triples, restricted to contact times that strictly increase along
// some rotation of the triangle, divided by node_count * time_count.
double causal_triangle_density(const TemporalGraph& g);

enum class EventKind { Active, Send, Receive };

// Burstiness (sigma - mean) / (sigma + mean) of inter-event gaps in raw
// timestamps, pooled over all nodes; sigma is the population deviation.
// Throws std::domain_error when no node has two events of the kind.
double burstiness(const TemporalGraph& g, EventKind kind);

// Temporal Katz centrality: product of the per-slice resolvents
// (I - alpha * A)^/-1 applied to the all-ones vector in decreasing time
// order, computed via per-slice Neumann series. Requires
// alpha * max_slice_out_degree < 1; throws std::domain_error otherwise.
std::vector<double> temporal_katz(const TemporalGraph& g, double alpha);

// Temporal communicability: product of per-slice matrix exponentials
// exp(beta * A) applied to all-ones in decreasing time order, each
// evaluated by a truncated Taylor series with 1e-14 term tolerance.
std::vector<double> communicability(const TemporalGraph& g, double beta);

// Sum of absolute differences, capped below by floor_value so log-scale
// comparisons of identical vectors stay finite.
double sum_absolute_error(std::span<const double> a, std::span<const double> b,
                          double floor_value = 1e-16);

struct MeasureReport {
    double persistence = 0;
    double triangle_density = 0;
    double causal_triangle_density = 0;
    // Missing when the inter-event pool of that kind is empty.
    std::optional<double> burstiness_active;
    std::optional<double> burstiness_send;
    std::optional<double> burstiness_receive;
    std::vector<double> katz;
    std::vector<double> communicability;
    CentralityParams params;
};

MeasureReport measure_all(const TemporalGraph& g, const CentralityParams& params = {});

}  // namespace tnest
