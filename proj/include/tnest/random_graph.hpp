#pragma once

#include <cstdint>

#include "tnest/temporal_graph.hpp"

namespace tnest {

// Random temporal graph: every slice draws each ordered pair (directed)
// or unordered pair (undirected) independently with probability
// edge_prob; a slice that comes up empty receives one uniform edge so
// every timestamp keeps a non-empty edge set. Timestamps are 1..times.
TemporalGraph random_temporal_graph(std::uint32_t nodes, std::uint32_t times,
                                    double edge_prob, bool directed,
                                    std::uint64_t seed);

// Random temporal graph with exactly `contacts` distinct contacts spread
// uniformly over nodes and times; slices left empty are dropped, so the
// result can have fewer than `times` slices.
TemporalGraph random_fixed_contacts(std::uint32_t nodes, std::uint32_t times,
                                    std::uint64_t contacts, bool directed,
                                    std::uint64_t seed);

}  // namespace tnest
