#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tnest/refinement.hpp"
#include "tnest/rng.hpp"
#include "tnest/temporal_graph.hpp"

namespace tnest {

enum class SampleMethod {
    TNest,                  // color-respecting in-slice rewiring chain
    RandomEdge,             // cross-time edge swaps / redraws
    DegreeSnapshotShuffle,  // per-slice degree-preserving shuffle (TNest at depth 0)
    RandomTimes,            // permute the timestamp multiset over contacts
    RandomContacts,         // redraw slice contacts from the aggregated support
};

std::string method_name(SampleMethod m);
std::optional<SampleMethod> method_from_name(const std::string& name);

struct SamplerConfig {
    SampleMethod method = SampleMethod::TNest;
    // Neighborhood depth d preserved by the chain: rewiring uses the
    // completed colors after d-1 refinement rounds, so depth 0 rewires
    // uniformly (same as DegreeSnapshotShuffle) and nullopt uses the
    // stable colors. Ignored by RandomEdge/RandomTimes/RandomContacts.
    std::optional<std::uint32_t> depth = 1;
    // Attempted moves per slice (RandomEdge: total attempts). When unset,
    // each slice attempts ceil(rewirings_per_contact * contacts) moves.
    std::optional<std::uint64_t> rewirings_per_slice;
    double rewirings_per_contact = 20.0;
    std::uint64_t master_seed = 1;
};

struct RewireStats {
    std::uint64_t attempted = 0;
    std::uint64_t accepted = 0;
    std::vector<std::uint64_t> attempted_per_slice;
    std::vector<std::uint64_t> accepted_per_slice;
};

struct SampleResult {
    TemporalGraph graph;
    RewireStats stats;
};

// One slice of undirected color-respecting swaps: picks a color-pair
// subgraph uniformly, two of its contacts, swaps endpoints when all four
// nodes are distinct and both replacement contacts are absent. contacts
// holds each undirected contact of the slice once (any orientation);
// node_colors[v] is the rewiring color and is read for slice nodes only.
// Mutates contacts in place and returns the number of accepted swaps.
std::uint64_t undir_rewire_slice(std::vector<SliceEdge>& contacts,
                                 std::span<const ColorId> node_colors,
                                 std::uint64_t attempts, Rng& rng);

// One slice of directed color-respecting tilts: picks an edge (u,v)
// uniformly and a node x uniformly from v's color class over all nodes,
// replaces (u,v) by (u,x) when x != u and (u,x) is absent. classes lists
// the members of every color id and must agree with node_colors.
std::uint64_t dir_rewire_slice(std::vector<SliceEdge>& edges,
                               std::span<const ColorId> node_colors,
                               const std::vector<std::vector<NodeId>>& classes,
                               std::uint64_t attempts, Rng& rng);

// Runs the color-respecting rewiring chain slice by slice and returns
// the final state. Every slice draws from its own random stream derived
// from master_seed, so results do not depend on processing order.
SampleResult tnest_sample(const TemporalGraph& g, const SamplerConfig& cfg);

// Baseline null models. Each returns a graph plus attempt statistics.
SampleResult re_sample(const TemporalGraph& g, std::uint64_t attempts, std::uint64_t seed);
SampleResult dss_sample(const TemporalGraph& g, const SamplerConfig& cfg);
SampleResult rt_sample(const TemporalGraph& g, std::uint64_t seed);
SampleResult rc_sample(const TemporalGraph& g, std::uint64_t seed);

// Dispatches on cfg.method with the config's budgets and seed.
SampleResult sample(const TemporalGraph& g, const SamplerConfig& cfg);

// Number of distinct valid moves (undirected: swap moves given by an
// unordered contact pair plus a valid endpoint pairing; directed: (edge,
// target) tilts) across all slices, under the colors after `depth`
// refinement rounds (nullopt: stable colors). Throws std::length_error
// when the enumeration work estimate exceeds work_limit.
std::uint64_t count_rewirings(const TemporalGraph& g,
                              std::optional<std::uint32_t> depth,
                              std::uint64_t seed = 0x7e3a15bd5c0ffee1ULL,
                              std::uint64_t work_limit = 200'000'000ULL);

}  // namespace tnest
