#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "tnest/temporal_graph.hpp"

namespace tnest::oracle {

// Reference implementations, deliberately naive: exact multiset keys
// instead of hashes, dense structures instead of incremental updates.
// All take a guard on node_count * time_count and throw std::length_error
// beyond it.

// Textbook color refinement on the causal completion digraph, starting
// from uniform colors. Returns canonically relabeled colors for all
// temporal nodes in time-major order (id = t * node_count + v) after
// `rounds` rounds.
std::vector<ColorId> completion_refinement(const TemporalGraph& g, std::uint32_t rounds,
                                           std::size_t max_order = 2000);

// Same recursion, but gathering each temporal node's successor set
// directly from the graph instead of materializing the completion.
std::vector<ColorId> successor_refinement(const TemporalGraph& g, std::uint32_t rounds,
                                          std::size_t max_order = 2000);

// Rounds until a round confirms the previous partition (count included),
// the same convention as stable_depth.
std::uint32_t stable_rounds(const TemporalGraph& g, std::size_t max_order = 2000);

// First-occurrence relabeling; equal results mean equal partitions with
// matching class labels.
std::vector<ColorId> canonical(std::vector<ColorId> colors);

// Restriction of a full temporal-node coloring to active nodes in
// (node, time) order, canonically relabeled.
std::vector<ColorId> restrict_to_active(const TemporalGraph& g,
                                        const std::vector<ColorId>& full);

// Membership test of the depth-`rounds` neighborhood class: refines the
// disjoint union of a and b and checks that every temporal node gets the
// same color in both. Requires equal node counts and timestamps.
bool same_refinement_colors(const TemporalGraph& a, const TemporalGraph& b,
                            std::uint32_t rounds, std::size_t max_order = 2000);

// Canonical identity of a graph's slice contents.
std::vector<std::uint64_t> state_key(const TemporalGraph& g);

struct ClassEnumeration {
    std::vector<TemporalGraph> graphs;
    std::set<std::vector<std::uint64_t>> keys;
};

// Exhaustive depth-`depth` neighborhood class: all graphs on the same
// nodes and timestamps with the same per-slice out-degrees (directed) or
// degrees (undirected) whose refinement colors match g everywhere after
// `depth` rounds. Throws std::length_error when the degree-respecting
// candidate space exceeds candidate_limit.
ClassEnumeration enumerate_class(const TemporalGraph& g, std::uint32_t depth,
                                 std::uint64_t candidate_limit = 20'000'000ULL);

// BFS closure of g under color-respecting slice moves (undirected swaps
// or directed tilts), with colors fixed to g's completion refinement
// after color_rounds rounds. The chain preserving depth-d structure uses
// color_rounds = d - 1.
ClassEnumeration move_closure(const TemporalGraph& g, std::uint32_t color_rounds,
                              std::uint64_t state_limit = 2'000'000ULL);

// Temporal Katz by explicit walk counting up to length k_max, plus a
// rigorous tail bound: a length-k walk places its steps on slices in
// non-decreasing order (C(k+T-1, T-1) choices) and every step has at
// most D targets where D is the maximum per-slice out-degree, so the
// truncated mass is at most sum_{k > k_max} C(k+T-1, T-1) (alpha*D)^k.
// The bound is infinity when alpha*D >= 1 (temporal_katz throws there).
struct WalkKatz {
    std::vector<double> gamma;
    double tail_bound;
};
WalkKatz walk_count_katz(const TemporalGraph& g, double alpha, std::uint32_t k_max,
                         std::size_t max_order = 2000);

// Temporal Katz as one dense solve (I - alpha*A)x = 1 on the causal
// completion adjacency; returns the first-time block.
std::vector<double> block_katz(const TemporalGraph& g, double alpha,
                               std::size_t max_order = 2000);

// Communicability via dense per-slice matrix exponentials.
std::vector<double> dense_communicability(const TemporalGraph& g, double beta,
                                          std::size_t max_node_count = 500);

// Brute-force measure counterparts, written directly from the defining
// formulas over dense structures. Small graphs only.

// Persistence from dense consecutive-slice adjacency matrices.
double naive_persistence(const TemporalGraph& g, std::size_t max_node_count = 500);

// Triangle and causal-triangle counts by enumerating all node triples
// against all contact-time combinations.
struct NaiveTriangles {
    std::uint64_t all = 0;
    std::uint64_t causal = 0;
};
NaiveTriangles naive_triangles(const TemporalGraph& g, std::size_t max_node_count = 64);

// Burstiness from per-node event lists gathered by direct slice scans.
double naive_burstiness(const TemporalGraph& g, int kind /* 0 active, 1 send, 2 receive */);

}  // namespace tnest::oracle
