#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

namespace tnest {

using NodeId = std::uint32_t;
using TimeIndex = std::uint32_t;
using Timestamp = std::int64_t;
using ColorId = std::uint32_t;

struct TemporalNode {
    NodeId node;
    TimeIndex time;

    friend bool operator==(const TemporalNode&, const TemporalNode&) = default;
    friend auto operator<=>(const TemporalNode&, const TemporalNode&) = default;
};

// Directed edge inside one time slice.
struct SliceEdge {
    NodeId src;
    NodeId dst;

    friend bool operator==(const SliceEdge&, const SliceEdge&) = default;
    friend auto operator<=>(const SliceEdge&, const SliceEdge&) = default;
};

// One contact record for graph construction; timestamps are raw values,
// not slice indices. For undirected graphs a record stands for both
// directions.
struct Contact {
    NodeId u;
    NodeId v;
    Timestamp t;
};

inline std::uint64_t edge_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Static digraph on temporal nodes: (v,t) -> (w,t') for every successor
// (w,t') of (v,t). Block upper triangular in time-major node ids
// id(v,t) = t * node_count + v.
struct CausalCompletion {
    std::uint32_t node_count = 0;
    std::uint32_t time_count = 0;
    std::vector<std::vector<std::uint32_t>> out;  // sorted adjacency

    std::size_t order() const {
        return static_cast<std::size_t>(node_count) * time_count;
    }
    std::uint32_t id(NodeId v, TimeIndex t) const {
        return t * node_count + v;
    }
    TemporalNode temporal_node(std::uint32_t id) const {
        return TemporalNode{id % node_count, id / node_count};
    }
};

// Time-aggregated multigraph: distinct directed edges with contact
// multiplicities. Multiplicities sum to edge_count() of the source graph.
struct AggregatedGraph {
    struct Entry {
        NodeId src;
        NodeId dst;
        std::uint32_t multiplicity;
    };
    std::vector<Entry> edges;  // sorted by (src, dst)

    std::uint32_t multiplicity(NodeId u, NodeId v) const;
};

// Immutable temporal graph. Timestamps are strictly increasing and every
// slice is non-empty. Undirected graphs store both directions of each
// contact and edge_count() counts both.
class TemporalGraph {
public:
    struct Slice {
        std::vector<SliceEdge> edges;            // sorted by (src, dst)
        std::unordered_set<std::uint64_t> members;  // edge_key(src, dst)

        bool has(NodeId u, NodeId v) const { return members.count(edge_key(u, v)) != 0; }
    };

    struct SliceNodeSets {
        std::vector<NodeId> active;   // incident to some edge, sorted
        std::vector<NodeId> sending;  // with an out-edge, sorted
    };

    TemporalGraph() = default;

    // Builds a graph from contact records. Records may arrive in any
    // order; duplicates within a slice collapse (count reported via
    // duplicates_out when non-null). Node labels default to "n<i>" when
    // labels is empty. Throws std::invalid_argument on self-loops, label
    // count mismatch, or empty input.
    static TemporalGraph from_contacts(std::uint32_t node_count,
                                       std::vector<Contact> contacts,
                                       bool directed,
                                       std::vector<std::string> labels = {},
                                       std::uint64_t* duplicates_out = nullptr);

    // Rebuilds with the same nodes/labels/direction but new slice contents.
    // slices[i] pairs with timestamps[i]; empty slices are dropped together
    // with their timestamps. Edges may arrive unsorted; no duplicates allowed.
    static TemporalGraph assemble(const TemporalGraph& like,
                                  std::vector<Timestamp> timestamps,
                                  std::vector<std::vector<SliceEdge>> slices);

    std::uint32_t node_count() const { return node_count_; }
    const std::vector<std::string>& node_labels() const { return labels_; }
    const std::string& label(NodeId v) const { return labels_[v]; }
    std::uint32_t time_count() const { return static_cast<std::uint32_t>(timestamps_.size()); }
    Timestamp timestamp(TimeIndex t) const { return timestamps_[t]; }
    const std::vector<Timestamp>& timestamps() const { return timestamps_; }
    std::size_t edge_count() const { return edge_count_; }
    bool directed() const { return directed_; }

    const Slice& slice(TimeIndex t) const { return slices_[t]; }
    bool has_edge(NodeId u, NodeId v, TimeIndex t) const { return slices_[t].has(u, v); }

    // Out-edge range of v within slice t (contiguous in the sorted edge list).
    std::span<const SliceEdge> out_edges(NodeId v, TimeIndex t) const;

    // Successors S(v,t): contacts (w,t') with an edge (v,w) at t' >= t,
    // sorted by (time, node). t must be a valid slice index.
    std::vector<TemporalNode> successors(NodeId v, TimeIndex t) const;

    SliceNodeSets classify_nodes(TimeIndex t) const;

    // Slice indices where v is incident to an edge / has an out-edge;
    // strictly increasing. For undirected graphs the two coincide.
    std::span<const TimeIndex> active_times(NodeId v) const;
    std::span<const TimeIndex> sending_times(NodeId v) const;

    std::size_t active_node_count() const { return active_times_.size(); }
    std::size_t sending_node_count() const { return sending_times_.size(); }

    AggregatedGraph aggregated() const;

    // Materializes the causal completion. Guarded: throws
    // std::length_error when node_count * time_count exceeds max_order.
    CausalCompletion causal_completion(std::size_t max_order = 1'000'000) const;

    // Label-level equality: same direction flag, timestamps and contact
    // set under node labels (node ids may differ).
    bool equivalent(const TemporalGraph& other) const;

private:
    friend struct GraphBuilder;

    void build_incidence();

    bool directed_ = true;
    std::uint32_t node_count_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::string> labels_;
    std::vector<Timestamp> timestamps_;
    std::vector<Slice> slices_;

    // CSR over nodes: active/sending slice indices per node.
    std::vector<std::size_t> active_offsets_;
    std::vector<TimeIndex> active_times_;
    std::vector<std::size_t> sending_offsets_;
    std::vector<TimeIndex> sending_times_;
};

struct ParseResult {
    TemporalGraph graph;
    std::uint64_t duplicate_contacts = 0;  // collapsed while parsing
};

// Reads "u v t" lines; '#' starts a comment, blank lines are skipped.
// Labels are arbitrary whitespace-free strings, t is a signed integer.
// Throws std::runtime_error with the offending line number on malformed
// lines and self-loops, and when no edges remain.
ParseResult parse_edge_list(std::istream& in, bool directed);
ParseResult parse_edge_list_file(const std::string& path, bool directed);

// Writes one contact per line "u v t" using node labels, sorted by
// (t, u, v) with u, v in node-id order. For undirected graphs both
// directions are written unless collapse_undirected is set, in which
// case each contact appears once with the smaller node id first.
void write_edge_list(std::ostream& out, const TemporalGraph& g,
                     bool collapse_undirected = false);

}  // namespace tnest
