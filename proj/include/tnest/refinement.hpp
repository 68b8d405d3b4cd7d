#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tnest/temporal_graph.hpp"

namespace tnest {

struct RefineOptions {
    // Number of refinement rounds; nullopt runs until the partition of
    // active temporal nodes stops splitting.
    std::optional<std::uint32_t> max_depth;
    // Seeds the multiset hash material. Different seeds relabel colors
    // but produce identical partitions.
    std::uint64_t seed = 0x7e3a15bd5c0ffee1ULL;
    // Optional starting colors, one entry per active temporal node
    // (values are class labels; only the induced partition matters).
    // Empty means uniform starting colors.
    std::map<TemporalNode, ColorId> initial_colors;
};

// Colors of active temporal nodes after some number of refinement
// rounds, plus the designated terminal color used to extend the
// coloring to inactive temporal nodes. Holds a pointer to the graph it
// was computed from; the graph must outlive the assignment.
class ColorAssignment {
public:
    const TemporalGraph& graph() const { return *graph_; }

    // Rounds actually applied; the colors realize the depth-`depth()`
    // partition of active temporal nodes.
    std::uint32_t depth() const { return depth_; }
    // True when the last round did not split any class, i.e. the
    // partition is stable under further rounds.
    bool converged() const { return converged_; }
    // Active class count after 0, 1, ..., depth() rounds.
    const std::vector<std::uint32_t>& class_count_history() const { return history_; }
    std::uint32_t class_count() const { return history_.back(); }
    // Total number of color ids in use, including classes that contain
    // only the terminal marker.
    std::uint32_t color_universe() const { return color_universe_; }
    bool uniform_initial() const { return uniform_initial_; }

    const std::vector<TemporalNode>& active_nodes() const { return active_; }
    std::span<const ColorId> active_colors() const { return colors_; }

    bool is_active(NodeId v, TimeIndex t) const;
    // Color of an active temporal node; throws if (v,t) is not active.
    ColorId color(NodeId v, TimeIndex t) const;

    // Color of an arbitrary temporal node: the color at v's next sending
    // time at or after t, or the terminal color when v never sends again.
    // Defined for assignments with uniform starting colors only.
    ColorId completed_color(NodeId v, TimeIndex t) const;
    // Terminal color: the stable color of a node with no future out-edge.
    ColorId terminal_color() const;

private:
    friend ColorAssignment refine_active(const TemporalGraph&, const RefineOptions&);

    const TemporalGraph* graph_ = nullptr;
    std::uint32_t depth_ = 0;
    bool converged_ = false;
    bool uniform_initial_ = true;
    std::uint32_t color_universe_ = 0;
    ColorId terminal_color_ = 0;
    std::vector<std::uint32_t> history_;
    std::vector<TemporalNode> active_;        // sorted by (node, time)
    std::vector<std::size_t> node_offsets_;   // CSR over nodes into active_
    std::vector<ColorId> colors_;             // parallel to active_
};

// Temporal color refinement over active temporal nodes. Each round
// hashes the color multiset of every node's successors with a single
// backward sweep per node chain, then replaces colors by the rank of
// (previous color, hash) pairs, so rounds cost O(E log E) and colors
// always refine the previous round's classes by construction.
ColorAssignment refine_active(const TemporalGraph& g, const RefineOptions& opts = {});

// Rounds until the first round that splits nothing, starting from
// uniform colors (a single-slice graph with one orbit reports 1: the
// first round confirms stability).
std::uint32_t stable_depth(const TemporalGraph& g,
                           std::uint64_t seed = 0x7e3a15bd5c0ffee1ULL);

// Walks slices in increasing time, maintaining the completed coloring
// of all node_count() nodes plus the partition it induces. Work per
// step is proportional to the nodes whose color changed, so a full
// sweep costs O(V + E log E + T) overall.
class SliceColorSweep {
public:
    // The assignment must stem from this graph and use uniform starting
    // colors. Keeps pointers to both; they must outlive the sweep.
    SliceColorSweep(const TemporalGraph& g, const ColorAssignment& colors);

    bool done() const { return t_ >= graph_->time_count(); }
    TimeIndex time() const { return t_; }

    // Completed color per node at the current slice (size node_count()).
    std::span<const ColorId> node_colors() const { return colors_; }
    // Members per color id (size color_universe()); together the classes
    // partition all node_count() nodes.
    const std::vector<std::vector<NodeId>>& classes() const { return classes_; }
    // Nodes whose color differs from the previous slice; at the first
    // slice every node counts as changed.
    std::span<const NodeId> changed() const { return changed_; }

    void advance();

private:
    void set_color(NodeId v, ColorId c);
    ColorId current_color(NodeId v) const;

    const TemporalGraph* graph_;
    const ColorAssignment* assignment_;
    TimeIndex t_ = 0;
    std::vector<ColorId> colors_;
    std::vector<std::vector<NodeId>> classes_;
    std::vector<std::uint32_t> pos_;       // index of node in its class
    std::vector<std::uint32_t> send_ptr_;  // per node: first sending time >= t_
    std::vector<NodeId> changed_;
};

}  // namespace tnest
