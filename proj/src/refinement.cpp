#include "tnest/refinement.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tnest/rng.hpp"

namespace tnest {

namespace {

// Index of (v,t) inside the active array, given the node's CSR range.
std::size_t active_index(const TemporalGraph& g,
                         const std::vector<std::size_t>& offsets,
                         NodeId v, TimeIndex t) {
    const auto times = g.active_times(v);
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end() || *it != t) {
        throw std::invalid_argument("temporal node is not active");
    }
    return offsets[v] + static_cast<std::size_t>(it - times.begin());
}

}  // namespace

bool ColorAssignment::is_active(NodeId v, TimeIndex t) const {
    const auto times = graph_->active_times(v);
    return std::binary_search(times.begin(), times.end(), t);
}

ColorId ColorAssignment::color(NodeId v, TimeIndex t) const {
    return colors_[active_index(*graph_, node_offsets_, v, t)];
}

ColorId ColorAssignment::completed_color(NodeId v, TimeIndex t) const {
    if (!uniform_initial_) {
        throw std::logic_error("completed_color requires uniform starting colors");
    }
    const auto st = graph_->sending_times(v);
    const auto it = std::lower_bound(st.begin(), st.end(), t);
    if (it == st.end()) return terminal_color_;
    return color(v, *it);
}

ColorId ColorAssignment::terminal_color() const {
    if (!uniform_initial_) {
        throw std::logic_error("terminal_color requires uniform starting colors");
    }
    return terminal_color_;
}

ColorAssignment refine_active(const TemporalGraph& g, const RefineOptions& opts) {
    ColorAssignment out;
    out.graph_ = &g;

    // Active nodes sorted by (node, time): every node's activity chain is
    // contiguous, which turns the backward accumulation into a linear scan.
    const std::uint32_t V = g.node_count();
    std::vector<std::size_t> offsets(V + 1, 0);
    for (NodeId v = 0; v < V; ++v) offsets[v + 1] = offsets[v] + g.active_times(v).size();
    const std::size_t A = offsets[V];

    std::vector<TemporalNode> active;
    active.reserve(A);
    for (NodeId v = 0; v < V; ++v) {
        for (TimeIndex t : g.active_times(v)) active.push_back({v, t});
    }

    // Per-slice edge endpoints as indices into the active array; computed
    // once so each round's accumulation is a flat scan.
    const TimeIndex T = g.time_count();
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> endpoints(T);
    for (TimeIndex t = 0; t < T; ++t) {
        const auto& edges = g.slice(t).edges;
        auto& idx = endpoints[t];
        idx.reserve(edges.size());
        for (const SliceEdge& e : edges) {
            idx.emplace_back(static_cast<std::uint32_t>(active_index(g, offsets, e.src, t)),
                             static_cast<std::uint32_t>(active_index(g, offsets, e.dst, t)));
        }
    }

    // Starting colors, plus one sentinel entry per starting class. A
    // sentinel never accumulates anything, so its trajectory is exactly
    // that of a node with no future out-edge: its final color is the
    // terminal color of its class.
    out.uniform_initial_ = opts.initial_colors.empty();
    std::vector<ColorId> prev;
    std::uint32_t init_classes = 0;
    if (out.uniform_initial_) {
        prev.assign(A + 1, 0);
        init_classes = 1;
    } else {
        std::vector<ColorId> given;
        given.reserve(opts.initial_colors.size());
        for (const auto& [tn, c] : opts.initial_colors) given.push_back(c);
        std::sort(given.begin(), given.end());
        given.erase(std::unique(given.begin(), given.end()), given.end());
        init_classes = static_cast<std::uint32_t>(given.size());

        prev.assign(A + init_classes, 0);
        std::size_t assigned = 0;
        for (const auto& [tn, c] : opts.initial_colors) {
            const auto times = g.active_times(tn.node);
            if (!std::binary_search(times.begin(), times.end(), tn.time)) {
                throw std::invalid_argument("initial color given for an inactive temporal node");
            }
            prev[active_index(g, offsets, tn.node, tn.time)] = static_cast<ColorId>(
                std::lower_bound(given.begin(), given.end(), c) - given.begin());
            ++assigned;
        }
        if (assigned != A) {
            throw std::invalid_argument("initial colors must cover every active temporal node");
        }
        for (std::uint32_t s = 0; s < init_classes; ++s) prev[A + s] = s;
    }
    const std::size_t N = prev.size();

    Rng hash_rng(opts.seed);
    std::vector<std::uint64_t> material;  // one 64-bit value per color id
    auto ensure_material = [&](std::size_t n) {
        while (material.size() < n) material.push_back(hash_rng.next());
    };

    std::vector<std::uint64_t> acc(N, 0);
    std::vector<ColorId> next(N, 0);
    std::vector<std::uint32_t> order(N);
    std::iota(order.begin(), order.end(), 0);

    auto count_active_classes = [&](const std::vector<ColorId>& colors) {
        // Colors are dense; track which ids appear among active entries.
        std::vector<char> seen(colors.empty() ? 1 : *std::max_element(colors.begin(), colors.end()) + 1, 0);
        std::uint32_t n = 0;
        for (std::size_t i = 0; i < A; ++i) {
            if (!seen[colors[i]]) { seen[colors[i]] = 1; ++n; }
        }
        return n;
    };

    out.history_.push_back(A == 0 ? 0 : count_active_classes(prev));
    std::uint32_t universe = init_classes;

    std::uint32_t rounds = 0;
    bool converged = false;
    while (!converged && (!opts.max_depth || rounds < *opts.max_depth)) {
        ensure_material(universe);

        // Multiset hash per slice: additive over successors in the slice,
        // wraparound arithmetic mod 2^64.
        for (TimeIndex t = 0; t < T; ++t) {
            for (const auto& [si, di] : endpoints[t]) acc[si] += material[prev[di]];
        }
        // Backward sweep: fold in everything the node sees at later active
        // times. Activity chains are contiguous and time-sorted.
        for (NodeId v = 0; v < V; ++v) {
            for (std::size_t i = offsets[v + 1]; i-- > offsets[v] + 1;) {
                acc[i - 1] += acc[i];
            }
        }

        // New color = rank of (previous color, hash), ascending. The rank
        // key embeds the previous color, so classes only ever split and
        // the refinement property holds by construction.
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (prev[a] != prev[b]) return prev[a] < prev[b];
            return acc[a] < acc[b];
        });
        std::uint32_t classes = 0;
        std::uint32_t active_classes = 0;
        bool class_has_active = false;
        for (std::size_t k = 0; k < N; ++k) {
            const std::uint32_t i = order[k];
            if (k > 0) {
                const std::uint32_t p = order[k - 1];
                if (prev[i] != prev[p] || acc[i] != acc[p]) {
                    ++classes;
                    class_has_active = false;
                }
            }
            next[i] = classes;
            if (i < A && !class_has_active) {
                class_has_active = true;
                ++active_classes;
            }
        }
        universe = N == 0 ? 0 : classes + 1;
        std::fill(acc.begin(), acc.end(), 0);
        prev.swap(next);
        ++rounds;

        converged = active_classes == out.history_.back();
        out.history_.push_back(active_classes);
    }

    out.depth_ = rounds;
    out.converged_ = out.history_.size() >= 2 &&
                     out.history_[out.history_.size() - 1] == out.history_[out.history_.size() - 2];
    out.color_universe_ = universe;
    out.terminal_color_ = out.uniform_initial_ && N > A ? prev[A] : 0;
    out.active_ = std::move(active);
    out.node_offsets_ = std::move(offsets);
    out.colors_.assign(prev.begin(), prev.begin() + A);
    return out;
}

std::uint32_t stable_depth(const TemporalGraph& g, std::uint64_t seed) {
    RefineOptions opts;
    opts.seed = seed;
    return refine_active(g, opts).depth();
}

SliceColorSweep::SliceColorSweep(const TemporalGraph& g, const ColorAssignment& colors)
    : graph_(&g), assignment_(&colors) {
    if (&colors.graph() != &g) {
        throw std::invalid_argument("slice sweep: assignment stems from a different graph");
    }
    if (!colors.uniform_initial()) {
        throw std::invalid_argument("slice sweep requires uniform starting colors");
    }
    const std::uint32_t V = g.node_count();
    colors_.resize(V);
    pos_.resize(V);
    send_ptr_.assign(V, 0);
    classes_.resize(colors.color_universe());
    changed_.reserve(V);
    for (NodeId v = 0; v < V; ++v) {
        colors_[v] = current_color(v);
        pos_[v] = static_cast<std::uint32_t>(classes_[colors_[v]].size());
        classes_[colors_[v]].push_back(v);
        changed_.push_back(v);
    }
}

ColorId SliceColorSweep::current_color(NodeId v) const {
    const auto st = graph_->sending_times(v);
    if (send_ptr_[v] >= st.size()) return assignment_->terminal_color();
    return assignment_->color(v, st[send_ptr_[v]]);
}

void SliceColorSweep::set_color(NodeId v, ColorId c) {
    const ColorId old = colors_[v];
    auto& from = classes_[old];
    const std::uint32_t idx = pos_[v];
    from[idx] = from.back();
    pos_[from[idx]] = idx;
    from.pop_back();
    colors_[v] = c;
    pos_[v] = static_cast<std::uint32_t>(classes_[c].size());
    classes_[c].push_back(v);
}

void SliceColorSweep::advance() {
    // Only nodes that sent at the slice being left can change color: for
    // everyone else the next sending time is unchanged.
    changed_.clear();
    for (NodeId v : graph_->classify_nodes(t_).sending) {
        ++send_ptr_[v];
        const ColorId c = current_color(v);
        if (c != colors_[v]) {
            set_color(v, c);
            changed_.push_back(v);
        }
    }
    ++t_;
}

}  // namespace tnest
