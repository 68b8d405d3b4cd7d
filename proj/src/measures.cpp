#include "tnest/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tnest {

namespace {

// Sorted out-neighbor lists of one slice, grouped from the sorted edge
// vector: (first src row, targets).
struct SliceRows {
    std::vector<NodeId> nodes;
    std::vector<std::vector<NodeId>> targets;
};

SliceRows slice_rows(const TemporalGraph& g, TimeIndex t) {
    SliceRows rows;
    const auto& edges = g.slice(t).edges;
    for (std::size_t i = 0; i < edges.size();) {
        std::size_t j = i;
        std::vector<NodeId> targets;
        while (j < edges.size() && edges[j].src == edges[i].src) {
            targets.push_back(edges[j].dst);
            ++j;
        }
        rows.nodes.push_back(edges[i].src);
        rows.targets.push_back(std::move(targets));
        i = j;
    }
    return rows;
}

std::size_t sorted_intersection_size(const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b) {
    std::size_t n = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++n; ++i; ++j; }
    }
    return n;
}

std::size_t triple_intersection_size(const std::vector<TimeIndex>& a,
                                     const std::vector<TimeIndex>& b,
                                     const std::vector<TimeIndex>& c) {
    std::size_t n = 0;
    for (TimeIndex t : a) {
        if (std::binary_search(b.begin(), b.end(), t) &&
            std::binary_search(c.begin(), c.end(), t)) {
            ++n;
        }
    }
    return n;
}

// Number of (x,y,z) in X*Y*Z with x < y < z; lists are sorted.
std::uint64_t ordered_triples(const std::vector<TimeIndex>& x,
                              const std::vector<TimeIndex>& y,
                              const std::vector<TimeIndex>& z) {
    std::uint64_t n = 0;
    for (TimeIndex mid : y) {
        const std::uint64_t lo =
            std::lower_bound(x.begin(), x.end(), mid) - x.begin();
        const std::uint64_t hi =
            z.end() - std::upper_bound(z.begin(), z.end(), mid);
        n += lo * hi;
    }
    return n;
}

// Contact time lists per distinct pair. Undirected graphs canonicalize
// to src < dst; lists are sorted by construction.
std::unordered_map<std::uint64_t, std::vector<TimeIndex>> pair_times(
    const TemporalGraph& g) {
    std::unordered_map<std::uint64_t, std::vector<TimeIndex>> times;
    for (TimeIndex t = 0; t < g.time_count(); ++t) {
        for (const SliceEdge& e : g.slice(t).edges) {
            if (!g.directed() && e.src > e.dst) continue;
            times[edge_key(e.src, e.dst)].push_back(t);
        }
    }
    return times;
}

struct TriangleCounts {
    std::uint64_t all = 0;
    std::uint64_t causal = 0;
};

TriangleCounts count_triangles(const TemporalGraph& g) {
    const auto times = pair_times(g);
    TriangleCounts counts;

    if (!g.directed()) {
        // Support adjacency over canonical pairs, neighbors above the node.
        std::vector<std::vector<NodeId>> up(g.node_count());
        for (const auto& [key, list] : times) {
            const NodeId u = static_cast<NodeId>(key >> 32);
            const NodeId v = static_cast<NodeId>(key & 0xffffffffULL);
            up[u].push_back(v);
        }
        for (auto& adj : up) std::sort(adj.begin(), adj.end());
        for (NodeId a = 0; a < g.node_count(); ++a) {
            for (std::size_t i = 0; i < up[a].size(); ++i) {
                for (std::size_t j = i + 1; j < up[a].size(); ++j) {
                    const NodeId b = up[a][i];
                    const NodeId c = up[a][j];
                    if (!std::binary_search(up[b].begin(), up[b].end(), c)) continue;
                    const auto& ab = times.at(edge_key(a, b));
                    const auto& bc = times.at(edge_key(b, c));
                    const auto& ca = times.at(edge_key(a, c));
                    counts.all += static_cast<std::uint64_t>(ab.size()) * bc.size() * ca.size();
                    // Causal triples have pairwise distinct times: subtract
                    // the coincidences from the full product.
                    const std::uint64_t n1 = ab.size(), n2 = bc.size(), n3 = ca.size();
                    const std::uint64_t i12 = sorted_intersection_size(ab, bc);
                    const std::uint64_t i13 = sorted_intersection_size(ab, ca);
                    const std::uint64_t i23 = sorted_intersection_size(bc, ca);
                    const std::uint64_t i123 = triple_intersection_size(ab, bc, ca);
                    counts.causal += n1 * n2 * n3 - i12 * n3 - i13 * n2 - i23 * n1 + 2 * i123;
                }
            }
        }
    } else {
        std::vector<std::vector<NodeId>> out(g.node_count());
        for (const auto& [key, list] : times) {
            out[static_cast<NodeId>(key >> 32)].push_back(
                static_cast<NodeId>(key & 0xffffffffULL));
        }
        for (auto& adj : out) std::sort(adj.begin(), adj.end());
        // Each directed 3-cycle is rooted at its smallest node; the two
        // orientations of a node triple are distinct cycles.
        for (NodeId a = 0; a < g.node_count(); ++a) {
            for (NodeId b : out[a]) {
                if (b <= a) continue;
                for (NodeId c : out[b]) {
                    if (c <= a || c == b) continue;
                    if (!std::binary_search(out[c].begin(), out[c].end(), a)) continue;
                    const auto& ab = times.at(edge_key(a, b));
                    const auto& bc = times.at(edge_key(b, c));
                    const auto& ca = times.at(edge_key(c, a));
                    counts.all += static_cast<std::uint64_t>(ab.size()) * bc.size() * ca.size();
                    counts.causal += ordered_triples(ab, bc, ca) +
                                     ordered_triples(bc, ca, ab) +
                                     ordered_triples(ca, ab, bc);
                }
            }
        }
    }
    return counts;
}

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void check_alpha(const TemporalGraph& g, double alpha) {
    std::size_t max_out = 0;
    for (TimeIndex t = 0; t < g.time_count(); ++t) {
        const auto& edges = g.slice(t).edges;
        for (std::size_t i = 0; i < edges.size();) {
            std::size_t j = i;
            while (j < edges.size() && edges[j].src == edges[i].src) ++j;
            max_out = std::max(max_out, j - i);
            i = j;
        }
    }
    if (alpha * static_cast<double>(max_out) >= 1.0) {
        throw std::domain_error(
            "temporal_katz: alpha * max slice out-degree = " +
            std::to_string(alpha * static_cast<double>(max_out)) +
            " >= 1, the resolvent series may diverge; reduce alpha");
    }
}

}  // namespace

double edge_persistence(const TemporalGraph& g) {
    double sum = 0;
    SliceRows prev = slice_rows(g, 0);
    for (TimeIndex t = 1; t < g.time_count(); ++t) {
        SliceRows cur = slice_rows(g, t);
        std::size_t i = 0, j = 0;
        while (i < prev.nodes.size() && j < cur.nodes.size()) {
            if (prev.nodes[i] < cur.nodes[j]) ++i;
            else if (cur.nodes[j] < prev.nodes[i]) ++j;
            else {
                const std::size_t common =
                    sorted_intersection_size(prev.targets[i], cur.targets[j]);
                if (common > 0) {
                    sum += static_cast<double>(common) /
                           std::sqrt(static_cast<double>(prev.targets[i].size()) *
                                     static_cast<double>(cur.targets[j].size()));
                }
                ++i;
                ++j;
            }
        }
        prev = std::move(cur);
    }
    return sum / static_cast<double>(g.edge_count());
}

double triangle_density(const TemporalGraph& g) {
    return static_cast<double>(count_triangles(g).all) /
           (static_cast<double>(g.node_count()) * static_cast<double>(g.time_count()));
}

double causal_triangle_density(const TemporalGraph& g) {
    return static_cast<double>(count_triangles(g).causal) /
           (static_cast<double>(g.node_count()) * static_cast<double>(g.time_count()));
}

double burstiness(const TemporalGraph& g, EventKind kind) {
    const std::uint32_t V = g.node_count();
    std::vector<std::vector<Timestamp>> events(V);
    for (TimeIndex t = 0; t < g.time_count(); ++t) {
        const Timestamp stamp = g.timestamp(t);
        auto touch = [&](NodeId v) {
            if (events[v].empty() || events[v].back() != stamp) events[v].push_back(stamp);
        };
        for (const SliceEdge& e : g.slice(t).edges) {
            if (kind != EventKind::Receive) touch(e.src);
            if (kind != EventKind::Send) touch(e.dst);
        }
    }
    // Receive events for undirected graphs coincide with active events
    // because both directions are stored; the loop above already handles
    // that uniformly.
    std::vector<double> gaps;
    for (const auto& ev : events) {
        for (std::size_t i = 1; i < ev.size(); ++i) {
            gaps.push_back(static_cast<double>(ev[i] - ev[i - 1]));
        }
    }
    if (gaps.empty()) {
        throw std::domain_error("burstiness: no node has two events of this kind");
    }
    double mean = 0;
    for (double x : gaps) mean += x;
    mean /= static_cast<double>(gaps.size());
    double var = 0;
    for (double x : gaps) var += (x - mean) * (x - mean);
    var /= static_cast<double>(gaps.size());
    const double sigma = std::sqrt(var);
    return (sigma - mean) / (sigma + mean);
}

std::vector<double> temporal_katz(const TemporalGraph& g, double alpha) {
    check_alpha(g, alpha);
    const std::uint32_t V = g.node_count();
    std::vector<double> y(V, 1.0);
    std::vector<double> term(V), next(V);
    // Right-to-left product: the slice at the latest time acts first.
    for (TimeIndex t = g.time_count(); t-- > 0;) {
        const auto& edges = g.slice(t).edges;
        term = y;
        for (int it = 0; it < 100000; ++it) {
            std::fill(next.begin(), next.end(), 0.0);
            for (const SliceEdge& e : edges) next[e.src] += term[e.dst];
            for (std::uint32_t v = 0; v < V; ++v) term[v] = alpha * next[v];
            double m = 0;
            for (std::uint32_t v = 0; v < V; ++v) {
                y[v] += term[v];
                m = std::max(m, std::abs(term[v]));
            }
            if (m <= 1e-16 * max_abs(y)) break;
        }
    }
    return y;
}

std::vector<double> communicability(const TemporalGraph& g, double beta) {
    const std::uint32_t V = g.node_count();
    std::vector<double> y(V, 1.0);
    std::vector<double> term(V), next(V);
    for (TimeIndex t = g.time_count(); t-- > 0;) {
        const auto& edges = g.slice(t).edges;
        term = y;
        for (int k = 1; k < 10000; ++k) {
            std::fill(next.begin(), next.end(), 0.0);
            for (const SliceEdge& e : edges) next[e.src] += term[e.dst];
            const double scale = beta / static_cast<double>(k);
            for (std::uint32_t v = 0; v < V; ++v) term[v] = scale * next[v];
            double m = 0;
            for (std::uint32_t v = 0; v < V; ++v) {
                y[v] += term[v];
                m = std::max(m, std::abs(term[v]));
            }
            if (m <= 1e-14 * max_abs(y)) break;
        }
    }
    return y;
}

double sum_absolute_error(std::span<const double> a, std::span<const double> b,
                          double floor_value) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("sum_absolute_error: size mismatch");
    }
    double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return std::max(sum, floor_value);
}

MeasureReport measure_all(const TemporalGraph& g, const CentralityParams& params) {
    MeasureReport rep;
    rep.params = params;
    rep.persistence = edge_persistence(g);
    const TriangleCounts tri = count_triangles(g);
    const double vt = static_cast<double>(g.node_count()) * static_cast<double>(g.time_count());
    rep.triangle_density = static_cast<double>(tri.all) / vt;
    rep.causal_triangle_density = static_cast<double>(tri.causal) / vt;
    auto burst = [&](EventKind k) -> std::optional<double> {
        try {
            return burstiness(g, k);
        } catch (const std::domain_error&) {
            return std::nullopt;
        }
    };
    rep.burstiness_active = burst(EventKind::Active);
    rep.burstiness_send = burst(EventKind::Send);
    rep.burstiness_receive = burst(EventKind::Receive);
    rep.katz = temporal_katz(g, params.alpha);
    rep.communicability = communicability(g, params.beta);
    return rep;
}

}  // namespace tnest
