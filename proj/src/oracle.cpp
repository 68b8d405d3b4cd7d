#include "tnest/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace tnest::oracle {

namespace {

using Key = std::pair<ColorId, std::vector<ColorId>>;

// One exact refinement round over an adjacency given as index lists;
// returns the new coloring (dense ids by first occurrence) and its
// class count.
std::pair<std::vector<ColorId>, std::size_t> refine_round(
    const std::vector<ColorId>& colors,
    const std::vector<std::vector<std::uint32_t>>& out) {
    std::map<Key, ColorId> dense;
    std::vector<ColorId> next(colors.size());
    for (std::size_t i = 0; i < colors.size(); ++i) {
        Key key{colors[i], {}};
        key.second.reserve(out[i].size());
        for (std::uint32_t j : out[i]) key.second.push_back(colors[j]);
        std::sort(key.second.begin(), key.second.end());
        next[i] = dense.try_emplace(std::move(key), static_cast<ColorId>(dense.size()))
                      .first->second;
    }
    return {std::move(next), dense.size()};
}

std::vector<ColorId> refine_rounds(const std::vector<std::vector<std::uint32_t>>& out,
                                   std::uint32_t rounds) {
    std::vector<ColorId> colors(out.size(), 0);
    std::size_t classes = out.empty() ? 0 : 1;
    for (std::uint32_t r = 0; r < rounds; ++r) {
        auto [next, count] = refine_round(colors, out);
        colors = std::move(next);
        if (count == classes) break;  // stable: later rounds change nothing
        classes = count;
    }
    return colors;
}

std::vector<std::vector<std::uint32_t>> successor_adjacency(const TemporalGraph& g) {
    const std::uint32_t V = g.node_count();
    const std::uint32_t T = g.time_count();
    std::vector<std::vector<std::uint32_t>> out(static_cast<std::size_t>(V) * T);
    for (TimeIndex t = 0; t < T; ++t) {
        for (NodeId v = 0; v < V; ++v) {
            auto& adj = out[static_cast<std::size_t>(t) * V + v];
            for (const TemporalNode& s : g.successors(v, t)) {
                adj.push_back(s.time * V + s.node);
            }
        }
    }
    return out;
}

void check_order(const TemporalGraph& g, std::size_t max_order, const char* what) {
    const std::size_t order = static_cast<std::size_t>(g.node_count()) * g.time_count();
    if (order > max_order) {
        throw std::length_error(std::string(what) + ": temporal node count exceeds guard");
    }
}

}  // namespace

std::vector<ColorId> canonical(std::vector<ColorId> colors) {
    std::map<ColorId, ColorId> relabel;
    for (ColorId& c : colors) {
        c = relabel.try_emplace(c, static_cast<ColorId>(relabel.size())).first->second;
    }
    return colors;
}

std::vector<ColorId> completion_refinement(const TemporalGraph& g, std::uint32_t rounds,
                                           std::size_t max_order) {
    check_order(g, max_order, "completion_refinement");
    const CausalCompletion cc = g.causal_completion(max_order);
    return canonical(refine_rounds(cc.out, rounds));
}

std::vector<ColorId> successor_refinement(const TemporalGraph& g, std::uint32_t rounds,
                                          std::size_t max_order) {
    check_order(g, max_order, "successor_refinement");
    return canonical(refine_rounds(successor_adjacency(g), rounds));
}

std::uint32_t stable_rounds(const TemporalGraph& g, std::size_t max_order) {
    check_order(g, max_order, "stable_rounds");
    const CausalCompletion cc = g.causal_completion(max_order);
    std::vector<ColorId> colors(cc.order(), 0);
    std::size_t classes = 1;
    for (std::uint32_t r = 1;; ++r) {
        auto [next, count] = refine_round(colors, cc.out);
        colors = std::move(next);
        if (count == classes) return r;
        classes = count;
    }
}

std::vector<ColorId> restrict_to_active(const TemporalGraph& g,
                                        const std::vector<ColorId>& full) {
    std::vector<ColorId> out;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (TimeIndex t : g.active_times(v)) {
            out.push_back(full[static_cast<std::size_t>(t) * g.node_count() + v]);
        }
    }
    return canonical(std::move(out));
}

bool same_refinement_colors(const TemporalGraph& a, const TemporalGraph& b,
                            std::uint32_t rounds, std::size_t max_order) {
    if (a.node_count() != b.node_count() || a.timestamps() != b.timestamps() ||
        a.directed() != b.directed()) {
        return false;
    }
    check_order(a, max_order, "same_refinement_colors");
    const CausalCompletion ca = a.causal_completion(max_order);
    const CausalCompletion cb = b.causal_completion(max_order);
    const std::size_t n = ca.order();
    // Disjoint union: shift b's ids by n so one refinement colors both.
    std::vector<std::vector<std::uint32_t>> out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = ca.out[i];
        out[n + i].reserve(cb.out[i].size());
        for (std::uint32_t j : cb.out[i]) out[n + i].push_back(static_cast<std::uint32_t>(n + j));
    }
    const std::vector<ColorId> colors = refine_rounds(out, rounds);
    for (std::size_t i = 0; i < n; ++i) {
        if (colors[i] != colors[n + i]) return false;
    }
    return true;
}

std::vector<std::uint64_t> state_key(const TemporalGraph& g) {
    std::vector<std::uint64_t> key;
    key.push_back(g.time_count());
    for (TimeIndex t = 0; t < g.time_count(); ++t) {
        key.push_back(g.timestamp(t));
        key.push_back(g.slice(t).edges.size());
        for (const SliceEdge& e : g.slice(t).edges) key.push_back(edge_key(e.src, e.dst));
    }
    return key;
}

namespace {

// All k-subsets of {0..n-1} \ {self}.
void target_sets(std::uint32_t n, std::uint32_t self, std::uint32_t k,
                 std::vector<NodeId>& current, std::uint32_t from,
                 std::vector<std::vector<NodeId>>& out) {
    if (current.size() == k) {
        out.push_back(current);
        return;
    }
    for (std::uint32_t v = from; v < n; ++v) {
        if (v == self) continue;
        current.push_back(v);
        target_sets(n, self, k, current, v + 1, out);
        current.pop_back();
    }
}

// All labeled simple graphs (as canonical contact lists) realizing the
// degree sequence, enumerated over the lexicographic pair list.
void degree_graphs(const std::vector<std::pair<NodeId, NodeId>>& pairs,
                   std::size_t pair_idx, std::vector<std::uint32_t>& residual,
                   std::uint32_t remaining_edges, std::vector<SliceEdge>& current,
                   std::vector<std::vector<SliceEdge>>& out,
                   std::uint64_t limit) {
    if (remaining_edges == 0) {
        if (std::all_of(residual.begin(), residual.end(),
                        [](std::uint32_t d) { return d == 0; })) {
            if (out.size() >= limit) {
                throw std::length_error("enumerate_class: candidate limit exceeded");
            }
            out.push_back(current);
        }
        return;
    }
    if (pair_idx >= pairs.size() || remaining_edges > pairs.size() - pair_idx) {
        return;  // not enough pairs left
    }
    const auto [u, v] = pairs[pair_idx];
    if (residual[u] > 0 && residual[v] > 0) {
        --residual[u];
        --residual[v];
        current.push_back({u, v});
        degree_graphs(pairs, pair_idx + 1, residual, remaining_edges - 1,
                      current, out, limit);
        current.pop_back();
        ++residual[u];
        ++residual[v];
    }
    degree_graphs(pairs, pair_idx + 1, residual, remaining_edges, current, out, limit);
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r = saturating_mul(r, n - i) / (i + 1);
    }
    return r;
}

}  // namespace

ClassEnumeration enumerate_class(const TemporalGraph& g, std::uint32_t depth,
                                 std::uint64_t candidate_limit) {
    // Depth >= 1 colors pin down per-slice degree structure, so the
    // degree-respecting universe below contains the whole class; depth 0
    // does not and is not supported.
    if (depth == 0) {
        throw std::invalid_argument("enumerate_class: depth must be >= 1");
    }
    const std::uint32_t V = g.node_count();
    const TimeIndex T = g.time_count();

    // Per-slice candidate edge sets respecting the slice degree structure.
    std::vector<std::vector<std::vector<SliceEdge>>> slice_candidates(T);
    std::uint64_t total = 1;
    for (TimeIndex t = 0; t < T; ++t) {
        if (g.directed()) {
            std::vector<std::uint32_t> outdeg(V, 0);
            for (const SliceEdge& e : g.slice(t).edges) ++outdeg[e.src];
            std::uint64_t slice_total = 1;
            for (NodeId v = 0; v < V; ++v) {
                if (outdeg[v] > 0) {
                    slice_total = saturating_mul(slice_total, binomial(V - 1, outdeg[v]));
                }
            }
            total = saturating_mul(total, slice_total);
            if (total > candidate_limit) {
                throw std::length_error("enumerate_class: candidate limit exceeded");
            }
            // Cross product of per-node target sets.
            std::vector<std::vector<SliceEdge>> acc{{}};
            for (NodeId v = 0; v < V; ++v) {
                if (outdeg[v] == 0) continue;
                std::vector<std::vector<NodeId>> sets;
                std::vector<NodeId> scratch;
                target_sets(V, v, outdeg[v], scratch, 0, sets);
                std::vector<std::vector<SliceEdge>> next;
                next.reserve(acc.size() * sets.size());
                for (const auto& prefix : acc) {
                    for (const auto& set : sets) {
                        auto extended = prefix;
                        for (NodeId w : set) extended.push_back({v, w});
                        next.push_back(std::move(extended));
                    }
                }
                acc = std::move(next);
            }
            slice_candidates[t] = std::move(acc);
        } else {
            std::vector<std::uint32_t> degrees(V, 0);
            std::uint32_t contacts = 0;
            for (const SliceEdge& e : g.slice(t).edges) {
                if (e.src < e.dst) {
                    ++degrees[e.src];
                    ++degrees[e.dst];
                    ++contacts;
                }
            }
            std::vector<std::pair<NodeId, NodeId>> pairs;
            for (NodeId u = 0; u < V; ++u) {
                for (NodeId v = u + 1; v < V; ++v) pairs.emplace_back(u, v);
            }
            std::vector<std::uint32_t> residual = degrees;
            std::vector<SliceEdge> current;
            degree_graphs(pairs, 0, residual, contacts, current,
                          slice_candidates[t], candidate_limit);
            total = saturating_mul(total, slice_candidates[t].size());
            if (total > candidate_limit) {
                throw std::length_error("enumerate_class: candidate limit exceeded");
            }
        }
    }

    // Walk the cross product of slice candidates and keep color-preserving
    // combinations.
    ClassEnumeration result;
    std::vector<std::size_t> pick(T, 0);
    for (;;) {
        std::vector<std::vector<SliceEdge>> slices(T);
        for (TimeIndex t = 0; t < T; ++t) {
            for (const SliceEdge& e : slice_candidates[t][pick[t]]) {
                slices[t].push_back(e);
                if (!g.directed()) slices[t].push_back({e.dst, e.src});
            }
        }
        TemporalGraph candidate =
            TemporalGraph::assemble(g, g.timestamps(), std::move(slices));
        if (same_refinement_colors(g, candidate, depth)) {
            result.keys.insert(state_key(candidate));
            result.graphs.push_back(std::move(candidate));
        }
        // Odometer increment over slice candidate indices.
        TimeIndex t = 0;
        for (; t < T; ++t) {
            if (++pick[t] < slice_candidates[t].size()) break;
            pick[t] = 0;
        }
        if (t == T) break;
    }
    return result;
}

ClassEnumeration move_closure(const TemporalGraph& g, std::uint32_t color_rounds,
                              std::uint64_t state_limit) {
    const std::uint32_t V = g.node_count();
    const TimeIndex T = g.time_count();
    // Completion refinement colors every temporal node, active or not:
    // exactly the completed coloring the chain's moves are defined over.
    const std::vector<ColorId> colors = completion_refinement(g, color_rounds);
    auto color_at = [&](NodeId v, TimeIndex t) {
        return colors[static_cast<std::size_t>(t) * V + v];
    };

    ClassEnumeration result;
    std::vector<TemporalGraph> queue{g};
    result.keys.insert(state_key(g));
    result.graphs.push_back(g);

    auto visit = [&](TemporalGraph next) {
        auto key = state_key(next);
        if (result.keys.count(key)) return;
        if (result.keys.size() >= state_limit) {
            throw std::length_error("move_closure: state limit exceeded");
        }
        result.keys.insert(std::move(key));
        result.graphs.push_back(next);
        queue.push_back(std::move(next));
    };

    auto slices_of = [&](const TemporalGraph& s) {
        std::vector<std::vector<SliceEdge>> slices(T);
        for (TimeIndex t = 0; t < T; ++t) slices[t] = s.slice(t).edges;
        return slices;
    };

    while (!queue.empty()) {
        const TemporalGraph state = std::move(queue.back());
        queue.pop_back();
        for (TimeIndex t = 0; t < T; ++t) {
            if (!g.directed()) {
                std::vector<SliceEdge> contacts;
                for (const SliceEdge& e : state.slice(t).edges) {
                    if (e.src < e.dst) contacts.push_back(e);
                }
                auto try_swap = [&](NodeId x, NodeId y, NodeId r, NodeId s,
                                    std::size_t i, std::size_t j) {
                    if (color_at(x, t) != color_at(r, t) ||
                        color_at(y, t) != color_at(s, t)) {
                        return;
                    }
                    if (x == r || x == s || y == r || y == s) return;
                    if (state.has_edge(std::min(x, s), std::max(x, s), t) ||
                        state.has_edge(std::min(r, y), std::max(r, y), t)) {
                        return;
                    }
                    auto slices = slices_of(state);
                    auto& edges = slices[t];
                    auto drop = [&](NodeId a, NodeId b) {
                        edges.erase(std::remove_if(edges.begin(), edges.end(),
                                                   [&](const SliceEdge& e) {
                                                       return (e.src == a && e.dst == b) ||
                                                              (e.src == b && e.dst == a);
                                                   }),
                                    edges.end());
                    };
                    drop(contacts[i].src, contacts[i].dst);
                    drop(contacts[j].src, contacts[j].dst);
                    edges.push_back({x, s});
                    edges.push_back({s, x});
                    edges.push_back({r, y});
                    edges.push_back({y, r});
                    visit(TemporalGraph::assemble(g, g.timestamps(), std::move(slices)));
                };
                for (std::size_t i = 0; i < contacts.size(); ++i) {
                    for (std::size_t j = i + 1; j < contacts.size(); ++j) {
                        const auto [x, y] = contacts[i];
                        const auto [r, s] = contacts[j];
                        try_swap(x, y, r, s, i, j);
                        try_swap(x, y, s, r, i, j);
                    }
                }
            } else {
                const auto& edges = state.slice(t).edges;
                for (std::size_t k = 0; k < edges.size(); ++k) {
                    const NodeId u = edges[k].src;
                    const NodeId v = edges[k].dst;
                    for (NodeId x = 0; x < V; ++x) {
                        if (x == u || color_at(x, t) != color_at(v, t)) continue;
                        if (state.has_edge(u, x, t)) continue;
                        auto slices = slices_of(state);
                        slices[t][k] = {u, x};
                        visit(TemporalGraph::assemble(g, g.timestamps(), std::move(slices)));
                    }
                }
            }
        }
    }
    return result;
}

WalkKatz walk_count_katz(const TemporalGraph& g, double alpha, std::uint32_t k_max,
                         std::size_t max_order) {
    check_order(g, max_order, "walk_count_katz");
    const CausalCompletion cc = g.causal_completion(max_order);
    const std::size_t n = cc.order();
    std::size_t max_out = 0;
    for (TimeIndex t = 0; t < g.time_count(); ++t) {
        std::map<NodeId, std::size_t> deg;
        for (const SliceEdge& e : g.slice(t).edges) {
            max_out = std::max(max_out, ++deg[e.src]);
        }
    }

    std::vector<double> walks(n, 1.0), next(n);
    std::vector<double> gamma(g.node_count(), 0.0);
    double factor = 1.0;  // alpha^k
    for (NodeId v = 0; v < g.node_count(); ++v) gamma[v] = 1.0;  // k = 0 term
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0;
            for (std::uint32_t j : cc.out[i]) sum += walks[j];
            next[i] = sum;
        }
        walks.swap(next);
        factor *= alpha;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            gamma[v] += factor * walks[cc.id(v, 0)];
        }
    }

    const long double rate = alpha * static_cast<long double>(max_out);
    WalkKatz out;
    out.gamma = std::move(gamma);
    if (rate >= 1.0L) {
        out.tail_bound = std::numeric_limits<double>::infinity();
        return out;
    }
    // tail <= sum_{k > k_max} C(k+T-1, T-1) rate^k. Terms shrink by
    // q_k = rate*(k+T)/(k+1), decreasing in k, so once q_k < 1 the rest
    // is dominated by the geometric series with ratio q_k.
    const long double T = static_cast<long double>(g.time_count());
    long double k = static_cast<long double>(k_max) + 1.0L;
    long double term = std::exp(std::lgamma(k + T) - std::lgamma(k + 1.0L) -
                                std::lgamma(T)) *
                       std::pow(rate, k);
    long double tail = 0.0L;
    while (true) {
        const long double q = rate * (k + T) / (k + 1.0L);
        if (q < 1.0L) {
            tail += term / (1.0L - q);
            break;
        }
        tail += term;
        term *= q;
        k += 1.0L;
    }
    out.tail_bound = static_cast<double>(tail);
    return out;
}

std::vector<double> block_katz(const TemporalGraph& g, double alpha,
                               std::size_t max_order) {
    check_order(g, max_order, "block_katz");
    const CausalCompletion cc = g.causal_completion(max_order);
    const std::size_t n = cc.order();
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t j : cc.out[i]) m(i, j) -= alpha;
    }
    const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd x = m.partialPivLu().solve(rhs);
    if (!((m * x - rhs).lpNorm<Eigen::Infinity>() < 1e-8)) {
        throw std::domain_error("block_katz: resolvent solve failed, alpha too large");
    }
    return {x.data(), x.data() + g.node_count()};
}

std::vector<double> dense_communicability(const TemporalGraph& g, double beta,
                                          std::size_t max_node_count) {
    if (g.node_count() > max_node_count) {
        throw std::length_error("dense_communicability: node count exceeds guard");
    }
    const std::uint32_t V = g.node_count();
    Eigen::VectorXd y = Eigen::VectorXd::Ones(V);
    for (TimeIndex t = g.time_count(); t-- > 0;) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(V, V);
        for (const SliceEdge& e : g.slice(t).edges) a(e.src, e.dst) = beta;
        y = a.exp() * y;
    }
    return {y.data(), y.data() + V};
}

double naive_persistence(const TemporalGraph& g, std::size_t max_node_count) {
    if (g.node_count() > max_node_count) {
        throw std::length_error("naive_persistence: node count exceeds guard");
    }
    const std::uint32_t V = g.node_count();
    auto dense = [&](TimeIndex t) {
        std::vector<std::vector<int>> a(V, std::vector<int>(V, 0));
        for (const SliceEdge& e : g.slice(t).edges) a[e.src][e.dst] = 1;
        return a;
    };
    double sum = 0;
    for (TimeIndex t = 0; t + 1 < g.time_count(); ++t) {
        const auto a1 = dense(t);
        const auto a2 = dense(t + 1);
        for (std::uint32_t i = 0; i < V; ++i) {
            int dot = 0, d1 = 0, d2 = 0;
            for (std::uint32_t j = 0; j < V; ++j) {
                dot += a1[i][j] * a2[i][j];
                d1 += a1[i][j];
                d2 += a2[i][j];
            }
            if (d1 > 0 && d2 > 0) {
                sum += dot / std::sqrt(static_cast<double>(d1) * d2);
            }
        }
    }
    return sum / static_cast<double>(g.edge_count());
}

NaiveTriangles naive_triangles(const TemporalGraph& g, std::size_t max_node_count) {
    if (g.node_count() > max_node_count) {
        throw std::length_error("naive_triangles: node count exceeds guard");
    }
    const std::uint32_t V = g.node_count();
    const TimeIndex T = g.time_count();
    NaiveTriangles counts;
    auto strictly_rotating = [](TimeIndex t1, TimeIndex t2, TimeIndex t3) {
        return (t1 < t2 && t2 < t3) || (t2 < t3 && t3 < t1) || (t3 < t1 && t1 < t2);
    };
    if (!g.directed()) {
        for (NodeId x = 0; x < V; ++x) {
            for (NodeId y = x + 1; y < V; ++y) {
                for (NodeId z = y + 1; z < V; ++z) {
                    for (TimeIndex t1 = 0; t1 < T; ++t1) {
                        if (!g.has_edge(x, y, t1)) continue;
                        for (TimeIndex t2 = 0; t2 < T; ++t2) {
                            if (!g.has_edge(y, z, t2)) continue;
                            for (TimeIndex t3 = 0; t3 < T; ++t3) {
                                if (!g.has_edge(z, x, t3)) continue;
                                ++counts.all;
                                // Causal if the times strictly increase
                                // along some rotation of either
                                // orientation of the triangle.
                                if (strictly_rotating(t1, t2, t3) ||
                                    strictly_rotating(t3, t2, t1)) {
                                    ++counts.causal;
                                }
                            }
                        }
                    }
                }
            }
        }
    } else {
        // Each directed 3-cycle counted once, rooted at its smallest node.
        for (NodeId x = 0; x < V; ++x) {
            for (NodeId y = 0; y < V; ++y) {
                if (y == x || y < x) continue;
                for (NodeId z = 0; z < V; ++z) {
                    if (z == x || z == y || z < x) continue;
                    for (TimeIndex t1 = 0; t1 < T; ++t1) {
                        if (!g.has_edge(x, y, t1)) continue;
                        for (TimeIndex t2 = 0; t2 < T; ++t2) {
                            if (!g.has_edge(y, z, t2)) continue;
                            for (TimeIndex t3 = 0; t3 < T; ++t3) {
                                if (!g.has_edge(z, x, t3)) continue;
                                ++counts.all;
                                if (strictly_rotating(t1, t2, t3)) ++counts.causal;
                            }
                        }
                    }
                }
            }
        }
    }
    return counts;
}

double naive_burstiness(const TemporalGraph& g, int kind) {
    const std::uint32_t V = g.node_count();
    std::vector<double> gaps;
    for (NodeId v = 0; v < V; ++v) {
        std::vector<Timestamp> events;
        for (TimeIndex t = 0; t < g.time_count(); ++t) {
            bool hit = false;
            for (const SliceEdge& e : g.slice(t).edges) {
                if (kind == 0 && (e.src == v || e.dst == v)) hit = true;
                if (kind == 1 && e.src == v) hit = true;
                if (kind == 2 && e.dst == v) hit = true;
            }
            if (hit) events.push_back(g.timestamp(t));
        }
        for (std::size_t i = 1; i < events.size(); ++i) {
            gaps.push_back(static_cast<double>(events[i] - events[i - 1]));
        }
    }
    if (gaps.empty()) throw std::domain_error("naive_burstiness: empty gap pool");
    double mean = 0;
    for (double x : gaps) mean += x;
    mean /= static_cast<double>(gaps.size());
    double var = 0;
    for (double x : gaps) var += (x - mean) * (x - mean);
    var /= static_cast<double>(gaps.size());
    return (std::sqrt(var) - mean) / (std::sqrt(var) + mean);
}

}  // namespace tnest::oracle
