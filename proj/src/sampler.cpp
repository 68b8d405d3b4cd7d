#include "tnest/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tnest {

namespace {

std::uint64_t contact_key(NodeId a, NodeId b) {
    return a < b ? edge_key(a, b) : edge_key(b, a);
}

// Undirected contacts of a slice, one record per contact.
std::vector<SliceEdge> slice_contacts(const TemporalGraph& g, TimeIndex t) {
    std::vector<SliceEdge> contacts;
    contacts.reserve(g.slice(t).edges.size() / 2);
    for (const SliceEdge& e : g.slice(t).edges) {
        if (e.src < e.dst) contacts.push_back(e);
    }
    return contacts;
}

std::uint64_t slice_budget(const SamplerConfig& cfg, std::size_t contacts) {
    if (cfg.rewirings_per_slice) return *cfg.rewirings_per_slice;
    return static_cast<std::uint64_t>(
        std::ceil(cfg.rewirings_per_contact * static_cast<double>(contacts)));
}

std::uint64_t slice_stream(std::uint64_t master, TimeIndex t) {
    return Rng::derive_stream(master, stream_tag::slice | t);
}

// Rewiring colors for neighborhood depth d: completed colors after d-1
// rounds. Returns nothing for d = 0 (uniform colors need no refinement).
std::optional<ColorAssignment> rewiring_colors(const TemporalGraph& g,
                                               const SamplerConfig& cfg) {
    if (cfg.method == SampleMethod::DegreeSnapshotShuffle) return std::nullopt;
    if (cfg.depth && *cfg.depth == 0) return std::nullopt;
    RefineOptions opts;
    if (cfg.depth) opts.max_depth = *cfg.depth - 1;
    opts.seed = Rng::derive_stream(cfg.master_seed, stream_tag::refinement);
    return refine_active(g, opts);
}

}  // namespace

std::string method_name(SampleMethod m) {
    switch (m) {
        case SampleMethod::TNest: return "tnest";
        case SampleMethod::RandomEdge: return "re";
        case SampleMethod::DegreeSnapshotShuffle: return "dss";
        case SampleMethod::RandomTimes: return "rt";
        case SampleMethod::RandomContacts: return "rc";
    }
    return "?";
}

std::optional<SampleMethod> method_from_name(const std::string& name) {
    if (name == "tnest") return SampleMethod::TNest;
    if (name == "re") return SampleMethod::RandomEdge;
    if (name == "dss") return SampleMethod::DegreeSnapshotShuffle;
    if (name == "rt") return SampleMethod::RandomTimes;
    if (name == "rc") return SampleMethod::RandomContacts;
    return std::nullopt;
}

std::uint64_t undir_rewire_slice(std::vector<SliceEdge>& contacts,
                                 std::span<const ColorId> node_colors,
                                 std::uint64_t attempts, Rng& rng) {
    if (contacts.empty()) return 0;
    // Group contacts by unordered color pair, orienting each contact so
    // the smaller color comes first. A swap never leaves its subgraph.
    std::map<std::pair<ColorId, ColorId>, std::vector<SliceEdge>> groups;
    for (const SliceEdge& c : contacts) {
        ColorId cu = node_colors[c.src];
        ColorId cv = node_colors[c.dst];
        SliceEdge oriented = c;
        if (cu > cv) {
            std::swap(oriented.src, oriented.dst);
            std::swap(cu, cv);
        }
        groups[{cu, cv}].push_back(oriented);
    }
    std::vector<std::pair<std::pair<ColorId, ColorId>, std::vector<SliceEdge>>> subs;
    subs.reserve(groups.size());
    for (auto& [key, edges] : groups) subs.emplace_back(key, std::move(edges));

    std::unordered_set<std::uint64_t> members;
    members.reserve(contacts.size() * 2);
    for (const SliceEdge& c : contacts) members.insert(contact_key(c.src, c.dst));

    std::uint64_t accepted = 0;
    for (std::uint64_t a = 0; a < attempts; ++a) {
        auto& [key, edges] = subs[rng.below(subs.size())];
        const std::uint64_t m = edges.size();
        const std::uint64_t e1 = rng.below(m);
        const std::uint64_t e2 = rng.below(m);
        const NodeId x = edges[e1].src, y = edges[e1].dst;
        NodeId r = edges[e2].src, s = edges[e2].dst;
        // Same-color subgraphs admit both endpoint pairings; pick one at
        // random so the proposal stays symmetric.
        if (key.first == key.second && rng.coin()) std::swap(r, s);
        if (x == r || x == s || y == r || y == s) continue;
        const std::uint64_t k1 = contact_key(x, s);
        const std::uint64_t k2 = contact_key(r, y);
        if (members.count(k1) || members.count(k2)) continue;
        members.erase(contact_key(x, y));
        members.erase(contact_key(edges[e2].src, edges[e2].dst));
        members.insert(k1);
        members.insert(k2);
        edges[e1] = {x, s};
        edges[e2] = {r, y};
        ++accepted;
    }

    contacts.clear();
    for (const auto& [key, edges] : subs) {
        for (const SliceEdge& c : edges) {
            contacts.push_back(c.src < c.dst ? c : SliceEdge{c.dst, c.src});
        }
    }
    return accepted;
}

std::uint64_t dir_rewire_slice(std::vector<SliceEdge>& edges,
                               std::span<const ColorId> node_colors,
                               const std::vector<std::vector<NodeId>>& classes,
                               std::uint64_t attempts, Rng& rng) {
    if (edges.empty()) return 0;
    std::unordered_set<std::uint64_t> members;
    members.reserve(edges.size() * 2);
    for (const SliceEdge& e : edges) members.insert(edge_key(e.src, e.dst));

    std::uint64_t accepted = 0;
    for (std::uint64_t a = 0; a < attempts; ++a) {
        const std::uint64_t k = rng.below(edges.size());
        const NodeId u = edges[k].src;
        const NodeId v = edges[k].dst;
        const auto& cls = classes[node_colors[v]];
        const NodeId x = cls[rng.below(cls.size())];
        if (x == u) continue;
        const std::uint64_t key = edge_key(u, x);
        if (members.count(key)) continue;
        members.erase(edge_key(u, v));
        members.insert(key);
        edges[k] = {u, x};
        ++accepted;
    }
    return accepted;
}

SampleResult tnest_sample(const TemporalGraph& g, const SamplerConfig& cfg) {
    const TimeIndex T = g.time_count();
    const std::optional<ColorAssignment> colors = rewiring_colors(g, cfg);

    RewireStats stats;
    stats.attempted_per_slice.resize(T);
    stats.accepted_per_slice.resize(T);
    std::vector<std::vector<SliceEdge>> out_slices(T);

    if (!g.directed()) {
        std::vector<ColorId> scratch(g.node_count(), 0);
        for (TimeIndex t = 0; t < T; ++t) {
            std::vector<SliceEdge> contacts = slice_contacts(g, t);
            if (colors) {
                for (const SliceEdge& c : contacts) {
                    scratch[c.src] = colors->color(c.src, t);
                    scratch[c.dst] = colors->color(c.dst, t);
                }
            }
            const std::uint64_t r = slice_budget(cfg, contacts.size());
            Rng rng(slice_stream(cfg.master_seed, t));
            const std::uint64_t acc = undir_rewire_slice(contacts, scratch, r, rng);
            stats.attempted_per_slice[t] = r;
            stats.accepted_per_slice[t] = acc;
            auto& edges = out_slices[t];
            edges.reserve(contacts.size() * 2);
            for (const SliceEdge& c : contacts) {
                edges.push_back(c);
                edges.push_back({c.dst, c.src});
            }
        }
    } else {
        // The slice sweep carries the completed coloring of all nodes;
        // tilts never change any node's out-edges' colors, so the classes
        // stay valid throughout a slice's chain.
        std::optional<SliceColorSweep> sweep;
        std::vector<ColorId> uniform_colors;
        std::vector<std::vector<NodeId>> uniform_classes;
        if (colors) {
            sweep.emplace(g, *colors);
        } else {
            uniform_colors.assign(g.node_count(), 0);
            uniform_classes.resize(1);
            uniform_classes[0].resize(g.node_count());
            for (NodeId v = 0; v < g.node_count(); ++v) uniform_classes[0][v] = v;
        }
        for (TimeIndex t = 0; t < T; ++t) {
            std::vector<SliceEdge> edges = g.slice(t).edges;
            const std::uint64_t r = slice_budget(cfg, edges.size());
            Rng rng(slice_stream(cfg.master_seed, t));
            const std::uint64_t acc =
                sweep ? dir_rewire_slice(edges, sweep->node_colors(), sweep->classes(), r, rng)
                      : dir_rewire_slice(edges, uniform_colors, uniform_classes, r, rng);
            stats.attempted_per_slice[t] = r;
            stats.accepted_per_slice[t] = acc;
            out_slices[t] = std::move(edges);
            if (sweep) sweep->advance();
        }
    }

    for (TimeIndex t = 0; t < T; ++t) {
        stats.attempted += stats.attempted_per_slice[t];
        stats.accepted += stats.accepted_per_slice[t];
    }
    return {TemporalGraph::assemble(g, g.timestamps(), std::move(out_slices)), std::move(stats)};
}

SampleResult dss_sample(const TemporalGraph& g, const SamplerConfig& cfg) {
    SamplerConfig dss = cfg;
    dss.method = SampleMethod::TNest;
    dss.depth = 0;
    return tnest_sample(g, dss);
}

namespace {

struct TimedContact {
    NodeId u;
    NodeId v;
    TimeIndex t;
};

SampleResult rebuild_from_records(const TemporalGraph& g,
                                  const std::vector<TimedContact>& records,
                                  RewireStats stats) {
    std::vector<std::vector<SliceEdge>> slices(g.time_count());
    for (const TimedContact& r : records) {
        slices[r.t].push_back({r.u, r.v});
        if (!g.directed()) slices[r.t].push_back({r.v, r.u});
    }
    return {TemporalGraph::assemble(g, g.timestamps(), std::move(slices)), std::move(stats)};
}

}  // namespace

SampleResult re_sample(const TemporalGraph& g, std::uint64_t attempts, std::uint64_t seed) {
    Rng rng(Rng::derive_stream(seed, stream_tag::baseline));
    const TimeIndex T = g.time_count();

    RewireStats stats;
    stats.attempted = attempts;

    std::vector<TimedContact> records;
    std::vector<std::unordered_set<std::uint64_t>> members(T);

    if (!g.directed()) {
        for (TimeIndex t = 0; t < T; ++t) {
            for (const SliceEdge& e : g.slice(t).edges) {
                if (e.src < e.dst) {
                    records.push_back({e.src, e.dst, t});
                    members[t].insert(contact_key(e.src, e.dst));
                }
            }
        }
        for (std::uint64_t a = 0; a < attempts; ++a) {
            const std::uint64_t i = rng.below(records.size());
            const std::uint64_t j = rng.below(records.size());
            if (i == j) continue;
            const auto [pa, pb, ta] = records[i];
            auto [pc, pd, tb] = records[j];
            // Cross-match the two contacts; the coin picks which endpoint
            // of the second contact joins the first contact's first node.
            if (rng.coin()) std::swap(pc, pd);
            if (pa == pc || pb == pd) continue;  // would form a self-loop
            const std::uint64_t k1 = contact_key(pa, pc);
            const std::uint64_t k2 = contact_key(pb, pd);
            if (k1 == k2 && ta == tb) continue;
            if (members[ta].count(k1) || members[tb].count(k2)) continue;
            members[ta].erase(contact_key(pa, pb));
            members[tb].erase(contact_key(records[j].u, records[j].v));
            members[ta].insert(k1);
            members[tb].insert(k2);
            records[i] = {std::min(pa, pc), std::max(pa, pc), ta};
            records[j] = {std::min(pb, pd), std::max(pb, pd), tb};
            ++stats.accepted;
        }
    } else {
        for (TimeIndex t = 0; t < T; ++t) {
            for (const SliceEdge& e : g.slice(t).edges) {
                records.push_back({e.src, e.dst, t});
                members[t].insert(edge_key(e.src, e.dst));
            }
        }
        const std::uint32_t V = g.node_count();
        for (std::uint64_t a = 0; a < attempts; ++a) {
            const std::uint64_t k = rng.below(records.size());
            const auto [u, v, t] = records[k];
            const TimeIndex tp = static_cast<TimeIndex>(rng.below(T));
            const NodeId c = static_cast<NodeId>(rng.below(V));
            if (c == u) continue;
            const std::uint64_t key = edge_key(u, c);
            if (members[tp].count(key)) continue;
            members[t].erase(edge_key(u, v));
            members[tp].insert(key);
            records[k] = {u, c, tp};
            ++stats.accepted;
        }
    }
    return rebuild_from_records(g, records, std::move(stats));
}

SampleResult rt_sample(const TemporalGraph& g, std::uint64_t seed) {
    Rng rng(Rng::derive_stream(seed, stream_tag::baseline));
    const TimeIndex T = g.time_count();

    std::vector<TimedContact> records;
    for (TimeIndex t = 0; t < T; ++t) {
        for (const SliceEdge& e : g.slice(t).edges) {
            if (g.directed() || e.src < e.dst) records.push_back({e.src, e.dst, t});
        }
    }
    const std::size_t n = records.size();

    // A pair with more contacts than there are times cannot receive
    // distinct timestamps at all.
    {
        std::unordered_map<std::uint64_t, std::uint32_t> mult;
        for (const TimedContact& r : records) ++mult[edge_key(r.u, r.v)];
        for (const auto& [key, m] : mult) {
            if (m > T) {
                throw std::runtime_error(
                    "time shuffle infeasible: a contact pair appears " + std::to_string(m) +
                    " times but there are only " + std::to_string(T) + " timestamps");
            }
        }
    }

    std::vector<TimeIndex> times(n);
    for (std::size_t i = 0; i < n; ++i) times[i] = records[i].t;
    rng.shuffle(times);

    // Resolve pair/time collisions by re-rolling each colliding record's
    // position against a random partner; bounded passes keep this finite.
    const std::uint32_t max_passes = 400;
    RewireStats stats;
    for (std::uint32_t pass = 0;; ++pass) {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(n * 2);
        std::vector<std::size_t> colliding;
        for (std::size_t i = 0; i < n; ++i) {
            // Key mixes pair and time; pair keys use node ids < 2^32 so
            // hashing the pair key again leaves room for the time.
            const std::uint64_t k =
                edge_key(records[i].u, records[i].v) * 0x9e3779b97f4a7c15ULL + times[i];
            if (!seen.insert(k).second) colliding.push_back(i);
        }
        if (colliding.empty()) break;
        if (pass >= max_passes) {
            throw std::runtime_error(
                "time shuffle failed to resolve collisions after " +
                std::to_string(max_passes) + " passes (" +
                std::to_string(colliding.size()) + " colliding contacts)");
        }
        for (std::size_t i : colliding) {
            std::swap(times[i], times[rng.below(n)]);
            ++stats.attempted;
        }
    }

    for (std::size_t i = 0; i < n; ++i) records[i].t = times[i];
    stats.accepted = n;
    return rebuild_from_records(g, records, std::move(stats));
}

SampleResult rc_sample(const TemporalGraph& g, std::uint64_t seed) {
    // Support: distinct contacts of the aggregated graph, in sorted order.
    std::vector<SliceEdge> support;
    for (const auto& e : g.aggregated().edges) {
        if (g.directed() || e.src < e.dst) support.push_back({e.src, e.dst});
    }

    const TimeIndex T = g.time_count();
    RewireStats stats;
    std::vector<TimedContact> records;
    for (TimeIndex t = 0; t < T; ++t) {
        Rng rng(Rng::derive_stream(seed, stream_tag::baseline | t));
        std::unordered_set<std::uint64_t> chosen;
        std::size_t wanted = 0;
        for (const SliceEdge& e : g.slice(t).edges) {
            if (g.directed() || e.src < e.dst) ++wanted;
        }
        for (std::size_t i = 0; i < wanted; ++i) {
            bool placed = false;
            for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
                const SliceEdge& p = support[rng.below(support.size())];
                ++stats.attempted;
                if (chosen.insert(edge_key(p.src, p.dst)).second) {
                    records.push_back({p.src, p.dst, t});
                    placed = true;
                }
            }
            if (!placed) {
                // Rejection stalled; draw uniformly from the unused rest.
                std::vector<SliceEdge> unused;
                for (const SliceEdge& p : support) {
                    if (!chosen.count(edge_key(p.src, p.dst))) unused.push_back(p);
                }
                const SliceEdge& p = unused[rng.below(unused.size())];
                chosen.insert(edge_key(p.src, p.dst));
                records.push_back({p.src, p.dst, t});
            }
        }
        stats.accepted += wanted;
    }
    return rebuild_from_records(g, records, std::move(stats));
}

SampleResult sample(const TemporalGraph& g, const SamplerConfig& cfg) {
    switch (cfg.method) {
        case SampleMethod::TNest:
            return tnest_sample(g, cfg);
        case SampleMethod::DegreeSnapshotShuffle:
            return dss_sample(g, cfg);
        case SampleMethod::RandomEdge: {
            std::uint64_t attempts = 0;
            if (cfg.rewirings_per_slice) {
                attempts = *cfg.rewirings_per_slice * g.time_count();
            } else {
                const std::size_t contacts =
                    g.directed() ? g.edge_count() : g.edge_count() / 2;
                attempts = static_cast<std::uint64_t>(
                    std::ceil(cfg.rewirings_per_contact * static_cast<double>(contacts)));
            }
            return re_sample(g, attempts, cfg.master_seed);
        }
        case SampleMethod::RandomTimes:
            return rt_sample(g, cfg.master_seed);
        case SampleMethod::RandomContacts:
            return rc_sample(g, cfg.master_seed);
    }
    throw std::logic_error("unknown sampling method");
}

std::uint64_t count_rewirings(const TemporalGraph& g,
                              std::optional<std::uint32_t> depth,
                              std::uint64_t seed,
                              std::uint64_t work_limit) {
    // Work estimate: both enumerations are bounded by sum of squared
    // slice sizes (pair enumeration / per-edge out-neighbor scans).
    std::uint64_t work = 0;
    for (TimeIndex t = 0; t < g.time_count(); ++t) {
        const std::uint64_t m = g.slice(t).edges.size();
        work += m * m;
    }
    if (work > work_limit) {
        throw std::length_error("count_rewirings: slice pair enumeration exceeds work limit");
    }

    RefineOptions opts;
    opts.max_depth = depth;
    opts.seed = seed;
    const ColorAssignment colors = refine_active(g, opts);

    std::uint64_t count = 0;
    if (!g.directed()) {
        std::vector<ColorId> scratch(g.node_count(), 0);
        for (TimeIndex t = 0; t < g.time_count(); ++t) {
            std::vector<SliceEdge> contacts = slice_contacts(g, t);
            for (const SliceEdge& c : contacts) {
                scratch[c.src] = colors.color(c.src, t);
                scratch[c.dst] = colors.color(c.dst, t);
            }
            const auto& slice = g.slice(t);
            auto valid = [&](NodeId x, NodeId y, NodeId r, NodeId s) {
                // Swap {x,y},{r,s} -> {x,s},{r,y} with c(x)=c(r), c(y)=c(s).
                if (scratch[x] != scratch[r] || scratch[y] != scratch[s]) return false;
                if (x == r || x == s || y == r || y == s) return false;
                return !slice.has(std::min(x, s), std::max(x, s)) &&
                       !slice.has(std::min(r, y), std::max(r, y));
            };
            for (std::size_t i = 0; i < contacts.size(); ++i) {
                for (std::size_t j = i + 1; j < contacts.size(); ++j) {
                    const auto [x, y] = contacts[i];
                    const auto [r, s] = contacts[j];
                    if (valid(x, y, r, s)) ++count;
                    if (valid(x, y, s, r)) ++count;
                }
            }
        }
    } else {
        SliceColorSweep sweep(g, colors);
        for (TimeIndex t = 0; t < g.time_count(); ++t) {
            const auto node_colors = sweep.node_colors();
            const auto& classes = sweep.classes();
            for (const SliceEdge& e : g.slice(t).edges) {
                const ColorId cv = node_colors[e.dst];
                std::uint64_t valid = classes[cv].size();
                if (node_colors[e.src] == cv) --valid;
                for (const SliceEdge& o : g.out_edges(e.src, t)) {
                    if (node_colors[o.dst] == cv) --valid;
                }
                count += valid;
            }
            sweep.advance();
        }
    }
    return count;
}

}  // namespace tnest
