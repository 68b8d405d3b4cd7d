#include "tnest/temporal_graph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

namespace tnest {

namespace {

std::string node_name(std::uint32_t i) {
    return "n" + std::to_string(i);
}

void sort_slice(TemporalGraph::Slice& s) {
    std::sort(s.edges.begin(), s.edges.end());
}

}  // namespace

std::uint32_t AggregatedGraph::multiplicity(NodeId u, NodeId v) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v),
                               [](const Entry& e, const std::pair<NodeId, NodeId>& k) {
                                   return std::tie(e.src, e.dst) < std::tie(k.first, k.second);
                               });
    if (it != edges.end() && it->src == u && it->dst == v) return it->multiplicity;
    return 0;
}

TemporalGraph TemporalGraph::from_contacts(std::uint32_t node_count,
                                           std::vector<Contact> contacts,
                                           bool directed,
                                           std::vector<std::string> labels,
                                           std::uint64_t* duplicates_out) {
    if (contacts.empty()) throw std::invalid_argument("temporal graph: no edges");
    if (!labels.empty() && labels.size() != node_count) {
        throw std::invalid_argument("temporal graph: label count does not match node count");
    }
    for (const Contact& c : contacts) {
        if (c.u == c.v) throw std::invalid_argument("temporal graph: self-loop");
        if (c.u >= node_count || c.v >= node_count) {
            throw std::invalid_argument("temporal graph: node id out of range");
        }
    }

    TemporalGraph g;
    g.directed_ = directed;
    g.node_count_ = node_count;
    if (labels.empty()) {
        g.labels_.reserve(node_count);
        for (std::uint32_t i = 0; i < node_count; ++i) g.labels_.push_back(node_name(i));
    } else {
        g.labels_ = std::move(labels);
    }

    std::vector<Timestamp> stamps;
    stamps.reserve(contacts.size());
    for (const Contact& c : contacts) stamps.push_back(c.t);
    std::sort(stamps.begin(), stamps.end());
    stamps.erase(std::unique(stamps.begin(), stamps.end()), stamps.end());
    g.timestamps_ = std::move(stamps);

    g.slices_.resize(g.timestamps_.size());
    std::uint64_t duplicates = 0;
    for (const Contact& c : contacts) {
        const auto it = std::lower_bound(g.timestamps_.begin(), g.timestamps_.end(), c.t);
        const TimeIndex t = static_cast<TimeIndex>(it - g.timestamps_.begin());
        Slice& s = g.slices_[t];
        const bool fresh = s.members.insert(edge_key(c.u, c.v)).second;
        if (!fresh) {
            ++duplicates;
            continue;
        }
        s.edges.push_back({c.u, c.v});
        if (!directed) {
            if (s.members.insert(edge_key(c.v, c.u)).second) {
                s.edges.push_back({c.v, c.u});
            }
        }
    }
    if (duplicates_out) *duplicates_out = duplicates;

    g.edge_count_ = 0;
    for (Slice& s : g.slices_) {
        sort_slice(s);
        g.edge_count_ += s.edges.size();
    }
    g.build_incidence();
    return g;
}

TemporalGraph TemporalGraph::assemble(const TemporalGraph& like,
                                      std::vector<Timestamp> timestamps,
                                      std::vector<std::vector<SliceEdge>> slices) {
    if (timestamps.size() != slices.size()) {
        throw std::invalid_argument("assemble: timestamp/slice count mismatch");
    }
    TemporalGraph g;
    g.directed_ = like.directed_;
    g.node_count_ = like.node_count_;
    g.labels_ = like.labels_;
    g.edge_count_ = 0;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        if (slices[i].empty()) continue;
        Slice s;
        s.edges = std::move(slices[i]);
        sort_slice(s);
        s.members.reserve(s.edges.size() * 2);
        for (const SliceEdge& e : s.edges) {
            if (e.src == e.dst) throw std::invalid_argument("assemble: self-loop");
            if (!s.members.insert(edge_key(e.src, e.dst)).second) {
                throw std::invalid_argument("assemble: duplicate edge in slice");
            }
        }
        g.edge_count_ += s.edges.size();
        g.timestamps_.push_back(timestamps[i]);
        g.slices_.push_back(std::move(s));
    }
    if (g.slices_.empty()) throw std::invalid_argument("assemble: no edges");
    if (!std::is_sorted(g.timestamps_.begin(), g.timestamps_.end()) ||
        std::adjacent_find(g.timestamps_.begin(), g.timestamps_.end()) != g.timestamps_.end()) {
        throw std::invalid_argument("assemble: timestamps not strictly increasing");
    }
    g.build_incidence();
    return g;
}

void TemporalGraph::build_incidence() {
    const std::uint32_t V = node_count_;
    std::vector<std::size_t> active_deg(V, 0);
    std::vector<std::size_t> sending_deg(V, 0);

    // Two passes: count per-node slice incidences, then fill CSR arrays.
    std::vector<TimeIndex> last_active(V, UINT32_MAX);
    std::vector<TimeIndex> last_sending(V, UINT32_MAX);
    for (TimeIndex t = 0; t < slices_.size(); ++t) {
        for (const SliceEdge& e : slices_[t].edges) {
            if (last_active[e.src] != t) { last_active[e.src] = t; ++active_deg[e.src]; }
            if (last_active[e.dst] != t) { last_active[e.dst] = t; ++active_deg[e.dst]; }
            if (last_sending[e.src] != t) { last_sending[e.src] = t; ++sending_deg[e.src]; }
        }
    }
    active_offsets_.assign(V + 1, 0);
    sending_offsets_.assign(V + 1, 0);
    for (std::uint32_t v = 0; v < V; ++v) {
        active_offsets_[v + 1] = active_offsets_[v] + active_deg[v];
        sending_offsets_[v + 1] = sending_offsets_[v] + sending_deg[v];
    }
    active_times_.resize(active_offsets_[V]);
    sending_times_.resize(sending_offsets_[V]);
    std::vector<std::size_t> apos(active_offsets_.begin(), active_offsets_.end() - 1);
    std::vector<std::size_t> spos(sending_offsets_.begin(), sending_offsets_.end() - 1);
    std::fill(last_active.begin(), last_active.end(), UINT32_MAX);
    std::fill(last_sending.begin(), last_sending.end(), UINT32_MAX);
    for (TimeIndex t = 0; t < slices_.size(); ++t) {
        for (const SliceEdge& e : slices_[t].edges) {
            if (last_active[e.src] != t) { last_active[e.src] = t; active_times_[apos[e.src]++] = t; }
            if (last_active[e.dst] != t) { last_active[e.dst] = t; active_times_[apos[e.dst]++] = t; }
            if (last_sending[e.src] != t) { last_sending[e.src] = t; sending_times_[spos[e.src]++] = t; }
        }
    }
}

std::span<const SliceEdge> TemporalGraph::out_edges(NodeId v, TimeIndex t) const {
    const auto& edges = slices_[t].edges;
    const auto lo = std::lower_bound(edges.begin(), edges.end(), SliceEdge{v, 0});
    const auto hi = std::lower_bound(lo, edges.end(), SliceEdge{v + 1, 0});
    return {&*lo, static_cast<std::size_t>(hi - lo)};
}

std::vector<TemporalNode> TemporalGraph::successors(NodeId v, TimeIndex t) const {
    if (v >= node_count_ || t >= time_count()) {
        throw std::invalid_argument("successors: node or time index out of range");
    }
    std::vector<TemporalNode> result;
    const auto st = sending_times(v);
    for (auto it = std::lower_bound(st.begin(), st.end(), t); it != st.end(); ++it) {
        for (const SliceEdge& e : out_edges(v, *it)) {
            result.push_back({e.dst, *it});
        }
    }
    std::sort(result.begin(), result.end(),
              [](const TemporalNode& a, const TemporalNode& b) {
                  return std::tie(a.time, a.node) < std::tie(b.time, b.node);
              });
    return result;
}

TemporalGraph::SliceNodeSets TemporalGraph::classify_nodes(TimeIndex t) const {
    if (t >= time_count()) throw std::invalid_argument("classify_nodes: time index out of range");
    SliceNodeSets sets;
    for (const SliceEdge& e : slices_[t].edges) {
        sets.active.push_back(e.src);
        sets.active.push_back(e.dst);
        sets.sending.push_back(e.src);
    }
    auto dedupe = [](std::vector<NodeId>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(sets.active);
    dedupe(sets.sending);
    return sets;
}

std::span<const TimeIndex> TemporalGraph::active_times(NodeId v) const {
    return {active_times_.data() + active_offsets_[v],
            active_offsets_[v + 1] - active_offsets_[v]};
}

std::span<const TimeIndex> TemporalGraph::sending_times(NodeId v) const {
    return {sending_times_.data() + sending_offsets_[v],
            sending_offsets_[v + 1] - sending_offsets_[v]};
}

AggregatedGraph TemporalGraph::aggregated() const {
    std::map<std::pair<NodeId, NodeId>, std::uint32_t> counts;
    for (const Slice& s : slices_) {
        for (const SliceEdge& e : s.edges) ++counts[{e.src, e.dst}];
    }
    AggregatedGraph agg;
    agg.edges.reserve(counts.size());
    for (const auto& [k, m] : counts) agg.edges.push_back({k.first, k.second, m});
    return agg;
}

CausalCompletion TemporalGraph::causal_completion(std::size_t max_order) const {
    const std::size_t order = static_cast<std::size_t>(node_count_) * time_count();
    if (order > max_order) {
        throw std::length_error("causal_completion: node_count * time_count exceeds guard");
    }
    CausalCompletion cc;
    cc.node_count = node_count_;
    cc.time_count = time_count();
    cc.out.resize(order);
    // Edge ((v,w),t') contributes (v,t) -> (w,t') for every t <= t'.
    // Filling per source slice in increasing t' keeps adjacency sorted by
    // time; a final per-node sort settles the node order within a time.
    for (TimeIndex tp = 0; tp < time_count(); ++tp) {
        for (const SliceEdge& e : slices_[tp].edges) {
            const std::uint32_t target = cc.id(e.dst, tp);
            for (TimeIndex t = 0; t <= tp; ++t) {
                cc.out[cc.id(e.src, t)].push_back(target);
            }
        }
    }
    for (auto& adj : cc.out) std::sort(adj.begin(), adj.end());
    return cc;
}

bool TemporalGraph::equivalent(const TemporalGraph& other) const {
    if (directed_ != other.directed_ || timestamps_ != other.timestamps_) return false;
    auto canon = [](const TemporalGraph& g) {
        std::vector<std::tuple<Timestamp, std::string, std::string>> out;
        out.reserve(g.edge_count_);
        for (TimeIndex t = 0; t < g.time_count(); ++t) {
            for (const SliceEdge& e : g.slices_[t].edges) {
                out.emplace_back(g.timestamps_[t], g.labels_[e.src], g.labels_[e.dst]);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    return canon(*this) == canon(other);
}

ParseResult parse_edge_list(std::istream& in, bool directed) {
    std::vector<Contact> contacts;
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    auto intern = [&](const std::string& s) {
        auto [it, fresh] = ids.try_emplace(s, static_cast<NodeId>(labels.size()));
        if (fresh) labels.push_back(s);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = line;
        if (const auto hash = sv.find('#'); hash != std::string_view::npos) {
            sv = sv.substr(0, hash);
        }
        std::array<std::string_view, 3> tok;
        std::size_t ntok = 0;
        std::size_t i = 0;
        while (i < sv.size()) {
            while (i < sv.size() && (sv[i] == ' ' || sv[i] == '\t' || sv[i] == '\r')) ++i;
            if (i >= sv.size()) break;
            std::size_t j = i;
            while (j < sv.size() && sv[j] != ' ' && sv[j] != '\t' && sv[j] != '\r') ++j;
            if (ntok == 3) {
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": expected 'u v t', got extra tokens");
            }
            tok[ntok++] = sv.substr(i, j - i);
            i = j;
        }
        if (ntok == 0) continue;
        if (ntok != 3) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected 'u v t'");
        }
        Timestamp t = 0;
        const auto [ptr, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), t);
        if (ec != std::errc{} || ptr != tok[2].data() + tok[2].size()) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": timestamp is not an integer");
        }
        if (tok[0] == tok[1]) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": self-loop");
        }
        contacts.push_back({intern(std::string(tok[0])), intern(std::string(tok[1])), t});
    }
    if (contacts.empty()) throw std::runtime_error("edge list: no edges");

    ParseResult res;
    const auto node_count = static_cast<std::uint32_t>(labels.size());
    res.graph = TemporalGraph::from_contacts(node_count, std::move(contacts), directed,
                                             std::move(labels), &res.duplicate_contacts);
    return res;
}

ParseResult parse_edge_list_file(const std::string& path, bool directed) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return parse_edge_list(in, directed);
}

void write_edge_list(std::ostream& out, const TemporalGraph& g, bool collapse_undirected) {
    for (TimeIndex t = 0; t < g.time_count(); ++t) {
        for (const SliceEdge& e : g.slice(t).edges) {
            if (collapse_undirected && !g.directed() && e.src > e.dst) continue;
            out << g.label(e.src) << ' ' << g.label(e.dst) << ' ' << g.timestamp(t) << '\n';
        }
    }
}

}  // namespace tnest
