#include "tnest/random_graph.hpp"

#include <stdexcept>
#include <unordered_set>

#include "tnest/rng.hpp"

namespace tnest {

TemporalGraph random_temporal_graph(std::uint32_t nodes, std::uint32_t times,
                                    double edge_prob, bool directed,
                                    std::uint64_t seed) {
    if (nodes < 2 || times < 1) {
        throw std::invalid_argument("random_temporal_graph: need >= 2 nodes and >= 1 time");
    }
    Rng rng(Rng::derive_stream(seed, stream_tag::generator));
    std::vector<Contact> contacts;
    for (std::uint32_t t = 1; t <= times; ++t) {
        bool any = false;
        for (NodeId u = 0; u < nodes; ++u) {
            for (NodeId v = directed ? 0 : u + 1; v < nodes; ++v) {
                if (u == v) continue;
                if (rng.unit() < edge_prob) {
                    contacts.push_back({u, v, static_cast<Timestamp>(t)});
                    any = true;
                }
            }
        }
        if (!any) {
            const NodeId u = static_cast<NodeId>(rng.below(nodes));
            NodeId v = static_cast<NodeId>(rng.below(nodes - 1));
            if (v >= u) ++v;
            contacts.push_back({u, v, static_cast<Timestamp>(t)});
        }
    }
    return TemporalGraph::from_contacts(nodes, std::move(contacts), directed);
}

TemporalGraph random_fixed_contacts(std::uint32_t nodes, std::uint32_t times,
                                    std::uint64_t contacts, bool directed,
                                    std::uint64_t seed) {
    if (nodes < 2 || times < 1 || contacts < 1) {
        throw std::invalid_argument("random_fixed_contacts: bad parameters");
    }
    Rng rng(Rng::derive_stream(seed, stream_tag::generator));
    std::unordered_set<std::uint64_t> used;
    used.reserve(contacts * 2);
    std::vector<Contact> records;
    records.reserve(contacts);
    while (records.size() < contacts) {
        const NodeId u = static_cast<NodeId>(rng.below(nodes));
        NodeId v = static_cast<NodeId>(rng.below(nodes - 1));
        if (v >= u) ++v;
        const TimeIndex t = static_cast<TimeIndex>(rng.below(times));
        // Key mixes slice and canonical pair; undirected contacts collide
        // in either orientation.
        const std::uint64_t pair =
            directed ? edge_key(u, v) : edge_key(std::min(u, v), std::max(u, v));
        const std::uint64_t key = pair * 0x9e3779b97f4a7c15ULL + t;
        if (!used.insert(key).second) continue;
        records.push_back({u, v, static_cast<Timestamp>(t) + 1});
    }
    return TemporalGraph::from_contacts(nodes, std::move(records), directed);
}

}  // namespace tnest
