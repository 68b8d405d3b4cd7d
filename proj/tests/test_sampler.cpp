#include "doctest.h"

#include <set>
#include <sstream>

#include "tnest/oracle.hpp"
#include "tnest/random_graph.hpp"
#include "tnest/refinement.hpp"
#include "tnest/sampler.hpp"

using namespace tnest;

namespace {

std::string serialized(const TemporalGraph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

std::set<std::uint64_t> unordered_keys(const std::vector<SliceEdge>& contacts) {
    std::set<std::uint64_t> keys;
    for (const SliceEdge& e : contacts) {
        keys.insert(edge_key(std::min(e.src, e.dst), std::max(e.src, e.dst)));
    }
    return keys;
}

// Move count straight from the swap/tilt definitions, using completed
// colors from a fresh refinement run.
std::uint64_t brute_count(const TemporalGraph& g, std::optional<std::uint32_t> depth) {
    RefineOptions opts;
    opts.max_depth = depth;
    const ColorAssignment colors = refine_active(g, opts);
    std::uint64_t n = 0;
    for (TimeIndex t = 0; t < g.time_count(); ++t) {
        auto color = [&](NodeId v) { return colors.completed_color(v, t); };
        if (g.directed()) {
            for (const SliceEdge& e : g.slice(t).edges) {
                for (NodeId x = 0; x < g.node_count(); ++x) {
                    if (x != e.src && !g.has_edge(e.src, x, t) &&
                        color(x) == color(e.dst)) {
                        ++n;
                    }
                }
            }
        } else {
            std::vector<SliceEdge> contacts;
            for (const SliceEdge& e : g.slice(t).edges) {
                if (e.src < e.dst) contacts.push_back(e);
            }
            for (std::size_t i = 0; i < contacts.size(); ++i) {
                for (std::size_t j = i + 1; j < contacts.size(); ++j) {
                    const NodeId a1 = contacts[i].src, a2 = contacts[i].dst;
                    const NodeId b1 = contacts[j].src, b2 = contacts[j].dst;
                    if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) continue;
                    if (color(a1) == color(b1) && color(a2) == color(b2) &&
                        !g.has_edge(a1, b2, t) && !g.has_edge(a2, b1, t)) {
                        ++n;
                    }
                    if (color(a1) == color(b2) && color(a2) == color(b1) &&
                        !g.has_edge(a1, b1, t) && !g.has_edge(a2, b2, t)) {
                        ++n;
                    }
                }
            }
        }
    }
    return n;
}

}  // namespace

TEST_CASE("heterochromatic swap replaces the unique valid pairing") {
    std::vector<SliceEdge> contacts{{0, 1}, {2, 3}};
    const std::vector<ColorId> colors{0, 1, 0, 1};  // c(0)=c(2), c(1)=c(3)
    Rng rng(7);
    std::uint64_t accepted = 0;  // single attempts may redraw the same contact
    for (int i = 0; i < 64 && accepted == 0; ++i) {
        accepted = undir_rewire_slice(contacts, colors, 1, rng);
    }
    CHECK(accepted == 1);
    CHECK(unordered_keys(contacts) ==
          std::set<std::uint64_t>{edge_key(0, 3), edge_key(1, 2)});
}

TEST_CASE("contacts sharing an endpoint never swap") {
    std::vector<SliceEdge> contacts{{0, 1}, {1, 2}};
    const std::vector<ColorId> colors{0, 0, 0};
    Rng rng(7);
    CHECK(undir_rewire_slice(contacts, colors, 500, rng) == 0);
    CHECK(unordered_keys(contacts) ==
          std::set<std::uint64_t>{edge_key(0, 1), edge_key(1, 2)});
}

TEST_CASE("singleton color classes freeze directed slices") {
    std::vector<SliceEdge> edges{{0, 1}};
    const std::vector<ColorId> colors{0, 1, 2};
    const std::vector<std::vector<NodeId>> classes{{0}, {1}, {2}};
    Rng rng(7);
    CHECK(dir_rewire_slice(edges, colors, classes, 500, rng) == 0);
    CHECK(edges == std::vector<SliceEdge>{{0, 1}});
}

TEST_CASE("zero attempts return the input graph") {
    const TemporalGraph g = random_temporal_graph(7, 4, 0.3, false, 21);
    SamplerConfig cfg;
    cfg.rewirings_per_slice = 0;
    const SampleResult s = tnest_sample(g, cfg);
    CHECK(s.stats.attempted == 0);
    CHECK(s.stats.accepted == 0);
    CHECK(serialized(s.graph) == serialized(g));
}

TEST_CASE("degree snapshot shuffle equals the depth-0 chain") {
    for (bool directed : {false, true}) {
        const TemporalGraph g = random_temporal_graph(8, 4, 0.3, directed, 31);
        SamplerConfig a, b;
        a.method = SampleMethod::DegreeSnapshotShuffle;
        b.method = SampleMethod::TNest;
        b.depth = 0;
        a.master_seed = b.master_seed = 555;
        CHECK(serialized(sample(g, a).graph) == serialized(sample(g, b).graph));
    }
}

TEST_CASE("rewiring count equals the definitional enumeration") {
    CHECK(count_rewirings(TemporalGraph::from_contacts(2, {{0, 1, 1}}, true),
                          std::nullopt) == 0);
    for (std::uint64_t seed : {1, 2, 3, 4, 5, 6}) {
        const bool directed = seed % 2 == 0;
        const TemporalGraph g =
            random_temporal_graph(4 + seed % 5, 2 + seed % 3, 0.35, directed, 900 + seed);
        for (std::optional<std::uint32_t> depth :
             {std::optional<std::uint32_t>{0}, std::optional<std::uint32_t>{1},
              std::optional<std::uint32_t>{2}, std::optional<std::uint32_t>{}}) {
            CAPTURE(seed);
            CHECK(count_rewirings(g, depth) == brute_count(g, depth));
        }
    }
}

TEST_CASE("rewiring count enforces its work guard") {
    const TemporalGraph g = random_temporal_graph(10, 3, 0.5, false, 77);
    CHECK_THROWS_AS(count_rewirings(g, 1, 42, 1), std::length_error);
}

TEST_CASE("method names round-trip and reject unknowns") {
    for (SampleMethod m :
         {SampleMethod::TNest, SampleMethod::RandomEdge,
          SampleMethod::DegreeSnapshotShuffle, SampleMethod::RandomTimes,
          SampleMethod::RandomContacts}) {
        CHECK(method_from_name(method_name(m)) == m);
    }
    CHECK(!method_from_name("bogus").has_value());
}

TEST_CASE("null models keep their defining invariants on a fixed instance") {
    const TemporalGraph g = random_temporal_graph(8, 5, 0.3, false, 61);

    const SampleResult rt = rt_sample(g, 5);
    for (const auto& e : g.aggregated().edges) {
        CHECK(rt.graph.aggregated().multiplicity(e.src, e.dst) == e.multiplicity);
    }

    const SampleResult rc = rc_sample(g, 5);
    REQUIRE(rc.graph.time_count() == g.time_count());
    for (TimeIndex t = 0; t < g.time_count(); ++t) {
        CHECK(rc.graph.slice(t).edges.size() == g.slice(t).edges.size());
        for (const SliceEdge& e : rc.graph.slice(t).edges) {
            CHECK(g.aggregated().multiplicity(e.src, e.dst) > 0);
        }
    }

    const SampleResult re = re_sample(g, 300, 5);
    CHECK(re.graph.edge_count() == g.edge_count());
    CHECK(re.stats.accepted <= re.stats.attempted);
    CHECK(re.stats.attempted == 300);
}
