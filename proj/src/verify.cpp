#include "tnest/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "tnest/measures.hpp"
#include "tnest/oracle.hpp"
#include "tnest/random_graph.hpp"
#include "tnest/refinement.hpp"
#include "tnest/rng.hpp"
#include "tnest/sampler.hpp"
#include "tnest/temporal_graph.hpp"

namespace tnest {

namespace {

std::vector<ColorId> active_partition(const ColorAssignment& a) {
    return oracle::canonical(
        std::vector<ColorId>(a.active_colors().begin(), a.active_colors().end()));
}

// Completed coloring of all temporal nodes in time-major order.
std::vector<ColorId> completed_partition(const TemporalGraph& g,
                                         const ColorAssignment& a) {
    std::vector<ColorId> full(static_cast<std::size_t>(g.node_count()) * g.time_count());
    for (TimeIndex t = 0; t < g.time_count(); ++t) {
        for (NodeId v = 0; v < g.node_count(); ++v) {
            full[static_cast<std::size_t>(t) * g.node_count() + v] = a.completed_color(v, t);
        }
    }
    return oracle::canonical(std::move(full));
}

std::vector<TemporalGraph> mixed_instances(std::uint64_t seed, std::size_t count) {
    std::vector<TemporalGraph> out;
    for (std::size_t i = 0; i < count; ++i) {
        const bool directed = i % 2 == 0;
        const std::uint32_t nodes = 4 + static_cast<std::uint32_t>(i % 5);
        const std::uint32_t times = 3 + static_cast<std::uint32_t>(i % 4);
        const double p = 0.15 + 0.05 * static_cast<double>(i % 4);
        out.push_back(random_temporal_graph(nodes, times, p, directed, seed + i));
    }
    return out;
}

std::vector<std::uint64_t> per_slice_degree_profile(const TemporalGraph& g) {
    // Node-wise per-slice degree fingerprint: undirected degree equals
    // out-degree because both directions are stored.
    std::vector<std::uint64_t> profile;
    for (TimeIndex t = 0; t < g.time_count(); ++t) {
        std::map<NodeId, std::uint64_t> deg;
        for (const SliceEdge& e : g.slice(t).edges) ++deg[e.src];
        profile.push_back(g.timestamp(t));
        for (const auto& [v, d] : deg) {
            profile.push_back(v);
            profile.push_back(d);
        }
    }
    return profile;
}

}  // namespace

std::vector<PropertyResult> run_property_suite(std::uint64_t seed, bool quick) {
    std::vector<PropertyResult> results;
    using Clock = std::chrono::steady_clock;

    auto run = [&](const std::string& name, auto&& fn) {
        PropertyResult r;
        r.name = name;
        const auto t0 = Clock::now();
        std::ostringstream detail;
        try {
            r.passed = fn(detail);
        } catch (const std::exception& e) {
            r.passed = false;
            detail << "exception: " << e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        r.detail = detail.str();
        results.push_back(std::move(r));
    };

    const std::size_t n_small = quick ? 6 : 24;

    run("successor_nesting", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 10, n_small)) {
            for (NodeId v = 0; v < g.node_count(); ++v) {
                for (TimeIndex t = 0; t + 1 < g.time_count(); ++t) {
                    const auto earlier = g.successors(v, t);
                    const auto later = g.successors(v, t + 1);
                    auto cmp = [](const TemporalNode& a, const TemporalNode& b) {
                        return std::tie(a.time, a.node) < std::tie(b.time, b.node);
                    };
                    if (!std::includes(earlier.begin(), earlier.end(),
                                       later.begin(), later.end(), cmp)) {
                        why << "successors not nested at node " << v << " time " << t;
                        return false;
                    }
                }
            }
        }
        return true;
    });

    run("parse_roundtrip", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 20, n_small)) {
            for (bool collapse : {false, true}) {
                if (collapse && g.directed()) continue;
                std::ostringstream buf;
                write_edge_list(buf, g, collapse);
                std::istringstream in(buf.str());
                const ParseResult parsed = parse_edge_list(in, g.directed());
                // A full undirected listing names each unordered contact
                // twice, so the second line of every pair is a duplicate.
                const std::size_t expected_dups =
                    (g.directed() || collapse) ? 0 : g.edge_count() / 2;
                if (parsed.duplicate_contacts != expected_dups) {
                    why << "expected " << expected_dups << " duplicates, got "
                        << parsed.duplicate_contacts;
                    return false;
                }
                if (!parsed.graph.equivalent(g)) {
                    why << "roundtrip changed the contact set";
                    return false;
                }
            }
        }
        return true;
    });

    run("completion_matches_successors", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 30, n_small)) {
            const CausalCompletion cc = g.causal_completion();
            for (NodeId v = 0; v < g.node_count(); ++v) {
                for (TimeIndex t = 0; t < g.time_count(); ++t) {
                    std::vector<std::uint32_t> from_succ;
                    for (const TemporalNode& s : g.successors(v, t)) {
                        from_succ.push_back(cc.id(s.node, s.time));
                    }
                    if (from_succ != cc.out[cc.id(v, t)]) {
                        why << "completion adjacency mismatch at node " << v
                            << " time " << t;
                        return false;
                    }
                }
            }
        }
        return true;
    });

    run("undirected_slices_symmetric", [&](std::ostringstream& why) {
        for (std::size_t i = 0; i < n_small; ++i) {
            const TemporalGraph g =
                random_temporal_graph(6, 4, 0.3, false, seed + 40 + i);
            if (g.edge_count() % 2 != 0) {
                why << "odd edge count in undirected graph";
                return false;
            }
            for (TimeIndex t = 0; t < g.time_count(); ++t) {
                for (const SliceEdge& e : g.slice(t).edges) {
                    if (!g.has_edge(e.dst, e.src, t)) {
                        why << "missing reverse edge at time " << t;
                        return false;
                    }
                }
            }
        }
        return true;
    });

    run("refinement_matches_oracle", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 50, n_small)) {
            const std::uint32_t k = stable_depth(g, seed + 1);
            const std::uint32_t k_oracle = oracle::stable_rounds(g);
            if (k != k_oracle) {
                why << "stable depth " << k << " but oracle " << k_oracle;
                return false;
            }
            for (std::uint32_t d = 0; d <= k; ++d) {
                RefineOptions opts;
                opts.max_depth = d;
                opts.seed = seed + 2;
                const auto lib = active_partition(refine_active(g, opts));
                const auto orc =
                    oracle::restrict_to_active(g, oracle::completion_refinement(g, d));
                if (lib != orc) {
                    why << "partition mismatch at depth " << d;
                    return false;
                }
            }
            if (oracle::completion_refinement(g, k) != oracle::successor_refinement(g, k)) {
                why << "the two oracle refinements disagree";
                return false;
            }
        }
        return true;
    });

    run("refinement_seed_invariant", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 60, n_small)) {
            RefineOptions a, b;
            a.seed = 12345;
            b.seed = 987654321;
            const ColorAssignment ra = refine_active(g, a);
            const ColorAssignment rb = refine_active(g, b);
            if (ra.depth() != rb.depth() ||
                active_partition(ra) != active_partition(rb)) {
                why << "seeds produced different partitions";
                return false;
            }
        }
        return true;
    });

    run("class_counts_monotone", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 70, n_small)) {
            const ColorAssignment r = refine_active(g);
            const auto& h = r.class_count_history();
            if (!std::is_sorted(h.begin(), h.end())) {
                why << "class counts decreased";
                return false;
            }
            if (h.back() > 2 * g.edge_count()) {
                why << "class count exceeds twice the edge count";
                return false;
            }
        }
        return true;
    });

    run("completion_rule_matches_oracle", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 80, n_small)) {
            const ColorAssignment stable = refine_active(g);
            for (std::uint32_t d : {std::uint32_t{1}, stable.depth()}) {
                RefineOptions opts;
                opts.max_depth = d;
                const ColorAssignment a = refine_active(g, opts);
                if (completed_partition(g, a) !=
                    oracle::canonical(oracle::completion_refinement(g, d))) {
                    why << "completed coloring differs from full refinement at depth "
                        << d;
                    return false;
                }
            }
        }
        return true;
    });

    run("slice_views_match_completion", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 90, n_small)) {
            const ColorAssignment a = refine_active(g);
            SliceColorSweep sweep(g, a);
            std::vector<ColorId> prev;
            for (TimeIndex t = 0; t < g.time_count(); ++t, sweep.advance()) {
                const auto colors = sweep.node_colors();
                for (NodeId v = 0; v < g.node_count(); ++v) {
                    if (colors[v] != a.completed_color(v, t)) {
                        why << "sweep color differs at node " << v << " time " << t;
                        return false;
                    }
                }
                const auto& classes = sweep.classes();
                std::size_t covered = 0;
                for (ColorId c = 0; c < classes.size(); ++c) {
                    covered += classes[c].size();
                    for (NodeId v : classes[c]) {
                        if (colors[v] != c) {
                            why << "class list disagrees with colors";
                            return false;
                        }
                    }
                }
                if (covered != g.node_count()) {
                    why << "classes do not cover all nodes";
                    return false;
                }
                std::vector<NodeId> expect_changed;
                for (NodeId v = 0; v < g.node_count(); ++v) {
                    if (t == 0 || colors[v] != prev[v]) expect_changed.push_back(v);
                }
                std::vector<NodeId> got(sweep.changed().begin(), sweep.changed().end());
                std::sort(got.begin(), got.end());
                if (got != expect_changed) {
                    why << "changed set wrong at time " << t;
                    return false;
                }
                prev.assign(colors.begin(), colors.end());
            }
        }
        return true;
    });

    run("sampler_preserves_colors", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 100, quick ? 4 : 12)) {
            const std::uint32_t stable = stable_depth(g);
            for (std::uint32_t d : {std::uint32_t{1}, std::uint32_t{2}}) {
                SamplerConfig cfg;
                cfg.depth = d;
                cfg.master_seed = seed + d;
                cfg.rewirings_per_contact = 30.0;
                const SampleResult s = tnest_sample(g, cfg);
                if (!oracle::same_refinement_colors(g, s.graph, d)) {
                    why << "depth " << d << " colors not preserved";
                    return false;
                }
            }
            SamplerConfig cfg;
            cfg.depth = std::nullopt;
            cfg.master_seed = seed + 99;
            const SampleResult s = tnest_sample(g, cfg);
            if (!oracle::same_refinement_colors(g, s.graph, stable)) {
                why << "stable colors not preserved";
                return false;
            }
        }
        return true;
    });

    run("sampler_preserves_slice_degrees", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 110, quick ? 4 : 12)) {
            for (std::optional<std::uint32_t> d :
                 {std::optional<std::uint32_t>{0}, std::optional<std::uint32_t>{1},
                  std::optional<std::uint32_t>{}}) {
                SamplerConfig cfg;
                cfg.depth = d;
                cfg.master_seed = seed + 3;
                const SampleResult s = tnest_sample(g, cfg);
                if (per_slice_degree_profile(s.graph) != per_slice_degree_profile(g)) {
                    why << "per-slice out-degrees changed";
                    return false;
                }
                if (s.graph.timestamps() != g.timestamps()) {
                    why << "timestamps changed";
                    return false;
                }
            }
        }
        return true;
    });

    run("chain_visits_states_uniformly", [&](std::ostringstream& why) {
        // Single-slice instance with two disjoint contacts: three states,
        // all reachable by one swap; the chain must visit them equally.
        std::vector<Contact> contacts{{0, 1, 1}, {2, 3, 1}};
        const TemporalGraph g = TemporalGraph::from_contacts(4, contacts, false);
        std::vector<SliceEdge> state{{0, 1}, {2, 3}};
        std::vector<ColorId> colors(4, 0);
        Rng rng(seed + 123);
        const std::uint64_t steps = quick ? 100000 : 1000000;
        std::map<std::vector<std::uint64_t>, std::uint64_t> freq;
        for (std::uint64_t i = 0; i < steps; ++i) {
            undir_rewire_slice(state, colors, 1, rng);
            std::vector<std::uint64_t> key;
            for (const SliceEdge& e : state) key.push_back(edge_key(e.src, e.dst));
            std::sort(key.begin(), key.end());
            ++freq[key];
        }
        if (freq.size() != 3) {
            why << "expected 3 reachable states, saw " << freq.size();
            return false;
        }
        const double expected = static_cast<double>(steps) / 3.0;
        double stat = 0;
        for (const auto& [key, n] : freq) {
            const double d = static_cast<double>(n) - expected;
            stat += d * d / expected;
        }
        boost::math::chi_squared dist(2);
        const double p = 1.0 - boost::math::cdf(dist, stat);
        why << "chi2=" << stat << " p=" << p;
        return p > 0.01;
    });

    run("move_closure_equals_enumeration", [&](std::ostringstream& why) {
        std::vector<TemporalGraph> instances;
        instances.push_back(TemporalGraph::from_contacts(
            4, {{0, 1, 1}, {2, 3, 1}, {0, 2, 2}}, false));
        instances.push_back(TemporalGraph::from_contacts(
            4, {{0, 1, 1}, {2, 3, 1}, {1, 2, 2}}, true));
        instances.push_back(TemporalGraph::from_contacts(
            5, {{0, 1, 1}, {2, 3, 1}, {1, 4, 2}, {3, 0, 3}}, false));
        for (const TemporalGraph& g : instances) {
            for (std::uint32_t d : {std::uint32_t{1}, std::uint32_t{2}}) {
                const auto closure = oracle::move_closure(g, d - 1);
                const auto enumerated = oracle::enumerate_class(g, d);
                if (closure.keys != enumerated.keys) {
                    why << "closure (" << closure.keys.size() << ") != enumeration ("
                        << enumerated.keys.size() << ") at depth " << d;
                    return false;
                }
            }
        }
        return true;
    });

    run("katz_three_way_agreement", [&](std::ostringstream& why) {
        const double alpha = 0.1;
        for (const TemporalGraph& g : mixed_instances(seed + 130, quick ? 4 : 12)) {
            const std::vector<double> lib = temporal_katz(g, alpha);
            const std::vector<double> blk = oracle::block_katz(g, alpha);
            const oracle::WalkKatz walk = oracle::walk_count_katz(g, alpha, 400);
            if (!(walk.tail_bound < 1e-12)) {
                why << "walk tail bound " << walk.tail_bound << " too large";
                return false;
            }
            for (NodeId v = 0; v < g.node_count(); ++v) {
                if (std::abs(lib[v] - blk[v]) > 1e-10 ||
                    std::abs(lib[v] - walk.gamma[v]) > 1e-10 + walk.tail_bound) {
                    why << "katz disagreement at node " << v;
                    return false;
                }
            }
        }
        return true;
    });

    run("stable_chain_preserves_katz", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 140, quick ? 4 : 10)) {
            SamplerConfig cfg;
            cfg.depth = std::nullopt;
            cfg.master_seed = seed + 7;
            const SampleResult s = tnest_sample(g, cfg);
            const double err =
                sum_absolute_error(temporal_katz(g, 0.1), temporal_katz(s.graph, 0.1));
            if (err > 1e-12) {
                why << "katz SAE " << err << " after stable-color rewiring";
                return false;
            }
        }
        return true;
    });

    run("baseline_invariants", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 150, quick ? 4 : 12)) {
            auto slice_contact_counts = [](const TemporalGraph& x) {
                std::vector<std::size_t> counts;
                for (TimeIndex t = 0; t < x.time_count(); ++t) {
                    counts.push_back(x.slice(t).edges.size());
                }
                return counts;
            };
            auto agg_entries = [](const TemporalGraph& x) {
                std::vector<std::tuple<NodeId, NodeId, std::uint32_t>> v;
                for (const auto& e : x.aggregated().edges) {
                    v.emplace_back(e.src, e.dst, e.multiplicity);
                }
                return v;
            };

            {
                SamplerConfig cfg;
                cfg.master_seed = seed + 11;
                const SampleResult s = dss_sample(g, cfg);
                if (per_slice_degree_profile(s.graph) != per_slice_degree_profile(g)) {
                    why << "dss changed a slice degree sequence";
                    return false;
                }
            }
            {
                const SampleResult s = rt_sample(g, seed + 12);
                if (agg_entries(s.graph) != agg_entries(g)) {
                    why << "rt changed the aggregated multigraph";
                    return false;
                }
                if (slice_contact_counts(s.graph) != slice_contact_counts(g) ||
                    s.graph.timestamps() != g.timestamps()) {
                    why << "rt changed per-time contact counts";
                    return false;
                }
            }
            {
                const SampleResult s = rc_sample(g, seed + 13);
                if (slice_contact_counts(s.graph) != slice_contact_counts(g) ||
                    s.graph.timestamps() != g.timestamps()) {
                    why << "rc changed per-time contact counts";
                    return false;
                }
                const AggregatedGraph base = g.aggregated();
                for (const auto& e : s.graph.aggregated().edges) {
                    if (base.multiplicity(e.src, e.dst) == 0) {
                        why << "rc used a contact outside the support";
                        return false;
                    }
                }
            }
            {
                const SampleResult s = re_sample(g, 200, seed + 14);
                if (s.graph.edge_count() != g.edge_count()) {
                    why << "re changed the total edge count";
                    return false;
                }
                auto totals = [](const TemporalGraph& x, bool out_only) {
                    std::vector<std::uint64_t> deg(x.node_count(), 0);
                    for (TimeIndex t = 0; t < x.time_count(); ++t) {
                        for (const SliceEdge& e : x.slice(t).edges) {
                            ++deg[e.src];
                            if (!out_only) ++deg[e.dst];
                        }
                    }
                    return deg;
                };
                if (g.directed()) {
                    if (totals(s.graph, true) != totals(g, true)) {
                        why << "re changed a node's total out-degree";
                        return false;
                    }
                } else {
                    if (totals(s.graph, false) != totals(g, false)) {
                        why << "re changed a node's total contact count";
                        return false;
                    }
                }
            }
        }
        return true;
    });

    run("measures_match_oracles", [&](std::ostringstream& why) {
        for (const TemporalGraph& g : mixed_instances(seed + 160, quick ? 6 : 20)) {
            if (std::abs(edge_persistence(g) - oracle::naive_persistence(g)) > 1e-12) {
                why << "persistence differs from dense oracle";
                return false;
            }
            const auto naive = oracle::naive_triangles(g);
            const double vt =
                static_cast<double>(g.node_count()) * static_cast<double>(g.time_count());
            if (std::abs(triangle_density(g) - static_cast<double>(naive.all) / vt) > 1e-12 ||
                std::abs(causal_triangle_density(g) -
                         static_cast<double>(naive.causal) / vt) > 1e-12) {
                why << "triangle densities differ from enumeration oracle";
                return false;
            }
            for (int kind = 0; kind < 3; ++kind) {
                double lib = 0, naive_b = 0;
                bool lib_ok = true, naive_ok = true;
                try {
                    lib = burstiness(g, static_cast<EventKind>(kind));
                } catch (const std::domain_error&) {
                    lib_ok = false;
                }
                try {
                    naive_b = oracle::naive_burstiness(g, kind);
                } catch (const std::domain_error&) {
                    naive_ok = false;
                }
                if (lib_ok != naive_ok || (lib_ok && std::abs(lib - naive_b) > 1e-12)) {
                    why << "burstiness kind " << kind << " differs from oracle";
                    return false;
                }
            }
            const auto com = communicability(g, 1.0);
            const auto dense = oracle::dense_communicability(g, 1.0);
            for (NodeId v = 0; v < g.node_count(); ++v) {
                if (std::abs(com[v] - dense[v]) > 1e-9 * std::max(1.0, std::abs(dense[v]))) {
                    why << "communicability differs from dense oracle at node " << v;
                    return false;
                }
            }
        }
        return true;
    });

    run("measure_toy_values", [&](std::ostringstream& why) {
        // Repeated single contact: cosine similarity 1 once, so C = 2/4.
        const TemporalGraph persist =
            TemporalGraph::from_contacts(2, {{0, 1, 1}, {0, 1, 2}}, false);
        if (edge_persistence(persist) != 0.5) {
            why << "persistence toy is " << edge_persistence(persist);
            return false;
        }
        // One directed 3-cycle in one slice: 1 triangle / (3 nodes * 1 time).
        const TemporalGraph tri =
            TemporalGraph::from_contacts(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}, true);
        if (triangle_density(tri) != 1.0 / 3.0 || causal_triangle_density(tri) != 0.0) {
            why << "same-slice cycle toy wrong";
            return false;
        }
        // The same cycle spread over increasing times is causal:
        // 1 / (3 nodes * 3 times).
        const TemporalGraph causal =
            TemporalGraph::from_contacts(3, {{0, 1, 1}, {1, 2, 2}, {2, 0, 3}}, true);
        if (causal_triangle_density(causal) != 1.0 / 9.0) {
            why << "causal cycle toy wrong";
            return false;
        }
        // Identical vectors hit the error floor.
        const std::vector<double> x{1.0, 2.0, 3.0};
        if (sum_absolute_error(x, x) != 1e-16) {
            why << "error floor not applied";
            return false;
        }
        return true;
    });

    run("sampling_is_deterministic", [&](std::ostringstream& why) {
        const TemporalGraph gd = random_temporal_graph(7, 5, 0.25, true, seed + 170);
        const TemporalGraph gu = random_temporal_graph(7, 5, 0.25, false, seed + 171);
        for (const TemporalGraph* g : {&gd, &gu}) {
            for (SampleMethod m :
                 {SampleMethod::TNest, SampleMethod::RandomEdge,
                  SampleMethod::DegreeSnapshotShuffle, SampleMethod::RandomTimes,
                  SampleMethod::RandomContacts}) {
                SamplerConfig cfg;
                cfg.method = m;
                cfg.depth = 1;
                cfg.master_seed = seed + 55;
                const SampleResult a = sample(*g, cfg);
                const SampleResult b = sample(*g, cfg);
                std::ostringstream sa, sb;
                write_edge_list(sa, a.graph);
                write_edge_list(sb, b.graph);
                if (sa.str() != sb.str() || a.stats.accepted != b.stats.accepted) {
                    why << method_name(m) << " not deterministic";
                    return false;
                }
            }
        }
        return true;
    });

    return results;
}

}  // namespace tnest
