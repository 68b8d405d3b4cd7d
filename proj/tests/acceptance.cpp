// Acceptance gate: one line per criterion, PASS/FAIL with detail, plus
// SKIP for the dataset-gated criterion when the file is absent. Exits
// nonzero when any non-skipped criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <tuple>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "tnest/measures.hpp"
#include "tnest/oracle.hpp"
#include "tnest/random_graph.hpp"
#include "tnest/refinement.hpp"
#include "tnest/rng.hpp"
#include "tnest/sampler.hpp"
#include "tnest/temporal_graph.hpp"

using namespace tnest;

namespace {

// Tolerances under test, one constant per criterion.
constexpr double kRefineOracleBudgetSeconds = 60.0;      // AC1
constexpr double kPreservationBudgetSeconds = 120.0;     // AC2
constexpr double kClosureBudgetSeconds = 600.0;          // AC3
constexpr double kChiSquareSignificance = 0.01;          // AC4
constexpr std::uint64_t kChiSquareSteps = 1'000'000;     // AC4
constexpr double kKatzPreservationTol = 1e-8;            // AC5
constexpr double kKatzBlockTol = 1e-10;                  // AC6
constexpr double kKatzWalkSlack = 1e-10;                 // AC6
constexpr double kSaeKatzStableTol = 1e-12;              // AC7
constexpr double kSaeCommStableTol = 1e-10;              // AC7, reported
constexpr double kMeasureOracleTol = 1e-12;              // AC9
constexpr double kRefinePerfBudgetSeconds = 15.0;        // AC10, 10x of 1.5s
constexpr double kScalingSlack = 2.0;                    // AC10
constexpr double kPublishedRounding3 = 0.0005;           // AC11, 3-decimal table
constexpr double kPublishedRounding0 = 0.5;              // AC11, integer table
constexpr double kSampleMeanTol = 0.001;                 // AC11, stated +-0.001

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
};

std::vector<ColorId> active_partition(const ColorAssignment& a) {
    return oracle::canonical(
        std::vector<ColorId>(a.active_colors().begin(), a.active_colors().end()));
}

Criterion ac1_refinement_oracle() {
    Criterion c{"AC1 refinement equals completion oracle at every depth"};
    const auto t0 = Clock::now();
    const double probs[] = {0.1, 0.3, 0.6};
    for (int i = 0; i < 200; ++i) {
        const TemporalGraph g =
            random_temporal_graph(4 + i % 9, 2 + i % 4, probs[i % 3], i % 2 == 0,
                                  0xAC1000 + static_cast<std::uint64_t>(i));
        const std::uint32_t stable = stable_depth(g);
        if (stable != oracle::stable_rounds(g)) {
            c.detail = "stable depth mismatch on instance " + std::to_string(i);
            return c;
        }
        for (std::uint32_t d = 0; d <= stable; ++d) {
            RefineOptions opts;
            opts.max_depth = d;
            const auto lib = active_partition(refine_active(g, opts));
            const auto orc = oracle::canonical(
                oracle::restrict_to_active(g, oracle::completion_refinement(g, d)));
            if (lib != orc) {
                c.detail = "partition mismatch, instance " + std::to_string(i) +
                           " depth " + std::to_string(d);
                return c;
            }
        }
    }
    const double secs = seconds_since(t0);
    c.passed = secs < kRefineOracleBudgetSeconds;
    std::ostringstream os;
    os << "200 instances, every depth, " << secs << "s (budget "
       << kRefineOracleBudgetSeconds << "s)";
    c.detail = os.str();
    return c;
}

Criterion ac2_color_preservation() {
    Criterion c{"AC2 t-NeSt preserves depth-d partitions exactly"};
    const auto t0 = Clock::now();
    for (int i = 0; i < 100; ++i) {
        const TemporalGraph g =
            random_temporal_graph(4 + i % 9, 2 + i % 4, i % 2 == 0 ? 0.1 : 0.3,
                                  i % 3 == 0, 0xAC2000 + static_cast<std::uint64_t>(i));
        const std::uint32_t stable = stable_depth(g);
        for (std::uint32_t d : {std::uint32_t{1}, std::uint32_t{2}, stable}) {
            SamplerConfig cfg;
            cfg.depth = d;
            cfg.master_seed = 0xAC2A00 + static_cast<std::uint64_t>(i);
            cfg.rewirings_per_contact = 100.0;  // >= 50E attempts in total
            const SampleResult s = tnest_sample(g, cfg);
            if (!oracle::same_refinement_colors(g, s.graph, d)) {
                c.detail = "depth " + std::to_string(d) + " partition changed, instance " +
                           std::to_string(i);
                return c;
            }
        }
    }
    const double secs = seconds_since(t0);
    c.passed = secs < kPreservationBudgetSeconds;
    std::ostringstream os;
    os << "100 instances, d in {1,2,stable}, >=50E attempts, " << secs << "s (budget "
       << kPreservationBudgetSeconds << "s)";
    c.detail = os.str();
    return c;
}

Criterion ac3_closure_equals_enumeration() {
    Criterion c{"AC3 move closure equals class enumeration on tiny instances"};
    const auto t0 = Clock::now();
    int done = 0;
    std::uint64_t seed = 0xAC3000;
    while (done < 20 && seconds_since(t0) < kClosureBudgetSeconds) {
        ++seed;
        const std::uint32_t nodes = 4 + seed % 3;   // 4..6
        const std::uint32_t times = 2 + seed % 2;   // 2..3
        const std::uint64_t contacts = 3 + seed % 3;  // 3..5
        TemporalGraph g =
            random_fixed_contacts(nodes, times, contacts, seed % 2 == 0, seed);
        for (std::uint32_t d : {std::uint32_t{1}, std::uint32_t{2}}) {
            oracle::ClassEnumeration closure, enumerated;
            try {
                closure = oracle::move_closure(g, d - 1);
                enumerated = oracle::enumerate_class(g, d);
            } catch (const std::length_error&) {
                continue;  // instance too big for exhaustive work, next seed
            }
            if (closure.keys != enumerated.keys) {
                std::ostringstream os;
                os << "seed " << seed << " depth " << d << ": closure "
                   << closure.keys.size() << " != enumeration " << enumerated.keys.size();
                c.detail = os.str();
                return c;
            }
        }
        ++done;
    }
    const double secs = seconds_since(t0);
    c.passed = done >= 20;
    std::ostringstream os;
    os << done << " instances at d in {1,2}, " << secs << "s (budget "
       << kClosureBudgetSeconds << "s)";
    c.detail = os.str();
    return c;
}

Criterion ac4_uniformity() {
    Criterion c{"AC4 chain samples its class uniformly (chi-square)"};
    // Single slice, two disjoint contacts, uniform colors: exactly three
    // reachable states (the perfect matchings avoiding fixed points plus
    // the start), visited equally by a reversible chain.
    std::vector<SliceEdge> state{{0, 1}, {2, 3}};
    const std::vector<ColorId> colors(4, 0);
    Rng rng(0xAC4000);
    std::map<std::vector<std::uint64_t>, std::uint64_t> freq;
    for (std::uint64_t i = 0; i < kChiSquareSteps; ++i) {
        undir_rewire_slice(state, colors, 1, rng);
        std::vector<std::uint64_t> key;
        for (const SliceEdge& e : state) key.push_back(edge_key(e.src, e.dst));
        std::sort(key.begin(), key.end());
        ++freq[key];
    }
    if (freq.size() != 3) {
        c.detail = "expected 3 states, saw " + std::to_string(freq.size());
        return c;
    }
    const double expected = static_cast<double>(kChiSquareSteps) / 3.0;
    double stat = 0;
    for (const auto& [key, n] : freq) {
        const double d = static_cast<double>(n) - expected;
        stat += d * d / expected;
    }
    boost::math::chi_squared dist(2);
    const double p = 1.0 - boost::math::cdf(dist, stat);
    c.passed = p > kChiSquareSignificance;
    std::ostringstream os;
    os << kChiSquareSteps << " steps, chi2=" << stat << ", p=" << p
       << " (significance " << kChiSquareSignificance << ")";
    c.detail = os.str();
    return c;
}

Criterion ac5_katz_preservation() {
    Criterion c{"AC5 stable-color rewiring preserves temporal Katz"};
    const double alpha = 0.1;
    double worst = 0;
    int done = 0;
    std::uint64_t seed = 0xAC5000;
    while (done < 100) {
        ++seed;
        const std::uint32_t nodes = 10 + seed % 31;  // 10..40
        const std::uint32_t times = 4 + seed % 17;   // 4..20
        const TemporalGraph g =
            random_temporal_graph(nodes, times, 0.08, seed % 2 == 0, seed);
        std::vector<double> base;
        try {
            base = temporal_katz(g, alpha);
        } catch (const std::domain_error&) {
            continue;  // alpha * max out-degree >= 1, draw another graph
        }
        SamplerConfig cfg;
        cfg.depth = std::nullopt;
        cfg.master_seed = seed;
        const SampleResult s = tnest_sample(g, cfg);
        const std::vector<double> rewired = temporal_katz(s.graph, alpha);
        for (std::size_t v = 0; v < base.size(); ++v) {
            worst = std::max(worst, std::abs(base[v] - rewired[v]));
        }
        ++done;
    }
    c.passed = worst < kKatzPreservationTol;
    std::ostringstream os;
    os << "100 instances (V<=40, T<=20), max component diff " << worst
       << " (tolerance " << kKatzPreservationTol << ")";
    c.detail = os.str();
    return c;
}

Criterion ac6_katz_triple() {
    Criterion c{"AC6 Katz triple agreement (library, block solve, walk counts)"};
    const double alpha = 0.1;
    double worst_block = 0, worst_walk = 0;
    int done = 0;
    std::uint64_t seed = 0xAC6000;
    while (done < 50) {
        ++seed;
        const TemporalGraph g = random_temporal_graph(
            6 + seed % 5, 2 + seed % 3, 0.3, seed % 2 == 0, seed);  // V<=10, T<=4
        std::vector<double> lib;
        try {
            lib = temporal_katz(g, alpha);
        } catch (const std::domain_error&) {
            continue;
        }
        const std::vector<double> blk = oracle::block_katz(g, alpha);
        const oracle::WalkKatz walk = oracle::walk_count_katz(g, alpha, 400);
        if (!std::isfinite(walk.tail_bound)) {
            c.detail = "walk tail bound diverged on seed " + std::to_string(seed);
            return c;
        }
        for (std::size_t v = 0; v < lib.size(); ++v) {
            worst_block = std::max(worst_block, std::abs(lib[v] - blk[v]));
            const double walk_err = std::abs(lib[v] - walk.gamma[v]);
            worst_walk = std::max(worst_walk, walk_err - walk.tail_bound);
        }
        ++done;
    }
    c.passed = worst_block < kKatzBlockTol && worst_walk < kKatzWalkSlack;
    std::ostringstream os;
    os << "50 instances, max |lib-block| " << worst_block << " (tol " << kKatzBlockTol
       << "), max walk excess over tail bound " << worst_walk << " (slack "
       << kKatzWalkSlack << ")";
    c.detail = os.str();
    return c;
}

Criterion ac7_sae_curve() {
    Criterion c{"AC7 SAE against depth is non-increasing and bottoms out"};
    // 80 nodes, 240 times, sparse enough for the Katz guard.
    TemporalGraph g = random_temporal_graph(80, 240, 0.012, false, 0xAC7000);
    std::uint64_t seed = 0xAC7000;
    while (true) {
        try {
            temporal_katz(g, 0.1);
            break;
        } catch (const std::domain_error&) {
            ++seed;
            g = random_temporal_graph(80, 240, 0.012, false, seed);
        }
    }
    const CentralityParams params;
    const MeasureReport original = measure_all(g, params);
    const std::uint32_t stable = stable_depth(g);
    const std::uint64_t samples = 5;

    std::vector<double> katz_means, comm_means;
    for (std::uint32_t d = 0; d <= stable; ++d) {
        double katz_sum = 0, comm_sum = 0;
        for (std::uint64_t k = 0; k < samples; ++k) {
            SamplerConfig cfg;
            cfg.depth = d;
            cfg.master_seed = Rng::derive_stream(0xAC7A00, stream_tag::sample_index | k);
            const SampleResult s = tnest_sample(g, cfg);
            const MeasureReport rep = measure_all(s.graph, params);
            katz_sum += sum_absolute_error(original.katz, rep.katz);
            comm_sum += sum_absolute_error(original.communicability, rep.communicability);
        }
        katz_means.push_back(katz_sum / static_cast<double>(samples));
        comm_means.push_back(comm_sum / static_cast<double>(samples));
    }

    bool monotone = true;
    for (std::size_t d = 0; d + 1 < katz_means.size(); ++d) {
        monotone = monotone && katz_means[d + 1] <= katz_means[d];
    }
    const double katz_stable = katz_means.back();
    const double comm_stable = comm_means.back();
    c.passed = monotone && katz_stable <= kSaeKatzStableTol;
    std::ostringstream os;
    os << "stable depth " << stable << ", katz SAE per depth [";
    for (std::size_t d = 0; d < katz_means.size(); ++d) {
        os << (d ? ", " : "") << katz_means[d];
    }
    os << "], stable " << katz_stable << " (tol " << kSaeKatzStableTol
       << "); communicability SAE at stable " << comm_stable << " ("
       << (comm_stable <= kSaeCommStableTol ? "meets" : "misses") << " reported bound "
       << kSaeCommStableTol << ")";
    c.detail = os.str();
    return c;
}

Criterion ac8_baseline_invariants() {
    Criterion c{"AC8 baseline null models keep their exact invariants"};
    auto slice_degrees = [](const TemporalGraph& x) {
        std::vector<std::map<NodeId, std::uint64_t>> per_slice(x.time_count());
        for (TimeIndex t = 0; t < x.time_count(); ++t) {
            for (const SliceEdge& e : x.slice(t).edges) ++per_slice[t][e.src];
        }
        return per_slice;
    };
    auto agg = [](const TemporalGraph& x) {
        std::vector<std::tuple<NodeId, NodeId, std::uint32_t>> v;
        for (const auto& e : x.aggregated().edges) {
            v.emplace_back(e.src, e.dst, e.multiplicity);
        }
        return v;
    };
    auto slice_counts = [](const TemporalGraph& x) {
        std::vector<std::size_t> out;
        for (TimeIndex t = 0; t < x.time_count(); ++t) out.push_back(x.slice(t).edges.size());
        return out;
    };

    for (int i = 0; i < 50; ++i) {
        const std::uint64_t seed = 0xAC8000 + static_cast<std::uint64_t>(i);
        const bool directed = i % 2 == 0;
        const TemporalGraph g =
            random_temporal_graph(5 + i % 6, 3 + i % 4, 0.3, directed, seed);

        SamplerConfig dss_cfg;
        dss_cfg.method = SampleMethod::DegreeSnapshotShuffle;
        dss_cfg.master_seed = seed;
        if (slice_degrees(sample(g, dss_cfg).graph) != slice_degrees(g)) {
            c.detail = "DSS changed a per-slice degree sequence, instance " +
                       std::to_string(i);
            return c;
        }

        const SampleResult rt = rt_sample(g, seed);
        if (agg(rt.graph) != agg(g) || slice_counts(rt.graph) != slice_counts(g) ||
            rt.graph.timestamps() != g.timestamps()) {
            c.detail = "RT broke aggregation or per-time counts, instance " +
                       std::to_string(i);
            return c;
        }

        const SampleResult rc = rc_sample(g, seed);
        if (slice_counts(rc.graph) != slice_counts(g) ||
            rc.graph.timestamps() != g.timestamps()) {
            c.detail = "RC changed per-time contact counts, instance " + std::to_string(i);
            return c;
        }
        const AggregatedGraph support = g.aggregated();
        for (const auto& e : rc.graph.aggregated().edges) {
            if (support.multiplicity(e.src, e.dst) == 0) {
                c.detail = "RC left the aggregated support, instance " + std::to_string(i);
                return c;
            }
        }

        if (!directed) {
            auto totals = [](const TemporalGraph& x) {
                std::vector<std::uint64_t> deg(x.node_count(), 0);
                for (TimeIndex t = 0; t < x.time_count(); ++t) {
                    for (const SliceEdge& e : x.slice(t).edges) ++deg[e.src];
                }
                return deg;
            };
            const SampleResult re = re_sample(g, 500, seed);
            if (totals(re.graph) != totals(g)) {
                c.detail = "RE changed a total contact count, instance " + std::to_string(i);
                return c;
            }
        }
    }
    c.passed = true;
    c.detail = "50 instances per model, all invariants exact";
    return c;
}

Criterion ac9_measure_oracles() {
    Criterion c{"AC9 measures match per-definition loops and hand values"};
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const TemporalGraph g =
            random_temporal_graph(5 + i % 5, 3 + i % 3, 0.3, i % 2 == 0,
                                  0xAC9000 + static_cast<std::uint64_t>(i));
        worst = std::max(worst,
                         std::abs(edge_persistence(g) - oracle::naive_persistence(g)));
        const auto tri = oracle::naive_triangles(g);
        const double vt =
            static_cast<double>(g.node_count()) * static_cast<double>(g.time_count());
        worst = std::max(worst, std::abs(triangle_density(g) -
                                         static_cast<double>(tri.all) / vt));
        worst = std::max(worst, std::abs(causal_triangle_density(g) -
                                         static_cast<double>(tri.causal) / vt));
        for (int kind = 0; kind < 3; ++kind) {
            std::optional<double> lib, naive;
            try {
                lib = burstiness(g, static_cast<EventKind>(kind));
            } catch (const std::domain_error&) {}
            try {
                naive = oracle::naive_burstiness(g, kind);
            } catch (const std::domain_error&) {}
            if (lib.has_value() != naive.has_value()) {
                c.detail = "burstiness emptiness disagrees, instance " + std::to_string(i);
                return c;
            }
            if (lib) worst = std::max(worst, std::abs(*lib - *naive));
        }
    }
    if (worst >= kMeasureOracleTol) {
        std::ostringstream os;
        os << "worst oracle deviation " << worst << " (tol " << kMeasureOracleTol << ")";
        c.detail = os.str();
        return c;
    }

    const TemporalGraph persist =
        TemporalGraph::from_contacts(2, {{0, 1, 1}, {0, 1, 2}}, false);
    const TemporalGraph tri_slice =
        TemporalGraph::from_contacts(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}, true);
    const TemporalGraph tri_spread =
        TemporalGraph::from_contacts(3, {{0, 1, 1}, {1, 2, 2}, {2, 0, 3}}, true);
    if (edge_persistence(persist) != 0.5 || triangle_density(tri_slice) != 1.0 / 3.0 ||
        causal_triangle_density(tri_spread) != 1.0 / 9.0) {
        c.detail = "hand-derived toy values not reproduced exactly";
        return c;
    }
    c.passed = true;
    std::ostringstream os;
    os << "100 instances, worst deviation " << worst << " (tol " << kMeasureOracleTol
       << "); toys 1/2, 1/3, 1/9 exact";
    c.detail = os.str();
    return c;
}

Criterion ac10_performance() {
    Criterion c{"AC10 refinement speed and sampling scalability"};
    const TemporalGraph big = random_fixed_contacts(5000, 2000, 1'000'000, true, 0xACA000);
    const auto t0 = Clock::now();
    const ColorAssignment colors = refine_active(big);
    const double refine_secs = seconds_since(t0);
    if (refine_secs >= kRefinePerfBudgetSeconds) {
        std::ostringstream os;
        os << "stable refinement of systematic 1e6-contact graph took " << refine_secs
           << "s (budget " << kRefinePerfBudgetSeconds << "s)";
        c.detail = os.str();
        return c;
    }

    // Sampling cost ladder: per-slice budget r doubles; chain wall time per
    // attempted move must stay within 2x across the ladder. A zero-attempt
    // run measures the fixed setup cost (copy, slice structures, assembly)
    // which is not part of the linear-in-T*r claim.
    const TemporalGraph mid = random_fixed_contacts(2000, 500, 100'000, true, 0xACA001);
    const auto timed_run = [&](std::uint64_t r) {
        SamplerConfig cfg;
        cfg.depth = 1;
        cfg.rewirings_per_slice = r;
        cfg.master_seed = 0xACA002;
        const auto s0 = Clock::now();
        const SampleResult s = tnest_sample(mid, cfg);
        return std::pair<double, std::uint64_t>{seconds_since(s0), s.stats.attempted};
    };
    const double setup_secs = timed_run(0).first;
    std::vector<double> per_attempt;
    for (std::uint64_t r : {4000, 8000, 16000, 32000}) {
        const auto [secs, attempted] = timed_run(r);
        per_attempt.push_back((secs - setup_secs) / static_cast<double>(attempted));
    }
    const auto [lo, hi] = std::minmax_element(per_attempt.begin(), per_attempt.end());
    const double spread = *hi / *lo;
    c.passed = spread <= kScalingSlack;
    std::ostringstream os;
    os << "stable refinement (depth " << colors.depth() << ", "
       << colors.class_count() << " classes) of 1e6 contacts in " << refine_secs
       << "s (budget " << kRefinePerfBudgetSeconds
       << "s); sampling time per attempt spread " << spread << "x over T*r ladder (cap "
       << kScalingSlack << "x)";
    c.detail = os.str();
    return c;
}

Criterion ac11_dataset() {
    Criterion c{"AC11 conference dataset reference numbers"};
    std::string path = "data/ht09.tsv";
    if (const char* env = std::getenv("TNEST_HT09")) path = env;
    if (!std::filesystem::exists(path) && std::filesystem::exists("../" + path)) {
        path = "../" + path;
    }
    if (!std::filesystem::exists(path)) {
        c.skipped = true;
        c.detail = "dataset not found at " + path +
                   " (set TNEST_HT09 or run scripts/fetch_ht09.sh)";
        return c;
    }

    const TemporalGraph g = parse_edge_list_file(path, false).graph;
    std::ostringstream os;
    bool ok = true;

    const std::uint32_t depth = stable_depth(g);
    os << "stable depth " << depth << " (want 4)";
    ok = ok && depth == 4;

    const std::uint64_t moves_stable = count_rewirings(g, std::nullopt);
    const std::uint64_t moves_d1 = count_rewirings(g, 1);
    os << "; rewirings stable " << moves_stable << " (want 1), depth-1 " << moves_d1
       << " (want 698)";
    ok = ok && moves_stable == 1 && moves_d1 == 698;

    const double pers = edge_persistence(g);
    os << "; persistence " << pers << " (want 0.891 +- " << kPublishedRounding3 << ")";
    ok = ok && std::abs(pers - 0.891) <= kPublishedRounding3;

    const double tri = triangle_density(g);
    os << "; triangles per temporal node " << tri << " (want 157 +- "
       << kPublishedRounding0 << ")";
    ok = ok && std::abs(tri - 157.0) <= kPublishedRounding0;

    double mean_pers = 0;
    for (std::uint64_t k = 0; k < 10; ++k) {
        SamplerConfig cfg;
        cfg.depth = std::nullopt;
        cfg.master_seed = Rng::derive_stream(0xACB000, stream_tag::sample_index | k);
        mean_pers += edge_persistence(tnest_sample(g, cfg).graph);
    }
    mean_pers /= 10.0;
    os << "; stable-chain mean persistence over 10 samples " << mean_pers
       << " (want 0.890 +- " << kSampleMeanTol << ")";
    ok = ok && std::abs(mean_pers - 0.890) <= kSampleMeanTol + kPublishedRounding3;

    c.passed = ok;
    c.detail = os.str();
    return c;
}

}  // namespace

int main() {
    std::vector<Criterion> results;
    const auto run = [&](Criterion (*fn)()) {
        const auto t0 = Clock::now();
        Criterion c = fn();
        const double secs = seconds_since(t0);
        std::ostringstream line;
        line << (c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL") << ' ' << c.name << " ("
             << std::fixed << std::setprecision(2) << secs << "s)";
        std::cout << line.str();
        if (!c.detail.empty()) std::cout << "\n     " << c.detail;
        std::cout << std::endl;
        results.push_back(std::move(c));
    };

    run(ac1_refinement_oracle);
    run(ac2_color_preservation);
    run(ac3_closure_equals_enumeration);
    run(ac4_uniformity);
    run(ac5_katz_preservation);
    run(ac6_katz_triple);
    run(ac7_sae_curve);
    run(ac8_baseline_invariants);
    run(ac9_measure_oracles);
    run(ac10_performance);
    run(ac11_dataset);

    int failures = 0, skips = 0;
    for (const Criterion& c : results) {
        if (c.skipped) ++skips;
        else if (!c.passed) ++failures;
    }
    std::cout << "\n" << (results.size() - failures - skips) << " passed, " << skips
              << " skipped, " << failures << " failed of " << results.size()
              << " criteria" << std::endl;
    return failures == 0 ? 0 : 1;
}
