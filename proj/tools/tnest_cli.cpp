// Command-line front end: refine / sample / measure / compare / verify.
// Every file written embeds the full run configuration as '#' comment
// lines (CSV, edge lists) or a "config" object (JSON), so any artifact
// can be reproduced byte for byte from its own header.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tnest/measures.hpp"
#include "tnest/refinement.hpp"
#include "tnest/rng.hpp"
#include "tnest/sampler.hpp"
#include "tnest/temporal_graph.hpp"
#include "tnest/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tnest;

namespace {

constexpr const char* kToolName = "tnest";
constexpr const char* kToolVersion = "0.1.0";

// Thrown for argument values CLI11 cannot reject on its own
// (e.g. an unknown method name). Mapped to exit code 1.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string subcommand;
    std::string input;
    bool directed = true;
    std::vector<std::string> methods{"tnest"};
    std::string depth = "1";  // non-negative integer or "inf"
    std::uint64_t rewirings = 0;  // attempted moves per slice; 0 = scale by contacts
    double rewirings_per_contact = 20.0;
    std::uint64_t samples = 1;
    std::uint64_t seed = 1;
    double alpha = 0.1;
    double beta = 1.0;
    double sae_floor = 1e-16;
    std::string output_dir;
    std::string format = "csv";
};

// Shortest round-trip decimal representation.
std::string fmt(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

json config_json(const RunConfig& rc) {
    return json{{"subcommand", rc.subcommand},
                {"input", rc.input},
                {"directed", rc.directed},
                {"methods", rc.methods},
                {"depth", rc.depth},
                {"rewirings", rc.rewirings},
                {"rewirings_per_contact", rc.rewirings_per_contact},
                {"samples", rc.samples},
                {"seed", rc.seed},
                {"alpha", rc.alpha},
                {"beta", rc.beta},
                {"sae_floor", rc.sae_floor},
                {"output_dir", rc.output_dir},
                {"format", rc.format}};
}

void write_config_comments(std::ostream& os, const RunConfig& rc) {
    os << "# tool: " << kToolName << ' ' << kToolVersion << '\n'
       << "# subcommand: " << rc.subcommand << '\n'
       << "# input: " << rc.input << '\n'
       << "# directed: " << (rc.directed ? "true" : "false") << '\n'
       << "# methods: " << join(rc.methods, ',') << '\n'
       << "# depth: " << rc.depth << '\n'
       << "# rewirings: " << rc.rewirings << '\n'
       << "# rewirings_per_contact: " << fmt(rc.rewirings_per_contact) << '\n'
       << "# samples: " << rc.samples << '\n'
       << "# seed: " << rc.seed << '\n'
       << "# alpha: " << fmt(rc.alpha) << '\n'
       << "# beta: " << fmt(rc.beta) << '\n'
       << "# sae_floor: " << fmt(rc.sae_floor) << '\n'
       << "# output_dir: " << rc.output_dir << '\n'
       << "# format: " << rc.format << '\n';
}

std::optional<std::uint32_t> parse_depth(const std::string& s) {
    if (s == "inf" || s == "stable") return std::nullopt;
    std::uint32_t value = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw UsageError("--depth must be a non-negative integer or \"inf\": " + s);
    }
    return value;
}

TemporalGraph load_graph(const RunConfig& rc) {
    ParseResult parsed = parse_edge_list_file(rc.input, rc.directed);
    if (parsed.duplicate_contacts != 0) {
        std::cerr << "note: ignored " << parsed.duplicate_contacts
                  << " duplicate contacts in " << rc.input << '\n';
    }
    return std::move(parsed.graph);
}

fs::path output_dir(const RunConfig& rc) {
    fs::path dir = rc.output_dir;
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + p.string() + " for writing");
    return os;
}

SamplerConfig sampler_config(const RunConfig& rc, const std::string& method,
                             std::uint64_t sample_index) {
    const std::optional<SampleMethod> m = method_from_name(method);
    if (!m) throw UsageError("unknown method: " + method);
    SamplerConfig cfg;
    cfg.method = *m;
    cfg.depth = parse_depth(rc.depth);
    if (rc.rewirings > 0) cfg.rewirings_per_slice = rc.rewirings;
    cfg.rewirings_per_contact = rc.rewirings_per_contact;
    cfg.master_seed =
        Rng::derive_stream(rc.seed, stream_tag::sample_index | sample_index);
    return cfg;
}

int cmd_refine(const RunConfig& rc) {
    const TemporalGraph g = load_graph(rc);
    RefineOptions opts;
    opts.max_depth = parse_depth(rc.depth);
    opts.seed = rc.seed;

    const auto t0 = std::chrono::steady_clock::now();
    const ColorAssignment colors = refine_active(g, opts);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const fs::path out = output_dir(rc) / "colors.csv";
    {
        std::ofstream os = open_out(out);
        write_config_comments(os, rc);
        os << "node,label,time,color\n";
        const auto nodes = colors.active_nodes();
        const auto cols = colors.active_colors();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            os << nodes[i].node << ',' << g.label(nodes[i].node) << ','
               << g.timestamp(nodes[i].time) << ',' << cols[i] << '\n';
        }
    }

    std::vector<std::string> history;
    for (std::size_t c : colors.class_count_history()) history.push_back(std::to_string(c));
    std::cout << "depth=" << colors.depth()
              << " converged=" << (colors.converged() ? "true" : "false")
              << " classes=" << colors.class_count()
              << " history=" << join(history, ',') << " active=" << colors.active_nodes().size()
              << " runtime=" << fmt(seconds) << "s\n"
              << "wrote " << out.string() << '\n';
    return 0;
}

int cmd_sample(const RunConfig& rc) {
    const TemporalGraph g = load_graph(rc);
    if (rc.samples == 0) {
        std::cout << "0 samples requested, nothing written\n";
        return 0;
    }
    const fs::path dir = output_dir(rc);
    const std::string method = rc.methods.front();

    json stats;
    stats["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    stats["config"] = config_json(rc);
    stats["samples"] = json::array();
    for (std::uint64_t k = 0; k < rc.samples; ++k) {
        const SamplerConfig cfg = sampler_config(rc, method, k);
        const SampleResult result = sample(g, cfg);
        std::ostringstream name;
        name << "sample_" << std::setw(3) << std::setfill('0') << k << ".tsv";
        {
            std::ofstream os = open_out(dir / name.str());
            write_config_comments(os, rc);
            os << "# sample_index: " << k << '\n'
               << "# sample_seed: " << cfg.master_seed << '\n';
            write_edge_list(os, result.graph);
        }
        stats["samples"].push_back(
            {{"index", k},
             {"seed", cfg.master_seed},
             {"file", name.str()},
             {"attempted", result.stats.attempted},
             {"accepted", result.stats.accepted},
             {"attempted_per_slice", result.stats.attempted_per_slice},
             {"accepted_per_slice", result.stats.accepted_per_slice}});
        std::cout << name.str() << ": attempted=" << result.stats.attempted
                  << " accepted=" << result.stats.accepted << '\n';
    }
    const fs::path stats_path = dir / "sample_stats.json";
    open_out(stats_path) << stats.dump(2) << '\n';
    std::cout << "wrote " << stats_path.string() << '\n';
    return 0;
}

json report_json(const MeasureReport& rep) {
    auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    return json{{"persistence", rep.persistence},
                {"triangle_density", rep.triangle_density},
                {"causal_triangle_density", rep.causal_triangle_density},
                {"burstiness_active", opt(rep.burstiness_active)},
                {"burstiness_send", opt(rep.burstiness_send)},
                {"burstiness_receive", opt(rep.burstiness_receive)},
                {"katz", rep.katz},
                {"communicability", rep.communicability},
                {"params",
                 {{"alpha", rep.params.alpha},
                  {"beta", rep.params.beta},
                  {"sae_floor", rep.params.sae_floor}}}};
}

int cmd_measure(const RunConfig& rc, bool centrality_csv) {
    const TemporalGraph g = load_graph(rc);
    const CentralityParams params{rc.alpha, rc.beta, rc.sae_floor};
    const MeasureReport rep = measure_all(g, params);

    const fs::path dir = output_dir(rc);
    const fs::path report_path = dir / "measures.json";
    json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["config"] = config_json(rc);
    j["measures"] = report_json(rep);
    open_out(report_path) << j.dump(2) << '\n';
    std::cout << "persistence=" << fmt(rep.persistence)
              << " triangles=" << fmt(rep.triangle_density)
              << " causal_triangles=" << fmt(rep.causal_triangle_density) << '\n'
              << "wrote " << report_path.string() << '\n';

    if (centrality_csv) {
        const fs::path table = dir / "centrality.csv";
        std::ofstream os = open_out(table);
        write_config_comments(os, rc);
        os << "node,label,katz,communicability\n";
        for (NodeId v = 0; v < g.node_count(); ++v) {
            os << v << ',' << g.label(v) << ',' << fmt(rep.katz[v]) << ','
               << fmt(rep.communicability[v]) << '\n';
        }
        std::cout << "wrote " << table.string() << '\n';
    }
    return 0;
}

struct Accumulator {
    std::vector<double> values;
    bool complete = true;  // false once any sample lacks the measure

    void add(const std::optional<double>& v) {
        if (v) values.push_back(*v);
        else complete = false;
    }
    double mean() const {
        double s = 0;
        for (double v : values) s += v;
        return s / static_cast<double>(values.size());
    }
    double stddev() const {  // population form, so one sample gives 0
        const double m = mean();
        double s = 0;
        for (double v : values) s += (v - m) * (v - m);
        return std::sqrt(s / static_cast<double>(values.size()));
    }
    void emit(std::ostream& os) const {
        if (complete && !values.empty()) {
            os << ',' << fmt(mean()) << ',' << fmt(stddev());
        } else {
            os << ",,";
        }
    }
};

int cmd_compare(const RunConfig& rc, bool depth_sweep) {
    const TemporalGraph g = load_graph(rc);
    if (rc.samples == 0) throw UsageError("--samples must be at least 1 for compare");
    const CentralityParams params{rc.alpha, rc.beta, rc.sae_floor};
    const MeasureReport original = measure_all(g, params);
    const fs::path dir = output_dir(rc);

    auto sae_pair = [&](const MeasureReport& rep) {
        return std::pair<double, double>{
            sum_absolute_error(original.katz, rep.katz, rc.sae_floor),
            sum_absolute_error(original.communicability, rep.communicability,
                               rc.sae_floor)};
    };

    if (depth_sweep) {
        const std::uint32_t stable = stable_depth(g, rc.seed);
        const fs::path out = dir / "sae_by_depth.csv";
        std::ofstream os = open_out(out);
        write_config_comments(os, rc);
        os << "depth,stable_depth,katz_sae_mean,katz_sae_std,"
              "communicability_sae_mean,communicability_sae_std\n";
        for (std::uint32_t d = 0; d <= stable; ++d) {
            RunConfig step = rc;
            step.depth = std::to_string(d);
            Accumulator katz_sae, comm_sae;
            for (std::uint64_t k = 0; k < rc.samples; ++k) {
                const SampleResult s = sample(g, sampler_config(step, "tnest", k));
                const auto [ks, cs] = sae_pair(measure_all(s.graph, params));
                katz_sae.add(ks);
                comm_sae.add(cs);
            }
            os << d << ',' << stable;
            katz_sae.emit(os);
            comm_sae.emit(os);
            os << '\n';
        }
        std::cout << "wrote " << out.string() << '\n';
        return 0;
    }

    const fs::path out = dir / "compare.csv";
    std::ofstream os = open_out(out);
    write_config_comments(os, rc);
    os << "method,samples,persistence_mean,persistence_std,"
          "triangle_density_mean,triangle_density_std,"
          "causal_triangle_density_mean,causal_triangle_density_std,"
          "burstiness_active_mean,burstiness_active_std,"
          "burstiness_send_mean,burstiness_send_std,"
          "burstiness_receive_mean,burstiness_receive_std,"
          "katz_sae_mean,katz_sae_std,communicability_sae_mean,communicability_sae_std\n";

    auto emit_row = [&](const std::string& name, const std::vector<MeasureReport>& reps) {
        Accumulator pers, tri, causal, ba, bs, br, ks, cs;
        for (const MeasureReport& r : reps) {
            pers.add(r.persistence);
            tri.add(r.triangle_density);
            causal.add(r.causal_triangle_density);
            ba.add(r.burstiness_active);
            bs.add(r.burstiness_send);
            br.add(r.burstiness_receive);
            const auto [k, c] = sae_pair(r);
            ks.add(k);
            cs.add(c);
        }
        os << name << ',' << reps.size();
        for (const Accumulator* a : {&pers, &tri, &causal, &ba, &bs, &br, &ks, &cs}) {
            a->emit(os);
        }
        os << '\n';
    };

    emit_row("original", {original});
    for (const std::string& method : rc.methods) {
        std::vector<MeasureReport> reps;
        for (std::uint64_t k = 0; k < rc.samples; ++k) {
            const SampleResult s = sample(g, sampler_config(rc, method, k));
            reps.push_back(measure_all(s.graph, params));
        }
        emit_row(method, reps);
    }
    std::cout << "wrote " << out.string() << '\n';
    return 0;
}

int cmd_verify(const RunConfig& rc, bool quick) {
    const auto results = run_property_suite(rc.seed, quick);
    bool all_passed = true;
    for (const PropertyResult& r : results) {
        all_passed = all_passed && r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
        std::ostringstream secs;
        secs.precision(2);
        secs << std::fixed << r.seconds;
        std::cout << " (" << secs.str() << "s)";
        if (!r.detail.empty()) std::cout << "  [" << r.detail << ']';
        std::cout << '\n';
    }
    std::cout << (all_passed ? "all properties passed" : "PROPERTY FAILURES") << '\n';
    return all_passed ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"temporal color refinement and neighborhood-preserving rewiring"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    RunConfig rc;
    if (const char* env = std::getenv("TNEST_OUT_DIR")) rc.output_dir = env;
    if (rc.output_dir.empty()) rc.output_dir = ".";
    bool undirected = false;
    bool quick = false;
    bool centrality_csv = false;
    bool depth_sweep = false;
    std::string method = "tnest";

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("-i,--input", rc.input, "edge list file (u v t per line)")
            ->required();
        cmd->add_flag("--undirected", undirected,
                      "treat contacts as undirected (stores both directions)");
        cmd->add_option("-o,--output-dir", rc.output_dir,
                        "output directory (default $TNEST_OUT_DIR or .)");
        cmd->add_option("--seed", rc.seed, "master seed recorded in all outputs");
    };

    CLI::App* refine = app.add_subcommand("refine", "compute temporal colors");
    add_input(refine);
    refine->add_option("--depth", rc.depth, "refinement depth or \"inf\" (default inf)");

    CLI::App* sampled = app.add_subcommand("sample", "draw randomized graphs");
    add_input(sampled);
    sampled->add_option("--method", method, "tnest|re|dss|rt|rc (default tnest)");
    sampled->add_option("--depth", rc.depth, "preserved depth or \"inf\" (default 1)");
    sampled->add_option("--rewirings", rc.rewirings,
                        "attempted moves per slice (default: 20 per contact)");
    sampled->add_option("--rewirings-per-contact", rc.rewirings_per_contact,
                        "per-slice attempts as a multiple of slice contacts");
    sampled->add_option("-k,--samples", rc.samples, "number of samples (default 1)");

    CLI::App* measure = app.add_subcommand("measure", "compute the measure report");
    add_input(measure);
    measure->add_option("--alpha", rc.alpha, "Katz damping (default 0.1)");
    measure->add_option("--beta", rc.beta, "communicability temperature (default 1)");
    measure->add_option("--sae-floor", rc.sae_floor, "lower cap for SAE values");
    measure->add_flag("--centrality-csv", centrality_csv,
                      "also write per-node centrality table");

    CLI::App* compare = app.add_subcommand(
        "compare", "average measures over samples of each method");
    add_input(compare);
    compare->add_option("--methods", rc.methods,
                        "methods to compare (default tnest)")
        ->delimiter(',');
    compare->add_option("--depth", rc.depth, "preserved depth or \"inf\" (default 1)");
    compare->add_option("--rewirings", rc.rewirings,
                        "attempted moves per slice (default: 20 per contact)");
    compare->add_option("--rewirings-per-contact", rc.rewirings_per_contact,
                        "per-slice attempts as a multiple of slice contacts");
    compare->add_option("-k,--samples", rc.samples, "samples per method (default 10)");
    compare->add_option("--alpha", rc.alpha, "Katz damping (default 0.1)");
    compare->add_option("--beta", rc.beta, "communicability temperature (default 1)");
    compare->add_option("--sae-floor", rc.sae_floor, "lower cap for SAE values");
    compare->add_flag("--depth-sweep", depth_sweep,
                      "emit SAE vs depth for the rewiring chain instead");

    CLI::App* verify = app.add_subcommand("verify", "run the property suite");
    verify->add_option("--seed", rc.seed, "seed for generated instances");
    verify->add_flag("--quick", quick, "trimmed suite (under half a minute)");
    verify->add_option("-o,--output-dir", rc.output_dir, "unused, accepted for symmetry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (compare->parsed() && compare->count("--samples") == 0) rc.samples = 10;
    if (refine->parsed() && refine->count("--depth") == 0) rc.depth = "inf";
    rc.directed = !undirected;
    rc.methods = compare->parsed() ? rc.methods : std::vector<std::string>{method};
    for (CLI::App* cmd : {refine, sampled, measure, compare, verify}) {
        if (cmd->parsed()) rc.subcommand = cmd->get_name();
    }
    if (!verify->parsed()) rc.format = measure->parsed() ? "json" : "csv";

    try {
        if (refine->parsed()) return cmd_refine(rc);
        if (sampled->parsed()) return cmd_sample(rc);
        if (measure->parsed()) return cmd_measure(rc, centrality_csv);
        if (compare->parsed()) return cmd_compare(rc, depth_sweep);
        if (verify->parsed()) return cmd_verify(rc, quick);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
