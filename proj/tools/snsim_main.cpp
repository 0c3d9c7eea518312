// snsim command-line tool: simulate | sweep | survey-import | check-theorem
//
// Exit codes: 0 success, 1 I/O or data failure, 2 usage error.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <list>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snsim/analysis.hpp"
#include "snsim/cascade.hpp"
#include "snsim/errors.hpp"
#include "snsim/feature_space.hpp"
#include "snsim/graph.hpp"
#include "snsim/svg.hpp"
#include "snsim/util.hpp"

namespace {

constexpr const char* kToolVersion = "snsim 1.0.0";

using snsim::fmt_double;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// run manifest: flat "key = value" lines, enough to replay a run exactly
// ---------------------------------------------------------------------------

class Manifest {
public:
    void set(const std::string& key, const std::string& value) {
        for (auto& [k, v] : entries_)
            if (k == key) {
                v = value;
                return;
            }
        entries_.emplace_back(key, value);
    }

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : entries_)
            if (k == key) return &v;
        return nullptr;
    }

    std::string serialize() const {
        std::string out;
        for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
        return out;
    }

    static Manifest parse(const std::string& text) {
        Manifest m;
        std::size_t line_no = 0;
        for (const std::string& raw : snsim::split(text, '\n')) {
            ++line_no;
            std::string_view line = snsim::trim(raw);
            if (line.empty()) continue;
            std::size_t sep = line.find(" = ");
            if (sep == std::string_view::npos) {
                // a trimmed "key = " line from an empty value
                if (line.size() > 2 && line.substr(line.size() - 2) == " =")
                    sep = line.size() - 2;
                else
                    throw snsim::ParseError(line_no, "manifest line is not 'key = value'");
            }
            std::string_view value =
                (sep + 3 <= line.size()) ? line.substr(sep + 3) : std::string_view{};
            m.set(std::string(snsim::trim(line.substr(0, sep))),
                  std::string(snsim::trim(value)));
        }
        return m;
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// Flag values win over manifest values win over defaults; a required key
// missing everywhere is a usage error.
class ResolvedArgs {
public:
    ResolvedArgs(std::map<std::string, std::string> from_flags, const Manifest* manifest)
        : flags_(std::move(from_flags)), manifest_(manifest) {}

    std::string require(const std::string& key) const {
        if (auto v = lookup(key)) return *v;
        throw UsageError("missing required option --" + flag_name(key));
    }

    std::string get_or(const std::string& key, const std::string& fallback) const {
        if (auto v = lookup(key)) return *v;
        return fallback;
    }

    std::optional<std::string> lookup(const std::string& key) const {
        auto it = flags_.find(key);
        if (it != flags_.end()) return it->second;
        if (manifest_)
            if (const std::string* v = manifest_->find(key)) return *v;
        return std::nullopt;
    }

private:
    static std::string flag_name(std::string key) {
        std::replace(key.begin(), key.end(), '_', '-');
        return key;
    }

    std::map<std::string, std::string> flags_;
    const Manifest* manifest_;
};

double parse_double_arg(const std::string& text, const std::string& name) {
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw UsageError("bad value for --" + name + ": '" + text + "'");
    return value;
}

std::uint64_t parse_u64_arg(const std::string& text, const std::string& name) {
    std::uint64_t value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw UsageError("bad value for --" + name + ": '" + text + "'");
    return value;
}

std::vector<std::string> parse_list(const std::string& text) {
    std::vector<std::string> items;
    if (snsim::trim(text).empty()) return items;
    for (const auto& part : snsim::split(text, ',')) {
        std::string item(snsim::trim(part));
        if (!item.empty()) items.push_back(std::move(item));
    }
    return items;
}

std::string read_input_file(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw UsageError("input file does not exist: " + path);
    try {
        return snsim::read_text_file(path);
    } catch (const std::exception& e) {
        throw IoError(e.what());
    }
}

snsim::Graph load_graph_file(const std::string& path, std::string* digest_out) {
    std::string text = read_input_file(path);
    if (digest_out) *digest_out = snsim::fnv1a64_hex(text);
    snsim::IngestStats stats;
    snsim::Graph graph;
    try {
        graph = snsim::load_edge_list(text, &stats);
    } catch (const snsim::ParseError& e) {
        throw IoError(path + ": " + e.what());
    }
    std::cerr << "loaded graph: " << graph.node_count() << " nodes, "
              << graph.edge_count() << " edges (" << stats.self_loops_dropped
              << " self-loops dropped, " << stats.duplicates_collapsed
              << " duplicates collapsed)\n";
    return graph;
}

// Seed nodes are given as original file ids; map them to dense ids.
std::vector<snsim::NodeId> map_seed_nodes(const snsim::Graph& graph,
                                          const std::vector<std::string>& tokens) {
    std::map<std::uint64_t, snsim::NodeId> reverse;
    for (snsim::NodeId u = 0; u < graph.node_count(); ++u)
        reverse[graph.external_id(u)] = u;
    std::vector<snsim::NodeId> seeds;
    for (const auto& token : tokens) {
        std::uint64_t original = parse_u64_arg(token, "seed-nodes");
        auto it = reverse.find(original);
        if (it == reverse.end())
            throw UsageError("seed node " + token + " is not in the graph");
        seeds.push_back(it->second);
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    return seeds;
}

void write_output_file(const std::string& path, std::string_view content) {
    try {
        snsim::write_text_file(path, content);
    } catch (const std::exception& e) {
        throw IoError(e.what());
    }
}

struct ModelArgs {
    std::string graph_path;
    std::string graph_digest;
    snsim::Graph graph;
    snsim::SimConfig cfg;
    std::string seed_nodes_text; // canonical comma list of original ids
};

// Shared between simulate and sweep: graph + model parameters + rng seed.
// The sweep takes its epsilon values from --epsilons, so there the single
// --epsilon flag is optional.
ModelArgs resolve_model_args(const ResolvedArgs& args, bool epsilon_required) {
    ModelArgs m;
    m.graph_path = args.require("graph");
    m.graph = load_graph_file(m.graph_path, &m.graph_digest);

    m.cfg.epsilon = epsilon_required
                        ? parse_double_arg(args.require("epsilon"), "epsilon")
                        : parse_double_arg(args.get_or("epsilon", "0"), "epsilon");
    m.cfg.x2 = parse_double_arg(args.require("x2"), "x2");
    m.cfg.p = parse_double_arg(args.get_or("p", "0.001"), "p");
    m.cfg.delta = parse_double_arg(args.get_or("delta", "1"), "delta");
    std::uint64_t horizon = parse_u64_arg(args.get_or("horizon", "10000"), "horizon");
    if (horizon < 1 || horizon > 0xFFFFFFFFull)
        throw UsageError("horizon out of range");
    m.cfg.horizon = static_cast<std::uint32_t>(horizon);
    m.cfg.rng_seed = parse_u64_arg(args.require("rng_seed"), "rng-seed");

    std::vector<std::string> seed_tokens = parse_list(args.get_or("seed_nodes", ""));
    m.cfg.initial_seeds = map_seed_nodes(m.graph, seed_tokens);
    std::string joined;
    for (std::size_t i = 0; i < m.cfg.initial_seeds.size(); ++i) {
        if (i) joined += ',';
        joined += std::to_string(m.graph.external_id(m.cfg.initial_seeds[i]));
    }
    m.seed_nodes_text = joined;

    try {
        m.cfg.validate(m.graph.node_count());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    // replaying a manifest against a modified graph file is not a replay
    if (auto recorded = args.lookup("graph_digest"))
        if (*recorded != m.graph_digest)
            throw IoError("graph file digest mismatch: manifest has " + *recorded +
                          ", file is " + m.graph_digest);
    return m;
}

void fill_common_manifest(Manifest& manifest, const std::string& command,
                          const ModelArgs& m) {
    manifest.set("tool", kToolVersion);
    manifest.set("command", command);
    manifest.set("graph", m.graph_path);
    manifest.set("graph_digest", m.graph_digest);
    manifest.set("epsilon", fmt_double(m.cfg.epsilon));
    manifest.set("x2", fmt_double(m.cfg.x2));
    manifest.set("p", fmt_double(m.cfg.p));
    manifest.set("delta", fmt_double(m.cfg.delta));
    manifest.set("horizon", std::to_string(m.cfg.horizon));
    manifest.set("seed_nodes", m.seed_nodes_text);
    manifest.set("rng_seed", std::to_string(m.cfg.rng_seed));
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int run_simulate(const ResolvedArgs& args) {
    ModelArgs m = resolve_model_args(args, /*epsilon_required=*/true);
    const std::string out_path = args.require("out");
    const std::string svg_path = args.get_or("svg", "");

    snsim::CascadeTrace trace = snsim::run(m.graph, m.cfg);

    std::ostringstream csv;
    snsim::write_trace_csv(trace, csv);
    write_output_file(out_path, csv.str());

    if (!svg_path.empty()) {
        snsim::LineChart chart;
        chart.title = "adoption of the new site";
        chart.x_label = "step (days)";
        chart.y_label = "adopter fraction";
        for (std::size_t i = 0; i < trace.rows.size(); ++i) {
            chart.xs.push_back(static_cast<double>(trace.rows[i].step));
            chart.ys.push_back(trace.fraction_at(i));
        }
        write_output_file(svg_path, snsim::render_line_chart(chart));
    }

    Manifest manifest;
    fill_common_manifest(manifest, "simulate", m);
    manifest.set("out", out_path);
    if (!svg_path.empty()) manifest.set("svg", svg_path);
    write_output_file(out_path + ".manifest", manifest.serialize());

    std::cerr << "wrote " << out_path << " (" << trace.rows.size() << " rows, "
              << "terminal fraction " << fmt_double(trace.terminal_fraction())
              << " at step " << trace.terminal_step() << ")\n";
    return 0;
}

int run_sweep(const ResolvedArgs& args) {
    ModelArgs m = resolve_model_args(args, /*epsilon_required=*/false);
    const std::string out_path = args.require("out");

    std::vector<double> epsilons;
    for (const auto& token : parse_list(args.require("epsilons")))
        epsilons.push_back(parse_double_arg(token, "epsilons"));
    if (epsilons.empty()) throw UsageError("--epsilons must name at least one value");
    for (double e : epsilons)
        if (!(e >= 0.0 && e <= 1.0))
            throw UsageError("epsilon " + fmt_double(e) + " outside [0,1]");
    std::uint64_t replicates = parse_u64_arg(args.get_or("replicates", "1"), "replicates");
    if (replicates < 1) throw UsageError("--replicates must be at least 1");

    snsim::SweepResult result =
        snsim::sweep_epsilon(m.graph, m.cfg, epsilons, replicates);

    std::ostringstream csv;
    snsim::write_sweep_csv(result, csv);
    write_output_file(out_path, csv.str());

    Manifest manifest;
    fill_common_manifest(manifest, "sweep", m);
    std::string eps_joined, seeds_joined;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (i) eps_joined += ',';
        eps_joined += fmt_double(epsilons[i]);
    }
    for (std::uint64_t i = 0; i < replicates; ++i) {
        if (i) seeds_joined += ',';
        seeds_joined += std::to_string(snsim::mix_seed(m.cfg.rng_seed, i));
    }
    manifest.set("epsilons", eps_joined);
    manifest.set("replicates", std::to_string(replicates));
    manifest.set("derived_seeds", seeds_joined);
    manifest.set("out", out_path);
    write_output_file(out_path + ".manifest", manifest.serialize());

    std::cerr << "wrote " << out_path << " (" << result.rows.size() << " rows)\n";
    return 0;
}

int run_survey_import(const ResolvedArgs& args) {
    const std::string ratings_path = args.require("ratings");
    const std::string availability_path = args.require("availability");
    const std::string new_sns = args.require("new_sns");
    const std::string old_sns = args.require("old_sns");
    const std::string out_path = args.require("out");

    std::string ratings_csv = read_input_file(ratings_path);
    std::string availability_csv = read_input_file(availability_path);

    snsim::FeatureSpace fs = [&] {
        try {
            snsim::SurveyRatings survey =
                snsim::load_survey_csv(ratings_csv, availability_csv);
            return snsim::ingest_survey_ratings(survey);
        } catch (const snsim::ParseError& e) {
            throw IoError(e.what());
        } catch (const std::invalid_argument& e) {
            throw IoError(e.what());
        }
    }();

    double x2 = 0.0;
    try {
        x2 = fs.novelty(new_sns, old_sns);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what()); // bad --new-sns / --old-sns value
    }

    std::ostringstream csv;
    snsim::write_feature_space_csv(fs, csv);
    write_output_file(out_path, csv.str());

    std::cout << "x2=" << fmt_double(x2) << "\n";
    return 0;
}

int run_check_theorem(const ResolvedArgs& args) {
    const double epsilon = parse_double_arg(args.require("epsilon"), "epsilon");
    const double x2 = parse_double_arg(args.require("x2"), "x2");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw UsageError("--epsilon outside [0,1]");
    if (!(x2 >= 0.0 && x2 <= 1.0)) throw UsageError("--x2 outside [0,1]");

    if (snsim::can_diffusive_shift(epsilon, x2)) {
        std::cout << "POSSIBLE\n";
        return 0;
    }
    std::cout << "IMPOSSIBLE\n";

    snsim::TheoremCheckParams params;
    params.trials = parse_u64_arg(args.get_or("trials", "100"), "trials");
    if (params.trials < 1) throw UsageError("--trials must be at least 1");
    std::uint64_t n = parse_u64_arg(args.get_or("n", "200"), "n");
    if (n < 1 || n > 100000) throw UsageError("--n out of range");
    params.min_nodes = params.max_nodes = static_cast<std::uint32_t>(n);
    double q = parse_double_arg(args.get_or("edge_prob", "0.05"), "edge-prob");
    if (!(q >= 0.0 && q <= 1.0)) throw UsageError("--edge-prob outside [0,1]");
    params.min_edge_prob = params.max_edge_prob = q;
    params.rng_seed = parse_u64_arg(args.get_or("rng_seed", "12345"), "rng-seed");

    snsim::TheoremReport report = snsim::verify_theorem1(params);
    std::cout << report.summary() << "\n";
    return report.all_passed() ? 0 : 1;
}

// ---------------------------------------------------------------------------

// Every option is a string at the CLI layer; typing and range checks happen
// after the manifest merge so both sources go through the same validation.
std::map<std::string, std::string>
collect_flags(CLI::App* cmd, const std::map<std::string, std::string*>& bindings) {
    std::map<std::string, std::string> given;
    for (const auto& [key, storage] : bindings) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (cmd->count(flag) > 0) given[key] = *storage;
    }
    return given;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator of user migration between competing social networks"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::map<std::string, std::map<std::string, std::string*>> bindings;
    std::list<std::string> storage_pool; // stable addresses for CLI11 bindings

    auto add_string_opt = [&](CLI::App* cmd, const std::string& command,
                              const std::string& key, const char* help) {
        std::string* storage = &storage_pool.emplace_back();
        bindings[command][key] = storage;
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        cmd->add_option(flag, *storage, help);
    };

    auto add_model_opts = [&](CLI::App* cmd, const std::string& command) {
        add_string_opt(cmd, command, "graph", "edge-list file of the social graph");
        add_string_opt(cmd, command, "epsilon", "attachment factor in [0,1]");
        add_string_opt(cmd, command, "x2", "novelty share of the new site in [0,1]");
        add_string_opt(cmd, command, "p", "non-diffusive probability per day (default 0.001)");
        add_string_opt(cmd, command, "delta", "daily time span (default 1)");
        add_string_opt(cmd, command, "horizon", "maximum number of days (default 10000)");
        add_string_opt(cmd, command, "seed_nodes", "comma list of initially dual nodes (file ids)");
        add_string_opt(cmd, command, "rng_seed", "64-bit random seed");
        add_string_opt(cmd, command, "out", "output CSV path");
        add_string_opt(cmd, command, "from_manifest", "replay settings from a run manifest");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run one cascade, write trace CSV");
    add_model_opts(simulate, "simulate");
    add_string_opt(simulate, "simulate", "svg", "also write an adoption-curve SVG");

    CLI::App* sweep = app.add_subcommand("sweep", "vary epsilon over paired replicates");
    add_model_opts(sweep, "sweep");
    add_string_opt(sweep, "sweep", "epsilons", "comma list of epsilon values");
    add_string_opt(sweep, "sweep", "replicates", "replicates per epsilon (default 1)");

    CLI::App* survey = app.add_subcommand("survey-import", "derive a feature space and x2 from survey CSVs");
    add_string_opt(survey, "survey-import", "ratings", "CSV: respondent,feature,rating");
    add_string_opt(survey, "survey-import", "availability", "CSV: feature,sns_list");
    add_string_opt(survey, "survey-import", "new_sns", "id of the new site");
    add_string_opt(survey, "survey-import", "old_sns", "id of the incumbent site");
    add_string_opt(survey, "survey-import", "out", "output feature-space CSV path");

    CLI::App* theorem = app.add_subcommand("check-theorem", "impossibility verdict for (epsilon, x2) plus randomized verification");
    add_string_opt(theorem, "check-theorem", "epsilon", "attachment factor in [0,1]");
    add_string_opt(theorem, "check-theorem", "x2", "novelty share in [0,1]");
    add_string_opt(theorem, "check-theorem", "trials", "random trials (default 100)");
    add_string_opt(theorem, "check-theorem", "n", "nodes per random graph (default 200)");
    add_string_opt(theorem, "check-theorem", "edge_prob", "edge probability (default 0.05)");
    add_string_opt(theorem, "check-theorem", "rng_seed", "seed for the verification harness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        const std::string command = cmd->get_name();

        Manifest manifest;
        bool have_manifest = false;
        auto flags = collect_flags(cmd, bindings[command]);
        if (auto it = flags.find("from_manifest"); it != flags.end()) {
            manifest = Manifest::parse(read_input_file(it->second));
            const std::string* recorded = manifest.find("command");
            if (!recorded || *recorded != command)
                throw UsageError("manifest was not written by '" + command + "'");
            have_manifest = true;
            flags.erase(it);
        }
        ResolvedArgs args(std::move(flags), have_manifest ? &manifest : nullptr);

        if (command == "simulate") return run_simulate(args);
        if (command == "sweep") return run_sweep(args);
        if (command == "survey-import") return run_survey_import(args);
        return run_check_theorem(args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
