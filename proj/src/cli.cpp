#include "wncs/cli.hpp"

#include "wncs/config.hpp"
#include "wncs/montecarlo.hpp"
#include "wncs/plant.hpp"
#include "wncs/reliability.hpp"
#include "wncs/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>

namespace wncs::cli {

namespace {

using Json = config::Json;

// The link being evaluated by `reliability` and `simulate`.
struct Query {
    ScenarioCase kind = ScenarioCase::noise;
    ChannelParams channel;
    std::optional<LoopTopology> topology;
    std::size_t loop = 0;
    double pi = 1.0;
    std::optional<EigenAnalysis> analysis;
    std::optional<double> target_alpha;
    std::optional<McConfig> mc;
};

std::uint64_t parse_seed_text(const std::string& text, const char* source) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size() || text.front() == '-') throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw config_error(source, "expected an unsigned 64-bit integer, got '" + text + "'");
    }
}

// Seed precedence: --seed flag, config "mc" block, WNCS_SEED, built-in default.
std::uint64_t resolve_default_seed() {
    if (const char* env = std::getenv("WNCS_SEED"); env && *env) return parse_seed_text(env, "WNCS_SEED");
    return kDefaultSeed;
}

Query load_query(const std::string& path) {
    const Json doc = config::read_json_file(path);
    auto fail = [&](const std::string& field, const std::string& msg) { return config_error(path + "#" + field, msg); };
    if (!doc.is_object()) throw fail("/", "config must be a JSON object");
    static const char* const kKnown[] = {"case", "channel", "topology", "loop", "pi", "plant", "tol", "target_alpha", "mc"};
    for (const auto& item : doc.items()) {
        bool known = false;
        for (const char* k : kKnown) known = known || item.key() == k;
        if (!known) throw fail("/" + item.key(), "unknown field");
    }

    Query q;
    try {
        if (doc.contains("case")) {
            const auto& c = doc["case"];
            if (!c.is_string() || !parse_case(c.get<std::string>())) {
                throw config_error("/case",
                                   "expected one of noise, single_interference, full_interference, "
                                   "full_interference_exact");
            }
            q.kind = *parse_case(c.get<std::string>());
        }
        if (q.kind == ScenarioCase::noise) {
            if (!doc.contains("channel")) throw config_error("/channel", "missing channel block");
            q.channel = config::parse_channel(doc["channel"], "/channel");
        } else {
            if (!doc.contains("topology")) throw config_error("/topology", "missing topology block");
            q.topology = config::parse_topology(doc["topology"], "/topology");
            if (doc.contains("loop")) q.loop = static_cast<std::size_t>(config::get_uint(doc, "loop", ""));
            if (q.loop >= q.topology->loops()) throw config_error("/loop", "loop index out of range");
            if (q.kind == ScenarioCase::single_interference && q.topology->loops() != 2) {
                throw config_error("/topology/distances", "single_interference requires exactly 2 loops");
            }
        }

        const bool has_pi = doc.contains("pi");
        const bool has_plant = doc.contains("plant");
        if (has_pi == has_plant) throw config_error("/", "exactly one of \"pi\" or \"plant\" is required");
        if (has_pi) {
            q.pi = config::get_number(doc, "pi", "");
            if (!(q.pi >= 1.0)) throw config_error("/pi", "unstable product must be >= 1");
        } else {
            if (!doc["plant"].is_string()) throw config_error("/plant", "expected a file path");
            std::filesystem::path plant_path = doc["plant"].get<std::string>();
            if (plant_path.is_relative()) plant_path = std::filesystem::path(path).parent_path() / plant_path;
            const double tol = config::get_number_or(doc, "tol", "", kDefaultEigenTol);
            q.analysis = eigen_analyze(load_plant(plant_path.string()), tol);
            q.pi = q.analysis->unstable_product;
        }
        if (doc.contains("target_alpha")) {
            if (q.kind != ScenarioCase::noise) throw config_error("/target_alpha", "only supported for the noise case");
            q.target_alpha = config::get_number(doc, "target_alpha", "");
        }
        if (doc.contains("mc")) q.mc = config::parse_mc(doc["mc"], "/mc", McConfig{.seed = resolve_default_seed()});
    } catch (const config_error& e) {
        if (e.field().rfind(path, 0) == 0) throw;
        throw config_error(path + "#" + e.field(), std::string(e.what()).substr(e.field().size() + 2));
    }
    return q;
}

ReliabilityResult closed_form(const Query& q) {
    switch (q.kind) {
        case ScenarioCase::noise: return alpha_noise(q.channel, q.pi);
        case ScenarioCase::single_interference: return alpha_single_interference(*q.topology, q.loop, q.pi);
        case ScenarioCase::full_interference: return alpha_full_interference(*q.topology, q.loop, q.pi);
        case ScenarioCase::full_interference_exact: return alpha_full_interference_exact(*q.topology, q.loop, q.pi);
    }
    throw std::logic_error("unhandled case");
}

Json analysis_json(const EigenAnalysis& a) {
    return Json{{"magnitudes", a.magnitudes},
                {"unstable_product", a.unstable_product},
                {"rate_threshold_bits", a.rate_threshold_bits}};
}

int cmd_analyze(const std::string& plant_path, double tol, bool json, std::ostream& out) {
    const EigenAnalysis a = eigen_analyze(load_plant(plant_path), tol);
    if (json) {
        out << analysis_json(a).dump() << '\n';
        return kExitOk;
    }
    out << "eigenvalue magnitudes:\n";
    for (std::size_t k = 0; k < a.magnitudes.size(); ++k) {
        out << "  [" << k << "] " << format_number(a.magnitudes[k]) << '\n';
    }
    out << std::left << std::setw(20) << "unstable product" << format_number(a.unstable_product) << '\n';
    out << std::left << std::setw(20) << "rate threshold" << format_number(a.rate_threshold_bits)
        << " bits/symbol\n";
    return kExitOk;
}

int cmd_reliability(const std::string& config_path, bool json, std::ostream& out) {
    const Query q = load_query(config_path);
    const ReliabilityResult r = closed_form(q);
    std::optional<double> power;
    if (q.target_alpha) power = required_power(q.channel, q.pi, *q.target_alpha);

    if (json) {
        Json j{{"case", to_string(q.kind)},
               {"method", to_string(r.method)},
               {"pi", q.pi},
               {"rate_threshold_bits", rate_threshold(q.pi)},
               {"alpha", r.value},
               {"underflow", r.underflow}};
        if (q.analysis) j["plant"] = analysis_json(*q.analysis);
        if (power) {
            j["target_alpha"] = *q.target_alpha;
            j["required_power"] = *power;
        }
        out << j.dump() << '\n';
        return kExitOk;
    }
    out << "alpha = " << format_number(r.value) << "  (" << to_string(r.method) << ", pi = " << format_number(q.pi)
        << ", r_th = " << format_number(rate_threshold(q.pi)) << " bits" << (r.underflow ? ", underflow" : "")
        << ")\n";
    if (power) {
        out << "required p_t for alpha = " << format_number(*q.target_alpha) << ": " << format_number(*power) << '\n';
    }
    return kExitOk;
}

struct McFlags {
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> streams;

    McConfig resolve(const std::optional<McConfig>& from_config) const {
        McConfig mc;
        mc.seed = resolve_default_seed();
        if (from_config) mc = *from_config;
        if (samples) mc.samples = *samples;
        if (seed) mc.seed = *seed;
        if (streams) mc.streams = *streams;
        if (mc.samples < 1) throw config_error("--samples", "must be >= 1");
        if (mc.streams < 1) throw config_error("--streams", "must be >= 1");
        return mc;
    }
};

int cmd_simulate(const std::string& config_path, const McFlags& flags, bool json, std::ostream& out) {
    const Query q = load_query(config_path);
    const McConfig mc = flags.resolve(q.mc);
    const ReliabilityResult closed = closed_form(q);
    const McEstimate est = q.kind == ScenarioCase::noise ? estimate_beta_noise(q.channel, q.pi, mc)
                                                         : estimate_alpha_interference(*q.topology, q.loop, q.pi, mc);
    std::optional<double> exact;
    if (q.kind == ScenarioCase::full_interference) exact = alpha_full_interference_exact(*q.topology, q.loop, q.pi).value;

    if (json) {
        Json j{{"case", to_string(q.kind)},
               {"pi", q.pi},
               {"samples", mc.samples},
               {"seed", mc.seed},
               {"streams", mc.streams},
               {"p_hat", est.p_hat},
               {"stderr", est.std_error},
               {"closed_form", closed.value},
               {"closed_form_method", to_string(closed.method)}};
        if (exact) j["exact_product_form"] = *exact;
        out << j.dump() << '\n';
        return kExitOk;
    }
    out << "p_hat = " << format_number(est.p_hat) << "  stderr = " << format_number(est.std_error)
        << "  closed_form = " << format_number(closed.value) << " (" << to_string(closed.method) << ")";
    if (exact) out << "  exact_product_form = " << format_number(*exact);
    out << "  [samples = " << mc.samples << ", seed = " << mc.seed << ", streams = " << mc.streams << "]\n";
    return kExitOk;
}

int cmd_table1(const std::string& out_path, bool json, std::ostream& out) {
    const auto rows = table1_preset();
    if (!out_path.empty()) write_text_file(out_path, table1_csv(rows));
    if (json) {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back({{"use_case", r.use_case}, {"pi", r.pi}, {"r_th", r.r_th}});
        out << Json{{"table1", arr}}.dump() << '\n';
        return kExitOk;
    }
    out << std::left << std::setw(40) << "use case" << std::setw(16) << "pi" << "r_th\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(40) << r.use_case << std::setw(16) << format_number(r.pi)
            << format_number(r.r_th) << '\n';
    }
    return kExitOk;
}

Json row_json(const SweepRow& r) {
    Json j{{"pi", r.pi}, {"alpha_closed", r.alpha_closed}};
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) j[key] = *v;
    };
    put("p_t", r.p_t);
    put("n0", r.n0);
    put("l0", r.l0);
    put("d", r.d);
    put("eta", r.eta);
    put("omega", r.omega);
    put("alpha_mc", r.alpha_mc);
    put("mc_stderr", r.mc_stderr);
    return j;
}

int cmd_scenario(const std::string& preset, const std::string& config_path, const std::string& out_path,
                 const std::string& mode, const McFlags& flags, bool json, std::ostream& out) {
    if (preset.empty() == config_path.empty()) throw CLI::ValidationError("exactly one of --preset or --config is required");
    if (preset == "table1") return cmd_table1(out_path, json, out);

    ScenarioConfig cfg;
    std::optional<McConfig> from_config;
    if (!preset.empty()) {
        cfg = preset_scenario(std::stoi(preset));
    } else {
        cfg = load_scenario_config(config_path);
        const Json doc = config::read_json_file(config_path);
        if (doc.contains("mc")) {
            from_config = cfg.mc;
            if (!doc["mc"].contains("seed")) from_config->seed = resolve_default_seed();
        }
    }
    if (mode == "closed") cfg.mode = ScenarioMode::closed_form;
    if (mode == "mc") cfg.mode = ScenarioMode::monte_carlo;
    if (mode == "both") cfg.mode = ScenarioMode::both;
    cfg.mc = flags.resolve(from_config);

    const std::vector<SweepRow> rows = run_scenario(cfg);
    if (!out_path.empty()) emit_csv(rows, out_path);

    if (json) {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(row_json(r));
        Json j{{"sweep_variable", to_string(cfg.sweep_variable)},
               {"case", to_string(cfg.evaluation)},
               {"mode", to_string(cfg.mode)},
               {"rows", arr}};
        if (cfg.mode != ScenarioMode::closed_form) {
            j["mc"] = {{"samples", cfg.mc.samples}, {"seed", cfg.mc.seed}, {"streams", cfg.mc.streams}};
        }
        out << j.dump() << '\n';
    } else if (out_path.empty()) {
        out << sweep_csv(rows);
    } else {
        out << "wrote " << rows.size() << " rows to " << out_path << '\n';
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stabilizability probability of wireless networked control loops", "wncs"};
    app.require_subcommand(1);

    bool json = false;
    std::string plant_path;
    double tol = kDefaultEigenTol;
    auto* analyze = app.add_subcommand("analyze", "Eigenvalue magnitudes, unstable product and rate threshold");
    analyze->add_option("--plant", plant_path, "Plant JSON file")->required();
    analyze->add_option("--tol", tol, "Magnitudes above 1 + tol count as unstable")->check(CLI::NonNegativeNumber);
    analyze->add_flag("--json", json, "Machine-readable output");

    std::string config_path;
    auto* reliability = app.add_subcommand("reliability", "Closed-form link reliability");
    reliability->add_option("--config", config_path, "Query JSON file")->required();
    reliability->add_flag("--json", json, "Machine-readable output");

    McFlags mc_flags;
    auto add_mc_flags = [&](CLI::App* sub) {
        sub->add_option("--samples", mc_flags.samples, "Monte Carlo draws");
        sub->add_option("--seed", mc_flags.seed, "PRNG seed (default: WNCS_SEED or 42)");
        sub->add_option("--streams", mc_flags.streams, "Independent substreams");
    };
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate beside the closed form");
    simulate->add_option("--config", config_path, "Query JSON file")->required();
    add_mc_flags(simulate);
    simulate->add_flag("--json", json, "Machine-readable output");

    std::string preset;
    std::string out_path;
    std::string mode;
    auto* scenario = app.add_subcommand("scenario", "Parameter sweeps and table reproductions");
    auto* preset_opt =
        scenario->add_option("--preset", preset, "Builtin scenario")->check(CLI::IsMember({"1", "2", "3", "table1"}));
    auto* config_opt = scenario->add_option("--config", config_path, "Scenario JSON file");
    preset_opt->excludes(config_opt);
    scenario->add_option("--out", out_path, "CSV output path");
    scenario->add_option("--mode", mode, "Evaluation mode")->check(CLI::IsMember({"closed", "mc", "both"}));
    add_mc_flags(scenario);
    scenario->add_flag("--json", json, "Machine-readable output");

    std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(argv_tail.begin(), argv_tail.end());
    try {
        app.parse(argv_tail);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "wncs: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(plant_path, tol, json, out);
        if (reliability->parsed()) return cmd_reliability(config_path, json, out);
        if (simulate->parsed()) return cmd_simulate(config_path, mc_flags, json, out);
        if (scenario->parsed()) return cmd_scenario(preset, config_path, out_path, mode, mc_flags, json, out);
    } catch (const config_error& e) {
        err << "wncs: config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CLI::Error& e) {
        err << "wncs: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "wncs: invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "wncs: invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "wncs: error: " << e.what() << '\n';
        return kExitRuntime;
    }
    err << "wncs: no subcommand\n";
    return kExitUsage;
}

}  // namespace wncs::cli
