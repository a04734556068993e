#include "wncs/scenario.hpp"

#include "wncs/plant.hpp"
#include "wncs/reliability.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace wncs {

namespace {

constexpr SweepVariable kSweepVariables[] = {SweepVariable::p_t, SweepVariable::d, SweepVariable::eta,
                                             SweepVariable::pi};
constexpr ScenarioMode kModes[] = {ScenarioMode::closed_form, ScenarioMode::monte_carlo, ScenarioMode::both};
constexpr ScenarioCase kCases[] = {ScenarioCase::noise, ScenarioCase::single_interference,
                                   ScenarioCase::full_interference, ScenarioCase::full_interference_exact};

bool strictly_ascending(const std::vector<double>& v) {
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (!(v[k] > v[k - 1])) return false;
    }
    return true;
}

double& channel_field(ChannelParams& p, SweepVariable v) {
    switch (v) {
        case SweepVariable::p_t: return p.p_t;
        case SweepVariable::d: return p.d;
        case SweepVariable::eta: return p.eta;
        case SweepVariable::pi: break;
    }
    throw std::logic_error("pi is not a channel field");
}

ReliabilityResult closed_interference(ScenarioCase c, const LoopTopology& topo, std::size_t loop, double pi) {
    switch (c) {
        case ScenarioCase::single_interference: return alpha_single_interference(topo, loop, pi);
        case ScenarioCase::full_interference: return alpha_full_interference(topo, loop, pi);
        case ScenarioCase::full_interference_exact: return alpha_full_interference_exact(topo, loop, pi);
        case ScenarioCase::noise: break;
    }
    throw std::logic_error("not an interference case");
}

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF records.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char ch = text[k];
        if (quoted) {
            if (ch == '"') {
                if (k + 1 < text.size() && text[k + 1] == '"') {
                    field += '"';
                    ++k;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        switch (ch) {
            case '"':
                quoted = true;
                field_started = true;
                break;
            case ',':
                record.push_back(std::move(field));
                field.clear();
                field_started = true;
                break;
            case '\r':
                break;
            case '\n':
                record.push_back(std::move(field));
                field.clear();
                records.push_back(std::move(record));
                record.clear();
                field_started = false;
                break;
            default:
                field += ch;
                field_started = true;
        }
    }
    if (quoted) throw std::runtime_error("csv: unterminated quoted field");
    if (field_started || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

std::optional<double> parse_optional(const std::string& s, const char* column) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw std::runtime_error(std::string("csv: bad number in column ") + column);
    return v;
}

void append_optional(std::string& line, const std::optional<double>& v) {
    line += ',';
    if (v) line += format_number(*v);
}

}  // namespace

std::string_view to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::p_t: return "p_t";
        case SweepVariable::d: return "d";
        case SweepVariable::eta: return "eta";
        case SweepVariable::pi: return "pi";
    }
    return "unknown";
}

std::string_view to_string(ScenarioMode m) {
    switch (m) {
        case ScenarioMode::closed_form: return "closed_form";
        case ScenarioMode::monte_carlo: return "monte_carlo";
        case ScenarioMode::both: return "both";
    }
    return "unknown";
}

std::string_view to_string(ScenarioCase c) {
    switch (c) {
        case ScenarioCase::noise: return "noise";
        case ScenarioCase::single_interference: return "single_interference";
        case ScenarioCase::full_interference: return "full_interference";
        case ScenarioCase::full_interference_exact: return "full_interference_exact";
    }
    return "unknown";
}

std::optional<ScenarioCase> parse_case(std::string_view name) {
    for (ScenarioCase c : kCases) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

void ScenarioConfig::validate() const {
    if (sweep_values.empty()) throw config_error("/sweep/values", "must not be empty");
    if (!strictly_ascending(sweep_values)) throw config_error("/sweep/values", "must be strictly ascending");
    for (double v : sweep_values) {
        if (!std::isfinite(v)) throw config_error("/sweep/values", "must be finite");
    }

    if (sweep_variable == SweepVariable::pi) {
        if (!pi_values.empty()) throw config_error("/pi_values", "must be empty when sweeping pi");
        for (double v : sweep_values) {
            if (!(v >= 1.0)) throw config_error("/sweep/values", "unstable products must be >= 1");
        }
    } else {
        if (pi_values.empty()) throw config_error("/pi_values", "required when sweeping a channel variable");
        for (double v : pi_values) {
            if (!(v >= 1.0) || !std::isfinite(v)) throw config_error("/pi_values", "unstable products must be >= 1");
        }
    }

    if (evaluation == ScenarioCase::noise) {
        if (topology) throw config_error("/topology", "only allowed for interference cases");
        for (double v : sweep_variable == SweepVariable::pi ? std::vector<double>{} : sweep_values) {
            ChannelParams p = fixed;
            channel_field(p, sweep_variable) = v;
            try {
                p.validate();
            } catch (const std::invalid_argument& e) {
                throw config_error("/sweep/values", e.what());
            }
        }
        if (sweep_variable == SweepVariable::pi) {
            try {
                fixed.validate();
            } catch (const std::invalid_argument& e) {
                throw config_error("/fixed", e.what());
            }
        }
    } else {
        if (!topology) throw config_error("/topology", "required for interference cases");
        if (sweep_variable != SweepVariable::pi && sweep_variable != SweepVariable::eta) {
            throw config_error("/sweep/variable", "interference scenarios can only sweep pi or eta");
        }
        try {
            topology->validate();
        } catch (const std::invalid_argument& e) {
            throw config_error("/topology", e.what());
        }
        if (loop >= topology->loops()) throw config_error("/loop", "loop index out of range");
        if (evaluation == ScenarioCase::single_interference && topology->loops() != 2) {
            throw config_error("/topology/distances", "single_interference requires exactly 2 loops");
        }
        if (sweep_variable == SweepVariable::eta) {
            for (double v : sweep_values) {
                if (!(v > 0.0)) throw config_error("/sweep/values", "eta must be > 0");
            }
        }
    }
    try {
        mc.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error("/mc", e.what());
    }
}

std::vector<SweepRow> run_scenario(const ScenarioConfig& config) {
    config.validate();
    const bool want_mc = config.mode != ScenarioMode::closed_form;
    const bool sweeping_pi = config.sweep_variable == SweepVariable::pi;
    const std::vector<double> curves = sweeping_pi ? std::vector<double>{0.0} : config.pi_values;

    std::vector<SweepRow> rows;
    rows.reserve(curves.size() * config.sweep_values.size());
    for (double curve_pi : curves) {
        for (double v : config.sweep_values) {
            const double pi = sweeping_pi ? v : curve_pi;
            SweepRow row;
            row.pi = pi;
            if (config.evaluation == ScenarioCase::noise) {
                ChannelParams p = config.fixed;
                if (!sweeping_pi) channel_field(p, config.sweep_variable) = v;
                row.p_t = p.p_t;
                row.n0 = p.n0;
                row.l0 = p.l0;
                row.d = p.d;
                row.eta = p.eta;
                row.omega = p.omega;
                row.alpha_closed = alpha_noise(p, pi).value;
                if (want_mc) {
                    const McEstimate e = estimate_beta_noise(p, pi, config.mc);
                    row.alpha_mc = e.p_hat;
                    row.mc_stderr = e.std_error;
                }
            } else {
                LoopTopology topo = *config.topology;
                if (config.sweep_variable == SweepVariable::eta) topo.eta = v;
                row.d = topo.distances[config.loop];
                row.eta = topo.eta;
                row.alpha_closed = closed_interference(config.evaluation, topo, config.loop, pi).value;
                if (want_mc) {
                    const McEstimate e = estimate_alpha_interference(topo, config.loop, pi, config.mc);
                    row.alpha_mc = e.p_hat;
                    row.mc_stderr = e.std_error;
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

ScenarioConfig parse_scenario_config(const config::Json& doc, const std::string& path) {
    if (!doc.is_object()) throw config_error(path.empty() ? "/" : path, "scenario config must be a JSON object");
    static const char* const kKnown[] = {"sweep", "fixed", "pi_values", "mode", "mc", "case", "topology", "loop"};
    for (const auto& item : doc.items()) {
        bool known = false;
        for (const char* k : kKnown) known = known || item.key() == k;
        if (!known) throw config_error(path + "/" + item.key(), "unknown field");
    }

    ScenarioConfig cfg;
    if (doc.contains("case")) {
        const auto& c = doc["case"];
        if (!c.is_string() || !parse_case(c.get<std::string>())) {
            throw config_error(path + "/case",
                               "expected one of noise, single_interference, full_interference, full_interference_exact");
        }
        cfg.evaluation = *parse_case(c.get<std::string>());
    }

    if (!doc.contains("sweep") || !doc["sweep"].is_object()) throw config_error(path + "/sweep", "missing object");
    const auto& sweep = doc["sweep"];
    const auto var = sweep.find("variable");
    if (var == sweep.end() || !var->is_string()) throw config_error(path + "/sweep/variable", "missing string");
    bool found = false;
    for (SweepVariable v : kSweepVariables) {
        if (to_string(v) == var->get<std::string>()) {
            cfg.sweep_variable = v;
            found = true;
        }
    }
    if (!found) throw config_error(path + "/sweep/variable", "expected one of p_t, d, eta, pi");
    cfg.sweep_values = config::get_number_list(sweep, "values", path + "/sweep");

    if (doc.contains("pi_values")) cfg.pi_values = config::get_number_list(doc, "pi_values", path);

    if (cfg.evaluation == ScenarioCase::noise) {
        if (!doc.contains("fixed")) throw config_error(path + "/fixed", "missing channel block");
        const std::string omitted =
            cfg.sweep_variable == SweepVariable::pi ? "" : std::string(to_string(cfg.sweep_variable));
        cfg.fixed = config::parse_channel(doc["fixed"], path + "/fixed", omitted);
    } else {
        if (doc.contains("fixed")) throw config_error(path + "/fixed", "not used by interference cases");
        if (!doc.contains("topology")) throw config_error(path + "/topology", "missing topology block");
        cfg.topology = config::parse_topology(doc["topology"], path + "/topology");
        if (doc.contains("loop")) cfg.loop = static_cast<std::size_t>(config::get_uint(doc, "loop", path));
    }

    if (doc.contains("mode")) {
        const auto& m = doc["mode"];
        found = false;
        for (ScenarioMode mode : kModes) {
            if (m.is_string() && to_string(mode) == m.get<std::string>()) {
                cfg.mode = mode;
                found = true;
            }
        }
        if (!found) throw config_error(path + "/mode", "expected one of closed_form, monte_carlo, both");
    }
    if (doc.contains("mc")) cfg.mc = config::parse_mc(doc["mc"], path + "/mc");

    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
    const config::Json doc = config::read_json_file(path);
    try {
        return parse_scenario_config(doc);
    } catch (const config_error& e) {
        throw config_error(path + "#" + e.field(), e.what());
    }
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
    if (n < 2 || !(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_space needs n >= 2 and 0 < lo < hi");
    std::vector<double> out(n);
    const double ratio = hi / lo;
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = lo * std::pow(ratio, static_cast<double>(k) / static_cast<double>(n - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

ScenarioConfig preset_scenario(int number) {
    // Reproduction numerals: N_0 = 0.01, L_0 = 0.1 in one linear unit system.
    ScenarioConfig cfg;
    cfg.fixed = ChannelParams{.p_t = 300.0, .n0 = 0.01, .l0 = 0.1, .d = 10.0, .eta = 2.5, .omega = kDefaultOmega};
    cfg.pi_values = log_space(10.0, 600.0, 60);
    switch (number) {
        case 1:
            cfg.sweep_variable = SweepVariable::p_t;
            cfg.sweep_values = {100.0, 200.0, 300.0, 400.0};
            break;
        case 2:
            cfg.sweep_variable = SweepVariable::d;
            cfg.sweep_values = {5.0, 10.0, 15.0, 20.0};
            break;
        case 3:
            cfg.sweep_variable = SweepVariable::eta;
            cfg.sweep_values = {2.0, 2.5, 3.0, 3.5};
            break;
        default:
            throw std::invalid_argument("unknown scenario preset " + std::to_string(number));
    }
    return cfg;
}

std::vector<std::pair<double, double>> table1(const std::vector<double>& products) {
    std::vector<std::pair<double, double>> out;
    out.reserve(products.size());
    for (double p : products) out.emplace_back(p, rate_threshold(p));
    return out;
}

std::vector<Table1Entry> table1_preset() {
    const std::vector<std::pair<std::string, double>> cases = {
        {"Voltage Regulation in DC Micro Grids", 6e7},
        {"Load Frequency Control", 412.99},
        {"Adaptive Cruise control", 2.2},
    };
    std::vector<Table1Entry> out;
    for (const auto& [name, pi] : cases) out.push_back({name, pi, rate_threshold(pi)});
    return out;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out(kSweepCsvHeader);
    out += "\r\n";
    for (const SweepRow& r : rows) {
        std::string line = format_number(r.pi);
        append_optional(line, r.p_t);
        append_optional(line, r.n0);
        append_optional(line, r.l0);
        append_optional(line, r.d);
        append_optional(line, r.eta);
        append_optional(line, r.omega);
        line += ',' + format_number(r.alpha_closed);
        append_optional(line, r.alpha_mc);
        append_optional(line, r.mc_stderr);
        out += line;
        out += "\r\n";
    }
    return out;
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
    const auto records = parse_csv_records(text);
    if (records.empty()) throw std::runtime_error("csv: missing header");
    std::string header;
    for (std::size_t k = 0; k < records[0].size(); ++k) header += (k ? "," : "") + records[0][k];
    if (header != kSweepCsvHeader) throw std::runtime_error("csv: unexpected header '" + header + "'");

    std::vector<SweepRow> rows;
    for (std::size_t k = 1; k < records.size(); ++k) {
        const auto& f = records[k];
        if (f.size() != 10) throw std::runtime_error("csv: record " + std::to_string(k) + " has wrong field count");
        SweepRow r;
        r.pi = parse_optional(f[0], "pi").value_or(NAN);
        r.p_t = parse_optional(f[1], "p_t");
        r.n0 = parse_optional(f[2], "n0");
        r.l0 = parse_optional(f[3], "l0");
        r.d = parse_optional(f[4], "d");
        r.eta = parse_optional(f[5], "eta");
        r.omega = parse_optional(f[6], "omega");
        r.alpha_closed = parse_optional(f[7], "alpha_closed").value_or(NAN);
        r.alpha_mc = parse_optional(f[8], "alpha_mc");
        r.mc_stderr = parse_optional(f[9], "mc_stderr");
        rows.push_back(r);
    }
    return rows;
}

std::string table1_csv(const std::vector<Table1Entry>& rows) {
    std::string out = "use_case,pi,r_th\r\n";
    for (const Table1Entry& e : rows) {
        out += csv_escape(e.use_case) + ',' + format_number(e.pi) + ',' + format_number(e.r_th) + "\r\n";
    }
    return out;
}

void write_text_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw std::runtime_error(path + ": write failed");
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) { write_text_file(path, sweep_csv(rows)); }

}  // namespace wncs
