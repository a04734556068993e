#pragma once

#include "wncs/channel.hpp"
#include "wncs/config.hpp"
#include "wncs/montecarlo.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wncs {

enum class SweepVariable { p_t, d, eta, pi };
enum class ScenarioMode { closed_form, monte_carlo, both };
enum class ScenarioCase { noise, single_interference, full_interference, full_interference_exact };

std::string_view to_string(SweepVariable v);
std::string_view to_string(ScenarioMode m);
std::string_view to_string(ScenarioCase c);
std::optional<ScenarioCase> parse_case(std::string_view name);

// A sweep over one variable, optionally crossed with a family of unstable
// products (one curve per Pi). Noise-limited scenarios use `fixed`;
// interference scenarios use `topology` and may only sweep pi or eta.
struct ScenarioConfig {
    SweepVariable sweep_variable = SweepVariable::pi;
    std::vector<double> sweep_values;
    ChannelParams fixed;  // the swept field is ignored
    std::vector<double> pi_values;
    ScenarioMode mode = ScenarioMode::closed_form;
    McConfig mc;
    ScenarioCase evaluation = ScenarioCase::noise;
    std::optional<LoopTopology> topology;
    std::size_t loop = 0;

    // Throws config_error with a field path.
    void validate() const;
};

// Input coordinates of one evaluated point plus its reliability. Channel
// fields that do not apply to the scenario's case are left empty.
struct SweepRow {
    double pi = 1.0;
    std::optional<double> p_t, n0, l0, d, eta, omega;
    double alpha_closed = 0.0;
    std::optional<double> alpha_mc;
    std::optional<double> mc_stderr;

    bool operator==(const SweepRow&) const = default;
};

// Rows ordered by (pi, sweep value). The closed form is always evaluated;
// Monte Carlo columns are filled for modes monte_carlo and both.
std::vector<SweepRow> run_scenario(const ScenarioConfig& config);

// {"sweep": {"variable", "values"}, "fixed": {...}, "pi_values": [...],
//  "mode", "mc", "case", "topology", "loop"}
ScenarioConfig parse_scenario_config(const config::Json& doc, const std::string& path = "");
ScenarioConfig load_scenario_config(const std::string& path);

// Builtin reproductions: 1 sweeps transmit power, 2 distance, 3 path-loss exponent.
ScenarioConfig preset_scenario(int number);

// n points log-spaced over [lo, hi], with both endpoints exact.
std::vector<double> log_space(double lo, double hi, std::size_t n);

struct Table1Entry {
    std::string use_case;
    double pi = 1.0;
    double r_th = 0.0;
};

std::vector<std::pair<double, double>> table1(const std::vector<double>& products);

// The three published use cases with their unstable-eigenvalue products.
std::vector<Table1Entry> table1_preset();

// Nine significant digits, "%.9g".
std::string format_number(double v);

// RFC 4180 field quoting; fields without separators pass through untouched.
std::string csv_escape(std::string_view field);

inline constexpr std::string_view kSweepCsvHeader = "pi,p_t,n0,l0,d,eta,omega,alpha_closed,alpha_mc,mc_stderr";

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

std::string table1_csv(const std::vector<Table1Entry>& rows);

// Writes `contents` to `path`; I/O failures throw std::runtime_error naming the path.
void write_text_file(const std::string& path, std::string_view contents);
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace wncs
