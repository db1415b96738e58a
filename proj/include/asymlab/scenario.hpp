#pragma once

// Scenario sweeps: a reference solution against the asymptotic formula of one
// singular point, for a list of small parameters, with a log-log rate fit.

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "asymlab/flux_core.hpp"

namespace asymlab {

enum class ScenarioKind { initial_jump, collision, fold, weakshock, large_gradient };
const char* scenario_kind_name(ScenarioKind kind) noexcept;

// Evaluation rectangle in the scenario's own coordinates: inner variables for
// the layers, physical (x, t) for large-gradient.
struct WindowSpec {
    double x_min = -3.0;
    double x_max = 3.0;
    double t_min = -2.0;
    double t_max = 2.0;
    int nx = 61;
    int nt = 41;
};

struct InitialSpec {
    // tanh | step | three_state | weak | scaled_tanh | constant
    std::string variant = "tanh";
    double amplitude = -1.0;  // tanh, scaled_tanh: amplitude * tanh(x / width)
    double width = 1.0;
    double value = 0.0;       // constant
    double u_minus = 1.0;     // step
    double u_plus = -1.0;
    double kappa = 0.25;      // step: smooth part kappa * tanh(x / width) on both sides
    double a = 1.0;           // weak
    std::vector<double> states{1.0, 0.0, -1.0};  // three_state
    std::vector<double> jumps{-1.0, 1.0};
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::fold;
    FluxSpec flux;
    InitialSpec initial;
    std::vector<double> epsilon;
    std::vector<double> rho;  // large-gradient only
    WindowSpec window;
    std::string reference = "auto";     // auto | cole_hopf | solver
    std::string formula = "composite";  // large-gradient: composite | renormalized
    int solver_cells = 4000;
    double solver_half_width = 0.0;     // 0: chosen from the scenario and the data width
    std::string out_dir;
    double band_lo = 0.0;
    double band_hi = std::numeric_limits<double>::infinity();
    int threads = 0;  // 0: one per leg
    std::vector<std::string> defaults_applied;

    // The small parameter of each leg: eps, or mu = rho/eps for large-gradient.
    std::vector<double> parameters() const;
    double eps_of_leg(std::size_t k) const;
    double rho_of_leg(std::size_t k) const;
    void validate() const;
};

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);
// Config text that parses back to the same resolved config.
std::string emit_config_text(const ScenarioConfig& cfg);
// JSON object with every field, including defaults.
std::string resolved_config_json(const ScenarioConfig& cfg);

struct RateFit {
    double slope = 0.0;
    double residual = 0.0;  // rms of the log-log fit
};
// Least-squares slope of log(error) against log(parameter).
RateFit fit_rate(const std::vector<double>& parameters, const std::vector<double>& errors);

struct FieldRow {
    double inner_x = 0.0;
    double inner_t = 0.0;
    double u_reference = 0.0;
    double u_asymptotic = 0.0;
    double abs_error = 0.0;
};

struct LegResult {
    double param = 0.0;
    double sup_error = 0.0;
    double sup_error_absolute = 0.0;  // differs from sup_error only for weakshock
    double runtime_s = 0.0;
    std::vector<FieldRow> rows;
};

struct SweepReport {
    ScenarioConfig config;
    std::vector<LegResult> legs;
    double slope = 0.0;
    double residual = 0.0;
    bool degenerate = false;
    bool pass = false;
    std::string json() const;
};

// Reference and asymptotic values on the window for one leg. Either side may be skipped.
LegResult evaluate_leg(const ScenarioConfig& cfg, std::size_t leg, bool reference = true, bool asymptotic = true);
SweepReport run_scenario(const ScenarioConfig& cfg);

std::string field_csv(const std::vector<FieldRow>& rows);
// Writes field_<k>.csv per leg and report.json into cfg.out_dir (created if needed).
void write_report(const SweepReport& report);

// Characteristics and shock curves of the inviscid limit as CSV: curve,id,t,x,u.
std::string limit_curves_csv(const ScenarioConfig& cfg, int characteristics = 21, int samples = 50);

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
    double runtime_s = 0.0;
};
// Symmetry, positivity, conservation, comparison, round-trip and determinism checks.
std::vector<VerifyCheck> run_verify_suite();

} // namespace asymlab
