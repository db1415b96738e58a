// asymlab command line: reference solves, limit curves, inner fields, sweeps
// and the invariant suite. Talks to the library only through asymlab.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "asymlab/asymlab.h"

namespace {

// exit codes
constexpr int pass_band = 0;
constexpr int out_of_band = 2;
constexpr int validation_failure = 3;
constexpr int numerical_failure = 4;

int fail(int status)
{
    nlohmann::ordered_json rec{{"error", asymlab_status_name(status)},
                               {"code", status},
                               {"message", asymlab_last_error()}};
    std::cerr << rec.dump() << "\n";
    const bool input = status == ASYMLAB_ERR_PARSE || status == ASYMLAB_ERR_VALIDATION || status == ASYMLAB_ERR_IO;
    return input ? validation_failure : numerical_failure;
}

int emit(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return pass_band;
    }
    std::ofstream out(path, std::ios::binary);
    if (!(out << text)) {
        std::cerr << nlohmann::json{{"error", "IoError"}, {"code", ASYMLAB_ERR_IO}, {"message", "cannot write " + path}}
                         .dump()
                  << "\n";
        return validation_failure;
    }
    return pass_band;
}

struct Scenario {
    asymlab_scenario* handle = nullptr;
    ~Scenario() { asymlab_scenario_free(handle); }
};

int field(const std::string& config, std::size_t leg, int part, const std::string& out)
{
    Scenario s;
    if (int rc = asymlab_scenario_load(config.c_str(), &s.handle))
        return fail(rc);
    const char* csv = nullptr;
    if (int rc = asymlab_scenario_field_csv(s.handle, leg, part, &csv))
        return fail(rc);
    return emit(csv, out);
}

int limit(const std::string& config, int characteristics, int samples, const std::string& out)
{
    Scenario s;
    if (int rc = asymlab_scenario_load(config.c_str(), &s.handle))
        return fail(rc);
    const char* csv = nullptr;
    if (int rc = asymlab_scenario_limit_csv(s.handle, characteristics, samples, &csv))
        return fail(rc);
    return emit(csv, out);
}

int sweep(const std::string& config, const std::string& out_dir)
{
    Scenario s;
    if (int rc = asymlab_scenario_load(config.c_str(), &s.handle))
        return fail(rc);
    if (!out_dir.empty())
        asymlab_scenario_set_out_dir(s.handle, out_dir.c_str());
    asymlab_report* report = nullptr;
    if (int rc = asymlab_scenario_run(s.handle, &report))
        return fail(rc);
    const char* json = nullptr;
    int pass = 0;
    asymlab_report_json(report, &json);
    asymlab_report_pass(report, &pass);
    std::cout << json << "\n";
    const auto parsed = nlohmann::json::parse(json);
    if (!parsed["resolved_config"]["report"]["out_dir"].get<std::string>().empty()) {
        if (int rc = asymlab_report_write(report)) {
            asymlab_report_free(report);
            return fail(rc);
        }
    }
    asymlab_report_free(report);
    return pass ? pass_band : out_of_band;
}

int verify(bool json_out)
{
    asymlab_verify* v = nullptr;
    if (int rc = asymlab_verify_run(&v))
        return fail(rc);
    bool all = true;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < asymlab_verify_count(v); ++i) {
        const char* name = nullptr;
        const char* detail = nullptr;
        int passed = 0;
        double seconds = 0.0;
        asymlab_verify_check(v, i, &name, &passed, &detail, &seconds);
        all = all && passed;
        if (json_out) {
            rows.push_back({{"check", name}, {"pass", passed != 0}, {"detail", detail}, {"runtime_s", seconds}});
        } else {
            std::printf("%s  %s  (%s, %.2fs)\n", passed ? "PASS" : "FAIL", name, detail, seconds);
        }
    }
    asymlab_verify_free(v);
    if (json_out)
        std::cout << nlohmann::ordered_json{{"checks", rows}, {"pass", all}}.dump(2) << "\n";
    return all ? pass_band : out_of_band;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"asymlab: viscous conservation laws near singular points"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(asymlab_version()));

    std::string config;
    std::string out;
    std::size_t leg = 0;

    auto* solve_cmd = app.add_subcommand("solve", "reference solution on the scenario window as CSV");
    solve_cmd->add_option("config", config, "scenario file")->required();
    solve_cmd->add_option("--leg", leg, "index into the epsilon (or rho) list");
    solve_cmd->add_option("-o,--out", out, "output CSV (default stdout)");

    auto* inner_cmd = app.add_subcommand("inner", "asymptotic field only on the scenario window as CSV");
    inner_cmd->add_option("config", config, "scenario file")->required();
    inner_cmd->add_option("--leg", leg, "index into the epsilon (or rho) list");
    inner_cmd->add_option("-o,--out", out, "output CSV (default stdout)");

    int characteristics = 21;
    int samples = 50;
    auto* limit_cmd = app.add_subcommand("limit", "characteristics and shock curves of the inviscid limit as CSV");
    limit_cmd->add_option("config", config, "scenario file")->required();
    limit_cmd->add_option("--characteristics", characteristics, "number of characteristics")->check(CLI::Range(2, 100000));
    limit_cmd->add_option("--samples", samples, "samples per curve")->check(CLI::Range(1, 100000));
    limit_cmd->add_option("-o,--out", out, "output CSV (default stdout)");

    std::string out_dir;
    auto* sweep_cmd = app.add_subcommand("sweep", "reference against asymptotics for every epsilon, with a rate fit");
    sweep_cmd->add_option("config", config, "scenario file")->required();
    sweep_cmd->add_option("--out-dir", out_dir, "directory for field_<k>.csv and report.json");

    bool json_out = false;
    auto* verify_cmd = app.add_subcommand("verify", "run the built-in invariant suite");
    verify_cmd->add_flag("--json", json_out, "print the results as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : validation_failure;
    }

    if (*solve_cmd)
        return field(config, leg, ASYMLAB_FIELD_REFERENCE, out);
    if (*inner_cmd)
        return field(config, leg, ASYMLAB_FIELD_ASYMPTOTIC, out);
    if (*limit_cmd)
        return limit(config, characteristics, samples, out);
    if (*sweep_cmd)
        return sweep(config, out_dir);
    return verify(json_out);
}
