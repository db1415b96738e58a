#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "asymlab/scenario.hpp"

using namespace asymlab;

namespace {

template <class F>
ErrorCode code_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ok;
}

const char* minimal_fold = R"([scenario]
kind = fold

[flux]
kind = burgers

[sweep]
eps = [1e-2, 5e-3, 2.5e-3]
)";

std::string small_window(const std::string& kind, const std::string& extra = "")
{
    return "[scenario]\nkind = " + kind + "\n\n[scenario.window]\nnx = 5\nntau = 3\n" + extra;
}

} // namespace

TEST_CASE("config parsing")
{
    const auto cfg = parse_config_text(minimal_fold);
    CHECK(cfg.kind == ScenarioKind::fold);
    CHECK(cfg.epsilon == std::vector<double>{1e-2, 5e-3, 2.5e-3});
    CHECK(cfg.window.x_min == -3.0);
    CHECK(cfg.window.t_max == 2.0);
    CHECK(cfg.band_lo == 0.4);
    CHECK(std::isinf(cfg.band_hi));
    CHECK(cfg.initial.variant == "tanh");
    CHECK(!cfg.defaults_applied.empty());

    CHECK(code_of([] { parse_config_text("[scenario]\nkind = fold\n[sweep]\neps = [1e-2, 5e-3]\n"); }) ==
          ErrorCode::validation_error);
    CHECK(code_of([] { parse_config_text("[scenario]\nkind = cusp\n"); }) == ErrorCode::parse_error);
    CHECK(code_of([] { parse_config_text("[scenario]\nkind = fold\ncolour = red\n"); }) == ErrorCode::parse_error);
    CHECK(code_of([] { parse_config_text("[scenario\nkind = fold\n"); }) == ErrorCode::parse_error);
    const auto commented = parse_config_text("[scenario]\nkind = weakshock   ; a comment\n[initial]\na = 2 # another\n");
    CHECK(commented.kind == ScenarioKind::weakshock);
    CHECK(commented.initial.a == 2.0);
    CHECK(code_of([] { parse_config_text("[sweep]\neps = [1e-2, 5e-3, 1e-3]\n"); }) == ErrorCode::parse_error);
    CHECK(code_of([] { parse_config_text("[scenario]\nkind = fold\n[sweep]\neps = [1e-2, x, 1e-3]\n"); }) ==
          ErrorCode::parse_error);
    CHECK(code_of([] { parse_config_text("[scenario]\nkind = fold\n[sweep]\neps = [1e-2, 2e-2, 1e-3]\n"); }) ==
          ErrorCode::validation_error);
    CHECK(code_of([] { parse_config_text("[scenario]\nkind = fold\n[scenario.window]\nxi_min = 1\nxi_max = -1\n"); }) ==
          ErrorCode::validation_error);
    CHECK(code_of([] { parse_config_text("[scenario]\nkind = collision\n[flux]\nkind = polynomial\ncoefficients = [0, 0, 0.5, 0.1]\n"); }) ==
          ErrorCode::validation_error);
    CHECK(code_of([] { parse_config_text("[scenario]\nkind = fold\n[flux]\nkind = polynomial\ncoefficients = [0, 0, -0.5]\n"); }) ==
          ErrorCode::validation_error);
    CHECK(code_of([] { parse_config_text("[scenario]\nkind = fold\n[initial]\nvariant = step\n"); }) ==
          ErrorCode::validation_error);

    const auto lg = parse_config_text("[scenario]\nkind = large_gradient\nformula = renormalized\n");
    CHECK(lg.parameters().size() == 4);
    CHECK(lg.parameters().front() == doctest::Approx(0.2));
    CHECK(lg.band_lo == 0.15);
    CHECK(lg.band_hi == 0.5);
    CHECK(code_of([] { parse_config_text("[scenario]\nkind = large-gradient\n[sweep]\nrho = [0.01, 0.02, 0.005]\n"); }) ==
          ErrorCode::validation_error);
    CHECK(code_of([] { parse_config_text("[scenario]\nkind = fold\n[sweep]\nrho = [0.01, 0.005, 0.001]\n"); }) ==
          ErrorCode::parse_error);

    // round trip through the emitted text
    for (const auto& text : {std::string(minimal_fold), std::string("[scenario]\nkind = large-gradient\n"),
                             small_window("weakshock", "[report]\nslope_band = [0.1, 2]\nout_dir = /tmp/x\n")}) {
        const auto a = parse_config_text(text);
        const auto b = parse_config_text(emit_config_text(a));
        CHECK(emit_config_text(a) == emit_config_text(b));
        CHECK(resolved_config_json(a).find("\"window\"") != std::string::npos);
    }

    CHECK(code_of([] { parse_config_file("/nonexistent/config.ini"); }) == ErrorCode::io_error);
}

TEST_CASE("rate fit")
{
    const auto a = fit_rate({1e-1, 5e-2, 2.5e-2}, {1e-1, 5e-2, 2.5e-2});
    CHECK(a.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.residual < 1e-12);
    const auto b = fit_rate({1.0, 0.5, 0.25}, {1e-2, 1e-2 / std::sqrt(2.0), 0.5e-2});
    CHECK(b.slope == doctest::Approx(0.5).epsilon(1e-12));
    const auto c = fit_rate({1.0, 0.5, 0.25}, {1.0, 0.3, 0.2});
    CHECK(c.residual > 0.0);
    CHECK(code_of([] { fit_rate({1.0, 0.5, 0.25}, {1e-2, 0.0, 1e-3}); }) == ErrorCode::degenerate_fit);
    CHECK(code_of([] { fit_rate({1.0, 0.5, 0.25}, {1e-2, 1e-15, 1e-3}); }) == ErrorCode::degenerate_fit);
    CHECK(code_of([] { fit_rate({1.0, 0.5}, {1e-2, 1e-3}); }) == ErrorCode::invalid_argument);
    CHECK(code_of([] { fit_rate({1.0, 2.0, 0.5}, {1e-2, 1e-3, 1e-4}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("constant data gives a degenerate fit, not a failure")
{
    for (const char* kind : {"initial-jump", "collision", "fold", "weakshock", "large-gradient"}) {
        INFO(kind);
        const auto cfg = parse_config_text(small_window(kind, "\n[initial]\nvariant = constant\nvalue = 0.3\n"));
        const auto rep = run_scenario(cfg);
        CHECK(rep.degenerate);
        CHECK(rep.pass);
        for (const auto& l : rep.legs)
            CHECK(l.sup_error < 1e-12);
        const auto j = nlohmann::json::parse(rep.json());
        CHECK(j["slope"].is_null());
    }
}

TEST_CASE("sweep reports")
{
    auto cfg = parse_config_text(small_window("fold"));
    const auto rep = run_scenario(cfg);
    REQUIRE(rep.legs.size() == 3);
    CHECK(rep.legs[0].rows.size() == 15);
    CHECK(rep.legs[0].sup_error > rep.legs[2].sup_error);
    CHECK(rep.slope >= 0.4);
    CHECK(rep.pass);

    const auto j = nlohmann::json::parse(rep.json());
    for (const char* key : {"scenario", "resolved_config", "rows", "slope", "residual", "pass"})
        CHECK(j.contains(key));
    CHECK(j["scenario"] == "fold");
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][0].contains("param"));
    CHECK(j["rows"][0].contains("sup_error"));
    CHECK(j["rows"][0].contains("runtime_s"));
    CHECK(j["resolved_config"]["sweep"]["epsilon"].size() == 3);

    const auto csv = field_csv(rep.legs[0].rows);
    CHECK(csv.rfind("inner_x,inner_t,u_reference,u_asymptotic,abs_error\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 16);

    // determinism, also with a single worker slot
    auto serial = cfg;
    serial.threads = 1;
    const auto again = run_scenario(serial);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(field_csv(again.legs[k].rows) == field_csv(rep.legs[k].rows));

    const auto dir = std::filesystem::temp_directory_path() / "asymlab_sweep_test";
    std::filesystem::remove_all(dir);
    auto with_out = rep;
    with_out.config.out_dir = dir.string();
    write_report(with_out);
    CHECK(std::filesystem::exists(dir / "field_0.csv"));
    CHECK(std::filesystem::exists(dir / "field_2.csv"));
    std::ifstream in(dir / "report.json");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(nlohmann::json::parse(ss.str())["pass"] == true);
    std::filesystem::remove_all(dir);

    // out of band
    auto strict = cfg;
    strict.band_lo = 5.0;
    CHECK_FALSE(run_scenario(strict).pass);
}

TEST_CASE("legs of every kind")
{
    for (const char* kind : {"initial-jump", "collision", "weakshock", "large-gradient"}) {
        INFO(kind);
        const auto cfg = parse_config_text(small_window(kind));
        const auto leg = evaluate_leg(cfg, 0);
        CHECK(leg.rows.size() == 15);
        for (const auto& r : leg.rows) {
            CHECK(std::isfinite(r.u_reference));
            CHECK(std::isfinite(r.u_asymptotic));
        }
        CHECK(leg.sup_error < 2.0);
        const auto only = evaluate_leg(cfg, 0, false, true);
        CHECK(std::isnan(only.rows[0].u_reference));
        CHECK(only.rows[0].u_asymptotic == leg.rows[0].u_asymptotic);
    }
    // weak-shock errors are in inner units
    const auto ws = evaluate_leg(parse_config_text(small_window("weakshock")), 0);
    CHECK(ws.sup_error == doctest::Approx(ws.sup_error_absolute / std::cbrt(1e-2)));

    // a generic flux goes through the solver
    const auto cubic = parse_config_text(small_window("initial-jump",
                                                      "[flux]\nkind = polynomial\ncoefficients = [0, 0, 0.5, 0.05]\n"
                                                      "interval = [-1.5, 1.5]\n[initial]\nkappa = 0\n"
                                                      "[solver]\ncells = 800\nhalf_width = 2\n"));
    const auto leg = evaluate_leg(cubic, 2);
    CHECK(leg.sup_error < 0.1);
}

TEST_CASE("limit curves")
{
    const auto csv = limit_curves_csv(parse_config_text(small_window("collision")), 5, 10);
    CHECK(csv.rfind("curve,id,t,x,u\n", 0) == 0);
    CHECK(csv.find("characteristic,4,") != std::string::npos);
    CHECK(csv.find("shock,1,") != std::string::npos);
    const auto at = csv.find("collision,0,");
    REQUIRE(at != std::string::npos);
    // states 1, 0, -1 with jumps at -1, 1 meet at x = 0, t = 2
    std::stringstream row(csv.substr(at));
    std::string name, id, t, x;
    std::getline(row, name, ',');
    std::getline(row, id, ',');
    std::getline(row, t, ',');
    std::getline(row, x, ',');
    CHECK(std::stod(t) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(std::stod(x)) < 1e-6);

    const auto fold = limit_curves_csv(parse_config_text(small_window("fold")));
    CHECK(fold.find("shock,0,") != std::string::npos);
}

TEST_CASE("verify suite")
{
    const auto checks = run_verify_suite();
    CHECK(checks.size() >= 10);
    for (const auto& c : checks) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
}
