// Acceptance run: one PASS/FAIL line per criterion with the measured numbers.
// Exit status is the number of failed criteria (capped at 100).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "asymlab/inner_fold.hpp"
#include "asymlab/inner_riemann.hpp"
#include "asymlab/inner_weakshock.hpp"
#include "asymlab/limit_solver.hpp"
#include "asymlab/scenario.hpp"
#include "asymlab/viscous_solver.hpp"

using namespace asymlab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string sci(double v) { return fmt("%.3g", v); }

double log_slope(double x0, double x1, double y0, double y1) { return std::log(y1 / y0) / std::log(x1 / x0); }

// 1: reference solver against the Cole-Hopf oracle
Outcome solver_oracle()
{
    ProblemConfig cfg;
    cfg.flux = burgers_flux(-1.0, 1.0);
    cfg.initial = InitialData::smooth(tanh_profile(-1.0), 1.0, -1.0);
    cfg.epsilon = 0.5;
    cfg.t_end = 1.0;
    cfg.half_width = 10.0;
    auto sup = [&](int nx) {
        const auto f = solve_viscous(cfg, nx, stable_time_steps(cfg, nx, 0.4));
        double e = 0.0;
        for (int i = 0; i < f.nx; ++i)
            if (std::abs(f.x(i)) <= 5.0)
                e = std::max(e, std::abs(f.at(f.nt, i) - cole_hopf_burgers(cfg.initial, f.x(i), 1.0, 0.5)));
        return e;
    };
    const double fine = sup(4096);
    const double e512 = sup(512);
    const double e2048 = sup(2048);
    const double slope = std::log2(e512 / e2048) / 2.0;
    return {fine <= 1e-4 && slope >= 1.8 && slope <= 2.2,
            "sup error at 4096 cells " + sci(fine) + " (<= 1e-4), refinement slope " + fmt("%.3f", slope) +
                " over 512..2048 (in [1.8, 2.2])"};
}

// 2: Lambda solves the heat equation
Outcome lambda_heat()
{
    const double h = 1e-3;
    auto L = [](double x, double t) { return lambda_integral(x, t).value; };
    double worst = 0.0;
    double at_one = 0.0;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
            const double x = -5.0 + 0.5 * i;
            const double t = -5.0 + 0.5 * j;
            const double c = L(x, t);
            const double r = (L(x, t + h) - L(x, t - h)) / (2.0 * h) - (L(x + h, t) - 2.0 * c + L(x - h, t)) / (h * h);
            worst = std::max(worst, std::abs(r) / c);
            if (x == 1.0 && t == 1.0)
                at_one = std::abs(r);
        }
    return {worst <= 1e-6 && at_one <= 1e-6, "max |residual|/Lambda on [-5,5]^2 " + sci(worst) +
                                                 " (<= 1e-6), absolute at (1,1) " + sci(at_one) + " (<= 1e-6)"};
}

// 3: w10 equation, Whitney far field and the tanh law
Outcome fold_layer()
{
    double coarse = 0.0;
    double fine = 0.0;
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            coarse = std::max(coarse, std::abs(w10_residual(-5.0 + i, -5.0 + j, 1.0, 5e-3)));
            fine = std::max(fine, std::abs(w10_residual(-5.0 + i, -5.0 + j, 1.0, 2.5e-3)));
        }
    const double ratio = coarse / fine;

    std::vector<double> d;
    for (double lam : {2.0, 4.0, 8.0})
        d.push_back(fold_far_field_defect(lam * lam * lam, -lam * lam));
    const double whitney = log_slope(2.0, 8.0, d[0], d[2]);

    std::vector<double> sup;
    for (double tau : {9.0, 16.0, 25.0}) {
        double m = 0.0;
        for (int k = -20; k <= 20; ++k) {
            const double xi = 2.0 * (0.05 * k) / std::sqrt(tau);
            m = std::max(m, std::abs(w10(xi, tau) - tau_plus_comparator(xi, tau)));
        }
        sup.push_back(m);
    }
    const double tanh_law = log_slope(9.0, 25.0, sup[0], sup[2]);

    const bool ok = fine <= 1e-5 && ratio >= 3.6 && ratio <= 4.4 && whitney <= -1.0 && d[0] > d[1] && d[1] > d[2] &&
                    tanh_law <= -1.0;
    return {ok, "residual " + sci(fine) + " at h=2.5e-3 (<= 1e-5), halving ratio " + fmt("%.2f", ratio) +
                    " (about 4), Whitney defect slope " + fmt("%.2f", whitney) + " (<= -1), tanh-law slope " +
                    fmt("%.2f", tanh_law) + " (<= -1)"};
}

SweepReport sweep(const std::string& text) { return run_scenario(parse_config_text(text)); }

std::string rows_of(const SweepReport& r)
{
    std::string s;
    for (const auto& leg : r.legs)
        s += (s.empty() ? "" : ", ") + sci(leg.sup_error);
    return s;
}

// 4: fold sweep
Outcome fold_sweep()
{
    const auto r = sweep("[scenario]\nkind = fold\n[flux]\nkind = burgers\n[initial]\nvariant = tanh\n"
                         "[sweep]\nepsilon = [1e-2, 5e-3, 2.5e-3]\n[report]\nslope_band = [0.4, inf]\n");
    return {r.pass && !r.degenerate, "errors " + rows_of(r) + ", slope " + fmt("%.3f", r.slope) + " (>= 0.4)"};
}

// 5: weak-shock formulas and sweep
Outcome weakshock()
{
    double r2 = 0.0, r3 = 0.0;
    for (double b : {0.5, 1.0})
        for (int i = 0; i <= 12; ++i)
            for (int j = 0; j <= 12; ++j) {
                r2 = std::max(r2, std::abs(w20_residual(-3.0 + 0.5 * i, -3.0 + 0.5 * j, b, 1e-3)));
                r3 = std::max(r3, std::abs(w30_residual(-3.0 + 0.5 * i, -3.0 + 0.5 * j, b, 1e-3)));
            }
    const double v2 = w20(0.0, 0.0, 0.75);
    const double v3 = w30(0.0, 0.0, 0.75);
    const auto r = sweep("[scenario]\nkind = weakshock\n[flux]\nkind = burgers\n[initial]\nvariant = weak\na = 1\n"
                         "[sweep]\nepsilon = [1e-2, 5e-3, 2.5e-3]\n[report]\nslope_band = [0.1, inf]\n");
    const bool ok = r2 <= 1e-5 && r3 <= 1e-5 && std::abs(v2 - 1.0109) <= 1e-3 && std::abs(v3 + 1.0034) <= 1e-3 &&
                    r.pass && !r.degenerate;
    return {ok, "residuals w20 " + sci(r2) + ", w30 " + sci(r3) + " (<= 1e-5), w20(0,0) " + fmt("%.5f", v2) +
                    ", w30(0,0) " + fmt("%.5f", v3) + ", relative errors " + rows_of(r) + ", slope " +
                    fmt("%.3f", r.slope) + " (>= 0.1)"};
}

// 6: merging shocks
Outcome collision_layer()
{
    auto w = [](double z, double t) { return merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, z, t); };
    const double h = 1e-2;
    double res = 0.0;
    for (int i = -150; i <= 150; ++i)
        for (int j = -150; j <= 150; ++j) {
            const double z = 0.1 * i;
            const double t = 0.1 * j;
            const double c = w(z, t);
            const double r = (w(z, t + h) - w(z, t - h)) / (2.0 * h) + c * (w(z + h, t) - w(z - h, t)) / (2.0 * h) -
                             (w(z + h, t) - 2.0 * c + w(z - h, t)) / (h * h);
            res = std::max(res, std::abs(r));
        }
    const LayerFunction layer = w;
    const LayerFunction two = [](double z, double t) { return two_shock_comparator(1.0, 0.0, -1.0, 0.0, 0.0, z, t); };
    const LayerFunction one = [](double z, double t) { return one_shock_comparator(1.0, 0.0, -1.0, 0.0, 0.0, z, t); };
    const std::vector<double> early{-10.0, -20.0, -40.0};
    const std::vector<double> late{10.0, 20.0, 40.0};
    std::vector<double> before, after;
    for (double t : early)
        before.push_back(matching_defect(layer, two, t, 60.0));
    for (double t : late)
        after.push_back(matching_defect(layer, one, t, 60.0));
    const auto fb = fit_exponential_rate(early, before);
    const auto fa = fit_exponential_rate(late, after);
    const bool ok = res <= 1e-6 && fb.rate > 0.0 && fa.rate > 0.0;
    return {ok, "residual " + sci(res) + " at h=1e-2 on |zeta|,|tau|<=15 (<= 1e-6), defect rates " +
                    fmt("%.3f", fb.rate) + " (tau<=-10) and " + fmt("%.3f", fa.rate) + " (tau>=10) (> 0)"};
}

// 7: initial-jump sweep
Outcome initial_jump()
{
    const auto r = sweep("[scenario]\nkind = initial-jump\n[flux]\nkind = burgers\n"
                         "[initial]\nvariant = step\nu_minus = 1\nu_plus = -1\n"
                         "[sweep]\nepsilon = [0.1, 0.05, 0.025]\n[report]\nslope_band = [0.8, inf]\n");
    return {r.pass && !r.degenerate, "errors " + rows_of(r) + ", slope " + fmt("%.3f", r.slope) + " (>= 0.8)"};
}

// 8: large-gradient error orders
Outcome large_gradient()
{
    const std::string base = "[scenario]\nkind = large-gradient\nformula = ";
    const std::string rest = "\n[flux]\nkind = burgers\n[sweep]\nepsilon = [0.05]\n"
                             "rho = [0.01, 0.005, 0.0025, 0.00125]\n[report]\nslope_band = ";
    const auto c = sweep(base + "composite" + rest + "[0.3, 0.8]\n");
    const auto r = sweep(base + "renormalized" + rest + "[0.15, 0.5]\n");
    return {c.pass && r.pass && !c.degenerate && !r.degenerate,
            "composite errors " + rows_of(c) + ", slope " + fmt("%.3f", c.slope) +
                " (in [0.3, 0.8]); renormalized errors " + rows_of(r) + ", slope " + fmt("%.3f", r.slope) +
                " (in [0.15, 0.5])"};
}

// 9: limit machinery
Outcome limit_machinery()
{
    const auto phi = burgers_flux(-3.0, 3.0);
    const auto q = InitialData::smooth(tanh_profile(-1.0), 1.0, -1.0);
    const auto p = catastrophe_point(q, phi);
    const double cat = std::max(std::abs(p.x_star), std::abs(p.t_star - 1.0));

    const auto three = InitialData::piecewise_constant({-1.0, 1.0}, {2.0, 0.0, -2.0});
    const auto births = jump_points(three, phi);
    const auto left = track_shock(three, phi, births.at(0), 1.5, 60);
    const auto right = track_shock(three, phi, births.at(1), 1.5, 60);
    const auto hit = detect_collision(left, right, phi);
    const double col = std::max(std::abs(hit.x_star), std::abs(hit.t_star - 1.0));

    const auto skew = InitialData::smooth(tanh_profile(-1.0, 1.0, 0.3), 1.3, -0.7);
    // the three-state curves are checked up to the collision, the others to their end
    const std::vector<std::pair<ShockCurve, double>> curves{
        {track_shock(q, phi, p, 3.0, 400), 3.0},
        {left, hit.t_star},
        {right, hit.t_star},
        {track_shock(skew, phi, catastrophe_point(skew, phi), 3.0, 400), 3.0}};
    double rh = 0.0;
    for (const auto& [c, t_last] : curves)
        for (std::size_t k = 1; k + 1 < c.t.size() && c.t[k + 1] <= t_last; ++k) {
            const double ds = (c.s[k + 1] - c.s[k - 1]) / (c.t[k + 1] - c.t[k - 1]);
            rh = std::max(rh, std::abs(ds - phi.chord_speed(c.u_minus[k], c.u_plus[k])));
        }
    return {cat <= 1e-10 && col <= 1e-6 && rh <= 1e-6,
            "catastrophe offset " + sci(cat) + " (<= 1e-10), collision offset " + sci(col) +
                " (<= 1e-6), Rankine-Hugoniot defect " + sci(rh) + " over 4 curves (<= 1e-6)"};
}

// 10: invariant suite
Outcome invariants()
{
    const auto checks = run_verify_suite();
    int failed = 0;
    std::string names;
    for (const auto& c : checks)
        if (!c.passed) {
            ++failed;
            names += " " + c.name;
        }
    return {failed == 0, std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) +
                             " checks pass" + (failed ? ", failing:" + names : "")};
}

struct Criterion {
    int id;
    const char* title;
    double limit_s;  // runtime ceiling, 0 for none
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"asymlab acceptance criteria"};
    std::vector<int> only;
    app.add_option("--only", only, "run just these criteria")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "reference solver matches the Cole-Hopf oracle", 60.0, solver_oracle},
        {2, "Lambda solves the heat equation", 30.0, lambda_heat},
        {3, "fold layer equation and far-field laws", 0.0, fold_layer},
        {4, "gradient-catastrophe error order", 300.0, fold_sweep},
        {5, "weak-shock formulas and leading-term sweep", 0.0, weakshock},
        {6, "merging-shock layer is exact", 30.0, collision_layer},
        {7, "initial-jump leading term", 0.0, initial_jump},
        {8, "large-gradient error orders", 600.0, large_gradient},
        {9, "limit machinery", 0.0, limit_machinery},
        {10, "invariant suite", 300.0, invariants},
    };
    const std::set<int> chosen(only.begin(), only.end());

    int failed = 0;
    for (const auto& c : all) {
        if (!chosen.empty() && !chosen.count(c.id))
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string time = fmt("%.1f s", s);
        if (c.limit_s > 0.0) {
            time += fmt(" (< %.0f s)", c.limit_s);
            o.pass = o.pass && s < c.limit_s;
        }
        failed += o.pass ? 0 : 1;
        std::printf("ACCEPTANCE %2d %s  %s: %s; %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(),
                    time.c_str());
        std::fflush(stdout);
    }
    std::printf("%d failed\n", failed);
    return std::min(failed, 100);
}
