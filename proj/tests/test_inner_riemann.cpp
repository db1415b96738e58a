#include "doctest.h"

#include <cmath>

#include "asymlab/inner_riemann.hpp"

using namespace asymlab;

namespace {

double merging(double z, double t) { return merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, z, t); }

double burgers_residual(const LayerFunction& w, double z, double t, double h)
{
    const double wt = (w(z, t + h) - w(z, t - h)) / (2.0 * h);
    const double wz = (w(z + h, t) - w(z - h, t)) / (2.0 * h);
    const double wzz = (w(z + h, t) - 2.0 * w(z, t) + w(z - h, t)) / (h * h);
    return wt + w(z, t) * wz - wzz;
}

} // namespace

TEST_CASE("two-state profile")
{
    for (double y : {-3.0, -0.2, 0.0, 1.0, 5.0})
        CHECK(two_state_profile(1.0, -1.0, y) == doctest::Approx(-std::tanh(y / 2.0)).epsilon(1e-14));
    CHECK(two_state_profile(2.0, 0.5, -1e4) == 2.0);
    CHECK(two_state_profile(2.0, 0.5, 1e4) == 0.5);
}

TEST_CASE("exact step layer")
{
    for (double t : {0.01, 1.0, 7.0, 100.0})
        CHECK(std::abs(burgers_step_exact(1.0, -1.0, 0.0, t)) < 1e-14);
    for (double z : {-3.0, -1.0, 0.5, 2.0})
        CHECK(std::abs(burgers_step_exact(1.0, -1.0, z, 50.0) + std::tanh(z / 2.0)) <= 1e-6);
    // early times approach the step
    CHECK(burgers_step_exact(1.0, -1.0, -1.0, 1e-4) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(burgers_step_exact(1.0, -1.0, 1.0, 1e-4) == doctest::Approx(-1.0).epsilon(1e-12));
    // large arguments stay finite
    CHECK(burgers_step_exact(3.0, -2.0, 400.0, 30.0) == doctest::Approx(-2.0));

    const auto exact = [](double z, double t) { return burgers_step_exact(1.0, -1.0, z, t); };
    const auto field = sample_field(exact, -10.0, 10.0, 2001, 1.0, 10.0, 901);
    CHECK(max_interior(pde_residual(field, burgers_flux(), 1.0)) <= 1e-4);
    double r = 0.0;
    for (double z = -8.0; z <= 8.0; z += 0.37)
        for (double t : {0.3, 1.0, 4.0})
            r = std::max(r, std::abs(burgers_residual(exact, z, t, 1e-3)));
    CHECK(r <= 1e-5);
}

TEST_CASE("numerical step layer")
{
    const auto phi = burgers_flux();
    const auto w = step_inner_w0(phi, 1.0, -1.0, 0.0, {40.0, 4000, 20.0, 0});
    double err_exact = 0.0;
    for (double z = -10.0; z <= 10.0; z += 0.01)
        for (double t : {1.0, 2.5, 5.0, 10.0})
            err_exact = std::max(err_exact, std::abs(w.value(z, t) - burgers_step_exact(1.0, -1.0, z, t)));
    CHECK(err_exact <= 1e-4);

    double err_profile = 0.0;
    for (double z = -10.0; z <= 10.0; z += 0.05)
        err_profile = std::max(err_profile, std::abs(w.value(z, 20.0) + std::tanh(z / 2.0)));
    CHECK(err_profile <= 1e-3);

    const auto& f = w.field;
    for (int n = 1; n <= f.nt; n += 50)
        CHECK(std::abs(f.mass(n) - f.mass(0)) <= 1e-8);
    for (double v : f.values) {
        CHECK(v <= 1.0 + 1e-8);
        CHECK(v >= -1.0 - 1e-8);
    }
    CHECK_THROWS_AS(step_inner_w0(phi, -1.0, 1.0, 0.0), Error);
}

TEST_CASE("moving frame for a non-Burgers flux")
{
    FluxSpec spec;
    spec.kind = FluxKind::polynomial;
    spec.coefficients = {0.0, 0.0, 0.5, 0.1};
    spec.interval_lo = -1.0;
    spec.interval_hi = 1.5;
    const auto phi = make_flux(spec);
    const double s = phi.chord_speed(1.0, -0.5);
    const auto w = step_inner_w0(phi, 1.0, -0.5, s, {30.0, 1500, 15.0, 0});
    // stationary in the RH frame: the half level stays near the origin
    int i = 0;
    const auto& f = w.field;
    while (f.at(f.nt, i + 1) > 0.25)
        ++i;
    CHECK(std::abs(f.x(i)) < 1.0);
    CHECK(w.value(-25.0, 15.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(w.value(25.0, 15.0) == doctest::Approx(-0.5).epsilon(1e-8));
}

TEST_CASE("merging shocks")
{
    for (double t : {-30.0, -5.0, 0.0, 3.0, 30.0})
        CHECK(std::abs(merging(0.0, t)) < 1e-14);
    // unit jumps have tails exp(-|y|/2), so the far field is reached near |zeta| = 60
    for (double t : {-15.0, 0.0, 15.0}) {
        CHECK(std::abs(merging(-60.0, t) - 1.0) <= 1e-10);
        CHECK(std::abs(merging(60.0, t) + 1.0) <= 1e-10);
    }
    // band and odd symmetry with offsets
    for (double z = -20.0; z <= 20.0; z += 0.7)
        for (double t = -20.0; t <= 20.0; t += 0.9) {
            const double v = merging_shocks_exact(1.5, 0.2, -1.0, 0.7, -0.4, z, t);
            CHECK(v <= 1.5 + 1e-12);
            CHECK(v >= -1.0 - 1e-12);
            CHECK(merging(-z, t) == doctest::Approx(-merging(z, t)).epsilon(1e-12));
        }
    CHECK(std::isfinite(merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, 900.0, -2000.0)));
    CHECK_THROWS_AS(merging_shocks_exact(0.0, 1.0, -1.0, 0.0, 0.0, 0.0, 0.0), Error);
}

TEST_CASE("merging shocks solve the inner equation to second order")
{
    const LayerFunction w = merging;
    double r1 = 0.0;
    double r2 = 0.0;
    for (double z = -15.0; z <= 15.0; z += 0.1)
        for (double t = -15.0; t <= 15.0; t += 0.1) {
            r1 = std::max(r1, std::abs(burgers_residual(w, z, t, 1e-2)));
            r2 = std::max(r2, std::abs(burgers_residual(w, z, t, 5e-3)));
        }
    INFO("residuals " << r1 << " " << r2);
    CHECK(r1 <= 2e-6);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));

    // a shifted, asymmetric configuration
    const LayerFunction v = [](double z, double t) { return merging_shocks_exact(0.8, 0.1, -0.6, 1.0, -2.0, z, t); };
    double r3 = 0.0;
    for (double z = -15.0; z <= 15.0; z += 0.25)
        for (double t = -15.0; t <= 15.0; t += 0.25)
            r3 = std::max(r3, std::abs(burgers_residual(v, z, t, 1e-2)));
    CHECK(r3 <= 1e-6);
}

TEST_CASE("matching defects decay exponentially")
{
    const LayerFunction w = merging;
    const LayerFunction two = [](double z, double t) { return two_shock_comparator(1.0, 0.0, -1.0, 0.0, 0.0, z, t); };
    const LayerFunction one = [](double z, double t) { return one_shock_comparator(1.0, 0.0, -1.0, 0.0, 0.0, z, t); };

    CHECK(matching_defect(w, w, 3.0) == 0.0);

    std::vector<double> before, after;
    const std::vector<double> early{-10.0, -20.0, -40.0};
    const std::vector<double> late{10.0, 20.0, 40.0};
    for (double t : early)
        before.push_back(matching_defect(w, two, t, 60.0));
    for (double t : late)
        after.push_back(matching_defect(w, one, t, 60.0));
    CHECK(before[2] <= 1e-6);
    CHECK(before[0] > before[1]);
    CHECK(before[1] > before[2]);
    CHECK(after[0] > after[1]);
    CHECK(after[1] > after[2]);
    // the middle state's weight relative to the merged pair is exp(-tau/4)
    CHECK(after[2] == doctest::Approx(std::exp(-10.0) / 4.0).epsilon(0.2));

    const auto fb = fit_exponential_rate(early, before);
    const auto fa = fit_exponential_rate(late, after);
    CHECK(fb.rate > 0.0);
    CHECK(fa.rate > 0.0);
    // shocks separate at |tau|/2 and each tail decays like exp(-|y|/2)
    CHECK(fb.rate == doctest::Approx(0.5).epsilon(0.1));
    CHECK(fa.rate == doctest::Approx(0.25).epsilon(0.1));

    CHECK_THROWS_AS(fit_exponential_rate({1.0}, {0.1}), Error);
    CHECK_THROWS_AS(fit_exponential_rate({1.0, 2.0}, {0.1, 0.0}), Error);
    CHECK_THROWS_AS(fit_exponential_rate({2.0, -2.0}, {0.1, 0.2}), Error);
}

TEST_CASE("merged offset")
{
    const double b = merged_offset(1.5, 0.2, -1.0, 0.7, -0.4);
    // after the merge the layer is the single u1|u3 shock centred there
    const double t = 60.0;
    const double centre = 0.5 * (1.5 - 1.0) * t + b;
    CHECK(merging_shocks_exact(1.5, 0.2, -1.0, 0.7, -0.4, centre, t) == doctest::Approx(0.25).epsilon(1e-6));
}
