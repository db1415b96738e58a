#include "doctest.h"

#include <cmath>
#include <numbers>

#include "asymlab/inner_riemann.hpp"
#include "asymlab/large_gradient.hpp"
#include "asymlab/quadrature.hpp"

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

// For Burgers the inner series is the mu-expansion of the Cole-Hopf solution:
// with k_j the cumulants of N = int nu under s ~ sigma + 2 sqrt(omega) y,
// h1 = -k2'/4, h2 = k3'/24, h3 = -k4'/192 (primes in sigma).
struct CumulantOracle {
    double h1, h2, h3;
};

CumulantOracle cumulant_oracle(const Profile& nu, double sigma, double omega)
{
    const double w = 2.0 * std::sqrt(omega);
    double m[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
    double d[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (int k = 1; k <= 4; ++k) {
        auto mk = [&](double y) {
            const double s = sigma + w * y;
            return std::pow(nu.primitive(s), k) * std::exp(-y * y) / std::sqrt(std::numbers::pi);
        };
        auto dk = [&](double y) {
            const double s = sigma + w * y;
            return k * std::pow(nu.primitive(s), k - 1) * nu.value(s) * std::exp(-y * y) / std::sqrt(std::numbers::pi);
        };
        m[k] = integrate_real_line(mk, 1e-13).value;
        d[k] = integrate_real_line(dk, 1e-13).value;
    }
    const double k2 = d[2] - 2.0 * m[1] * d[1];
    const double k3 = d[3] - 3.0 * (d[2] * m[1] + m[2] * d[1]) + 6.0 * m[1] * m[1] * d[1];
    const double k4 = d[4] - 4.0 * (d[3] * m[1] + m[3] * d[1]) - 6.0 * m[2] * d[2] +
                      12.0 * (d[2] * m[1] * m[1] + 2.0 * m[2] * m[1] * d[1]) - 24.0 * m[1] * m[1] * m[1] * d[1];
    return {-k2 / 4.0, k3 / 24.0, -k4 / 192.0};
}

Profile sharp_step(double width)
{
    return tanh_profile(-0.5, width, 0.5);
}

} // namespace

TEST_CASE("heat evolution h0")
{
    const auto c = constant_profile(0.7);
    for (double s : {-3.0, 0.0, 5.0})
        for (double w : {1e-3, 0.5, 40.0})
            CHECK(h0(c, s, w) == doctest::Approx(0.7).epsilon(1e-12));

    const auto step = sharp_step(1e-9);
    for (double s : {-1.0, 0.5, 2.0})
        for (double w : {1e-2, 1.0, 4.0})
            CHECK(h0(step, s, w) == doctest::Approx(erfc_half(s / (2.0 * std::sqrt(w)))).epsilon(1e-8));

    const auto nu = default_large_gradient_profile();
    for (double w : {1e-4, 0.3, 10.0, 3e4})
        CHECK(std::abs(h0(nu, 0.0, w)) < 1e-13);
    CHECK(h0(nu, 0.4, 0.0) == nu.value(0.4));

    // comparison principle and bounds
    const auto higher = tanh_profile(-1.0, 1.0, 0.0, 0.5);
    for (double s = -4.0; s <= 4.0; s += 0.5)
        for (double w : {0.01, 0.7, 9.0}) {
            const double a = h0(nu, s, w);
            CHECK(a <= h0(higher, s, w) + 1e-14);
            CHECK(a <= 1.0);
            CHECK(a >= -1.0);
        }
    CHECK_THROWS_AS(h0(nu, 0.0, -1.0), Error);
}

TEST_CASE("inner series terms")
{
    const auto nu = default_large_gradient_profile();
    const auto phi = burgers_flux();

    for (auto [s, w] : {std::pair{0.5, 0.3}, {-1.0, 1.0}, {0.2, 0.05}}) {
        const auto o = cumulant_oracle(nu, s, w);
        CHECK(std::abs(hn(nu, phi, 1, s, w) - o.h1) <= 2e-6);
        CHECK(std::abs(hn(nu, phi, 2, s, w) - o.h2) <= 1e-3 * std::abs(o.h2) + 2e-5);
    }
    const auto o = cumulant_oracle(nu, 0.5, 0.3);
    CHECK(std::abs(hn(nu, phi, 3, 0.5, 0.3) - o.h3) <= 1e-6);

    // constants produce no sources
    const auto c = constant_profile(0.3);
    CHECK(std::abs(hn(c, phi, 1, 0.2, 0.8)) < 1e-14);
    CHECK(std::abs(hn(c, phi, 2, 0.2, 0.8)) < 1e-14);

    // parity
    for (double w : {0.1, 1.0, 3.0})
        CHECK(std::abs(hn(nu, phi, 1, 0.0, w)) < 1e-13);
    CHECK(hn(nu, phi, 1, -0.7, 0.5) == doctest::Approx(-hn(nu, phi, 1, 0.7, 0.5)).epsilon(1e-12));

    // start-up: vanishing initial data, sqrt(omega) growth for a step at fixed similarity variable
    for (int n : {1, 2})
        CHECK(std::abs(hn(nu, phi, n, 0.5, 1e-6)) < 1e-5);
    CHECK(std::abs(hn(nu, phi, 3, 0.5, 1e-6)) < 1e-8);
    const auto step = sharp_step(1e-7);
    const double r3 = hn(step, phi, 1, 2.0 * std::sqrt(1e-3) * 0.25, 1e-3) / std::sqrt(1e-3);
    const double r4 = hn(step, phi, 1, 2.0 * std::sqrt(1e-4) * 0.25, 1e-4) / std::sqrt(1e-4);
    CHECK(r3 == doctest::Approx(r4).epsilon(0.2));
    CHECK(std::abs(r3) > 1e-3);

    CHECK(code_of([&] { hn(nu, phi, 4, 0.0, 1.0); }) == ErrorCode::order_too_high);
    CHECK(hn(nu, phi, 0, 0.3, 0.2) == h0(nu, 0.3, 0.2));

    // a non-Burgers flux runs the same chain
    FluxSpec spec;
    spec.kind = FluxKind::polynomial;
    spec.coefficients = {0.0, 0.0, 0.5, 1.0 / 6.0};
    spec.interval_lo = -1.0;
    spec.interval_hi = 1.0;
    const auto cubic = make_flux(spec);
    const double a = hn(nu, cubic, 2, 0.3, 0.4);
    CHECK(std::isfinite(a));
    CHECK(a != doctest::Approx(hn(nu, phi, 2, 0.3, 0.4)));
}

TEST_CASE("inner series improves on h0 near the origin")
{
    const auto nu = default_large_gradient_profile();
    const auto phi = burgers_flux();
    const auto tails = default_large_gradient_tails();
    const auto st = TwoParamState::from(0.05, 0.005);
    const auto q = InitialData::scaled(nu, st.rho, tails);
    double e0 = 0.0;
    double e1 = 0.0;
    for (double s = -1.0; s <= 1.0; s += 0.25)
        for (double w : {0.1, 0.4, 0.7, 1.0}) {
            const double u = cole_hopf_burgers(q, st.rho * s, st.rho * st.rho * w / st.eps, st.eps);
            const double a = h0(nu, s, w);
            e0 = std::max(e0, std::abs(u - a));
            e1 = std::max(e1, std::abs(u - a - st.mu * hn(nu, phi, 1, s, w)));
        }
    INFO("h0 alone " << e0 << ", with mu h1 " << e1);
    CHECK(e1 < e0);
    CHECK(e1 < 0.1 * e0);
}

TEST_CASE("inner Riemann solution")
{
    const auto phi = burgers_flux();
    const auto tails = default_large_gradient_tails();
    for (double t : {0.5, 5.0, 50.0})
        CHECK(std::abs(gamma_riemann(phi, tails, 0.0, t)) < 1e-14);
    for (double e = -10.0; e <= 10.0; e += 0.5)
        CHECK(std::abs(gamma_riemann(phi, tails, e, 50.0) + std::tanh(e / 2.0)) <= 1e-3);
    TailExpansion flat;
    flat.nu0_minus = 0.4;
    flat.nu0_plus = 0.4;
    CHECK(gamma_riemann(phi, flat, 3.0, 2.0) == 0.4);

    // the numerical table against the exact Burgers layer
    const GammaTable table(phi, 1.0, -1.0, 10.0);
    double err = 0.0;
    for (double e = -15.0; e <= 15.0; e += 0.37)
        for (double t : {0.5, 2.0, 9.5})
            err = std::max(err, std::abs(table(e, t) - burgers_step_exact(1.0, -1.0, e, t)));
    CHECK(err <= 2e-3);
    CHECK(table(-100.0, 5.0) == 1.0);
    CHECK_THROWS_AS(table(0.0, 11.0), Error);

    // another flux goes through the cached table
    FluxSpec spec;
    spec.kind = FluxKind::polynomial;
    spec.coefficients = {0.0, 0.0, 0.5, 1.0 / 6.0};
    spec.interval_lo = -1.0;
    spec.interval_hi = 1.0;
    const auto cubic = make_flux(spec);
    const double speed = cubic.chord_speed(1.0, -1.0);
    for (double e : {-20.0, -2.0, 0.0, 2.0, 20.0}) {
        const double v = gamma_riemann(cubic, tails, e + speed * 8.0, 8.0);
        CHECK(v <= 1.0 + 1e-9);
        CHECK(v >= -1.0 - 1e-9);
    }
    CHECK(gamma_riemann(cubic, tails, speed * 8.0 - 30.0, 8.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(gamma_riemann(cubic, tails, speed * 8.0 + 30.0, 8.0) == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("erfc bridge")
{
    const auto tails = default_large_gradient_tails();
    CHECK(std::abs(r000(tails, 0.0)) < 1e-15);
    TailExpansion t2;
    t2.nu0_minus = 2.0;
    t2.nu0_plus = 0.5;
    CHECK(r000(t2, 0.0) == doctest::Approx(1.25));
    CHECK(r000(t2, -40.0) == doctest::Approx(2.0));
    CHECK(r000(t2, 40.0) == doctest::Approx(0.5));
    CHECK(r000(tails, 1.0) == doctest::Approx(-0.8427008).epsilon(1e-7));
    for (double z = -3.0; z < 3.0; z += 0.25)
        CHECK(r000(t2, z + 0.25) < r000(t2, z));
}

TEST_CASE("composite and renormalized formulas")
{
    const auto nu = default_large_gradient_profile();
    const auto phi = burgers_flux();
    const auto tails = default_large_gradient_tails();
    const auto st = TwoParamState::from(0.05, 0.005);
    CHECK(st.mu == doctest::Approx(0.1));
    CHECK(st.z(0.3, 0.2) == doctest::Approx(st.sigma(0.3) / (2.0 * std::sqrt(st.omega(0.2)))));

    CHECK(std::abs(composite_u(0.0, 0.5, st, nu, phi, tails)) < 1e-12);
    const auto q = InitialData::scaled(nu, st.rho, tails);
    CHECK(std::abs(cole_hopf_burgers(q, 0.0, 0.5, st.eps)) <= 1e-6);

    TailExpansion flat;
    flat.nu0_minus = 0.3;
    flat.nu0_plus = 0.3;
    CHECK(composite_u(0.2, 0.4, st, constant_profile(0.3), phi, flat) == doctest::Approx(0.3));
    CHECK(composite_u(5.0, 0.3, st, nu, phi, tails) == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(composite_u(-5.0, 0.3, st, nu, phi, tails) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(std::abs(renormalized_u(0.0, 0.5, st, nu, phi, tails)) < 1e-10);
    // far left Gamma is nu0- throughout the convolution, and the prefactor normalizes it
    CHECK(renormalized_u(-5.0, 0.3, st, nu, phi, tails) == doctest::Approx(1.0).epsilon(1e-9));
    // rho -> 0 recovers Gamma itself
    const auto tiny = TwoParamState::from(0.05, 1e-6);
    for (double x : {-0.1, 0.03, 0.2})
        CHECK(std::abs(renormalized_u(x, 0.4, tiny, nu, phi, tails) - gamma_riemann(phi, tails, x / 0.05, 0.4 / 0.05)) <=
              1e-6);

    // both formulas track the exact solution
    for (double x : {-0.3, -0.05, 0.1, 0.6})
        for (double t : {0.2, 0.8}) {
            const double u = cole_hopf_burgers(q, x, t, st.eps);
            CHECK(std::abs(composite_u(x, t, st, nu, phi, tails) - u) <= 5e-3);
            CHECK(std::abs(renormalized_u(x, t, st, nu, phi, tails) - u) <= 5e-3);
        }

    CHECK(code_of([&] { renormalized_u(0.0, 0.5, st, constant_profile(0.3), phi, flat); }) == ErrorCode::degenerate_jump);
    CHECK_THROWS_AS(composite_u(0.0, 0.5, TwoParamState::from(0.05, 0.1), nu, phi, tails), Error);
    CHECK_THROWS_AS(composite_u(0.0, 0.0, st, nu, phi, tails), Error);
}
