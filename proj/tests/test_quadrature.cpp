#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "asymlab/quadrature.hpp"

using namespace asymlab;

namespace {

// brute-force trapezoid oracle on a truncated interval
double trapezoid(const std::function<double(double)>& f, double a, double b, long n)
{
    const double h = (b - a) / n;
    double s = 0.5 * (f(a) + f(b));
    for (long i = 1; i < n; ++i)
        s += f(a + i * h);
    return s * h;
}

} // namespace

TEST_CASE("real line integrals")
{
    const auto g = integrate_real_line([](double y) { return std::exp(-y * y); }, 1e-12);
    CHECK(g.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK(g.error_estimate >= 0.0);

    auto quartic = [](double z) { return std::exp(-z * z * z * z / 8.0); };
    const double oracle = trapezoid(quartic, -12.0, 12.0, 1000000);
    const double gamma_form = std::pow(2.0, 0.75) * std::tgamma(0.25) / 2.0;
    CHECK(oracle == doctest::Approx(gamma_form).epsilon(1e-12));
    const auto q = integrate_real_line(quartic, 1e-12);
    CHECK(q.value == doctest::Approx(gamma_form).epsilon(1e-12));
    // the quoted decimal 3.048795 is a rounding of the Gamma form (3.0487589...)
    CHECK(q.value == doctest::Approx(3.048795).epsilon(2e-5));

    const auto odd = integrate_real_line([](double z) { return z * std::exp(-z * z * z * z); }, 1e-12);
    CHECK(std::abs(odd.value) <= 1e-12);
}

TEST_CASE("half line integrals")
{
    CHECK(integrate_half_line([](double s) { return std::exp(-s); }, 1e-12).value ==
          doctest::Approx(1.0).epsilon(1e-13));
    const auto c = integrate_half_line([](double s) { return std::exp(-s * s * s); }, 1e-12);
    CHECK(c.value == doctest::Approx(std::tgamma(1.0 / 3.0) / 3.0).epsilon(1e-12));
    CHECK(c.value == doctest::Approx(0.8929795).epsilon(1e-6));
    const auto m = integrate_half_line([](double s) { return s * std::exp(-s * s * s); }, 1e-12);
    CHECK(m.value == doctest::Approx(std::tgamma(2.0 / 3.0) / 3.0).epsilon(1e-12));
    CHECK(m.value == doctest::Approx(0.4513726).epsilon(1e-6));
}

TEST_CASE("refinement does not move the value beyond the estimate")
{
    auto f = [](double z) { return std::exp(-(z * z * z * z - 2.0 * z * z * 3.0 + 4.0 * z * 1.5) / 8.0); };
    const auto r = integrate_real_line(f, 1e-10);
    const auto fine = integrate_real_line(f, 1e-14);
    CHECK(std::abs(fine.value - r.value) <= std::max(1e-10 * std::abs(r.value), r.error_estimate));
}

TEST_CASE("off-centre integrands with a location hint")
{
    const auto r = integrate_real_line([](double y) { return std::exp(-(y - 50.0) * (y - 50.0)); }, 1e-12,
                                       {50.0, 1.0});
    CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
    const auto h = integrate_half_line([](double s) { return std::exp(-(s - 30.0) * (s - 30.0)); }, 1e-12,
                                       {0.0, 30.0});
    CHECK(h.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("finite intervals and panels")
{
    CHECK(integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-12).value ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(integrate_panels([](double x) { return std::abs(x); }, {-1.0, 0.0, 2.0}, 1e-13).value ==
          doctest::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("linearity on random gaussian mixtures")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double c1 = U(rng), c2 = U(rng), w1 = 1.0 + 0.5 * U(rng), w2 = 1.0 + 0.5 * U(rng);
        const double a = 3.0 * U(rng), b = 3.0 * U(rng);
        auto f = [=](double x) { return std::exp(-w1 * (x - c1) * (x - c1)); };
        auto g = [=](double x) { return std::exp(-w2 * (x - c2) * (x - c2)) * (1.0 + 0.3 * std::sin(x)); };
        const auto If = integrate_real_line(f, 1e-12);
        const auto Ig = integrate_real_line(g, 1e-12);
        const auto Ih = integrate_real_line([&](double x) { return a * f(x) + b * g(x); }, 1e-12);
        const double budget =
            std::abs(a) * If.error_estimate + std::abs(b) * Ig.error_estimate + Ih.error_estimate + 1e-13;
        CHECK(std::abs(Ih.value - (a * If.value + b * Ig.value)) <= budget);
    }
}

TEST_CASE("tolerance outside the supported range is rejected")
{
    CHECK_THROWS_AS(integrate_real_line([](double y) { return std::exp(-y * y); }, 1e-2), Error);
}

TEST_CASE("half-normalized complementary error function")
{
    CHECK(erfc_half(0.0) == 0.5);
    CHECK(erfc_half(8.0) < 1e-28);
    CHECK(erfc_half(8.0) > 0.0);
    CHECK(erfc_half(1.0) == doctest::Approx(0.0786496).epsilon(1e-6));
    for (double z : {-3.0, -0.4, 0.0, 0.7, 2.5})
        CHECK(erfc_half(z) + erfc_half(-z) == doctest::Approx(1.0).epsilon(1e-14));
    // quadrature oracle: (1/sqrt(pi)) int_0^inf exp(-(y+z)^2) dy
    for (double z : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        const auto r = integrate_half_line([z](double y) { return std::exp(-(y + z) * (y + z)); }, 1e-13);
        const double oracle = r.value / std::sqrt(std::numbers::pi);
        CHECK(erfc_half(z) == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(erfc_half(z) == doctest::Approx(0.5 * std::erfc(z)).epsilon(1e-15));
    }
    // the log form stays finite where the value underflows
    CHECK(log_erfc_half(30.0) == doctest::Approx(-900.0 - std::log(30.0 * std::sqrt(std::numbers::pi)) +
                                                 std::log1p(-1.0 / 1800.0) - std::log(2.0))
                                     .epsilon(1e-7));
    CHECK(log_erfc_half(24.9) == doctest::Approx(std::log(0.5 * std::erfc(24.9))).epsilon(1e-12));
    CHECK(log_erfc_half(25.1) == doctest::Approx(std::log(0.5 * std::erfc(25.1))).epsilon(1e-12));
}

TEST_CASE("Gauss-Hermite rule")
{
    for (int n : {1, 2, 7, 20, 64}) {
        const auto r = gauss_hermite(n);
        double w = 0.0, m2 = 0.0, m4 = 0.0, odd = 0.0;
        for (int k = 0; k < n; ++k) {
            w += r.weights[k];
            m2 += r.weights[k] * r.nodes[k] * r.nodes[k];
            m4 += r.weights[k] * std::pow(r.nodes[k], 4);
            odd += r.weights[k] * std::pow(r.nodes[k], 3);
        }
        const double root_pi = std::sqrt(std::numbers::pi);
        CHECK(w == doctest::Approx(root_pi).epsilon(1e-13));
        CHECK(std::abs(odd) < 1e-13);
        if (n >= 2)
            CHECK(m2 == doctest::Approx(root_pi / 2.0).epsilon(1e-13));
        if (n >= 3)
            CHECK(m4 == doctest::Approx(3.0 * root_pi / 4.0).epsilon(1e-13));
    }
    // a non-polynomial integrand against the closed form: int cos(y) exp(-y^2) = sqrt(pi) exp(-1/4)
    const auto r = gauss_hermite(30);
    double c = 0.0;
    for (std::size_t k = 0; k < r.nodes.size(); ++k)
        c += r.weights[k] * std::cos(r.nodes[k]);
    CHECK(c == doctest::Approx(std::sqrt(std::numbers::pi) * std::exp(-0.25)).epsilon(1e-14));
    CHECK_THROWS_AS(gauss_hermite(0), Error);
}
