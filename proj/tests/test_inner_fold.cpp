#include "doctest.h"

#include <cmath>
#include <vector>

#include "asymlab/inner_fold.hpp"
#include "asymlab/quadrature.hpp"

using namespace asymlab;

namespace {

// Lambda by adaptive Gauss-Kronrod panels on a fixed window: an independent path.
std::pair<double, double> lambda_panels(double xi, double tau)
{
    std::vector<double> breaks;
    for (int k = 0; k <= 240; ++k)
        breaks.push_back(-12.0 + 24.0 * k / 240);
    auto f = [&](double z) { return std::exp(-(z * z * z * z - 2.0 * z * z * tau + 4.0 * z * xi) / 8.0); };
    const double v = integrate_panels(f, breaks, 1e-14).value;
    const double d = integrate_panels([&](double z) { return -0.5 * z * f(z); }, breaks, 1e-14).value;
    return {v, d};
}

double heat_residual_relative(double xi, double tau, double h)
{
    auto L = [](double x, double t) { return lambda_integral(x, t).value; };
    const double c = L(xi, tau);
    const double lt = (L(xi, tau + h) - L(xi, tau - h)) / (2.0 * h);
    const double lxx = (L(xi + h, tau) - 2.0 * c + L(xi - h, tau)) / (h * h);
    return std::abs(lt - lxx) / c;
}

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

} // namespace

TEST_CASE("Lambda integral")
{
    const auto c = lambda_integral(0.0, 0.0);
    CHECK(c.value == doctest::Approx(std::pow(2.0, 0.75) * std::tgamma(0.25) / 2.0).epsilon(1e-12));
    CHECK(std::abs(c.d_xi) < 1e-14);
    CHECK(lambda_integral(1.3, -0.7).value == doctest::Approx(lambda_integral(-1.3, -0.7).value).epsilon(1e-12));

    for (double xi : {-4.0, -1.0, 0.3, 2.5})
        for (double tau : {-4.0, -0.5, 1.0, 4.5}) {
            const auto a = lambda_integral(xi, tau);
            const auto b = lambda_panels(xi, tau);
            CHECK(a.value == doctest::Approx(b.first).epsilon(1e-11));
            CHECK(a.d_xi == doctest::Approx(b.second).epsilon(1e-10));
            CHECK(a.value > 0.0);
            CHECK(lambda_integral(-xi, tau).d_xi == doctest::Approx(-a.d_xi).epsilon(1e-11));
        }

    const double h = 1e-3;
    auto L = [](double x, double t) { return lambda_integral(x, t).value; };
    const double abs_res =
        std::abs((L(1.0, 1.0 + h) - L(1.0, 1.0 - h)) / (2.0 * h) - (L(1.0 + h, 1.0) - 2.0 * L(1.0, 1.0) + L(1.0 - h, 1.0)) / (h * h));
    CHECK(abs_res <= 1e-6);

    double worst = 0.0;
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j)
            worst = std::max(worst, heat_residual_relative(-5.0 + i, -5.0 + j, h));
    CHECK(worst <= 1e-6);

    // scaled form survives where the plain value overflows
    const auto big = lambda_scaled(0.0, 200.0);
    CHECK(std::isfinite(big.value));
    CHECK(big.log_scale == doctest::Approx(200.0 * 200.0 / 8.0));
    CHECK_THROWS_AS(lambda_scaled(2e3, 0.0), Error);
}

TEST_CASE("w10 values and symmetry")
{
    for (double tau : {-6.0, 0.0, 3.0, 9.0})
        CHECK(std::abs(w10(0.0, tau)) < 1e-13);
    CHECK(w10(2.0, -3.0, 2.0) == doctest::Approx(w10(2.0, -3.0, 1.0) / 2.0).epsilon(1e-13));
    for (double xi : {0.4, 1.7, 3.3})
        for (double tau : {-2.0, 0.5, 4.0})
            CHECK(w10(-xi, tau) == doctest::Approx(-w10(xi, tau)).epsilon(1e-12));

    const double w = w10(10.0, -10.0);
    const auto oracle = lambda_panels(10.0, -10.0);
    CHECK(w == doctest::Approx(-2.0 * oracle.second / oracle.first).epsilon(1e-10));
    const double H = whitney_fold_root(10.0, -10.0);
    CHECK(H == doctest::Approx(-0.9217).epsilon(1e-4));
    // saddle-point mean of z: H + E'''/(2 E''^2) with E'' = -(3H^2 - tau)/2, E''' = -3H
    const double e2 = -(3.0 * H * H + 10.0) / 2.0;
    CHECK(w == doctest::Approx(H - 3.0 * H / (2.0 * e2 * e2)).epsilon(3e-3));
    CHECK(w == doctest::Approx(-0.8887).epsilon(1e-3));
    CHECK_THROWS_AS(w10(1.0, 1.0, 0.0), Error);
}

TEST_CASE("w10 solves its equation")
{
    CHECK(std::abs(w10_residual(0.0, 0.0, 1.0, 1e-2)) <= 1e-5);
    for (double tau : {-3.0, 0.0, 2.0})
        CHECK(std::abs(w10_residual(0.0, tau, 1.0, 1e-2)) <= 1e-12);
    const double ratio = w10_residual(1.0, -1.0, 1.0, 1e-2) / w10_residual(1.0, -1.0, 1.0, 5e-3);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
    // scaled prefactor
    CHECK(std::abs(w10_residual(0.7, 0.4, 2.5, 5e-3)) <= 1e-5);

    double coarse = 0.0;
    double fine = 0.0;
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            coarse = std::max(coarse, std::abs(w10_residual(-5.0 + i, -5.0 + j, 1.0, 5e-3)));
            fine = std::max(fine, std::abs(w10_residual(-5.0 + i, -5.0 + j, 1.0, 2.5e-3)));
        }
    INFO("residuals " << coarse << " " << fine);
    CHECK(fine <= 1e-5);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));
    CHECK_THROWS_AS(w10_residual(0.0, 0.0, 1.0, 0.5), Error);
}

TEST_CASE("Whitney fold root")
{
    CHECK(whitney_fold_root(0.0, -1.0) == 0.0);
    CHECK(whitney_fold_root(6.0, 1.0) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(code_of([] { whitney_fold_root(0.0, 4.0); }) == ErrorCode::inside_cusp);
    const auto three = fold_cubic_roots(0.0, 4.0);
    REQUIRE(three.size() == 3);
    CHECK(three[0] == doctest::Approx(-2.0));
    CHECK(std::abs(three[1]) < 1e-14);
    CHECK(three[2] == doctest::Approx(2.0));
    for (double xi : {-50.0, -3.0, 0.2, 7.0})
        for (double tau : {-20.0, -1.0, 0.0, 1.5}) {
            if (27.0 * xi * xi < 4.0 * tau * tau * tau)
                continue;
            const double H = whitney_fold_root(xi, tau);
            CHECK(std::abs(H * H * H - tau * H + xi) <= 1e-14 * std::max(1.0, std::abs(xi)));
        }
}

TEST_CASE("far-field laws")
{
    std::vector<double> lams{2.0, 4.0, 8.0};
    std::vector<double> defects;
    for (double lam : lams)
        defects.push_back(fold_far_field_defect(lam * lam * lam, -lam * lam));
    const double slope = std::log(defects[2] / defects[0]) / std::log(lams[2] / lams[0]);
    CHECK(slope <= -1.0);
    CHECK(defects[0] > defects[1]);
    CHECK(defects[1] > defects[2]);
    CHECK(fold_far_field_defect(0.0, -25.0) < 1e-13);
    CHECK(fold_far_field_defect(6.0, 1.0) < 2.0 / 3.0);
    CHECK(code_of([] { fold_far_field_defect(0.0, -1.0); }) == ErrorCode::window_violation);

    // tau -> +infinity
    CHECK(std::abs(w10(0.0, 9.0) - tau_plus_comparator(0.0, 9.0)) < 1e-14);
    std::vector<double> taus{9.0, 16.0, 25.0};
    std::vector<double> sup;
    for (double tau : taus) {
        double d = 0.0;
        for (int k = -10; k <= 10; ++k) {
            const double xi = 2.0 * (0.1 * k) / std::sqrt(tau);
            d = std::max(d, std::abs(w10(xi, tau) - tau_plus_comparator(xi, tau)));
        }
        sup.push_back(d);
    }
    CHECK(std::log(sup[2] / sup[0]) / std::log(taus[2] / taus[0]) <= -1.0);
    std::vector<double> half;
    for (double tau : taus) {
        const double xi = 1.0 / std::sqrt(tau);  // z = 1/2
        half.push_back(std::abs(w10(xi, tau) - tau_plus_comparator(xi, tau)));
    }
    CHECK(std::log(half[2] / half[0]) / std::log(taus[2] / taus[0]) <= -1.0);
    CHECK(std::abs(w10(0.4, 25.0) - tau_plus_comparator(0.4, 25.0)) / 5.0 <= 2e-2);
    CHECK(code_of([] { tau_plus_comparator(0.1, 2.0); }) == ErrorCode::window_violation);
    CHECK(code_of([] { tau_plus_comparator(3.0, 9.0); }) == ErrorCode::window_violation);

    // tau -> -infinity
    const auto zero = tau_minus_selfsimilar_check(0.0, {-9.0, -16.0, -25.0});
    for (double v : zero.values)
        CHECK(std::abs(v) < 1e-13);
    const auto s = tau_minus_selfsimilar_check(0.5, {-9.0, -16.0, -25.0});
    CHECK(s.gaps[1] < s.gaps[0]);
    CHECK(s.values.back() == doctest::Approx(s.fold_value).epsilon(0.05));
    CHECK(s.fold_value * s.fold_value * s.fold_value + s.fold_value + 0.5 == doctest::Approx(0.0));
    CHECK_THROWS_AS(tau_minus_selfsimilar_check(0.5, {-9.0, -16.0}), Error);
}

TEST_CASE("fold evaluation regimes")
{
    CHECK(evaluate_fold(0.0, 0.0).regime == FoldRegime::core);
    CHECK(evaluate_fold(0.2, 16.0).regime == FoldRegime::tau_plus);
    CHECK(evaluate_fold(1.0, -9.0).regime == FoldRegime::tau_minus);
    CHECK(evaluate_fold(6.0, 1.0).regime == FoldRegime::fold_far_field);
    const auto e = evaluate_fold(1.2, -0.5);
    CHECK(e.lambda_value > 0.0);
    CHECK(e.w10 == doctest::Approx(w10(1.2, -0.5)));
}

TEST_CASE("fold normalization from the catastrophe point")
{
    const auto q = InitialData::smooth(tanh_profile(-1.0), 1.0, -1.0);
    const auto n = FoldNormalization::from(catastrophe_point(q, burgers_flux()));
    CHECK(n.lam == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-6));
    CHECK(std::abs(n.x_star) < 1e-10);
    CHECK(n.t_star == doctest::Approx(1.0));
    const auto [xi, tau] = n.inner(0.01, 1.1, 1e-2);
    CHECK(xi == doctest::Approx(n.lam * 0.01 / std::pow(1e-2, 0.75)));
    CHECK(tau == doctest::Approx(n.lam * n.lam * 1.0).epsilon(1e-9));
    CHECK(n.leading(0.0, 1.3, 1e-3) == doctest::Approx(0.0));

    SingularPoint jump;
    jump.kind = SingularKind::initial_jump;
    CHECK_THROWS_AS(FoldNormalization::from(jump), Error);
}
