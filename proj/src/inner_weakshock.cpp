#include "asymlab/inner_weakshock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "asymlab/quadrature.hpp"

namespace asymlab {

WeakShockParams WeakShockParams::from(double a, double phi3_at_0)
{
    if (!(a > 0.0))
        throw Error(ErrorCode::invalid_argument, "weak-discontinuity parameter a must be positive");
    WeakShockParams p;
    p.a = a;
    p.phi3_at_0 = phi3_at_0;
    p.b = a - phi3_at_0 / 2.0;
    if (!(p.b > 0.0)) {
        std::ostringstream os;
        os << "b = a - phi'''(0)/2 = " << p.b << " must be positive";
        throw Error(ErrorCode::b_non_positive, os.str());
    }
    return p;
}

double WeakShockParams::theta(double xi, double tau)
{
    if (!(tau < 0.0))
        throw Error(ErrorCode::invalid_argument, "theta is defined for tau < 0");
    return xi / (2.0 * std::sqrt(-tau));
}

ScaledPhi phi_scaled(double xi, double tau, double b)
{
    if (!(b > 0.0))
        throw Error(ErrorCode::b_non_positive, "Phi needs b > 0");
    if (!(std::abs(xi) <= 1e3 && std::abs(tau) <= 1e3))
        throw Error(ErrorCode::invalid_argument, "Phi needs |xi|, |tau| <= 1e3");
    auto exponent = [&](double s) { return s * (-(4.0 * b / 3.0) * s * s + tau * s - xi); };

    // interior maximum where -4b s^2 + 2 tau s - xi = 0
    const double disc = tau * tau - 4.0 * b * xi;
    double peak = 0.0;
    double top = 0.0;
    double width = 0.0;
    if (disc >= 0.0) {
        const double s = (tau + std::sqrt(disc)) / (4.0 * b);
        if (s > 0.0 && exponent(s) > 0.0) {
            peak = s;
            top = exponent(s);
        }
        if (s > 0.0)
            width = 1.0 / std::sqrt(std::max(2.0 * std::sqrt(disc), 1e-6));
    }
    // decay length from the origin when the maximum sits there
    double reach = std::cbrt(3.0 / (4.0 * b));
    if (std::abs(tau) > 0.0)
        reach = std::min(reach, 1.0 / std::sqrt(std::abs(tau)));
    if (xi > 0.0)
        reach = std::min(reach, 1.0 / xi);

    auto f = [&](double s) {
        const double w = std::exp(exponent(s) - top);
        return std::array<double, 2>{w, -s * w};
    };
    constexpr double tol = 1e-12;
    ScaledPhi out;
    out.log_scale = top;
    if (peak > 0.0) {
        const auto inner = de_integrate<2>(f, DeMap::tanh_sinh, 0.0, peak, tol);
        const auto outer = de_integrate<2>(f, DeMap::exp_sinh, peak, std::clamp(width, 0.02, 4.0), tol);
        out.value = inner.value[0] + outer.value[0];
        out.d_xi = inner.value[1] + outer.value[1];
    } else {
        const auto r = de_integrate<2>(f, DeMap::exp_sinh, 0.0, std::clamp(std::max(reach, width), 0.02, 4.0), tol);
        out.value = r.value[0];
        out.d_xi = r.value[1];
    }
    return out;
}

PhiValue phi_integral(double xi, double tau, double b)
{
    const auto s = phi_scaled(xi, tau, b);
    const double m = std::exp(s.log_scale);
    return {s.value * m, s.d_xi * m};
}

double w20(double xi, double tau, double b)
{
    const auto s = phi_scaled(xi, tau, b);
    return -2.0 * s.d_xi / s.value;
}

double w30(double xi, double tau, double b)
{
    // the scale cancels only once: Phi_xi / Phi^2 keeps a factor exp(-log_scale)
    const auto s = phi_scaled(xi, tau, b);
    return std::sqrt(std::numbers::pi) * s.d_xi / (s.value * s.value) * std::exp(-s.log_scale);
}

namespace {

void check_step(double h)
{
    if (!(h >= 1e-4 && h <= 1e-1))
        throw Error(ErrorCode::invalid_argument, "difference step must lie in [1e-4, 1e-1]");
}

} // namespace

double w20_residual(double xi, double tau, double b, double h)
{
    check_step(h);
    const double w0 = w20(xi, tau, b);
    const double wp = w20(xi + h, tau, b);
    const double wm = w20(xi - h, tau, b);
    const double wt = (w20(xi, tau + h, b) - w20(xi, tau - h, b)) / (2.0 * h);
    return wt + w0 * (wp - wm) / (2.0 * h) - (wp - 2.0 * w0 + wm) / (h * h);
}

double w30_residual(double xi, double tau, double b, double h)
{
    check_step(h);
    const double v0 = w30(xi, tau, b);
    const double vp = w30(xi + h, tau, b);
    const double vm = w30(xi - h, tau, b);
    const double vt = (w30(xi, tau + h, b) - w30(xi, tau - h, b)) / (2.0 * h);
    const double flux = (w20(xi + h, tau, b) * vp - w20(xi - h, tau, b) * vm) / (2.0 * h);
    return vt + flux - (vp - 2.0 * v0 + vm) / (h * h);
}

ProblemConfig weakshock_scenario(double a, const FluxFunction& flux, double eps, double t_end)
{
    if (!flux.is_normalized())
        throw Error(ErrorCode::not_normalized, "the weak-shock layer needs phi(0) = phi'(0) = 0 and phi''(0) = 1");
    WeakShockParams::from(a, flux.d3(0.0));
    if (!(eps > 0.0))
        throw Error(ErrorCode::invalid_argument, "epsilon must be positive");
    ProblemConfig cfg;
    cfg.flux = flux;
    cfg.initial = InitialData::weak_discontinuity(a);
    cfg.epsilon = eps;
    cfg.t0 = -1.0;
    cfg.t_end = t_end;
    cfg.half_width = 1.0 / a;
    cfg.validate();
    return cfg;
}

} // namespace asymlab
