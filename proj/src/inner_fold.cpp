#include "asymlab/inner_fold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "asymlab/quadrature.hpp"

namespace asymlab {

namespace {

double exponent(double z, double xi, double tau) { return -(z * z * z * z - 2.0 * z * z * tau + 4.0 * z * xi) / 8.0; }

double polish(double z, double xi, double tau)
{
    for (int k = 0; k < 3; ++k) {
        const double f = z * z * z - tau * z + xi;
        const double df = 3.0 * z * z - tau;
        if (df == 0.0)
            break;
        const double step = f / df;
        z -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z)))
            break;
    }
    return z;
}

} // namespace

std::vector<double> fold_cubic_roots(double xi, double tau)
{
    // z^3 + p z + q with p = -tau, q = xi
    const double disc = xi * xi / 4.0 - tau * tau * tau / 27.0;
    std::vector<double> roots;
    if (tau <= 0.0 || disc > 0.0) {
        const double a = -xi / 2.0;
        const double s = std::sqrt(std::max(disc, 0.0));
        const double u = std::cbrt(a + (a >= 0.0 ? s : -s));
        const double v = u != 0.0 ? tau / (3.0 * u) : 0.0;
        roots.push_back(polish(u + v, xi, tau));
        return roots;
    }
    const double r = 2.0 * std::sqrt(tau / 3.0);
    const double arg = std::clamp(-xi / 2.0 * std::sqrt(27.0 / (tau * tau * tau)), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
        roots.push_back(polish(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0), xi, tau));
    std::sort(roots.begin(), roots.end());
    return roots;
}

ScaledLambda lambda_scaled(double xi, double tau)
{
    if (!(std::abs(xi) <= 1e3 && std::abs(tau) <= 1e3))
        throw Error(ErrorCode::invalid_argument, "Lambda needs |xi|, |tau| <= 1e3");
    const auto crit = fold_cubic_roots(xi, tau);
    double top = -std::numeric_limits<double>::infinity();
    double peak = 0.0;
    for (double z : crit) {
        const double e = exponent(z, xi, tau);
        if (e > top) {
            top = e;
            peak = z;
        }
    }
    const double curvature = std::abs(3.0 * peak * peak - tau) / 2.0;
    const double width = curvature > 0.0 ? 1.0 / std::sqrt(curvature) : 1.0;
    QuadratureHint hint;
    hint.center = 0.5 * (crit.front() + crit.back());
    hint.scale = std::clamp(std::max(width, 0.5 * (crit.back() - crit.front())), 0.05, 4.0);

    auto f = [&](double z) {
        const double w = std::exp(exponent(z, xi, tau) - top);
        return std::array<double, 2>{w, -0.5 * z * w};
    };
    const auto r = de_integrate<2>(f, DeMap::sinh_sinh, hint.center, hint.scale, 1e-12);
    return {r.value[0], r.value[1], top};
}

LambdaValue lambda_integral(double xi, double tau)
{
    const auto s = lambda_scaled(xi, tau);
    const double m = std::exp(s.log_scale);
    return {s.value * m, s.d_xi * m};
}

double w10(double xi, double tau, double phi2_at_0)
{
    if (!(phi2_at_0 > 0.0))
        throw Error(ErrorCode::invalid_argument, "phi''(0) must be positive");
    const auto s = lambda_scaled(xi, tau);
    return -2.0 * s.d_xi / (phi2_at_0 * s.value);
}

double w10_residual(double xi, double tau, double phi2_at_0, double h)
{
    if (!(h >= 1e-4 && h <= 1e-1))
        throw Error(ErrorCode::invalid_argument, "difference step must lie in [1e-4, 1e-1]");
    const double w0 = w10(xi, tau, phi2_at_0);
    const double wp = w10(xi + h, tau, phi2_at_0);
    const double wm = w10(xi - h, tau, phi2_at_0);
    const double wt = (w10(xi, tau + h, phi2_at_0) - w10(xi, tau - h, phi2_at_0)) / (2.0 * h);
    return wt + phi2_at_0 * w0 * (wp - wm) / (2.0 * h) - (wp - 2.0 * w0 + wm) / (h * h);
}

double whitney_fold_root(double xi, double tau)
{
    if (27.0 * xi * xi < 4.0 * tau * tau * tau) {
        std::ostringstream os;
        os << "(" << xi << ", " << tau << ") is inside the cusp 27 xi^2 < 4 tau^3; the fold has three sheets there";
        throw Error(ErrorCode::inside_cusp, os.str());
    }
    const auto roots = fold_cubic_roots(xi, tau);
    if (roots.size() == 1)
        return roots.front();
    // on the cusp edge: the simple root is the one farthest from the double root
    return std::abs(roots.front()) > std::abs(roots.back()) ? roots.front() : roots.back();
}

double fold_far_field_defect(double xi, double tau)
{
    const double H = whitney_fold_root(xi, tau);
    if (3.0 * H * H - tau < 4.0)
        throw Error(ErrorCode::window_violation, "the far-field law needs 3H^2 - tau >= 4");
    return std::abs(w10(xi, tau, 1.0) - H);
}

double tau_plus_comparator(double xi, double tau, double phi2_at_0)
{
    if (!(tau >= 4.0) || !(std::abs(xi) * std::sqrt(tau) < std::pow(tau, 0.4)))
        throw Error(ErrorCode::window_violation, "tau >= 4 and |xi| sqrt(tau) < tau^0.4 are required");
    if (!(phi2_at_0 > 0.0))
        throw Error(ErrorCode::invalid_argument, "phi''(0) must be positive");
    const double root = std::sqrt(tau);
    return -root * std::tanh(xi * root / 2.0) / phi2_at_0;
}

SelfSimilarCheck tau_minus_selfsimilar_check(double theta, const std::vector<double>& tau_list)
{
    if (tau_list.size() < 3)
        throw Error(ErrorCode::invalid_argument, "the similarity check needs at least three tau values");
    SelfSimilarCheck out;
    for (double tau : tau_list) {
        if (!(tau <= -4.0))
            throw Error(ErrorCode::invalid_argument, "similarity check needs tau <= -4");
        const double a = std::abs(tau);
        out.values.push_back(w10(theta * std::pow(a, 1.5), tau, 1.0) / std::sqrt(a));
    }
    for (std::size_t k = 0; k + 1 < out.values.size(); ++k)
        out.gaps.push_back(std::abs(out.values[k + 1] - out.values[k]));
    out.fold_value = whitney_fold_root(theta, -1.0);
    return out;
}

const char* fold_regime_name(FoldRegime r) noexcept
{
    switch (r) {
    case FoldRegime::core: return "core";
    case FoldRegime::fold_far_field: return "fold-far-field";
    case FoldRegime::tau_minus: return "tau-minus";
    case FoldRegime::tau_plus: return "tau-plus";
    }
    return "unknown";
}

FoldEvaluation evaluate_fold(double xi, double tau, double phi2_at_0)
{
    FoldEvaluation e;
    e.xi = xi;
    e.tau = tau;
    const auto s = lambda_scaled(xi, tau);
    e.lambda_value = s.value;
    e.lambda_xi = s.d_xi;
    e.log_scale = s.log_scale;
    e.w10 = -2.0 * s.d_xi / (phi2_at_0 * s.value);
    if (tau >= 4.0 && std::abs(xi) * std::sqrt(tau) < std::pow(tau, 0.4)) {
        e.regime = FoldRegime::tau_plus;
    } else if (tau <= -4.0) {
        e.regime = FoldRegime::tau_minus;
    } else if (27.0 * xi * xi >= 4.0 * tau * tau * tau) {
        const double H = whitney_fold_root(xi, tau);
        e.regime = 3.0 * H * H - tau >= 4.0 ? FoldRegime::fold_far_field : FoldRegime::core;
    }
    return e;
}

FoldNormalization FoldNormalization::from(const SingularPoint& p)
{
    if (p.kind != SingularKind::catastrophe)
        throw Error(ErrorCode::invalid_argument, "fold normalization needs a catastrophe point");
    if (!(p.fold.cubic > 0.0) || !(p.fold.phi2 > 0.0))
        throw Error(ErrorCode::invalid_argument, "catastrophe point lacks positive cubic data");
    FoldNormalization n;
    n.x_star = p.x_star;
    n.t_star = p.t_star;
    n.speed = p.fold.speed;
    n.u_star = p.fold.u_star;
    n.phi2 = p.fold.phi2;
    n.lam = std::pow(p.fold.cubic, -0.25);
    return n;
}

std::pair<double, double> FoldNormalization::stretched(double x, double t, double eps) const
{
    const double dt = t - t_star;
    return {(x - x_star - speed * dt) / std::pow(eps, 0.75), dt / std::sqrt(eps)};
}

std::pair<double, double> FoldNormalization::inner(double x, double t, double eps) const
{
    const auto [xs, ts] = stretched(x, t, eps);
    return {lam * xs, lam * lam * ts};
}

double FoldNormalization::leading(double x, double t, double eps) const
{
    const auto [xi, tau] = inner(x, t, eps);
    return u_star + std::pow(eps, 0.25) * lam * w10(xi, tau, phi2);
}

} // namespace asymlab
