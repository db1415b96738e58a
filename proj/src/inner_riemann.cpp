#include "asymlab/inner_riemann.hpp"

#include <algorithm>
#include <cmath>

#include "asymlab/quadrature.hpp"

namespace asymlab {

InnerField step_inner_w0(const FluxFunction& flux, double u_minus, double u_plus, double frame_speed,
                         const InnerGrid& grid)
{
    if (!(u_minus > u_plus))
        throw Error(ErrorCode::invalid_argument, "the inner step needs u_minus > u_plus");
    ProblemConfig cfg;
    cfg.flux = flux.with_linear_shift(frame_speed);
    cfg.initial = InitialData::piecewise_constant({0.0}, {u_minus, u_plus});
    cfg.epsilon = 1.0;
    cfg.t0 = 0.0;
    cfg.t_end = grid.tau_end;
    cfg.half_width = grid.half_width;
    const int nt = grid.nt > 0 ? grid.nt : stable_time_steps(cfg, grid.nx, 0.4);
    InnerField f;
    f.field = solve_viscous(cfg, grid.nx, nt);
    f.frame_speed = frame_speed;
    f.scenario = "initial_jump";
    return f;
}

double two_state_profile(double left, double right, double y)
{
    const double a = -(left - right) * y / 2.0;
    // logistic in a form that never overflows
    if (a > 0.0) {
        const double e = std::exp(-a);
        return left + (right - left) * e / (1.0 + e);
    }
    return left + (right - left) / (1.0 + std::exp(a));
}

double burgers_step_exact(double u_minus, double u_plus, double zeta, double tau)
{
    if (!(tau > 0.0))
        throw Error(ErrorCode::invalid_argument, "burgers_step_exact needs tau > 0");
    const double root = 2.0 * std::sqrt(tau);
    const double log_left =
        u_minus * u_minus * tau / 4.0 - u_minus * zeta / 2.0 + log_erfc_half((zeta - u_minus * tau) / root);
    const double log_right =
        u_plus * u_plus * tau / 4.0 - u_plus * zeta / 2.0 + log_erfc_half(-(zeta - u_plus * tau) / root);
    // w = u- + (u+ - u-) A+ / (A- + A+)
    const double d = log_right - log_left;
    if (d > 0.0)
        return u_minus + (u_plus - u_minus) / (1.0 + std::exp(-d));
    const double e = std::exp(d);
    return u_minus + (u_plus - u_minus) * e / (1.0 + e);
}

namespace {

struct ThreeExponents {
    double c1;
    double c3;
};

ThreeExponents offsets(double u1, double u2, double u3, double b1, double b2)
{
    return {b1 * (u1 - u2) / 2.0, -b2 * (u2 - u3) / 2.0};
}

} // namespace

double merging_shocks_exact(double u1, double u2, double u3, double b1, double b2, double zeta, double tau)
{
    if (!(u1 > u2 && u2 > u3))
        throw Error(ErrorCode::invalid_argument, "merging shocks need u1 > u2 > u3");
    const auto c = offsets(u1, u2, u3, b1, b2);
    const double e[3] = {-u1 * zeta / 2.0 + u1 * u1 * tau / 4.0 + c.c1, -u2 * zeta / 2.0 + u2 * u2 * tau / 4.0,
                         -u3 * zeta / 2.0 + u3 * u3 * tau / 4.0 + c.c3};
    const double u[3] = {u1, u2, u3};
    const double top = std::max({e[0], e[1], e[2]});
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double f = std::exp(e[i] - top);
        num += u[i] * f;
        den += f;
    }
    return num / den;
}

double merged_offset(double u1, double u2, double u3, double b1, double b2)
{
    const auto c = offsets(u1, u2, u3, b1, b2);
    return 2.0 * (c.c1 - c.c3) / (u1 - u3);
}

double two_shock_comparator(double u1, double u2, double u3, double b1, double b2, double zeta, double tau)
{
    const double left = two_state_profile(u1, u2, zeta - 0.5 * (u1 + u2) * tau - b1);
    const double right = two_state_profile(u2, u3, zeta - 0.5 * (u2 + u3) * tau - b2);
    return left + right - u2;
}

double one_shock_comparator(double u1, double u2, double u3, double b1, double b2, double zeta, double tau)
{
    return two_state_profile(u1, u3, zeta - 0.5 * (u1 + u3) * tau - merged_offset(u1, u2, u3, b1, b2));
}

double matching_defect(const LayerFunction& w, const LayerFunction& comparator, double tau, double zeta_half_width,
                       int samples)
{
    if (samples < 2 || !(zeta_half_width > 0.0))
        throw Error(ErrorCode::invalid_argument, "matching_defect needs a window and two samples");
    double sup = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double z = -zeta_half_width + 2.0 * zeta_half_width * k / (samples - 1);
        sup = std::max(sup, std::abs(w(z, tau) - comparator(z, tau)));
    }
    return sup;
}

ExponentialFit fit_exponential_rate(const std::vector<double>& taus, const std::vector<double>& defects)
{
    if (taus.size() != defects.size() || taus.size() < 2)
        throw Error(ErrorCode::degenerate_fit, "an exponential fit needs at least two (tau, defect) pairs");
    const std::size_t n = taus.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(defects[i] > 0.0) || !std::isfinite(defects[i]))
            throw Error(ErrorCode::degenerate_fit, "defects must be positive and finite");
        const double x = std::abs(taus[i]);
        const double y = std::log(defects[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-14 * std::max(1.0, n * sxx))
        throw Error(ErrorCode::degenerate_fit, "all |tau| coincide");
    const double slope = (n * sxy - sx * sy) / det;
    const double icept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::log(defects[i]) - (icept + slope * std::abs(taus[i]));
        ss += r * r;
    }
    return {-slope, icept, std::sqrt(ss / n)};
}

} // namespace asymlab
