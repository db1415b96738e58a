#pragma once

// Double-exponential quadrature on the real line, the half line and finite
// intervals, plus the complementary error function normalized as
//     erfc(z) = (1/sqrt(pi)) * integral_z^inf exp(-y^2) dy,
// which is one half of the conventional std::erfc.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "asymlab/error.hpp"

namespace asymlab {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

template <std::size_t N>
struct QuadratureResultN {
    std::array<double, N> value{};
    std::array<double, N> error_estimate{};
    long evaluations = 0;
};

// Where the integrand lives. For the real line the nodes are
// center + scale*sinh(pi/2 sinh t); for the half line origin + scale*exp(pi/2 sinh t).
struct QuadratureHint {
    double center = 0.0;
    double scale = 1.0;
};

struct QuadratureLimits {
    int min_level = 4;
    int max_level = 11;
    long max_evaluations = 400000;
    // errors below this are accepted whatever the size of the integral
    double abs_floor = 0.0;
};

enum class DeMap { sinh_sinh, exp_sinh, tanh_sinh };

namespace detail {

struct DeNode {
    double x;
    double w;
};

inline DeNode de_node(DeMap map, double t, double a, double b)
{
    constexpr double half_pi = std::numbers::pi / 2.0;
    const double u = half_pi * std::sinh(t);
    const double du = half_pi * std::cosh(t);
    switch (map) {
    case DeMap::sinh_sinh:  // a = center, b = scale
        return {a + b * std::sinh(u), b * du * std::cosh(u)};
    case DeMap::exp_sinh: {  // a = origin, b = scale
        const double e = std::exp(u);
        return {a + b * e, b * du * e};
    }
    case DeMap::tanh_sinh: {  // [a, b]
        const double half = 0.5 * (b - a);
        // distance to the nearer endpoint, computed without cancellation
        const double e = std::exp(-2.0 * std::abs(u));
        const double delta = half * 2.0 * e / (1.0 + e);
        const double x = u >= 0.0 ? b - delta : a + delta;
        const double c = std::cosh(u);
        return {x, half * du / (c * c)};
    }
    }
    return {0.0, 0.0};
}

inline double de_t_max(DeMap map)
{
    switch (map) {
    case DeMap::sinh_sinh: return 4.0;
    case DeMap::exp_sinh: return 4.5;
    case DeMap::tanh_sinh: return 3.5;
    }
    return 4.0;
}

} // namespace detail

// Core double-exponential rule with dyadic refinement for vector-valued
// integrands (f returns std::array<double, N>). Nodes are generated outwards
// until the weighted integrand drops below 1e-16 of the running maximum;
// refinement stops once successive levels agree to tol relative to
// max(|I|, integral of |f|), component-wise.
template <std::size_t N, class F>
QuadratureResultN<N> de_integrate(F&& f, DeMap map, double a, double b, double tol,
                                  const QuadratureLimits& limits = {})
{
    if (!(tol >= 1e-15 && tol <= 1e-3))
        throw Error(ErrorCode::invalid_argument, "quadrature tolerance out of range [1e-15, 1e-3]");

    QuadratureResultN<N> result;
    std::array<double, N> sum{};
    std::array<double, N> abs_sum{};
    double max_term = 0.0;

    auto eval = [&](double t, std::array<double, N>& terms) {
        const auto node = detail::de_node(map, t, a, b);
        ++result.evaluations;
        double biggest = 0.0;
        if (!std::isfinite(node.x) || !std::isfinite(node.w) || node.w == 0.0) {
            terms.fill(0.0);
            return 0.0;
        }
        const std::array<double, N> fx = f(node.x);
        for (std::size_t c = 0; c < N; ++c) {
            const double term = fx[c] * node.w;
            terms[c] = std::isfinite(term) ? term : 0.0;
            biggest = std::max(biggest, std::abs(terms[c]));
        }
        return biggest;
    };

    const double t_max = detail::de_t_max(map);
    double h = 0.5;
    std::array<double, N> terms{};

    // level 0: march outwards in both directions until the tail is negligible
    max_term = eval(0.0, terms);
    for (std::size_t c = 0; c < N; ++c) {
        sum[c] += terms[c];
        abs_sum[c] += std::abs(terms[c]);
    }
    double t_right = 0.0;
    double t_left = 0.0;
    for (int dir : {1, -1}) {
        int small_run = 0;
        for (int k = 1;; ++k) {
            const double t = dir * k * h;
            if (std::abs(t) > t_max)
                break;
            const double m = eval(t, terms);
            for (std::size_t c = 0; c < N; ++c) {
                sum[c] += terms[c];
                abs_sum[c] += std::abs(terms[c]);
            }
            max_term = std::max(max_term, m);
            (dir > 0 ? t_right : t_left) = t;
            small_run = m < 1e-16 * max_term ? small_run + 1 : 0;
            if (small_run >= 2 && std::abs(t) >= 1.0)
                break;
        }
    }

    std::array<double, N> previous{};
    for (std::size_t c = 0; c < N; ++c)
        previous[c] = sum[c] * h;

    for (int level = 1; level <= limits.max_level; ++level) {
        h *= 0.5;
        // odd multiples of the new step inside the established window
        const long k_lo = static_cast<long>(std::floor(t_left / h));
        const long k_hi = static_cast<long>(std::ceil(t_right / h));
        for (long k = k_lo; k <= k_hi; ++k) {
            if ((k & 1L) == 0)
                continue;
            eval(static_cast<double>(k) * h, terms);
            for (std::size_t c = 0; c < N; ++c) {
                sum[c] += terms[c];
                abs_sum[c] += std::abs(terms[c]);
            }
        }
        bool converged = level >= limits.min_level;
        for (std::size_t c = 0; c < N; ++c) {
            const double current = sum[c] * h;
            const double err = std::abs(current - previous[c]);
            const double scale = std::max(std::abs(current), abs_sum[c] * h);
            result.value[c] = current;
            result.error_estimate[c] = err;
            if (err > tol * scale && err > limits.abs_floor)
                converged = false;
            previous[c] = current;
        }
        if (converged)
            return result;
        if (result.evaluations > limits.max_evaluations)
            break;
    }
    std::ostringstream os;
    os << "double-exponential refinement did not reach tol " << tol << " (estimate " << result.error_estimate[0]
       << ", " << result.evaluations << " evaluations)";
    throw Error(ErrorCode::no_convergence, os.str());
}

// Integral over the whole real line.
QuadratureResult integrate_real_line(const std::function<double(double)>& f, double tol,
                                     QuadratureHint hint = {});
// Integral over [origin, infinity).
QuadratureResult integrate_half_line(const std::function<double(double)>& f, double tol,
                                     QuadratureHint hint = {});
// Integral over a finite interval (tanh-sinh).
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b, double tol);

// Adaptive Gauss-Kronrod over [breaks.front(), breaks.back()], one panel per
// consecutive pair of breaks. Used where the integrand has kinks or sharp
// interior layers at known places.
QuadratureResult integrate_panels(const std::function<double(double)>& f, const std::vector<double>& breaks,
                                  double tol);

// Nodes and weights with sum_k weights[k] f(nodes[k]) ~ integral f(y) exp(-y^2) dy.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
// n in [1, 200]; exact for polynomials of degree 2n - 1.
GaussRule gauss_hermite(int n);

// (1/sqrt(pi)) * integral_z^inf exp(-y^2) dy.
double erfc_half(double z);
// log(erfc_half(z)), finite for all finite z.
double log_erfc_half(double z);

} // namespace asymlab
