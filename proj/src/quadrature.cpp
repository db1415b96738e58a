#include "asymlab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace asymlab {

namespace {

template <class F>
QuadratureResult scalar(F&& f, DeMap map, double a, double b, double tol)
{
    const auto r = de_integrate<1>([&](double x) { return std::array<double, 1>{f(x)}; }, map, a, b, tol);
    return {r.value[0], r.error_estimate[0], r.evaluations};
}

} // namespace

QuadratureResult integrate_real_line(const std::function<double(double)>& f, double tol, QuadratureHint hint)
{
    if (!(hint.scale > 0.0))
        throw Error(ErrorCode::invalid_argument, "quadrature scale must be positive");
    return scalar(f, DeMap::sinh_sinh, hint.center, hint.scale, tol);
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double tol, QuadratureHint hint)
{
    if (!(hint.scale > 0.0))
        throw Error(ErrorCode::invalid_argument, "quadrature scale must be positive");
    return scalar(f, DeMap::exp_sinh, hint.center, hint.scale, tol);
}

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b, double tol)
{
    if (a == b)
        return {};
    if (a > b) {
        auto r = scalar(f, DeMap::tanh_sinh, b, a, tol);
        r.value = -r.value;
        return r;
    }
    return scalar(f, DeMap::tanh_sinh, a, b, tol);
}

QuadratureResult integrate_panels(const std::function<double(double)>& f, const std::vector<double>& breaks,
                                  double tol)
{
    QuadratureResult total;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double a = breaks[k];
        const double b = breaks[k + 1];
        if (!(b > a))
            continue;
        double err = 0.0;
        double l1 = 0.0;
        total.value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, tol, &err, &l1);
        total.error_estimate += err;
        total.evaluations += 31;
    }
    return total;
}

GaussRule gauss_hermite(int n)
{
    if (n < 1 || n > 200)
        throw Error(ErrorCode::invalid_argument, "Gauss-Hermite order must lie in [1, 200]");
    // Newton on the orthonormal Hermite recurrence, roots found from the largest down
    const double pi_quarter = std::pow(std::numbers::pi, -0.25);
    GaussRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    double z = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * rule.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * rule.nodes[1];
        else
            z = 2.0 * z - rule.nodes[i - 2];
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = pi_quarter;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            dp = std::sqrt(2.0 * n) * p2;
            const double step = p1 / dp;
            z -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z)))
                break;
        }
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (dp * dp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

double erfc_half(double z) { return 0.5 * std::erfc(z); }

double log_erfc_half(double z)
{
    if (z < 25.0)
        return std::log(0.5 * std::erfc(z));
    // erfc(z) = exp(-z^2)/(z sqrt(pi)) * sum_n (-1)^n (2n-1)!! / (2 z^2)^n
    const double inv = 1.0 / (2.0 * z * z);
    double term = 1.0;
    double series = 1.0;
    for (int n = 1; n <= 8; ++n) {
        term *= -(2.0 * n - 1.0) * inv;
        series += term;
    }
    return -z * z - std::log(z * std::sqrt(std::numbers::pi)) + std::log(series) - std::log(2.0);
}

} // namespace asymlab
