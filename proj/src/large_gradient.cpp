#include "asymlab/large_gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "asymlab/inner_riemann.hpp"
#include "asymlab/quadrature.hpp"

namespace asymlab {

TwoParamState TwoParamState::from(double eps, double rho)
{
    if (!(eps > 0.0) || !(rho > 0.0))
        throw Error(ErrorCode::invalid_argument, "eps and rho must be positive");
    return {eps, rho, rho / eps};
}

double TwoParamState::z(double x, double t) const
{
    if (!(t > 0.0))
        throw Error(ErrorCode::invalid_argument, "z needs t > 0");
    return x / (2.0 * std::sqrt(eps * t));
}

Profile default_large_gradient_profile() { return tanh_profile(-1.0); }

TailExpansion default_large_gradient_tails() { return {}; }

double h0(const Profile& nu, double sigma, double omega)
{
    if (!(omega >= 0.0))
        throw Error(ErrorCode::invalid_argument, "h0 needs omega >= 0");
    if (omega <= 1e-14)
        return nu.value(sigma);
    // s = sigma + w y turns the heat kernel into exp(-y^2)/sqrt(pi)
    const double w = 2.0 * std::sqrt(omega);
    auto g = [&](double y) { return nu.value(sigma + w * y) * std::exp(-y * y); };
    constexpr double tol = 1e-12;
    // the kernel has unit mass, so h0 is never wanted below this
    QuadratureLimits limits;
    limits.abs_floor = 1e-15 * std::max(1.0, std::abs(nu.value(sigma)));
    const double feature = -sigma / w;  // where s = 0
    double total = 0.0;
    if (std::abs(feature) <= 8.0) {
        // split at the profile's transition, which may be much narrower than the kernel
        // both sides in one integrand, so a side where nu vanishes does not set the tolerance
        const double scale = std::clamp(1.0 / w, 0.05, 1.0);
        auto both = [&](double y) { return std::array<double, 1>{g(y) + g(2.0 * feature - y)}; };
        total = de_integrate<1>(both, DeMap::exp_sinh, feature, scale, tol, limits).value[0];
    } else {
        total = de_integrate<1>([&](double y) { return std::array<double, 1>{g(y)}; }, DeMap::sinh_sinh, 0.0, 1.0, tol,
                                limits)
                    .value[0];
    }
    return total / std::sqrt(std::numbers::pi);
}

namespace {

// E_n = sum_{q=1}^{n-1} phi^(q)(h0)/q! sum_{n_1+...+n_q = n-1} prod h_{n_p}, and E_1 = phi(h0).
double chain_source(const FluxFunction& flux, int n, const std::vector<double>& h)
{
    if (n == 1)
        return flux.value(h[0]);
    // products over compositions of n-1 into q positive parts, by dynamic programming:
    // sums[q][m] = sum over compositions of m into q parts of prod h_parts
    const int m_max = n - 1;
    std::vector<std::vector<double>> sums(m_max + 1, std::vector<double>(m_max + 1, 0.0));
    sums[0][0] = 1.0;
    for (int q = 1; q <= m_max; ++q)
        for (int m = q; m <= m_max; ++m)
            for (int last = 1; last <= m - (q - 1); ++last)
                sums[q][m] += sums[q - 1][m - last] * h[last];
    double e = 0.0;
    double factorial = 1.0;
    for (int q = 1; q <= m_max; ++q) {
        factorial *= q;
        e += flux.derivative(h[0], q) / factorial * sums[q][m_max];
    }
    return e;
}

const GaussRule& hermite_rule(int n)
{
    static const std::vector<GaussRule> rules = [] {
        std::vector<GaussRule> r(201);
        for (int k : {8, 12, 16, 24, 32, 48, 64, 96, 128, 160, 200})
            r[k] = gauss_hermite(k);
        return r;
    }();
    for (int k : {8, 12, 16, 24, 32, 48, 64, 96, 128, 160, 200})
        if (k >= n)
            return rules[k];
    return rules[200];
}

std::vector<double> chain_values(const Profile& nu, const FluxFunction& flux, int n, double s, double v, int depth);

template <int Angles>
double duhamel_angles(const Profile& nu, const FluxFunction& flux, int n, double sigma, double omega, int depth,
                      int hermite_nodes)
{
    const auto& gh = hermite_rule(hermite_nodes);
    const double root = std::sqrt(omega);
    // h_n = 2 int_0^sqrt(omega) dp int y e^{-y^2}/sqrt(pi) E_n(sigma - 2 p y, omega - p^2) dy,
    // with p = sqrt(omega) sin(a) so that omega - p^2 = (sqrt(omega) cos a)^2 stays smooth
    auto in_angle = [&](double a) {
        const double p = root * std::sin(a);
        const double c = root * std::cos(a);
        double sum = 0.0;
        for (std::size_t j = 0; j < gh.nodes.size(); ++j) {
            const double y = gh.nodes[j];
            const auto h = chain_values(nu, flux, n - 1, sigma - 2.0 * p * y, c * c, depth + 1);
            sum += gh.weights[j] * y * chain_source(flux, n, h);
        }
        return 2.0 * c * sum / std::sqrt(std::numbers::pi);
    };
    return boost::math::quadrature::gauss<double, Angles>::integrate(in_angle, 0.0, std::numbers::pi / 2.0);
}

double duhamel(const Profile& nu, const FluxFunction& flux, int n, double sigma, double omega, int depth)
{
    if (omega <= 1e-14)
        return 0.0;
    // the source varies in y on the scale 1/(2 sqrt(omega))
    const int widen = static_cast<int>(std::ceil(std::max(1.0, std::sqrt(omega))));
    if (depth == 0)
        return duhamel_angles<20>(nu, flux, n, sigma, omega, depth, std::min(200, 32 * widen));
    if (depth == 1)
        return duhamel_angles<7>(nu, flux, n, sigma, omega, depth, std::min(200, 12 * widen));
    return duhamel_angles<5>(nu, flux, n, sigma, omega, depth, std::min(200, 8 * widen));
}

// Gauss-Hermite heat evolution for the innermost levels of the chain, where
// accuracy matters least and the count of evaluations most.
double h0_hermite(const Profile& nu, double sigma, double omega)
{
    if (omega <= 1e-14)
        return nu.value(sigma);
    const double w = 2.0 * std::sqrt(omega);
    const auto& gh = hermite_rule(24 * static_cast<int>(std::ceil(std::max(1.0, w))));
    double sum = 0.0;
    for (std::size_t j = 0; j < gh.nodes.size(); ++j)
        sum += gh.weights[j] * nu.value(sigma + w * gh.nodes[j]);
    return sum / std::sqrt(std::numbers::pi);
}

std::vector<double> chain_values(const Profile& nu, const FluxFunction& flux, int n, double s, double v, int depth)
{
    std::vector<double> h(n + 1, 0.0);
    h[0] = depth <= 1 ? h0(nu, s, v) : h0_hermite(nu, s, v);
    for (int k = 1; k <= n; ++k)
        h[k] = duhamel(nu, flux, k, s, v, depth);
    return h;
}

} // namespace

double hn(const Profile& nu, const FluxFunction& flux, int n, double sigma, double omega)
{
    if (n > 3) {
        std::ostringstream os;
        os << "h_" << n << " requested; the chain is evaluated up to n = 3";
        throw Error(ErrorCode::order_too_high, os.str());
    }
    if (n < 0)
        throw Error(ErrorCode::invalid_argument, "order must be non-negative");
    if (!(omega >= 0.0))
        throw Error(ErrorCode::invalid_argument, "hn needs omega >= 0");
    if (n == 0)
        return h0(nu, sigma, omega);
    return duhamel(nu, flux, n, sigma, omega, 0);
}

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

GammaTable::GammaTable(const FluxFunction& flux, double left, double right, double theta_max, double eta_half_width,
                       int nx)
    : left_(left), right_(right)
{
    if (!(left > right))
        throw Error(ErrorCode::invalid_argument, "Gamma table needs nu0- > nu0+");
    if (!(theta_max > 0.0))
        throw Error(ErrorCode::invalid_argument, "Gamma table needs theta_max > 0");
    const double speed = flux.chord_speed(left, right);
    if (!(eta_half_width > 0.0))
        eta_half_width = 40.0 + std::abs(speed) * theta_max;
    if (nx <= 0)
        nx = static_cast<int>(std::ceil(2.0 * eta_half_width / 0.05));
    field_ = step_inner_w0(flux, left, right, 0.0, {eta_half_width, nx, theta_max, 0}).field;
}

namespace {

// Catmull-Rom weights for a point at fraction f between nodes 1 and 2 of four.
std::array<double, 4> cubic_weights(double f)
{
    const double f2 = f * f;
    const double f3 = f2 * f;
    return {-0.5 * f3 + f2 - 0.5 * f, 1.5 * f3 - 2.5 * f2 + 1.0, -1.5 * f3 + 2.0 * f2 + 0.5 * f, 0.5 * f3 - 0.5 * f2};
}

} // namespace

double GammaTable::operator()(double eta, double theta) const
{
    if (!(theta >= 0.0) || theta > field_.t_end * (1.0 + 1e-12))
        throw Error(ErrorCode::invalid_argument, "theta outside the Gamma table");
    if (theta == 0.0)
        return eta < 0.0 ? left_ : right_;
    const auto& f = field_;
    const double gx = (eta - f.x_min) / f.dx() - 0.5;
    if (gx < 1.0)
        return eta < f.x_min ? left_ : f.sample(eta, theta);
    if (gx > f.nx - 2.0)
        return eta > f.x_max ? right_ : f.sample(eta, theta);
    const double gt = (theta - f.t_start) / f.dt();
    const int i = static_cast<int>(std::floor(gx));
    const int n = std::clamp(static_cast<int>(std::floor(gt)), 1, f.nt - 2);
    if (gt < 1.0 || gt > f.nt - 1.0)
        return f.sample(eta, theta);
    const auto wx = cubic_weights(gx - i);
    const auto wt = cubic_weights(gt - n);
    double v = 0.0;
    for (int a = 0; a < 4; ++a) {
        double row = 0.0;
        for (int b = 0; b < 4; ++b)
            row += wx[b] * f.at(n - 1 + a, i - 1 + b);
        v += wt[a] * row;
    }
    return v;
}

namespace {

std::shared_ptr<const GammaTable> cached_gamma(const FluxFunction& flux, double left, double right, double theta)
{
    static std::mutex guard;
    static std::map<std::tuple<std::string, double, double>, std::shared_ptr<const GammaTable>> cache;
    const auto key = std::make_tuple(flux.describe(), left, right);
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(key);
    if (it != cache.end() && it->second->theta_max() >= theta)
        return it->second;
    const double theta_max = std::max(20.0, 2.0 * theta);
    auto table = std::make_shared<const GammaTable>(flux, left, right, theta_max);
    cache[key] = table;
    return table;
}

} // namespace

double gamma_riemann(const FluxFunction& flux, const TailExpansion& tails, double eta, double theta)
{
    const double left = tails.nu0_minus;
    const double right = tails.nu0_plus;
    if (!(theta >= 0.0))
        throw Error(ErrorCode::invalid_argument, "Gamma needs theta >= 0");
    if (left == right)
        return left;
    if (theta == 0.0)
        return eta < 0.0 ? left : right;
    if (flux.kind() == FluxKind::burgers)
        return burgers_step_exact(left, right, eta, theta);
    return (*cached_gamma(flux, left, right, theta))(eta, theta);
}

double r000(const TailExpansion& tails, double z)
{
    return tails.nu0_minus * erfc_half(z) + tails.nu0_plus * erfc_half(-z);
}

namespace {

void check_regime(const TwoParamState& state, double t)
{
    if (!(t > 0.0))
        throw Error(ErrorCode::invalid_argument, "the large-gradient formulas need t > 0");
    if (!(state.mu < 1.0))
        throw Error(ErrorCode::invalid_argument, "the large-gradient formulas need mu = rho/eps < 1");
}

} // namespace

double composite_u(double x, double t, const TwoParamState& state, const Profile& nu, const FluxFunction& flux,
                   const TailExpansion& tails)
{
    check_regime(state, t);
    return h0(nu, state.sigma(x), state.omega(t)) - r000(tails, state.z(x, t)) +
           gamma_riemann(flux, tails, state.eta(x), state.theta(t));
}

double renormalized_u(double x, double t, const TwoParamState& state, const Profile& nu, const FluxFunction& flux,
                      const TailExpansion& tails)
{
    check_regime(state, t);
    const double jump = tails.nu0_plus - tails.nu0_minus;
    if (std::abs(jump) < 1e-12)
        throw Error(ErrorCode::degenerate_jump, "nu0+ and nu0- coincide; the renormalized formula divides by their gap");
    const double theta = state.theta(t);
    auto f = [&](double s) {
        const double d = nu.derivative(s);
        if (std::abs(d) <= 1e-16)
            return 0.0;
        return gamma_riemann(flux, tails, (x - state.rho * s) / state.eps, theta) * d;
    };
    return integrate_real_line(f, 1e-10).value / jump;
}

} // namespace asymlab
