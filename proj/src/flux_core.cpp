#include "asymlab/flux_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

namespace asymlab {

const char* error_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ok: return "Ok";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::convexity_violation: return "ConvexityViolation";
    case ErrorCode::order_too_low: return "OrderTooLow";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::instability: return "Instability";
    case ErrorCode::domain_too_small: return "DomainTooSmall";
    case ErrorCode::small_time_blowup: return "SmallTimeBlowup";
    case ErrorCode::multivalued_region: return "MultivaluedRegion";
    case ErrorCode::no_catastrophe: return "NoCatastrophe";
    case ErrorCode::states_collapsed: return "StatesCollapsed";
    case ErrorCode::no_collision: return "NoCollision";
    case ErrorCode::degenerate_merge: return "DegenerateMerge";
    case ErrorCode::inside_cusp: return "InsideCusp";
    case ErrorCode::window_violation: return "WindowViolation";
    case ErrorCode::not_normalized: return "NotNormalized";
    case ErrorCode::b_non_positive: return "BNonPositive";
    case ErrorCode::order_too_high: return "OrderTooHigh";
    case ErrorCode::degenerate_jump: return "DegenerateJump";
    case ErrorCode::degenerate_fit: return "DegenerateFit";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::validation_error: return "ValidationError";
    case ErrorCode::io_error: return "IoError";
    }
    return "Unknown";
}

const char* flux_kind_name(FluxKind kind) noexcept
{
    switch (kind) {
    case FluxKind::burgers: return "burgers";
    case FluxKind::polynomial: return "polynomial";
    case FluxKind::composed_analytic: return "composed-analytic";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// FluxFunction
// ---------------------------------------------------------------------------

FluxFunction::FluxFunction(FluxKind kind, std::vector<double> coefficients, double exp_amplitude,
                           double exp_rate, double lo, double hi, int max_order)
    : kind_(kind), coefficients_(std::move(coefficients)), exp_amplitude_(exp_amplitude),
      exp_rate_(exp_rate), lo_(lo), hi_(hi), max_order_(max_order)
{
}

double FluxFunction::derivative(double u, int order) const
{
    if (order < 0)
        throw Error(ErrorCode::invalid_argument, "negative derivative order");
    // Horner on the differentiated polynomial: sum_{k>=n} c_k k!/(k-n)! u^{k-n}
    double poly = 0.0;
    const int degree = static_cast<int>(coefficients_.size()) - 1;
    for (int k = degree; k >= order; --k) {
        double falling = 1.0;
        for (int j = 0; j < order; ++j)
            falling *= static_cast<double>(k - j);
        poly = poly * u + coefficients_[static_cast<std::size_t>(k)] * falling;
    }
    if (exp_amplitude_ != 0.0)
        poly += exp_amplitude_ * std::pow(exp_rate_, order) * std::exp(exp_rate_ * u);
    return poly;
}

bool FluxFunction::is_normalized() const
{
    return std::abs(value(0.0)) <= 1e-12 && std::abs(d1(0.0)) <= 1e-12 && std::abs(d2(0.0) - 1.0) <= 1e-12;
}

FluxFunction FluxFunction::with_linear_shift(double speed) const
{
    auto coeffs = coefficients_;
    if (coeffs.size() < 2)
        coeffs.resize(2, 0.0);
    coeffs[1] -= speed;
    const FluxKind kind = kind_ == FluxKind::burgers && speed != 0.0 ? FluxKind::polynomial : kind_;
    return FluxFunction(kind, std::move(coeffs), exp_amplitude_, exp_rate_, lo_, hi_, max_order_);
}

double FluxFunction::chord_speed(double a, double b) const
{
    if (std::abs(b - a) < 1e-13 * (1.0 + std::abs(a)))
        return d1(0.5 * (a + b));
    return (value(b) - value(a)) / (b - a);
}

std::string FluxFunction::describe() const
{
    std::ostringstream os;
    os << flux_kind_name(kind_) << "[";
    for (std::size_t k = 0; k < coefficients_.size(); ++k)
        os << (k ? "," : "") << coefficients_[k];
    os << "]";
    if (exp_amplitude_ != 0.0)
        os << "+" << exp_amplitude_ << "*exp(" << exp_rate_ << "u)";
    return os.str();
}

FluxFunction make_flux(const FluxSpec& spec)
{
    if (spec.max_derivative_order < 4)
        throw Error(ErrorCode::order_too_low, "max_derivative_order must be at least 4");
    if (!(spec.interval_lo < spec.interval_hi))
        throw Error(ErrorCode::invalid_argument, "operating interval must satisfy lo < hi");

    std::vector<double> coeffs;
    double amp = 0.0;
    double rate = 0.0;
    switch (spec.kind) {
    case FluxKind::burgers:
        coeffs = {0.0, 0.0, 0.5};
        break;
    case FluxKind::polynomial:
        coeffs = spec.coefficients;
        break;
    case FluxKind::composed_analytic:
        coeffs = spec.coefficients;
        amp = spec.exp_amplitude;
        rate = spec.exp_rate;
        break;
    }
    for (double c : coeffs)
        if (!std::isfinite(c))
            throw Error(ErrorCode::invalid_argument, "flux coefficients must be finite");
    if (!std::isfinite(amp) || !std::isfinite(rate))
        throw Error(ErrorCode::invalid_argument, "exponential flux parameters must be finite");

    FluxFunction flux(spec.kind, std::move(coeffs), amp, rate, spec.interval_lo, spec.interval_hi,
                      spec.max_derivative_order);

    // midpoints of a uniform partition: the open interval is what must be convex
    constexpr int samples = 1000;
    const double h = (spec.interval_hi - spec.interval_lo) / samples;
    for (int i = 0; i < samples; ++i) {
        const double u = spec.interval_lo + (i + 0.5) * h;
        if (!(flux.d2(u) > 0.0)) {
            std::ostringstream os;
            os << "phi''(" << u << ") = " << flux.d2(u) << " <= 0 on [" << spec.interval_lo << ", "
               << spec.interval_hi << "]";
            throw Error(ErrorCode::convexity_violation, os.str());
        }
    }
    return flux;
}

FluxFunction burgers_flux(double lo, double hi)
{
    FluxSpec spec;
    spec.kind = FluxKind::burgers;
    spec.interval_lo = lo;
    spec.interval_hi = hi;
    return make_flux(spec);
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

namespace {

// log(cosh(y)) without overflow
double log_cosh(double y)
{
    const double a = std::abs(y);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

} // namespace

Profile constant_profile(double c)
{
    std::ostringstream os;
    os << "constant(" << c << ")";
    return {[c](double) { return c; }, [](double) { return 0.0; }, [c](double x) { return c * x; }, os.str()};
}

Profile linear_profile(double slope)
{
    std::ostringstream os;
    os << "linear(" << slope << ")";
    return {[slope](double x) { return slope * x; }, [slope](double) { return slope; },
            [slope](double x) { return 0.5 * slope * x * x; }, os.str()};
}

Profile tanh_profile(double amplitude, double width, double offset, double shift)
{
    if (!(width > 0.0))
        throw Error(ErrorCode::invalid_argument, "tanh profile width must be positive");
    std::ostringstream os;
    os << offset << "+" << amplitude << "*tanh((x-" << shift << ")/" << width << ")";
    const double base = log_cosh(-shift / width);
    return {[=](double x) { return offset + amplitude * std::tanh((x - shift) / width); },
            [=](double x) {
                const double c = std::cosh((x - shift) / width);
                return std::isfinite(c) ? amplitude / (width * c * c) : 0.0;
            },
            [=](double x) { return offset * x + amplitude * width * (log_cosh((x - shift) / width) - base); },
            os.str()};
}

const char* initial_variant_name(InitialVariant v) noexcept
{
    switch (v) {
    case InitialVariant::smooth: return "smooth";
    case InitialVariant::step: return "step";
    case InitialVariant::weak_discontinuity: return "weak-discontinuity";
    case InitialVariant::scaled: return "scaled";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// InitialData
// ---------------------------------------------------------------------------

InitialData InitialData::smooth(Profile q, double left_limit, double right_limit, double feature_scale)
{
    InitialData d;
    d.variant_ = InitialVariant::smooth;
    d.description_ = q.description;
    d.pieces_.push_back(std::move(q));
    d.left_limit_ = left_limit;
    d.right_limit_ = right_limit;
    d.feature_scale_ = feature_scale;
    return d;
}

InitialData InitialData::piecewise(std::vector<double> jumps, std::vector<Profile> pieces,
                                   std::vector<double> left_taylor, std::vector<double> right_taylor)
{
    if (jumps.empty() || pieces.size() != jumps.size() + 1)
        throw Error(ErrorCode::invalid_argument, "piecewise data needs pieces.size() == jumps.size() + 1 >= 2");
    if (!std::is_sorted(jumps.begin(), jumps.end()) ||
        std::adjacent_find(jumps.begin(), jumps.end()) != jumps.end())
        throw Error(ErrorCode::invalid_argument, "jump locations must be strictly increasing");
    InitialData d;
    d.variant_ = InitialVariant::step;
    d.jumps_ = std::move(jumps);
    d.pieces_ = std::move(pieces);
    d.left_taylor_ = std::move(left_taylor);
    d.right_taylor_ = std::move(right_taylor);
    if (d.left_taylor_.empty())
        d.left_taylor_.push_back(d.pieces_.front().value(d.jumps_.front()));
    if (d.right_taylor_.empty())
        d.right_taylor_.push_back(d.pieces_[1].value(d.jumps_.front()));
    // far field: tails sampled well outside the jumps
    const double span = 1.0 + d.jumps_.back() - d.jumps_.front();
    d.left_limit_ = d.pieces_.front().value(d.jumps_.front() - 1e3 * span);
    d.right_limit_ = d.pieces_.back().value(d.jumps_.back() + 1e3 * span);
    std::ostringstream os;
    os << "piecewise[";
    for (std::size_t k = 0; k < d.pieces_.size(); ++k) {
        os << (k ? " | " : "") << d.pieces_[k].description;
        if (k < d.jumps_.size())
            os << " | @" << d.jumps_[k];
    }
    os << "]";
    d.description_ = os.str();
    return d;
}

InitialData InitialData::step_tanh(double u_minus, double u_plus, double kappa, double x_jump, double width)
{
    auto left = tanh_profile(kappa, width, u_minus, x_jump);
    auto right = tanh_profile(kappa, width, u_plus, x_jump);
    // derivatives of tanh at 0: 0, 1, 0, -2, 0, 16
    const double k1 = kappa / width;
    const double k3 = -2.0 * kappa / std::pow(width, 3);
    const double k5 = 16.0 * kappa / std::pow(width, 5);
    std::vector<double> lt{u_minus, k1, 0.0, k3, 0.0, k5};
    std::vector<double> rt{u_plus, k1, 0.0, k3, 0.0, k5};
    auto d = piecewise({x_jump}, {std::move(left), std::move(right)}, std::move(lt), std::move(rt));
    d.left_limit_ = u_minus - kappa;
    d.right_limit_ = u_plus + kappa;
    return d;
}

InitialData InitialData::piecewise_constant(std::vector<double> jumps, std::vector<double> states)
{
    std::vector<Profile> pieces;
    for (double s : states)
        pieces.push_back(constant_profile(s));
    return piecewise(std::move(jumps), std::move(pieces));
}

InitialData InitialData::weak_discontinuity(double a, Profile q0)
{
    if (!(a > 0.0))
        throw Error(ErrorCode::invalid_argument, "weak-discontinuity parameter a must be positive");
    InitialData d;
    d.variant_ = InitialVariant::weak_discontinuity;
    d.weak_a_ = a;
    d.weak_q0_zero_ = q0.description == constant_profile(0.0).description;
    std::ostringstream os;
    os << "-(x+" << a << "x^2)Theta(-x)(1+" << q0.description << ")";
    d.description_ = os.str();
    d.pieces_.push_back(std::move(q0));
    d.jumps_ = {0.0};  // derivative kink
    d.left_limit_ = std::numeric_limits<double>::quiet_NaN();
    d.right_limit_ = 0.0;
    return d;
}

InitialData InitialData::scaled(Profile nu, double rho, TailExpansion tails)
{
    if (!(rho > 0.0))
        throw Error(ErrorCode::invalid_argument, "scale rho must be positive");
    if (!(tails.nu0_minus > tails.nu0_plus))
        throw Error(ErrorCode::invalid_argument, "scaled data requires nu0_minus > nu0_plus");
    InitialData d;
    d.variant_ = InitialVariant::scaled;
    d.rho_ = rho;
    d.tails_ = std::move(tails);
    std::ostringstream os;
    os << "nu(x/" << rho << "), nu=" << nu.description;
    d.description_ = os.str();
    d.pieces_.push_back(std::move(nu));
    d.left_limit_ = d.tails_.nu0_minus;
    d.right_limit_ = d.tails_.nu0_plus;
    d.feature_scale_ = rho;
    return d;
}

std::size_t InitialData::piece_index(double x, Side side) const
{
    // first jump >= x (left side) or > x (right side)
    const auto it = side == Side::left ? std::lower_bound(jumps_.begin(), jumps_.end(), x)
                                       : std::upper_bound(jumps_.begin(), jumps_.end(), x);
    return static_cast<std::size_t>(it - jumps_.begin());
}

double InitialData::value(double x) const { return value(x, Side::right); }

double InitialData::value(double x, Side side) const
{
    switch (variant_) {
    case InitialVariant::smooth:
        return pieces_.front().value(x);
    case InitialVariant::step:
        return pieces_[piece_index(x, side)].value(x);
    case InitialVariant::weak_discontinuity:
        if (x >= 0.0)
            return 0.0;
        return -(x + weak_a_ * x * x) * (1.0 + pieces_.front().value(x));
    case InitialVariant::scaled:
        return pieces_.front().value(x / rho_);
    }
    return 0.0;
}

double InitialData::derivative(double x) const
{
    switch (variant_) {
    case InitialVariant::smooth:
        return pieces_.front().derivative(x);
    case InitialVariant::step:
        return pieces_[piece_index(x, Side::right)].derivative(x);
    case InitialVariant::weak_discontinuity: {
        if (x >= 0.0)
            return 0.0;
        const auto& q0 = pieces_.front();
        return -(1.0 + 2.0 * weak_a_ * x) * (1.0 + q0.value(x)) - (x + weak_a_ * x * x) * q0.derivative(x);
    }
    case InitialVariant::scaled:
        return pieces_.front().derivative(x / rho_) / rho_;
    }
    return 0.0;
}

double InitialData::primitive(double x) const
{
    switch (variant_) {
    case InitialVariant::smooth:
        return pieces_.front().primitive(x);
    case InitialVariant::step: {
        // sum of piece primitives over the segments between 0 and x
        const double lo = std::min(0.0, x);
        const double hi = std::max(0.0, x);
        double total = 0.0;
        double a = lo;
        for (std::size_t k = 0; k < pieces_.size() && a < hi; ++k) {
            const double right_end = k < jumps_.size() ? jumps_[k] : std::numeric_limits<double>::infinity();
            if (right_end <= a)
                continue;
            const double b = std::min(hi, right_end);
            total += pieces_[k].primitive(b) - pieces_[k].primitive(a);
            a = b;
        }
        return x >= 0.0 ? total : -total;
    }
    case InitialVariant::weak_discontinuity: {
        if (x >= 0.0)
            return 0.0;
        const double a = weak_a_;
        // closed form of the polynomial part, q0 contribution by Gauss-Legendre panels
        double result = -(0.5 * x * x + a * x * x * x / 3.0);
        const auto& q0 = pieces_.front();
        if (!weak_q0_zero_) {
            const int panels = std::max(1, static_cast<int>(std::ceil(-x)));
            const double w = -x / panels;
            double extra = 0.0;
            for (int p = 0; p < panels; ++p) {
                const double lo = x + p * w;
                extra += boost::math::quadrature::gauss<double, 20>::integrate(
                    [&](double s) { return -(s + a * s * s) * q0.value(s); }, lo, lo + w);
            }
            result -= extra;  // integral from 0 to x is minus the integral from x to 0
        }
        return result;
    }
    case InitialVariant::scaled:
        return rho_ * pieces_.front().primitive(x / rho_);
    }
    return 0.0;
}

bool InitialData::has_finite_limits() const
{
    return std::isfinite(left_limit_) && std::isfinite(right_limit_);
}

std::pair<double, double> InitialData::range(double lo, double hi) const
{
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    constexpr int samples = 2000;
    auto take = [&](double v) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    };
    for (int i = 0; i <= samples; ++i)
        take(value(lo + (hi - lo) * i / samples));
    for (double j : jumps_)
        if (j >= lo && j <= hi) {
            take(value(j, Side::left));
            take(value(j, Side::right));
        }
    return {mn, mx};
}

InitialData InitialData::translated(double delta) const
{
    if (variant_ != InitialVariant::smooth)
        throw Error(ErrorCode::invalid_argument, "translation is only defined for smooth data");
    const Profile& p = pieces_.front();
    Profile shifted{[p, delta](double x) { return p.value(x - delta); },
                    [p, delta](double x) { return p.derivative(x - delta); },
                    [p, delta](double x) { return p.primitive(x - delta) - p.primitive(-delta); },
                    p.description + " shifted"};
    return smooth(std::move(shifted), left_limit_, right_limit_, feature_scale_);
}

double eval_initial(const InitialData& data, double x, Side side) { return data.value(x, side); }

// ---------------------------------------------------------------------------
// ProblemConfig
// ---------------------------------------------------------------------------

void ProblemConfig::validate() const
{
    if (!(epsilon > 0.0))
        throw Error(ErrorCode::validation_error, "epsilon must be positive");
    if (!(t_end > t0))
        throw Error(ErrorCode::validation_error, "t_end must exceed t0");
    if (!(half_width > 0.0))
        throw Error(ErrorCode::validation_error, "spatial half-width must be positive");
    if (initial.has_finite_limits()) {
        const double dl = std::abs(initial.value(-half_width) - initial.left_limit());
        const double dr = std::abs(initial.value(half_width) - initial.right_limit());
        if (dl > 1e-12 || dr > 1e-12) {
            std::ostringstream os;
            os << "half-width " << half_width << " too small: initial data differs from its far-field limits by "
               << std::max(dl, dr);
            throw Error(ErrorCode::validation_error, os.str());
        }
    }
}

double ProblemConfig::left_boundary_value() const
{
    return initial.has_finite_limits() ? initial.left_limit() : initial.value(-half_width);
}

double ProblemConfig::right_boundary_value() const
{
    return initial.has_finite_limits() ? initial.right_limit() : initial.value(half_width);
}

// ---------------------------------------------------------------------------
// InnerScaling
// ---------------------------------------------------------------------------

std::pair<double, double> InnerScaling::to_inner(double x, double t) const
{
    const double dt = t - t_star;
    return {(x - x_star - x_shift_speed * dt) / x_scale, dt / t_scale};
}

std::pair<double, double> InnerScaling::from_inner(double X, double T) const
{
    const double dt = T * t_scale;
    return {x_star + x_shift_speed * dt + x_scale * X, t_star + dt};
}

InnerScaling InnerScaling::power_law(double eps, Rational x_exp, Rational t_exp, double x_star, double t_star,
                                     double speed)
{
    if (!(eps > 0.0))
        throw Error(ErrorCode::invalid_argument, "scaling parameter must be positive");
    if (x_exp.value() <= 0.0 || t_exp.value() <= 0.0)
        throw Error(ErrorCode::invalid_argument, "scaling exponents must be positive");
    InnerScaling s;
    s.x_star = x_star;
    s.t_star = t_star;
    s.x_shift_speed = speed;
    s.x_exponent = x_exp;
    s.t_exponent = t_exp;
    s.x_scale = std::pow(eps, x_exp.value());
    s.t_scale = std::pow(eps, t_exp.value());
    return s;
}

InnerScaling InnerScaling::initial_jump(double eps, double speed, double x_star, double t_star)
{
    return power_law(eps, {1, 1}, {1, 1}, x_star, t_star, speed);
}

InnerScaling InnerScaling::collision(double eps, double x_star, double t_star)
{
    return power_law(eps, {1, 1}, {1, 1}, x_star, t_star, 0.0);
}

InnerScaling InnerScaling::fold(double eps, double x_star, double t_star, double speed)
{
    return power_law(eps, {3, 4}, {1, 2}, x_star, t_star, speed);
}

InnerScaling InnerScaling::weak_shock(double eps, double x_star, double t_star)
{
    return power_law(eps, {2, 3}, {1, 3}, x_star, t_star, 0.0);
}

InnerScaling InnerScaling::large_gradient_outer(double rho, double eps)
{
    if (!(rho > 0.0) || !(eps > 0.0))
        throw Error(ErrorCode::invalid_argument, "rho and eps must be positive");
    InnerScaling s;
    s.x_scale = rho;
    s.t_scale = rho * rho / eps;
    return s;
}

InnerScaling InnerScaling::large_gradient_inner(double eps)
{
    return power_law(eps, {1, 1}, {1, 1});
}

} // namespace asymlab
