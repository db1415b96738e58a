#pragma once

// Domain types shared by every module: the convex flux, the initial-data
// variants, the problem configuration and inner-coordinate scalings.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "asymlab/error.hpp"

namespace asymlab {

enum class FluxKind { burgers, polynomial, composed_analytic };

const char* flux_kind_name(FluxKind kind) noexcept;

// Description accepted by make_flux.
//
// polynomial:        phi(u) = sum_k coefficients[k] * u^k
// composed_analytic: the polynomial part plus exp_amplitude * exp(exp_rate * u)
// burgers:           coefficients are ignored, phi(u) = u^2 / 2
struct FluxSpec {
    FluxKind kind = FluxKind::burgers;
    std::vector<double> coefficients;
    double exp_amplitude = 0.0;
    double exp_rate = 0.0;
    double interval_lo = -1.0;
    double interval_hi = 1.0;
    int max_derivative_order = 8;
};

class FluxFunction {
public:
    FluxFunction() : FluxFunction(FluxKind::burgers, {0.0, 0.0, 0.5}, 0.0, 0.0, -1.0, 1.0, 8) {}

    double value(double u) const { return derivative(u, 0); }
    // Exact derivative of the requested order; order 0 is the flux itself.
    double derivative(double u, int order) const;
    double d1(double u) const { return derivative(u, 1); }
    double d2(double u) const { return derivative(u, 2); }
    double d3(double u) const { return derivative(u, 3); }

    FluxKind kind() const noexcept { return kind_; }
    const std::vector<double>& coefficients() const noexcept { return coefficients_; }
    double exp_amplitude() const noexcept { return exp_amplitude_; }
    double exp_rate() const noexcept { return exp_rate_; }
    int max_derivative_order() const noexcept { return max_order_; }
    double interval_lo() const noexcept { return lo_; }
    double interval_hi() const noexcept { return hi_; }

    // phi(0) = phi'(0) = 0 and phi''(0) = 1, to 1e-12.
    bool is_normalized() const;

    // The flux seen from a frame moving with speed s: phi(u) - s*u.
    FluxFunction with_linear_shift(double speed) const;

    // RH speed (phi(b) - phi(a)) / (b - a); phi'(a) when the states coincide.
    double chord_speed(double a, double b) const;

    std::string describe() const;

private:
    friend FluxFunction make_flux(const FluxSpec& spec);
    FluxFunction(FluxKind kind, std::vector<double> coefficients, double exp_amplitude, double exp_rate,
                 double lo, double hi, int max_order);

    FluxKind kind_;
    std::vector<double> coefficients_;
    double exp_amplitude_;
    double exp_rate_;
    double lo_;
    double hi_;
    int max_order_;
};

// Validates the FluxSpec and samples phi'' on the open operating interval.
// Throws convexity_violation or order_too_low.
FluxFunction make_flux(const FluxSpec& spec);
FluxFunction burgers_flux(double lo = -1.0, double hi = 1.0);

// A smooth function together with its derivative and its primitive
// Q(x) = integral from 0 to x.
struct Profile {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    std::function<double(double)> primitive;
    std::string description;
};

Profile constant_profile(double c);
Profile linear_profile(double slope);
// offset + amplitude * tanh((x - shift) / width)
Profile tanh_profile(double amplitude, double width = 1.0, double offset = 0.0, double shift = 0.0);

enum class Side { left, right };

enum class InitialVariant { smooth, step, weak_discontinuity, scaled };

const char* initial_variant_name(InitialVariant v) noexcept;

// nu(sigma) ~ sum_n nu_n^{+-} / sigma^n as sigma -> +-infinity.
struct TailExpansion {
    double nu0_minus = 1.0;
    double nu0_plus = -1.0;
    std::vector<double> higher_minus;
    std::vector<double> higher_plus;
};

class InitialData {
public:
    // Smooth data q(x) with far-field limits (NaN when the data grows).
    static InitialData smooth(Profile q, double left_limit, double right_limit, double feature_scale = 1.0);
    // Piecewise-smooth data: pieces[k] is used on (jumps[k-1], jumps[k]).
    // left_taylor/right_taylor are the one-sided derivatives d^n q(+-0)/dx^n at jumps[0].
    static InitialData piecewise(std::vector<double> jumps, std::vector<Profile> pieces,
                                 std::vector<double> left_taylor = {}, std::vector<double> right_taylor = {});
    // u_minus + kappa*tanh((x - x_jump)/width) left of the jump, u_plus + the same right of it.
    static InitialData step_tanh(double u_minus, double u_plus, double kappa = 0.0, double x_jump = 0.0,
                                 double width = 1.0);
    // Constant states separated by jumps: states.size() == jumps.size() + 1.
    static InitialData piecewise_constant(std::vector<double> jumps, std::vector<double> states);
    // -(x + a x^2) Theta(-x) (1 + q0(x)).
    static InitialData weak_discontinuity(double a, Profile q0 = constant_profile(0.0));
    // nu(x / rho).
    static InitialData scaled(Profile nu, double rho, TailExpansion tails);

    InitialVariant variant() const noexcept { return variant_; }

    double value(double x) const;
    // One-sided value; differs from value() only at a jump.
    double value(double x, Side side) const;
    double derivative(double x) const;
    // Integral of q from 0 to x.
    double primitive(double x) const;

    const std::vector<double>& breakpoints() const noexcept { return jumps_; }
    double left_limit() const noexcept { return left_limit_; }
    double right_limit() const noexcept { return right_limit_; }
    bool has_finite_limits() const;
    double feature_scale() const noexcept { return feature_scale_; }

    // Sampled min and max of q on [lo, hi].
    std::pair<double, double> range(double lo, double hi) const;

    // q(x - delta); only the smooth variant supports translation.
    InitialData translated(double delta) const;

    double weak_a() const noexcept { return weak_a_; }
    double rho() const noexcept { return rho_; }
    const TailExpansion& tails() const noexcept { return tails_; }
    const Profile& scaled_profile() const noexcept { return pieces_.front(); }
    const std::vector<double>& left_taylor() const noexcept { return left_taylor_; }
    const std::vector<double>& right_taylor() const noexcept { return right_taylor_; }
    const std::string& description() const noexcept { return description_; }

private:
    InitialData() = default;
    std::size_t piece_index(double x, Side side) const;

    InitialVariant variant_ = InitialVariant::smooth;
    std::vector<double> jumps_;
    std::vector<Profile> pieces_;
    std::vector<double> left_taylor_;
    std::vector<double> right_taylor_;
    double left_limit_ = 0.0;
    double right_limit_ = 0.0;
    double feature_scale_ = 1.0;
    double weak_a_ = 0.0;
    bool weak_q0_zero_ = true;
    double rho_ = 1.0;
    TailExpansion tails_;
    std::string description_;
};

double eval_initial(const InitialData& data, double x, Side side = Side::right);

struct ProblemConfig {
    FluxFunction flux;
    InitialData initial = InitialData::smooth(constant_profile(0.0), 0.0, 0.0);
    double epsilon = 0.1;
    double t0 = 0.0;
    double t_end = 1.0;
    double half_width = 10.0;

    // Throws validation_error naming the violated invariant.
    void validate() const;
    double left_boundary_value() const;
    double right_boundary_value() const;
};

struct Rational {
    int num = 1;
    int den = 1;
    double value() const { return static_cast<double>(num) / den; }
};

// Affine-plus-power change of variables:
//   x - x_star - x_shift_speed*(t - t_star) = x_scale * X,   t - t_star = t_scale * T.
// For the power-law scalings x_scale = eps^x_exponent and t_scale = eps^t_exponent.
struct InnerScaling {
    double x_star = 0.0;
    double t_star = 0.0;
    double x_shift_speed = 0.0;
    double x_scale = 1.0;
    double t_scale = 1.0;
    Rational x_exponent{1, 1};
    Rational t_exponent{1, 1};

    std::pair<double, double> to_inner(double x, double t) const;
    std::pair<double, double> from_inner(double X, double T) const;

    static InnerScaling power_law(double eps, Rational x_exp, Rational t_exp, double x_star = 0.0,
                                  double t_star = 0.0, double speed = 0.0);
    // zeta = (x - s(t))/eps, tau = t/eps along a straight shock of the given speed.
    static InnerScaling initial_jump(double eps, double speed, double x_star = 0.0, double t_star = 0.0);
    static InnerScaling collision(double eps, double x_star, double t_star);
    // xi = eps^{-3/4} x, tau = eps^{-1/2} t around the catastrophe point.
    static InnerScaling fold(double eps, double x_star = 0.0, double t_star = 0.0, double speed = 0.0);
    // xi = eps^{-2/3} x, tau = eps^{-1/3} t.
    static InnerScaling weak_shock(double eps, double x_star = 0.0, double t_star = 0.0);
    // sigma = x/rho, omega = eps t / rho^2.
    static InnerScaling large_gradient_outer(double rho, double eps);
    // eta = x/eps, theta = t/eps.
    static InnerScaling large_gradient_inner(double eps);
};

} // namespace asymlab
