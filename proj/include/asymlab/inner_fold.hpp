#pragma once

// Inner layer at a gradient catastrophe. The leading term is
//   w10 = -(2 / (phi''(0) Lambda)) dLambda/dxi,
//   Lambda(xi, tau) = int exp(-(z^4 - 2 z^2 tau + 4 z xi) / 8) dz,
// which solves w_tau + phi''(0) w w_xi = w_xixi.

#include <string>
#include <utility>
#include <vector>

#include "asymlab/limit_solver.hpp"

namespace asymlab {

struct LambdaValue {
    double value = 0.0;
    double d_xi = 0.0;
};

// Lambda and dLambda/dxi divided by exp(log_scale), where log_scale is the
// largest exponent of the integrand. Finite for all moderate arguments.
struct ScaledLambda {
    double value = 0.0;
    double d_xi = 0.0;
    double log_scale = 0.0;
};

ScaledLambda lambda_scaled(double xi, double tau);
// Unscaled; overflows once tau^2/8 approaches 700.
LambdaValue lambda_integral(double xi, double tau);

double w10(double xi, double tau, double phi2_at_0 = 1.0);

// w_tau + phi2 w w_xi - w_xixi by central differences of step h in [1e-4, 1e-1].
double w10_residual(double xi, double tau, double phi2_at_0, double h);

// Real roots of z^3 - tau z + xi, ascending.
std::vector<double> fold_cubic_roots(double xi, double tau);

// The real root H of H^3 - tau H + xi = 0 outside the cusp; InsideCusp when 27 xi^2 < 4 tau^3.
double whitney_fold_root(double xi, double tau);

// |phi''(0) w10 - H|. Needs 3H^2 - tau >= 4 (WindowViolation otherwise).
double fold_far_field_defect(double xi, double tau);

// sqrt(tau) (-tanh(xi sqrt(tau) / 2)) / phi''(0) for tau >= 4 and |xi| sqrt(tau) < tau^0.4.
double tau_plus_comparator(double xi, double tau, double phi2_at_0 = 1.0);

struct SelfSimilarCheck {
    std::vector<double> values;  // w10(theta |tau|^{3/2}, tau) / |tau|^{1/2}
    std::vector<double> gaps;    // |values[k+1] - values[k]|
    double fold_value = 0.0;     // root of Z^3 + Z + theta = 0
};

// Collapse of w10 onto its tau -> -infinity similarity form.
SelfSimilarCheck tau_minus_selfsimilar_check(double theta, const std::vector<double>& tau_list);

enum class FoldRegime { core, fold_far_field, tau_minus, tau_plus };
const char* fold_regime_name(FoldRegime r) noexcept;

struct FoldEvaluation {
    double xi = 0.0;
    double tau = 0.0;
    double lambda_value = 0.0;  // scaled by exp(-log_scale)
    double lambda_xi = 0.0;
    double log_scale = 0.0;
    double w10 = 0.0;
    FoldRegime regime = FoldRegime::core;
};

FoldEvaluation evaluate_fold(double xi, double tau, double phi2_at_0 = 1.0);

// Affine map from the physical catastrophe to the variables w10 is written in.
// With c the cubic coefficient of the characteristic map and lam = c^{-1/4},
//   xi  = lam   (x - x* - phi'(u*)(t - t*)) / eps^{3/4},
//   tau = lam^2 (t - t*) / eps^{1/2},
//   u  ~ u* + eps^{1/4} lam w10(xi, tau, phi''(u*)).
struct FoldNormalization {
    double x_star = 0.0;
    double t_star = 0.0;
    double speed = 0.0;
    double u_star = 0.0;
    double phi2 = 1.0;
    double lam = 1.0;

    static FoldNormalization from(const SingularPoint& p);
    // The stretched variables before normalization, (x - x* - s (t - t*)) / eps^{3/4} and (t - t*) / eps^{1/2}.
    std::pair<double, double> stretched(double x, double t, double eps) const;
    std::pair<double, double> inner(double x, double t, double eps) const;
    double leading(double x, double t, double eps) const;
};

} // namespace asymlab
