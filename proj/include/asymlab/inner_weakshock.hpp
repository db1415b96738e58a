#pragma once

// Inner layer where a weak discontinuity steepens into a shock. With
//   Phi(xi, tau) = int_0^inf exp(-(4b/3) s^3 + tau s^2 - xi s) ds
// the leading term is w20 = -2 Phi_xi / Phi, a Burgers solution, and the
// next one is w30 = sqrt(pi) Phi_xi / Phi^2, which solves the linearization.

#include "asymlab/flux_core.hpp"

namespace asymlab {

struct WeakShockParams {
    double a = 1.0;
    double b = 1.0;
    double phi3_at_0 = 0.0;

    // b = a - phi'''(0)/2; BNonPositive when that is not positive.
    static WeakShockParams from(double a, double phi3_at_0);
    // theta = xi / (2 sqrt(-tau)), the similarity variable for tau < 0.
    static double theta(double xi, double tau);
};

struct PhiValue {
    double value = 0.0;
    double d_xi = 0.0;
};

// Phi and Phi_xi divided by exp(log_scale), the largest exponent on [0, inf).
struct ScaledPhi {
    double value = 0.0;
    double d_xi = 0.0;
    double log_scale = 0.0;
};

ScaledPhi phi_scaled(double xi, double tau, double b);
PhiValue phi_integral(double xi, double tau, double b);

double w20(double xi, double tau, double b);
double w30(double xi, double tau, double b);

// w_tau + w w_xi - w_xixi for w20, central differences of step h.
double w20_residual(double xi, double tau, double b, double h);
// v_tau + (w20 v)_xi - v_xixi for v = w30.
double w30_residual(double xi, double tau, double b, double h);

// Data -(x + a x^2) Theta(-x) given at t0 = -1, so that the weak
// discontinuity at x = 0 turns into a shock at the origin. The domain is
// [-1/a, 1/a]: the data vanish at both ends and the left end is itself a
// characteristic carrying u = 0.
ProblemConfig weakshock_scenario(double a, const FluxFunction& flux, double eps, double t_end = 0.5);

} // namespace asymlab
