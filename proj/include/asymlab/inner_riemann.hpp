#pragma once

// Inner layers at an initial jump and at a collision of two shocks.
// In the inner variables the Burgers layer solves w_tau + (w^2/2)_zeta = w_zetazeta.

#include <functional>
#include <string>
#include <vector>

#include "asymlab/flux_core.hpp"
#include "asymlab/viscous_solver.hpp"

namespace asymlab {

struct InnerGrid {
    double half_width = 40.0;  // zeta in [-half_width, half_width]
    int nx = 4000;
    double tau_end = 10.0;
    int nt = 0;  // 0 picks a Courant number of 0.4
};

struct InnerField {
    SpaceTimeField field;  // x = zeta, t = tau
    double frame_speed = 0.0;
    std::string scenario;
    double value(double zeta, double tau) const { return field.sample(zeta, tau); }
};

// w_tau + (phi(w) - c w)_zeta = w_zetazeta from step data u_minus | u_plus, c the frame speed.
InnerField step_inner_w0(const FluxFunction& flux, double u_minus, double u_plus, double frame_speed,
                         const InnerGrid& grid = {});

// Stationary viscous profile joining left to right in its own frame:
// left + (right - left) / (1 + exp(-(left - right) y / 2)).
double two_state_profile(double left, double right, double y);

// Exact Burgers layer from step data (Hopf-Cole), tau > 0.
double burgers_step_exact(double u_minus, double u_plus, double zeta, double tau);

// Exact Burgers solution made of three exponentials: shocks u1|u2 and u2|u3
// sit at zeta = (u1+u2) tau/2 + b1 and zeta = (u2+u3) tau/2 + b2 and merge
// into a single u1|u3 shock.
double merging_shocks_exact(double u1, double u2, double u3, double b1, double b2, double zeta, double tau);

// Superposition of the two incoming shock profiles (tau -> -infinity).
double two_shock_comparator(double u1, double u2, double u3, double b1, double b2, double zeta, double tau);
// The merged shock profile (tau -> +infinity).
double one_shock_comparator(double u1, double u2, double u3, double b1, double b2, double zeta, double tau);
// Offset of the merged shock: it sits at zeta = (u1+u3) tau/2 + merged_offset.
double merged_offset(double u1, double u2, double u3, double b1, double b2);

using LayerFunction = std::function<double(double, double)>;

// sup over |zeta| <= zeta_half_width of |w - comparator| at time tau.
double matching_defect(const LayerFunction& w, const LayerFunction& comparator, double tau,
                       double zeta_half_width = 40.0, int samples = 8001);

struct ExponentialFit {
    double rate = 0.0;       // defect ~ M exp(-rate |tau|)
    double log_amplitude = 0.0;
    double residual = 0.0;   // rms of the log fit
};

// Least squares of log(defect) against |tau|. DegenerateFit for fewer than two
// points, equal |tau| or non-positive defects.
ExponentialFit fit_exponential_rate(const std::vector<double>& taus, const std::vector<double>& defects);

} // namespace asymlab
