#pragma once

// Data nu(x / rho) with a large gradient: rho and eps both small, mu = rho/eps -> 0.
// Near the origin u(rho sigma, rho^2 omega / eps) = sum_n mu^n h_n(sigma, omega)
// with h_0 the heat evolution of nu and h_n driven by the flux through a
// Duhamel chain. Away from it the solution is built from the inner Riemann
// solution Gamma(eta, theta) of the step nu0- | nu0+ in eta = x/eps, theta = t/eps.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "asymlab/flux_core.hpp"
#include "asymlab/viscous_solver.hpp"

namespace asymlab {

struct TwoParamState {
    double eps = 0.05;
    double rho = 0.005;
    double mu = 0.1;

    static TwoParamState from(double eps, double rho);
    double sigma(double x) const { return x / rho; }
    double omega(double t) const { return eps * t / (rho * rho); }
    double eta(double x) const { return x / eps; }
    double theta(double t) const { return t / eps; }
    // x / (2 sqrt(eps t)), the same as sigma / (2 sqrt(omega)).
    double z(double x, double t) const;
};

// -tanh(sigma) with tails +-1 and no higher tail terms.
Profile default_large_gradient_profile();
TailExpansion default_large_gradient_tails();

// Heat evolution of nu; nu(sigma) itself for omega <= 1e-14.
double h0(const Profile& nu, double sigma, double omega);

// Order-n term of the inner series, 1 <= n <= 3 (OrderTooHigh above).
double hn(const Profile& nu, const FluxFunction& flux, int n, double sigma, double omega);

// Solution of Gamma_theta + phi(Gamma)_eta = Gamma_etaeta from the step tails.nu0_minus | tails.nu0_plus.
// Exact for Burgers; other fluxes read a cached numerical table.
double gamma_riemann(const FluxFunction& flux, const TailExpansion& tails, double eta, double theta);

// Numerical Gamma on a uniform (eta, theta) grid with bicubic interpolation.
class GammaTable {
public:
    GammaTable(const FluxFunction& flux, double left, double right, double theta_max, double eta_half_width = 0.0,
               int nx = 0);
    double operator()(double eta, double theta) const;
    double theta_max() const noexcept { return field_.t_end; }
    double eta_half_width() const noexcept { return field_.x_max; }

private:
    SpaceTimeField field_;
    double left_;
    double right_;
};

// nu0- erfc(z) + nu0+ erfc(-z), erfc in the half-normalized convention.
double r000(const TailExpansion& tails, double z);

// h0(x/rho, eps t/rho^2) - R000(x / 2 sqrt(eps t)) + Gamma(x/eps, t/eps).
double composite_u(double x, double t, const TwoParamState& state, const Profile& nu, const FluxFunction& flux,
                   const TailExpansion& tails);

// (nu0+ - nu0-)^{-1} int Gamma((x - rho s)/eps, t/eps) nu'(s) ds.
double renormalized_u(double x, double t, const TwoParamState& state, const Profile& nu, const FluxFunction& flux,
                      const TailExpansion& tails);

} // namespace asymlab
