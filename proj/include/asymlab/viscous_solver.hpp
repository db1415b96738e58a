#pragma once

#include <functional>
#include <span>
#include <vector>

#include "asymlab/flux_core.hpp"

namespace asymlab {

// u on a uniform cell-centred grid: x_i = x_min + (i + 1/2) dx, t_n = t_start + n dt.
struct SpaceTimeField {
    double x_min = 0.0;
    double x_max = 1.0;
    double t_start = 0.0;
    double t_end = 1.0;
    int nx = 0;
    int nt = 0;
    std::vector<double> values;          // (nt + 1) rows of nx
    std::vector<double> left_boundary;   // per time level
    std::vector<double> right_boundary;  // per time level
    // Cumulative mass entering through the two boundaries up to each level,
    // accumulated from the scheme's own face fluxes.
    std::vector<double> net_inflow;

    double dx() const { return (x_max - x_min) / nx; }
    double dt() const { return nt > 0 ? (t_end - t_start) / nt : 0.0; }
    double x(int i) const { return x_min + (i + 0.5) * dx(); }
    double t(int n) const { return t_start + n * dt(); }
    double& at(int n, int i) { return values[static_cast<std::size_t>(n) * nx + i]; }
    double at(int n, int i) const { return values[static_cast<std::size_t>(n) * nx + i]; }
    std::span<const double> level(int n) const
    {
        return {values.data() + static_cast<std::size_t>(n) * nx, static_cast<std::size_t>(nx)};
    }
    // Linear interpolation in x at time level n.
    double interpolate(double x, int n) const;
    // Bilinear interpolation in (x, t).
    double sample(double x, double t) const;
    // sum_i u_i dx at level n.
    double mass(int n) const;
    double max_abs() const;
};

struct SolverOptions {
    double cfl_limit = 1.0;          // convective Courant number allowed
    int implicit_startup_steps = 2;  // backward-Euler diffusion steps damping step data
    bool limiter = true;             // van Albada slopes; false gives unlimited central slopes
    bool check_domain = true;        // DomainTooSmall check at the boundaries
};

// Conservative IMEX scheme: Strang splitting of Crank-Nicolson diffusion
// around an SSP-RK2 step of MUSCL / local Lax-Friedrichs convection.
// Dirichlet boundaries take the far-field limits of the initial data.
SpaceTimeField solve_viscous(const ProblemConfig& cfg, int nx, int nt, const SolverOptions& options = {});

// Time steps giving convective Courant number cfl for the data range of cfg.
int stable_time_steps(const ProblemConfig& cfg, int nx, double cfl = 0.4);

// Exact Burgers solution u_t + u u_x = eps u_xx from the Hopf integral
//   u = int (x-y)/t e^{-G/2eps} dy / int e^{-G/2eps} dy,  G = int_0^y q + (x-y)^2/(2t),
// with t measured from the initial time.
double cole_hopf_burgers(const InitialData& q, double x, double t, double eps);

SpaceTimeField sample_field(const std::function<double(double, double)>& u, double x_min, double x_max, int nx,
                            double t_start, double t_end, int nt);

// Interior residual u_t + phi(u)_x - eps u_xx by central differences; zeros on the frame.
SpaceTimeField pde_residual(const SpaceTimeField& field, const FluxFunction& flux, double eps);

// Largest |value| over interior points of a residual field.
double max_interior(const SpaceTimeField& residual);

} // namespace asymlab
