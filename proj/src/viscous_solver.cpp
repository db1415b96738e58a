#include "asymlab/viscous_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "asymlab/quadrature.hpp"

namespace asymlab {

double SpaceTimeField::interpolate(double xq, int n) const
{
    const double s = (xq - x_min) / dx() - 0.5;
    if (s <= 0.0)
        return at(n, 0);
    if (s >= nx - 1)
        return at(n, nx - 1);
    const int i = static_cast<int>(s);
    const double w = s - i;
    return (1.0 - w) * at(n, i) + w * at(n, i + 1);
}

double SpaceTimeField::sample(double xq, double tq) const
{
    if (nt == 0)
        return interpolate(xq, 0);
    const double s = std::clamp((tq - t_start) / dt(), 0.0, static_cast<double>(nt));
    const int n = std::min(static_cast<int>(s), nt - 1);
    const double w = s - n;
    return (1.0 - w) * interpolate(xq, n) + w * interpolate(xq, n + 1);
}

double SpaceTimeField::mass(int n) const
{
    double s = 0.0;
    for (double v : level(n))
        s += v;
    return s * dx();
}

double SpaceTimeField::max_abs() const
{
    double m = 0.0;
    for (double v : values)
        m = std::max(m, std::abs(v));
    return m;
}

namespace {

double van_albada(double a, double b)
{
    if (a * b <= 0.0)
        return 0.0;
    return a * b * (a + b) / (a * a + b * b);
}

class ImexStepper {
public:
    ImexStepper(const FluxFunction& flux, double eps, double dx, double left, double right, bool limiter)
        : flux_(flux), eps_(eps), dx_(dx), left_(left), right_(right), limiter_(limiter)
    {
    }

    // Convective right-hand side -(F_{i+1/2} - F_{i-1/2})/dx; returns inflow rate F_{-1/2} - F_{n-1/2}.
    double convection(const std::vector<double>& u, std::vector<double>& rhs)
    {
        const int n = static_cast<int>(u.size());
        ext_.assign(static_cast<std::size_t>(n) + 4, 0.0);
        ext_[0] = ext_[1] = left_;
        ext_[n + 2] = ext_[n + 3] = right_;
        std::copy(u.begin(), u.end(), ext_.begin() + 2);
        slope_.assign(ext_.size(), 0.0);
        for (int k = 1; k < n + 3; ++k) {
            const double a = ext_[k] - ext_[k - 1];
            const double b = ext_[k + 1] - ext_[k];
            slope_[k] = limiter_ ? van_albada(a, b) : 0.5 * (a + b);
        }
        face_.assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (int j = 0; j <= n; ++j) {
            // face between cells j-1 and j, i.e. ext indices j+1 and j+2
            const double ul = ext_[j + 1] + 0.5 * slope_[j + 1];
            const double ur = ext_[j + 2] - 0.5 * slope_[j + 2];
            const double alpha = std::max(std::abs(flux_.d1(ul)), std::abs(flux_.d1(ur)));
            face_[j] = 0.5 * (flux_.value(ul) + flux_.value(ur)) - 0.5 * alpha * (ur - ul);
        }
        rhs.resize(u.size());
        for (int i = 0; i < n; ++i)
            rhs[i] = -(face_[i + 1] - face_[i]) / dx_;
        return face_[0] - face_[n];
    }

    // One SSP-RK2 convective step; returns the mass that entered.
    double convect(std::vector<double>& u, double dt)
    {
        const double in0 = convection(u, rhs_);
        stage_.resize(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            stage_[i] = u[i] + dt * rhs_[i];
        const double in1 = convection(stage_, rhs_);
        for (std::size_t i = 0; i < u.size(); ++i)
            u[i] = 0.5 * u[i] + 0.5 * (stage_[i] + dt * rhs_[i]);
        return 0.5 * dt * (in0 + in1);
    }

    // theta-scheme diffusion step (theta = 1/2 Crank-Nicolson, 1 backward Euler);
    // returns the mass that entered through the boundary faces.
    double diffuse(std::vector<double>& u, double dt, double theta)
    {
        const int n = static_cast<int>(u.size());
        const double r = eps_ * dt / (dx_ * dx_);
        auto boundary_terms = [&](const std::vector<double>& v) {
            return (right_ - v[n - 1]) + (left_ - v[0]);
        };
        const double before = boundary_terms(u);
        rhs_.resize(u.size());
        for (int i = 0; i < n; ++i) {
            const double um = i > 0 ? u[i - 1] : left_;
            const double up = i < n - 1 ? u[i + 1] : right_;
            rhs_[i] = u[i] + (1.0 - theta) * r * (up - 2.0 * u[i] + um);
        }
        rhs_[0] += theta * r * left_;
        rhs_[n - 1] += theta * r * right_;
        // Thomas algorithm: -theta r on the off-diagonals, 1 + 2 theta r on the diagonal
        const double off = -theta * r;
        const double diag = 1.0 + 2.0 * theta * r;
        cprime_.resize(u.size());
        cprime_[0] = off / diag;
        rhs_[0] /= diag;
        for (int i = 1; i < n; ++i) {
            const double m = diag - off * cprime_[i - 1];
            cprime_[i] = off / m;
            rhs_[i] = (rhs_[i] - off * rhs_[i - 1]) / m;
        }
        u[n - 1] = rhs_[n - 1];
        for (int i = n - 2; i >= 0; --i)
            u[i] = rhs_[i] - cprime_[i] * u[i + 1];
        const double after = boundary_terms(u);
        return eps_ * dt / dx_ * (theta * after + (1.0 - theta) * before);
    }

private:
    const FluxFunction& flux_;
    double eps_;
    double dx_;
    double left_;
    double right_;
    bool limiter_;
    std::vector<double> ext_, slope_, face_, rhs_, stage_, cprime_;
};

} // namespace

SpaceTimeField solve_viscous(const ProblemConfig& cfg, int nx, int nt, const SolverOptions& options)
{
    if (nx < 16 || nt < 16)
        throw Error(ErrorCode::invalid_argument, "solve_viscous needs nx >= 16 and nt >= 16");
    if (!(cfg.epsilon > 0.0) || !(cfg.t_end > cfg.t0) || !(cfg.half_width > 0.0))
        throw Error(ErrorCode::validation_error, "epsilon > 0, t_end > t0 and half_width > 0 are required");

    SpaceTimeField f;
    f.x_min = -cfg.half_width;
    f.x_max = cfg.half_width;
    f.t_start = cfg.t0;
    f.t_end = cfg.t_end;
    f.nx = nx;
    f.nt = nt;
    f.values.resize(static_cast<std::size_t>(nx) * (nt + 1));
    const double left = cfg.left_boundary_value();
    const double right = cfg.right_boundary_value();
    f.left_boundary.assign(static_cast<std::size_t>(nt) + 1, left);
    f.right_boundary.assign(static_cast<std::size_t>(nt) + 1, right);
    f.net_inflow.assign(static_cast<std::size_t>(nt) + 1, 0.0);

    const double dx = f.dx();
    const double dt = f.dt();
    if (cfg.epsilon * dt / (dx * dx) > 1e3)
        throw Error(ErrorCode::invalid_argument, "eps*dt/dx^2 exceeds 1e3; refine the time step");

    std::vector<double> u(static_cast<std::size_t>(nx));
    double lo = std::min(left, right);
    double hi = std::max(left, right);
    for (int i = 0; i < nx; ++i) {
        u[i] = cfg.initial.value(f.x(i));
        f.at(0, i) = u[i];
        lo = std::min(lo, u[i]);
        hi = std::max(hi, u[i]);
    }

    double max_speed = 0.0;
    for (int k = 0; k <= 64; ++k)
        max_speed = std::max(max_speed, std::abs(cfg.flux.d1(lo + (hi - lo) * k / 64.0)));
    if (max_speed * dt / dx > options.cfl_limit) {
        std::ostringstream os;
        os << "convective Courant number " << max_speed * dt / dx << " exceeds " << options.cfl_limit;
        throw Error(ErrorCode::instability, os.str());
    }

    ImexStepper stepper(cfg.flux, cfg.epsilon, dx, left, right, options.limiter);
    double inflow = 0.0;
    for (int n = 1; n <= nt; ++n) {
        const double theta = n <= options.implicit_startup_steps ? 1.0 : 0.5;
        inflow += stepper.diffuse(u, 0.5 * dt, theta);
        inflow += stepper.convect(u, dt);
        inflow += stepper.diffuse(u, 0.5 * dt, theta);
        for (int i = 0; i < nx; ++i) {
            if (!std::isfinite(u[i]) || u[i] < lo - 1e-3 || u[i] > hi + 1e-3) {
                std::ostringstream os;
                os << "value " << u[i] << " at x=" << f.x(i) << ", t=" << f.t(n) << " left the band [" << lo
                   << ", " << hi << "]";
                throw Error(ErrorCode::instability, os.str());
            }
            f.at(n, i) = u[i];
        }
        f.net_inflow[n] = inflow;
    }

    if (options.check_domain) {
        const double drift = std::max(std::abs(u.front() - left), std::abs(u.back() - right));
        if (drift > 1e-6) {
            std::ostringstream os;
            os << "solution drifted " << drift << " from the boundary values; widen the domain";
            throw Error(ErrorCode::domain_too_small, os.str());
        }
    }
    return f;
}

int stable_time_steps(const ProblemConfig& cfg, int nx, double cfl)
{
    const double dx = 2.0 * cfg.half_width / nx;
    auto [lo, hi] = cfg.initial.range(-cfg.half_width, cfg.half_width);
    lo = std::min({lo, cfg.left_boundary_value(), cfg.right_boundary_value()});
    hi = std::max({hi, cfg.left_boundary_value(), cfg.right_boundary_value()});
    double max_speed = 1e-12;
    for (int k = 0; k <= 64; ++k)
        max_speed = std::max(max_speed, std::abs(cfg.flux.d1(lo + (hi - lo) * k / 64.0)));
    const double dt = cfl * dx / max_speed;
    return std::max(16, static_cast<int>(std::ceil((cfg.t_end - cfg.t0) / dt)));
}

double cole_hopf_burgers(const InitialData& q, double x, double t, double eps)
{
    if (t < 1e-12)
        throw Error(ErrorCode::small_time_blowup, "Hopf integral needs t >= 1e-12; use the initial data");
    if (!(eps > 0.0))
        throw Error(ErrorCode::invalid_argument, "eps must be positive");

    auto G = [&](double y) { return q.primitive(y) + (x - y) * (x - y) / (2.0 * t); };
    const double width = std::sqrt(2.0 * eps * t);
    constexpr double cutoff = 50.0;  // integrand below e^{-50} of its peak is dropped

    // widen the search window until both ends are far above the minimum
    double half = std::max(1.0, 10.0 * width);
    std::vector<double> ys;
    std::vector<double> gs;
    double gmin = 0.0;
    for (int attempt = 0;; ++attempt) {
        const double spacing = std::min(0.5 * width, half / 1024.0);
        const int m = static_cast<int>(std::ceil(2.0 * half / spacing));
        ys.resize(static_cast<std::size_t>(m) + 1);
        gs.resize(ys.size());
        gmin = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= m; ++k) {
            ys[k] = x - half + 2.0 * half * k / m;
            gs[k] = G(ys[k]);
            gmin = std::min(gmin, gs[k]);
        }
        const bool ends_high = (gs.front() - gmin) / (2.0 * eps) > cutoff && (gs.back() - gmin) / (2.0 * eps) > cutoff;
        if (ends_high && gs[0] > gs[1] && gs[m] > gs[m - 1])
            break;
        if (attempt > 20 || ys.size() > 4000000)
            throw Error(ErrorCode::no_convergence, "Hopf integral: could not bracket the integrand");
        half *= 2.0;
    }

    std::size_t first = ys.size();
    std::size_t last = 0;
    for (std::size_t k = 0; k < ys.size(); ++k)
        if ((gs[k] - gmin) / (2.0 * eps) < cutoff) {
            first = std::min(first, k);
            last = k;
        }
    const double ylo = ys[first > 0 ? first - 1 : 0];
    const double yhi = ys[std::min(last + 1, ys.size() - 1)];

    std::vector<double> breaks;
    const int panels = std::max(1, static_cast<int>(std::ceil((yhi - ylo) / (2.0 * width))));
    for (int k = 0; k <= panels; ++k)
        breaks.push_back(ylo + (yhi - ylo) * k / panels);
    for (double b : q.breakpoints())
        if (b > ylo && b < yhi)
            breaks.push_back(b);
    const double fs = q.feature_scale();
    if (fs < width)
        for (double b : {-fs, 0.0, fs})
            if (b > ylo && b < yhi)
                breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    auto weight = [&](double y) { return std::exp(-(G(y) - gmin) / (2.0 * eps)); };
    const auto den = integrate_panels(weight, breaks, 1e-13);
    const auto num = integrate_panels([&](double y) { return (x - y) / t * weight(y); }, breaks, 1e-13);
    return num.value / den.value;
}

SpaceTimeField sample_field(const std::function<double(double, double)>& u, double x_min, double x_max, int nx,
                            double t_start, double t_end, int nt)
{
    SpaceTimeField f;
    f.x_min = x_min;
    f.x_max = x_max;
    f.t_start = t_start;
    f.t_end = t_end;
    f.nx = nx;
    f.nt = nt;
    f.values.resize(static_cast<std::size_t>(nx) * (nt + 1));
    for (int n = 0; n <= nt; ++n)
        for (int i = 0; i < nx; ++i)
            f.at(n, i) = u(f.x(i), f.t(n));
    f.left_boundary.assign(static_cast<std::size_t>(nt) + 1, 0.0);
    f.right_boundary.assign(static_cast<std::size_t>(nt) + 1, 0.0);
    for (int n = 0; n <= nt; ++n) {
        f.left_boundary[n] = f.at(n, 0);
        f.right_boundary[n] = f.at(n, nx - 1);
    }
    f.net_inflow.assign(static_cast<std::size_t>(nt) + 1, 0.0);
    return f;
}

SpaceTimeField pde_residual(const SpaceTimeField& field, const FluxFunction& flux, double eps)
{
    if (field.nx < 5 || field.nt < 4)
        throw Error(ErrorCode::invalid_argument, "pde_residual needs at least 5 points in x and t");
    SpaceTimeField r = field;
    std::fill(r.values.begin(), r.values.end(), 0.0);
    const double dx = field.dx();
    const double dt = field.dt();
    for (int n = 1; n < field.nt; ++n)
        for (int i = 1; i < field.nx - 1; ++i) {
            const double ut = (field.at(n + 1, i) - field.at(n - 1, i)) / (2.0 * dt);
            const double fx = (flux.value(field.at(n, i + 1)) - flux.value(field.at(n, i - 1))) / (2.0 * dx);
            const double uxx = (field.at(n, i + 1) - 2.0 * field.at(n, i) + field.at(n, i - 1)) / (dx * dx);
            r.at(n, i) = ut + fx - eps * uxx;
        }
    return r;
}

double max_interior(const SpaceTimeField& residual)
{
    double m = 0.0;
    for (int n = 1; n < residual.nt; ++n)
        for (int i = 1; i < residual.nx - 1; ++i)
            m = std::max(m, std::abs(residual.at(n, i)));
    return m;
}

} // namespace asymlab
