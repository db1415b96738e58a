#include "asymlab/limit_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace asymlab {

const char* singular_kind_name(SingularKind kind) noexcept
{
    switch (kind) {
    case SingularKind::initial_jump: return "initial_jump";
    case SingularKind::catastrophe: return "catastrophe";
    case SingularKind::collision: return "collision";
    case SingularKind::weak_to_shock: return "weak_to_shock";
    }
    return "unknown";
}

namespace {

constexpr int samples_per_segment = 2048;

// Root of a continuous f on [a, b] with f(a) f(b) < 0.
template <class F>
double bracketed_root(F&& f, double a, double b, double fa, double fb)
{
    boost::uintmax_t iters = 200;
    auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 4e-16 * std::max(1.0, std::abs(lo)); };
    const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
    return 0.5 * (r.first + r.second);
}

double interp_linear(const std::vector<double>& ts, const std::vector<double>& ys, double t)
{
    if (t <= ts.front())
        return ys.front();
    if (t >= ts.back())
        return ys.back();
    const auto k = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin()) - 1;
    const double w = (t - ts[k]) / (ts[k + 1] - ts[k]);
    return (1.0 - w) * ys[k] + w * ys[k + 1];
}

} // namespace

double ShockCurve::position(double time) const
{
    if (t.empty())
        throw Error(ErrorCode::invalid_argument, "empty shock curve");
    if (time < t.front() - 1e-12 || time > t.back() + 1e-12)
        throw Error(ErrorCode::invalid_argument, "time outside the shock curve");
    if (t.size() == 1 || time <= t.front())
        return s.front();
    if (time >= t.back())
        return s.back();
    const auto k = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), time) - t.begin()) - 1;
    const double h = t[k + 1] - t[k];
    const double w = (time - t[k]) / h;
    const double h00 = (1.0 + 2.0 * w) * (1.0 - w) * (1.0 - w);
    const double h10 = w * (1.0 - w) * (1.0 - w);
    const double h01 = w * w * (3.0 - 2.0 * w);
    const double h11 = w * w * (w - 1.0);
    return h00 * s[k] + h10 * h * speed[k] + h01 * s[k + 1] + h11 * h * speed[k + 1];
}

double ShockCurve::speed_at(double time) const { return interp_linear(t, speed, time); }
double ShockCurve::state_minus(double time) const { return interp_linear(t, u_minus, time); }
double ShockCurve::state_plus(double time) const { return interp_linear(t, u_plus, time); }

std::vector<CharacteristicRoot> characteristic_roots(const InitialData& q, const FluxFunction& flux, double x,
                                                     double t, double t0)
{
    const double T = t - t0;
    if (T < 0.0)
        throw Error(ErrorCode::invalid_argument, "characteristics are traced forward from the initial time");
    if (T == 0.0)
        return {{x, q.value(x), false}};

    auto F = [&](double x0, Side side) { return x0 + flux.d1(q.value(x0, side)) * T - x; };

    double reach = 1.0;
    double lo = x - reach;
    double hi = x + reach;
    for (int k = 0; F(lo, Side::left) >= 0.0 || F(lo, Side::right) >= 0.0; ++k) {
        if (k > 60)
            throw Error(ErrorCode::no_convergence, "no left bracket for the characteristic foot");
        reach *= 2.0;
        lo = x - reach;
    }
    reach = 1.0;
    for (int k = 0; F(hi, Side::left) <= 0.0 || F(hi, Side::right) <= 0.0; ++k) {
        if (k > 60)
            throw Error(ErrorCode::no_convergence, "no right bracket for the characteristic foot");
        reach *= 2.0;
        hi = x + reach;
    }

    // A sign change of F at lo and hi does not exclude roots beyond a jump;
    // widen to the reach of the fastest characteristic nearby.
    {
        const double pad = hi - lo + 1.0;
        const auto [qmin, qmax] = q.range(lo - pad, hi + pad);
        double fastest = 0.0;
        for (int k = 0; k <= 32; ++k)
            fastest = std::max(fastest, std::abs(flux.d1(qmin + (qmax - qmin) * k / 32.0)));
        lo = std::min(lo, x - fastest * T - 0.5);
        hi = std::max(hi, x + fastest * T + 0.5);
    }

    std::vector<double> cuts{lo};
    for (double b : q.breakpoints())
        if (b > lo && b < hi)
            cuts.push_back(b);
    cuts.push_back(hi);

    std::vector<CharacteristicRoot> roots;
    for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        const double a = cuts[seg];
        const double b = cuts[seg + 1];
        // one-sided values at the segment ends so a jump never fakes a root
        auto f = [&](double x0) {
            if (x0 <= a)
                return F(a, Side::right);
            if (x0 >= b)
                return F(b, Side::left);
            return F(x0, Side::right);
        };
        double xp = a;
        double fp = f(a);
        if (fp == 0.0)
            roots.push_back({a, q.value(a, Side::right), false});
        for (int k = 1; k <= samples_per_segment; ++k) {
            const double xc = a + (b - a) * k / samples_per_segment;
            const double fc = f(xc);
            if (fc == 0.0) {
                roots.push_back({xc, q.value(xc, k == samples_per_segment ? Side::left : Side::right), false});
            } else if (fp != 0.0 && (fp < 0.0) != (fc < 0.0)) {
                const double r = bracketed_root(f, xp, xc, fp, fc);
                roots.push_back({r, q.value(r), false});
            }
            xp = xc;
            fp = fc;
        }
    }

    // rarefaction fans centred on expansive jumps
    for (std::size_t j = 1; j + 1 < cuts.size(); ++j) {
        const double xj = cuts[j];
        const double ul = q.value(xj, Side::left);
        const double ur = q.value(xj, Side::right);
        const double fl = F(xj, Side::left);
        const double fr = F(xj, Side::right);
        if (fl < 0.0 && fr > 0.0) {
            const double target = (x - xj) / T;
            auto g = [&](double u) { return flux.d1(u) - target; };
            const double u = bracketed_root(g, ul, ur, g(ul), g(ur));
            roots.push_back({xj, u, true});
        }
    }
    std::sort(roots.begin(), roots.end(), [](const auto& l, const auto& r) { return l.foot < r.foot; });
    return roots;
}

double characteristic_solution(const InitialData& q, const FluxFunction& flux, double x, double t, double t0)
{
    const auto roots = characteristic_roots(q, flux, x, t, t0);
    if (roots.empty())
        throw Error(ErrorCode::no_convergence, "no characteristic reaches the point");
    if (roots.size() > 1) {
        std::ostringstream os;
        os << roots.size() << " characteristics reach (" << x << ", " << t << "); the eps=0 solution has a shock";
        throw Error(ErrorCode::multivalued_region, os.str());
    }
    return roots.front().value;
}

SingularPoint catastrophe_point(const InitialData& q, const FluxFunction& flux, double t0)
{
    if (!q.breakpoints().empty())
        throw Error(ErrorCode::invalid_argument, "catastrophe_point needs smooth data");

    // slope of the characteristic speed, d/dx phi'(q(x))
    auto slope = [&](double x) { return flux.d2(q.value(x)) * q.derivative(x); };

    const double reach = 20.0 * q.feature_scale();
    constexpr int coarse = 10000;
    double best_x = -reach;
    double best = slope(best_x);
    for (int k = 1; k <= coarse; ++k) {
        const double x = -reach + 2.0 * reach * k / coarse;
        const double g = slope(x);
        if (g < best) {
            best = g;
            best_x = x;
        }
    }
    if (best >= -1e-14)
        throw Error(ErrorCode::no_catastrophe, "characteristic speeds never decrease; no gradient catastrophe");

    const double step = 2.0 * reach / coarse;
    const auto m = boost::math::tools::brent_find_minima(slope, best_x - step, best_x + step, 52);
    const double foot = m.first;
    const double g_min = m.second;

    // G''' = (d/dx)^2 of the slope, by Richardson-extrapolated central differences
    auto second = [&](double h) { return (slope(foot + h) - 2.0 * g_min + slope(foot - h)) / (h * h); };
    const double h = 2e-3 * q.feature_scale();
    const double third = (4.0 * second(0.5 * h) - second(h)) / 3.0;
    if (!(third > 0.0))
        throw Error(ErrorCode::no_catastrophe, "degenerate catastrophe: the speed slope has no quadratic minimum");

    const double T = -1.0 / g_min;
    SingularPoint p;
    p.kind = SingularKind::catastrophe;
    p.t_origin = t0;
    p.t_star = t0 + T;
    const double u_star = q.value(foot);
    p.x_star = foot + flux.d1(u_star) * T;
    p.states = {u_star, u_star};
    p.speeds = {flux.d1(u_star)};
    p.fold.foot = foot;
    p.fold.u_star = u_star;
    p.fold.speed = flux.d1(u_star);
    p.fold.min_slope = g_min;
    p.fold.third = third;
    p.fold.cubic = third * T * T * T * T / 6.0;
    p.fold.phi2 = flux.d2(u_star);
    return p;
}

std::vector<SingularPoint> jump_points(const InitialData& q, const FluxFunction& flux, double t0)
{
    std::vector<SingularPoint> out;
    for (double xj : q.breakpoints()) {
        const double ul = q.value(xj, Side::left);
        const double ur = q.value(xj, Side::right);
        if (!(flux.d1(ul) > flux.d1(ur)) || std::abs(ul - ur) < 1e-14)
            continue;
        SingularPoint p;
        p.kind = SingularKind::initial_jump;
        p.x_star = xj;
        p.t_star = t0;
        p.t_origin = t0;
        p.states = {ul, ur};
        p.speeds = {flux.chord_speed(ul, ur)};
        out.push_back(p);
    }
    return out;
}

ShockCurve track_shock(const InitialData& q, const FluxFunction& flux, const SingularPoint& birth, double t_end,
                       int steps)
{
    if (birth.kind != SingularKind::catastrophe && birth.kind != SingularKind::initial_jump &&
        birth.kind != SingularKind::collision && birth.kind != SingularKind::weak_to_shock)
        throw Error(ErrorCode::invalid_argument, "unknown shock birth");
    if (!(t_end > birth.t_star) || steps < 2)
        throw Error(ErrorCode::invalid_argument, "track_shock needs t_end after the birth and at least 2 steps");

    const double t0 = birth.t_origin;
    const bool from_jump = birth.kind == SingularKind::initial_jump;

    struct States {
        double minus;
        double plus;
    };
    auto states = [&](double s, double t) -> States {
        if (from_jump && t <= birth.t_star)
            return {birth.states.front(), birth.states.back()};
        auto roots = characteristic_roots(q, flux, s, t, t0);
        std::erase_if(roots, [](const CharacteristicRoot& r) { return r.fan; });
        if (roots.empty())
            throw Error(ErrorCode::no_convergence, "no characteristic reaches the shock");
        if (!from_jump)
            return {roots.front().value, roots.back().value};
        const double xj = birth.x_star;
        const CharacteristicRoot* left = nullptr;
        const CharacteristicRoot* right = nullptr;
        for (const auto& r : roots) {
            if (r.foot < xj)
                left = &r;
            else if (r.foot > xj && right == nullptr)
                right = &r;
        }
        if (left == nullptr || right == nullptr)
            throw Error(ErrorCode::states_collapsed, "no characteristic on one side of the shock at s=" + std::to_string(s) + ", t=" + std::to_string(t));
        return {left->value, right->value};
    };
    auto rh = [&](double s, double t) {
        const auto st = states(s, t);
        return flux.chord_speed(st.minus, st.plus);
    };

    ShockCurve c;
    c.birth_time = birth.t_star;
    c.t_origin = t0;
    const double h = (t_end - birth.t_star) / steps;
    double s = birth.x_star;
    for (int k = 0; k <= steps; ++k) {
        const double t = birth.t_star + k * h;
        const auto st = states(s, t);
        if (k > 0 && std::abs(st.minus - st.plus) < 1e-10) {
            std::ostringstream os;
            os << "shock states collapsed at t=" << t << " (u-=" << st.minus << ", u+=" << st.plus << ")";
            throw Error(ErrorCode::states_collapsed, os.str());
        }
        c.t.push_back(t);
        c.s.push_back(s);
        c.u_minus.push_back(st.minus);
        c.u_plus.push_back(st.plus);
        c.speed.push_back(flux.chord_speed(st.minus, st.plus));
        if (k == steps)
            break;
        const double k1 = c.speed.back();
        const double k2 = rh(s + 0.5 * h * k1, t + 0.5 * h);
        const double k3 = rh(s + 0.5 * h * k2, t + 0.5 * h);
        const double k4 = rh(s + h * k3, t + h);
        s += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    }
    return c;
}

SingularPoint detect_collision(const ShockCurve& s1, const ShockCurve& s2, const FluxFunction& flux)
{
    const double ta = std::max(s1.start(), s2.start());
    const double tb = std::min(s1.end(), s2.end());
    if (!(tb > ta))
        throw Error(ErrorCode::no_collision, "the shock curves share no time interval");

    auto gap = [&](double t) { return s2.position(t) - s1.position(t); };
    double t_star = std::numeric_limits<double>::quiet_NaN();
    double tp = ta;
    double gp = gap(ta);
    if (gp < 0.0)
        throw Error(ErrorCode::invalid_argument, "the first shock must start left of the second");
    if (gp == 0.0)
        t_star = ta;
    constexpr int probes = 4000;
    for (int k = 1; k <= probes && std::isnan(t_star); ++k) {
        const double tc = ta + (tb - ta) * k / probes;
        const double gc = gap(tc);
        if (gc == 0.0)
            t_star = tc;
        else if (gc < 0.0)
            t_star = bracketed_root(gap, tp, tc, gp, gc);
        tp = tc;
        gp = gc;
    }
    if (std::isnan(t_star))
        throw Error(ErrorCode::no_collision, "the shock curves do not meet");

    const double v1 = s1.speed_at(t_star);
    const double v2 = s2.speed_at(t_star);
    if (std::abs(v1 - v2) <= 1e-6)
        throw Error(ErrorCode::degenerate_merge, "shocks merge tangentially (|s1' - s2'| <= 1e-6)");

    SingularPoint p;
    p.kind = SingularKind::collision;
    p.t_star = t_star;
    p.t_origin = std::min(s1.t_origin, s2.t_origin);
    p.x_star = 0.5 * (s1.position(t_star) + s2.position(t_star));
    const double u1 = s1.state_minus(t_star);
    const double u3 = s2.state_plus(t_star);
    p.states = {u1, 0.5 * (s1.state_plus(t_star) + s2.state_minus(t_star)), u3};
    p.speeds = {v1, v2, flux.chord_speed(u1, u3)};
    return p;
}

} // namespace asymlab
