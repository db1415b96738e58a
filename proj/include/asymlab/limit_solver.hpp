#pragma once

// The eps = 0 problem: characteristics, the gradient catastrophe, shock
// tracking by the Rankine-Hugoniot condition and shock collisions.

#include <vector>

#include "asymlab/flux_core.hpp"

namespace asymlab {

enum class SingularKind { initial_jump, catastrophe, collision, weak_to_shock };

const char* singular_kind_name(SingularKind kind) noexcept;

// Local data of the critical characteristic at a catastrophe. With G = phi'(q),
// g_min = min G' < 0 at the foot x0, T = t* - t0 and G3 = G'''(x0), the
// characteristic map near (x*, t*) reads, to leading order,
//   x - x* - G(x0)(t - t*) = (t - t*) V - cubic V^3,   cubic = G3 T^4 / 6,
// where V = phi'(u) - phi'(u*) is the speed offset.
struct FoldData {
    double foot = 0.0;        // x0
    double u_star = 0.0;      // q(x0)
    double speed = 0.0;       // phi'(u*)
    double min_slope = 0.0;   // g_min
    double third = 0.0;       // G3
    double cubic = 0.0;       // G3 T^4 / 6
    double phi2 = 1.0;        // phi''(u*)
};

struct SingularPoint {
    SingularKind kind = SingularKind::catastrophe;
    double x_star = 0.0;
    double t_star = 0.0;
    double t_origin = 0.0;       // time at which the data is posed
    std::vector<double> states;  // one-sided states, left to right
    std::vector<double> speeds;  // shock speeds at t_star, left to right
    FoldData fold;               // catastrophe only
};

struct ShockCurve {
    std::vector<double> t;
    std::vector<double> s;
    std::vector<double> u_minus;
    std::vector<double> u_plus;
    std::vector<double> speed;  // Rankine-Hugoniot speed at each sample
    double birth_time = 0.0;
    double t_origin = 0.0;  // time of the data the states were traced from

    double start() const { return t.front(); }
    double end() const { return t.back(); }
    // Cubic Hermite interpolation between samples using the stored speeds.
    double position(double time) const;
    double speed_at(double time) const;
    double state_minus(double time) const;
    double state_plus(double time) const;

    // A curve from closed-form s(t), s'(t) sampled at n+1 uniform times.
    template <class S, class V>
    static ShockCurve sampled(S&& s, V&& v, double t_begin, double t_end, int n)
    {
        ShockCurve c;
        c.birth_time = t_begin;
        c.t_origin = t_begin;
        for (int k = 0; k <= n; ++k) {
            const double tk = t_begin + (t_end - t_begin) * k / n;
            c.t.push_back(tk);
            c.s.push_back(s(tk));
            c.speed.push_back(v(tk));
            c.u_minus.push_back(0.0);
            c.u_plus.push_back(0.0);
        }
        return c;
    }
};

// A characteristic foot x0 reaching (x, t) and the value it carries. Rarefaction
// fans from jumps are reported with fan = true and foot at the jump.
struct CharacteristicRoot {
    double foot = 0.0;
    double value = 0.0;
    bool fan = false;
};

// Every characteristic through (x, t), ordered by foot.
std::vector<CharacteristicRoot> characteristic_roots(const InitialData& q, const FluxFunction& flux, double x,
                                                     double t, double t0 = 0.0);

// The single-valued eps = 0 solution; MultivaluedRegion when characteristics cross.
double characteristic_solution(const InitialData& q, const FluxFunction& flux, double x, double t, double t0 = 0.0);

// First breaking of a smooth solution; NoCatastrophe for expansive data.
SingularPoint catastrophe_point(const InitialData& q, const FluxFunction& flux, double t0 = 0.0);

// The jumps of piecewise data as shock births; entropy-violating jumps are skipped.
std::vector<SingularPoint> jump_points(const InitialData& q, const FluxFunction& flux, double t0 = 0.0);

// Fourth-order Runge-Kutta on s' = RH speed, with states from the outermost
// (catastrophe) or jump-adjacent (initial jump) characteristics.
ShockCurve track_shock(const InitialData& q, const FluxFunction& flux, const SingularPoint& birth, double t_end,
                       int steps = 400);

// First crossing of s1 (left) and s2 (right). The flux gives the speed of the merged shock.
SingularPoint detect_collision(const ShockCurve& s1, const ShockCurve& s2, const FluxFunction& flux);

} // namespace asymlab
