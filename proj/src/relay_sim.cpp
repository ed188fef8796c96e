#include "crawlerlab/relay_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "crawlerlab/dynamics.hpp"
#include "crawlerlab/errors.hpp"

namespace odeint = boost::numeric::odeint;

namespace crawler {

namespace {

// Segment positions and speeds (u1, u1', u2, u2').
using SegState = std::array<double, 4>;
enum SegIndex { kU1 = 0, kW1 = 1, kU2 = 2, kW2 = 3 };

enum class Slip { Forward, Backward, Stuck };

constexpr double kRestSpeed = 1e-12;

struct Mode {
    double V = 0.0;  // relay output
    std::array<Slip, 2> seg{Slip::Stuck, Slip::Stuck};
};

class RelayLoop {
public:
    RelayLoop(const Groups& g, const RelaySpec& r)
        : g_(g), r_(r), Delta_(friction_forward_limit(g.n_f)) {}

    double coupling(const SegState& x, const Mode& m) const {
        const double s = x[kU2] - x[kU1];
        const double v_s = x[kW2] - x[kW1];
        return 0.5 * (s + 2.0 * g_.zeta * v_s - 2.0 * g_.pi_V * m.V);
    }

    // Force on each segment is +F for the rear and -F for the front.
    double accel(int seg, Slip slip, double F) const {
        const double drive = seg == 0 ? F : -F;
        switch (slip) {
            case Slip::Forward: return drive - g_.pi_f * Delta_;
            case Slip::Backward: return drive + g_.pi_f;
            case Slip::Stuck: return 0.0;
        }
        return 0.0;
    }

    Slip mode_from_rest(int seg, double F) const {
        if (accel(seg, Slip::Forward, F) > 0.0) return Slip::Forward;
        if (accel(seg, Slip::Backward, F) < 0.0) return Slip::Backward;
        return Slip::Stuck;
    }

    void rhs(const SegState& x, SegState& dx, const Mode& m) const {
        const double F = coupling(x, m);
        dx[kU1] = m.seg[0] == Slip::Stuck ? 0.0 : x[kW1];
        dx[kW1] = accel(0, m.seg[0], F);
        dx[kU2] = m.seg[1] == Slip::Stuck ? 0.0 : x[kW2];
        dx[kW2] = accel(1, m.seg[1], F);
    }

    // Event functions; an event fires when a value goes from <= 0 to > 0.
    static constexpr int kEvents = 5;
    std::array<double, kEvents> events(const SegState& x, const Mode& m) const {
        std::array<double, kEvents> e{};
        const double s = x[kU2] - x[kU1];
        e[0] = m.V > 0.0 ? s - r_.beta : -(s + r_.beta);
        const double F = coupling(x, m);
        for (int seg = 0; seg < 2; ++seg) {
            const double w = seg == 0 ? x[kW1] : x[kW2];
            double a = -1.0;
            double b = -1.0;
            switch (m.seg[seg]) {
                case Slip::Forward: a = -w; break;
                case Slip::Backward: a = w; break;
                case Slip::Stuck:
                    a = accel(seg, Slip::Forward, F);
                    b = -accel(seg, Slip::Backward, F);
                    break;
            }
            e[1 + 2 * seg] = a;
            e[2 + 2 * seg] = b;
        }
        return e;
    }

    void apply(int event, SegState& x, Mode& m, std::size_t& switches, std::size_t& sticks) const {
        std::array<bool, 2> at_rest{m.seg[0] == Slip::Stuck, m.seg[1] == Slip::Stuck};
        if (event == 0) {
            m.V = -m.V;
            ++switches;
        } else if (event > 0) {
            at_rest[(event - 1) / 2] = true;
        }
        // A segment whose speed reached zero at the same instant is also at rest.
        for (int seg = 0; seg < 2; ++seg) {
            const double w = x[seg == 0 ? kW1 : kW2];
            if (m.seg[seg] == Slip::Forward && w <= kRestSpeed) at_rest[seg] = true;
            if (m.seg[seg] == Slip::Backward && w >= -kRestSpeed) at_rest[seg] = true;
        }
        // Segments at rest pick their mode from the current force.
        for (int seg = 0; seg < 2; ++seg) {
            if (!at_rest[seg]) continue;
            const int w_index = seg == 0 ? kW1 : kW2;
            x[w_index] = 0.0;
            const Slip next = mode_from_rest(seg, coupling(x, m));
            if (next == Slip::Stuck && m.seg[seg] != Slip::Stuck) ++sticks;
            m.seg[seg] = next;
        }
    }

private:
    const Groups& g_;
    RelaySpec r_;
    double Delta_;
};

}  // namespace

RelaySimResult simulate_relay_loop(const Groups& g, const RelaySpec& r, const RelaySimOptions& opts) {
    if (!(r.M > 0.0 && r.beta > 0.0)) throw InvalidParameter("relay M and beta must be > 0");
    if (!(opts.t_end > opts.transient)) throw InvalidParameter("t_end must exceed the transient");
    const RelayLoop loop(g, r);

    SegState x{0.0, 0.0, 0.0, 0.0};
    Mode mode;
    mode.V = r.M;
    std::size_t switches = 0;
    std::size_t sticks = 0;
    loop.apply(-1, x, mode, switches, sticks);

    auto stepper = odeint::make_dense_output(opts.abs_tol, opts.rel_tol, odeint::runge_kutta_dopri5<SegState>());
    auto system = [&](const SegState& y, SegState& dy, double) { loop.rhs(y, dy, mode); };

    std::vector<double> falling_switches;  // times of +M -> -M switches
    std::vector<double> u_com_at_switch;
    double s_min = std::numeric_limits<double>::infinity();
    double s_max = -s_min;
    double next_sample = opts.transient;

    double t = 0.0;
    stepper.initialize(x, t, 1e-4);
    std::size_t guard = 0;
    while (t < opts.t_end) {
        if (++guard > 50'000'000) throw NoCycle("relay simulation exceeded its step budget");
        const auto [t0, t1] = stepper.do_step(system);
        SegState x0;
        stepper.calc_state(t0, x0);
        const auto e0 = loop.events(x0, mode);
        const auto e1 = loop.events(stepper.current_state(), mode);

        double t_event = std::numeric_limits<double>::infinity();
        int which = -1;
        for (int k = 0; k < RelayLoop::kEvents; ++k) {
            if (!(e0[k] <= 0.0 && e1[k] > 0.0)) continue;
            double lo = t0;
            double hi = t1;
            SegState xm;
            for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                stepper.calc_state(mid, xm);
                (loop.events(xm, mode)[k] > 0.0 ? hi : lo) = mid;
            }
            if (hi < t_event) {
                t_event = hi;
                which = k;
            }
        }
        const double t_stop = std::min({t_event, t1, opts.t_end});

        SegState xs;
        for (; next_sample <= t_stop; next_sample += opts.sample_dt) {
            stepper.calc_state(next_sample, xs);
            const double s = xs[kU2] - xs[kU1];
            s_min = std::min(s_min, s);
            s_max = std::max(s_max, s);
        }

        if (which >= 0 && t_event <= opts.t_end) {
            stepper.calc_state(t_event, x);
            const bool falling = which == 0 && mode.V > 0.0;
            loop.apply(which, x, mode, switches, sticks);
            if (falling && t_event >= opts.transient) {
                falling_switches.push_back(t_event);
                u_com_at_switch.push_back(0.5 * (x[kU1] + x[kU2]));
            }
            t = t_event;
            stepper.initialize(x, t, std::max(stepper.current_time_step(), 1e-8));
        } else {
            t = t1;
            x = stepper.current_state();
        }
    }

    RelaySimResult out;
    out.switches = switches;
    out.stick_events = sticks;
    out.switching = falling_switches.size() >= 3;
    if (!out.switching) return out;
    const std::size_t n = falling_switches.size();
    out.period = (falling_switches.back() - falling_switches.front()) / static_cast<double>(n - 1);
    out.omega = 2.0 * std::numbers::pi / out.period;
    out.S_amp = 0.5 * (s_max - s_min);
    out.v_com_bar = (u_com_at_switch.back() - u_com_at_switch.front()) /
                    (falling_switches.back() - falling_switches.front());
    return out;
}

HBComparison hb_vs_simulation(const Groups& g, const RelaySpec& r, const RelaySimOptions& opts) {
    HBComparison out;
    out.hb = solve_balance(r, g);
    out.sim = simulate_relay_loop(g, r, opts);
    if (!out.sim.switching) throw NoSwitching("relay never switches in the time-domain simulation");
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    out.dev_omega = rel(out.sim.omega, out.hb.omega);
    out.dev_S = rel(out.sim.S_amp, out.hb.S);
    out.dev_v_com_bar = rel(out.sim.v_com_bar, out.hb.v_com_bar);
    return out;
}

}  // namespace crawler
