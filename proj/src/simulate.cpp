#include "crawlerlab/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <utility>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "crawlerlab/equilibria.hpp"
#include "crawlerlab/errors.hpp"
#include "crawlerlab/gsp.hpp"

namespace odeint = boost::numeric::odeint;

namespace crawler {

const char* method_name(IntegratorMethod m) {
    switch (m) {
        case IntegratorMethod::Auto: return "auto";
        case IntegratorMethod::Explicit: return "explicit";
        case IntegratorMethod::Implicit: return "implicit";
    }
    return "auto";
}

namespace {

inline constexpr double kMinStep = 1e-14;

using ArrayState = std::array<double, 5>;

AugmentedState to_eigen(const ArrayState& y) { return Eigen::Map<const AugmentedState>(y.data()); }

const AugmentedState& to_eigen(const AugmentedState& y) { return y; }

class Recorder {
public:
    Recorder(Trajectory& traj, double sample_dt) : traj_(traj), sample_dt_(sample_dt) {}

    void operator()(double t, const AugmentedState& y, bool force = false) {
        if (force || traj_.times.empty() || t - traj_.times.back() >= sample_dt_) {
            traj_.times.push_back(t);
            traj_.states.push_back(y);
        }
    }

private:
    Trajectory& traj_;
    double sample_dt_;
};

template <class Stepper, class System, class StateT>
void step_loop(Stepper& stepper, System system, StateT y, double t_end, const IntegratorOptions& opts,
               Trajectory& traj) {
    Recorder record(traj, opts.sample_dt);
    double t = 0.0;
    double dt = opts.initial_dt;
    record(t, to_eigen(y), true);
    while (t < t_end) {
        const bool last = dt >= t_end - t;
        if (last) dt = t_end - t;
        const double t_before = t;
        if (stepper.try_step(system, y, t, dt) == odeint::success) {
            ++traj.stats.steps;
            record(t, to_eigen(y), last || t >= t_end);
            if (last) t = t_end;
        } else {
            ++traj.stats.rejections;
            if (dt < kMinStep * std::max(1.0, std::abs(t_before))) {
                throw StiffnessFailure("step size underflow at t = " + std::to_string(t_before) +
                                       "; retry with the implicit method");
            }
        }
        if (traj.stats.steps + traj.stats.rejections > opts.max_steps) {
            throw StiffnessFailure("step budget exhausted at t = " + std::to_string(t) +
                                   "; retry with the implicit method");
        }
    }
    if (traj.times.back() < t_end) record(t_end, to_eigen(y), true);
}

Trajectory integrate_explicit(const AugmentedState& y0, const Groups& g, double t_end,
                              const IntegratorOptions& opts) {
    Trajectory traj;
    traj.stats.tol = opts.tol;
    traj.stats.method_used = IntegratorMethod::Explicit;
    auto stepper = odeint::make_controlled(opts.tol.abs, opts.tol.rel, odeint::runge_kutta_dopri5<ArrayState>());
    auto system = [&g](const ArrayState& y, ArrayState& dy, double) {
        const AugmentedState d = augmented_vector_field(to_eigen(y), g);
        std::copy(d.data(), d.data() + 5, dy.begin());
    };
    ArrayState y;
    std::copy(y0.data(), y0.data() + 5, y.begin());
    step_loop(stepper, system, y, t_end, opts, traj);
    return traj;
}

// Implicit trapezoidal rule with damped Newton. The local error is estimated
// from the gap to the backward-Euler value, which is conservative.
class TrapezoidalStepper {
public:
    TrapezoidalStepper(const Groups& g, Tolerance tol) : g_(g), tol_(tol) {}

    bool try_step(AugmentedState& y, double& t, double& dt) {
        const AugmentedState f0 = augmented_vector_field(y, g_);
        AugmentedState z = y + dt * f0;
        bool converged = false;
        for (int it = 0; it < 12; ++it) {
            const AugmentedState res = z - y - 0.5 * dt * (f0 + augmented_vector_field(z, g_));
            Eigen::Matrix<double, 5, 5> A = Eigen::Matrix<double, 5, 5>::Identity();
            A.topLeftCorner<4, 4>() -= 0.5 * dt * jacobian(z.head<4>(), g_);
            A(kUcom, kVcom) -= 0.5 * dt;
            const AugmentedState delta = A.partialPivLu().solve(res);
            double lambda = 1.0;
            const double r0 = res.norm();
            AugmentedState trial = z - delta;
            for (int k = 0; k < 8; ++k) {
                const AugmentedState r = trial - y - 0.5 * dt * (f0 + augmented_vector_field(trial, g_));
                if (r.norm() < r0 || k == 7) break;
                lambda *= 0.5;
                trial = z - lambda * delta;
            }
            z = trial;
            if (delta.lpNorm<Eigen::Infinity>() <= 1e-3 * (tol_.abs + tol_.rel * z.lpNorm<Eigen::Infinity>())) {
                converged = true;
                break;
            }
        }
        double err = INFINITY;
        if (converged && z.allFinite()) {
            const AugmentedState gap = 0.5 * dt * (augmented_vector_field(z, g_) - f0);
            err = 0.0;
            for (int i = 0; i < 5; ++i) {
                err = std::max(err, std::abs(gap[i]) / (tol_.abs + tol_.rel * std::max(std::abs(y[i]), std::abs(z[i]))));
            }
        }
        if (err <= 1.0) {
            y = z;
            t += dt;
            dt *= std::min(5.0, 0.9 / std::sqrt(std::max(err, 1e-10)));
            return true;
        }
        dt *= std::isfinite(err) ? std::max(0.2, 0.9 / std::sqrt(err)) : 0.25;
        return false;
    }

private:
    const Groups& g_;
    Tolerance tol_;
};

Trajectory integrate_implicit(const AugmentedState& y0, const Groups& g, double t_end,
                              const IntegratorOptions& opts) {
    Trajectory traj;
    traj.stats.tol = opts.tol;
    traj.stats.method_used = IntegratorMethod::Implicit;
    TrapezoidalStepper stepper(g, opts.tol);
    struct Adapter {
        TrapezoidalStepper& s;
        odeint::controlled_step_result try_step(int, AugmentedState& y, double& t, double& dt) {
            return s.try_step(y, t, dt) ? odeint::success : odeint::fail;
        }
    } adapter{stepper};
    step_loop(adapter, 0, y0, t_end, opts, traj);
    return traj;
}

double hermite(double y0, double y1, double d0, double d1, double h, double theta) {
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + theta) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
           (t3 - t2) * h * d1;
}

}  // namespace

Trajectory integrate(const State& x0, const Groups& g, double t_end, const IntegratorOptions& opts) {
    if (!(t_end > 0.0)) throw InvalidParameter("t_end must be > 0");
    if (!(opts.tol.abs > 0.0) || !(opts.tol.rel > 0.0)) throw InvalidParameter("tolerances must be > 0");
    validate(g);
    AugmentedState y0;
    y0.head<4>() = x0;
    y0[kUcom] = 0.0;
    switch (opts.method) {
        case IntegratorMethod::Explicit: return integrate_explicit(y0, g, t_end, opts);
        case IntegratorMethod::Implicit: return integrate_implicit(y0, g, t_end, opts);
        case IntegratorMethod::Auto:
            try {
                return integrate_explicit(y0, g, t_end, opts);
            } catch (const StiffnessFailure&) {
                return integrate_implicit(y0, g, t_end, opts);
            }
    }
    return integrate_explicit(y0, g, t_end, opts);
}

std::vector<double> strain_upcrossings(const Trajectory& traj, double skip) {
    std::vector<double> events;
    if (traj.times.empty()) return events;
    const double t_min = traj.times.front() + skip;
    for (std::size_t i = 0; i + 1 < traj.times.size(); ++i) {
        if (traj.times[i] < t_min) continue;
        const auto& a = traj.states[i];
        const auto& b = traj.states[i + 1];
        if (!(a[kS] < 0.0 && b[kS] >= 0.0)) continue;
        const double h = traj.times[i + 1] - traj.times[i];
        auto s_at = [&](double th) { return hermite(a[kS], b[kS], a[kVs], b[kVs], h, th); };
        double lo = 0.0;
        double hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (s_at(mid) < 0.0 ? lo : hi) = mid;
        }
        const double th = 0.5 * (lo + hi);
        const double v_s = (1.0 - th) * a[kVs] + th * b[kVs];
        if (v_s > 0.0) events.push_back(traj.times[i] + th * h);
    }
    return events;
}

CycleMetrics cycle_metrics(const Trajectory& traj, double skip) {
    const auto events = strain_upcrossings(traj, skip);
    if (events.size() < 5) {
        throw NoCycle("found " + std::to_string(events.size()) + " strain up-crossings after the transient; need 5");
    }
    CycleMetrics m;
    m.events = events.size();
    m.cycles = events.size() - 1;
    std::vector<double> gaps(m.cycles);
    for (std::size_t i = 0; i < m.cycles; ++i) gaps[i] = events[i + 1] - events[i];
    m.period = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
    double var = 0.0;
    for (double gp : gaps) var += (gp - m.period) * (gp - m.period);
    m.period_std = std::sqrt(var / static_cast<double>(gaps.size()));
    m.omega = 2.0 * M_PI / m.period;
    m.converged = m.period_std / m.period < 1e-3;

    const double t0 = events.front();
    const double t1 = events.back();
    double s_min = INFINITY, s_max = -INFINITY;
    m.V_min = INFINITY;
    m.V_max = -INFINITY;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.times[i] < t0 || traj.times[i] > t1) continue;
        const auto& y = traj.states[i];
        s_min = std::min(s_min, y[kS]);
        s_max = std::max(s_max, y[kS]);
        m.V_min = std::min(m.V_min, y[kV]);
        m.V_max = std::max(m.V_max, y[kV]);
    }
    m.S_amp = 0.5 * (s_max - s_min);

    auto u_com_at = [&](double t) {
        const auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
        const std::size_t j = static_cast<std::size_t>(std::distance(traj.times.begin(), it));
        const std::size_t i = j == 0 ? 0 : std::min(j - 1, traj.times.size() - 2);
        const double h = traj.times[i + 1] - traj.times[i];
        const auto& a = traj.states[i];
        const auto& b = traj.states[i + 1];
        return hermite(a[kUcom], b[kUcom], a[kVcom], b[kVcom], h, (t - traj.times[i]) / h);
    };
    m.v_com_bar = (u_com_at(t1) - u_com_at(t0)) / (t1 - t0);
    return m;
}

State fast_layer_settle(const State& x0, const Groups& g) {
    const double pc = g.pi_c_eps();
    const double pl = g.pi_l_eps();
    const double ps = g.pi_s_eps();
    const double s = x0[kS];
    auto rate = [&](double V) { return -pc * V * V * V + pl * V - ps * s; };

    using Scalar1 = std::array<double, 1>;
    auto stepper = odeint::make_controlled(1e-14, 1e-12, odeint::runge_kutta_dopri5<Scalar1>());
    auto system = [&](const Scalar1& y, Scalar1& dy, double) { dy[0] = rate(y[0]); };
    Scalar1 y{x0[kV]};
    double t = 0.0;
    double dt = 1e-3;
    constexpr std::size_t kBudget = 1'000'000;
    std::size_t n = 0;
    while (std::abs(rate(y[0])) >= 1e-10) {
        if (++n > kBudget || !std::isfinite(y[0])) throw LayerFailure("layer problem did not settle within the step budget");
        stepper.try_step(system, y, t, dt);
        dt = std::min(dt, 1e3);
    }
    State out = x0;
    out[kV] = y[0];
    if (std::abs(critical_manifold_residual(out[kV], s, g)) >= 1e-8 || !(layer_slope(out[kV], g) < 0.0)) {
        throw LayerFailure("layer problem settled on a non-attracting point; initial V lies on the basin boundary");
    }
    return out;
}

}  // namespace crawler
