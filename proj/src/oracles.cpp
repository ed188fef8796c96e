#include "crawlerlab/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "crawlerlab/bifurcation.hpp"
#include "crawlerlab/errors.hpp"

namespace crawler::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 10-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGLNodes{0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                         0.8650633666889845, 0.9739065285171717};
constexpr std::array<double, 5> kGLWeights{0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                           0.1494513491505806, 0.0666713443086881};

// Composite rule over `panels` equal sub-intervals.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels = 8) {
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        const double half = 0.5 * width;
        double sum = 0.0;
        for (std::size_t i = 0; i < kGLNodes.size(); ++i) {
            sum += kGLWeights[i] * (f(mid + half * kGLNodes[i]) + f(mid - half * kGLNodes[i]));
        }
        total += half * sum;
    }
    return total;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    const bool lo_negative = f(lo) < 0.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) < 0.0) == lo_negative ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Fourier coefficients over [0, 2 pi) of a piecewise-constant output given by
// `level` between consecutive breakpoints.
struct Harmonics {
    double a0;
    double sin1;
    double cos1;
};

Harmonics piecewise_fourier(std::vector<double> breaks, const std::function<double(double)>& level) {
    breaks.push_back(0.0);
    breaks.push_back(kTwoPi);
    std::sort(breaks.begin(), breaks.end());
    Harmonics h{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i];
        const double b = breaks[i + 1];
        if (b <= a) continue;
        const double y = level(0.5 * (a + b));
        h.a0 += y * (b - a) / std::numbers::pi;
        h.sin1 += y * gauss_legendre([](double th) { return std::sin(th); }, a, b) / std::numbers::pi;
        h.cos1 += y * gauss_legendre([](double th) { return std::cos(th); }, a, b) / std::numbers::pi;
    }
    return h;
}

double central(const std::function<double(double)>& f, double h) { return (f(h) - f(-h)) / (2.0 * h); }

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Jacobian4& J) {
    Eigen::EigenSolver<Jacobian4> es(J, false);
    const auto ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<std::complex<double>> cubic_roots_companion(double c2, double c1, double c0) {
    Eigen::Matrix3d C;
    C << -c2, -c1, -c0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
    Eigen::EigenSolver<Eigen::Matrix3d> es(C, false);
    const auto ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double max_real_part_at_symmetric_fp(const Groups& g, double pi_s) {
    const auto cubic = char_cubic_at_symmetric_fp(g, pi_s);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& r : cubic_roots_companion(cubic.c2, cubic.c1, cubic.c0)) best = std::max(best, r.real());
    return best;
}

double hopf_gain_bisection(const Groups& g, double tol) {
    double lo = 1e-6;
    double hi = g.pi_l / (2.0 * g.pi_V) - 1e-6;
    auto f = [&](double pi_s) { return max_real_part_at_symmetric_fp(g, pi_s); };
    if (!(f(lo) < 0.0 && f(hi) > 0.0)) throw Degenerate("no eigenvalue crossing inside the bisection bracket");
    for (int it = 0; it < 300 && hi - lo > tol * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double transversality_fd(const Groups& g, double pi_s_H) {
    auto crossing_re = [&](double pi_s) {
        const auto cubic = char_cubic_at_symmetric_fp(g, pi_s);
        const auto roots = cubic_roots_companion(cubic.c2, cubic.c1, cubic.c0);
        const auto it = std::max_element(roots.begin(), roots.end(),
                                         [](auto a, auto b) { return a.imag() < b.imag(); });
        return it->real();
    };
    const double h = 1e-5 * pi_s_H;
    return central([&](double d) { return crossing_re(pi_s_H + d); }, h) / g.pi_V;
}

Jacobian4 jacobian_fd(const State& x, const Groups& g) {
    Jacobian4 J;
    for (int j = 0; j < 4; ++j) {
        // Velocity columns resolve the friction boundary layer of width 1 / pi_eps.
        const bool velocity = (j == kVcom || j == kVs);
        const double h = 1e-3 * (velocity ? 1.0 / std::max(1.0, g.pi_eps) : std::max(1.0, std::abs(x[j])));
        auto column = [&](double step) {
            State xp = x, xm = x;
            xp[j] += step;
            xm[j] -= step;
            return State((vector_field(xp, g) - vector_field(xm, g)) / (2.0 * step));
        };
        J.col(j) = (4.0 * column(0.5 * h) - column(h)) / 3.0;
    }
    return J;
}

State d2f_fd(const State& x, const Groups& g, const State& v1, const State& v2) {
    auto f = [&](double a, double b) { return vector_field(x + a * v1 + b * v2, g); };
    auto stencil = [&](double h) { return State((f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h)); };
    const double h = 1e-3 * std::max(1.0, x.norm());
    return (4.0 * stencil(0.5 * h) - stencil(h)) / 3.0;
}

State d3f_fd(const State& x, const Groups& g, const State& v1, const State& v2, const State& v3) {
    auto stencil = [&](double h) {
        State sum = State::Zero();
        for (int a : {-1, 1}) {
            for (int b : {-1, 1}) {
                for (int c : {-1, 1}) {
                    sum += (a * b * c) * vector_field(x + h * (a * v1 + b * v2 + c * v3), g);
                }
            }
        }
        return State(sum / (8.0 * h * h * h));
    };
    const double h = 4e-3 * std::max(1.0, x.norm());
    return (4.0 * stencil(0.5 * h) - stencil(h)) / 3.0;
}

double sigma_derivative_fd(double u, const Groups& g, int order) {
    auto s = [&](double v) { return sigma_pi(v, g.pi_eps, g.n_f); };
    auto stencil = [&](double h) {
        switch (order) {
            case 1: return (s(u + h) - s(u - h)) / (2.0 * h);
            case 2: return (s(u + h) - 2.0 * s(u) + s(u - h)) / (h * h);
            case 3: return (s(u + 2 * h) - 2.0 * s(u + h) + 2.0 * s(u - h) - s(u - 2 * h)) / (2.0 * h * h * h);
            default: throw InvalidParameter("derivative order must be 1, 2 or 3");
        }
    };
    // One Richardson step removes the leading h^2 term of each central stencil.
    const double h = (order == 1 ? 1e-3 : 1e-2) / g.pi_eps;
    return (4.0 * stencil(0.5 * h) - stencil(h)) / 3.0;
}

VoltageHarmonics relay_voltage_fourier(double S, const RelaySpec& r, int samples) {
    // Input s = S sin(theta). The relay state at theta = 0 follows from the
    // last threshold crossed during the previous period.
    auto up = [&](double th) { return S * std::sin(th) - r.beta; };
    auto down = [&](double th) { return S * std::sin(th) + r.beta; };
    std::vector<double> on_falling;  // relay goes to -M
    std::vector<double> on_rising;   // relay goes to +M
    const double step = kTwoPi / samples;
    for (int i = 0; i < samples; ++i) {
        const double a = i * step;
        const double b = a + step;
        if (up(a) < 0.0 && up(b) >= 0.0) on_falling.push_back(bisect(up, a, b));
        if (down(a) > 0.0 && down(b) <= 0.0) on_rising.push_back(bisect(down, a, b));
    }
    if (on_falling.empty() || on_rising.empty()) throw NoSwitching("relay input never crosses both thresholds");
    std::vector<std::pair<double, double>> switches;
    for (double th : on_falling) switches.emplace_back(th, -r.M);
    for (double th : on_rising) switches.emplace_back(th, r.M);
    std::sort(switches.begin(), switches.end());
    const double initial = switches.back().second;
    auto level = [&](double th) {
        double y = initial;
        for (const auto& [at, value] : switches) {
            if (at <= th) y = value;
        }
        return y;
    };
    std::vector<double> breaks;
    for (const auto& sw : switches) breaks.push_back(sw.first);
    const auto h = piecewise_fourier(breaks, level);
    return {0.5 * h.a0, h.sin1, h.cos1};
}

FrictionHarmonics friction_relay_fourier(double a, double Delta, double phi, int samples) {
    auto speed = [&](double th) { return a + std::cos(th + phi); };
    std::vector<double> breaks;
    const double step = kTwoPi / samples;
    for (int i = 0; i < samples; ++i) {
        const double lo = i * step;
        const double hi = lo + step;
        if ((speed(lo) < 0.0) != (speed(hi) < 0.0)) breaks.push_back(bisect(speed, lo, hi));
    }
    auto level = [&](double th) { return speed(th) > 0.0 ? Delta : -1.0; };
    const auto h = piecewise_fourier(breaks, level);
    return {h.a0, h.sin1, h.cos1};
}

double g_root_newton(double Z, const AlphaEta& ae, double zeta) {
    const double drive = ae.alpha * Z - ae.eta;
    double S = std::abs(drive) / (2.0 * zeta) + ae.alpha;
    for (int it = 0; it < 100; ++it) {
        const double gval = g_residual(S, Z, ae, zeta);
        const double dg = 1.0 + drive * drive / (4.0 * zeta * zeta * S * S);
        const double next = S - gval / dg;
        if (next <= 0.0) {
            S *= 0.5;
            continue;
        }
        if (std::abs(next - S) <= 1e-15 * S) return next;
        S = next;
    }
    return S;
}

}  // namespace crawler::oracle
