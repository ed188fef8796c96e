#include "crawlerlab/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crawler {

namespace {

double polish(double c2, double c1, double c0, double x) {
    for (int it = 0; it < 4; ++it) {
        const double f = ((x + c2) * x + c1) * x + c0;
        const double df = (3.0 * x + 2.0 * c2) * x + c1;
        if (df == 0.0) break;
        const double next = x - f / df;
        const double f_next = ((next + c2) * next + c1) * next + c0;
        if (!(std::abs(f_next) < std::abs(f))) break;
        x = next;
    }
    return x;
}

}  // namespace

std::complex<double> eval_monic_cubic(double c2, double c1, double c0, std::complex<double> x) {
    return ((x + c2) * x + c1) * x + c0;
}

CubicRoots solve_monic_cubic(double c2, double c1, double c0) {
    // Depressed form t^3 + p t + q with x = t - c2/3.
    const double shift = c2 / 3.0;
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    const double disc = 0.25 * q * q + p * p * p / 27.0;

    CubicRoots out;
    if (disc < 0.0) {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        std::array<double, 3> x{};
        for (int j = 0; j < 3; ++j) {
            x[j] = polish(c2, c1, c0, r * std::cos(phi - 2.0 * std::numbers::pi * j / 3.0) - shift);
        }
        std::sort(x.begin(), x.end());
        for (int j = 0; j < 3; ++j) out.roots[j] = x[j];
        out.real_count = 3;
        return out;
    }

    const double sq = std::sqrt(disc);
    const double big = -std::copysign(std::cbrt(std::abs(0.5 * q) + sq), q);
    const double t = big != 0.0 ? big - p / (3.0 * big) : 0.0;
    const double x0 = polish(c2, c1, c0, t - shift);

    // Deflate: x^2 + b1 x + b0.
    const double b1 = c2 + x0;
    const double b0 = c1 + x0 * b1;
    const double qd = 0.25 * b1 * b1 - b0;
    if (qd >= 0.0) {
        // Repeated real roots (disc == 0 up to rounding).
        const double s = std::sqrt(qd);
        std::array<double, 3> x{x0, polish(c2, c1, c0, -0.5 * b1 + s), polish(c2, c1, c0, -0.5 * b1 - s)};
        std::sort(x.begin(), x.end());
        for (int j = 0; j < 3; ++j) out.roots[j] = x[j];
        out.real_count = 3;
        return out;
    }
    const double im = std::sqrt(-qd);
    out.roots[0] = x0;
    out.roots[1] = {-0.5 * b1, im};
    out.roots[2] = {-0.5 * b1, -im};
    out.real_count = 1;
    return out;
}

}  // namespace crawler
