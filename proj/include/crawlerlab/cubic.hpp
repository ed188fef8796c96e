#pragma once

#include <array>
#include <complex>

namespace crawler {

struct CubicRoots {
    // Real roots first (ascending), then a conjugate pair with positive
    // imaginary part first when only one real root exists.
    std::array<std::complex<double>, 3> roots;
    int real_count = 0;
};

// Roots of x^3 + c2 x^2 + c1 x + c0. Trigonometric form with three real roots,
// Cardano otherwise, followed by Newton polishing of the real roots.
CubicRoots solve_monic_cubic(double c2, double c1, double c0);

std::complex<double> eval_monic_cubic(double c2, double c1, double c0, std::complex<double> x);

}  // namespace crawler
