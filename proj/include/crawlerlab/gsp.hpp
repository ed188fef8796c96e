#pragma once

#include <array>
#include <complex>
#include <vector>

#include "crawlerlab/params.hpp"

namespace crawler {

enum class BranchStability { Attracting, Repelling, Fold };
enum class FoldedClass { FoldedSaddle, NonSaddle, Degenerate };

struct ManifoldPoint {
    double V = 0.0;
    BranchStability stability = BranchStability::Repelling;
};

struct FoldData {
    double V_F_plus = 0.0;
    double V_F_minus = 0.0;
    double s_F_plus = 0.0;
    double s_F_minus = 0.0;
    std::array<std::complex<double>, 3> sing_eigs{};
    FoldedClass classification = FoldedClass::Degenerate;
};

const char* branch_name(BranchStability b);
const char* folded_class_name(FoldedClass c);

double critical_manifold_residual(double V, double s, const Groups& g);
// Slope of the layer vector field in V; negative on attracting branches.
double layer_slope(double V, const Groups& g);

// Real roots of the critical-manifold cubic at strain s, ascending.
std::vector<ManifoldPoint> manifold_branches(double s, const Groups& g);

struct FoldedClassification {
    FoldedClass classification = FoldedClass::Degenerate;
    std::array<std::complex<double>, 3> eigenvalues{};
};

FoldedClassification classify_folded_singularity(const Groups& g);
FoldData folds(const Groups& g);

}  // namespace crawler
