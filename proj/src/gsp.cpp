#include "crawlerlab/gsp.hpp"

#include <algorithm>
#include <cmath>

#include "crawlerlab/cubic.hpp"

namespace crawler {

const char* branch_name(BranchStability b) {
    switch (b) {
        case BranchStability::Attracting: return "attracting";
        case BranchStability::Repelling: return "repelling";
        case BranchStability::Fold: return "fold";
    }
    return "fold";
}

const char* folded_class_name(FoldedClass c) {
    switch (c) {
        case FoldedClass::FoldedSaddle: return "folded-saddle";
        case FoldedClass::NonSaddle: return "non-saddle";
        case FoldedClass::Degenerate: return "degenerate";
    }
    return "degenerate";
}

double critical_manifold_residual(double V, double s, const Groups& g) {
    return g.pi_c_eps() * V * V * V - g.pi_l_eps() * V + g.pi_s_eps() * s;
}

double layer_slope(double V, const Groups& g) { return g.pi_l_eps() - 3.0 * g.pi_c_eps() * V * V; }

std::vector<ManifoldPoint> manifold_branches(double s, const Groups& g) {
    const double pc = g.pi_c_eps();
    const auto roots = solve_monic_cubic(0.0, -g.pi_l_eps() / pc, g.pi_s_eps() * s / pc);
    const double fold_V = std::sqrt(g.pi_l_eps() / (3.0 * pc));
    const double tol = 1e-7 * fold_V;

    std::vector<double> real_roots;
    for (int j = 0; j < roots.real_count; ++j) real_roots.push_back(roots.roots[j].real());
    // A pair that is complex only through rounding is a fold.
    if (roots.real_count == 1 && std::abs(roots.roots[1].imag()) <= tol) {
        real_roots.push_back(roots.roots[1].real());
    }
    std::sort(real_roots.begin(), real_roots.end());

    std::vector<ManifoldPoint> out;
    for (double V : real_roots) {
        ManifoldPoint p{V, BranchStability::Repelling};
        if (std::abs(std::abs(V) - fold_V) <= tol) p.stability = BranchStability::Fold;
        else if (layer_slope(V, g) < 0.0) p.stability = BranchStability::Attracting;
        out.push_back(p);
    }
    // Merge the two copies of a double root.
    out.erase(std::unique(out.begin(), out.end(),
                          [&](const ManifoldPoint& a, const ManifoldPoint& b) {
                              return a.stability == BranchStability::Fold && b.stability == BranchStability::Fold &&
                                     std::abs(a.V - b.V) <= tol;
                          }),
              out.end());
    return out;
}

FoldedClassification classify_folded_singularity(const Groups& g) {
    FoldedClassification out;
    const double pl = g.pi_l_eps();
    const double radicand = pl * (pl / 3.0 - g.pi_V * g.pi_s_eps());
    out.eigenvalues[0] = 0.0;
    const double tol = 1e-14 * pl * pl;
    if (radicand > tol) {
        const double lam = 2.0 * std::sqrt(radicand);
        out.eigenvalues[1] = lam;
        out.eigenvalues[2] = -lam;
        out.classification = FoldedClass::FoldedSaddle;
    } else if (radicand < -tol) {
        const double lam = 2.0 * std::sqrt(-radicand);
        out.eigenvalues[1] = {0.0, lam};
        out.eigenvalues[2] = {0.0, -lam};
        out.classification = FoldedClass::NonSaddle;
    } else {
        out.classification = FoldedClass::Degenerate;
    }
    return out;
}

FoldData folds(const Groups& g) {
    const double pc = g.pi_c_eps();
    const double pl = g.pi_l_eps();
    const double ps = g.pi_s_eps();
    FoldData out;
    out.V_F_plus = std::sqrt(pl / (3.0 * pc));
    out.V_F_minus = -out.V_F_plus;
    out.s_F_plus = 2.0 * std::pow(pl, 1.5) / (3.0 * std::sqrt(3.0) * std::sqrt(pc) * ps);
    out.s_F_minus = -out.s_F_plus;
    const auto cls = classify_folded_singularity(g);
    out.sing_eigs = cls.eigenvalues;
    out.classification = cls.classification;
    return out;
}

}  // namespace crawler
