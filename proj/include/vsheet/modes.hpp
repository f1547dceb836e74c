#pragma once

#include <string>

#include "vsheet/models.hpp"

namespace vsheet {

// (τ+ivη)ω − c(ω² − η²) for the side; never zero on Σ.
cplx nondegeneracy_value(const BackgroundState& s, Side side, const FrequencyPoint& fp);

enum class Pivot { m_branch, n_branch };
std::string to_string(Pivot p);

// Columns E₋ʳ, Fʳ, E₋ˡ, Fˡ. Fʳ = e₂ on the m-branch and e₁ on the n-branch;
// Fˡ = e₃ and e₄ respectively.
struct SeparationBasis {
    FrequencyPoint fp0;
    Mat4c t_mat;
    Pivot pivot_r;
    Pivot pivot_l;
    cplx z_r;
    cplx z_l;
    double cond;  // 1-norm condition estimate of T
};

// Pivot chosen by the larger of |mα| and |(n−ω)α|, ties to the m-branch.
SeparationBasis separation_basis(const Model& m, const FrequencyPoint& fp0);
// Same construction at fp with the pivots frozen (the basis on a neighbourhood of fp0).
SeparationBasis separation_basis(const Model& m, const FrequencyPoint& fp, Pivot pr, Pivot pl);

struct Triangularization {
    Mat4c tat;             // T⁻¹AT
    double off_structure;  // max off-pattern entry / ‖A‖_F
    double diag_error;     // max |diag − (ωʳ, −ωʳ, ωˡ, −ωˡ)| / ‖A‖_F
    double z_error;        // max |entry − z| / ‖A‖_F over the two couplings
    double a_norm;
};

Triangularization triangularization_residuals(const Model& m, const FrequencyPoint& fp,
                                              const SeparationBasis& basis);

// T⁻¹AT at fp using the basis' pivots; SeparationFailed if any residual exceeds tol.
Mat4c triangularize(const Model& m, const FrequencyPoint& fp, const SeparationBasis& basis,
                    double tol = 1e-10);

}  // namespace vsheet
