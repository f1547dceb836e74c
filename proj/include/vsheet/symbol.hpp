#pragma once

#include <array>

#include <Eigen/Dense>

#include "vsheet/background.hpp"
#include "vsheet/freq.hpp"

namespace vsheet {

using Mat14d = Eigen::Matrix<double, 14, 14>;
using Mat14c = Eigen::Matrix<cplx, 14, 14>;
using Vec14c = Eigen::Matrix<cplx, 14, 1>;
using Mat7c = Eigen::Matrix<cplx, 7, 7>;
using Vec7c = Eigen::Matrix<cplx, 7, 1>;
using Vec8c = Eigen::Matrix<cplx, 8, 1>;
using Mat78c = Eigen::Matrix<cplx, 7, 8>;
using Mat24c = Eigen::Matrix<cplx, 2, 4>;
using Mat4c = Eigen::Matrix4cd;
using Vec4c = Eigen::Vector4cd;
using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;

// Unknown ordering. Components are W1..W14 with W1..W7 on the right side and
// W8..W14 on the left; every index list below is 1-based in that numbering.
//   Wⁿ  = (W2, W3, W5, W7, W9, W10, W12, W14)   components seen by the boundary
//   Wⁿᶜ = (W2, W3, W9, W10)                      rows where 𝒜₂ ≠ 0
//   characteristic = the ten rows where 𝒜₂ = 0
namespace idx {
inline constexpr std::array<int, 8> normal{2, 3, 5, 7, 9, 10, 12, 14};
inline constexpr std::array<int, 4> noncharacteristic{2, 3, 9, 10};
inline constexpr std::array<int, 10> characteristic{1, 4, 5, 6, 7, 8, 11, 12, 13, 14};
inline constexpr int zero_based(int one_based) { return one_based - 1; }
}  // namespace idx

struct SystemMatrices {
    Mat14d a0;
    Mat14d a1;
    Mat14d a2;
    Eigen::Matrix<double, 7, 8> m_bdry;
    Eigen::Matrix<double, 7, 2> b_bdry;
};

SystemMatrices assemble_interior(const BackgroundState& s);

// τ𝒜₀ + iη𝒜₁
Mat14c interior_symbol(const SystemMatrices& sm, const FrequencyPoint& fp);

// b(τ,η) = b̲·(τ, iη)ᵀ.
Vec7c boundary_symbol(const BackgroundState& s, const FrequencyPoint& fp);

struct BoundaryReduction {
    Mat7c q_mat;
    cplx theta;
    Vec8c ell;     // third row of QM
    Vec7c b_star;  // third row of Q
    Mat24c beta;
};

// Evaluated at the Σ-normalized point (Q, ℓ, b*, β are degree 0; θ is then its Σ value).
BoundaryReduction assemble_boundary(const BackgroundState& s, const FrequencyPoint& fp);

// The QM product as printed alongside Q, entered entry by entry. Used only to
// cross-check the numeric product.
Mat78c qm_displayed(const BackgroundState& s, const FrequencyPoint& fp);

// β of the reduced boundary condition βŴⁿᶜ = h, evaluated at the Σ-normalized point.
Mat24c beta_elastic(double v_r, double c, const FrequencyPoint& fp);

struct ReducedSymbol {
    cplx n_r, m_r, n_l, m_l;
    Mat4c a_mat;
};

Mat4c block_symbol(cplx n_r, cplx m_r, cplx n_l, cplx m_l);

ReducedSymbol reduced_symbol_closed(const BackgroundState& s, const FrequencyPoint& fp);

struct EliminatedSymbol {
    Mat4c a_mat;
    double rcond;       // reciprocal condition estimate of the 10×10 characteristic block
    bool ill_conditioned;  // 1/rcond > 1e8
};

EliminatedSymbol reduced_symbol_via_elimination(const BackgroundState& s, const FrequencyPoint& fp);

// Per-side pieces shared by every model. α, αm, αn are polynomial in (τ, η),
// so E₋ is finite everywhere on Σ including the poles of A.
struct SideSymbol {
    cplx s;        // τ + ivη
    cplx omega;    // eigenvalue with Re ω ≤ 0
    cplx alpha;
    cplx alpha_m;
    cplx alpha_n;
    bool at_cut = false;
};

struct EigenData {
    cplx omega_r, omega_l;
    cplx alpha_r, alpha_l;
    Vec4c e_minus_r, e_plus_r, e_minus_l, e_plus_l;
    bool at_cut = false;
};

EigenData assemble_eigen_data(const SideSymbol& r, const SideSymbol& l);

SideSymbol elastic_side_symbol(const BackgroundState& s, Side side, const FrequencyPoint& fp);
EigenData eigen_data(const BackgroundState& s, const FrequencyPoint& fp);

// Ŵ with the ten characteristic components solved from Ŵⁿᶜ = (W2, W3, W9, W10).
Vec14c reconstruct_characteristic(const BackgroundState& s, const FrequencyPoint& fp,
                                  const Vec4c& w_nc);

// max |row_k((τ𝒜₀+iη𝒜₁)Ŵ)| over the ten characteristic rows, relative to ‖K‖∞‖Ŵ‖∞.
double algebraic_residual(const BackgroundState& s, const FrequencyPoint& fp, const Vec14c& w);

Vec8c normal_components(const Vec14c& w);
Vec4c noncharacteristic_components(const Vec14c& w);

}  // namespace vsheet
