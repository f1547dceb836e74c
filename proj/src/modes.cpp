#include "vsheet/modes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vsheet/errors.hpp"

namespace vsheet {

cplx nondegeneracy_value(const BackgroundState& s, Side side, const FrequencyPoint& fp) {
    const cplx w = omega(s, side, fp);
    const cplx sv = fp.tau() + cplx(0.0, s.v(side) * fp.eta);
    return sv * w - s.c * (w * w - fp.eta * fp.eta);
}

std::string to_string(Pivot p) { return p == Pivot::m_branch ? "m_branch" : "n_branch"; }

namespace {

Pivot choose(const SideSymbol& s) {
    const cplx a = s.alpha_m, b = s.alpha_n - s.omega * s.alpha;
    const double scale = std::abs(s.alpha) + std::abs(s.alpha_m) + std::abs(s.alpha_n);
    if (std::max(std::abs(a), std::abs(b)) <= 1e-14 * scale)
        throw Error(ErrorKind::DegenerateEigenvector, "E_- vanishes (both pivots below 1e-14)");
    return std::abs(a) >= std::abs(b) ? Pivot::m_branch : Pivot::n_branch;
}

// m/((n−ω)α) written without m: m = αm/α.
cplx coupling(const SideSymbol& s, Pivot p) {
    if (p == Pivot::m_branch) return -1.0 / s.alpha;
    return s.alpha_m / (s.alpha * (s.alpha_n - s.omega * s.alpha));
}

}  // namespace

SeparationBasis separation_basis(const Model& m, const FrequencyPoint& fp, Pivot pr, Pivot pl) {
    const SideSymbol r = m.side_symbol(Side::right, fp);
    const SideSymbol l = m.side_symbol(Side::left, fp);
    const EigenData e = assemble_eigen_data(r, l);
    SeparationBasis b;
    b.fp0 = fp;
    b.pivot_r = pr;
    b.pivot_l = pl;
    b.t_mat.setZero();
    b.t_mat.col(0) = e.e_minus_r;
    b.t_mat(pr == Pivot::m_branch ? 1 : 0, 1) = 1.0;
    b.t_mat.col(2) = e.e_minus_l;
    b.t_mat(pl == Pivot::m_branch ? 2 : 3, 3) = 1.0;
    b.z_r = coupling(r, pr);
    b.z_l = coupling(l, pl);
    const Eigen::PartialPivLU<Mat4c> lu(b.t_mat);
    const double rc = lu.rcond();
    b.cond = rc > 0.0 ? 1.0 / rc : INFINITY;
    return b;
}

SeparationBasis separation_basis(const Model& m, const FrequencyPoint& fp0) {
    const Pivot pr = choose(m.side_symbol(Side::right, fp0));
    const Pivot pl = choose(m.side_symbol(Side::left, fp0));
    return separation_basis(m, fp0, pr, pl);
}

Triangularization triangularization_residuals(const Model& m, const FrequencyPoint& fp,
                                              const SeparationBasis& basis) {
    const SeparationBasis b = (fp.gamma == basis.fp0.gamma && fp.delta == basis.fp0.delta &&
                               fp.eta == basis.fp0.eta)
                                  ? basis
                                  : separation_basis(m, fp, basis.pivot_r, basis.pivot_l);
    const Mat4c a = m.reduced_symbol(fp);
    Triangularization t;
    t.tat = b.t_mat.partialPivLu().solve(a * b.t_mat);
    t.a_norm = a.norm();
    const double inv = t.a_norm > 0.0 ? 1.0 / t.a_norm : 1.0;
    const cplx wr = m.side_symbol(Side::right, fp).omega;
    const cplx wl = m.side_symbol(Side::left, fp).omega;
    const cplx diag[4] = {wr, -wr, wl, -wl};
    t.off_structure = 0.0;
    t.diag_error = 0.0;
    for (int i = 0; i < 4; ++i) {
        t.diag_error = std::max(t.diag_error, std::abs(t.tat(i, i) - diag[i]) * inv);
        for (int j = 0; j < 4; ++j) {
            const bool allowed = i == j || (i == 0 && j == 1) || (i == 2 && j == 3);
            if (!allowed) t.off_structure = std::max(t.off_structure, std::abs(t.tat(i, j)) * inv);
        }
    }
    t.z_error = std::max(std::abs(t.tat(0, 1) - b.z_r), std::abs(t.tat(2, 3) - b.z_l)) * inv;
    return t;
}

Mat4c triangularize(const Model& m, const FrequencyPoint& fp, const SeparationBasis& basis,
                    double tol) {
    const Triangularization t = triangularization_residuals(m, fp, basis);
    const double worst = std::max({t.off_structure, t.diag_error, t.z_error});
    if (!(worst <= tol)) {
        std::ostringstream os;
        os << "residual " << worst << " (off " << t.off_structure << ", diag " << t.diag_error
           << ", z " << t.z_error << ")";
        throw Error(ErrorKind::SeparationFailed, os.str());
    }
    return t.tat;
}

}  // namespace vsheet
