#include "vsheet/symbol.hpp"

#include <cmath>
#include <string>

#include "vsheet/errors.hpp"

namespace vsheet {

namespace {

constexpr cplx I(0.0, 1.0);
constexpr double kPoleTol = 1e-14;

cplx side_s(const BackgroundState& s, Side side, const FrequencyPoint& fp) {
    return fp.tau() + I * (s.v(side) * fp.eta);
}

// Throws if τ+ivη or (τ+ivη)²+F²η² vanishes on either side.
void check_poles(const BackgroundState& st, const FrequencyPoint& fp) {
    const double h = std::abs(fp.tau()) + (st.v_r + std::sqrt(st.f_sq())) * std::abs(fp.eta);
    for (Side side : {Side::right, Side::left}) {
        const char* name = side == Side::right ? "right" : "left";
        const cplx s = side_s(st, side, fp);
        const cplx g = s * s + st.f_sq() * fp.eta * fp.eta;
        if (std::abs(s) <= kPoleTol * h)
            throw Error(ErrorKind::SymbolPole, std::string("tau + i v eta = 0 (") + name + ")");
        if (std::abs(g) <= kPoleTol * h * h)
            throw Error(ErrorKind::SymbolPole,
                        std::string("(tau + i v eta)^2 + F^2 eta^2 = 0 (") + name + ")");
    }
}

Eigen::Matrix<double, 7, 7> a1_block(double v, double f11, double f12, double c) {
    const double c2 = c * c;
    Eigen::Matrix<double, 7, 7> b;
    b << v, -c2, c2, -f11, 0, -f12, 0,
        -c2, 2 * c2 * v, 0, 0, -c * f11, 0, -c * f12,
        c2, 0, 2 * c2 * v, 0, -c * f11, 0, -c * f12,
        -f11, 0, 0, v, 0, 0, 0,
        0, -c * f11, -c * f11, 0, v, 0, 0,
        -f12, 0, 0, 0, 0, v, 0,
        0, -c * f12, -c * f12, 0, 0, 0, v;
    return b;
}

}  // namespace

SystemMatrices assemble_interior(const BackgroundState& s) {
    const double c = s.c, c2 = c * c, c3 = c2 * c;
    SystemMatrices m;
    m.a0.setZero();
    m.a1.setZero();
    m.a2.setZero();
    const double a0d[7] = {1, 2 * c2, 2 * c2, 1, 1, 1, 1};
    for (int k = 0; k < 7; ++k) {
        m.a0(k, k) = a0d[k];
        m.a0(k + 7, k + 7) = a0d[k];
    }
    m.a2(1, 1) = -2 * c3;
    m.a2(2, 2) = 2 * c3;
    m.a2(8, 8) = 2 * c3;
    m.a2(9, 9) = -2 * c3;
    m.a1.block<7, 7>(0, 0) = a1_block(s.v(Side::right), s.f11(Side::right), s.f12(Side::right), c);
    m.a1.block<7, 7>(7, 7) = a1_block(s.v(Side::left), s.f11(Side::left), s.f12(Side::left), c);

    m.m_bdry << -c, -c, 0, 0, c, c, 0, 0,
        -c, -c, 0, 0, 0, 0, 0, 0,
        -1, 1, 0, 0, 1, -1, 0, 0,
        0, 0, -1, 0, 0, 0, 1, 0,
        0, 0, -1, 0, 0, 0, 0, 0,
        0, 0, 0, -1, 0, 0, 0, 1,
        0, 0, 0, -1, 0, 0, 0, 0;
    const double v = s.v_r, f11 = s.f11_r, f12 = s.f12_r;
    m.b_bdry << 0, 2 * v,
        1, v,
        0, 0,
        0, 2 * f11,
        0, f11,
        0, 2 * f12,
        0, f12;
    return m;
}

Mat14c interior_symbol(const SystemMatrices& sm, const FrequencyPoint& fp) {
    return fp.tau() * sm.a0.cast<cplx>() + (I * fp.eta) * sm.a1.cast<cplx>();
}

Vec7c boundary_symbol(const BackgroundState& s, const FrequencyPoint& fp) {
    const SystemMatrices sm = assemble_interior(s);
    Eigen::Matrix<cplx, 2, 1> te(fp.tau(), I * fp.eta);
    return sm.b_bdry.cast<cplx>() * te;
}

Mat24c beta_elastic(double v_r, double c, const FrequencyPoint& raw) {
    const FrequencyPoint fp = normalize_to_hemisphere(raw);
    const cplx tm = fp.tau() - I * (v_r * fp.eta);
    const cplx tp = fp.tau() + I * (v_r * fp.eta);
    Mat24c b;
    b << -1.0, 1.0, 1.0, -1.0,
        -c * tm, -c * tm, c * tp, c * tp;
    return b;
}

BoundaryReduction assemble_boundary(const BackgroundState& s, const FrequencyPoint& raw) {
    const FrequencyPoint fp = normalize_to_hemisphere(raw);
    const cplx tau = fp.tau();
    const double v = s.v_r, e = fp.eta, f11 = s.f11_r, f12 = s.f12_r;
    const cplx ive = I * (v * e);

    BoundaryReduction br;
    Mat7c& q = br.q_mat;
    q.setZero();
    q(0, 2) = 1.0;
    q(1, 0) = tau + ive;
    q(1, 1) = -2.0 * ive;
    q(2, 0) = -2.0 * ive;
    q(2, 1) = std::conj(tau) - ive;
    q(2, 3) = -2.0 * I * (f11 * e);
    q(2, 4) = -I * (f11 * e);
    q(2, 5) = -2.0 * I * (f12 * e);
    q(2, 6) = -I * (f12 * e);
    q(3, 0) = -f11;
    q(3, 3) = v;
    q(4, 0) = -f11;
    q(4, 4) = 2 * v;
    q(5, 0) = -f12;
    q(5, 5) = v;
    q(6, 0) = -f12;
    q(6, 6) = 2 * v;

    const SystemMatrices sm = assemble_interior(s);
    const Vec7c qb = q * boundary_symbol(s, fp);
    br.theta = qb(2);
    const Mat78c qm = q * sm.m_bdry.cast<cplx>();
    br.ell = qm.row(2).transpose();
    br.b_star = q.row(2).transpose();
    br.beta = beta_elastic(s.v_r, s.c, fp);
    return br;
}

Mat78c qm_displayed(const BackgroundState& s, const FrequencyPoint& raw) {
    const FrequencyPoint fp = normalize_to_hemisphere(raw);
    const cplx tau = fp.tau(), tb = std::conj(tau);
    const double v = s.v_r, e = fp.eta, c = s.c, f11 = s.f11_r, f12 = s.f12_r;
    const cplx ive = I * (v * e);
    const cplx tm = tau - ive, tp = tau + ive;
    const cplx r3 = -c * (tb - 3.0 * ive);
    Mat78c m;
    m << -1.0, 1.0, 0.0, 0.0, 1.0, -1.0, 0.0, 0.0,
        -c * tm, -c * tm, 0.0, 0.0, c * tp, c * tp, 0.0, 0.0,
        r3, r3, 3.0 * I * (f11 * e), 3.0 * I * (f12 * e), -2.0 * c * ive, -2.0 * c * ive,
        -2.0 * I * (f11 * e), -2.0 * I * (f12 * e),
        c * f11, c * f11, -v, 0.0, -c * f11, -c * f11, v, 0.0,
        c * f11, c * f11, -2 * v, 0.0, -c * f11, -c * f11, 0.0, 0.0,
        c * f12, c * f12, 0.0, -v, -c * f12, -c * f12, 0.0, v,
        c * f12, c * f12, 0.0, -2 * v, -c * f12, -c * f12, 0.0, 0.0;
    return m;
}

Mat4c block_symbol(cplx n_r, cplx m_r, cplx n_l, cplx m_l) {
    Mat4c a;
    a << n_r, -m_r, 0.0, 0.0,
        m_r, -n_r, 0.0, 0.0,
        0.0, 0.0, -n_l, m_l,
        0.0, 0.0, -m_l, n_l;
    return a;
}

ReducedSymbol reduced_symbol_closed(const BackgroundState& st, const FrequencyPoint& fp) {
    check_poles(st, fp);
    const double c = st.c, e2 = fp.eta * fp.eta, fe2 = st.f_sq() * e2;
    auto nm = [&](Side side, cplx& n, cplx& m) {
        const cplx s = side_s(st, side, fp);
        const cplx g = s * s + fe2;
        const cplx common = 0.5 * c * s * e2 / g;
        n = (2.0 * s * s + fe2) / (2.0 * c * s) + common;
        m = common - fe2 / (2.0 * c * s);
    };
    ReducedSymbol r;
    nm(Side::right, r.n_r, r.m_r);
    nm(Side::left, r.n_l, r.m_l);
    r.a_mat = block_symbol(r.n_r, r.m_r, r.n_l, r.m_l);
    return r;
}

EliminatedSymbol reduced_symbol_via_elimination(const BackgroundState& st, const FrequencyPoint& fp) {
    const SystemMatrices sm = assemble_interior(st);
    const Mat14c k = interior_symbol(sm, fp);
    Eigen::Matrix<cplx, 10, 10> kcc;
    Eigen::Matrix<cplx, 10, 4> kcn;
    Eigen::Matrix<cplx, 4, 10> knc;
    Mat4c knn;
    for (int i = 0; i < 10; ++i) {
        const int ri = idx::zero_based(idx::characteristic[i]);
        for (int j = 0; j < 10; ++j) kcc(i, j) = k(ri, idx::zero_based(idx::characteristic[j]));
        for (int j = 0; j < 4; ++j) {
            const int cj = idx::zero_based(idx::noncharacteristic[j]);
            kcn(i, j) = k(ri, cj);
            knc(j, i) = k(cj, ri);
        }
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            knn(i, j) = k(idx::zero_based(idx::noncharacteristic[i]),
                          idx::zero_based(idx::noncharacteristic[j]));

    Eigen::PartialPivLU<Eigen::Matrix<cplx, 10, 10>> lu(kcc);
    const double rc = lu.rcond();
    if (!(rc > 1e-15)) throw Error(ErrorKind::SymbolPole, "characteristic block is singular");
    // The ten algebraic rows give W_C = −K_CC⁻¹ K_CN W_N; substituting into the
    // four differential rows K_N W + 𝒜₂,N dW_N/dx₂ = 0 yields dW_N/dx₂ = A W_N.
    const Mat4c schur = knn - knc * lu.solve(kcn);
    EliminatedSymbol out;
    for (int i = 0; i < 4; ++i) {
        const int ri = idx::zero_based(idx::noncharacteristic[i]);
        out.a_mat.row(i) = -schur.row(i) / sm.a2(ri, ri);
    }
    out.rcond = rc;
    out.ill_conditioned = rc < 1e-8;
    return out;
}

EigenData assemble_eigen_data(const SideSymbol& r, const SideSymbol& l) {
    EigenData d;
    d.omega_r = r.omega;
    d.omega_l = l.omega;
    d.alpha_r = r.alpha;
    d.alpha_l = l.alpha;
    const cplx br = r.alpha_n - r.omega * r.alpha, cr = r.alpha_n + r.omega * r.alpha;
    const cplx bl = l.alpha_n - l.omega * l.alpha, cl = l.alpha_n + l.omega * l.alpha;
    d.e_minus_r << r.alpha_m, br, 0.0, 0.0;
    d.e_plus_r << r.alpha_m, cr, 0.0, 0.0;
    d.e_minus_l << 0.0, 0.0, bl, l.alpha_m;
    d.e_plus_l << 0.0, 0.0, cl, l.alpha_m;
    d.at_cut = r.at_cut || l.at_cut;
    return d;
}

SideSymbol elastic_side_symbol(const BackgroundState& st, Side side, const FrequencyPoint& fp) {
    const double c = st.c, e2 = fp.eta * fp.eta, fe2 = st.f_sq() * e2;
    SideSymbol out;
    out.s = side_s(st, side, fp);
    const cplx s2 = out.s * out.s;
    const cplx g = s2 + fe2;
    const BranchValue w = omega_branch(st.v(side), st.f_sq(), c, fp);
    out.omega = w.value();
    out.at_cut = w.at_cut;
    // α(n, m) with the 1/S and 1/G poles cleared.
    out.alpha = out.s * g;
    out.alpha_m = 0.5 * c * s2 * e2 - fe2 * g / (2.0 * c);
    out.alpha_n = s2 * g / c + fe2 * g / (2.0 * c) + 0.5 * c * s2 * e2;
    return out;
}

EigenData eigen_data(const BackgroundState& s, const FrequencyPoint& fp) {
    return assemble_eigen_data(elastic_side_symbol(s, Side::right, fp),
                               elastic_side_symbol(s, Side::left, fp));
}

Vec14c reconstruct_characteristic(const BackgroundState& st, const FrequencyPoint& fp,
                                  const Vec4c& w_nc) {
    check_poles(st, fp);
    const double c = st.c, c2 = c * c, e = fp.eta, e2 = e * e;
    Vec14c w = Vec14c::Zero();
    auto fill = [&](Side side, int base, cplx wa, cplx wb) {
        const cplx s = side_s(st, side, fp);
        const cplx g = s * s + st.f_sq() * e2;
        const double f11 = st.f11(side), f12 = st.f12(side);
        const cplx dif = wa - wb, sum = wa + wb;
        w(base + 0) = I * c2 * e * s / g * dif;
        w(base + 1) = wa;
        w(base + 2) = wb;
        w(base + 3) = -c2 * f11 * e2 / g * dif;
        w(base + 4) = I * c * f11 * e / s * sum;
        w(base + 5) = -c2 * f12 * e2 / g * dif;
        w(base + 6) = I * c * f12 * e / s * sum;
    };
    fill(Side::right, 0, w_nc(0), w_nc(1));
    fill(Side::left, 7, w_nc(2), w_nc(3));
    return w;
}

double algebraic_residual(const BackgroundState& s, const FrequencyPoint& fp, const Vec14c& w) {
    const Mat14c k = interior_symbol(assemble_interior(s), fp);
    const Vec14c kw = k * w;
    double worst = 0.0;
    for (int r : idx::characteristic) worst = std::max(worst, std::abs(kw(idx::zero_based(r))));
    const double scale = k.cwiseAbs().rowwise().sum().maxCoeff() * w.cwiseAbs().maxCoeff();
    return scale > 0.0 ? worst / scale : worst;
}

Vec8c normal_components(const Vec14c& w) {
    Vec8c out;
    for (int i = 0; i < 8; ++i) out(i) = w(idx::zero_based(idx::normal[i]));
    return out;
}

Vec4c noncharacteristic_components(const Vec14c& w) {
    Vec4c out;
    for (int i = 0; i < 4; ++i) out(i) = w(idx::zero_based(idx::noncharacteristic[i]));
    return out;
}

}  // namespace vsheet
