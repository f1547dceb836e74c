#include "vsheet/models.hpp"

#include <algorithm>
#include <cmath>

#include "vsheet/errors.hpp"

namespace vsheet {

namespace {

constexpr cplx I(0.0, 1.0);

std::vector<RootCandidate> candidates_from(const CaseLabel& label, double v, double v1_sq,
                                           bool with_pm_v) {
    std::vector<double> boundary;
    if (with_pm_v) boundary = {-v, v};
    boundary.push_back(0.0);
    if (v1_sq > 0.0) {
        boundary.push_back(-std::sqrt(v1_sq));
        boundary.push_back(std::sqrt(v1_sq));
    }
    auto mult_of = [&](double th, bool interior) {
        for (const auto& r : label.expected_roots)
            if (r.interior == interior && std::abs(r.theta - th) <= 1e-12 * (1.0 + std::abs(th)))
                return r.multiplicity;
        return 0;
    };
    std::vector<RootCandidate> out;
    for (double th : boundary) out.push_back({th, mult_of(th, false), false});
    if (v1_sq < 0.0) {
        const double th = std::sqrt(-v1_sq);
        out.push_back({th, mult_of(th, true), true});
    }
    std::sort(out.begin(), out.end(),
              [](const RootCandidate& a, const RootCandidate& b) { return a.theta < b.theta; });
    // ±V₁ meets ±v at the weak threshold; merge within the case tolerance.
    std::vector<RootCandidate> merged;
    for (const auto& c : out) {
        if (!merged.empty() && merged.back().interior == c.interior &&
            std::abs(merged.back().theta - c.theta) <= 1e-9 * (1.0 + std::abs(c.theta))) {
            merged.back().multiplicity = std::max(merged.back().multiplicity, c.multiplicity);
            continue;
        }
        merged.push_back(c);
    }
    return merged;
}

}  // namespace

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::Elastic: return "elastic";
        case ModelKind::Euler: return "euler";
        case ModelKind::Mhd: return "mhd";
    }
    return "elastic";
}

ModelKind parse_model_kind(const std::string& text) {
    if (text == "elastic") return ModelKind::Elastic;
    if (text == "euler") return ModelKind::Euler;
    if (text == "mhd") return ModelKind::Mhd;
    throw Error(ErrorKind::InvalidState, "unknown model '" + text + "'");
}

FrequencyPoint Model::normalize(const FrequencyPoint& fp) const {
    return normalize_to_hemisphere(fp.gamma, fp.delta, fp.eta, sigma_weight());
}

// Elastic -------------------------------------------------------------------

SideSymbol ElasticModel::side_symbol(Side side, const FrequencyPoint& fp) const {
    return elastic_side_symbol(s_, side, fp);
}

Mat4c ElasticModel::reduced_symbol(const FrequencyPoint& fp) const {
    return reduced_symbol_closed(s_, fp).a_mat;
}

Mat24c ElasticModel::beta(const FrequencyPoint& fp) const {
    return beta_elastic(s_.v_r, s_.c, normalize(fp));
}

std::optional<cplx> ElasticModel::det_factored(const FrequencyPoint& raw) const {
    const FrequencyPoint fp = normalize(raw);
    const double c = s_.c, e2 = fp.eta * fp.eta;
    const SideSymbol r = side_symbol(Side::right, fp), l = side_symbol(Side::left, fp);
    const cplx wr = r.omega, wl = l.omega;
    return std::pow(c, 4) * r.s * l.s * (r.s * wr - c * (wr * wr - e2)) *
           (c * (wl * wl - e2) - l.s * wl) * (wl * wr - e2) * (wr + wl);
}

std::optional<CaseLabel> ElasticModel::case_label() const {
    if (forced_) return label_for_case(s_, *forced_);
    return classify_case(s_, case_tol_);
}

std::vector<RootCandidate> ElasticModel::root_candidates() const {
    return candidates_from(*case_label(), s_.v_r, derived_constants(s_).v1_sq, true);
}

std::vector<double> ElasticModel::branch_points() const {
    const double k = std::sqrt(s_.f_sq() + s_.c * s_.c), v = s_.v_r;
    return {-v - k, -v + k, v - k, v + k};
}

double ElasticModel::scan_half_width() const {
    return s_.v_r + 2.0 * std::sqrt(s_.f_sq() + s_.c * s_.c);
}

// Euler ---------------------------------------------------------------------

EulerModel::EulerModel(EulerParams p, double case_tol) : p_(p), case_tol_(case_tol) {
    if (!(p.v_r > 0.0) || !(p.c > 0.0) || !(p.rho > 0.0) || !std::isfinite(p.v_r) ||
        !std::isfinite(p.c) || !std::isfinite(p.rho))
        throw Error(ErrorKind::InvalidState, "Euler requires rho, v_r, c > 0");
}

SideSymbol EulerModel::side_symbol(Side side, const FrequencyPoint& fp) const {
    const double v = side == Side::right ? p_.v_r : -p_.v_r;
    const double c = p_.c, e2 = fp.eta * fp.eta;
    SideSymbol out;
    out.s = fp.tau() + I * (v * fp.eta);
    const BranchValue w = omega_branch(v, 0.0, c, fp);
    out.omega = w.value();
    out.at_cut = w.at_cut;
    out.alpha = out.s;
    out.alpha_m = 0.5 * c * e2;
    out.alpha_n = out.s * out.s / c + 0.5 * c * e2;
    return out;
}

Mat4c EulerModel::reduced_symbol(const FrequencyPoint& fp) const {
    const double c = p_.c, e2 = fp.eta * fp.eta;
    const double h = std::abs(fp.tau()) + p_.v_r * std::abs(fp.eta);
    cplx n[2], m[2];
    for (int k = 0; k < 2; ++k) {
        const double v = k == 0 ? p_.v_r : -p_.v_r;
        const cplx s = fp.tau() + I * (v * fp.eta);
        if (std::abs(s) <= 1e-14 * h)
            throw Error(ErrorKind::SymbolPole, k == 0 ? "tau + i v eta = 0 (right)"
                                                      : "tau + i v eta = 0 (left)");
        m[k] = 0.5 * c * e2 / s;
        n[k] = s / c + m[k];
    }
    return block_symbol(n[0], m[0], n[1], m[1]);
}

Mat24c EulerModel::beta(const FrequencyPoint& fp) const {
    return beta_elastic(p_.v_r, p_.c, normalize(fp));
}

std::optional<cplx> EulerModel::det_factored(const FrequencyPoint& raw) const {
    const FrequencyPoint fp = normalize(raw);
    const double c = p_.c, e2 = fp.eta * fp.eta;
    const SideSymbol r = side_symbol(Side::right, fp), l = side_symbol(Side::left, fp);
    const cplx wr = r.omega, wl = l.omega;
    return std::pow(c, 4) * (wr - r.s / c) * (l.s / c - wl) * (wr * wl - e2) * (wr + wl);
}

std::optional<CaseLabel> EulerModel::case_label() const {
    // The elastic table at F = 0, without the ±v roots that come from the
    // S² factor of the elastic eigenvectors.
    const BackgroundState s{p_.rho, p_.v_r, 0.0, 0.0, p_.c, true};
    CaseLabel label = classify_case(s, case_tol_);
    auto& r = label.expected_roots;
    r.erase(std::remove_if(r.begin(), r.end(),
                           [&](const ExpectedRoot& x) {
                               return !x.interior && std::abs(std::abs(x.theta) - p_.v_r) <=
                                                         1e-12 * p_.v_r;
                           }),
            r.end());
    return label;
}

std::vector<RootCandidate> EulerModel::root_candidates() const {
    const BackgroundState s{p_.rho, p_.v_r, 0.0, 0.0, p_.c, true};
    return candidates_from(*case_label(), p_.v_r, derived_constants(s).v1_sq, false);
}

std::vector<double> EulerModel::branch_points() const {
    const double v = p_.v_r, c = p_.c;
    return {-v - c, -v + c, v - c, v + c};
}

double EulerModel::scan_half_width() const { return p_.v_r + 2.0 * p_.c; }

// MHD -----------------------------------------------------------------------

double MhdParams::c_a() const { return std::abs(h2_r) / std::sqrt(rho); }
double MhdParams::lambda() const { return std::sqrt(c * c + c_a() * c_a()); }

MhdModel::MhdModel(MhdParams p) : p_(p) {
    if (!(p.v2_r > 0.0) || !(p.c > 0.0) || !(p.rho > 0.0) || !std::isfinite(p.v2_r) ||
        !std::isfinite(p.c) || !std::isfinite(p.rho) || !std::isfinite(p.h2_r))
        throw Error(ErrorKind::InvalidState, "MHD requires rho, v2_r, c > 0 and finite H2");
    ca_ = p.c_a();
    lam_ = p.lambda();
}

cplx MhdModel::omega_sq(Side side, const FrequencyPoint& fp) const {
    const double v = side == Side::right ? p_.v2_r : -p_.v2_r;
    const double c = p_.c, e2 = fp.eta * fp.eta, ca2 = ca_ * ca_, l2 = lam_ * lam_;
    const cplx s = fp.tau() + I * (v * fp.eta);
    const cplx L = l2 * s * s + c * c * ca2 * e2;
    return (s * s + ca2 * e2) * (L + std::pow(c, 4) * e2) / (l2 * L);
}

void MhdModel::symbol_entries(Side side, const FrequencyPoint& fp, cplx& n, cplx& m) const {
    const double v = side == Side::right ? p_.v2_r : -p_.v2_r;
    const double c = p_.c, e2 = fp.eta * fp.eta, ca2 = ca_ * ca_;
    const cplx s = fp.tau() + I * (v * fp.eta);
    const cplx L = lam_ * lam_ * s * s + c * c * ca2 * e2;
    const double h = std::abs(fp.tau()) + p_.v2_r * std::abs(fp.eta);
    if (std::abs(s) <= 1e-14 * h) throw Error(ErrorKind::SymbolPole, "tau + i v2 eta = 0");
    if (std::abs(L) <= 1e-14 * lam_ * lam_ * h * h)
        throw Error(ErrorKind::SymbolPole, "lambda^2 (tau + i v2 eta)^2 + c^2 c_A^2 eta^2 = 0");
    const cplx x = 0.5 * ca2 * e2 / s;
    const cplx y = 0.5 * std::pow(c, 4) * e2 * s / L;
    n = (s + x + y) / lam_;
    m = (y - x) / lam_;
}

SideSymbol MhdModel::side_symbol(Side side, const FrequencyPoint& fp) const {
    const double v = side == Side::right ? p_.v2_r : -p_.v2_r;
    const double c = p_.c, c4 = std::pow(c, 4), e2 = fp.eta * fp.eta, ca2 = ca_ * ca_;
    SideSymbol out;
    out.s = fp.tau() + I * (v * fp.eta);
    const cplx s2 = out.s * out.s;
    const cplx L = lam_ * lam_ * s2 + c * c * ca2 * e2;
    out.alpha = out.s * L;
    out.alpha_m = (-0.5 * ca2 * e2 * L + 0.5 * c4 * e2 * s2) / lam_;
    out.alpha_n = (s2 * L + 0.5 * ca2 * e2 * L + 0.5 * c4 * e2 * s2) / lam_;

    const cplx w2 = omega_sq(side, fp);
    cplx w = -std::sqrt(w2);
    if (fp.gamma == 0.0) {
        // No closed sign rule here: follow the interior branch in from γ = ε.
        FrequencyPoint in = fp;
        in.gamma = 1e-8 * std::sqrt(fp.sigma_norm_sq());
        const cplx w_in = -std::sqrt(omega_sq(side, in));
        if (std::abs(-w - w_in) < std::abs(w - w_in)) w = -w;
        out.at_cut = std::abs(w.real()) <= 1e-12 * std::abs(w);
    }
    out.omega = w;
    return out;
}

Mat4c MhdModel::reduced_symbol(const FrequencyPoint& fp) const {
    cplx nr, mr, nl, ml;
    symbol_entries(Side::right, fp, nr, mr);
    symbol_entries(Side::left, fp, nl, ml);
    return block_symbol(nr, mr, nl, ml);
}

Mat24c MhdModel::beta(const FrequencyPoint& raw) const {
    const FrequencyPoint fp = normalize(raw);
    const double rl2 = p_.rho * lam_ * lam_;
    const cplx sl = fp.tau() - I * (p_.v2_r * fp.eta);  // τ + iv₂ˡη
    const cplx sr = fp.tau() + I * (p_.v2_r * fp.eta);
    Mat24c b;
    b << -rl2, rl2, rl2, -rl2,
        lam_ * sl, lam_ * sl, -lam_ * sr, -lam_ * sr;
    return b;
}

double MhdModel::special_set_alpha_m(double eta) const {
    const double ca2 = ca_ * ca_;
    return ca2 * std::pow(eta, 4) * (ca2 * ca2 - std::pow(p_.c, 4)) / (2.0 * lam_);
}

std::vector<double> MhdModel::branch_points() const {
    const double v = p_.v2_r;
    const double ks[3] = {ca_, p_.c, p_.c * ca_ / lam_};
    std::vector<double> out;
    for (double k : ks)
        for (double sv : {-v, v}) {
            out.push_back(sv - k);
            out.push_back(sv + k);
        }
    std::sort(out.begin(), out.end());
    return out;
}

double MhdModel::scan_half_width() const { return p_.v2_r + 2.0 * lam_; }

std::unique_ptr<Model> clone_model(const Model& m) {
    if (auto p = dynamic_cast<const ElasticModel*>(&m)) return std::make_unique<ElasticModel>(*p);
    if (auto p = dynamic_cast<const EulerModel*>(&m)) return std::make_unique<EulerModel>(*p);
    if (auto p = dynamic_cast<const MhdModel*>(&m)) return std::make_unique<MhdModel>(*p);
    throw Error(ErrorKind::InvalidState, "unknown model type");
}

}  // namespace vsheet
