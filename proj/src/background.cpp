#include "vsheet/background.hpp"

#include <algorithm>
#include <cmath>

#include "vsheet/errors.hpp"

namespace vsheet {

BackgroundState validate_state(double rho, double v_r, double f11_r, double f12_r, double c,
                               bool strict) {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(rho) || !finite(v_r) || !finite(f11_r) || !finite(f12_r) || !finite(c))
        throw Error(ErrorKind::InvalidState, "non-finite state component");
    if (!(v_r > 0.0)) throw Error(ErrorKind::InvalidState, "v_r must be > 0");
    if (!(rho > 0.0)) throw Error(ErrorKind::InvalidState, "rho must be > 0");
    if (!(c > 0.0)) throw Error(ErrorKind::InvalidState, "c must be > 0");
    const bool degenerate = f11_r == 0.0 || f12_r == 0.0;
    if (strict && degenerate)
        throw Error(ErrorKind::DegenerateF, "strict mode requires F11 != 0 and F12 != 0");
    return {rho, v_r, f11_r, f12_r, c, degenerate};
}

DerivedConstants derived_constants(const BackgroundState& s) {
    const double f2 = s.f_sq(), c2 = s.c * s.c, v2 = s.v_r * s.v_r;
    const double k = f2 + c2;
    const double root = std::sqrt(c2 * c2 + 4.0 * k * v2);
    return {f2, v2 + k - root, v2 + k + root, f2 * (2.0 * c2 + f2) / (4.0 * k)};
}

Regime regime_of(CaseId id) {
    switch (id) {
        case CaseId::Case1:
        case CaseId::Case2: return Regime::StableLoss1;
        case CaseId::Case3:
        case CaseId::Case5: return Regime::StableLoss2;
        case CaseId::Case4: return Regime::StableLoss3;
        case CaseId::Case6: return Regime::Unstable;
    }
    return Regime::Unstable;
}

CaseLabel label_for_case(const BackgroundState& s, CaseId id) {
    const DerivedConstants d = derived_constants(s);
    const double v = s.v_r;
    const double v1 = std::sqrt(std::abs(d.v1_sq));
    std::vector<ExpectedRoot> r;
    switch (id) {
        case CaseId::Case1: r = {{-v, 1}, {-v1, 1}, {0.0, 1}, {v1, 1}, {v, 1}}; break;
        case CaseId::Case2: r = {{-v, 1}, {-v1, 1}, {v1, 1}, {v, 1}}; break;
        case CaseId::Case3: r = {{-v, 2}, {v, 2}}; break;
        case CaseId::Case4: r = {{-v, 1}, {0.0, 3}, {v, 1}}; break;
        case CaseId::Case5: r = {{-v, 1}, {0.0, 2}, {v, 1}}; break;
        case CaseId::Case6: r = {{v1, 1, true}}; break;
    }
    std::sort(r.begin(), r.end(), [](const ExpectedRoot& a, const ExpectedRoot& b) {
        return a.theta < b.theta;
    });
    return {id, regime_of(id), r};
}

CaseLabel classify_case(const BackgroundState& s, double tol) {
    const DerivedConstants d = derived_constants(s);
    const double v2 = s.v_r * s.v_r;
    const double lo = d.f_sq;
    const double hi = d.f_sq + 2.0 * s.c * s.c;
    auto tie = [&](double x) { return std::abs(v2 - x) <= tol * std::max(v2, std::abs(x)); };

    CaseId id;
    if (tie(hi))
        id = CaseId::Case4;
    else if (tie(lo))
        id = CaseId::Case5;
    else if (tie(d.weak_threshold_sq))
        id = CaseId::Case3;
    else if (v2 > hi)
        id = CaseId::Case1;
    else if (v2 < lo)
        id = CaseId::Case2;
    else
        id = CaseId::Case6;
    return label_for_case(s, id);
}

std::string to_string(CaseId id) {
    return "Case" + std::to_string(static_cast<int>(id) + 1);
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::StableLoss1: return "StableLoss1";
        case Regime::StableLoss2: return "StableLoss2";
        case Regime::StableLoss3: return "StableLoss3";
        case Regime::Unstable: return "Unstable";
    }
    return "Unstable";
}

CaseId parse_case_id(const std::string& text) {
    for (int k = 0; k < 6; ++k) {
        const auto id = static_cast<CaseId>(k);
        if (text == to_string(id) || text == std::to_string(k + 1)) return id;
    }
    throw Error(ErrorKind::InvalidState, "unknown case label '" + text + "'");
}

Regime parse_regime(const std::string& text) {
    for (Regime r : {Regime::StableLoss1, Regime::StableLoss2, Regime::StableLoss3, Regime::Unstable})
        if (text == to_string(r)) return r;
    throw Error(ErrorKind::InvalidState, "unknown regime '" + text + "'");
}

}  // namespace vsheet
