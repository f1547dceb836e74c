#include "vsheet/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vsheet {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(begin, &end);
    if (end != begin + text.size()) throw std::invalid_argument("not a number: '" + text + "'");
    if (errno == ERANGE && std::isinf(x)) throw std::invalid_argument("out of range: '" + text + "'");
    return x;
}

std::string format_complex_cell(cplx z) { return format_double(z.real()) + ";" + format_double(z.imag()); }

cplx parse_complex_cell(const std::string& text) {
    const auto semi = text.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("complex cell needs 're;im': '" + text + "'");
    return {parse_double(text.substr(0, semi)), parse_double(text.substr(semi + 1))};
}

bool same_double(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    return std::memcmp(&a, &b, sizeof a) == 0;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double num(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

template <class T>
json opt(const std::optional<T>& x) {
    return x ? json(*x) : json(nullptr);
}

json params(const std::vector<std::pair<std::string, double>>& p) {
    json o = json::object();
    for (const auto& [k, v] : p) o[k] = num(v);
    return o;
}

std::vector<std::pair<std::string, double>> params(const json& o) {
    std::vector<std::pair<std::string, double>> out;
    for (auto it = o.begin(); it != o.end(); ++it) out.emplace_back(it.key(), num(it.value()));
    return out;
}

bool same(const std::vector<std::pair<std::string, double>>& a,
          const std::vector<std::pair<std::string, double>>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].first != b[i].first || !same_double(a[i].second, b[i].second)) return false;
    return true;
}

json root_json(const RootRecord& r) {
    return {{"theta", num(r.theta)},
            {"multiplicity_expected", r.multiplicity_expected},
            {"interior", r.interior},
            {"matched", r.matched},
            {"candidate", num(r.candidate)},
            {"abs_delta", num(r.abs_delta)},
            {"cluster_size", r.cluster_size},
            {"slope_fitted", num(r.slope_fitted)},
            {"slope_residual", num(r.slope_residual)},
            {"kappa_fitted", num(r.kappa_fitted)},
            {"lb_exponent_fitted", num(r.lb_exponent_fitted)}};
}

RootRecord root_from(const json& j) {
    RootRecord r;
    r.theta = num(j.at("theta"));
    r.multiplicity_expected = j.at("multiplicity_expected").get<int>();
    r.interior = j.at("interior").get<bool>();
    r.matched = j.at("matched").get<bool>();
    r.candidate = num(j.at("candidate"));
    r.abs_delta = num(j.at("abs_delta"));
    r.cluster_size = j.at("cluster_size").get<int>();
    r.slope_fitted = num(j.at("slope_fitted"));
    r.slope_residual = num(j.at("slope_residual"));
    r.kappa_fitted = num(j.at("kappa_fitted"));
    r.lb_exponent_fitted = num(j.at("lb_exponent_fitted"));
    return r;
}

bool same(const RootRecord& a, const RootRecord& b) {
    return same_double(a.theta, b.theta) && a.multiplicity_expected == b.multiplicity_expected &&
           a.interior == b.interior && a.matched == b.matched && same_double(a.candidate, b.candidate) &&
           same_double(a.abs_delta, b.abs_delta) && a.cluster_size == b.cluster_size &&
           same_double(a.slope_fitted, b.slope_fitted) && same_double(a.slope_residual, b.slope_residual) &&
           same_double(a.kappa_fitted, b.kappa_fitted) &&
           same_double(a.lb_exponent_fitted, b.lb_exponent_fitted);
}

bool same(const std::vector<RootRecord>& a, const std::vector<RootRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same(a[i], b[i])) return false;
    return true;
}

bool same(const InvariantResult& a, const InvariantResult& b) {
    return a.name == b.name && a.samples == b.samples && same_double(a.worst_value, b.worst_value) &&
           same_double(a.threshold, b.threshold) && a.relation == b.relation && a.pass == b.pass;
}

}  // namespace

// Sweep -----------------------------------------------------------------------

bool same(const SweepRow& a, const SweepRow& b) {
    return same_double(a.v, b.v) && same_double(a.f11, b.f11) && same_double(a.f12, b.f12) &&
           same_double(a.c, b.c) && a.case_id == b.case_id && a.regime == b.regime &&
           same_double(a.v1_sq, b.v1_sq) && same_double(a.weak_threshold_sq, b.weak_threshold_sq);
}

SweepRow sweep_row(const BackgroundState& s, double case_tol, std::optional<CaseId> forced) {
    const CaseLabel label = forced ? label_for_case(s, *forced) : classify_case(s, case_tol);
    const DerivedConstants d = derived_constants(s);
    return {s.v_r, s.f11_r, s.f12_r, s.c, label.case_id, label.regime, d.v1_sq, d.weak_threshold_sq};
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kSweepHeader << '\n';
    for (const SweepRow& r : rows)
        os << format_double(r.v) << ',' << format_double(r.f11) << ',' << format_double(r.f12) << ','
           << format_double(r.c) << ',' << to_string(r.case_id) << ',' << to_string(r.regime) << ','
           << format_double(r.v1_sq) << ',' << format_double(r.weak_threshold_sq) << '\n';
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("sweep CSV: missing header");
    strip_cr(line);
    if (line != kSweepHeader) throw std::invalid_argument("sweep CSV: unexpected header '" + line + "'");
    std::vector<SweepRow> rows;
    while (std::getline(is, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 8) throw std::invalid_argument("sweep CSV: expected 8 fields: '" + line + "'");
        rows.push_back({parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3]),
                        parse_case_id(f[4]), parse_regime(f[5]), parse_double(f[6]), parse_double(f[7])});
    }
    return rows;
}

// Probe -----------------------------------------------------------------------

bool same(const ProbeTable& a, const ProbeTable& b) {
    if (!same_double(a.theta, b.theta) || a.eta_sign != b.eta_sign || a.samples.size() != b.samples.size() ||
        !same_double(a.j_sigma, b.j_sigma) || !same_double(a.j_wnc, b.j_wnc) ||
        !same_double(a.sigma_fit_residual, b.sigma_fit_residual) ||
        !same_double(a.wnc_fit_residual, b.wnc_fit_residual))
        return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        if (!same_double(a.samples[i].gamma, b.samples[i].gamma) ||
            !same_double(a.samples[i].sigma_min, b.samples[i].sigma_min) ||
            !same_double(a.samples[i].wnc0_norm, b.samples[i].wnc0_norm))
            return false;
    return true;
}

ProbeTable probe_table(const ProbeResult& r, double theta, int eta_sign) {
    return {theta, eta_sign, r.samples, r.j_sigma, r.j_wnc, r.sigma_fit.residual, r.wnc_fit.residual};
}

void write_probe_csv(std::ostream& os, const ProbeTable& t) {
    os << kProbeHeader << '\n';
    for (const ProbeSample& s : t.samples)
        os << format_double(s.gamma) << ',' << format_double(s.sigma_min) << ',' << format_double(s.wnc0_norm)
           << '\n';
    os << "# theta=" << format_double(t.theta) << '\n'
       << "# eta_sign=" << t.eta_sign << '\n'
       << "# j_sigma=" << format_double(t.j_sigma) << '\n'
       << "# j_wnc=" << format_double(t.j_wnc) << '\n'
       << "# sigma_fit_residual=" << format_double(t.sigma_fit_residual) << '\n'
       << "# wnc_fit_residual=" << format_double(t.wnc_fit_residual) << '\n';
}

ProbeTable read_probe_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("probe CSV: missing header");
    strip_cr(line);
    if (line != kProbeHeader) throw std::invalid_argument("probe CSV: unexpected header '" + line + "'");
    ProbeTable t;
    while (std::getline(is, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (line.rfind("# ", 0) != 0 || eq == std::string::npos)
                throw std::invalid_argument("probe CSV: bad footer '" + line + "'");
            const std::string key = line.substr(2, eq - 2), val = line.substr(eq + 1);
            if (key == "theta") t.theta = parse_double(val);
            else if (key == "eta_sign") t.eta_sign = static_cast<int>(parse_double(val));
            else if (key == "j_sigma") t.j_sigma = parse_double(val);
            else if (key == "j_wnc") t.j_wnc = parse_double(val);
            else if (key == "sigma_fit_residual") t.sigma_fit_residual = parse_double(val);
            else if (key == "wnc_fit_residual") t.wnc_fit_residual = parse_double(val);
            else throw std::invalid_argument("probe CSV: unknown footer key '" + key + "'");
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 3) throw std::invalid_argument("probe CSV: expected 3 fields: '" + line + "'");
        t.samples.push_back({parse_double(f[0]), parse_double(f[1]), parse_double(f[2])});
    }
    return t;
}

// Analyze ---------------------------------------------------------------------

bool same(const AnalyzeReport& a, const AnalyzeReport& b) {
    auto same_opt = [](const std::optional<double>& x, const std::optional<double>& y) {
        return x.has_value() == y.has_value() && (!x || same_double(*x, *y));
    };
    const bool derived_same =
        a.derived.has_value() == b.derived.has_value() &&
        (!a.derived || (same_double(a.derived->f_sq, b.derived->f_sq) &&
                        same_double(a.derived->v1_sq, b.derived->v1_sq) &&
                        same_double(a.derived->v2_sq, b.derived->v2_sq) &&
                        same_double(a.derived->weak_threshold_sq, b.derived->weak_threshold_sq)));
    return a.model == b.model && same(a.state, b.state) && a.case_id == b.case_id && a.regime == b.regime &&
           derived_same && same(a.roots, b.roots) && same(a.unexpected, b.unexpected) &&
           a.mismatches == b.mismatches && same_opt(a.witness_abs_delta, b.witness_abs_delta) &&
           a.check_samples == b.check_samples && a.seed == b.seed &&
           same_double(a.factorization_max_relerr, b.factorization_max_relerr) &&
           same_double(a.prop41_min_abs, b.prop41_min_abs) &&
           same_double(a.triangularization_max_resid, b.triangularization_max_resid);
}

json to_json(const AnalyzeReport& r) {
    json j;
    j["model"] = r.model;
    j["state"] = params(r.state);
    j["case_id"] = r.case_id ? json(to_string(*r.case_id)) : json(nullptr);
    j["regime"] = r.regime ? json(to_string(*r.regime)) : json(nullptr);
    if (r.derived)
        j["derived"] = {{"f_sq", num(r.derived->f_sq)},
                        {"v1_sq", num(r.derived->v1_sq)},
                        {"v2_sq", num(r.derived->v2_sq)},
                        {"weak_threshold_sq", num(r.derived->weak_threshold_sq)}};
    else
        j["derived"] = nullptr;
    j["roots"] = json::array();
    for (const auto& x : r.roots) j["roots"].push_back(root_json(x));
    j["unexpected_roots"] = json::array();
    for (const auto& x : r.unexpected) j["unexpected_roots"].push_back(root_json(x));
    j["verdict"] = {{"confident", r.mismatches.empty()},
                    {"mismatches", r.mismatches},
                    {"witness_abs_delta", r.witness_abs_delta ? num(*r.witness_abs_delta) : json(nullptr)}};
    j["checks"] = {{"samples", r.check_samples},
                   {"seed", r.seed},
                   {"factorization_max_relerr", num(r.factorization_max_relerr)},
                   {"prop41_min_abs", num(r.prop41_min_abs)},
                   {"triangularization_max_resid", num(r.triangularization_max_resid)}};
    return j;
}

AnalyzeReport analyze_report_from_json(const json& j) {
    AnalyzeReport r;
    r.model = j.at("model").get<std::string>();
    r.state = params(j.at("state"));
    if (!j.at("case_id").is_null()) r.case_id = parse_case_id(j.at("case_id").get<std::string>());
    if (!j.at("regime").is_null()) r.regime = parse_regime(j.at("regime").get<std::string>());
    if (const json& d = j.at("derived"); !d.is_null())
        r.derived = DerivedConstants{num(d.at("f_sq")), num(d.at("v1_sq")), num(d.at("v2_sq")),
                                     num(d.at("weak_threshold_sq"))};
    for (const auto& x : j.at("roots")) r.roots.push_back(root_from(x));
    for (const auto& x : j.at("unexpected_roots")) r.unexpected.push_back(root_from(x));
    const json& v = j.at("verdict");
    r.mismatches = v.at("mismatches").get<std::vector<std::string>>();
    if (!v.at("witness_abs_delta").is_null()) r.witness_abs_delta = num(v.at("witness_abs_delta"));
    const json& c = j.at("checks");
    r.check_samples = c.at("samples").get<std::size_t>();
    r.seed = c.at("seed").get<std::uint64_t>();
    r.factorization_max_relerr = num(c.at("factorization_max_relerr"));
    r.prop41_min_abs = num(c.at("prop41_min_abs"));
    r.triangularization_max_resid = num(c.at("triangularization_max_resid"));
    return r;
}

void write_roots_csv(std::ostream& os, const AnalyzeReport& r) {
    os << "theta,multiplicity_expected,interior,abs_delta,slope_fitted,lb_exponent_fitted,kappa_fitted\n";
    for (const auto& x : r.roots)
        os << format_double(x.theta) << ',' << x.multiplicity_expected << ',' << (x.interior ? 1 : 0) << ','
           << format_double(x.abs_delta) << ',' << format_double(x.slope_fitted) << ','
           << format_double(x.lb_exponent_fitted) << ',' << format_double(x.kappa_fitted) << '\n';
}

// Verify ----------------------------------------------------------------------

bool same(const VerifySummary& a, const VerifySummary& b) {
    if (a.model != b.model || !same(a.state, b.state) || a.seed != b.seed || a.samples != b.samples ||
        a.all_pass != b.all_pass || a.invariants.size() != b.invariants.size())
        return false;
    for (std::size_t i = 0; i < a.invariants.size(); ++i)
        if (!same(a.invariants[i], b.invariants[i])) return false;
    return true;
}

json to_json(const VerifySummary& s) {
    json j;
    j["model"] = s.model;
    j["state"] = params(s.state);
    j["seed"] = s.seed;
    j["samples"] = s.samples;
    j["all_pass"] = s.all_pass;
    j["invariants"] = json::array();
    for (const auto& r : s.invariants)
        j["invariants"].push_back({{"name", r.name},
                                   {"samples", r.samples},
                                   {"worst_value", num(r.worst_value)},
                                   {"relation", to_string(r.relation)},
                                   {"threshold", num(r.threshold)},
                                   {"pass", r.pass}});
    return j;
}

VerifySummary verify_summary_from_json(const json& j) {
    VerifySummary s;
    s.model = j.at("model").get<std::string>();
    s.state = params(j.at("state"));
    s.seed = j.at("seed").get<std::uint64_t>();
    s.samples = j.at("samples").get<std::size_t>();
    s.all_pass = j.at("all_pass").get<bool>();
    for (const auto& x : j.at("invariants"))
        s.invariants.push_back({x.at("name").get<std::string>(), x.at("samples").get<std::size_t>(),
                                num(x.at("worst_value")), num(x.at("threshold")),
                                parse_relation(x.at("relation").get<std::string>()), x.at("pass").get<bool>()});
    return s;
}

void write_verify_csv(std::ostream& os, const VerifySummary& s) {
    os << kVerifyHeader << '\n';
    for (const auto& r : s.invariants)
        os << r.name << ',' << r.samples << ',' << format_double(r.worst_value) << ',' << to_string(r.relation)
           << ',' << format_double(r.threshold) << ',' << (r.pass ? "true" : "false") << '\n';
}

std::vector<InvariantResult> read_verify_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("verify CSV: missing header");
    strip_cr(line);
    if (line != kVerifyHeader) throw std::invalid_argument("verify CSV: unexpected header '" + line + "'");
    std::vector<InvariantResult> out;
    while (std::getline(is, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 6 || (f[5] != "true" && f[5] != "false"))
            throw std::invalid_argument("verify CSV: bad row '" + line + "'");
        out.push_back({f[0], static_cast<std::size_t>(std::stoull(f[1])), parse_double(f[2]), parse_double(f[4]),
                       parse_relation(f[3]), f[5] == "true"});
    }
    return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace vsheet
