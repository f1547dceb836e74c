#include "vsheet/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "vsheet/bvp.hpp"
#include "vsheet/errors.hpp"
#include "vsheet/io.hpp"
#include "vsheet/kernels.hpp"
#include "vsheet/lopatinskii.hpp"
#include "vsheet/modes.hpp"
#include "vsheet/sampling.hpp"
#include "vsheet/verify.hpp"

namespace vsheet {

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::string cur;
        std::istringstream is(text);
        while (std::getline(is, cur, ':')) parts.push_back(cur);
        if (parts.size() != 3) throw std::invalid_argument("grid range must be a:b:step, got '" + text + "'");
        const double a = parse_double(parts[0]), b = parse_double(parts[1]), step = parse_double(parts[2]);
        if (!(step > 0.0) || !std::isfinite(a) || !std::isfinite(b) || b < a)
            throw std::invalid_argument("grid range needs a <= b and step > 0: '" + text + "'");
        // Count first, then a + k·step, so rounding never accumulates.
        const auto n = static_cast<long long>(std::floor((b - a) / step + 1e-9)) + 1;
        if (n > 100000000) throw std::invalid_argument("grid too large: '" + text + "'");
        for (long long k = 0; k < n; ++k) out.push_back(a + static_cast<double>(k) * step);
        return out;
    }
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, ',')) out.push_back(parse_double(cur));
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Settings {
    std::string model = "elastic";
    double rho = 1.0, v = 2.0, f11 = 1.0, f12 = 0.0, c = 1.0, h2 = 1.0;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    double gamma_min = 1e-3;
    std::string out;
    std::string format;
    bool strict_state = false;
    int workers = 0;
    double tolerance = std::numeric_limits<double>::quiet_NaN();
    std::string case_id;
    double case_tol = kDefaultCaseTol;
    std::string v_grid, f11_grid, f12_grid, c_grid;
    std::string root = "v";
    double gamma_lo = 1e-6, gamma_hi = 1e-2;
    int gamma_points = 17;
    int eta_sign = 1;
    std::string h = "0.70710678118654752;0,0.70710678118654752;0";
    std::set<std::string> given;  // keys set by a flag or the config file
};

// One option that can come from a flag or from the --config file; flags win.
struct Binding {
    std::string key;
    CLI::Option* opt;
    std::function<void(Settings&, const json&)> from_json;
    std::function<void(Settings&)> from_flag;
};

class Options {
public:
    Options(CLI::App* app, Settings& flags) : app_(app), flags_(flags) {}

    template <class T>
    Options& add(const std::string& name, T Settings::*field, const std::string& desc) {
        CLI::Option* o = app_->add_option("--" + name, flags_.*field, desc);
        push(name, o, field);
        return *this;
    }

    Options& flag(const std::string& name, bool Settings::*field, const std::string& desc) {
        CLI::Option* o = app_->add_flag("--" + name, flags_.*field, desc);
        push(name, o, field);
        return *this;
    }

    const std::vector<Binding>& bindings() const { return bs_; }

private:
    template <class T>
    void push(const std::string& name, CLI::Option* o, T Settings::*field) {
        std::string key = name;
        for (char& ch : key)
            if (ch == '-') ch = '_';
        Settings& flags = flags_;
        bs_.push_back({key, o, [field](Settings& s, const json& j) { s.*field = j.get<T>(); },
                       [field, &flags](Settings& s) { s.*field = flags.*field; }});
    }

    CLI::App* app_;
    Settings& flags_;
    std::vector<Binding> bs_;
};

void add_common(Options& o) {
    o.add("model", &Settings::model, "elastic | euler | mhd")
        .add("rho", &Settings::rho, "density")
        .add("v", &Settings::v, "right tangential velocity (v2 for mhd)")
        .add("f11", &Settings::f11, "F11 on the right side (elastic)")
        .add("f12", &Settings::f12, "F12 on the right side (elastic)")
        .add("c", &Settings::c, "sound speed")
        .add("h2", &Settings::h2, "H2 on the right side (mhd)")
        .add("samples", &Settings::samples, "Sigma sample count")
        .add("seed", &Settings::seed, "RNG seed (fallback: VSHEET_SEED, then 1)")
        .add("gamma-min", &Settings::gamma_min, "lower bound on Re tau for Sigma samples")
        .add("out", &Settings::out, "output file (default: stdout)")
        .add("format", &Settings::format, "json | csv")
        .flag("strict-state", &Settings::strict_state, "require F11 != 0 and F12 != 0")
        .add("workers", &Settings::workers, "OpenMP workers (0: all available)")
        .add("tolerance", &Settings::tolerance, "override every positive \"<=\" threshold (verify)")
        .add("case", &Settings::case_id, "force the case label (Case1..Case6 or 1..6)")
        .add("case-tol", &Settings::case_tol, "relative tolerance on the equality cases");
}

std::unique_ptr<Model> make_model(const Settings& s) {
    switch (parse_model_kind(s.model)) {
        case ModelKind::Elastic: {
            std::optional<CaseId> forced;
            if (!s.case_id.empty()) forced = parse_case_id(s.case_id);
            return std::make_unique<ElasticModel>(validate_state(s.rho, s.v, s.f11, s.f12, s.c, s.strict_state),
                                                  s.case_tol, forced);
        }
        case ModelKind::Euler:
            if (!s.case_id.empty()) throw std::invalid_argument("--case applies to the elastic model only");
            return std::make_unique<EulerModel>(EulerParams{s.rho, s.v, s.c}, s.case_tol);
        case ModelKind::Mhd:
            if (!s.case_id.empty()) throw std::invalid_argument("--case applies to the elastic model only");
            return std::make_unique<MhdModel>(MhdParams{s.rho, s.v, s.h2, s.c});
    }
    throw std::invalid_argument("unknown model");
}

std::vector<std::pair<std::string, double>> state_params(const Model& m) {
    if (auto e = dynamic_cast<const ElasticModel*>(&m)) {
        const BackgroundState& s = e->state();
        return {{"c", s.c}, {"f11", s.f11_r}, {"f12", s.f12_r}, {"rho", s.rho}, {"v", s.v_r}};
    }
    if (auto e = dynamic_cast<const EulerModel*>(&m))
        return {{"c", e->params().c}, {"rho", e->params().rho}, {"v", e->params().v_r}};
    const auto& p = dynamic_cast<const MhdModel&>(m).params();
    return {{"c", p.c}, {"c_a", p.c_a()}, {"h2", p.h2_r}, {"lambda", p.lambda()}, {"rho", p.rho}, {"v", p.v2_r}};
}

// State whose nondegeneracy quantity applies: the elastic state, or F = 0 for Euler.
std::optional<BackgroundState> prop41_state(const Model& m) {
    if (auto e = dynamic_cast<const ElasticModel*>(&m)) return e->state();
    if (auto e = dynamic_cast<const EulerModel*>(&m))
        return validate_state(e->params().rho, e->params().v_r, 0.0, 0.0, e->params().c, false);
    return std::nullopt;
}

std::string require_format(const Settings& s, const std::string& fallback,
                           std::initializer_list<const char*> allowed) {
    const std::string f = s.format.empty() ? fallback : s.format;
    for (const char* a : allowed)
        if (f == a) return f;
    throw std::invalid_argument("unsupported --format '" + f + "' for this command");
}

int cmd_analyze(const Settings& s, std::string& text) {
    const auto m = make_model(s);
    const std::string fmt = require_format(s, "json", {"json", "csv"});
    VerdictConfig vc;
    vc.scan.workers = s.workers;
    const Verdict vd = stability_verdict(*m, vc);

    AnalyzeReport r;
    r.model = to_string(m->kind());
    r.state = state_params(*m);
    if (vd.label) {
        r.case_id = vd.label->case_id;
        r.regime = vd.label->regime;
    }
    if (auto e = dynamic_cast<const ElasticModel*>(m.get())) r.derived = derived_constants(e->state());
    if (auto st = prop41_state(*m); st && m->kind() == ModelKind::Euler) r.derived = derived_constants(*st);
    r.roots = vd.scan.roots;
    r.unexpected = vd.scan.unexpected;
    r.mismatches = vd.mismatches;
    r.witness_abs_delta = vd.witness_abs_delta;
    r.check_samples = s.samples;
    r.seed = s.seed;

    const auto pts = sample_sigma(s.samples, s.seed, m->sigma_weight(), s.gamma_min);
    r.factorization_max_relerr = kNaN;
    if (m->det_factored(m->point(1.0, 0.0, 0.0)))
        r.factorization_max_relerr =
            sweep_max(pts, s.workers, [&](const FrequencyPoint& p) { return metric_factorization(*m, p); }).worst;
    r.prop41_min_abs = kNaN;
    if (const auto st = prop41_state(*m))
        r.prop41_min_abs = sweep_min(pts, s.workers, [&](const FrequencyPoint& p) {
                               return std::min(metric_prop41(*st, Side::right, p),
                                               metric_prop41(*st, Side::left, p));
                           }).worst;
    r.triangularization_max_resid = sweep_max(pts, s.workers, [&](const FrequencyPoint& p) {
                                        return std::max(metric_triangularization(*m, p),
                                                        metric_triangular_diagonal(*m, p));
                                    }).worst;

    std::ostringstream os;
    if (fmt == "json")
        os << dump(to_json(r));
    else
        write_roots_csv(os, r);
    text = os.str();
    return vd.confident() ? kExitOk : kExitInvariant;
}

int cmd_sweep(const Settings& s, std::string& text) {
    const ModelKind kind = parse_model_kind(s.model);
    if (kind == ModelKind::Mhd) throw std::invalid_argument("sweep needs a case table (elastic or euler)");
    require_format(s, "csv", {"csv"});
    // An absent grid is the scalar value; a given but empty grid is an error.
    auto grid = [&](const char* key, const std::string& g, double scalar) {
        return s.given.count(key) ? parse_grid(g) : std::vector<double>{scalar};
    };
    const auto vs = grid("v_grid", s.v_grid, s.v), cs = grid("c_grid", s.c_grid, s.c);
    std::vector<double> f11s{0.0}, f12s{0.0};
    if (kind == ModelKind::Elastic) {
        f11s = grid("f11_grid", s.f11_grid, s.f11);
        f12s = grid("f12_grid", s.f12_grid, s.f12);
    }
    std::optional<CaseId> forced;
    if (!s.case_id.empty()) forced = parse_case_id(s.case_id);

    std::vector<BackgroundState> states;
    for (double v : vs)
        for (double f11 : f11s)
            for (double f12 : f12s)
                for (double c : cs)
                    states.push_back(validate_state(s.rho, v, f11, f12, c,
                                                    s.strict_state && kind == ModelKind::Elastic));
    const auto rows = parallel_map(states.size(), s.workers,
                                   [&](std::size_t i) { return sweep_row(states[i], s.case_tol, forced); });
    std::ostringstream os;
    write_sweep_csv(os, rows);
    text = os.str();
    return kExitOk;
}

int cmd_verify(const Settings& s, std::string& text) {
    const auto m = make_model(s);
    const std::string fmt = require_format(s, "json", {"json", "csv"});
    VerifyConfig vc;
    vc.samples = s.samples;
    vc.seed = s.seed;
    vc.gamma_min = s.gamma_min;
    vc.workers = s.workers;
    if (!std::isnan(s.tolerance)) vc.tolerance = s.tolerance;
    VerifySummary sum;
    sum.model = to_string(m->kind());
    sum.state = state_params(*m);
    sum.seed = s.seed;
    sum.samples = s.samples;
    sum.invariants = run_invariants(*m, vc);
    sum.all_pass = all_pass(sum.invariants);
    std::ostringstream os;
    if (fmt == "json")
        os << dump(to_json(sum));
    else
        write_verify_csv(os, sum);
    text = os.str();
    return sum.all_pass ? kExitOk : kExitInvariant;
}

// v, -v, 0, V1, -V1 name analytic ∂Σ candidates of the model; a number is any θ.
double resolve_root(const Model& m, const std::string& sel) {
    double want;
    const double v = m.sigma_weight();
    std::optional<double> v1;
    if (auto e = dynamic_cast<const ElasticModel*>(&m)) {
        if (const double d = derived_constants(e->state()).v1_sq; d > 0.0) v1 = std::sqrt(d);
    } else if (auto st = prop41_state(m)) {
        if (const double d = derived_constants(*st).v1_sq; d > 0.0) v1 = std::sqrt(d);
    }
    if (sel == "v") want = v;
    else if (sel == "-v") want = -v;
    else if (sel == "0") want = 0.0;
    else if (sel == "V1" || sel == "-V1") {
        if (!v1) throw std::invalid_argument("root selector '" + sel + "': V1^2 <= 0 for this state");
        want = sel == "V1" ? *v1 : -*v1;
    } else {
        try {
            return parse_double(sel);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("unknown root selector '" + sel + "' (v, -v, 0, V1, -V1 or a number)");
        }
    }
    for (const RootCandidate& c : m.root_candidates())
        if (!c.interior && std::abs(c.theta - want) <= 1e-9 * (1.0 + std::abs(want))) return c.theta;
    throw std::invalid_argument("root selector '" + sel + "' is not a root candidate for this state");
}

int cmd_probe(const Settings& s, std::string& text) {
    const auto m = make_model(s);
    require_format(s, "csv", {"csv"});
    const double theta = resolve_root(*m, s.root);
    if (!(s.gamma_lo > 0.0) || !(s.gamma_hi > s.gamma_lo) || s.gamma_points < 3)
        throw std::invalid_argument("probe needs 0 < gamma-lo < gamma-hi and gamma-points >= 3");
    if (s.eta_sign != 1 && s.eta_sign != -1) throw std::invalid_argument("--eta-sign must be 1 or -1");
    const auto cells = [&] {
        std::vector<std::string> out;
        std::string cur;
        std::istringstream is(s.h);
        while (std::getline(is, cur, ',')) out.push_back(cur);
        return out;
    }();
    if (cells.size() != 2) throw std::invalid_argument("--data needs two cells 're;im,re;im'");
    Vec2c h(parse_complex_cell(cells[0]), parse_complex_cell(cells[1]));
    if (!(h.norm() > 0.0)) throw std::invalid_argument("--data must be nonzero");
    h /= h.norm();
    const ProbeResult pr = energy_probe(*m, theta, h, log_space(s.gamma_lo, s.gamma_hi, s.gamma_points), s.eta_sign);
    std::ostringstream os;
    write_probe_csv(os, probe_table(pr, theta, s.eta_sign));
    text = os.str();
    return kExitOk;
}

void emit(const Settings& s, const std::string& text, std::ostream& out) {
    if (s.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(s.out, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + s.out + "' for writing");
    f << text;
    f.close();
    if (!f) throw IoError("write to '" + s.out + "' failed");
}

const char* kFooter =
    "Exit codes: 0 ok, 1 invariant failure or evidence mismatch, 2 bad input, 3 I/O failure.\n"
    "Complex values serialize as fields re/im (JSON) or one 're;im' cell (CSV).\n"
    "Floats are written with 17 significant digits (CSV) or as shortest round-trip (JSON).\n"
    "--config FILE takes a JSON object keyed by option name (dashes or underscores); flags win.";

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Normal-mode stability analysis of 2D compressible vortex sheets", "vsheet"};
    app.footer(kFooter);
    app.require_subcommand(1);
    std::string config_path;

    Settings flags;
    struct Sub {
        CLI::App* app;
        std::unique_ptr<Options> opts;
    };
    std::vector<Sub> subs;
    auto make_sub = [&](const char* name, const char* desc) -> Options& {
        CLI::App* a = app.add_subcommand(name, desc);
        a->add_option("--config", config_path, "JSON config file");
        subs.push_back({a, std::make_unique<Options>(a, flags)});
        add_common(*subs.back().opts);
        return *subs.back().opts;
    };
    make_sub("analyze", "case label, roots, multiplicities and checks (JSON)");
    make_sub("sweep", "case/regime map over parameter grids (CSV)")
        .add("v-grid", &Settings::v_grid, "grid over v: a:b:step or a comma list")
        .add("f11-grid", &Settings::f11_grid, "grid over F11")
        .add("f12-grid", &Settings::f12_grid, "grid over F12")
        .add("c-grid", &Settings::c_grid, "grid over c");
    make_sub("verify", "run every invariant suite (exit 1 on failure)");
    make_sub("probe", "energy scaling probe approaching a boundary root (CSV)")
        .add("root", &Settings::root, "v, -v, 0, V1, -V1 or a number theta")
        .add("gamma-lo", &Settings::gamma_lo, "smallest gamma")
        .add("gamma-hi", &Settings::gamma_hi, "largest gamma")
        .add("gamma-points", &Settings::gamma_points, "log-spaced gamma count")
        .add("eta-sign", &Settings::eta_sign, "sign of eta on the approach path")
        .add("data", &Settings::h, "boundary data h as 're;im,re;im' (normalized)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    const Sub* chosen = nullptr;
    for (const Sub& s : subs)
        if (s.app->parsed()) chosen = &s;

    Settings cfg;
    std::string text;
    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw IoError("cannot read config '" + config_path + "'");
            json j;
            try {
                j = json::parse(f);
            } catch (const json::exception& e) {
                throw std::invalid_argument(std::string("config: ") + e.what());
            }
            if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
            for (auto it = j.begin(); it != j.end(); ++it) {
                std::string key = it.key();
                for (char& ch : key)
                    if (ch == '-') ch = '_';
                const auto& bs = chosen->opts->bindings();
                const auto b = std::find_if(bs.begin(), bs.end(), [&](const Binding& x) { return x.key == key; });
                if (b == bs.end()) throw std::invalid_argument("config: unknown key '" + it.key() + "'");
                try {
                    b->from_json(cfg, it.value());
                } catch (const json::exception& e) {
                    throw std::invalid_argument("config key '" + it.key() + "': " + e.what());
                }
                cfg.given.insert(key);
            }
        }
        for (const Binding& b : chosen->opts->bindings())
            if (b.opt->count() > 0) {
                b.from_flag(cfg);
                cfg.given.insert(b.key);
            }
        if (!cfg.given.count("seed"))
            if (const char* env = std::getenv("VSHEET_SEED"); env && *env) {
                try {
                    std::size_t used = 0;
                    cfg.seed = std::stoull(env, &used);
                    if (used != std::strlen(env)) throw std::invalid_argument("trailing");
                } catch (const std::exception&) {
                    throw std::invalid_argument(std::string("VSHEET_SEED is not an integer: '") + env + "'");
                }
            }
        if (cfg.workers < 0) throw std::invalid_argument("--workers must be >= 0");
        if (cfg.workers == 0) cfg.workers = default_workers();
        if (!(cfg.gamma_min >= 0.0 && cfg.gamma_min < 1.0)) throw std::invalid_argument("--gamma-min must be in [0, 1)");
        if (cfg.samples == 0) throw std::invalid_argument("--samples must be positive");

        const std::string name = chosen->app->get_name();
        int code = kExitOk;
        if (name == "analyze") code = cmd_analyze(cfg, text);
        else if (name == "sweep") code = cmd_sweep(cfg, text);
        else if (name == "verify") code = cmd_verify(cfg, text);
        else code = cmd_probe(cfg, text);
        emit(cfg, text, out);
        return code;
    } catch (const IoError& e) {
        err << "vsheet: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "vsheet: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::InvalidState:
            case ErrorKind::DegenerateF:
            case ErrorKind::ZeroFrequency:
            case ErrorKind::OutsideCone:
                return kExitBadInput;
            default:
                return kExitInvariant;
        }
    } catch (const std::invalid_argument& e) {
        err << "vsheet: " << e.what() << '\n';
        return kExitBadInput;
    }
}

}  // namespace vsheet
