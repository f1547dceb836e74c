#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsheet/background.hpp"
#include "vsheet/bvp.hpp"
#include "vsheet/freq.hpp"
#include "vsheet/lopatinskii.hpp"
#include "vsheet/verify.hpp"

namespace vsheet {

using json = nlohmann::json;

// %.17g, with "nan", "inf", "-inf" for the non-finite values.
std::string format_double(double x);
// Whole-string parse; throws std::invalid_argument.
double parse_double(const std::string& text);
// Complex values in one CSV cell: "re;im".
std::string format_complex_cell(cplx z);
cplx parse_complex_cell(const std::string& text);

// Bitwise equality with NaN == NaN; what a lossless round-trip must preserve.
bool same_double(double a, double b);

// Sweep CSV -------------------------------------------------------------------

inline constexpr const char* kSweepHeader = "v,f11,f12,c,case_id,regime,v1_sq,weak_threshold_sq";

struct SweepRow {
    double v, f11, f12, c;
    CaseId case_id;
    Regime regime;
    double v1_sq, weak_threshold_sq;
};

bool same(const SweepRow& a, const SweepRow& b);
SweepRow sweep_row(const BackgroundState& s, double case_tol, std::optional<CaseId> forced = {});
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& is);  // std::invalid_argument on bad input

// Probe CSV -------------------------------------------------------------------

inline constexpr const char* kProbeHeader = "gamma,sigma_min,wnc0_norm";

// Data rows, then "# key=value" footer lines.
struct ProbeTable {
    double theta = 0.0;
    int eta_sign = 1;
    std::vector<ProbeSample> samples;
    double j_sigma = 0.0;
    double j_wnc = 0.0;
    double sigma_fit_residual = 0.0;
    double wnc_fit_residual = 0.0;
};

bool same(const ProbeTable& a, const ProbeTable& b);
ProbeTable probe_table(const ProbeResult& r, double theta, int eta_sign);
void write_probe_csv(std::ostream& os, const ProbeTable& t);
ProbeTable read_probe_csv(std::istream& is);

// Analyze report (JSON) -------------------------------------------------------

struct AnalyzeReport {
    std::string model;
    std::vector<std::pair<std::string, double>> state;  // model parameters, sorted by name
    std::optional<CaseId> case_id;
    std::optional<Regime> regime;
    std::optional<DerivedConstants> derived;
    std::vector<RootRecord> roots;
    std::vector<RootRecord> unexpected;
    std::vector<std::string> mismatches;
    std::optional<double> witness_abs_delta;
    std::size_t check_samples = 0;
    std::uint64_t seed = 0;
    double factorization_max_relerr = 0.0;  // NaN without a factored form
    double prop41_min_abs = 0.0;            // NaN for MHD
    double triangularization_max_resid = 0.0;
};

bool same(const AnalyzeReport& a, const AnalyzeReport& b);
json to_json(const AnalyzeReport& r);
AnalyzeReport analyze_report_from_json(const json& j);
void write_roots_csv(std::ostream& os, const AnalyzeReport& r);

// Verify summary (JSON or CSV) ------------------------------------------------

struct VerifySummary {
    std::string model;
    std::vector<std::pair<std::string, double>> state;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<InvariantResult> invariants;
    bool all_pass = false;
};

bool same(const VerifySummary& a, const VerifySummary& b);
json to_json(const VerifySummary& s);
VerifySummary verify_summary_from_json(const json& j);

inline constexpr const char* kVerifyHeader = "name,samples,worst_value,relation,threshold,pass";
void write_verify_csv(std::ostream& os, const VerifySummary& s);
std::vector<InvariantResult> read_verify_csv(std::istream& is);

// Serializes with 2-space indent and a trailing newline.
std::string dump(const json& j);

}  // namespace vsheet
