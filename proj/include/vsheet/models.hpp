#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vsheet/background.hpp"
#include "vsheet/symbol.hpp"

namespace vsheet {

enum class ModelKind { Elastic, Euler, Mhd };

std::string to_string(ModelKind k);
ModelKind parse_model_kind(const std::string& text);

// A ∂Σ root τ = iθη the model's analytic theory allows. multiplicity == 0
// marks an allowed location that the case table does not list.
struct RootCandidate {
    double theta;
    int multiplicity;
    bool interior;
};

// Everything the Lopatinskii / modes / bvp pipeline needs from a physical model.
class Model {
public:
    virtual ~Model() = default;

    virtual ModelKind kind() const = 0;
    virtual double sigma_weight() const = 0;
    virtual SideSymbol side_symbol(Side side, const FrequencyPoint& fp) const = 0;
    virtual Mat4c reduced_symbol(const FrequencyPoint& fp) const = 0;  // SymbolPole at poles
    virtual Mat24c beta(const FrequencyPoint& fp) const = 0;          // at the Σ-normalized point

    // Closed product form of the Lopatinskii determinant, when the model has one.
    virtual std::optional<cplx> det_factored(const FrequencyPoint&) const { return std::nullopt; }
    virtual std::optional<CaseLabel> case_label() const { return std::nullopt; }
    virtual std::vector<RootCandidate> root_candidates() const { return {}; }

    // θ where the ∂Σ restriction of ω stops being analytic (p = 0 or ω² singular).
    virtual std::vector<double> branch_points() const = 0;
    virtual double scan_half_width() const = 0;

    EigenData eigen_data(const FrequencyPoint& fp) const {
        return assemble_eigen_data(side_symbol(Side::right, fp), side_symbol(Side::left, fp));
    }
    FrequencyPoint normalize(const FrequencyPoint& fp) const;
    FrequencyPoint point(double gamma, double delta, double eta) const {
        return {gamma, delta, eta, sigma_weight()};
    }
};

class ElasticModel final : public Model {
public:
    explicit ElasticModel(BackgroundState s, double case_tol = kDefaultCaseTol,
                          std::optional<CaseId> forced = std::nullopt)
        : s_(s), case_tol_(case_tol), forced_(forced) {}

    const BackgroundState& state() const { return s_; }

    ModelKind kind() const override { return ModelKind::Elastic; }
    double sigma_weight() const override { return s_.v_r; }
    SideSymbol side_symbol(Side side, const FrequencyPoint& fp) const override;
    Mat4c reduced_symbol(const FrequencyPoint& fp) const override;
    Mat24c beta(const FrequencyPoint& fp) const override;
    std::optional<cplx> det_factored(const FrequencyPoint& fp) const override;
    std::optional<CaseLabel> case_label() const override;
    std::vector<RootCandidate> root_candidates() const override;
    std::vector<double> branch_points() const override;
    double scan_half_width() const override;

private:
    BackgroundState s_;
    double case_tol_;
    std::optional<CaseId> forced_;
};

struct EulerParams {
    double rho = 1.0;
    double v_r = 2.0;
    double c = 1.0;
};

class EulerModel final : public Model {
public:
    explicit EulerModel(EulerParams p, double case_tol = kDefaultCaseTol);

    const EulerParams& params() const { return p_; }

    ModelKind kind() const override { return ModelKind::Euler; }
    double sigma_weight() const override { return p_.v_r; }
    SideSymbol side_symbol(Side side, const FrequencyPoint& fp) const override;
    Mat4c reduced_symbol(const FrequencyPoint& fp) const override;
    Mat24c beta(const FrequencyPoint& fp) const override;
    std::optional<cplx> det_factored(const FrequencyPoint& fp) const override;
    std::optional<CaseLabel> case_label() const override;
    std::vector<RootCandidate> root_candidates() const override;
    std::vector<double> branch_points() const override;
    double scan_half_width() const override;

private:
    EulerParams p_;
    double case_tol_;
};

struct MhdParams {
    double rho = 1.0;
    double v2_r = 1.0;
    double h2_r = 1.0;
    double c = 1.0;

    double c_a() const;
    double lambda() const;
};

class MhdModel final : public Model {
public:
    explicit MhdModel(MhdParams p);

    const MhdParams& params() const { return p_; }

    ModelKind kind() const override { return ModelKind::Mhd; }
    double sigma_weight() const override { return p_.v2_r; }
    SideSymbol side_symbol(Side side, const FrequencyPoint& fp) const override;
    Mat4c reduced_symbol(const FrequencyPoint& fp) const override;
    Mat24c beta(const FrequencyPoint& fp) const override;
    std::vector<double> branch_points() const override;
    double scan_half_width() const override;

    // m, n of one side, with their 1/S and 1/L poles (SymbolPole there).
    void symbol_entries(Side side, const FrequencyPoint& fp, cplx& n, cplx& m) const;
    // ω² = n² − m² in cleared form.
    cplx omega_sq(Side side, const FrequencyPoint& fp) const;
    // Analytic value of αm on (τ + iv₂η)² + c_A²η² = 0, where ω = 0 and E₋ = αm·(1, 1).
    double special_set_alpha_m(double eta) const;

private:
    MhdParams p_;
    double ca_, lam_;
};

std::unique_ptr<Model> clone_model(const Model& m);

}  // namespace vsheet
