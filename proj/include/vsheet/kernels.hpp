#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <type_traits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vsheet/freq.hpp"
#include "vsheet/models.hpp"

namespace vsheet {

int default_workers();

// Reference implementation: plain loop, index order.
template <class F>
auto serial_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    std::vector<std::invoke_result_t<F&, std::size_t>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
}

// Same result as serial_map for pure f, computed with `workers` OpenMP threads.
// Results are written by index so order never depends on scheduling. The
// first exception by index is rethrown after the region.
template <class F>
auto parallel_map(std::size_t n, int workers, F&& f)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    if (workers <= 1 || n < 2) return serial_map(n, f);
    std::vector<std::invoke_result_t<F&, std::size_t>> out(n);
    std::vector<std::exception_ptr> errs(n);
    const long long nn = static_cast<long long>(n);
#pragma omp parallel for num_threads(workers) schedule(static)
    for (long long i = 0; i < nn; ++i) {
        try {
            out[i] = f(static_cast<std::size_t>(i));
        } catch (...) {
            errs[i] = std::current_exception();
        }
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

struct SampleStat {
    double worst = 0.0;
    std::size_t worst_index = 0;
    std::size_t n = 0;
};

// NaN counts as the worst possible value in both directions.
SampleStat reduce_max(const std::vector<double>& xs);
SampleStat reduce_min(const std::vector<double>& xs);

// Per-point metrics used by the invariant suites. Each takes a Σ point.
double metric_factorization(const Model& m, const FrequencyPoint& fp);
double metric_eigen_residual(const Model& m, const FrequencyPoint& fp);
double metric_e_minus_min_norm(const Model& m, const FrequencyPoint& fp);
double metric_dispersion(const Model& m, const FrequencyPoint& fp);
double metric_max_re_omega(const Model& m, const FrequencyPoint& fp);
double metric_triangularization(const Model& m, const FrequencyPoint& fp);
double metric_triangular_diagonal(const Model& m, const FrequencyPoint& fp);
double metric_pivot_neighbourhood(const Model& m, const FrequencyPoint& fp, double step);
double metric_symbol_crosscheck(const BackgroundState& s, const FrequencyPoint& fp);
double metric_prop41(const BackgroundState& s, Side side, const FrequencyPoint& fp);
double metric_qb_shape(const BackgroundState& s, const FrequencyPoint& fp);
double metric_qm_displayed(const BackgroundState& s, const FrequencyPoint& fp);
double metric_theta_abs(const BackgroundState& s, const FrequencyPoint& fp);
double metric_omega_homogeneity(const BackgroundState& s, const FrequencyPoint& fp);

// Evaluate metric over points with the chosen map and reduce.
template <class Metric>
SampleStat sweep_max(const std::vector<FrequencyPoint>& pts, int workers, Metric&& metric) {
    return reduce_max(parallel_map(pts.size(), workers, [&](std::size_t i) { return metric(pts[i]); }));
}

template <class Metric>
SampleStat sweep_min(const std::vector<FrequencyPoint>& pts, int workers, Metric&& metric) {
    return reduce_min(parallel_map(pts.size(), workers, [&](std::size_t i) { return metric(pts[i]); }));
}

}  // namespace vsheet
