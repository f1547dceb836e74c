#pragma once

#include <vector>

namespace vsheet {

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;  // log of the prefactor
    double residual = 0.0;   // RMS deviation in natural-log units
    int used = 0;
};

// Unweighted least squares of log y on log x. Points with y below floor (or
// non-finite) are dropped; fewer than 3 survivors or residual > max_residual
// raises FitDiverged.
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y,
                     double floor = 1e-14, double max_residual = 0.05);

std::vector<double> log_space(double lo, double hi, int n);

}  // namespace vsheet
