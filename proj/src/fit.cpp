#include "vsheet/fit.hpp"

#include <cmath>
#include <string>

#include "vsheet/errors.hpp"

namespace vsheet {

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double floor,
                     double max_residual) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(x[i] > 0.0) || !std::isfinite(y[i]) || !(y[i] >= floor) || !(y[i] > 0.0)) continue;
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const int n = static_cast<int>(lx.size());
    if (n < 3)
        throw Error(ErrorKind::FitDiverged, "only " + std::to_string(n) + " points above floor");
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    LogLogFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (int i = 0; i < n; ++i) {
        const double r = ly[i] - (f.intercept + f.slope * lx[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    f.used = n;
    if (!(f.residual <= max_residual))
        throw Error(ErrorKind::FitDiverged, "log-log residual " + std::to_string(f.residual));
    return f;
}

std::vector<double> log_space(double lo, double hi, int n) {
    std::vector<double> out(n);
    const double a = std::log10(lo), b = std::log10(hi);
    for (int i = 0; i < n; ++i)
        out[i] = n == 1 ? lo : std::pow(10.0, a + (b - a) * i / (n - 1));
    return out;
}

}  // namespace vsheet
