// Serial reference vs OpenMP map over Σ samples; checks the results are bit-identical.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "vsheet/kernels.hpp"
#include "vsheet/lopatinskii.hpp"
#include "vsheet/sampling.hpp"

using namespace vsheet;

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool identical(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
    const int workers = argc > 2 ? std::atoi(argv[2]) : default_workers();
    const ElasticModel m(validate_state(1.0, 1.5, 1.0, 0.0, 1.0, false));
    const auto pts = sample_sigma(n, 1, m.sigma_weight(), 1e-3);

    struct Kernel {
        const char* name;
        double (*f)(const Model&, const FrequencyPoint&);
    };
    const Kernel kernels[] = {{"factorization", metric_factorization},
                              {"triangularization", metric_triangularization},
                              {"eigen_residual", metric_eigen_residual}};
    bool all_same = true;
    std::printf("samples %zu, workers %d\n", n, workers);
    for (const Kernel& k : kernels) {
        auto f = [&](std::size_t i) { return k.f(m, pts[i]); };
        std::vector<double> s, p;
        const double ts = seconds([&] { s = serial_map(n, f); });
        const double tp = seconds([&] { p = parallel_map(n, workers, f); });
        const bool same = identical(s, p);
        all_same = all_same && same;
        std::printf("%-18s serial %8.4f s  parallel %8.4f s  speedup %5.2fx  %s\n", k.name, ts, tp, ts / tp,
                    same ? "identical" : "MISMATCH");
    }
    return all_same ? 0 : 1;
}
