#include "gapqp/fitting/synthetic.hpp"

#include "gapqp/dynamics/rng.hpp"
#include "gapqp/physcore/errors.hpp"

namespace gapqp {

std::vector<double> temperature_grid(double lo_K, double hi_K, std::size_t n) {
    if (n < 2 || !(lo_K > 0.0) || !(hi_K > lo_K)) {
        throw DomainError("temperature grid needs 0 < lo < hi and at least two points");
    }
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = lo_K + (hi_K - lo_K) * double(i) / double(n - 1);
    }
    return grid;
}

namespace {

template <class Truth>
DataSeries synthesize(SeriesKind kind, const std::vector<double>& temperatures_K, double rel_noise,
                      std::uint64_t seed, Truth&& truth) {
    if (!(rel_noise >= 0.0) || rel_noise >= 0.3) {
        throw DomainError("relative noise must lie in [0, 0.3)");
    }
    Rng rng(seed);
    DataSeries series;
    series.kind = kind;
    for (double T : temperatures_K) {
        const double exact = truth(T);
        DataPoint p;
        p.T_K = T;
        p.value_s = exact * (1.0 + rel_noise * rng.normal());
        if (rel_noise > 0.0) {
            p.sigma_s = rel_noise * exact;
        }
        series.points.push_back(p);
    }
    series.validate();
    return series;
}

}  // namespace

DataSeries synthesize_t1(const T1ModelParams& model, const std::vector<double>& temperatures_K,
                         double rel_noise, std::uint64_t seed) {
    return synthesize(SeriesKind::T1, temperatures_K, rel_noise, seed,
                      [&](double T) { return model.t1_s(T); });
}

DataSeries synthesize_t2(const T2Settings& settings, const T1Function& t1, double n0,
                         double gamma_offset_per_s, const std::vector<double>& temperatures_K,
                         double rel_noise, std::uint64_t seed) {
    return synthesize(SeriesKind::T2star, temperatures_K, rel_noise, seed, [&](double T) {
        return 1.0 / t2star_rate(T, settings, t1, n0, gamma_offset_per_s);
    });
}

}  // namespace gapqp
