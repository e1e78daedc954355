#pragma once

#include "gapqp/fitting/coherence_models.hpp"
#include "gapqp/fitting/data_series.hpp"

#include <cstdint>
#include <vector>

namespace gapqp {

/// n temperatures evenly spaced on [lo, hi].
std::vector<double> temperature_grid(double lo_K, double hi_K, std::size_t n);

/// T1 data from the model with multiplicative Gaussian noise of relative size
/// rel_noise; the reported sigma is rel_noise times the noiseless value.
DataSeries synthesize_t1(const T1ModelParams& model, const std::vector<double>& temperatures_K,
                         double rel_noise, std::uint64_t seed);

/// T2* data from t2star_rate, same noise convention.
DataSeries synthesize_t2(const T2Settings& settings, const T1Function& t1, double n0,
                         double gamma_offset_per_s, const std::vector<double>& temperatures_K,
                         double rel_noise, std::uint64_t seed);

}  // namespace gapqp
