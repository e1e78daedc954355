#pragma once

#include <cstdint>
#include <random>

namespace gapqp {

/// Seed of trajectory `index` derived from a master seed (splitmix64 mix), so
/// ensemble members are independent of scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Portable random source: the variates are computed here from raw 64-bit
/// mt19937_64 output instead of through std distributions, whose algorithms
/// differ between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1].
    double uniform_positive() { return 1.0 - uniform(); }
    double exponential(double rate);
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace gapqp
