#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gapqp {

enum class Parity { even, odd };

Parity flipped(Parity p);

/// Rates driving the frequency noise of a charge-sensitive transmon.
struct NoiseModel {
    double gamma_parity_per_s = 0.0;
    double tls_rate_per_s = 1.0 / 180.0;
    /// Offset-charge jumps are uniform on (0, jump_max) e, reduced mod 1.
    double jump_max = 1.0;

    void validate() const;
};

/// Charge-parity telegraph signal with exponential waiting times.
struct ParityTrace {
    std::vector<double> event_times;  // strictly increasing, within [0, duration)
    Parity initial = Parity::even;
    double duration_s = 0.0;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t switches() const { return event_times.size(); }
    [[nodiscard]] Parity parity_at(double t) const;
};

/// Throws DomainError for duration <= 0 or a negative rate. gamma = 0 gives
/// no events. The initial parity is drawn from the same stream.
ParityTrace simulate_parity(double gamma_per_s, double duration_s, std::uint64_t seed);

/// Piecewise-constant offset charge ng(t) in [0, 1).
struct OffsetChargeTrace {
    double initial_ng = 0.0;
    std::vector<double> jump_times;
    std::vector<double> values;  // ng after each jump
    double duration_s = 0.0;
    std::uint64_t seed = 0;

    [[nodiscard]] double ng_at(double t) const;
};

/// Poisson TLS jumps at model.tls_rate_per_s; ng <- (ng + u) mod 1 at each.
OffsetChargeTrace simulate_offset_charge(const NoiseModel& model, double duration_s,
                                         std::uint64_t seed, double initial_ng = 0.0);

}  // namespace gapqp
