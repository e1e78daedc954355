#include "gapqp/dynamics/telegraph.hpp"

#include "gapqp/dynamics/rng.hpp"
#include "gapqp/physcore/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gapqp {

Parity flipped(Parity p) {
    return p == Parity::even ? Parity::odd : Parity::even;
}

void NoiseModel::validate() const {
    if (!(gamma_parity_per_s >= 0.0) || !std::isfinite(gamma_parity_per_s)) {
        throw DomainError("parity rate must be finite and non-negative");
    }
    if (!(tls_rate_per_s >= 0.0) || !std::isfinite(tls_rate_per_s)) {
        throw DomainError("TLS jump rate must be finite and non-negative");
    }
    if (!(jump_max > 0.0 && jump_max <= 1.0)) {
        throw DomainError("jump_max must lie in (0, 1]");
    }
}

namespace {

void check_duration(double duration_s) {
    if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
        throw DomainError("duration must be positive, got " + std::to_string(duration_s));
    }
}

std::vector<double> poisson_times(Rng& rng, double rate, double duration_s) {
    std::vector<double> times;
    if (rate == 0.0) {
        return times;
    }
    for (double t = rng.exponential(rate); t < duration_s; t += rng.exponential(rate)) {
        times.push_back(t);
    }
    return times;
}

double wrap_unit(double ng) {
    ng -= std::floor(ng);
    return ng >= 1.0 ? 0.0 : ng;
}

}  // namespace

Parity ParityTrace::parity_at(double t) const {
    const auto n = std::upper_bound(event_times.begin(), event_times.end(), t) - event_times.begin();
    return n % 2 == 0 ? initial : flipped(initial);
}

ParityTrace simulate_parity(double gamma_per_s, double duration_s, std::uint64_t seed) {
    check_duration(duration_s);
    if (!(gamma_per_s >= 0.0) || !std::isfinite(gamma_per_s)) {
        throw DomainError("parity rate must be finite and non-negative");
    }
    Rng rng(seed);
    ParityTrace trace;
    trace.seed = seed;
    trace.duration_s = duration_s;
    trace.initial = rng.uniform() < 0.5 ? Parity::even : Parity::odd;
    trace.event_times = poisson_times(rng, gamma_per_s, duration_s);
    return trace;
}

double OffsetChargeTrace::ng_at(double t) const {
    const auto n = std::upper_bound(jump_times.begin(), jump_times.end(), t) - jump_times.begin();
    return n == 0 ? initial_ng : values[std::size_t(n) - 1];
}

OffsetChargeTrace simulate_offset_charge(const NoiseModel& model, double duration_s,
                                         std::uint64_t seed, double initial_ng) {
    model.validate();
    check_duration(duration_s);
    Rng rng(seed);
    OffsetChargeTrace trace;
    trace.seed = seed;
    trace.duration_s = duration_s;
    trace.initial_ng = wrap_unit(initial_ng);
    trace.jump_times = poisson_times(rng, model.tls_rate_per_s, duration_s);
    double ng = trace.initial_ng;
    trace.values.reserve(trace.jump_times.size());
    for (std::size_t i = 0; i < trace.jump_times.size(); ++i) {
        ng = wrap_unit(ng + rng.uniform() * model.jump_max);
        trace.values.push_back(ng);
    }
    return trace;
}

}  // namespace gapqp
