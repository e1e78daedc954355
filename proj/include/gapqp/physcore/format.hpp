#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gapqp {

/// Locale-independent shortest-ish decimal rendering ("%.*g"); identical
/// bytes for identical doubles on every run.
std::string format_number(double value, int significant = 12);

/// 64-bit FNV-1a digest, rendered as 16 hex digits by hex_digest.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex_digest(std::uint64_t value);

}  // namespace gapqp
