#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace ffdioph {

/// Integer logarithm of an absolute value: |a| = e^{deg a}. Absolute values
/// are never materialized as floating point; only degrees are compared.
using Degree = std::int64_t;

/// deg 0, i.e. |0| = 0.
inline constexpr Degree kNegInf = std::numeric_limits<Degree>::min();

constexpr bool is_neg_inf(Degree d) noexcept { return d == kNegInf; }

/// Sum of degrees with -inf absorbing.
constexpr Degree deg_add(Degree a, Degree b) noexcept {
    return (is_neg_inf(a) || is_neg_inf(b)) ? kNegInf : a + b;
}

inline std::string format_degree(Degree d) { return is_neg_inf(d) ? std::string("-inf") : std::to_string(d); }

}  // namespace ffdioph
