#pragma once

#include <cmath>

namespace nbz::detail {

// Round half to even, as std::nearbyint under the default rounding mode, but
// inline: adding and removing 1.5 * 2^52 leaves no fraction bits to keep.
// Baseline x86-64 has no rounding instruction, so nearbyint is a libm call.
inline double round_half_even(double x) noexcept {
  if (!(std::fabs(x) < 0x1p51)) return std::nearbyint(x);
  constexpr double kMagic = 0x1.8p52;
  return (x + kMagic) - kMagic;
}

}  // namespace nbz::detail
