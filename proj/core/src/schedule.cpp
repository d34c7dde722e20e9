#include "ajam/schedule.hpp"

#include <algorithm>

namespace ajam {

double Ramp::at(std::int64_t slot) const {
  if (slots <= 0) return end;
  const double t = std::clamp(static_cast<double>(slot) / slots, 0.0, 1.0);
  return start + (end - start) * t;
}

}  // namespace ajam
