#pragma once

#include <cstdio>
#include <string>

namespace torsionlab {

// Floating-point text at 17 significant digits (bit-faithful round trips).
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace torsionlab
