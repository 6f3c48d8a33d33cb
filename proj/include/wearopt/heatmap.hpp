#pragma once

#include <array>
#include <ostream>

#include "wearopt/csv.hpp"
#include "wearopt/dp.hpp"

namespace wearopt {

// Policy colors: blue = proceed, red = replace part 1, green = replace
// part 2, purple = replace both.
inline std::array<unsigned char, 3> action_color(Action a) {
  switch (a) {
    case Action::Proceed: return {0, 64, 255};
    case Action::Replace1: return {220, 32, 32};
    case Action::Replace2: return {32, 160, 64};
    case Action::ReplaceBoth: return {150, 40, 200};
  }
  return {0, 0, 0};
}

/// Binary portable pixmap, one pixel per state. Row k is wear d1 = k of
/// part 1 (top row is a fresh part 1); column k is wear d2 = k of part 2.
inline void write_policy_heatmap(std::ostream& os, const PolicyGrid& policy, const Provenance& p) {
  os << "P6\n";
  write_provenance(os, p);
  os << policy.cols() << " " << policy.rows() << "\n255\n";
  for (int d1 = 0; d1 < policy.rows(); ++d1)
    for (int d2 = 0; d2 < policy.cols(); ++d2) {
      const auto rgb = action_color(policy.at(d1, d2));
      os.write(reinterpret_cast<const char*>(rgb.data()), 3);
    }
}

inline void write_heatmap_legend(std::ostream& os, const Provenance& p) {
  write_provenance(os, p);
  os << "rows: part-1 deterioration d1, top row d1=0\n";
  os << "cols: part-2 deterioration d2, left column d2=0\n";
  os << "blue rgb(0,64,255): proceed without replacement\n";
  os << "red rgb(220,32,32): replace part 1\n";
  os << "green rgb(32,160,64): replace part 2\n";
  os << "purple rgb(150,40,200): replace both parts\n";
}

}  // namespace wearopt
