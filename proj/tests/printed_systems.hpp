#pragma once

// Reference coefficient systems, transcribed term by term so generated
// systems can be compared against them.

#include <map>
#include <utility>

#include "cnoidal/cn_algebra.hpp"

namespace cnoidal::printed {

inline RationalPoly V(Var v) { return RationalPoly::variable(v); }

inline const RationalPoly a = V(vars::a), b = V(vars::b), c = V(vars::c), d = V(vars::d);
inline const RationalPoly L = V(vars::lambda), M = V(vars::m), S = V(vars::sigma);
inline const RationalPoly j_0 = V(vars::j(0)), j_1 = V(vars::j(1)), j_2 = V(vars::j(2)), j_3 = V(vars::j(3)), j_4 = V(vars::j(4));
inline const RationalPoly k_0 = V(vars::k(0)), k_1 = V(vars::k(1)), k_2 = V(vars::k(2));
inline const RationalPoly L2 = L * L, M2 = M * M;

// The printed (2,2) system, term by term.
inline std::map<std::pair<int, int>, RationalPoly> printed_system_22() {
  return {
      {{1, 3}, -24 * b * L2 * M2 * S * j_2 - 24 * a * L2 * M2 * k_2 + 4 * j_2 * k_2},
      {{1, 2}, -6 * b * L2 * M2 * S * j_1 - 6 * a * L2 * M2 * k_1 + 3 * j_1 * k_2 + 3 * j_2 * k_1},
      {{1, 1}, 16 * b * L2 * M2 * S * j_2 + 16 * a * L2 * M2 * k_2 - 8 * b * L2 * S * j_2 - 8 * a * L2 * k_2 -
                   2 * S * j_2 + 2 * j_0 * k_2 + 2 * j_1 * k_1 + 2 * j_2 * k_0 + 2 * k_2},
      {{1, 0}, 2 * b * L2 * M2 * S * j_1 + 2 * a * L2 * M2 * k_1 - b * L2 * S * j_1 - a * L2 * k_1 - S * j_1 +
                   j_0 * k_1 + j_1 * k_0 + k_1},
      {{2, 3}, -24 * d * L2 * M2 * S * k_2 - 24 * c * L2 * M2 * j_2 + 2 * k_2 * k_2},
      {{2, 2}, -6 * d * L2 * M2 * S * k_1 - 6 * c * L2 * M2 * j_1 + 3 * k_1 * k_2},
      {{2, 1}, 16 * d * L2 * M2 * S * k_2 + 16 * c * L2 * M2 * j_2 - 8 * d * L2 * S * k_2 - 8 * c * L2 * j_2 -
                   2 * S * k_2 + 2 * k_0 * k_2 + k_1 * k_1 + 2 * j_2},
      {{2, 0}, 2 * d * L2 * M2 * S * k_1 + 2 * c * L2 * M2 * j_1 - d * L2 * S * k_1 - c * L2 * j_1 - S * k_1 +
                   k_0 * k_1 + j_1},
  };
}

// The printed c = 0, (4,2) system. The last term of h[1,0] is printed as
// sigma k_1^2 k_2; it is kept verbatim here so the mismatch stays visible.
inline std::map<std::pair<int, int>, RationalPoly> printed_system_42_c0() {
  return {
      {{1, 5}, -6 * j_4 * (20 * b * L2 * M2 * S - k_2)},
      {{1, 4}, -60 * b * L2 * M2 * S * j_3 + 5 * j_3 * k_2 + 5 * j_4 * k_1},
      {{1, 3}, -24 * b * L2 * M2 * S * j_2 + 128 * b * L2 * M2 * S * j_4 - 24 * a * L2 * M2 * k_2 - 64 * b * L2 * S * j_4 -
                   4 * S * j_4 + 4 * j_2 * k_2 + 4 * j_3 * k_1 + 4 * j_4 * k_0},
      {{1, 2}, -6 * b * L2 * M2 * S * j_1 + 54 * b * L2 * M2 * S * j_3 - 6 * a * L2 * M2 * k_1 - 27 * b * L2 * S * j_3 -
                   3 * S * j_3 + 3 * j_1 * k_2 + 3 * j_2 * k_1 + 3 * j_3 * k_0},
      {{1, 1}, 16 * b * L2 * M2 * S * j_2 - 24 * b * L2 * M2 * S * j_4 + 16 * a * L2 * M2 * k_2 - 8 * b * L2 * S * j_2 +
                   24 * b * L2 * S * j_4 - 8 * a * L2 * k_2 - 2 * S * j_2 + 2 * j_0 * k_2 + 2 * j_1 * k_1 + 2 * j_2 * k_0 +
                   2 * k_2},
      {{1, 0}, 2 * b * L2 * M2 * S * j_1 - 6 * b * L2 * M2 * S * j_3 + 2 * a * L2 * M2 * k_1 - b * L2 * S * j_1 +
                   6 * b * L2 * S * j_3 - a * L2 * k_1 - S * j_1 + j_0 * k_1 + j_1 * k_0 + S * k_1 * k_1 * k_2},
      {{2, 3}, -24 * d * L2 * M2 * S * k_2 + 2 * k_2 * k_2 + 4 * j_4},
      {{2, 2}, -6 * d * L2 * M2 * S * k_1 + 3 * k_1 * k_2 + 3 * j_3},
      {{2, 1}, 16 * d * L2 * M2 * S * k_2 - 8 * d * L2 * S * k_2 - 2 * S * k_2 + 2 * k_0 * k_2 + k_1 * k_1 + 2 * j_2},
      {{2, 0}, 2 * d * L2 * M2 * S * k_1 - d * L2 * S * k_1 - S * k_1 + k_0 * k_1 + j_1},
  };
}

}  // namespace cnoidal::printed
