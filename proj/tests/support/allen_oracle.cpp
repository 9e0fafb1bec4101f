#include "support/allen_oracle.hpp"

namespace timelink::testing {

AllenBase relate_endpoints(int a0, int a1, int b0, int b1) {
  if (a1 < b0) return AllenBase::Before;
  if (b1 < a0) return AllenBase::After;
  if (a1 == b0) return AllenBase::Meets;
  if (b1 == a0) return AllenBase::MetBy;
  if (a0 == b0 && a1 == b1) return AllenBase::Equals;
  if (a0 == b0) return a1 < b1 ? AllenBase::Starts : AllenBase::StartedBy;
  if (a1 == b1) return a0 > b0 ? AllenBase::Finishes : AllenBase::FinishedBy;
  if (a0 > b0 && a1 < b1) return AllenBase::During;
  if (a0 < b0 && a1 > b1) return AllenBase::Contains;
  if (a0 < b0) return AllenBase::Overlaps;  // b0 < a1 < b1 here
  return AllenBase::OverlappedBy;           // b0 < a0 < b1 < a1
}

std::array<std::array<std::uint16_t, 13>, 13> oracle_composition_table() {
  std::array<std::array<std::uint16_t, 13>, 13> table{};
  // Six endpoints, each ranked 0..5; non-surjective assignments duplicate
  // surjective ones, which is harmless under the union.
  int r[6];
  for (r[0] = 0; r[0] < 6; ++r[0])
    for (r[1] = 0; r[1] < 6; ++r[1]) {
      if (r[0] >= r[1]) continue;  // x0 < x1
      for (r[2] = 0; r[2] < 6; ++r[2])
        for (r[3] = 0; r[3] < 6; ++r[3]) {
          if (r[2] >= r[3]) continue;  // y0 < y1
          AllenBase xy = relate_endpoints(r[0], r[1], r[2], r[3]);
          for (r[4] = 0; r[4] < 6; ++r[4])
            for (r[5] = 0; r[5] < 6; ++r[5]) {
              if (r[4] >= r[5]) continue;  // z0 < z1
              AllenBase yz = relate_endpoints(r[2], r[3], r[4], r[5]);
              AllenBase xz = relate_endpoints(r[0], r[1], r[4], r[5]);
              table[static_cast<int>(xy)][static_cast<int>(yz)] |=
                  static_cast<std::uint16_t>(1u << static_cast<int>(xz));
            }
        }
    }
  return table;
}

AllenBase oracle_converse(AllenBase r) {
  for (int a0 = 0; a0 < 4; ++a0)
    for (int a1 = a0 + 1; a1 < 4; ++a1)
      for (int b0 = 0; b0 < 4; ++b0)
        for (int b1 = b0 + 1; b1 < 4; ++b1) {
          if (relate_endpoints(a0, a1, b0, b1) == r) {
            return relate_endpoints(b0, b1, a0, a1);
          }
        }
  return r;  // unreachable: every base relation has a rank-0..3 witness
}

}  // namespace timelink::testing
