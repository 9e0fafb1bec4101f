// Regenerates src/allen_compose.inc from the endpoint-ordering reference.
// The frozen include is committed; run this only to refresh it:
//   gen-allen-table > src/allen_compose.inc

#include <cstdio>

#include "support/allen_oracle.hpp"

int main() {
  auto table = timelink::testing::oracle_composition_table();
  std::printf(
      "// Composition of Allen base relations, generated by gen-allen-table\n"
      "// from the endpoint-ordering enumeration. Do not edit by hand.\n"
      "// kComposeBase[r1][r2] = bits of compose({r1}, {r2}); bit order is\n"
      "// the AllenBase enum order.\n"
      "inline constexpr std::uint16_t kComposeBase[13][13] = {\n");
  for (int i = 0; i < 13; ++i) {
    std::printf("    {");
    for (int j = 0; j < 13; ++j) {
      std::printf("0x%04x%s", static_cast<unsigned>(table[i][j]),
                  j + 1 < 13 ? ", " : "");
    }
    std::printf("},\n");
  }
  std::printf("};\n");
  return 0;
}
