#include "cherdim/reference.hpp"

namespace cherdim::reference {

const std::vector<Entry>& table() {
  using F = Feasibility;
  static const std::vector<Entry> t = {
      // rank-two cases worked out in the literature
      {'A', 2, 2, 2, 3, "literature: twisted A2, m1=2 (spherical module dim 3)", F::kOk},
      {'A', 2, 2, 6, 1, "Coxeter slope for twisted A2", F::kOk},
      {'C', 2, 1, 2, 4, "literature: C2, m=2 (spherical module dim 4)", F::kOk},
      {'C', 2, 1, 4, 1, "Coxeter slope for C2", F::kOk},
      {'A', 3, 2, 2, 8, "literature: twisted A3, m1=2 (spherical module dim 8)", F::kOk},
      {'A', 3, 2, 6, 1, "Coxeter slope for twisted A3", F::kOk},
      {'A', 4, 2, 2, 25, "literature: twisted A4, m1=2 (30 - 5 = 25)", F::kOk},
      {'A', 4, 2, 10, 1, "Coxeter slope for twisted A4", F::kOk},
      {'G', 2, 1, 3, 4, "literature: G2, m=3 (spherical module dim 4)", F::kOk},
      {'G', 2, 1, 2, 9, "literature: G2, m=2 (spherical module dim 9)", F::kOk},
      {'G', 2, 1, 6, 1, "Coxeter slope for G2", F::kOk},
      {'D', 4, 3, 6, 4, "literature: triality D4, m1=6 (spherical module dim 4)", F::kOk},
      {'D', 4, 3, 3, 16, "literature: triality D4, m1=3 (spherical module dim 16)", F::kOk},
      {'D', 4, 3, 12, 1, "Coxeter slope for triality D4", F::kOk},
      // exceptional tables
      {'F', 4, 1, 12, 1, "published F4 table, m=12", F::kOk},
      {'F', 4, 1, 8, 6, "published F4 table, m=8", F::kOk},
      {'F', 4, 1, 6, 20, "published F4 table, m=6", F::kOk},
      {'F', 4, 1, 4, 96, "published F4 table, m=4", F::kOk},
      {'F', 4, 1, 3, 256, "published F4 table, m=3", F::kOk},
      {'F', 4, 1, 2, 1620, "published F4 table, m=2", F::kOk},
      {'E', 6, 1, 12, 1, "published E6 table, m=12", F::kOk},
      {'E', 6, 1, 9, 8, "published E6 table, m=9", F::kOk},
      {'E', 6, 1, 6, 92, "published E6 table, m=6", F::kOk},
      {'E', 6, 1, 3, 4152, "published E6 table, m=3", F::kOk},
      {'E', 7, 1, 18, 1, "published E7 table, m=18", F::kOk},
      {'E', 7, 1, 14, 9, "published E7 table, m=14", F::kOk},
      {'E', 7, 1, 6, 3894, "published E7 table, m=6", F::kOk},
      {'E', 7, 1, 2, std::nullopt, "open entry in the published E7 table", F::kInfeasible},
      {'E', 8, 1, 30, 1, "published E8 table, m=30", F::kOk},
      {'E', 8, 1, 24, 10, "published E8 table, m=24", F::kOk},
      {'E', 8, 1, 20, 54, "published E8 table, m=20", F::kOk},
      {'E', 8, 1, 15, 576, "published E8 table, m=15", F::kOk},
      {'E', 8, 1, 12, 3380, "published E8 table, m=12", F::kOk},
      {'E', 8, 1, 10, 14769, "published E8 table, m=10", F::kStretch},
      {'E', 8, 1, 8, 62640, "published E8 table, m=8", F::kStretch},
      {'E', 8, 1, 6, std::nullopt, "open entry in the published E8 table", F::kInfeasible},
      {'E', 8, 1, 5, std::nullopt, "open entry in the published E8 table", F::kInfeasible},
      {'E', 8, 1, 4, std::nullopt, "open entry in the published E8 table", F::kInfeasible},
      {'E', 8, 1, 3, std::nullopt, "open entry in the published E8 table", F::kInfeasible},
      {'E', 8, 1, 2, std::nullopt, "open entry in the published E8 table", F::kInfeasible},
  };
  return t;
}

}  // namespace cherdim::reference
