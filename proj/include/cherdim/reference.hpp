#ifndef CHERDIM_REFERENCE_HPP
#define CHERDIM_REFERENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cherdim::reference {

enum class Feasibility { kOk, kStretch, kInfeasible };

// One verifiable entry: total dimension at slope 1/m1 for the given type.
// Entries with no expected value are the ones the published tables leave
// open; the engine must refuse them under the default budget rather than
// produce an unverifiable number.
struct Entry {
  char family;
  int rank;
  int e;
  int64_t m1;
  std::optional<int64_t> expected;
  std::string provenance;
  Feasibility cls;
};

const std::vector<Entry>& table();

}  // namespace cherdim::reference

#endif
