#ifndef CHERDIM_DIMENSIONS_HPP
#define CHERDIM_DIMENSIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "cherdim/apartment.hpp"
#include "cherdim/coinvariant.hpp"
#include "cherdim/rootdata.hpp"

namespace cherdim::dimensions {

using apartment::SlopeSpec;
using rootdata::RootDatum;

// dim of the homogeneous affine Springer fiber:
//   (nu * #roots(abs) - r + t_fixed)/2, an integer for every valid datum.
int64_t dim_springer(const RootDatum& datum, const SlopeSpec& slope);
// dim of the corresponding Hitchin fiber: same with -t_fixed.
int64_t dim_hitchin(const RootDatum& datum, const SlopeSpec& slope);

struct ComputeOptions {
  int64_t budget = 200000;       // max monomial-space size C(N+r-1, r-1)
  int64_t alcove_cap = 10000000;
  bool direct = false;           // enumerate at d/m instead of scaling from 1/m
  bool graded = false;           // per-clan graded image data
  std::vector<int> parahoric;    // affine node subset (empty = Iwahori)
};

struct ClanReport {
  std::string sign_vector;   // one char per nu-weight root: '+'/'-'
  int64_t alcove_count = 0;
  int sep = 0;               // degree of lambda
  int64_t per_coset_dim = 0;
  int64_t subtotal = 0;
  bool bounded = true;
  std::vector<std::string> lambda;  // linear parts, printable
  std::vector<int64_t> graded;      // optional per-degree image ranks
};

struct DimReport {
  rootdata::GroupSpec spec;
  SlopeSpec slope;
  std::vector<int> parahoric;
  bool scaled = false;       // total obtained from the 1/m1 run times d1^r
  int64_t scale_factor = 1;  // d1^r
  std::string wallgroup_type;
  std::vector<int> wallgroup_degrees;
  int64_t wallgroup_order = 1;
  int reflection_count = 0;  // N at the run slope
  int64_t total = 0;
  std::vector<ClanReport> clans;
  // closed-form side
  int64_t dim_sp = 0;
  int64_t dim_hit = 0;
  int t_fixed_dim = 0;
  Rat n_top;  // r(h nu - 1)/2 at the requested slope
  int64_t alcoves_visited = 0;
  int64_t cosets = 0;
  double runtime_ms = 0.0;
  bool cache_hit = false;
};

// The full assembly: clan enumeration at 1/m1 (or at d/m with opts.direct),
// coinvariant image dimensions per clan, total with the d1^r scaling.
// Throws infeasible_error when the budget or the alcove cap is exceeded.
DimReport total_dimension(const RootDatum& datum, const SlopeSpec& slope,
                          const ComputeOptions& opts = {});

// Direct enumeration at d1/m1 compared against d1^r times the 1/m1 value.
bool scaling_check(const RootDatum& datum, int64_t m1, int64_t d1,
                   const ComputeOptions& opts = {});

// Conjectured closed forms for two classical families (cross-checks only).
// family 'D': dim at slope 1/(2n) for D_{2n}; family 'C': same for C_{2n}.
std::vector<std::pair<int, int64_t>> conjecture_series(char family, int n_max);

}  // namespace cherdim::dimensions

#endif
