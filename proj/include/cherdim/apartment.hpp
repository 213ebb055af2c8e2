#ifndef CHERDIM_APARTMENT_HPP
#define CHERDIM_APARTMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cherdim/rootdata.hpp"

namespace cherdim::apartment {

using rootdata::RootDatum;

// Affine root alpha = abar + n.delta, referenced by the index of its linear
// part in the datum's relative root list.
struct AffineRoot {
  int rel_idx;
  Rat offset;
};

// A theta-admissible slope in normal form.
struct SlopeSpec {
  int64_t d1 = 1, m1 = 1;  // lowest terms
  int64_t d = 1, m = 1;    // normal form, m = lcm(m1, e)
  Rat nu;
  bool elliptic = false;
  int t_fixed_dim = 0;
};

SlopeSpec make_slope(const RootDatum& datum, int64_t d1, int64_t m1);

// All real affine roots alpha with alpha(nu.rho^vee) = nu: these cut out the
// nu-walls and supply every lambda factor.
std::vector<AffineRoot> nu_weight_roots(const RootDatum& datum,
                                        const SlopeSpec& slope);

// The finite reflection group fixing nu.rho^vee, with its type recognized
// from the Cartan matrix of an extracted simple system.
struct WallGroupFactor {
  std::string type;
  std::vector<int> simple_positions;  // indices into `simples`
  std::vector<int> degrees;           // ascending
  int64_t order = 1;
  int num_positive = 0;
};

struct WallGroup {
  std::vector<AffineRoot> positive_roots;  // oriented positive on the
                                           // fundamental barycenter
  std::vector<rootdata::Coords> simples;   // linear parts of simple walls
  std::vector<std::vector<int>> cartan;    // of the simples
  std::vector<WallGroupFactor> factors;
  std::vector<int> degrees;  // all factors merged, ascending
  int64_t order = 1;
  int reflection_count = 0;  // N = number of positive roots
  std::string type_name;     // e.g. "A2+A1", "trivial"
};

WallGroup wall_group(const RootDatum& datum, const SlopeSpec& slope);

// Alcove of the affine Weyl group, recorded by its barycenter.
struct Alcove {
  RatVec barycenter;
  int sep = 0;                  // nu-walls separating it from nu.rho^vee
  uint64_t neg_mask = 0;        // bit i: nu_weight_roots[i] negative here
  int64_t coset_key_hash = 0;   // parahoric runs: hash of the traced face point
};

struct EnumerateOptions {
  int64_t alcove_cap = 10000000;      // BFS abort threshold
  std::vector<int> parahoric;         // affine node subset (empty: Iwahori)
};

struct Enumeration {
  std::vector<Alcove> alcoves;       // one representative per coset
  std::vector<AffineRoot> nu_roots;
  RatVec base_point;                 // nu.rho^vee
  RatVec fundamental_barycenter;
  int64_t visited = 0;
  // parahoric runs only:
  std::vector<std::vector<int>> wprime_wall_indices;  // per alcove, indices
                                                      // into wall group positives
};

Enumeration enumerate_contributing_alcoves(const RootDatum& datum,
                                           const SlopeSpec& slope,
                                           const WallGroup& wg,
                                           const EnumerateOptions& opts = {});

// Clan: maximal set of enumerated alcoves sharing the nu-wall sign vector.
struct Clan {
  uint64_t neg_mask = 0;
  std::vector<int> alcove_indices;
  int sep = 0;
  std::vector<int> lambda;  // indices into nu_roots (the negative ones)
  bool bounded = false;
};

std::vector<Clan> clan_decomposition(const Enumeration& e, const RootDatum& datum);

// Exact recession-cone test for the open region cut out by the nu-walls
// with the given sign vector: bounded iff {y : sign_i <abar_i, y> >= 0} = {0},
// decided by Fourier-Motzkin elimination after collapsing opposite pairs.
bool clan_region_bounded(const RootDatum& datum,
                         const std::vector<AffineRoot>& nu_roots, uint64_t neg_mask);

// Reduced word for the alcove's affine Weyl element (letters 0..r; 0 is the
// affine node), by descent toward the fundamental alcove.
std::vector<int> alcove_word(const RootDatum& datum, const RatVec& barycenter);

// Fundamental alcove barycenter, in fundamental-coweight coordinates.
RatVec fundamental_barycenter(const RootDatum& datum);

Rat eval_affine(const RootDatum& datum, const AffineRoot& a, const RatVec& p);

}  // namespace cherdim::apartment

#endif
