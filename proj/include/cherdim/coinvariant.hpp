#ifndef CHERDIM_COINVARIANT_HPP
#define CHERDIM_COINVARIANT_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "cherdim/apartment.hpp"
#include "cherdim/exactla.hpp"
#include "cherdim/rootdata.hpp"

namespace cherdim::coinvariant {

using rootdata::RootDatum;

// Sparse exact polynomial: exponent vector -> coefficient.  Zero
// coefficients are never stored.
using Expo = std::vector<int>;
using PolyQ = std::map<Expo, BigRat>;

int total_degree(const Expo& e);

// Graded-reverse-lexicographic comparison on exponent vectors (ties fixed by
// this order everywhere so echelon bases and caches are reproducible).
bool grevlex_less(const Expo& a, const Expo& b);

// The wall group as a linear reflection group ready for invariant theory:
// essential simple roots expressed in the ambient relative coordinates plus
// the generator action written in the adapted (simple-root) basis.
struct WallGroupAction {
  int ambient_rank = 0;
  int rank = 0;                        // number of essential variables
  std::vector<std::vector<int>> cartan;
  std::vector<rootdata::Coords> simples;    // ambient coordinates
  std::vector<std::vector<int>> factors;    // variable indices per factor
  std::vector<int> degrees;                 // merged, ascending
  int64_t order = 1;
  int top_degree = 0;                       // N = sum (degree - 1)

  // Projection of an ambient linear form onto the essential coordinates;
  // the invariant complement is part of the coinvariant ideal, so a form is
  // determined in the quotient by this projection.
  std::vector<BigRat> project(const RootDatum& datum,
                              const rootdata::Coords& form) const;
};

WallGroupAction wall_group_action(const RootDatum& datum,
                                  const apartment::WallGroup& wg);

// Per-degree echelonized data for one irreducible factor.
struct FactorQuotient {
  std::vector<int> vars;                     // global essential variable ids
  int rank = 0;
  int top = 0;                               // factor top degree
  std::vector<std::vector<Expo>> monomials;  // per degree, grevlex order
  std::vector<std::vector<int>> nf_basis;    // per degree, monomial indices
  // expansion of each non-basis monomial over the degree's nf basis
  std::vector<std::map<int, std::vector<BigRat>>> rewrite;
  std::vector<int> hilbert;
};

// The coinvariant algebra held degreewise.
class GradedQuotient {
 public:
  GradedQuotient(const RootDatum& datum, const apartment::WallGroup& wg,
                 int max_degree = -1);

  const WallGroupAction& action() const { return act_; }
  const std::vector<int>& hilbert() const { return hilbert_; }
  int64_t total_dim() const;
  int top_degree() const { return act_.top_degree; }

  // dim of lambda . H, where lambda is a product of ambient linear forms.
  int64_t image_dimension(const std::vector<rootdata::Coords>& lambda_factors) const;
  // per-source-degree ranks of multiplication by lambda
  std::vector<int64_t> image_hilbert(const std::vector<rootdata::Coords>& lambda) const;
  // dim of lambda . (H^{W'}) for the reflection subgroup W' generated by
  // the given wall-group roots; lambda must be W'-invariant.
  int64_t parabolic_invariant_image(const std::vector<rootdata::Coords>& wprime_roots,
                                    const std::vector<rootdata::Coords>& lambda) const;

  // Basis of H_d as essential-coordinate polynomials (testing hook).
  std::vector<PolyQ> basis(int degree) const;

 private:
  friend struct QuotientOps;
  const RootDatum* datum_;
  WallGroupAction act_;
  std::vector<FactorQuotient> factors_;
  std::vector<int> hilbert_;
};

// Monomial count C(d + nvars - 1, nvars - 1): the feasibility measure that
// the budget caps.
int64_t monomial_count(int degree, int nvars);

}  // namespace cherdim::coinvariant

#endif
