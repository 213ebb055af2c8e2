#ifndef CHERDIM_ROOTDATA_HPP
#define CHERDIM_ROOTDATA_HPP

#include <string>
#include <vector>

#include "cherdim/rat.hpp"

namespace cherdim::rootdata {

// Integer coordinate vector in the basis of simple roots.
using Coords = std::vector<int>;

// A finite crystallographic root system generated from a Cartan matrix.
// Roots are stored in simple-root coordinates; the invariant inner product
// is the symmetrized Cartan form.
class RootSystem {
 public:
  // cartan[i][j] = <alpha_i, alpha_j^vee>
  static RootSystem from_cartan(const std::vector<std::vector<int>>& cartan);

  int rank() const { return rank_; }
  const std::vector<Coords>& roots() const { return roots_; }
  int num_roots() const { return (int)roots_.size(); }
  int num_positive() const { return num_roots() / 2; }

  int height(const Coords& c) const {
    int h = 0;
    for (int x : c) h += x;
    return h;
  }
  // <beta, alpha_j^vee> for beta in root coordinates
  int pair_with_simple_coroot(const Coords& beta, int j) const;
  Rat norm2(const Coords& beta) const;
  Rat inner(const Coords& a, const Coords& b) const;
  Coords reflect(const Coords& beta, int i) const;

  // Exponents (ascending) read off the height partition of positive roots;
  // degrees are exponents + 1.  Product of degrees is the Weyl group order.
  const std::vector<int>& exponents() const { return exponents_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int64_t weyl_order() const;
  int coxeter_number() const { return exponents_.back() + 1; }
  // 1 + height of the coroot of the highest root
  int64_t dual_coxeter_number() const;

  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  const std::vector<Rat>& simple_norm2() const { return simple_norm2_; }

 private:
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<Rat> simple_norm2_;  // (alpha_i, alpha_i)
  std::vector<Coords> roots_;
  std::vector<int> exponents_, degrees_;
};

std::vector<std::vector<int>> cartan_matrix(char family, int rank);

// Classification of an abstract simple system given pairwise Cartan
// integers; returns irreducible factors as lists of node indices together
// with canonical type names ("A3", "B2", "G2", ...).
struct DiagramFactor {
  std::string type;
  std::vector<int> nodes;
};
std::vector<DiagramFactor> classify_diagram(
    const std::vector<std::vector<int>>& cartan,
    const std::vector<Rat>& simple_norm2);

// (family, rank, twist order).
struct GroupSpec {
  char family = 'A';
  int rank = 1;
  int e = 1;

  void validate() const;  // throws invalid_input naming the violated rule
  std::string name() const;
};

// One relative root with its affine-offset class and multiplicity.
struct RelRoot {
  Coords coords;       // in the relative simple-root basis
  int height;
  Rat norm2;
  int offset_den;      // admissible offsets n satisfy n * offset_den integral...
  bool half_shift;     // ...unless half_shift: n in 1/2 + Z  (doubled roots)
  int mult;            // fibers of the absolute-to-relative projection
  std::vector<int> coroot;  // <alpha_j, beta^vee> for j = 1..r (integers)

  bool offset_admissible(const Rat& n) const {
    if (half_shift) {
      Rat t = n - Rat(1, 2);
      return t.is_integer();
    }
    return (n * Rat(offset_den)).is_integer();
  }
};

// Everything the downstream modules need about a (G, theta) pair.
struct RootDatum {
  GroupSpec spec;
  RootSystem absolute;
  std::vector<int> degrees;     // absolute, ascending
  std::vector<int> exponents;   //
  std::vector<int> eps;         // twist exponents, aligned with `degrees`

  int rel_rank = 0;
  std::vector<std::vector<int>> rel_cartan;
  std::vector<Rat> rel_simple_norm2;
  std::vector<RelRoot> rel_roots;
  std::string rel_type;

  std::vector<int64_t> marks;       // a_1..a_r  (a_0 = 1 by convention here)
  std::vector<int64_t> dual_marks;  // a^vee_1..a^vee_r
  int64_t a0_dual = 1;
  int64_t h_theta = 0;
  int64_t h_theta_dual = 0;
  int64_t abs_root_count = 0;

  std::vector<int64_t> regular_numbers;           // theta-regular m1
  std::vector<int64_t> elliptic_regular_numbers;  //
  bool regular_table_known = true;  // false for untabulated twisted types

  Rat rel_inner(const Coords& a, const Coords& b) const;
  int rel_height(const Coords& c) const {
    int h = 0;
    for (int x : c) h += x;
    return h;
  }
  // #{ i : nu*(d_i - 1) + eps_i/e integral }  = dim of the fixed space of
  // the regular grading on the absolute Cartan
  int t_fixed_dim(const Rat& nu) const;
  bool is_regular_number(int64_t m1) const;
  bool is_elliptic_regular_number(int64_t m1) const;
};

RootDatum build_root_datum(const GroupSpec& spec);

// Exact identity sum eps_i / e == (rank_abs - r)/2.
bool twist_exponents_check(const RootDatum& d);

}  // namespace cherdim::rootdata

#endif
