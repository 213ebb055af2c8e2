#include "cherdim/dimensions.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace cherdim::dimensions {

using apartment::Clan;
using apartment::Enumeration;
using apartment::WallGroup;
using coinvariant::GradedQuotient;
using rootdata::Coords;

int64_t dim_springer(const RootDatum& datum, const SlopeSpec& slope) {
  Rat v = (slope.nu * Rat(datum.abs_root_count) - Rat(datum.rel_rank) +
           Rat(slope.t_fixed_dim)) /
          Rat(2);
  return v.as_integer("dim_springer");
}

int64_t dim_hitchin(const RootDatum& datum, const SlopeSpec& slope) {
  Rat v = (slope.nu * Rat(datum.abs_root_count) - Rat(datum.rel_rank) -
           Rat(slope.t_fixed_dim)) /
          Rat(2);
  return v.as_integer("dim_hitchin");
}

namespace {

std::string printable_form(const RootDatum& datum, const Coords& c) {
  std::string s;
  for (int i = 0; i < datum.rel_rank; ++i) {
    if (c[i] == 0) continue;
    if (!s.empty() && c[i] > 0) s += "+";
    if (c[i] == -1) s += "-";
    else if (c[i] != 1) s += std::to_string(c[i]);
    s += "a" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

int64_t pow_int(int64_t b, int e) {
  int64_t r = 1;
  for (int i = 0; i < e; ++i) r = detail::checked_cast((__int128)r * b, "pow_int");
  return r;
}

}  // namespace

DimReport total_dimension(const RootDatum& datum, const SlopeSpec& slope,
                          const ComputeOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  if (!slope.elliptic)
    throw invalid_input(
        "total dimension is defined for elliptic slopes only; " +
        std::to_string(slope.d1) + "/" + std::to_string(slope.m1) +
        " is admissible but not elliptic");

  DimReport rep;
  rep.spec = datum.spec;
  rep.slope = slope;
  rep.parahoric = opts.parahoric;
  rep.dim_sp = dim_springer(datum, slope);
  rep.dim_hit = dim_hitchin(datum, slope);
  rep.t_fixed_dim = slope.t_fixed_dim;
  rep.n_top = Rat(datum.rel_rank) * (Rat(datum.h_theta) * slope.nu - Rat(1)) / Rat(2);
  if (rep.dim_sp - rep.dim_hit != rep.t_fixed_dim)
    throw internal_error("dim_springer - dim_hitchin != t_fixed_dim");
  if (Rat(rep.dim_sp) != rep.n_top)
    throw internal_error("elliptic dim_springer differs from r(h nu - 1)/2");

  // run slope: 1/m1 by default, the requested slope when direct
  SlopeSpec run = opts.direct ? slope : apartment::make_slope(datum, 1, slope.m1);
  rep.scaled = !opts.direct;
  rep.scale_factor = opts.direct ? 1 : pow_int(slope.d1, datum.rel_rank);

  WallGroup wg = apartment::wall_group(datum, run);
  rep.wallgroup_type = wg.type_name;
  rep.wallgroup_degrees = wg.degrees;
  rep.wallgroup_order = wg.order;
  rep.reflection_count = wg.reflection_count;

  // at slope 1/m1 the wall-group reflection count equals the fiber dimension
  if (run.d1 == 1) {
    Rat n_run = Rat(datum.rel_rank) * (Rat(datum.h_theta) * run.nu - Rat(1)) / Rat(2);
    if (Rat(wg.reflection_count) != n_run)
      throw internal_error("wall-group reflection count != r(h/m - 1)/2");
  }

  // budget gate: the coinvariant computation needs Sym^N in r variables
  int64_t need = coinvariant::monomial_count(wg.reflection_count, datum.rel_rank);
  if (need > opts.budget)
    throw infeasible_error(
        "infeasible at this budget: degree-" + std::to_string(wg.reflection_count) +
        " monomial space in " + std::to_string(datum.rel_rank) + " variables has " +
        std::to_string(need) + " monomials (budget " + std::to_string(opts.budget) +
        ")");

  apartment::EnumerateOptions eo;
  eo.alcove_cap = opts.alcove_cap;
  eo.parahoric = opts.parahoric;
  Enumeration en = apartment::enumerate_contributing_alcoves(datum, run, wg, eo);
  rep.alcoves_visited = en.visited;
  rep.cosets = (int64_t)en.alcoves.size();

  GradedQuotient quotient(datum, wg);

  const bool parahoric = !opts.parahoric.empty();
  int64_t total = 0;
  if (!parahoric) {
    std::vector<Clan> clans = apartment::clan_decomposition(en, datum);
    for (const Clan& c : clans) {
      std::vector<Coords> lambda;
      for (int idx : c.lambda)
        lambda.push_back(datum.rel_roots[en.nu_roots[idx].rel_idx].coords);
      ClanReport cr;
      cr.sign_vector.assign(en.nu_roots.size(), '+');
      for (int idx : c.lambda) cr.sign_vector[idx] = '-';
      cr.alcove_count = (int64_t)c.alcove_indices.size();
      cr.sep = c.sep;
      cr.bounded = c.bounded;
      for (const Coords& f : lambda) cr.lambda.push_back(printable_form(datum, f));
      if (opts.graded) {
        for (int64_t v : quotient.image_hilbert(lambda)) cr.graded.push_back(v);
        cr.per_coset_dim = 0;
        for (int64_t v : cr.graded) cr.per_coset_dim += v;
      } else {
        cr.per_coset_dim = quotient.image_dimension(lambda);
      }
      cr.subtotal = cr.per_coset_dim * cr.alcove_count;
      total += cr.subtotal;
      rep.clans.push_back(std::move(cr));
    }
  } else {
    for (size_t i = 0; i < en.alcoves.size(); ++i) {
      const apartment::Alcove& a = en.alcoves[i];
      std::vector<Coords> lambda;
      for (size_t j = 0; j < en.nu_roots.size(); ++j)
        if (a.neg_mask & (1ull << j))
          lambda.push_back(datum.rel_roots[en.nu_roots[j].rel_idx].coords);
      if ((int)lambda.size() != a.sep)
        throw internal_error("parahoric lambda bookkeeping mismatch");
      std::vector<Coords> wprime;
      for (int wi : en.wprime_wall_indices[i])
        wprime.push_back(datum.rel_roots[wg.positive_roots[wi].rel_idx].coords);
      ClanReport cr;
      cr.sign_vector.assign(en.nu_roots.size(), '+');
      for (size_t j = 0; j < en.nu_roots.size(); ++j)
        if (a.neg_mask & (1ull << j)) cr.sign_vector[j] = '-';
      cr.alcove_count = 1;
      cr.sep = a.sep;
      for (const Coords& f : lambda) cr.lambda.push_back(printable_form(datum, f));
      cr.per_coset_dim = quotient.parabolic_invariant_image(wprime, lambda);
      cr.subtotal = cr.per_coset_dim;
      total += cr.subtotal;
      rep.clans.push_back(std::move(cr));
    }
  }

  rep.total = detail::checked_cast((__int128)total * rep.scale_factor, "total");

  // graded/ungraded consistency
  if (opts.graded) {
    int64_t regraded = 0;
    for (const auto& c : rep.clans) {
      int64_t s = 0;
      for (int64_t v : c.graded) s += v;
      regraded += s * c.alcove_count;
    }
    if (regraded * rep.scale_factor != rep.total)
      throw internal_error("graded clan data does not re-sum to the total");
  }

  auto t1 = std::chrono::steady_clock::now();
  rep.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

bool scaling_check(const RootDatum& datum, int64_t m1, int64_t d1,
                   const ComputeOptions& opts) {
  SlopeSpec base = apartment::make_slope(datum, 1, m1);
  SlopeSpec scaled = apartment::make_slope(datum, d1, m1);
  ComputeOptions direct = opts;
  direct.direct = true;
  ComputeOptions shortcut = opts;
  shortcut.direct = false;
  DimReport lhs = total_dimension(datum, scaled, direct);
  DimReport rhs = total_dimension(datum, base, shortcut);
  return lhs.total == rhs.total * pow_int(d1, datum.rel_rank);
}

std::vector<std::pair<int, int64_t>> conjecture_series(char family, int n_max) {
  // D: 1 + sum dim(D_{2n} at 1/2n) x^n = (1-4x)^(-3/2)
  // C: 1 + sum dim(C_{2n} at 1/2n) x^n = (1-4x)^(-3/2) (1+sqrt(1-4x))^2 / 4
  std::vector<std::pair<int, int64_t>> out;
  auto binom = [](int64_t n, int64_t k) {
    __int128 r = 1;
    for (int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return (int64_t)r;
  };
  for (int n = 1; n <= n_max; ++n) {
    int64_t dcoef = (2 * n + 1) * binom(2 * n, n);
    if (family == 'D') {
      out.emplace_back(n, dcoef);
    } else if (family == 'C') {
      int64_t prev = (2 * n - 1) * binom(2 * n - 2, n - 1);
      int64_t four_n = 1;
      for (int i = 0; i < n; ++i) four_n *= 4;
      out.emplace_back(n, (dcoef - 2 * prev + four_n) / 2);
    } else {
      throw invalid_input("conjecture series exists for families C and D");
    }
  }
  return out;
}

}  // namespace cherdim::dimensions
