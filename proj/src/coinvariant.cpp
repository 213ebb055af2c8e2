#include "cherdim/coinvariant.hpp"

#include <algorithm>
#include <numeric>

namespace cherdim::coinvariant {

using exactla::EchelonBasis;
using exactla::QMatrix;
using exactla::SparseRow;
using rootdata::Coords;

int total_degree(const Expo& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool grevlex_less(const Expo& a, const Expo& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  // same degree: a < b iff the LAST nonzero entry of a - b is positive
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

int64_t monomial_count(int degree, int nvars) {
  if (nvars <= 0) return degree == 0 ? 1 : 0;
  __int128 num = 1;
  for (int i = 1; i <= nvars - 1; ++i) {
    num = num * (degree + i) / i;
    if (num > (__int128)4 * INT64_MAX) return INT64_MAX;
  }
  return num > INT64_MAX ? INT64_MAX : (int64_t)num;
}

namespace {

std::vector<Expo> monomials_of_degree(int nvars, int d) {
  std::vector<Expo> out;
  Expo cur(nvars, 0);
  // lexicographic backtracking; sorted grevlex afterwards
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == nvars - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int k = rem; k >= 0; --k) {
      cur[pos] = k;
      rec(pos + 1, rem - k);
    }
    cur[pos] = 0;
  };
  if (nvars == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  rec(0, d);
  std::sort(out.begin(), out.end(), grevlex_less);
  return out;
}

// Gaussian solve of a small square rational system G x = b.
std::vector<BigRat> solve_square(std::vector<std::vector<BigRat>> g,
                                 std::vector<BigRat> b) {
  int n = (int)g.size();
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!g[i][col].is_zero()) { piv = i; break; }
    if (piv < 0) throw internal_error("singular Gram matrix in projection");
    std::swap(g[col], g[piv]);
    std::swap(b[col], b[piv]);
    for (int i = 0; i < n; ++i) {
      if (i == col || g[i][col].is_zero()) continue;
      BigRat f = g[i][col] / g[col][col];
      for (int j = col; j < n; ++j) g[i][j] = g[i][j] - f * g[col][j];
      b[i] = b[i] - f * b[col];
    }
  }
  std::vector<BigRat> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / g[i][i];
  return x;
}

}  // namespace

std::vector<BigRat> WallGroupAction::project(const RootDatum& datum,
                                             const Coords& form) const {
  if (rank == 0) return {};
  std::vector<std::vector<BigRat>> g(rank, std::vector<BigRat>(rank));
  std::vector<BigRat> b(rank);
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j)
      g[i][j] = BigRat(datum.rel_inner(simples[i], simples[j]));
    b[i] = BigRat(datum.rel_inner(simples[i], form));
  }
  return solve_square(std::move(g), std::move(b));
}

WallGroupAction wall_group_action(const RootDatum& datum,
                                  const apartment::WallGroup& wg) {
  WallGroupAction act;
  act.ambient_rank = datum.rel_rank;
  act.rank = (int)wg.simples.size();
  act.simples = wg.simples;
  act.cartan = wg.cartan;
  act.degrees = wg.degrees;
  act.order = wg.order;
  act.top_degree = wg.reflection_count;
  for (const auto& f : wg.factors) act.factors.push_back(f.simple_positions);
  return act;
}

namespace {

// s_i z_j = z_j - cartan[j][i] z_i within one factor, local indices.
PolyQ act_simple_on_monomial(const std::vector<std::vector<int>>& cartan,
                             int i, const Expo& mono) {
  PolyQ out;
  out[Expo(mono.size(), 0)] = BigRat(1);
  auto mul_linear = [&](const std::map<int, BigRat>& form, int power) {
    for (int rep = 0; rep < power; ++rep) {
      PolyQ next;
      for (const auto& [e, c] : out)
        for (const auto& [var, coef] : form) {
          Expo e2 = e;
          e2[var] += 1;
          BigRat add = c * coef;
          auto it = next.find(e2);
          if (it == next.end()) next.emplace(std::move(e2), add);
          else {
            it->second += add;
            if (it->second.is_zero()) next.erase(it);
          }
        }
      out = std::move(next);
    }
  };
  for (size_t j = 0; j < mono.size(); ++j) {
    if (mono[j] == 0) continue;
    std::map<int, BigRat> form;
    if ((int)j == i) {
      form[i] = BigRat(-1);
    } else {
      form[(int)j] = BigRat(1);
      if (cartan[j][i] != 0) form[i] = BigRat(-cartan[j][i]);
    }
    mul_linear(form, mono[j]);
  }
  return out;
}

FactorQuotient build_factor(const std::vector<int>& vars,
                            const std::vector<std::vector<int>>& full_cartan,
                            const std::vector<int>& degrees) {
  FactorQuotient fq;
  fq.vars = vars;
  fq.rank = (int)vars.size();
  fq.top = 0;
  for (int d : degrees) fq.top += d - 1;

  std::vector<std::vector<int>> cartan(fq.rank, std::vector<int>(fq.rank));
  for (int a = 0; a < fq.rank; ++a)
    for (int b = 0; b < fq.rank; ++b) cartan[a][b] = full_cartan[vars[a]][vars[b]];

  fq.monomials.resize(fq.top + 1);
  fq.nf_basis.resize(fq.top + 1);
  fq.rewrite.resize(fq.top + 1);
  fq.hilbert.resize(fq.top + 1, 0);

  // invariants per degree, as sparse rows over the degree's monomials
  std::vector<std::vector<SparseRow>> invariants(fq.top + 1);
  std::vector<std::map<Expo, int>> index(fq.top + 1);
  for (int d = 0; d <= fq.top; ++d) {
    fq.monomials[d] = monomials_of_degree(fq.rank, d);
    for (int m = 0; m < (int)fq.monomials[d].size(); ++m)
      index[d].emplace(fq.monomials[d][m], m);
  }

  for (int e = 1; e <= fq.top; ++e) {
    int dim = (int)fq.monomials[e].size();
    std::vector<QMatrix> gens;
    for (int i = 0; i < fq.rank; ++i) {
      QMatrix gi(dim, dim);
      for (int src = 0; src < dim; ++src) {
        PolyQ img = act_simple_on_monomial(cartan, i, fq.monomials[e][src]);
        for (const auto& [mono, coef] : img)
          gi.set(index[e].at(mono), src, coef);
      }
      gens.push_back(std::move(gi));
    }
    for (const auto& v : exactla::fixed_space(gens, dim))
      invariants[e].push_back(exactla::to_sparse(v));
  }

  for (int d = 0; d <= fq.top; ++d) {
    EchelonBasis ideal((int)fq.monomials[d].size());
    for (int e = 1; e <= d; ++e) {
      for (const SparseRow& inv : invariants[e]) {
        for (const Expo& m : fq.monomials[d - e]) {
          SparseRow prod;
          for (const auto& [col, val] : inv) {
            Expo shifted = fq.monomials[e][col];
            for (int t = 0; t < fq.rank; ++t) shifted[t] += m[t];
            prod.emplace_back(index[d].at(shifted), val);
          }
          std::sort(prod.begin(), prod.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
          ideal.insert(std::move(prod));
        }
      }
    }
    for (int m = 0; m < (int)fq.monomials[d].size(); ++m)
      if (!ideal.is_pivot(m)) fq.nf_basis[d].push_back(m);
    fq.hilbert[d] = (int)fq.nf_basis[d].size();
    std::map<int, int> nf_pos;
    for (int t = 0; t < (int)fq.nf_basis[d].size(); ++t)
      nf_pos.emplace(fq.nf_basis[d][t], t);
    for (int col : ideal.pivots()) {
      const SparseRow& row = ideal.pivot_row(col);
      std::vector<BigRat> expansion(fq.nf_basis[d].size(), BigRat(0));
      for (const auto& [j, v] : row) {
        if (j == col) continue;
        auto it = nf_pos.find(j);
        if (it == nf_pos.end())
          throw internal_error("echelon row has support on another pivot");
        expansion[it->second] = BigRat(0) - v;
      }
      fq.rewrite[d].emplace(col, std::move(expansion));
    }
  }

  // Hilbert series of the quotient must be prod (1 - q^{d_i})/(1 - q)
  {
    std::vector<int64_t> series{1};
    for (int dg : degrees) {
      std::vector<int64_t> next(series.size() + dg - 1, 0);
      for (size_t a = 0; a < series.size(); ++a)
        for (int b = 0; b < dg; ++b) next[a + b] += series[a];
      series = std::move(next);
    }
    if ((int)series.size() != fq.top + 1)
      throw internal_error("factor Hilbert series has the wrong top degree");
    for (int d = 0; d <= fq.top; ++d)
      if (series[d] != fq.hilbert[d])
        throw internal_error("factor Hilbert series mismatch at degree " +
                             std::to_string(d));
  }
  return fq;
}

}  // namespace

GradedQuotient::GradedQuotient(const RootDatum& datum,
                               const apartment::WallGroup& wg, int max_degree)
    : datum_(&datum), act_(wall_group_action(datum, wg)) {
  (void)max_degree;  // the full quotient vanishes above top_degree
  for (size_t f = 0; f < act_.factors.size(); ++f)
    factors_.push_back(
        build_factor(act_.factors[f], act_.cartan, wg.factors[f].degrees));
  hilbert_ = {1};
  for (const auto& fq : factors_) {
    std::vector<int> next(hilbert_.size() + fq.hilbert.size() - 1, 0);
    for (size_t a = 0; a < hilbert_.size(); ++a)
      for (size_t b = 0; b < fq.hilbert.size(); ++b)
        next[a + b] += hilbert_[a] * fq.hilbert[b];
    hilbert_ = std::move(next);
  }
  int64_t total = 0;
  for (int h : hilbert_) total += h;
  if (total != act_.order)
    throw internal_error("coinvariant dimension differs from the group order");
  for (size_t d = 0; d < hilbert_.size(); ++d)
    if (hilbert_[d] != hilbert_[hilbert_.size() - 1 - d])
      throw internal_error("coinvariant Hilbert vector is not palindromic");
}

int64_t GradedQuotient::total_dim() const {
  int64_t t = 0;
  for (int h : hilbert_) t += h;
  return t;
}

struct QuotientOps {
  const GradedQuotient& q;

  // global NF monomial: exponent vector over the essential variables whose
  // restriction to every factor is a factor normal-form monomial
  std::vector<Expo> nf_monomials(int degree) const {
    std::vector<Expo> out;
    Expo cur(q.act_.rank, 0);
    std::function<void(size_t, int)> rec = [&](size_t f, int rem) {
      if (f == q.factors_.size()) {
        if (rem == 0) out.push_back(cur);
        return;
      }
      const FactorQuotient& fq = q.factors_[f];
      for (int d = 0; d <= std::min(rem, fq.top); ++d) {
        for (int mi : fq.nf_basis[d]) {
          const Expo& m = fq.monomials[d][mi];
          for (int t = 0; t < fq.rank; ++t) cur[fq.vars[t]] = m[t];
          rec(f + 1, rem - d);
        }
      }
      for (int t = 0; t < fq.rank; ++t) cur[fq.vars[t]] = 0;
    };
    rec(0, degree);
    std::sort(out.begin(), out.end(), grevlex_less);
    return out;
  }

  // multiply a reduced polynomial by variable `var` and reduce
  PolyQ mul_var_reduce(const PolyQ& p, int var) const {
    // find the factor owning `var`
    size_t fi = 0;
    int local = -1;
    for (; fi < q.factors_.size(); ++fi) {
      const auto& vars = q.factors_[fi].vars;
      auto it = std::find(vars.begin(), vars.end(), var);
      if (it != vars.end()) { local = (int)(it - vars.begin()); break; }
    }
    if (local < 0) throw internal_error("variable not owned by any factor");
    const FactorQuotient& fq = q.factors_[fi];

    PolyQ out;
    auto add_term = [&](Expo e, BigRat c) {
      if (c.is_zero()) return;
      auto it = out.find(e);
      if (it == out.end()) out.emplace(std::move(e), std::move(c));
      else {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
      }
    };
    for (const auto& [e, c] : p) {
      Expo e2 = e;
      e2[var] += 1;
      // restriction to the factor
      Expo loc(fq.rank);
      int d = 0;
      for (int t = 0; t < fq.rank; ++t) { loc[t] = e2[fq.vars[t]]; d += loc[t]; }
      if (d > fq.top) continue;  // the factor part vanishes in the quotient
      auto idx_it = std::lower_bound(fq.monomials[d].begin(), fq.monomials[d].end(),
                                     loc, grevlex_less);
      int mi = (int)(idx_it - fq.monomials[d].begin());
      auto rw = fq.rewrite[d].find(mi);
      if (rw == fq.rewrite[d].end()) {
        add_term(std::move(e2), c);
      } else {
        for (size_t t = 0; t < rw->second.size(); ++t) {
          if (rw->second[t].is_zero()) continue;
          const Expo& nf = fq.monomials[d][fq.nf_basis[d][t]];
          Expo e3 = e2;
          for (int s = 0; s < fq.rank; ++s) e3[fq.vars[s]] = nf[s];
          add_term(std::move(e3), c * rw->second[t]);
        }
      }
    }
    return out;
  }

  PolyQ mul_form_reduce(const PolyQ& p, const std::vector<BigRat>& form) const {
    PolyQ out;
    for (int v = 0; v < q.act_.rank; ++v) {
      if (form[v].is_zero()) continue;
      PolyQ part = mul_var_reduce(p, v);
      for (auto& [e, c] : part) {
        BigRat add = c * form[v];
        auto it = out.find(e);
        if (it == out.end()) out.emplace(e, add);
        else {
          it->second += add;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
    return out;
  }

  // matrix of multiplication by lambda from span(src basis) into H_{d+k}
  int64_t rank_of_image(const std::vector<PolyQ>& src_elems, int target_degree,
                        const std::vector<std::vector<BigRat>>& forms) const {
    std::vector<Expo> target = nf_monomials(target_degree);
    std::map<Expo, int> tpos;
    for (int i = 0; i < (int)target.size(); ++i) tpos.emplace(target[i], i);
    QMatrix mat(0, (int)target.size());
    for (const PolyQ& e0 : src_elems) {
      PolyQ cur = e0;
      for (const auto& f : forms) cur = mul_form_reduce(cur, f);
      SparseRow row;
      for (const auto& [e, c] : cur) row.emplace_back(tpos.at(e), c);
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      mat.append_row(std::move(row));
    }
    return exactla::rank(mat);
  }
};

std::vector<PolyQ> GradedQuotient::basis(int degree) const {
  QuotientOps ops{*this};
  std::vector<PolyQ> out;
  if (degree > act_.top_degree || degree < 0) return out;
  for (const Expo& e : ops.nf_monomials(degree)) {
    PolyQ p;
    p[e] = BigRat(1);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<int64_t> GradedQuotient::image_hilbert(
    const std::vector<Coords>& lambda) const {
  const int k = (int)lambda.size();
  const int N = act_.top_degree;
  std::vector<int64_t> ranks;
  if (k > N) return ranks;
  std::vector<std::vector<BigRat>> forms;
  for (const Coords& f : lambda) {
    auto pf = act_.project(*datum_, f);
    bool zero = true;
    for (const auto& c : pf)
      if (!c.is_zero()) zero = false;
    if (zero) return std::vector<int64_t>(std::max(0, N - k + 1), 0);
    forms.push_back(std::move(pf));
  }
  QuotientOps ops{*this};
  for (int d = 0; d + k <= N; ++d) {
    std::vector<PolyQ> src = basis(d);
    ranks.push_back(ops.rank_of_image(src, d + k, forms));
  }
  return ranks;
}

int64_t GradedQuotient::image_dimension(const std::vector<Coords>& lambda) const {
  int64_t total = 0;
  for (int64_t r : image_hilbert(lambda)) total += r;
  return total;
}

int64_t GradedQuotient::parabolic_invariant_image(
    const std::vector<Coords>& wprime_roots, const std::vector<Coords>& lambda) const {
  if (wprime_roots.empty()) return image_dimension(lambda);
  const int k = (int)lambda.size();
  const int N = act_.top_degree;
  if (k > N) return 0;

  std::vector<std::vector<BigRat>> forms;
  bool lambda_zero = false;
  for (const Coords& f : lambda) {
    auto pf = act_.project(*datum_, f);
    bool zero = true;
    for (const auto& c : pf)
      if (!c.is_zero()) zero = false;
    if (zero) lambda_zero = true;
    forms.push_back(std::move(pf));
  }

  // reflection data for the W' generators, in essential coordinates
  struct Refl {
    std::vector<BigRat> root;       // gamma
    std::vector<BigRat> gram_row;   // (z_j, gamma) entries
    BigRat norm2;
  };
  std::vector<std::vector<BigRat>> gram(act_.rank, std::vector<BigRat>(act_.rank));
  for (int i = 0; i < act_.rank; ++i)
    for (int j = 0; j < act_.rank; ++j)
      gram[i][j] = BigRat(datum_->rel_inner(act_.simples[i], act_.simples[j]));
  std::vector<Refl> refls;
  for (const Coords& g : wprime_roots) {
    Refl rf;
    rf.root = act_.project(*datum_, g);
    rf.gram_row.assign(act_.rank, BigRat(0));
    rf.norm2 = BigRat(0);
    for (int i = 0; i < act_.rank; ++i) {
      for (int j = 0; j < act_.rank; ++j)
        rf.gram_row[i] += gram[i][j] * rf.root[j];
    }
    for (int i = 0; i < act_.rank; ++i) rf.norm2 += rf.gram_row[i] * rf.root[i];
    if (rf.norm2.is_zero())
      throw internal_error("parabolic generator projects to an isotropic form");
    refls.push_back(std::move(rf));
  }
  auto act_on_form = [&](const Refl& rf, const std::vector<BigRat>& v) {
    // s_gamma(v) = v - (2 (v, gamma)/(gamma,gamma)) gamma
    BigRat pairing(0);
    for (int i = 0; i < act_.rank; ++i) pairing += rf.gram_row[i] * v[i];
    BigRat c = BigRat(2) * pairing / rf.norm2;
    std::vector<BigRat> out = v;
    for (int i = 0; i < act_.rank; ++i) out[i] = out[i] - c * rf.root[i];
    return out;
  };

  // hypothesis check: the generators permute the lambda factors, so the
  // product must be fixed; compare expanded products
  {
    auto expand = [&](const std::vector<std::vector<BigRat>>& fs) {
      PolyQ p;
      p[Expo(act_.rank, 0)] = BigRat(1);
      for (const auto& f : fs) {
        PolyQ next;
        for (const auto& [e, c] : p)
          for (int v = 0; v < act_.rank; ++v) {
            if (f[v].is_zero()) continue;
            Expo e2 = e;
            e2[v] += 1;
            BigRat add = c * f[v];
            auto it = next.find(e2);
            if (it == next.end()) next.emplace(std::move(e2), add);
            else {
              it->second += add;
              if (it->second.is_zero()) next.erase(it);
            }
          }
        p = std::move(next);
      }
      return p;
    };
    PolyQ base = expand(forms);
    for (const Refl& rf : refls) {
      std::vector<std::vector<BigRat>> moved;
      for (const auto& f : forms) moved.push_back(act_on_form(rf, f));
      if (expand(moved) != base)
        throw invalid_input("lambda is not invariant under the parabolic subgroup");
    }
  }
  if (lambda_zero) return 0;

  QuotientOps ops{*this};
  int64_t total = 0;
  for (int d = 0; d + k <= N; ++d) {
    std::vector<Expo> monos = ops.nf_monomials(d);
    if (monos.empty()) continue;
    std::map<Expo, int> pos;
    for (int i = 0; i < (int)monos.size(); ++i) pos.emplace(monos[i], i);
    // fixed space of W' acting on H_d
    std::vector<QMatrix> gens;
    for (const Refl& rf : refls) {
      QMatrix mat((int)monos.size(), (int)monos.size());
      for (int src = 0; src < (int)monos.size(); ++src) {
        // act variable by variable: z^e -> prod (s_gamma z_i)^{e_i}, reduced
        PolyQ cur;
        cur[Expo(act_.rank, 0)] = BigRat(1);
        for (int v = 0; v < act_.rank; ++v) {
          std::vector<BigRat> unit(act_.rank, BigRat(0));
          unit[v] = BigRat(1);
          std::vector<BigRat> img = act_on_form(rf, unit);
          for (int rep = 0; rep < monos[src][v]; ++rep)
            cur = ops.mul_form_reduce(cur, img);
        }
        for (const auto& [e, c] : cur) mat.set(pos.at(e), src, c);
      }
      gens.push_back(std::move(mat));
    }
    std::vector<PolyQ> fixed;
    for (const auto& vec : exactla::fixed_space(gens, (int)monos.size())) {
      PolyQ p;
      for (int i = 0; i < (int)monos.size(); ++i)
        if (!vec[i].is_zero()) p[monos[i]] = vec[i];
      fixed.push_back(std::move(p));
    }
    if (fixed.empty()) continue;
    total += ops.rank_of_image(fixed, d + k, forms);
  }
  return total;
}

}  // namespace cherdim::coinvariant
