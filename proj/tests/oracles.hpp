// Test-only oracles, deliberately independent of the library's computation
// paths: a brute-force coinvariant quotient built from explicitly written
// invariant generators, and the generic-orbit evaluation bound.
#ifndef CHERDIM_TESTS_ORACLES_HPP
#define CHERDIM_TESTS_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "cherdim/coinvariant.hpp"

namespace cherdim_tests {

using namespace cherdim;
using cherdim::coinvariant::Expo;
using cherdim::coinvariant::PolyQ;
using rootdata::Coords;
using rootdata::RootDatum;

struct OracleSetup {
  RootDatum datum;
  apartment::SlopeSpec slope;
  apartment::WallGroup wg;
};

inline OracleSetup oracle_setup(rootdata::GroupSpec spec, int64_t d1, int64_t m1) {
  OracleSetup s{rootdata::build_root_datum(spec), {}, {}};
  s.slope = apartment::make_slope(s.datum, d1, m1);
  s.wg = apartment::wall_group(s.datum, s.slope);
  return s;
}

struct BruteQuotient {
  int nvars;
  std::vector<PolyQ> gens;
  std::vector<std::vector<Expo>> monos;
  std::vector<std::map<Expo, int>> index;
  std::vector<exactla::EchelonBasis> ideal;
  std::vector<std::vector<int>> nf;

  static PolyQ mono(const Expo& e, BigRat c) {
    PolyQ p;
    p[e] = std::move(c);
    return p;
  }
  static void add_into(PolyQ& acc, const PolyQ& other) {
    for (const auto& [e, c] : other) {
      auto it = acc.find(e);
      if (it == acc.end()) acc.emplace(e, c);
      else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
      }
    }
  }
  static PolyQ mul(const PolyQ& a, const PolyQ& b) {
    PolyQ out;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        Expo e = ea;
        for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        BigRat add = ca * cb;
        auto it = out.find(e);
        if (it == out.end()) out.emplace(std::move(e), add);
        else {
          it->second += add;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    return out;
  }
  static PolyQ linear(int nvars, const std::vector<BigRat>& coeffs) {
    PolyQ p;
    for (int i = 0; i < nvars; ++i) {
      if (coeffs[i].is_zero()) continue;
      Expo e(nvars, 0);
      e[i] = 1;
      p[e] = coeffs[i];
    }
    return p;
  }

  BruteQuotient(int nv, std::vector<PolyQ> generators, int top)
      : nvars(nv), gens(std::move(generators)) {
    monos.resize(top + 1);
    index.resize(top + 1);
    nf.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
      Expo cur(nvars, 0);
      std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == nvars - 1) {
          cur[pos] = rem;
          monos[d].push_back(cur);
          return;
        }
        for (int k = rem; k >= 0; --k) {
          cur[pos] = k;
          rec(pos + 1, rem - k);
        }
        cur[pos] = 0;
      };
      if (nvars == 0) {
        if (d == 0) monos[d].push_back({});
      } else {
        rec(0, d);
      }
      std::sort(monos[d].begin(), monos[d].end(), coinvariant::grevlex_less);
      for (int i = 0; i < (int)monos[d].size(); ++i) index[d].emplace(monos[d][i], i);
      ideal.emplace_back((int)monos[d].size());
      for (const PolyQ& g : gens) {
        int dg = g.empty() ? 0 : coinvariant::total_degree(g.begin()->first);
        if (dg == 0 || dg > d) continue;
        for (const Expo& m : monos[d - dg]) {
          PolyQ prod = mul(g, mono(m, BigRat(1)));
          exactla::SparseRow row;
          for (const auto& [e, c] : prod) row.emplace_back(index[d].at(e), c);
          std::sort(row.begin(), row.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
          ideal[d].insert(std::move(row));
        }
      }
      for (int i = 0; i < (int)monos[d].size(); ++i)
        if (!ideal[d].is_pivot(i)) nf[d].push_back(i);
    }
  }

  int hilbert(int d) const { return (int)nf[d].size(); }

  int64_t image_dim(const std::vector<PolyQ>& lambda) const {
    int k = (int)lambda.size();
    int top = (int)monos.size() - 1;
    int64_t total = 0;
    for (int d = 0; d + k <= top; ++d) {
      exactla::QMatrix mat(0, (int)monos[d + k].size());
      for (int mi : nf[d]) {
        PolyQ cur = mono(monos[d][mi], BigRat(1));
        for (const PolyQ& f : lambda) cur = mul(cur, f);
        exactla::SparseRow row;
        for (const auto& [e, c] : cur) row.emplace_back(index[d + k].at(e), c);
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        ideal[d + k].reduce(row);
        mat.append_row(std::move(row));
      }
      total += exactla::rank(mat);
    }
    return total;
  }
};

// Explicit invariant generators for the small wall-group types, written in
// the ambient relative simple-root coordinates.
inline std::vector<PolyQ> explicit_invariants(const OracleSetup& s) {
  const RootDatum& d = s.datum;
  int r = d.rel_rank;
  auto lin = [&](const std::vector<Rat>& coeffs) {
    std::vector<BigRat> b;
    for (const Rat& q : coeffs) b.emplace_back(q);
    return BruteQuotient::linear(r, b);
  };
  auto root_form = [&](const Coords& c) {
    std::vector<Rat> v;
    for (int x : c) v.push_back(Rat(x));
    return lin(v);
  };
  auto gram_quadratic = [&]() {
    PolyQ q;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        Coords ei(r, 0), ej(r, 0);
        ei[i] = 1;
        ej[j] = 1;
        Rat g = d.rel_inner(ei, ej);
        if (g.is_zero()) continue;
        Expo e(r, 0);
        e[i] += 1;
        e[j] += 1;
        auto it = q.find(e);
        if (it == q.end()) q.emplace(e, BigRat(g));
        else it->second += BigRat(g);
      }
    return q;
  };

  std::vector<PolyQ> gens;
  if (!s.wg.positive_roots.empty()) {
    std::vector<std::vector<BigRat>> rows;
    for (const auto& w : s.wg.positive_roots) {
      std::vector<BigRat> row;
      for (int j = 0; j < r; ++j) {
        Coords ej(r, 0);
        ej[j] = 1;
        row.emplace_back(d.rel_inner(d.rel_roots[w.rel_idx].coords, ej));
      }
      rows.push_back(std::move(row));
    }
    for (const auto& v : exactla::kernel(exactla::QMatrix::from_rows(rows)))
      gens.push_back(BruteQuotient::linear(r, v));
  } else {
    for (int j = 0; j < r; ++j) {
      std::vector<Rat> unit(r, Rat(0));
      unit[j] = Rat(1);
      gens.push_back(lin(unit));
    }
  }

  std::vector<Coords> wall_parts;
  for (const auto& w : s.wg.positive_roots)
    wall_parts.push_back(d.rel_roots[w.rel_idx].coords);
  auto shortest_parts = [&]() {
    std::vector<Coords> shorts;
    Rat mn;
    bool first = true;
    for (const auto& c : wall_parts) {
      Rat n2 = d.rel_inner(c, c);
      if (first || n2 < mn) { mn = n2; first = false; }
    }
    for (const auto& c : wall_parts)
      if (d.rel_inner(c, c) == mn) shorts.push_back(c);
    return shorts;
  };

  const std::string& t = s.wg.type_name;
  if (t == "trivial") {
    // nothing beyond the degree-one span
  } else if (t == "A1") {
    gens.push_back(
        BruteQuotient::mul(root_form(wall_parts[0]), root_form(wall_parts[0])));
  } else if (t == "A1+A1") {
    for (const auto& g : wall_parts)
      gens.push_back(BruteQuotient::mul(root_form(g), root_form(g)));
  } else if (t == "A2") {
    Coords g1 = s.wg.simples[0], g2 = s.wg.simples[1];
    auto comb = [&](Rat a, Rat b) {
      std::vector<Rat> v(r, Rat(0));
      for (int i = 0; i < r; ++i) v[i] = a * Rat(g1[i]) + b * Rat(g2[i]);
      return v;
    };
    PolyQ x1 = lin(comb(Rat(2, 3), Rat(1, 3)));
    PolyQ x2 = lin(comb(Rat(-1, 3), Rat(1, 3)));
    PolyQ x3 = lin(comb(Rat(-1, 3), Rat(-2, 3)));
    PolyQ e2 = BruteQuotient::mul(x1, x2);
    BruteQuotient::add_into(e2, BruteQuotient::mul(x1, x3));
    BruteQuotient::add_into(e2, BruteQuotient::mul(x2, x3));
    gens.push_back(e2);
    gens.push_back(BruteQuotient::mul(BruteQuotient::mul(x1, x2), x3));
  } else if (t == "B2") {
    auto shorts = shortest_parts();
    if (shorts.size() != 2) throw internal_error("oracle: B2 needs 2 short walls");
    PolyQ u2 = BruteQuotient::mul(root_form(shorts[0]), root_form(shorts[0]));
    PolyQ v2 = BruteQuotient::mul(root_form(shorts[1]), root_form(shorts[1]));
    PolyQ sum = u2;
    BruteQuotient::add_into(sum, v2);
    gens.push_back(sum);
    gens.push_back(BruteQuotient::mul(u2, v2));
  } else if (t == "G2") {
    gens.push_back(gram_quadratic());
    auto shorts = shortest_parts();
    if (shorts.size() != 3) throw internal_error("oracle: G2 needs 3 short walls");
    PolyQ p = root_form(shorts[0]);
    p = BruteQuotient::mul(p, root_form(shorts[1]));
    p = BruteQuotient::mul(p, root_form(shorts[2]));
    gens.push_back(BruteQuotient::mul(p, p));
  } else {
    throw internal_error("oracle: no explicit invariants for type " + t);
  }
  return gens;
}

// #{ w in W : lambda(w xi) != 0 } for a regular rational point xi.
inline int64_t generic_orbit_count(const OracleSetup& s,
                                   const std::vector<Coords>& lambda) {
  const RootDatum& d = s.datum;
  int r = d.rel_rank;
  using Mat = std::vector<std::vector<Rat>>;
  auto reflect_form = [&](const Coords& gamma, const std::vector<Rat>& v) {
    Rat vg(0);
    for (int i = 0; i < r; ++i) {
      Coords ei(r, 0);
      ei[i] = 1;
      vg += v[i] * d.rel_inner(ei, gamma);
    }
    Rat c = Rat(2) * vg / d.rel_inner(gamma, gamma);
    std::vector<Rat> out = v;
    for (int i = 0; i < r; ++i) out[i] -= c * Rat(gamma[i]);
    return out;
  };
  Mat id(r, std::vector<Rat>(r, Rat(0)));
  for (int i = 0; i < r; ++i) id[i][i] = Rat(1);
  auto apply_refl = [&](const Coords& gamma, const Mat& m) {
    Mat out(r, std::vector<Rat>(r));
    for (int c = 0; c < r; ++c) {
      std::vector<Rat> col(r);
      for (int i = 0; i < r; ++i) col[i] = m[i][c];
      col = reflect_form(gamma, col);
      for (int i = 0; i < r; ++i) out[i][c] = col[i];
    }
    return out;
  };
  std::set<std::vector<std::pair<int64_t, int64_t>>> seen;
  auto key_of = [&](const Mat& m) {
    std::vector<std::pair<int64_t, int64_t>> k;
    for (const auto& row : m)
      for (const Rat& q : row) k.emplace_back(q.num(), q.den());
    return k;
  };
  std::vector<Mat> elements{id}, frontier{id};
  seen.insert(key_of(id));
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (const Mat& m : frontier)
      for (const auto& w : s.wg.positive_roots) {
        Mat g = apply_refl(d.rel_roots[w.rel_idx].coords, m);
        if (seen.insert(key_of(g)).second) {
          next.push_back(g);
          elements.push_back(g);
        }
      }
    frontier = std::move(next);
  }
  if ((int64_t)elements.size() != s.wg.order)
    throw internal_error("oracle: wall group closure has the wrong order");

  std::vector<Rat> xi(r);
  for (int i = 0; i < r; ++i) xi[i] = Rat(1, 2 * i + 3) + Rat(i + 1);
  for (const auto& w : s.wg.positive_roots) {
    Rat v(0);
    const Coords& gamma = d.rel_roots[w.rel_idx].coords;
    for (int i = 0; i < r; ++i) {
      Coords ei(r, 0);
      ei[i] = 1;
      v += xi[i] * d.rel_inner(ei, gamma);
    }
    if (v.is_zero()) throw internal_error("oracle: evaluation point not regular");
  }

  int64_t count = 0;
  for (const Mat& m : elements) {
    bool nonzero = true;
    for (const Coords& f : lambda) {
      std::vector<Rat> wf(r, Rat(0));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) wf[i] += m[i][j] * Rat(f[j]);
      Rat val(0);
      for (int i = 0; i < r; ++i) val += wf[i] * xi[i];
      if (val.is_zero()) { nonzero = false; break; }
    }
    if (nonzero) ++count;
  }
  return count;
}

inline std::vector<std::vector<Coords>> clan_lambdas(const OracleSetup& s) {
  auto en = apartment::enumerate_contributing_alcoves(s.datum, s.slope, s.wg);
  auto clans = apartment::clan_decomposition(en, s.datum);
  std::vector<std::vector<Coords>> out;
  for (const auto& c : clans) {
    std::vector<Coords> lambda;
    for (int idx : c.lambda)
      lambda.push_back(s.datum.rel_roots[en.nu_roots[idx].rel_idx].coords);
    out.push_back(std::move(lambda));
  }
  return out;
}

}  // namespace cherdim_tests

#endif
