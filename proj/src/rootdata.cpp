#include "cherdim/rootdata.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cherdim::rootdata {

std::vector<std::vector<int>> cartan_matrix(char family, int n) {
  auto C = std::vector<std::vector<int>>(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) C[i][i] = 2;
  auto chain = [&](int i, int j) { C[i][j] = C[j][i] = -1; };
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      break;
    case 'B':
      // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
      for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
      if (n >= 2) { C[n - 2][n - 1] = -2; C[n - 1][n - 2] = -1; }
      break;
    case 'C':
      // alpha_n long
      for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
      if (n >= 2) { C[n - 2][n - 1] = -1; C[n - 1][n - 2] = -2; }
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
      if (n >= 3) chain(n - 3, n - 1);
      break;
    case 'E': {
      // Bourbaki numbering: node 2 hangs off node 4.
      if (n < 6 || n > 8) throw invalid_input("E family needs rank 6..8");
      chain(0, 2);
      chain(2, 3);
      chain(1, 3);
      chain(3, 4);
      for (int i = 4; i + 1 < n; ++i) chain(i, i + 1);
      break;
    }
    case 'F':
      if (n != 4) throw invalid_input("F family needs rank 4");
      chain(0, 1);
      C[1][2] = -2;
      C[2][1] = -1;  // alpha_1, alpha_2 long; alpha_3, alpha_4 short
      chain(2, 3);
      break;
    case 'G':
      if (n != 2) throw invalid_input("G family needs rank 2");
      // alpha_1 long, alpha_2 short
      C[0][1] = -3;
      C[1][0] = -1;
      break;
    default:
      throw invalid_input(std::string("unknown family '") + family + "'");
  }
  return C;
}

namespace {

std::vector<Rat> symmetrize_norms(const std::vector<std::vector<int>>& C) {
  // d_i C[i][j] = d_j C[j][i] with d_i = (alpha_i, alpha_i)/2; propagate
  // over the diagram then rescale so the minimum norm2 is reasonable.
  int n = (int)C.size();
  std::vector<Rat> d(n, Rat(0));
  for (int start = 0; start < n; ++start) {
    if (!d[start].is_zero()) continue;
    d[start] = Rat(1);
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (i == j || C[i][j] == 0 || !d[j].is_zero()) continue;
        d[j] = d[i] * Rat(C[j][i]) / Rat(C[i][j]);
        stack.push_back(j);
      }
    }
  }
  std::vector<Rat> norm2(n);
  // normalize long roots to norm 2 within each component scale class
  Rat mx(0);
  for (auto& x : d)
    if (mx < x) mx = x;
  for (int i = 0; i < n; ++i) norm2[i] = d[i] * Rat(2) / mx;
  return norm2;
}

}  // namespace

RootSystem RootSystem::from_cartan(const std::vector<std::vector<int>>& cartan) {
  RootSystem rs;
  rs.rank_ = (int)cartan.size();
  rs.cartan_ = cartan;
  rs.simple_norm2_ = symmetrize_norms(cartan);

  std::set<Coords> seen;
  std::vector<Coords> frontier;
  for (int i = 0; i < rs.rank_; ++i) {
    Coords c(rs.rank_, 0);
    c[i] = 1;
    seen.insert(c);
    frontier.push_back(c);
  }
  while (!frontier.empty()) {
    std::vector<Coords> next;
    for (const Coords& b : frontier) {
      for (int i = 0; i < rs.rank_; ++i) {
        Coords rb = rs.reflect(b, i);
        if (seen.insert(rb).second) next.push_back(rb);
        Coords nb = b;
        for (auto& x : nb) x = -x;
        if (seen.insert(nb).second) next.push_back(nb);
      }
    }
    frontier = std::move(next);
  }
  rs.roots_.assign(seen.begin(), seen.end());

  // exponents from the height histogram of positive roots
  std::map<int, int> by_height;
  for (const Coords& c : rs.roots_) {
    int h = rs.height(c);
    if (h > 0) by_height[h]++;
  }
  int maxh = by_height.empty() ? 0 : by_height.rbegin()->first;
  for (int h = maxh; h >= 1; --h) {
    int count_h = by_height.count(h) ? by_height[h] : 0;
    int count_h1 = by_height.count(h + 1) ? by_height[h + 1] : 0;
    for (int k = 0; k < count_h - count_h1; ++k) rs.exponents_.push_back(h);
  }
  std::sort(rs.exponents_.begin(), rs.exponents_.end());
  if ((int)rs.exponents_.size() != rs.rank_)
    throw internal_error("height partition did not yield rank many exponents");
  for (int m : rs.exponents_) rs.degrees_.push_back(m + 1);
  return rs;
}

int RootSystem::pair_with_simple_coroot(const Coords& beta, int j) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i) s += beta[i] * cartan_[i][j];
  return s;
}

Rat RootSystem::inner(const Coords& a, const Coords& b) const {
  // (alpha_i, alpha_j) = C[i][j] * norm2_j / 2
  Rat s;
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) {
      if (b[j] == 0 || cartan_[i][j] == 0) continue;
      s += Rat(a[i]) * Rat(b[j]) * Rat(cartan_[i][j]) * simple_norm2_[j] / Rat(2);
    }
  }
  return s;
}

Rat RootSystem::norm2(const Coords& beta) const { return inner(beta, beta); }

Coords RootSystem::reflect(const Coords& beta, int i) const {
  Coords r = beta;
  r[i] -= pair_with_simple_coroot(beta, i);
  return r;
}

int64_t RootSystem::weyl_order() const {
  int64_t o = 1;
  for (int d : degrees_) o = detail::checked_cast((__int128)o * d, "weyl_order");
  return o;
}

int64_t RootSystem::dual_coxeter_number() const {
  // locate the highest root and sum its coroot coefficients
  const Coords* best = nullptr;
  int besth = -1;
  for (const Coords& c : roots_) {
    int h = height(c);
    if (h > besth) { besth = h; best = &c; }
  }
  Rat sum(1);
  Rat tn = norm2(*best);
  for (int j = 0; j < rank_; ++j)
    sum += Rat((*best)[j]) * simple_norm2_[j] / tn;
  return sum.as_integer("dual_coxeter_number");
}

std::vector<DiagramFactor> classify_diagram(
    const std::vector<std::vector<int>>& cartan,
    const std::vector<Rat>& norm2) {
  int n = (int)cartan.size();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v)
        if (v != u && cartan[u][v] != 0 && comp[v] < 0) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }

  std::vector<DiagramFactor> out;
  for (int c = 0; c < ncomp; ++c) {
    DiagramFactor f;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) f.nodes.push_back(i);
    int k = (int)f.nodes.size();
    auto edge_mult = [&](int a, int b) {
      return cartan[f.nodes[a]][f.nodes[b]] * cartan[f.nodes[b]][f.nodes[a]];
    };
    int doubles = 0, triples = 0;
    std::vector<int> deg(k, 0);
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) {
        int m = edge_mult(a, b);
        if (m == 0) continue;
        ++deg[a];
        ++deg[b];
        if (m == 2) ++doubles;
        if (m == 3) ++triples;
      }
    auto name = [&]() -> std::string {
      if (k == 1) return "A1";
      if (triples == 1) return "G2";
      if (doubles == 1) {
        if (k == 2) return "B2";
        int branch = 0;
        for (int a = 0; a < k; ++a)
          if (deg[a] > 2) ++branch;
        if (branch) throw internal_error("unrecognized diagram (branched, double edge)");
        // middle double edge -> F4; terminal -> B or C by short-root count
        bool terminal = false;
        for (int a = 0; a < k; ++a)
          for (int b = a + 1; b < k; ++b)
            if (edge_mult(a, b) == 2 && (deg[a] == 1 || deg[b] == 1)) terminal = true;
        if (!terminal) {
          if (k == 4) return "F4";
          throw internal_error("unrecognized diagram (interior double edge)");
        }
        Rat mx(0);
        for (int a : f.nodes)
          if (mx < norm2[a]) mx = norm2[a];
        int longs = 0;
        for (int a : f.nodes)
          if (norm2[a] == mx) ++longs;
        return (longs == 1 ? "C" : "B") + std::to_string(k);
      }
      // simply-laced: path or one branch node
      int branch = -1;
      for (int a = 0; a < k; ++a) {
        if (deg[a] > 3) throw internal_error("unrecognized diagram (degree > 3)");
        if (deg[a] == 3) {
          if (branch >= 0) throw internal_error("unrecognized diagram (two branches)");
          branch = a;
        }
      }
      if (branch < 0) return "A" + std::to_string(k);
      // arm lengths from the branch node
      std::vector<int> arms;
      for (int a = 0; a < k; ++a) {
        if (a == branch || edge_mult(a, branch) == 0) continue;
        int len = 1, prev = branch, cur = a;
        while (true) {
          int nxt = -1;
          for (int b = 0; b < k; ++b)
            if (b != prev && b != cur && edge_mult(b, cur) != 0) nxt = b;
          if (nxt < 0) break;
          prev = cur;
          cur = nxt;
          ++len;
        }
        arms.push_back(len);
      }
      std::sort(arms.begin(), arms.end());
      if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(k);
      if (arms[0] == 1 && arms[1] == 2 && arms[2] == 2) return "E6";
      if (arms[0] == 1 && arms[1] == 2 && arms[2] == 3) return "E7";
      if (arms[0] == 1 && arms[1] == 2 && arms[2] == 4) return "E8";
      throw internal_error("unrecognized simply-laced diagram");
    };
    f.type = name();
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const DiagramFactor& a, const DiagramFactor& b) {
    return a.nodes.front() < b.nodes.front();
  });
  return out;
}

void GroupSpec::validate() const {
  if (family < 'A' || family > 'G')
    throw invalid_input("family must be one of A,B,C,D,E,F,G");
  auto need = [&](bool ok, const std::string& rule) {
    if (!ok) throw invalid_input("invalid group spec " + name() + ": " + rule);
  };
  switch (family) {
    case 'A': need(rank >= 1, "A family needs rank >= 1"); break;
    case 'B': need(rank >= 2, "B family needs rank >= 2"); break;
    case 'C': need(rank >= 2, "C family needs rank >= 2"); break;
    case 'D': need(rank >= 4, "D family needs rank >= 4"); break;
    case 'E': need(rank >= 6 && rank <= 8, "E family needs rank in {6,7,8}"); break;
    case 'F': need(rank == 4, "F family needs rank 4"); break;
    case 'G': need(rank == 2, "G family needs rank 2"); break;
  }
  if (e == 1) return;
  if (e == 2) {
    need(family == 'A' || family == 'D' || (family == 'E' && rank == 6),
         "twist order 2 exists only for A (rank >= 2), D, and E6");
    if (family == 'A') need(rank >= 2, "twisted A needs rank >= 2");
    return;
  }
  if (e == 3) {
    need(family == 'D' && rank == 4, "twist order 3 exists only for D4");
    return;
  }
  throw invalid_input("twist order must be 1, 2, or 3");
}

std::string GroupSpec::name() const {
  std::string s;
  if (e > 1) s += std::to_string(e) + "^";
  s += family;
  s += std::to_string(rank);
  return s;
}

Rat RootDatum::rel_inner(const Coords& a, const Coords& b) const {
  Rat s;
  int r = rel_rank;
  for (int i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < r; ++j) {
      if (b[j] == 0 || rel_cartan[i][j] == 0) continue;
      s += Rat(a[i]) * Rat(b[j]) * Rat(rel_cartan[i][j]) * rel_simple_norm2[j] / Rat(2);
    }
  }
  return s;
}

int RootDatum::t_fixed_dim(const Rat& nu) const {
  int count = 0;
  for (size_t i = 0; i < degrees.size(); ++i) {
    Rat x = nu * Rat(degrees[i] - 1) + Rat(eps[i], spec.e);
    if (x.is_integer()) ++count;
  }
  return count;
}

bool RootDatum::is_regular_number(int64_t m1) const {
  return std::find(regular_numbers.begin(), regular_numbers.end(), m1) !=
         regular_numbers.end();
}

bool RootDatum::is_elliptic_regular_number(int64_t m1) const {
  return std::find(elliptic_regular_numbers.begin(), elliptic_regular_numbers.end(),
                   m1) != elliptic_regular_numbers.end();
}

namespace {

// Relative root list for a reduced system given per-root offset classes.
std::vector<RelRoot> reduced_relative_roots(const RootSystem& rs, int e,
                                            bool max_norm_is_fixed_orbit) {
  // max_norm_is_fixed_orbit: the longest relative roots come from
  // theta-fixed absolute roots (offset in Z, multiplicity 1); all others
  // have offsets in (1/e)Z and multiplicity e.
  Rat mx(0);
  for (const Coords& c : rs.roots())
    if (mx < rs.norm2(c)) mx = rs.norm2(c);
  std::vector<RelRoot> out;
  for (const Coords& c : rs.roots()) {
    RelRoot rr;
    rr.coords = c;
    rr.height = rs.height(c);
    rr.norm2 = rs.norm2(c);
    bool longest = max_norm_is_fixed_orbit && rr.norm2 == mx;
    rr.offset_den = longest ? 1 : e;
    rr.half_shift = false;
    rr.mult = longest ? 1 : e;
    rr.coroot.resize(rs.rank());
    for (int j = 0; j < rs.rank(); ++j) {
      Coords ej(rs.rank(), 0);
      ej[j] = 1;
      Rat v = Rat(2) * rs.inner(ej, c) / rr.norm2;
      rr.coroot[j] = (int)v.as_integer("relative coroot pairing");
    }
    out.push_back(std::move(rr));
  }
  return out;
}

std::vector<int64_t> split_regular_numbers(const std::vector<int>& degrees) {
  // Lehrer-Springer: m is regular iff it divides as many degrees as
  // codegrees (codegree = degree - 2 for Weyl groups).
  std::vector<int64_t> out;
  int h = *std::max_element(degrees.begin(), degrees.end());
  for (int m = 1; m <= h; ++m) {
    int a = 0, b = 0;
    for (int d : degrees) {
      if (d % m == 0) ++a;
      if ((d - 2) % m == 0) ++b;
    }
    if (a == b) out.push_back(m);
  }
  return out;
}

}  // namespace

RootDatum build_root_datum(const GroupSpec& spec) {
  spec.validate();
  RootDatum d;
  d.spec = spec;
  d.absolute = RootSystem::from_cartan(cartan_matrix(spec.family, spec.rank));
  d.degrees = d.absolute.degrees();
  d.exponents = d.absolute.exponents();
  d.abs_root_count = d.absolute.num_roots();

  // twist exponents on the fundamental invariants
  d.eps.assign(d.degrees.size(), 0);
  if (spec.e == 2 && (spec.family == 'A' || spec.family == 'E')) {
    for (size_t i = 0; i < d.degrees.size(); ++i) d.eps[i] = d.degrees[i] % 2;
  } else if (spec.e == 2 && spec.family == 'D') {
    // the Pfaffian (one invariant of degree = rank) changes sign
    for (size_t i = 0; i < d.degrees.size(); ++i)
      if (d.degrees[i] == spec.rank) { d.eps[i] = 1; break; }
  } else if (spec.e == 3) {
    // D4 triality permutes the two degree-4 invariants
    bool first = true;
    for (size_t i = 0; i < d.degrees.size(); ++i)
      if (d.degrees[i] == 4) { d.eps[i] = first ? 1 : 2; first = false; }
  }

  // relative system
  if (spec.e == 1) {
    d.rel_rank = spec.rank;
    d.rel_cartan = d.absolute.cartan();
    d.rel_simple_norm2 = d.absolute.simple_norm2();
    d.rel_roots = reduced_relative_roots(d.absolute, 1, false);
    for (auto& rr : d.rel_roots) { rr.offset_den = 1; rr.mult = 1; }
    d.rel_type = std::string(1, spec.family) + std::to_string(spec.rank);
  } else if (spec.e == 2 && spec.family == 'A' && spec.rank % 2 == 1) {
    int n = (spec.rank + 1) / 2;
    RootSystem rel = RootSystem::from_cartan(cartan_matrix('C', n));
    d.rel_rank = n;
    d.rel_cartan = rel.cartan();
    d.rel_simple_norm2 = rel.simple_norm2();
    d.rel_roots = reduced_relative_roots(rel, 2, true);
    d.rel_type = "C" + std::to_string(n);
  } else if (spec.e == 2 && spec.family == 'A' && spec.rank % 2 == 0) {
    int n = spec.rank / 2;
    RootSystem rel = RootSystem::from_cartan(cartan_matrix(n >= 2 ? 'B' : 'A', n));
    d.rel_rank = n;
    d.rel_cartan = rel.cartan();
    d.rel_simple_norm2 = rel.simple_norm2();
    d.rel_roots = reduced_relative_roots(rel, 2, false);
    // non-reduced: double every shortest root; doubled roots are the
    // longest ones, with offsets in 1/2 + Z and multiplicity 1
    Rat mn = d.rel_roots.front().norm2;
    for (const auto& rr : d.rel_roots)
      if (rr.norm2 < mn) mn = rr.norm2;
    std::vector<RelRoot> doubled;
    for (const auto& rr : d.rel_roots) {
      if (rr.norm2 != mn) continue;
      RelRoot dd = rr;
      for (auto& x : dd.coords) x *= 2;
      dd.height = 2 * rr.height;
      dd.norm2 = rr.norm2 * Rat(4);
      dd.offset_den = 1;
      dd.half_shift = true;
      dd.mult = 1;
      for (size_t j = 0; j < dd.coroot.size(); ++j) {
        if (rr.coroot[j] % 2 != 0)
          throw internal_error("doubled-root coroot is not integral");
        dd.coroot[j] = rr.coroot[j] / 2;
      }
      doubled.push_back(std::move(dd));
    }
    for (auto& dd : doubled) d.rel_roots.push_back(std::move(dd));
    d.rel_type = "BC" + std::to_string(n);
  } else if (spec.e == 2 && spec.family == 'D') {
    int n = spec.rank - 1;
    RootSystem rel = RootSystem::from_cartan(cartan_matrix(n >= 2 ? 'B' : 'A', n));
    d.rel_rank = n;
    d.rel_cartan = rel.cartan();
    d.rel_simple_norm2 = rel.simple_norm2();
    d.rel_roots = reduced_relative_roots(rel, 2, true);
    d.rel_type = "B" + std::to_string(n);
  } else if (spec.e == 2 && spec.family == 'E') {
    RootSystem rel = RootSystem::from_cartan(cartan_matrix('F', 4));
    d.rel_rank = 4;
    d.rel_cartan = rel.cartan();
    d.rel_simple_norm2 = rel.simple_norm2();
    d.rel_roots = reduced_relative_roots(rel, 2, true);
    d.rel_type = "F4";
  } else {  // e == 3, D4
    RootSystem rel = RootSystem::from_cartan(cartan_matrix('G', 2));
    d.rel_rank = 2;
    d.rel_cartan = rel.cartan();
    d.rel_simple_norm2 = rel.simple_norm2();
    d.rel_roots = reduced_relative_roots(rel, 3, true);
    d.rel_type = "G2";
  }

  // multiplicity bookkeeping must recover the absolute root count
  {
    int64_t total = 0;
    for (const auto& rr : d.rel_roots) total += rr.mult;
    if (total != d.abs_root_count)
      throw internal_error("relative multiplicities do not sum to #roots(abs)");
  }

  // marks: beta = highest weight of the relative torus on the degree-nu
  // graded piece; for e=1 the highest root, otherwise the dominant short
  // root (doubled in the non-reduced case)
  auto is_dominant = [&](const RelRoot& rr) {
    for (int j = 0; j < d.rel_rank; ++j) {
      Coords ej(d.rel_rank, 0);
      ej[j] = 1;
      Rat p = Rat(2) * d.rel_inner(rr.coords, ej) / d.rel_simple_norm2[j];
      if (p.sign() < 0) return false;
    }
    return true;
  };
  const RelRoot* beta = nullptr;
  if (spec.e == 1) {
    for (const auto& rr : d.rel_roots)
      if (!beta || rr.height > beta->height) beta = &rr;
  } else {
    Rat target_norm = d.rel_roots.front().norm2;
    bool bc = d.rel_type.substr(0, 2) == "BC";
    if (bc) {
      for (const auto& rr : d.rel_roots)
        if (target_norm < rr.norm2) target_norm = rr.norm2;
    } else {
      for (const auto& rr : d.rel_roots)
        if (rr.norm2 < target_norm) target_norm = rr.norm2;
    }
    for (const auto& rr : d.rel_roots) {
      if (rr.norm2 != target_norm || !is_dominant(rr)) continue;
      if (beta) throw internal_error("dominant root of extreme norm is not unique");
      beta = &rr;
    }
  }
  if (!beta) throw internal_error("no highest weight found for the marks");
  for (int x : beta->coords) d.marks.push_back(x);

  d.a0_dual = (d.rel_type.substr(0, 2) == "BC") ? 2 : 1;
  Rat bn = beta->norm2;
  for (int j = 0; j < d.rel_rank; ++j) {
    Rat a = Rat(d.a0_dual) * Rat(d.marks[j]) * d.rel_simple_norm2[j] / bn;
    d.dual_marks.push_back(a.as_integer("dual mark"));
  }

  int64_t mark_sum = 1;
  for (int64_t a : d.marks) mark_sum += a;
  d.h_theta = spec.e * mark_sum;
  d.h_theta_dual = d.a0_dual;
  for (int64_t a : d.dual_marks) d.h_theta_dual += a;

  if (d.h_theta * d.rel_rank != d.abs_root_count)
    throw internal_error("h_theta * r != #roots(abs)");
  if (d.h_theta_dual != d.absolute.dual_coxeter_number())
    throw internal_error("h_theta_dual != dual Coxeter number");
  if (!twist_exponents_check(d))
    throw internal_error("twist exponent sum identity failed");

  // theta-regular numbers
  if (spec.e == 1) {
    d.regular_numbers = split_regular_numbers(d.degrees);
  } else {
    auto key_eq = [&](char f, int rr, int ee) {
      return spec.family == f && spec.rank == rr && spec.e == ee;
    };
    if (key_eq('A', 2, 2)) d.regular_numbers = {1, 2, 6};
    else if (key_eq('A', 3, 2)) d.regular_numbers = {1, 2, 6};
    else if (key_eq('A', 4, 2)) d.regular_numbers = {1, 2, 10};
    else if (key_eq('D', 4, 3)) d.regular_numbers = {1, 3, 6, 12};
    else d.regular_table_known = false;
  }
  for (int64_t m : d.regular_numbers)
    if (d.t_fixed_dim(Rat(1, m)) == 0) d.elliptic_regular_numbers.push_back(m);
  if (d.regular_table_known &&
      std::find(d.elliptic_regular_numbers.begin(), d.elliptic_regular_numbers.end(),
                d.h_theta) == d.elliptic_regular_numbers.end())
    throw internal_error("twisted Coxeter number is not in the elliptic list");

  return d;
}

bool twist_exponents_check(const RootDatum& d) {
  Rat lhs;
  for (int ei : d.eps) lhs += Rat(ei, d.spec.e);
  Rat rhs = Rat(d.spec.rank - d.rel_rank, 2);
  return lhs == rhs;
}

}  // namespace cherdim::rootdata
