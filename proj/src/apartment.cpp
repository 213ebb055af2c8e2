#include "cherdim/apartment.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "cherdim/exactla.hpp"

namespace cherdim::apartment {

using rootdata::Coords;
using rootdata::RelRoot;

namespace {

std::string join_regulars(const std::vector<int64_t>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

}  // namespace

SlopeSpec make_slope(const RootDatum& datum, int64_t d1, int64_t m1) {
  if (d1 <= 0 || m1 <= 0) throw invalid_input("slope must be positive");
  int64_t g = gcd64(d1, m1);
  d1 /= g;
  m1 /= g;
  if (!datum.regular_table_known)
    throw invalid_input("no theta-regular number table is available for type " +
                        datum.spec.name() + "; cannot validate the slope");
  if (!datum.is_regular_number(m1))
    throw invalid_input("denominator " + std::to_string(m1) +
                        " is not a theta-regular number for " + datum.spec.name() +
                        "; regular numbers are " + join_regulars(datum.regular_numbers));
  SlopeSpec s;
  s.d1 = d1;
  s.m1 = m1;
  s.m = lcm64(m1, datum.spec.e);
  s.d = d1 * (s.m / m1);
  s.nu = Rat(d1, m1);
  s.t_fixed_dim = datum.t_fixed_dim(s.nu);
  s.elliptic = (s.t_fixed_dim == 0);
  return s;
}

RatVec fundamental_barycenter(const RootDatum& datum) {
  int r = datum.rel_rank;
  RatVec x0(r);
  for (int i = 0; i < r; ++i)
    x0[i] = Rat(1, (int64_t)(r + 1) * datum.spec.e * datum.marks[i]);
  return x0;
}

Rat eval_affine(const RootDatum& datum, const AffineRoot& a, const RatVec& p) {
  return dot_iv(datum.rel_roots[a.rel_idx].coords, p) + a.offset;
}

std::vector<AffineRoot> nu_weight_roots(const RootDatum& datum,
                                        const SlopeSpec& slope) {
  std::vector<AffineRoot> out;
  for (int i = 0; i < (int)datum.rel_roots.size(); ++i) {
    const RelRoot& rr = datum.rel_roots[i];
    Rat n = slope.nu * Rat(1 - rr.height);
    if (rr.offset_admissible(n)) out.push_back({i, n});
  }
  return out;
}

WallGroup wall_group(const RootDatum& datum, const SlopeSpec& slope) {
  WallGroup wg;
  RatVec x0 = fundamental_barycenter(datum);
  std::set<Coords> positive_parts;
  for (int i = 0; i < (int)datum.rel_roots.size(); ++i) {
    const RelRoot& rr = datum.rel_roots[i];
    Rat n = Rat(0) - slope.nu * Rat(rr.height);
    if (!rr.offset_admissible(n)) continue;
    Rat at_x0 = dot_iv(rr.coords, x0) + n;
    if (at_x0.is_zero())
      throw internal_error("fundamental barycenter lies on a wall-group wall");
    if (at_x0.sign() > 0) {
      wg.positive_roots.push_back({i, n});
      positive_parts.insert(rr.coords);
    }
  }
  wg.reflection_count = (int)wg.positive_roots.size();

  // simple system: indecomposable positive linear parts
  for (const Coords& b : positive_parts) {
    bool decomposable = false;
    for (const Coords& g : positive_parts) {
      if (g == b) continue;
      Coords rest(b.size());
      for (size_t k = 0; k < b.size(); ++k) rest[k] = b[k] - g[k];
      if (positive_parts.count(rest)) { decomposable = true; break; }
    }
    if (!decomposable) wg.simples.push_back(b);
  }

  int k = (int)wg.simples.size();
  wg.cartan.assign(k, std::vector<int>(k, 0));
  std::vector<Rat> snorm(k);
  for (int i = 0; i < k; ++i) snorm[i] = datum.rel_inner(wg.simples[i], wg.simples[i]);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Rat c = Rat(2) * datum.rel_inner(wg.simples[i], wg.simples[j]) / snorm[j];
      if (!c.is_integer())
        throw internal_error("wall group Cartan pairing is not integral");
      wg.cartan[i][j] = (int)c.as_integer();
      if (i != j && wg.cartan[i][j] > 0)
        throw internal_error("wall group simple system is not obtuse");
    }

  if (k == 0) {
    wg.type_name = "trivial";
    wg.order = 1;
    return wg;
  }

  auto factors = rootdata::classify_diagram(wg.cartan, snorm);
  int npos_check = 0;
  for (const auto& f : factors) {
    WallGroupFactor wf;
    wf.type = f.type;
    wf.simple_positions = f.nodes;
    std::vector<std::vector<int>> sub(f.nodes.size(),
                                      std::vector<int>(f.nodes.size()));
    for (size_t a = 0; a < f.nodes.size(); ++a)
      for (size_t b = 0; b < f.nodes.size(); ++b)
        sub[a][b] = wg.cartan[f.nodes[a]][f.nodes[b]];
    rootdata::RootSystem frs = rootdata::RootSystem::from_cartan(sub);
    wf.degrees = frs.degrees();
    wf.order = frs.weyl_order();
    wf.num_positive = frs.num_positive();
    npos_check += wf.num_positive;
    wg.order = detail::checked_cast((__int128)wg.order * wf.order, "wall group order");
    for (int dg : wf.degrees) wg.degrees.push_back(dg);
    if (!wg.type_name.empty()) wg.type_name += "+";
    wg.type_name += wf.type;
    wg.factors.push_back(std::move(wf));
  }
  std::sort(wg.degrees.begin(), wg.degrees.end());
  if (npos_check != wg.reflection_count)
    throw internal_error("wall group positive-root count mismatch with its type");
  return wg;
}

namespace {

// Scaled integer model of the apartment: every barycenter met by the search
// lies in (1/scale) Z^r, so wall evaluations become int64 dot products.
struct Geometry {
  const RootDatum* datum;
  int r;
  int64_t scale;
  std::vector<int64_t> x0;  // fundamental barycenter, scaled

  struct Wall {
    const RelRoot* root;
    int rel_idx;
    int64_t offset_scaled;
  };
  std::vector<Wall> nu_walls;   // the nu-weight roots
  std::vector<Wall> wnu_walls;  // wall-group positives

  struct MoveDir {
    const RelRoot* root;
    int64_t grid_step;   // admissible offsets are grid_shift + k*grid_step
    int64_t grid_shift;  // (scaled)
  };
  std::vector<MoveDir> dirs;  // positive relative roots

  int64_t dot(const Coords& c, const std::vector<int64_t>& p) const {
    int64_t s = 0;
    for (int i = 0; i < r; ++i) s += (int64_t)c[i] * p[i];
    return s;
  }

  int64_t scaled_of(const Rat& q) const {
    Rat v = q * Rat(scale);
    return v.as_integer("scaled geometry value");
  }

  std::vector<int64_t> scale_point(const RatVec& p) const {
    std::vector<int64_t> out(r);
    for (int i = 0; i < r; ++i) out[i] = scaled_of(p[i]);
    return out;
  }

  RatVec unscale(const std::vector<int64_t>& p) const {
    RatVec out(r);
    for (int i = 0; i < r; ++i) out[i] = Rat(p[i], scale);
    return out;
  }

  void reflect(std::vector<int64_t>& p, const RelRoot& root, int64_t off_scaled) const {
    int64_t v = dot(root.coords, p) + off_scaled;
    for (int i = 0; i < r; ++i) p[i] -= v * root.coroot[i];
  }
};

Geometry make_geometry(const RootDatum& datum,
                       const std::vector<AffineRoot>& nu_roots, const WallGroup& wg,
                       int extra_denominator) {
  Geometry g;
  g.datum = &datum;
  g.r = datum.rel_rank;
  int64_t s = lcm64(2 * datum.spec.e, extra_denominator > 0 ? extra_denominator : 1);
  for (int i = 0; i < g.r; ++i)
    s = lcm64(s, (int64_t)(g.r + 1) * datum.spec.e * datum.marks[i]);
  g.scale = s;
  RatVec x0 = fundamental_barycenter(datum);
  g.x0 = g.scale_point(x0);
  for (const AffineRoot& a : nu_roots)
    g.nu_walls.push_back({&datum.rel_roots[a.rel_idx], a.rel_idx, g.scaled_of(a.offset)});
  for (const AffineRoot& a : wg.positive_roots)
    g.wnu_walls.push_back({&datum.rel_roots[a.rel_idx], a.rel_idx, g.scaled_of(a.offset)});
  for (const RelRoot& rr : datum.rel_roots) {
    if (rr.height <= 0) continue;
    Geometry::MoveDir d;
    d.root = &rr;
    if (rr.half_shift) {
      d.grid_step = g.scale;
      d.grid_shift = g.scale / 2;
    } else {
      d.grid_step = g.scale / rr.offset_den;
      d.grid_shift = 0;
    }
    g.dirs.push_back(d);
  }
  return g;
}

struct PointKey {
  std::vector<int64_t> v;
  bool operator==(const PointKey& o) const { return v == o.v; }
};
struct PointKeyHash {
  size_t operator()(const PointKey& k) const {
    uint64_t h = 14695981039346656037ull;
    for (int64_t x : k.v) {
      h ^= (uint64_t)x;
      h *= 1099511628211ull;
    }
    return (size_t)h;
  }
};

uint64_t neg_mask_at(const Geometry& g, const std::vector<int64_t>& p) {
  if (g.nu_walls.size() > 64)
    throw infeasible_error("more than 64 nu-walls; raise the budget design limit");
  uint64_t mask = 0;
  for (size_t i = 0; i < g.nu_walls.size(); ++i) {
    int64_t v = g.dot(g.nu_walls[i].root->coords, p) + g.nu_walls[i].offset_scaled;
    if (v == 0) throw internal_error("alcove barycenter lies on a nu-wall");
    if (v < 0) mask |= (1ull << i);
  }
  return mask;
}

bool dominant_at(const Geometry& g, const std::vector<int64_t>& p) {
  for (const auto& w : g.wnu_walls) {
    int64_t v = g.dot(w.root->coords, p) + w.offset_scaled;
    if (v == 0) throw internal_error("alcove barycenter lies on a wall-group wall");
    if (v < 0) return false;
  }
  return true;
}

// Walk the straight segment from the fundamental barycenter toward
// nu.rho^vee: the final alcove is the unique alcove at the apex of the
// dominant cone.  Exact arithmetic throughout; the end point is pulled
// back slightly and jittered until the segment crosses walls one at a
// time.  Returns the crossed walls in order so other points can be pushed
// through the same reflection chain.
struct ApexWalk {
  RatVec barycenter;
  std::vector<std::pair<int, Rat>> crossings;  // (rel_idx, offset)
};

ApexWalk apex_walk(const RootDatum& datum, const SlopeSpec& slope) {
  const int r = datum.rel_rank;
  RatVec x0 = fundamental_barycenter(datum);
  RatVec base(r, slope.nu);  // nu.rho^vee in coweight coordinates

  for (int attempt = 0; attempt < 6; ++attempt) {
    Rat iota(1, 997 + 2 * attempt);
    RatVec target(r);
    for (int i = 0; i < r; ++i)
      target[i] = base[i] + iota * (x0[i] - base[i]) +
                  (attempt ? iota * iota * Rat(1, 31 + i + attempt) : Rat(0));

    struct Crossing {
      Rat t;
      int rel_idx;
      Rat offset;
    };
    std::vector<Crossing> cross;
    bool bad = false;
    for (int ri = 0; ri < (int)datum.rel_roots.size() && !bad; ++ri) {
      const RelRoot& rr = datum.rel_roots[ri];
      if (rr.height <= 0) continue;
      Rat a = dot_iv(rr.coords, x0);
      Rat b = dot_iv(rr.coords, target);
      if (a == b) continue;
      // admissible offsets n with a+n and b+n of opposite sign
      Rat lo = a < b ? a : b, hi = a < b ? b : a;
      // n in (-hi, -lo)
      Rat step = rr.half_shift ? Rat(1) : Rat(1, rr.offset_den);
      Rat shift = rr.half_shift ? Rat(1, 2) : Rat(0);
      // smallest k with shift + k*step > -hi
      Rat kmin_r = (Rat(0) - hi - shift) / step;
      int64_t k = kmin_r.floor() + 1;
      for (;; ++k) {
        Rat n = shift + Rat(k) * step;
        if (!(n < Rat(0) - lo)) break;
        if (n == Rat(0) - a || n == Rat(0) - b) { bad = true; break; }
        Rat t = (a + n) / (a - b);
        cross.push_back({t, ri, n});
      }
    }
    if (bad) continue;
    std::sort(cross.begin(), cross.end(),
              [](const Crossing& x, const Crossing& y) { return x.t < y.t; });
    bool collision = false;
    for (size_t i = 0; i + 1 < cross.size(); ++i)
      if (cross[i].t == cross[i + 1].t) { collision = true; break; }
    if (collision) continue;

    ApexWalk res;
    RatVec p = x0;
    for (const Crossing& c : cross) {
      const RelRoot& rr = datum.rel_roots[c.rel_idx];
      Rat v = dot_iv(rr.coords, p) + c.offset;
      for (int i = 0; i < r; ++i) p[i] -= v * Rat(rr.coroot[i]);
      res.crossings.emplace_back(c.rel_idx, c.offset);
    }
    res.barycenter = std::move(p);
    return res;
  }
  throw internal_error("apex walk failed to find a generic segment");
}

// Face barycenter of the standard parahoric given by affine node subset S.
RatVec parahoric_face_point(const RootDatum& datum, const std::vector<int>& S) {
  const int r = datum.rel_rank;
  std::set<int> s(S.begin(), S.end());
  for (int n : S)
    if (n < 0 || n > r) throw invalid_input("parahoric node out of range");
  if ((int)s.size() == r + 1)
    throw invalid_input("parahoric must be a proper subset of the affine nodes");
  std::vector<RatVec> verts;
  if (!s.count(0)) verts.push_back(RatVec(r, Rat(0)));
  for (int i = 1; i <= r; ++i) {
    if (s.count(i)) continue;
    RatVec v(r, Rat(0));
    v[i - 1] = Rat(1, datum.spec.e * datum.marks[i - 1]);
    verts.push_back(v);
  }
  RatVec out(r, Rat(0));
  for (const auto& v : verts)
    for (int i = 0; i < r; ++i) out[i] += v[i];
  for (int i = 0; i < r; ++i) out[i] /= Rat((int64_t)verts.size());
  return out;
}

// Number of positive roots of the finite parabolic generated by affine
// simple nodes S; used to widen the search ball in parahoric runs.
int parahoric_positive_count(const RootDatum& datum, const std::vector<int>& S) {
  if (S.empty()) return 0;
  const int r = datum.rel_rank;
  // affine Cartan pairings among the chosen nodes
  auto pair_nodes = [&](int a, int b) -> int {
    // node 0 has linear part -beta with beta = sum marks[i] * alpha_i
    Coords ca(r, 0), cb(r, 0);
    if (a == 0)
      for (int i = 0; i < r; ++i) ca[i] = -(int)datum.marks[i];
    else
      ca[a - 1] = 1;
    if (b == 0)
      for (int i = 0; i < r; ++i) cb[i] = -(int)datum.marks[i];
    else
      cb[b - 1] = 1;
    Rat c = Rat(2) * datum.rel_inner(ca, cb) / datum.rel_inner(cb, cb);
    return (int)c.as_integer("parahoric Cartan pairing");
  };
  std::vector<int> nodes(S.begin(), S.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  int k = (int)nodes.size();
  std::vector<std::vector<int>> C(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) C[i][j] = pair_nodes(nodes[i], nodes[j]);
  rootdata::RootSystem rs = rootdata::RootSystem::from_cartan(C);
  return rs.num_positive();
}

}  // namespace

namespace {

// Exact phase-1 simplex feasibility for { Ay >= 0, c.y = 1 } with c the
// row sum.  Valid whenever the rows span the full space (so the cone holds
// no nonzero kernel vector); nu-weight direction sets always do since the
// simple roots occur among them.  Fills *witness with a primitive integer
// ray when the cone is nontrivial.
bool cone_simplex_nontrivial(const std::vector<std::vector<int64_t>>& rows_in,
                             int nvars, std::vector<int64_t>* witness) {
  const int M = (int)rows_in.size();
  const int r = nvars;
  const int nv = 2 * r + M;
  std::vector<std::vector<BigRat>> A(M + 1, std::vector<BigRat>(nv, BigRat(0)));
  std::vector<BigRat> b(M + 1, BigRat(0));
  std::vector<BigRat> crow(r, BigRat(0));
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < r; ++j) {
      BigRat a(rows_in[i][j]);
      A[i][j] = a;
      A[i][r + j] = BigRat(0) - a;
      crow[j] += a;
    }
    A[i][2 * r + i] = BigRat(-1);
  }
  for (int j = 0; j < r; ++j) {
    A[M][j] = crow[j];
    A[M][r + j] = BigRat(0) - crow[j];
  }
  b[M] = BigRat(1);
  // phase 1: artificial basis, minimize the artificial sum
  std::vector<int> basis(M + 1);
  for (int i = 0; i <= M; ++i) basis[i] = nv + i;
  std::vector<BigRat> z(nv, BigRat(0));
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i <= M; ++i) z[j] += A[i][j];
  BigRat obj(0);
  for (int i = 0; i <= M; ++i) obj += b[i];

  int guard = 0;
  while (true) {
    if (++guard > 20000) throw internal_error("simplex did not terminate");
    int enter = -1;
    for (int j = 0; j < nv; ++j)
      if (z[j].sign() > 0) { enter = j; break; }  // Bland: first index
    if (enter < 0) break;
    int leave = -1;
    BigRat best(0);
    for (int i = 0; i <= M; ++i) {
      if (A[i][enter].sign() <= 0) continue;
      BigRat ratio = b[i] / A[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) throw internal_error("phase-1 simplex unbounded");
    BigRat piv = A[leave][enter];
    for (int j = 0; j < nv; ++j) A[leave][j] = A[leave][j] / piv;
    b[leave] = b[leave] / piv;
    for (int i = 0; i <= M; ++i) {
      if (i == leave || A[i][enter].is_zero()) continue;
      BigRat f = A[i][enter];
      for (int j = 0; j < nv; ++j) A[i][j] = A[i][j] - f * A[leave][j];
      b[i] = b[i] - f * b[leave];
    }
    if (!z[enter].is_zero()) {
      BigRat f = z[enter];
      for (int j = 0; j < nv; ++j) z[j] = z[j] - f * A[leave][j];
      obj = obj - f * b[leave];
    }
    basis[leave] = enter;
  }
  if (!obj.is_zero()) return false;  // infeasible: the cone is trivial
  if (witness) {
    std::vector<BigRat> y(r, BigRat(0));
    for (int i = 0; i <= M; ++i) {
      if (basis[i] < r) y[basis[i]] += b[i];
      else if (basis[i] < 2 * r) y[basis[i] - r] -= b[i];
    }
    BigInt den(1);
    for (const auto& q : y) {
      BigInt g = gcd(den, q.den());
      den = div_exact(den, g) * q.den();
    }
    witness->clear();
    BigInt content(0);
    std::vector<BigInt> scaled;
    for (const auto& q : y) {
      BigInt v = q.num() * div_exact(den, q.den());
      content = gcd(content, v);
      scaled.push_back(std::move(v));
    }
    for (auto& v : scaled) {
      if (!content.is_zero() && !content.is_one()) v = div_exact(v, content);
      if (!v.fits_int64()) throw internal_error("witness ray overflow");
      witness->push_back(v.to_int64());
    }
  }
  return true;
}

// Exact phase-1 simplex for the feasibility of { Ay >= 0, c.y = 1 } with
// c the row sum; returns a witness ray when one exists.  This is the hot
// version of the recession test used while searching: the witness rays it
// finds certify later sign vectors without solving anything.
struct ConeOracle {
  std::vector<std::vector<int64_t>> dirs;  // one row per nu-weight root
  int nvars = 0;
  std::map<uint64_t, bool> bounded_memo;
  std::vector<std::vector<int64_t>> rays;

  bool ray_fits(const std::vector<int64_t>& ray, uint64_t mask) const {
    for (size_t i = 0; i < dirs.size(); ++i) {
      int64_t v = 0;
      for (int j = 0; j < nvars; ++j) v += dirs[i][j] * ray[j];
      if (mask & (1ull << i)) {
        if (v > 0) return false;
      } else {
        if (v < 0) return false;
      }
    }
    return true;
  }

  // true iff the recession cone of the sign region is nonzero
  bool nontrivial(uint64_t mask) {
    auto it = bounded_memo.find(mask);
    if (it != bounded_memo.end()) return !it->second;
    for (const auto& ray : rays)
      if (ray_fits(ray, mask)) {
        bounded_memo.emplace(mask, false);
        return true;
      }
    std::vector<int64_t> witness;
    bool non = simplex_feasible(mask, witness);
    if (non && !witness.empty()) rays.push_back(witness);
    bounded_memo.emplace(mask, !non);
    return non;
  }

  bool simplex_feasible(uint64_t mask, std::vector<int64_t>& witness) const {
    std::vector<std::vector<int64_t>> rows;
    for (size_t i = 0; i < dirs.size(); ++i) {
      int sg = (mask & (1ull << i)) ? -1 : 1;
      std::vector<int64_t> row(nvars);
      for (int j = 0; j < nvars; ++j) row[j] = sg * dirs[i][j];
      rows.push_back(std::move(row));
    }
    return cone_simplex_nontrivial(rows, nvars, &witness);
  }
};

}  // namespace

Enumeration enumerate_contributing_alcoves(const RootDatum& datum,
                                           const SlopeSpec& slope,
                                           const WallGroup& wg,
                                           const EnumerateOptions& opts) {
  if (!slope.elliptic)
    throw invalid_input("alcove enumeration requires an elliptic slope");
  Enumeration res;
  res.nu_roots = nu_weight_roots(datum, slope);
  res.fundamental_barycenter = fundamental_barycenter(datum);
  res.base_point = RatVec(datum.rel_rank, slope.nu);

  const bool parahoric = !opts.parahoric.empty();
  int extra_den = 1;
  RatVec face_pt;
  if (parahoric) {
    face_pt = parahoric_face_point(datum, opts.parahoric);
    for (const Rat& q : face_pt) extra_den = (int)lcm64(extra_den, q.den());
  }
  Geometry g = make_geometry(datum, res.nu_roots, wg, extra_den);

  const int N = wg.reflection_count;
  const int ball = N + (parahoric ? parahoric_positive_count(datum, opts.parahoric) : 0);

  // seeds: the apex alcove of the dominant cone, plus the fundamental
  // alcove (traced face points ride through the same reflection chain)
  ApexWalk walk = apex_walk(datum, slope);
  std::vector<std::pair<std::vector<int64_t>, std::vector<int64_t>>> seeds;
  {
    std::vector<int64_t> apex_y;
    if (parahoric) {
      RatVec y = face_pt;
      for (const auto& [ri, off] : walk.crossings) {
        const RelRoot& rr = datum.rel_roots[ri];
        Rat v = dot_iv(rr.coords, y) + off;
        for (int i = 0; i < datum.rel_rank; ++i) y[i] -= v * Rat(rr.coroot[i]);
      }
      apex_y = g.scale_point(y);
    }
    seeds.emplace_back(g.scale_point(walk.barycenter), std::move(apex_y));
    std::vector<int64_t> y0;
    if (parahoric) y0 = g.scale_point(face_pt);
    seeds.emplace_back(g.x0, std::move(y0));
  }

  struct Node {
    std::vector<int64_t> p;
    std::vector<int64_t> y;  // traced parahoric face point (empty if Iwahori)
  };

  std::unordered_map<PointKey, int, PointKeyHash> visited;
  std::deque<Node> queue;

  // alcoves in unbounded clans never contribute (their Hessenberg fibers
  // are empty for elliptic slopes, and the algebra would zero them anyway),
  // and whole unbounded clans must be pruned for the search to terminate
  ConeOracle cone;
  cone.nvars = datum.rel_rank;
  for (const AffineRoot& a : res.nu_roots) {
    std::vector<int64_t> row(datum.rel_rank);
    for (int i = 0; i < datum.rel_rank; ++i)
      row[i] = datum.rel_roots[a.rel_idx].coords[i];
    cone.dirs.push_back(std::move(row));
  }
  auto in_bounded_clan = [&](uint64_t mask) { return !cone.nontrivial(mask); };

  auto try_add = [&](std::vector<int64_t> p, const std::vector<int64_t>& from_y,
                     const RelRoot* refl_root, int64_t refl_off) -> void {
    PointKey key{p};
    if (visited.count(key)) return;
    if (!dominant_at(g, p)) return;
    uint64_t mask = neg_mask_at(g, p);
    int sep_full = (int)__builtin_popcountll(mask);
    if (sep_full > ball) return;
    if (!in_bounded_clan(mask)) return;
    Node n;
    n.p = std::move(p);
    if (parahoric) {
      n.y = from_y;
      if (refl_root) g.reflect(n.y, *refl_root, refl_off);
    }
    visited.emplace(PointKey{n.p}, 1);
    if ((int64_t)visited.size() > opts.alcove_cap)
      throw infeasible_error(
          "alcove search exceeded the cap of " + std::to_string(opts.alcove_cap) +
          " alcoves; the bounded-clan region appears too large for this budget");
    queue.push_back(std::move(n));
  };

  for (auto& [sp, sy] : seeds) try_add(std::move(sp), sy, nullptr, 0);

  std::vector<Node> accepted;
  while (!queue.empty()) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    accepted.push_back(cur);
    for (const auto& d : g.dirs) {
      int64_t v = g.dot(d.root->coords, cur.p);
      // the two admissible walls bracketing this alcove in direction d
      int64_t x = -v;  // wall at offset n has v + n = 0
      int64_t k = x - d.grid_shift;
      int64_t lo_k = k >= 0 ? k / d.grid_step : -((-k + d.grid_step - 1) / d.grid_step);
      int64_t n_lo = d.grid_shift + lo_k * d.grid_step;
      if (n_lo == x) throw internal_error("barycenter on a candidate wall");
      int64_t n_hi = n_lo + d.grid_step;
      for (int64_t n : {n_lo, n_hi}) {
        std::vector<int64_t> p2 = cur.p;
        g.reflect(p2, *d.root, n);
        try_add(std::move(p2), cur.y, d.root, n);
      }
    }
  }
  res.visited = (int64_t)accepted.size();

  // collapse to per-coset representatives and compute the final filter
  std::set<std::vector<int64_t>> coset_seen;
  for (const Node& n : accepted) {
    uint64_t mask = neg_mask_at(g, n.p);
    if (parahoric) {
      // drop the factors whose wall vanishes on the traced face point:
      // those affine roots land inside the parabolic's root system
      uint64_t reduced = 0;
      for (size_t i = 0; i < g.nu_walls.size(); ++i) {
        if (!(mask & (1ull << i))) continue;
        int64_t vy =
            g.dot(g.nu_walls[i].root->coords, n.y) + g.nu_walls[i].offset_scaled;
        if (vy != 0) reduced |= (1ull << i);
      }
      mask = reduced;
    }
    int lam = (int)__builtin_popcountll(mask);
    if (lam > N) continue;
    if (parahoric) {
      if (coset_seen.count(n.y)) continue;
      coset_seen.insert(n.y);
    }
    Alcove a;
    a.barycenter = g.unscale(n.p);
    a.sep = lam;
    a.neg_mask = mask;
    if (parahoric) {
      PointKeyHash h;
      a.coset_key_hash = (int64_t)h(PointKey{n.y});
      std::vector<int> wprime;
      for (size_t i = 0; i < g.wnu_walls.size(); ++i) {
        int64_t vy =
            g.dot(g.wnu_walls[i].root->coords, n.y) + g.wnu_walls[i].offset_scaled;
        if (vy == 0) wprime.push_back((int)i);
      }
      res.wprime_wall_indices.push_back(std::move(wprime));
    }
    res.alcoves.push_back(std::move(a));
  }

  // deterministic output order
  std::vector<int> order(res.alcoves.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const RatVec& x = res.alcoves[a].barycenter;
    const RatVec& y = res.alcoves[b].barycenter;
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] != y[i]) return x[i] < y[i];
    }
    return false;
  });
  std::vector<Alcove> sorted;
  std::vector<std::vector<int>> sorted_wp;
  for (int i : order) {
    sorted.push_back(std::move(res.alcoves[i]));
    if (parahoric) sorted_wp.push_back(std::move(res.wprime_wall_indices[i]));
  }
  res.alcoves = std::move(sorted);
  res.wprime_wall_indices = std::move(sorted_wp);
  return res;
}

namespace {

// Fourier-Motzkin feasibility for { rows*y >= 0 componentwise, sum = 1 }
// on a system already free of opposite row pairs.
bool fm_cone_nontrivial(std::vector<std::vector<Rat>> rows, int nvars) {
  // rank test first: any kernel vector lies in the cone
  {
    std::vector<std::vector<BigRat>> m;
    for (const auto& row : rows) {
      std::vector<BigRat> br;
      for (const Rat& q : row) br.emplace_back(q);
      m.push_back(std::move(br));
    }
    if (exactla::rank(exactla::QMatrix::from_rows(m)) < nvars) return true;
  }
  std::vector<Rat> s(nvars, Rat(0));
  for (const auto& row : rows)
    for (int j = 0; j < nvars; ++j) s[j] += row[j];
  int k = -1;
  for (int j = 0; j < nvars; ++j)
    if (!s[j].is_zero()) { k = j; break; }
  if (k < 0) return false;  // all rows sum to zero: cone = kernel = {0}

  // substitute y_k = (1 - sum_{j != k} s_j y_j) / s_k into each inequality;
  // constraints become  c . y' + d >= 0  over the remaining variables
  struct Ineq {
    std::vector<Rat> c;
    Rat d;
  };
  std::vector<Ineq> sys;
  for (const auto& row : rows) {
    Ineq q;
    q.d = row[k] / s[k];
    for (int j = 0; j < nvars; ++j) {
      if (j == k) continue;
      q.c.push_back(row[j] - row[k] * s[j] / s[k]);
    }
    sys.push_back(std::move(q));
  }
  int vars = nvars - 1;
  for (int v = vars - 1; v >= 0; --v) {
    std::vector<Ineq> pos, neg, zero;
    for (auto& q : sys) {
      int sg = q.c[v].sign();
      if (sg > 0) pos.push_back(q);
      else if (sg < 0) neg.push_back(q);
      else zero.push_back(q);
    }
    std::vector<Ineq> next = zero;
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Ineq q;
        Rat a = p.c[v], b = Rat(0) - n.c[v];
        q.d = p.d * b + n.d * a;
        for (int j = 0; j < v; ++j) q.c.push_back(p.c[j] * b + n.c[j] * a);
        next.push_back(std::move(q));
      }
    for (auto& q : next) q.c.resize(v);
    // normalize + dedup to control growth
    std::set<std::vector<std::pair<int64_t, int64_t>>> seen;
    std::vector<Ineq> dedup;
    for (auto& q : next) {
      Rat scale(0);
      for (const Rat& c : q.c)
        if (!c.is_zero()) { scale = c; break; }
      if (scale.is_zero()) scale = q.d;
      if (scale.is_zero()) continue;  // trivial 0 >= 0
      if (scale.sign() < 0) scale = Rat(0) - scale;
      std::vector<std::pair<int64_t, int64_t>> key;
      for (const Rat& c : q.c) {
        Rat t = c / scale;
        key.emplace_back(t.num(), t.den());
      }
      Rat t = q.d / scale;
      key.emplace_back(t.num(), t.den());
      if (seen.insert(key).second) dedup.push_back(std::move(q));
      if (dedup.size() > 200000)
        throw internal_error("Fourier-Motzkin blow-up in the recession test");
    }
    sys = std::move(dedup);
  }
  for (const auto& q : sys)
    if (q.d.sign() < 0) return false;  // infeasible: cone is trivial
  return true;
}

// Cone {y : rows*y >= 0} != {0}?  Opposite row pairs force equalities; the
// system is projected onto their common kernel first, which usually kills
// the whole cone outright in high rank.
bool cone_nontrivial(std::vector<std::vector<Rat>> rows, int nvars) {
  auto normalize = [](std::vector<Rat>& row) {
    int64_t l = 1;
    for (const Rat& q : row) l = lcm64(l, q.den());
    int64_t g = 0;
    for (Rat& q : row) {
      q *= Rat(l);
      g = gcd64(g, q.num() < 0 ? -q.num() : q.num());
    }
    if (g > 1)
      for (Rat& q : row) q = Rat(q.num() / g);
  };
  while (true) {
    if (nvars == 0) return false;
    for (auto& r : rows) normalize(r);
    std::set<std::vector<std::pair<int64_t, int64_t>>> seen;
    std::vector<std::vector<Rat>> dedup;
    for (auto& r : rows) {
      bool zero = true;
      for (const Rat& q : r)
        if (!q.is_zero()) zero = false;
      if (zero) continue;
      std::vector<std::pair<int64_t, int64_t>> key;
      for (const Rat& q : r) key.emplace_back(q.num(), q.den());
      if (seen.insert(key).second) dedup.push_back(std::move(r));
    }
    rows = std::move(dedup);
    if (rows.empty()) return true;  // unconstrained directions remain

    std::vector<std::vector<Rat>> equalities;
    for (const auto& r : rows) {
      std::vector<std::pair<int64_t, int64_t>> negkey;
      for (const Rat& q : r) {
        Rat n = Rat(0) - q;
        negkey.emplace_back(n.num(), n.den());
      }
      if (seen.count(negkey)) equalities.push_back(r);
    }
    if (equalities.empty()) break;

    std::vector<std::vector<BigRat>> eqm;
    for (const auto& r : equalities) {
      std::vector<BigRat> br;
      for (const Rat& q : r) br.emplace_back(q);
      eqm.push_back(std::move(br));
    }
    auto kernel = exactla::kernel(exactla::QMatrix::from_rows(eqm));
    if (kernel.empty()) return false;
    // re-express the remaining inequalities on the kernel coordinates
    std::vector<std::vector<Rat>> next;
    for (const auto& r : rows) {
      std::vector<Rat> nr;
      for (const auto& basis : kernel) {
        BigRat acc(0);
        for (int i = 0; i < nvars; ++i) acc += BigRat(r[i]) * basis[i];
        if (!acc.num().fits_int64() || !acc.den().fits_int64())
          throw internal_error("recession-cone projection overflow");
        nr.emplace_back(acc.num().to_int64(), acc.den().to_int64());
      }
      next.push_back(std::move(nr));
    }
    rows = std::move(next);
    nvars = (int)kernel.size();
  }
  if (nvars <= 4) return fm_cone_nontrivial(std::move(rows), nvars);
  // Fourier-Motzkin blows up past four variables; hand the reduced pointed
  // system to the exact simplex instead
  std::vector<std::vector<int64_t>> irows;
  for (const auto& r : rows) {
    int64_t l = 1;
    for (const Rat& q : r) l = lcm64(l, q.den());
    std::vector<int64_t> ir;
    for (const Rat& q : r) ir.push_back((q * Rat(l)).as_integer());
    irows.push_back(std::move(ir));
  }
  {
    std::vector<std::vector<BigRat>> m;
    for (const auto& row : irows) {
      std::vector<BigRat> br;
      for (int64_t q : row) br.emplace_back(q);
      m.push_back(std::move(br));
    }
    if (exactla::rank(exactla::QMatrix::from_rows(m)) < nvars) return true;
  }
  return cone_simplex_nontrivial(irows, nvars, nullptr);
}

}  // namespace

bool clan_region_bounded(const RootDatum& datum,
                         const std::vector<AffineRoot>& nu_roots,
                         uint64_t neg_mask) {
  std::vector<std::vector<Rat>> rows;
  for (size_t j = 0; j < nu_roots.size(); ++j) {
    const auto& coords = datum.rel_roots[nu_roots[j].rel_idx].coords;
    int sg = (neg_mask & (1ull << j)) ? -1 : 1;
    std::vector<Rat> row(datum.rel_rank);
    for (int i = 0; i < datum.rel_rank; ++i) row[i] = Rat(sg * coords[i]);
    rows.push_back(std::move(row));
  }
  return !cone_nontrivial(std::move(rows), datum.rel_rank);
}

std::vector<Clan> clan_decomposition(const Enumeration& e, const RootDatum& datum) {
  std::map<uint64_t, Clan> by_mask;
  for (int i = 0; i < (int)e.alcoves.size(); ++i) {
    const Alcove& a = e.alcoves[i];
    Clan& c = by_mask[a.neg_mask];
    if (c.alcove_indices.empty()) {
      c.neg_mask = a.neg_mask;
      c.sep = (int)__builtin_popcountll(a.neg_mask);
      for (size_t j = 0; j < e.nu_roots.size(); ++j)
        if (a.neg_mask & (1ull << j)) c.lambda.push_back((int)j);
    }
    c.alcove_indices.push_back(i);
  }
  std::vector<Clan> out;
  for (auto& [mask, c] : by_mask) {
    c.bounded = clan_region_bounded(datum, e.nu_roots, mask);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Clan& a, const Clan& b) {
    if (a.sep != b.sep) return a.sep < b.sep;
    return a.neg_mask < b.neg_mask;
  });
  return out;
}

std::vector<int> alcove_word(const RootDatum& datum, const RatVec& barycenter) {
  const int r = datum.rel_rank;
  // fundamental affine simple roots: (alpha_i, 0) and (-beta, 1/e)
  std::vector<std::pair<Coords, Rat>> simples;
  for (int i = 0; i < r; ++i) {
    Coords c(r, 0);
    c[i] = 1;
    simples.emplace_back(c, Rat(0));
  }
  Coords negbeta(r);
  for (int i = 0; i < r; ++i) negbeta[i] = -(int)datum.marks[i];
  simples.emplace_back(negbeta, Rat(1, datum.spec.e));

  // coroot of each simple wall
  std::vector<std::vector<int>> coroots;
  for (const auto& [c, off] : simples) {
    std::vector<int> cr(r);
    Rat n2 = datum.rel_inner(c, c);
    for (int j = 0; j < r; ++j) {
      Coords ej(r, 0);
      ej[j] = 1;
      Rat v = Rat(2) * datum.rel_inner(ej, c) / n2;
      cr[j] = (int)v.as_integer("simple wall coroot");
    }
    coroots.push_back(std::move(cr));
  }

  RatVec x0 = fundamental_barycenter(datum);
  RatVec p = barycenter;
  std::vector<int> word;
  size_t guard = 0;
  while (p != x0) {
    if (++guard > 100000) throw internal_error("alcove descent did not terminate");
    bool moved = false;
    for (int i = 0; i <= r; ++i) {
      // letters: i = 1..r finite nodes, 0 the affine node
      int idx = (i == 0) ? r : i - 1;
      Rat v = dot_iv(simples[idx].first, p) + simples[idx].second;
      if (v.sign() < 0) {
        for (int j = 0; j < r; ++j) p[j] -= v * Rat(coroots[idx][j]);
        word.push_back(i);
        moved = true;
        break;
      }
    }
    if (!moved) throw internal_error("no descent available outside fundamental alcove");
  }
  return word;
}

}  // namespace cherdim::apartment
