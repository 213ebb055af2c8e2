#include "cherdim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "cherdim/coinvariant.hpp"
#include "cherdim/dimensions.hpp"

namespace cherdim::svg {

using apartment::AffineRoot;
using rootdata::Coords;
using rootdata::RootDatum;

namespace {

struct Wall {
  Coords normal;  // linear part
  Rat offset;
};

Rat eval_wall(const Wall& w, const RatVec& p) { return dot_iv(w.normal, p) + w.offset; }

// All alcoves whose barycenter lies in the given coordinate window: the
// picture shows the neighborhood of the base point on both sides of the
// dominant cone, so dominance and clan pruning are replaced by a box clip.
std::vector<RatVec> window_alcoves(const RootDatum& datum, const RatVec& lo,
                                   const RatVec& hi, const RatVec& seed) {
  struct Key {
    std::vector<std::pair<int64_t, int64_t>> k;
    bool operator<(const Key& o) const { return k < o.k; }
  };
  auto key_of = [](const RatVec& p) {
    Key k;
    for (const Rat& q : p) k.k.emplace_back(q.num(), q.den());
    return k;
  };
  auto inside = [&](const RatVec& p) {
    for (size_t i = 0; i < p.size(); ++i)
      if (p[i] < lo[i] || hi[i] < p[i]) return false;
    return true;
  };
  std::set<Key> visited;
  std::deque<RatVec> queue;
  std::vector<RatVec> out;
  visited.insert(key_of(seed));
  queue.push_back(seed);
  while (!queue.empty()) {
    RatVec p = std::move(queue.front());
    queue.pop_front();
    out.push_back(p);
    if (out.size() > 200000)
      throw internal_error("svg alcove window is unexpectedly large");
    for (const auto& rr : datum.rel_roots) {
      if (rr.height <= 0) continue;
      Rat v = dot_iv(rr.coords, p);
      Rat step = rr.half_shift ? Rat(1) : Rat(1, rr.offset_den);
      Rat shift = rr.half_shift ? Rat(1, 2) : Rat(0);
      Rat x = Rat(0) - v;
      Rat kq = (x - shift) / step;
      int64_t kf = kq.floor();
      for (int64_t k : {kf, kf + 1}) {
        Rat n = shift + Rat(k) * step;
        Rat val = v + n;
        if (val.is_zero()) throw internal_error("svg barycenter on a wall");
        RatVec p2 = p;
        for (size_t i = 0; i < p2.size(); ++i) p2[i] -= val * Rat(rr.coroot[i]);
        if (!inside(p2)) continue;
        if (visited.insert(key_of(p2)).second) queue.push_back(p2);
      }
    }
  }
  return out;
}

// Vertices of the alcove containing barycenter b (rank 2: a triangle).
std::vector<RatVec> alcove_vertices(const RootDatum& datum, const RatVec& b) {
  // candidate facet walls: nearest admissible wall on each side, for every
  // positive root direction
  std::vector<Wall> cand;
  for (const auto& rr : datum.rel_roots) {
    if (rr.height <= 0) continue;
    Rat v = dot_iv(rr.coords, b);
    Rat step = rr.half_shift ? Rat(1) : Rat(1, rr.offset_den);
    Rat shift = rr.half_shift ? Rat(1, 2) : Rat(0);
    Rat kq = ((Rat(0) - v) - shift) / step;
    int64_t kf = kq.floor();
    cand.push_back({rr.coords, shift + Rat(kf) * step});
    cand.push_back({rr.coords, shift + Rat(kf + 1) * step});
  }
  std::vector<RatVec> verts;
  for (size_t i = 0; i < cand.size(); ++i)
    for (size_t j = i + 1; j < cand.size(); ++j) {
      const Coords& n1 = cand[i].normal;
      const Coords& n2 = cand[j].normal;
      Rat det = Rat(n1[0]) * Rat(n2[1]) - Rat(n1[1]) * Rat(n2[0]);
      if (det.is_zero()) continue;
      Rat c1 = Rat(0) - cand[i].offset, c2 = Rat(0) - cand[j].offset;
      RatVec p(2);
      p[0] = (c1 * Rat(n2[1]) - c2 * Rat(n1[1])) / det;
      p[1] = (Rat(n1[0]) * c2 - Rat(n2[0]) * c1) / det;
      bool inside = true;
      for (const Wall& w : cand) {
        Rat val = eval_wall(w, p);
        // the alcove sits on the sign(b) side of each candidate wall
        Rat vb = eval_wall(w, b);
        if ((vb.sign() > 0 && val.sign() < 0) || (vb.sign() < 0 && val.sign() > 0))
          inside = false;
      }
      if (!inside) continue;
      if (std::find(verts.begin(), verts.end(), p) == verts.end()) verts.push_back(p);
    }
  if (verts.size() != 3) throw internal_error("rank-2 alcove is not a triangle");
  return verts;
}

std::string fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  // normalize negative zero for byte-stable output
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

}  // namespace

namespace {

// Relative rank 1 (the quasi-split unitary rank-one types): alcoves are
// intervals drawn as a strip of boxes, walls are vertical lines.
std::string render_line_apartment(const RootDatum& datum,
                                  const apartment::SlopeSpec& slope) {
  apartment::WallGroup wg = apartment::wall_group(datum, slope);
  apartment::Enumeration en =
      apartment::enumerate_contributing_alcoves(datum, slope, wg);
  std::vector<apartment::Clan> clans = apartment::clan_decomposition(en, datum);
  coinvariant::GradedQuotient quotient(datum, wg);
  std::map<uint64_t, int64_t> clan_dim;
  for (const auto& c : clans) {
    std::vector<Coords> lambda;
    for (int idx : c.lambda)
      lambda.push_back(datum.rel_roots[en.nu_roots[idx].rel_idx].coords);
    clan_dim[c.neg_mask] = quotient.image_dimension(lambda);
  }
  std::vector<Wall> nu_walls, wnu_walls;
  for (const apartment::AffineRoot& a : en.nu_roots)
    nu_walls.push_back({datum.rel_roots[a.rel_idx].coords, a.offset});
  for (const apartment::AffineRoot& a : wg.positive_roots)
    wnu_walls.push_back({datum.rel_roots[a.rel_idx].coords, a.offset});

  RatVec lo = en.fundamental_barycenter, hi = en.fundamental_barycenter;
  auto widen = [&](const RatVec& p) {
    if (p[0] < lo[0]) lo[0] = p[0];
    if (hi[0] < p[0]) hi[0] = p[0];
  };
  for (const auto& a : en.alcoves) widen(a.barycenter);
  widen(en.base_point);
  lo[0] -= Rat(1, 2);
  hi[0] += Rat(1, 2);
  std::vector<RatVec> draw = window_alcoves(datum, lo, hi, en.fundamental_barycenter);
  std::sort(draw.begin(), draw.end(),
            [](const RatVec& a, const RatVec& b) { return a[0] < b[0]; });

  // interval endpoints of the alcove at barycenter b: nearest admissible
  // walls on either side over every positive direction
  auto interval = [&](const RatVec& b) -> std::pair<Rat, Rat> {
    bool first = true;
    Rat l, h;
    for (const auto& rr : datum.rel_roots) {
      if (rr.height <= 0) continue;
      Rat c(rr.coords[0]);
      Rat v = c * b[0];
      Rat step = rr.half_shift ? Rat(1) : Rat(1, rr.offset_den);
      Rat shift = rr.half_shift ? Rat(1, 2) : Rat(0);
      Rat kq = ((Rat(0) - v) - shift) / step;
      int64_t kf = kq.floor();
      Rat wall_lo = (Rat(0) - (shift + Rat(kf) * step)) / c;
      Rat wall_hi = (Rat(0) - (shift + Rat(kf + 1) * step)) / c;
      if (wall_hi < wall_lo) std::swap(wall_lo, wall_hi);
      if (first || l < wall_lo) l = wall_lo;
      if (first || wall_hi < h) h = wall_hi;
      first = false;
    }
    return {l, h};
  };

  Rat g11 = datum.rel_inner({1}, {1});
  double unit = 160.0 / std::sqrt((double)g11.num() / g11.den());
  auto ex = [&](const Rat& x) { return unit * (double)x.num() / x.den(); };

  std::map<std::pair<int64_t, int64_t>, std::pair<int, uint64_t>> info;
  for (const auto& a : en.alcoves)
    info[{a.barycenter[0].num(), a.barycenter[0].den()}] = {a.sep, a.neg_mask};

  double minx = 1e30, maxx = -1e30;
  for (const RatVec& b : draw) {
    auto [l, h] = interval(b);
    minx = std::min(minx, ex(l));
    maxx = std::max(maxx, ex(h));
  }
  const double band = 26.0, pad = 18.0;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fixed(minx - pad)
      << " " << fixed(-band - pad) << " " << fixed(maxx - minx + 2 * pad) << " "
      << fixed(2 * band + 2 * pad) << "\">\n";
  out << "<style>\n"
      << ".alcove{fill:none;stroke:#999;stroke-width:0.6}\n"
      << ".alcove-fund{fill:#d9d9d9;stroke:#999;stroke-width:0.6}\n"
      << ".wall-nu{stroke:#1f6fd0;stroke-width:1.8;fill:none}\n"
      << ".wall-wnu{stroke:#d03a1f;stroke-width:1.8;fill:none;stroke-dasharray:6 3}\n"
      << ".label{font:italic 13px serif;fill:#222;text-anchor:middle}\n"
      << ".label-empty{font:italic 13px serif;fill:#2a9d2a;text-anchor:middle}\n"
      << ".base-point{fill:#000}\n"
      << "</style>\n";
  for (const RatVec& b : draw) {
    auto [l, h] = interval(b);
    bool is_fund = b == en.fundamental_barycenter;
    out << "<rect class=\"" << (is_fund ? "alcove-fund" : "alcove") << "\" x=\""
        << fixed(ex(l)) << "\" y=\"" << fixed(-band / 2) << "\" width=\""
        << fixed(ex(h) - ex(l)) << "\" height=\"" << fixed(band) << "\"/>\n";
  }
  auto draw_wall = [&](const Wall& w, const char* cls) {
    Rat x = (Rat(0) - w.offset) / Rat(w.normal[0]);
    out << "<line class=\"" << cls << "\" x1=\"" << fixed(ex(x)) << "\" y1=\""
        << fixed(-band) << "\" x2=\"" << fixed(ex(x)) << "\" y2=\"" << fixed(band)
        << "\"/>\n";
  };
  for (const Wall& w : nu_walls) draw_wall(w, "wall-nu");
  for (const Wall& w : wnu_walls) draw_wall(w, "wall-wnu");
  int N = wg.reflection_count;
  for (const RatVec& b : draw) {
    auto it = info.find({b[0].num(), b[0].den()});
    if (it == info.end()) continue;
    bool empty = clan_dim.at(it->second.second) == 0;
    out << "<text class=\"" << (empty ? "label-empty" : "label") << "\" x=\""
        << fixed(ex(b[0])) << "\" y=\"4.000\">" << (N - it->second.first)
        << "</text>\n";
  }
  out << "<circle class=\"base-point\" cx=\"" << fixed(ex(en.base_point[0]))
      << "\" cy=\"0.000\" r=\"3\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string render_apartment(const RootDatum& datum,
                             const apartment::SlopeSpec& slope) {
  if (datum.rel_rank == 1) return render_line_apartment(datum, slope);
  if (datum.rel_rank != 2)
    throw invalid_input("apartment rendering needs relative rank 1 or 2");
  apartment::WallGroup wg = apartment::wall_group(datum, slope);
  apartment::Enumeration en =
      apartment::enumerate_contributing_alcoves(datum, slope, wg);
  std::vector<apartment::Clan> clans = apartment::clan_decomposition(en, datum);
  coinvariant::GradedQuotient quotient(datum, wg);

  std::map<uint64_t, int64_t> clan_dim;
  for (const auto& c : clans) {
    std::vector<Coords> lambda;
    for (int idx : c.lambda)
      lambda.push_back(datum.rel_roots[en.nu_roots[idx].rel_idx].coords);
    clan_dim[c.neg_mask] = quotient.image_dimension(lambda);
  }

  std::vector<Wall> nu_walls;
  for (const AffineRoot& a : en.nu_roots)
    nu_walls.push_back({datum.rel_roots[a.rel_idx].coords, a.offset});
  std::vector<Wall> wnu_walls;
  for (const AffineRoot& a : wg.positive_roots)
    wnu_walls.push_back({datum.rel_roots[a.rel_idx].coords, a.offset});

  // drawing window: the contributing alcoves, the base point and the
  // fundamental alcove, padded by one unit on each side
  RatVec lo = en.fundamental_barycenter, hi = en.fundamental_barycenter;
  auto widen = [&](const RatVec& p) {
    for (int i = 0; i < 2; ++i) {
      if (p[i] < lo[i]) lo[i] = p[i];
      if (hi[i] < p[i]) hi[i] = p[i];
    }
  };
  for (const auto& a : en.alcoves) widen(a.barycenter);
  widen(en.base_point);
  for (int i = 0; i < 2; ++i) {
    lo[i] -= Rat(1);
    hi[i] += Rat(1);
  }
  std::vector<RatVec> draw =
      window_alcoves(datum, lo, hi, en.fundamental_barycenter);
  std::sort(draw.begin(), draw.end(), [](const RatVec& a, const RatVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });

  std::set<std::pair<std::pair<int64_t, int64_t>, std::pair<int64_t, int64_t>>>
      contributing;
  std::map<std::pair<std::pair<int64_t, int64_t>, std::pair<int64_t, int64_t>>,
           std::pair<int, uint64_t>>
      info;  // barycenter -> (sep, mask)
  for (const auto& a : en.alcoves) {
    auto key = std::make_pair(std::make_pair(a.barycenter[0].num(), a.barycenter[0].den()),
                              std::make_pair(a.barycenter[1].num(), a.barycenter[1].den()));
    contributing.insert(key);
    info[key] = {a.sep, a.neg_mask};
  }

  // Euclidean embedding of the coweight coordinates: Cholesky of the dual
  // Gram matrix, rationalized (rendering only; all geometry stays exact).
  Rat g11_r = datum.rel_inner({1, 0}, {1, 0});
  Rat g12_r = datum.rel_inner({1, 0}, {0, 1});
  Rat g22_r = datum.rel_inner({0, 1}, {0, 1});
  double g11 = (double)g11_r.num() / g11_r.den();
  double g12 = (double)g12_r.num() / g12_r.den();
  double g22 = (double)g22_r.num() / g22_r.den();
  double det = g11 * g22 - g12 * g12;
  // dual Gram = inverse of [g11 g12; g12 g22]
  double d11 = g22 / det, d12 = -g12 / det, d22 = g11 / det;
  double l11 = std::sqrt(d11), l12 = d12 / l11,
         l22 = std::sqrt(d22 - l12 * l12);
  auto embed = [&](const RatVec& p) {
    double x = (double)p[0].num() / p[0].den();
    double y = (double)p[1].num() / p[1].den();
    return std::pair<double, double>{l11 * x + l12 * y, l22 * y};
  };

  const double UNIT = 140.0;
  double minx = 1e30, maxx = -1e30, miny = 1e30, maxy = -1e30;
  std::vector<std::vector<std::pair<double, double>>> tri;
  std::vector<RatVec> tri_bary;
  for (const RatVec& b : draw) {
    auto verts = alcove_vertices(datum, b);
    std::vector<std::pair<double, double>> pts;
    for (const auto& v : verts) {
      auto [x, y] = embed(v);
      pts.emplace_back(x * UNIT, -y * UNIT);
      minx = std::min(minx, x * UNIT);
      maxx = std::max(maxx, x * UNIT);
      miny = std::min(miny, -y * UNIT);
      maxy = std::max(maxy, -y * UNIT);
    }
    tri.push_back(std::move(pts));
    tri_bary.push_back(b);
  }
  double pad = 18;
  minx -= pad;
  miny -= pad;
  maxx += pad;
  maxy += pad;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fixed(minx) << " "
      << fixed(miny) << " " << fixed(maxx - minx) << " " << fixed(maxy - miny)
      << "\">\n";
  out << "<style>\n"
      << ".alcove{fill:none;stroke:#999;stroke-width:0.6}\n"
      << ".alcove-fund{fill:#d9d9d9;stroke:#999;stroke-width:0.6}\n"
      << ".wall-nu{stroke:#1f6fd0;stroke-width:1.8;fill:none}\n"
      << ".wall-wnu{stroke:#d03a1f;stroke-width:1.8;fill:none;stroke-dasharray:6 3}\n"
      << ".label{font:italic 13px serif;fill:#222;text-anchor:middle}\n"
      << ".label-empty{font:italic 13px serif;fill:#2a9d2a;text-anchor:middle}\n"
      << ".base-point{fill:#000}\n"
      << "</style>\n";

  RatVec x0 = en.fundamental_barycenter;
  for (size_t t = 0; t < tri.size(); ++t) {
    bool is_fund = tri_bary[t] == x0;
    out << "<polygon class=\"" << (is_fund ? "alcove-fund" : "alcove") << "\" points=\"";
    for (size_t i = 0; i < tri[t].size(); ++i) {
      if (i) out << " ";
      out << fixed(tri[t][i].first) << "," << fixed(tri[t][i].second);
    }
    out << "\"/>\n";
  }

  // walls drawn as chords across the viewbox
  auto draw_wall = [&](const Wall& w, const char* cls) {
    // two rational points on the line {<n,p> + c = 0}, then extend the
    // embedded chord well past the viewbox
    Coords n = w.normal;
    RatVec p0(2), p1(2);
    if (n[0] != 0) {
      p0 = {(Rat(0) - w.offset) / Rat(n[0]), Rat(0)};
      p1 = {(Rat(0) - w.offset - Rat(n[1])) / Rat(n[0]), Rat(1)};
    } else {
      p0 = {Rat(0), (Rat(0) - w.offset) / Rat(n[1])};
      p1 = {Rat(1), (Rat(0) - w.offset) / Rat(n[1])};
    }
    auto [x0d, y0d] = embed(p0);
    auto [x1d, y1d] = embed(p1);
    double dx = x1d - x0d, dy = y1d - y0d;
    double norm = std::sqrt(dx * dx + dy * dy);
    dx /= norm;
    dy /= norm;
    double span = (maxx - minx) + (maxy - miny);
    out << "<line class=\"" << cls << "\" x1=\"" << fixed((x0d - span * dx) * UNIT)
        << "\" y1=\"" << fixed(-(y0d - span * dy) * UNIT) << "\" x2=\""
        << fixed((x0d + span * dx) * UNIT) << "\" y2=\""
        << fixed(-(y0d + span * dy) * UNIT) << "\"/>\n";
  };
  for (const Wall& w : nu_walls) draw_wall(w, "wall-nu");
  for (const Wall& w : wnu_walls) draw_wall(w, "wall-wnu");

  // expected-dimension labels on the contributing alcoves
  int N = wg.reflection_count;
  for (size_t t = 0; t < tri.size(); ++t) {
    const RatVec& b = tri_bary[t];
    auto key = std::make_pair(std::make_pair(b[0].num(), b[0].den()),
                              std::make_pair(b[1].num(), b[1].den()));
    auto it = info.find(key);
    if (it == info.end()) continue;
    auto [x, y] = embed(b);
    bool empty = clan_dim.at(it->second.second) == 0;
    out << "<text class=\"" << (empty ? "label-empty" : "label") << "\" x=\""
        << fixed(x * UNIT) << "\" y=\"" << fixed(-y * UNIT + 4) << "\">"
        << (N - it->second.first) << "</text>\n";
  }

  // base point nu.rho^vee
  {
    auto [x, y] = embed(en.base_point);
    out << "<circle class=\"base-point\" cx=\"" << fixed(x * UNIT) << "\" cy=\""
        << fixed(-y * UNIT) << "\" r=\"3\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cherdim::svg
