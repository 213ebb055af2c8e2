#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "cherdim/apartment.hpp"

using namespace cherdim;
using namespace cherdim::apartment;
using rootdata::Coords;
using rootdata::RootDatum;
using rootdata::build_root_datum;

namespace {

std::string form_str(const RootDatum& d, int rel_idx) {
  const auto& c = d.rel_roots[rel_idx].coords;
  std::string s;
  for (int i = 0; i < d.rel_rank; ++i) {
    if (c[i] == 0) continue;
    if (!s.empty() && c[i] > 0) s += "+";
    if (c[i] == -1) s += "-";
    else if (c[i] != 1) s += std::to_string(c[i]);
    s += "a" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

std::multiset<std::string> nu_root_strings(const RootDatum& d,
                                           const std::vector<AffineRoot>& roots) {
  std::multiset<std::string> out;
  for (const auto& a : roots) out.insert(form_str(d, a.rel_idx) + "|" + a.offset.str());
  return out;
}

}  // namespace

TEST_CASE("make_slope: ellipticity and normal form") {
  RootDatum a2 = build_root_datum({'A', 2, 1});
  SlopeSpec s = make_slope(a2, 1, 2);
  CHECK_FALSE(s.elliptic);   // nu(d_i - 1) = {1/2, 1}: one integral character
  CHECK(s.t_fixed_dim == 1);

  RootDatum g2 = build_root_datum({'G', 2, 1});
  SlopeSpec g13 = make_slope(g2, 1, 3);
  CHECK(g13.elliptic);
  CHECK(g13.t_fixed_dim == 0);

  RootDatum d4 = build_root_datum({'D', 4, 3});
  SlopeSpec d16 = make_slope(d4, 1, 6);
  CHECK(d16.m == 6);
  CHECK(d16.elliptic);

  CHECK_THROWS_AS(make_slope(a2, 1, 5), invalid_input);  // 5 is not regular for A2
  CHECK_THROWS_AS(make_slope(a2, 0, 3), invalid_input);
}

TEST_CASE("nu-weight roots match the worked rank-2 lists") {
  RootDatum g2 = build_root_datum({'G', 2, 1});
  auto g13 = nu_weight_roots(g2, make_slope(g2, 1, 3));
  CHECK(nu_root_strings(g2, g13) ==
        std::multiset<std::string>{"a1+3a2|-1", "a2|0", "-a1-a2|1", "-2a1-3a2|2",
                                   "a1|0"});

  RootDatum c2 = build_root_datum({'C', 2, 1});
  auto c12 = nu_weight_roots(c2, make_slope(c2, 1, 2));
  CHECK(c12.size() == 6);

  RootDatum a1 = build_root_datum({'A', 1, 1});
  auto a12 = nu_weight_roots(a1, make_slope(a1, 1, 2));
  CHECK(nu_root_strings(a1, a12) == std::multiset<std::string>{"a1|0", "-a1|1"});

  // defining property: value nu at nu.rho^vee
  for (const auto& a : g13)
    CHECK(eval_affine(g2, a, RatVec(2, Rat(1, 3))) == Rat(1, 3));
}

TEST_CASE("twisted nu-weight root counts match the published lists") {
  struct Row {
    char f;
    int rank, e;
    int64_t m1;
    int expect;
  };
  for (const Row& row : std::vector<Row>{{'A', 2, 2, 2, 4},
                                         {'A', 3, 2, 2, 8},
                                         {'A', 4, 2, 2, 12},
                                         {'G', 2, 1, 2, 8},
                                         {'D', 4, 3, 6, 6},
                                         {'D', 4, 3, 3, 9}}) {
    RootDatum d = build_root_datum({row.f, row.rank, row.e});
    CHECK((int)nu_weight_roots(d, make_slope(d, 1, row.m1)).size() == row.expect);
  }
}

TEST_CASE("wall groups of the worked examples") {
  RootDatum g2 = build_root_datum({'G', 2, 1});
  WallGroup w13 = wall_group(g2, make_slope(g2, 1, 3));
  CHECK(w13.type_name == "A1");
  CHECK(w13.order == 2);
  CHECK(w13.reflection_count == 1);
  REQUIRE(w13.positive_roots.size() == 1);
  CHECK(form_str(g2, w13.positive_roots[0].rel_idx) == "-a1-2a2");
  CHECK(w13.positive_roots[0].offset == Rat(1));

  RootDatum a4 = build_root_datum({'A', 4, 2});
  WallGroup w = wall_group(a4, make_slope(a4, 1, 2));
  CHECK(w.reflection_count == 4);
  CHECK(w.order == 8);
  CHECK(w.type_name == "B2");

  RootDatum a1 = build_root_datum({'A', 1, 1});
  WallGroup t = wall_group(a1, make_slope(a1, 1, 2));
  CHECK(t.type_name == "trivial");
  CHECK(t.reflection_count == 0);

  RootDatum a3 = build_root_datum({'A', 3, 2});
  CHECK(wall_group(a3, make_slope(a3, 1, 2)).type_name == "A1+A1");

  RootDatum d4 = build_root_datum({'D', 4, 3});
  CHECK(wall_group(d4, make_slope(d4, 1, 3)).type_name == "A2");
  CHECK(wall_group(d4, make_slope(d4, 1, 6)).type_name == "A1");
}

TEST_CASE("alcove enumeration: triangle counts and Coxeter slopes") {
  RootDatum a2 = build_root_datum({'A', 2, 1});
  for (int d : {1, 2}) {
    SlopeSpec s = make_slope(a2, d, 3);
    WallGroup wg = wall_group(a2, s);
    Enumeration en = enumerate_contributing_alcoves(a2, s, wg);
    CHECK((int)en.alcoves.size() == d * d);
    for (const auto& a : en.alcoves) CHECK(a.sep == 0);
  }
  for (rootdata::GroupSpec spec : std::vector<rootdata::GroupSpec>{
           {'A', 2, 1}, {'C', 2, 1}, {'G', 2, 1}, {'A', 3, 2}, {'D', 4, 3}}) {
    RootDatum d = build_root_datum(spec);
    SlopeSpec s = make_slope(d, 1, d.h_theta);
    WallGroup wg = wall_group(d, s);
    Enumeration en = enumerate_contributing_alcoves(d, s, wg);
    CHECK(en.alcoves.size() == 1);
    CHECK(en.alcoves[0].sep == 0);
    CHECK(en.alcoves[0].barycenter == fundamental_barycenter(d));
  }
}

TEST_CASE("G2 at 1/3: clan picture") {
  // one clan of expected dimension 1 near the base point plus a bounded
  // two-coset clan of expected dimension 0; the alcoves of the unbounded
  // strip never contribute and are pruned by the recession test
  RootDatum g2 = build_root_datum({'G', 2, 1});
  SlopeSpec s = make_slope(g2, 1, 3);
  WallGroup wg = wall_group(g2, s);
  Enumeration en = enumerate_contributing_alcoves(g2, s, wg);
  CHECK(en.alcoves.size() == 3);
  auto clans = clan_decomposition(en, g2);
  REQUIRE(clans.size() == 2);
  CHECK(clans[0].sep == 0);
  CHECK(clans[0].alcove_indices.size() == 1);
  CHECK(clans[1].sep == 1);
  CHECK(clans[1].alcove_indices.size() == 2);
  for (const auto& c : clans) CHECK(c.bounded);
  // the strip past the alpha1-wall has an unbounded sign region
  uint64_t strip_mask = 0;
  for (size_t j = 0; j < en.nu_roots.size(); ++j) {
    const auto& c = g2.rel_roots[en.nu_roots[j].rel_idx].coords;
    if (c[0] == 1 && c[1] == 0) strip_mask = 1ull << j;
  }
  REQUIRE(strip_mask != 0);
  CHECK_FALSE(clan_region_bounded(g2, en.nu_roots, strip_mask));
}

TEST_CASE("contributing-alcove counts scale by d^r") {
  struct Case {
    rootdata::GroupSpec spec;
    int64_t m1, d1;
  };
  for (const Case& c : std::vector<Case>{{{'A', 2, 1}, 3, 2},
                                         {{'G', 2, 1}, 3, 2},
                                         {{'C', 2, 1}, 2, 3},
                                         {{'G', 2, 1}, 2, 3}}) {
    CAPTURE(c.spec.name());
    RootDatum d = build_root_datum(c.spec);
    SlopeSpec base = make_slope(d, 1, c.m1);
    SlopeSpec up = make_slope(d, c.d1, c.m1);
    WallGroup wb = wall_group(d, base);
    WallGroup wu = wall_group(d, up);
    auto nb = enumerate_contributing_alcoves(d, base, wb).alcoves.size();
    auto nu = enumerate_contributing_alcoves(d, up, wu).alcoves.size();
    int64_t factor = 1;
    for (int i = 0; i < d.rel_rank; ++i) factor *= c.d1;
    CHECK((int64_t)nu == factor * (int64_t)nb);
  }
}

TEST_CASE("lambda factors: fundamental alcove") {
  // A1 at 1/2: both nu-weight roots positive on the fundamental alcove
  RootDatum a1 = build_root_datum({'A', 1, 1});
  SlopeSpec s1 = make_slope(a1, 1, 2);
  auto roots1 = nu_weight_roots(a1, s1);
  RatVec x0 = fundamental_barycenter(a1);
  for (const auto& a : roots1) CHECK(eval_affine(a1, a, x0).sign() > 0);
  // the alcove across the wall of -a1+delta picks up exactly one factor
  RatVec refl{Rat(3, 2)};
  int negs = 0;
  std::string neg;
  for (const auto& a : roots1)
    if (eval_affine(a1, a, refl).sign() < 0) { ++negs; neg = form_str(a1, a.rel_idx); }
  CHECK(negs == 1);
  CHECK(neg == "-a1");

  // G2 at 1/3: a1+3a2-delta is negative on the fundamental alcove, so the
  // identity coset carries a one-factor lambda (its Hessenberg variety is a
  // point, not the full flag variety of the Levi)
  RootDatum g2 = build_root_datum({'G', 2, 1});
  SlopeSpec s2 = make_slope(g2, 1, 3);
  auto roots2 = nu_weight_roots(g2, s2);
  RatVec y0 = fundamental_barycenter(g2);
  std::multiset<std::string> negset;
  for (const auto& a : roots2)
    if (eval_affine(g2, a, y0).sign() < 0) negset.insert(form_str(g2, a.rel_idx));
  CHECK(negset == std::multiset<std::string>{"a1+3a2"});
}

TEST_CASE("lambda multiset is constant on clans and equals sep") {
  RootDatum g2 = build_root_datum({'G', 2, 1});
  SlopeSpec s = make_slope(g2, 1, 2);
  WallGroup wg = wall_group(g2, s);
  Enumeration en = enumerate_contributing_alcoves(g2, s, wg);
  auto clans = clan_decomposition(en, g2);
  for (const auto& c : clans) {
    CHECK((int)c.lambda.size() == c.sep);
    for (int ai : c.alcove_indices) {
      CHECK(en.alcoves[ai].neg_mask == c.neg_mask);
      CHECK(en.alcoves[ai].sep == c.sep);
    }
  }
}

TEST_CASE("no two retained alcoves lie in the same wall-group orbit") {
  for (rootdata::GroupSpec spec : std::vector<rootdata::GroupSpec>{
           {'G', 2, 1}, {'C', 2, 1}, {'A', 3, 2}}) {
    RootDatum d = build_root_datum(spec);
    SlopeSpec s = make_slope(d, 1, 2);
    WallGroup wg = wall_group(d, s);
    Enumeration en = enumerate_contributing_alcoves(d, s, wg);
    auto key_of = [](const RatVec& p) {
      std::vector<std::pair<int64_t, int64_t>> k;
      for (const Rat& q : p) k.emplace_back(q.num(), q.den());
      return k;
    };
    for (size_t i = 0; i < en.alcoves.size(); ++i) {
      std::set<std::vector<std::pair<int64_t, int64_t>>> orbit;
      std::vector<RatVec> frontier{en.alcoves[i].barycenter};
      orbit.insert(key_of(frontier[0]));
      while (!frontier.empty()) {
        std::vector<RatVec> next;
        for (const RatVec& p : frontier) {
          for (const auto& w : wg.positive_roots) {
            const auto& rr = d.rel_roots[w.rel_idx];
            Rat v = dot_iv(rr.coords, p) + w.offset;
            RatVec p2 = p;
            for (int t = 0; t < d.rel_rank; ++t) p2[t] -= v * Rat(rr.coroot[t]);
            if (orbit.insert(key_of(p2)).second) next.push_back(p2);
          }
        }
        frontier = std::move(next);
      }
      for (size_t j = 0; j < en.alcoves.size(); ++j) {
        if (j == i) continue;
        CHECK_FALSE(orbit.count(key_of(en.alcoves[j].barycenter)));
      }
    }
  }
}

TEST_CASE("alcove words are reduced and replay to the barycenter") {
  RootDatum a1 = build_root_datum({'A', 1, 1});
  CHECK(alcove_word(a1, fundamental_barycenter(a1)).empty());
  CHECK(alcove_word(a1, RatVec{Rat(3, 2)}) == std::vector<int>{0});
  CHECK(alcove_word(a1, RatVec{Rat(-1, 2)}) == std::vector<int>{1});

  RootDatum g2 = build_root_datum({'G', 2, 1});
  SlopeSpec s = make_slope(g2, 1, 2);
  WallGroup wg = wall_group(g2, s);
  Enumeration en = enumerate_contributing_alcoves(g2, s, wg);
  for (const auto& a : en.alcoves) {
    auto w = alcove_word(g2, a.barycenter);
    RatVec p = fundamental_barycenter(g2);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      int letter = *it;
      Coords c(2, 0);
      Rat off(0);
      if (letter == 0) {
        for (int i = 0; i < 2; ++i) c[i] = -(int)g2.marks[i];
        off = Rat(1, g2.spec.e);
      } else {
        c[letter - 1] = 1;
      }
      Rat n2 = g2.rel_inner(c, c);
      Rat v = dot_iv(c, p) + off;
      for (int i = 0; i < 2; ++i) {
        Coords ei(2, 0);
        ei[i] = 1;
        Rat cr = Rat(2) * g2.rel_inner(ei, c) / n2;
        p[i] -= v * cr;
      }
    }
    CHECK(p == a.barycenter);
  }
}
