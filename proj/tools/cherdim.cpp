// cherdim: exact dimensions of spherical modules over rational Cherednik
// algebras via alcove clans and coinvariant-algebra annihilator quotients,
// plus the closed-form fiber dimension formulas, for every simple type
// including the twisted ones.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "cherdim/cache.hpp"
#include "cherdim/dimensions.hpp"
#include "cherdim/reference.hpp"
#include "cherdim/svg.hpp"

using json = nlohmann::ordered_json;
using namespace cherdim;
using dimensions::ComputeOptions;
using dimensions::DimReport;
using rootdata::GroupSpec;
using rootdata::RootDatum;

namespace {

struct TypeArgs {
  std::string family = "A";
  int rank = 1;
  int twist = 1;

  GroupSpec spec() const {
    if (family.size() != 1) throw invalid_input("family must be a single letter A..G");
    return GroupSpec{(char)std::toupper(family[0]), rank, twist};
  }
};

void add_type_options(CLI::App* cmd, TypeArgs& t) {
  cmd->add_option("--type,-t", t.family, "family letter A..G")->required();
  cmd->add_option("--rank,-r", t.rank, "rank of the (absolute) group")->required();
  cmd->add_option("--twist,-e", t.twist, "twist order 1, 2 or 3")->default_val(1);
}

std::pair<int64_t, int64_t> parse_slope(const std::string& s) {
  auto bar = s.find('/');
  try {
    if (bar == std::string::npos) return {std::stoll(s), 1};
    return {std::stoll(s.substr(0, bar)), std::stoll(s.substr(bar + 1))};
  } catch (const std::exception&) {
    throw invalid_input("cannot parse slope '" + s + "'; expected d/m");
  }
}

std::vector<int> parse_parahoric(const std::string& s) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    out.push_back(std::stoi(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

json slope_json(const apartment::SlopeSpec& s) {
  json j;
  j["d1"] = s.d1;
  j["m1"] = s.m1;
  j["d"] = s.d;
  j["m"] = s.m;
  j["nu"] = s.nu.str();
  j["elliptic"] = s.elliptic;
  j["t_fixed_dim"] = s.t_fixed_dim;
  return j;
}

json report_json(const DimReport& r) {
  json j;
  j["type"] = r.spec.name();
  j["family"] = std::string(1, r.spec.family);
  j["rank"] = r.spec.rank;
  j["twist"] = r.spec.e;
  j["slope"] = slope_json(r.slope);
  j["parahoric"] = r.parahoric;
  j["scaled"] = r.scaled;
  j["scale_factor"] = r.scale_factor;
  json wg;
  wg["type"] = r.wallgroup_type;
  wg["degrees"] = r.wallgroup_degrees;
  wg["order"] = r.wallgroup_order;
  wg["reflection_count"] = r.reflection_count;
  j["wallgroup"] = wg;
  json f;
  f["dim_springer"] = r.dim_sp;
  f["dim_hitchin"] = r.dim_hit;
  f["t_fixed_dim"] = r.t_fixed_dim;
  f["n_top"] = r.n_top.str();
  j["formulas"] = f;
  j["total"] = r.total;
  json clans = json::array();
  for (const auto& c : r.clans) {
    json cj;
    cj["sign_vector"] = c.sign_vector;
    cj["alcove_count"] = c.alcove_count;
    cj["sep"] = c.sep;
    cj["lambda"] = c.lambda;
    cj["per_coset_dim"] = c.per_coset_dim;
    cj["subtotal"] = c.subtotal;
    if (!c.graded.empty()) cj["graded"] = c.graded;
    clans.push_back(std::move(cj));
  }
  j["clans"] = clans;
  j["cosets"] = r.cosets;
  j["alcoves_visited"] = r.alcoves_visited;
  return j;
}

std::string csv_quote(const std::string& s) {
  bool need = s.find_first_of(",\"\n") != std::string::npos;
  if (!need) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw invalid_input("cannot open output file " + path);
  f << content;
}

std::string cache_key(const GroupSpec& spec, int64_t d1, int64_t m1,
                      const std::vector<int>& parahoric, bool direct) {
  std::string k = spec.name() + "|" + std::to_string(d1) + "/" + std::to_string(m1) +
                  "|P=";
  for (int p : parahoric) k += std::to_string(p) + ".";
  k += direct ? "|direct" : "|scaled";
  return k;
}

// total_dimension behind a read-through cache on the whole report
DimReport cached_total(const cache::Store& store, const RootDatum& datum,
                       const apartment::SlopeSpec& slope, const ComputeOptions& opts) {
  std::string key =
      cache_key(datum.spec, slope.d1, slope.m1, opts.parahoric, opts.direct);
  if (!opts.graded && store.enabled()) {
    if (auto hit = store.get(key)) {
      json j = json::parse(*hit, nullptr, false);
      if (!j.is_discarded()) {
        DimReport r;
        r.spec = datum.spec;
        r.slope = slope;
        r.parahoric = opts.parahoric;
        r.scaled = j["scaled"].get<bool>();
        r.scale_factor = j["scale_factor"].get<int64_t>();
        r.wallgroup_type = j["wallgroup"]["type"].get<std::string>();
        r.wallgroup_degrees = j["wallgroup"]["degrees"].get<std::vector<int>>();
        r.wallgroup_order = j["wallgroup"]["order"].get<int64_t>();
        r.reflection_count = j["wallgroup"]["reflection_count"].get<int>();
        r.total = j["total"].get<int64_t>();
        for (const auto& cj : j["clans"]) {
          dimensions::ClanReport c;
          c.sign_vector = cj["sign_vector"].get<std::string>();
          c.alcove_count = cj["alcove_count"].get<int64_t>();
          c.sep = cj["sep"].get<int>();
          c.lambda = cj["lambda"].get<std::vector<std::string>>();
          c.per_coset_dim = cj["per_coset_dim"].get<int64_t>();
          c.subtotal = cj["subtotal"].get<int64_t>();
          r.clans.push_back(std::move(c));
        }
        r.cosets = j["cosets"].get<int64_t>();
        r.alcoves_visited = j["alcoves_visited"].get<int64_t>();
        r.dim_sp = dimensions::dim_springer(datum, slope);
        r.dim_hit = dimensions::dim_hitchin(datum, slope);
        r.t_fixed_dim = slope.t_fixed_dim;
        r.n_top =
            Rat(datum.rel_rank) * (Rat(datum.h_theta) * slope.nu - Rat(1)) / Rat(2);
        r.cache_hit = true;
        return r;
      }
    }
  }
  DimReport r = dimensions::total_dimension(datum, slope, opts);
  if (!opts.graded) store.put(key, report_json(r).dump());
  return r;
}

int run(int argc, char** argv) {
  CLI::App app{
      "exact spherical-module dimensions for rational Cherednik algebras\n"
      "via clans of alcoves and coinvariant annihilator quotients"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string cache_dir;
  bool no_cache = false;
  app.add_option("--cache-dir", cache_dir, "result cache directory")
      ->envname("CHERDIM_CACHE_DIR");
  app.add_flag("--no-cache", no_cache, "disable the result cache");

  auto* rootsys = app.add_subcommand("rootsys", "print the root datum as JSON");
  TypeArgs rt;
  add_type_options(rootsys, rt);
  std::string root_out;
  rootsys->add_option("--out,-o", root_out, "output file (default stdout)");

  auto* dims = app.add_subcommand("dims", "total and graded dimensions");
  TypeArgs dt;
  add_type_options(dims, dt);
  std::string dslope = "1/2", dformat = "json", dout, dpara;
  bool dgraded = false, ddirect = false;
  int64_t dbudget = 200000, dcap = 10000000;
  dims->add_option("--slope,-s", dslope, "slope d/m")->required();
  dims->add_option("--parahoric", dpara, "affine node subset, e.g. 0,2");
  dims->add_flag("--graded", dgraded, "emit per-clan graded image data");
  dims->add_flag("--direct", ddirect, "enumerate at d/m (no 1/m scaling shortcut)");
  dims->add_option("--budget", dbudget, "monomial-space budget");
  dims->add_option("--alcove-cap", dcap, "alcove search cap");
  dims->add_option("--format,-f", dformat, "json or csv")->default_val("json");
  dims->add_option("--out,-o", dout, "output file (default stdout)");

  auto* clans = app.add_subcommand("clans", "clan decomposition as JSON");
  TypeArgs ct;
  add_type_options(clans, ct);
  std::string cslope = "1/2", cout_path;
  int64_t ccap = 10000000;
  clans->add_option("--slope,-s", cslope, "slope d/m")->required();
  clans->add_option("--alcove-cap", ccap, "alcove search cap");
  clans->add_option("--out,-o", cout_path, "output file (default stdout)");

  auto* svgcmd = app.add_subcommand("apartment-svg", "rank-2 apartment picture");
  TypeArgs st;
  add_type_options(svgcmd, st);
  std::string sslope = "1/2", sout;
  svgcmd->add_option("--slope,-s", sslope, "slope d/m")->required();
  svgcmd->add_option("--out,-o", sout, "output SVG file (default stdout)");

  auto* table = app.add_subcommand("table", "batch totals over types and slopes");
  std::string ttypes, tslopes = "elliptic", tformat = "csv", tout;
  int64_t tbudget = 200000, tcap = 10000000;
  table->add_option("--types", ttypes, "comma list like A2,2^A3,F4,E8")->required();
  table->add_option("--slopes", tslopes,
                    "'elliptic' (all 1/m rows) or comma list of d/m");
  table->add_option("--budget", tbudget, "monomial-space budget");
  table->add_option("--alcove-cap", tcap, "alcove search cap");
  table->add_option("--format,-f", tformat, "csv or json")->default_val("csv");
  table->add_option("--out,-o", tout, "output file (default stdout)");

  auto* check = app.add_subcommand("check", "verify the built-in reference table");
  int64_t kbudget = 200000, kcap = 10000000;
  bool kstretch = false;
  check->add_option("--budget", kbudget, "monomial-space budget");
  check->add_option("--alcove-cap", kcap, "alcove search cap");
  check->add_flag("--stretch", kstretch, "attempt the stretch entries too");

  CLI11_PARSE(app, argc, argv);
  cache::Store store = cache::open_store(cache_dir, no_cache);

  if (*rootsys) {
    RootDatum d = rootdata::build_root_datum(rt.spec());
    json j;
    j["type"] = d.spec.name();
    j["family"] = std::string(1, d.spec.family);
    j["rank"] = d.spec.rank;
    j["twist"] = d.spec.e;
    j["relative_rank"] = d.rel_rank;
    j["relative_type"] = d.rel_type;
    j["degrees"] = d.degrees;
    j["exponents"] = d.exponents;
    j["twist_exponents"] = d.eps;
    json marks = json::array();
    marks.push_back(1);
    for (int64_t a : d.marks) marks.push_back(a);
    j["marks"] = marks;
    json dual = json::array();
    dual.push_back(d.a0_dual);
    for (int64_t a : d.dual_marks) dual.push_back(a);
    j["dual_marks"] = dual;
    j["h_theta"] = d.h_theta;
    j["h_theta_dual"] = d.h_theta_dual;
    j["abs_root_count"] = d.abs_root_count;
    j["rel_root_count"] = (int64_t)d.rel_roots.size();
    j["regular_numbers"] = d.regular_numbers;
    j["elliptic_regular_numbers"] = d.elliptic_regular_numbers;
    j["regular_table_known"] = d.regular_table_known;
    write_out(root_out, j.dump(2) + "\n");
    return 0;
  }

  if (*dims) {
    RootDatum d = rootdata::build_root_datum(dt.spec());
    auto [d1, m1] = parse_slope(dslope);
    apartment::SlopeSpec s = apartment::make_slope(d, d1, m1);
    ComputeOptions opts;
    opts.budget = dbudget;
    opts.alcove_cap = dcap;
    opts.direct = ddirect;
    opts.graded = dgraded;
    opts.parahoric = parse_parahoric(dpara);
    DimReport r = cached_total(store, d, s, opts);
    if (dformat == "json") {
      write_out(dout, report_json(r).dump(2) + "\n");
    } else if (dformat == "csv") {
      std::string out =
          "type,rank,e,d,m,elliptic,total,n_clans,n_cosets,wallgroup_type\n";
      out += csv_quote(r.spec.name()) + "," + std::to_string(r.spec.rank) + "," +
             std::to_string(r.spec.e) + "," + std::to_string(r.slope.d1) + "," +
             std::to_string(r.slope.m1) + "," + (r.slope.elliptic ? "true" : "false") +
             "," + std::to_string(r.total) + "," + std::to_string(r.clans.size()) +
             "," + std::to_string(r.cosets) + "," + csv_quote(r.wallgroup_type) + "\n";
      write_out(dout, out);
    } else {
      throw invalid_input("unknown format " + dformat);
    }
    return 0;
  }

  if (*clans) {
    RootDatum d = rootdata::build_root_datum(ct.spec());
    auto [d1, m1] = parse_slope(cslope);
    apartment::SlopeSpec s = apartment::make_slope(d, d1, m1);
    apartment::WallGroup wg = apartment::wall_group(d, s);
    apartment::EnumerateOptions eo;
    eo.alcove_cap = ccap;
    apartment::Enumeration en =
        apartment::enumerate_contributing_alcoves(d, s, wg, eo);
    auto cl = apartment::clan_decomposition(en, d);
    json j;
    j["type"] = d.spec.name();
    j["slope"] = slope_json(s);
    j["wallgroup_type"] = wg.type_name;
    j["reflection_count"] = wg.reflection_count;
    json nu = json::array();
    for (const auto& a : en.nu_roots) {
      json aj;
      std::string lin;
      const auto& c = d.rel_roots[a.rel_idx].coords;
      for (int i = 0; i < d.rel_rank; ++i) {
        if (c[i] == 0) continue;
        if (!lin.empty() && c[i] > 0) lin += "+";
        if (c[i] == -1) lin += "-";
        else if (c[i] != 1) lin += std::to_string(c[i]);
        lin += "a" + std::to_string(i + 1);
      }
      aj["linear_part"] = lin;
      aj["offset"] = a.offset.str();
      nu.push_back(std::move(aj));
    }
    j["nu_weight_roots"] = nu;
    json arr = json::array();
    for (const auto& c : cl) {
      json cj;
      std::string sv(en.nu_roots.size(), '+');
      for (int idx : c.lambda) sv[idx] = '-';
      cj["sign_vector"] = sv;
      cj["alcove_count"] = c.alcove_indices.size();
      cj["sep"] = c.sep;
      cj["expected_dim"] = wg.reflection_count - c.sep;
      json lambda = json::array();
      for (int idx : c.lambda)
        lambda.push_back(nu[idx]["linear_part"].get<std::string>());
      cj["lambda"] = lambda;
      cj["bounded"] = c.bounded;
      arr.push_back(std::move(cj));
    }
    j["clans"] = arr;
    write_out(cout_path, j.dump(2) + "\n");
    return 0;
  }

  if (*svgcmd) {
    RootDatum d = rootdata::build_root_datum(st.spec());
    auto [d1, m1] = parse_slope(sslope);
    apartment::SlopeSpec s = apartment::make_slope(d, d1, m1);
    write_out(sout, svg::render_apartment(d, s));
    return 0;
  }

  if (*table) {
    std::vector<GroupSpec> specs;
    {
      size_t pos = 0;
      while (pos < ttypes.size()) {
        size_t next = ttypes.find(',', pos);
        if (next == std::string::npos) next = ttypes.size();
        std::string item = ttypes.substr(pos, next - pos);
        pos = next + 1;
        if (item.empty()) continue;
        int twist = 1;
        auto caret = item.find('^');
        if (caret != std::string::npos) {
          twist = std::stoi(item.substr(0, caret));
          item = item.substr(caret + 1);
        }
        if (item.empty()) throw invalid_input("bad type token in --types");
        char fam = (char)std::toupper(item[0]);
        int rank = std::stoi(item.substr(1));
        specs.push_back({fam, rank, twist});
      }
    }
    struct Row {
      GroupSpec spec;
      int64_t d1, m1;
      bool elliptic = false;
      bool feasible = false;
      std::string note;
      DimReport rep;
    };
    std::vector<Row> rows;
    for (const GroupSpec& spec : specs) {
      RootDatum d = rootdata::build_root_datum(spec);
      std::vector<std::pair<int64_t, int64_t>> slopes;
      if (tslopes == "elliptic") {
        std::vector<int64_t> ms = d.elliptic_regular_numbers;
        std::sort(ms.rbegin(), ms.rend());
        for (int64_t m : ms) slopes.emplace_back(1, m);
      } else {
        size_t pos = 0;
        while (pos < tslopes.size()) {
          size_t next = tslopes.find(',', pos);
          if (next == std::string::npos) next = tslopes.size();
          slopes.push_back(parse_slope(tslopes.substr(pos, next - pos)));
          pos = next + 1;
        }
      }
      for (auto [d1, m1] : slopes) {
        Row row;
        row.spec = spec;
        row.d1 = d1;
        row.m1 = m1;
        try {
          apartment::SlopeSpec s = apartment::make_slope(d, d1, m1);
          row.elliptic = s.elliptic;
          ComputeOptions opts;
          opts.budget = tbudget;
          opts.alcove_cap = tcap;
          row.rep = cached_total(store, d, s, opts);
          row.feasible = true;
        } catch (const infeasible_error& e) {
          row.note = e.what();
        } catch (const invalid_input& e) {
          row.note = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
    auto fmt_ms = [](double ms) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1f", ms);
      return std::string(buf);
    };
    if (tformat == "csv") {
      std::string out =
          "type,rank,e,d,m,elliptic,total,n_clans,n_cosets,wallgroup_type,"
          "runtime_ms,cache_hit\n";
      for (const Row& r : rows) {
        out += csv_quote(r.spec.name()) + "," + std::to_string(r.spec.rank) + "," +
               std::to_string(r.spec.e) + "," + std::to_string(r.d1) + "," +
               std::to_string(r.m1) + "," + (r.elliptic ? "true" : "false") + ",";
        if (r.feasible)
          out += std::to_string(r.rep.total) + "," +
                 std::to_string(r.rep.clans.size()) + "," +
                 std::to_string(r.rep.cosets) + "," +
                 csv_quote(r.rep.wallgroup_type) + "," + fmt_ms(r.rep.runtime_ms) +
                 "," + (r.rep.cache_hit ? "true" : "false");
        else
          out += ",,,," + csv_quote("infeasible: " + r.note) + ",";
        out += "\n";
      }
      write_out(tout, out);
    } else if (tformat == "json") {
      json arr = json::array();
      for (const Row& r : rows) {
        json j;
        j["type"] = r.spec.name();
        j["rank"] = r.spec.rank;
        j["e"] = r.spec.e;
        j["d"] = r.d1;
        j["m"] = r.m1;
        j["elliptic"] = r.elliptic;
        if (r.feasible) {
          j["total"] = r.rep.total;
          j["n_clans"] = r.rep.clans.size();
          j["n_cosets"] = r.rep.cosets;
          j["wallgroup_type"] = r.rep.wallgroup_type;
          j["runtime_ms"] = r.rep.runtime_ms;
          j["cache_hit"] = r.rep.cache_hit;
        } else {
          j["infeasible"] = r.note;
        }
        arr.push_back(std::move(j));
      }
      write_out(tout, arr.dump(2) + "\n");
    } else {
      throw invalid_input("unknown format " + tformat);
    }
    return 0;
  }

  if (*check) {
    int failures = 0;
    for (const auto& entry : reference::table()) {
      GroupSpec spec{entry.family, entry.rank, entry.e};
      RootDatum d = rootdata::build_root_datum(spec);
      std::string label = spec.name() + " m1=" + std::to_string(entry.m1);
      if (entry.cls == reference::Feasibility::kStretch && !kstretch) {
        std::printf("[skip] %-14s stretch entry (enable with --stretch)\n",
                    label.c_str());
        continue;
      }
      try {
        apartment::SlopeSpec s = apartment::make_slope(d, 1, entry.m1);
        ComputeOptions opts;
        opts.budget = kbudget;
        opts.alcove_cap = kcap;
        DimReport r = cached_total(store, d, s, opts);
        if (!entry.expected) {
          std::printf(
              "[FAIL] %-14s produced %lld but the table has no verified value\n",
              label.c_str(), (long long)r.total);
          ++failures;
        } else if (r.total == *entry.expected) {
          std::printf("[ ok ] %-14s total %-8lld (%s)\n", label.c_str(),
                      (long long)r.total, entry.provenance.c_str());
        } else {
          std::printf("[FAIL] %-14s total %lld, expected %lld (%s)\n", label.c_str(),
                      (long long)r.total, (long long)*entry.expected,
                      entry.provenance.c_str());
          ++failures;
        }
      } catch (const infeasible_error& e) {
        if (!entry.expected) {
          std::printf("[ ok ] %-14s refused under budget, as required\n",
                      label.c_str());
        } else if (entry.cls == reference::Feasibility::kStretch) {
          std::printf("[skip] %-14s infeasible under this budget\n", label.c_str());
        } else {
          std::printf("[FAIL] %-14s unexpectedly infeasible: %s\n", label.c_str(),
                      e.what());
          ++failures;
        }
      }
    }
    return failures == 0 ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const internal_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
