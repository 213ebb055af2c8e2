#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CHERDIM_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

// strip the timing/cache columns, which legitimately vary between runs
std::string normalize_table_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    size_t comma = line.rfind(',');
    if (comma != std::string::npos) line = line.substr(0, comma);
    comma = line.rfind(',');
    if (comma != std::string::npos) line = line.substr(0, comma);
    out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("rootsys prints the datum with the twist exponent assignment") {
  auto r = run_cli("--no-cache rootsys -t A -r 2 -e 2");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["type"] == "2^A2");
  CHECK(j["h_theta"] == 6);
  CHECK(j["h_theta_dual"] == 3);
  CHECK(j["degrees"] == json::array({2, 3}));
  CHECK(j["twist_exponents"] == json::array({0, 1}));
  CHECK(j["relative_type"] == "BC1");
  CHECK(j["elliptic_regular_numbers"] == json::array({2, 6}));
}

TEST_CASE("dims computes the worked rank-2 values") {
  auto r = run_cli("--no-cache dims -t G -r 2 -s 1/2");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["total"] == 9);
  CHECK(j["wallgroup"]["type"] == "A1+A1");
  CHECK(j["formulas"]["dim_springer"] == 2);
  CHECK(j["clans"].size() == 4);

  auto g = run_cli("--no-cache dims -t D -r 4 -e 3 -s 1/3 --graded");
  REQUIRE(g.exit_code == 0);
  json jg = json::parse(g.out);
  CHECK(jg["total"] == 16);
  int64_t resum = 0;
  for (const auto& c : jg["clans"])
    for (const auto& v : c["graded"])
      resum += v.get<int64_t>() * c["alcove_count"].get<int64_t>();
  CHECK(resum * jg["scale_factor"].get<int64_t>() == 16);
}

TEST_CASE("table sweep over G2 matches the published ladder") {
  auto r = run_cli("--no-cache table --types G2 --slopes elliptic --format json");
  REQUIRE(r.exit_code == 0);
  json rows = json::parse(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["m"] == 6);
  CHECK(rows[0]["total"] == 1);
  CHECK(rows[1]["m"] == 3);
  CHECK(rows[1]["total"] == 4);
  CHECK(rows[2]["m"] == 2);
  CHECK(rows[2]["total"] == 9);
}

TEST_CASE("empty sweep yields just the header") {
  auto r = run_cli("--no-cache table --types A2 --slopes \"\" --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out ==
        "type,rank,e,d,m,elliptic,total,n_clans,n_cosets,wallgroup_type,"
        "runtime_ms,cache_hit\n");
}

TEST_CASE("byte-identical reruns") {
  auto a = run_cli("--no-cache dims -t A -r 3 -e 2 -s 1/2");
  auto b = run_cli("--no-cache dims -t A -r 3 -e 2 -s 1/2");
  CHECK(a.out == b.out);
  auto s1 = run_cli("--no-cache apartment-svg -t C -r 2 -s 1/2");
  auto s2 = run_cli("--no-cache apartment-svg -t C -r 2 -s 1/2");
  CHECK(s1.out == s2.out);
  auto c1 = run_cli("--no-cache clans -t G -r 2 -s 1/3");
  auto c2 = run_cli("--no-cache clans -t G -r 2 -s 1/3");
  CHECK(c1.out == c2.out);
  auto t1 = run_cli("--no-cache table --types C2 --slopes elliptic");
  auto t2 = run_cli("--no-cache table --types C2 --slopes elliptic");
  CHECK(normalize_table_csv(t1.out) == normalize_table_csv(t2.out));
}

TEST_CASE("cache on and off produce identical numerical output") {
  fs::path dir = fs::temp_directory_path() / "cherdim-cli-cache-test";
  fs::remove_all(dir);
  std::string flag = "--cache-dir " + dir.string();
  auto cold = run_cli(flag + " dims -t A -r 4 -e 2 -s 1/2");
  auto warm = run_cli(flag + " dims -t A -r 4 -e 2 -s 1/2");
  auto off = run_cli("--no-cache dims -t A -r 4 -e 2 -s 1/2");
  REQUIRE(cold.exit_code == 0);
  REQUIRE(warm.exit_code == 0);
  CHECK(cold.out == warm.out);
  CHECK(cold.out == off.out);
  CHECK(fs::exists(dir));
  fs::remove_all(dir);
}

TEST_CASE("exit codes distinguish bad input from infeasible runs") {
  CHECK(run_cli("--no-cache dims -t A -r 2 -s 1/5").exit_code == 2);   // not regular
  CHECK(run_cli("--no-cache dims -t A -r 2 -s 1/2").exit_code == 2);   // not elliptic
  CHECK(run_cli("--no-cache dims -t Z -r 2 -s 1/2").exit_code == 2);   // no such family
  CHECK(run_cli("--no-cache dims -t A -r 2 -s 0/3").exit_code == 2);   // zero slope
  CHECK(run_cli("--no-cache dims -t E -r 7 -s 1/2").exit_code == 3);   // over budget
  CHECK(run_cli("--no-cache apartment-svg -t F -r 4 -s 1/2").exit_code == 2);
}

TEST_CASE("svg output carries the structural classes") {
  auto r = run_cli("--no-cache apartment-svg -t G -r 2 -s 1/3");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("wall-nu") != std::string::npos);
  CHECK(r.out.find("wall-wnu") != std::string::npos);
  CHECK(r.out.find("alcove-fund") != std::string::npos);
  CHECK(r.out.find("<svg") != std::string::npos);
}

TEST_CASE("check verifies the reference table end to end") {
  // shared cache directory keeps repeat invocations cheap
  fs::path dir = fs::temp_directory_path() / "cherdim-check-cache";
  auto r = run_cli("--cache-dir " + dir.string() + " check");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("[ ok ] F4 m1=2") != std::string::npos);
  CHECK(r.out.find("[ ok ] E6 m1=3") != std::string::npos);
  CHECK(r.out.find("[ ok ] E7 m1=2") != std::string::npos);  // refused entry
  CHECK(r.out.find("[skip] E8 m1=8") != std::string::npos);  // stretch entry
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("direct flag disables the scaling shortcut but not the answer") {
  auto scaled = run_cli("--no-cache dims -t A -r 2 -s 2/3");
  auto direct = run_cli("--no-cache dims -t A -r 2 -s 2/3 --direct");
  REQUIRE(scaled.exit_code == 0);
  REQUIRE(direct.exit_code == 0);
  CHECK(json::parse(scaled.out)["total"] == 4);
  CHECK(json::parse(direct.out)["total"] == 4);
  CHECK(json::parse(scaled.out)["scaled"] == true);
  CHECK(json::parse(direct.out)["scaled"] == false);
}
