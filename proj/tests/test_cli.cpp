#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

// Every case shells out to the real binary; SOFICLAB_BIN is set by ctest.
const std::string& bin() {
  static const std::string b = [] {
    const char* env = std::getenv("SOFICLAB_BIN");
    REQUIRE_MESSAGE(env != nullptr, "SOFICLAB_BIN must point at the soficlab binary");
    return std::string(env);
  }();
  return b;
}

const std::string& scratch() {
  static const std::string dir = [] {
    const std::string d = "cli-scratch";
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run(const std::string& args) {
  const std::string cmd =
      "\"" + bin() + "\" " + args + " 2>" + scratch() + "/stderr.txt";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t k = 0;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
  const int st = pclose(p);
  CmdResult r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = std::move(out);
  return r;
}

std::string path(const std::string& name) { return scratch() + "/" + name; }

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  REQUIRE(out.good());
}

json jload(const std::string& p) { return json::parse(slurp(p)); }

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// Registry used by the join commands: two Z2 factors and their free product.
const std::string& pab_file() {
  static const std::string p = [] {
    const std::string f = path("pab.txt");
    spit(f,
         "finite a table = [[0,1],[1,0]]\n"
         "finite b table = [[0,1],[1,0]]\n"
         "freeproduct p = a * b\n");
    return f;
  }();
  return p;
}

}  // namespace

TEST_CASE("construct regular emits an exact model that verify accepts") {
  const std::string m = path("m_z3.json");
  CmdResult c = run("construct regular --group z3 --copies 2 --out " + m);
  REQUIRE(c.code == 0);
  const json j = jload(m);
  CHECK(j["format"] == "sofic-model/1");
  CHECK(j["d"] == 6);
  CHECK(j["images"]["g1"] == json::array({2, 3, 1, 5, 6, 4}));
  CHECK(j["images"]["g2"] == json::array({3, 1, 2, 6, 4, 5}));

  const CmdResult v = run("verify --model " + m + " --n 3 --delta 1e-9");
  CHECK(v.code == 0);
  CHECK(v.out.find("passed: true") != std::string::npos);
  CHECK(v.out.find("max_mult_defect: 0\n") != std::string::npos);
}

TEST_CASE("verify exits 2 on corrupted JSON and 1 on a failing check") {
  const std::string bad = path("bad.json");
  spit(bad, "{ not json");
  CHECK(run("verify --model " + bad + " --n 2 --delta 0.1").code == 2);

  json j = jload(path("m_z3.json"));
  std::swap(j["images"]["g1"][0], j["images"]["g1"][3]);  // break the homomorphism
  const std::string pert = path("pert.json");
  spit(pert, j.dump(2) + "\n");
  const CmdResult v = run("verify --model " + pert + " --n 2 --delta 1e-6");
  CHECK(v.code == 1);
  CHECK(v.out.find("passed: false") != std::string::npos);
  CHECK(v.out.find("worst_tuple: g") != std::string::npos);
}

TEST_CASE("census reproduces the involution counts and flags odd dimensions") {
  const CmdResult c = run("census --group z2 --n 2 --delta 0.1 --d-list 2,4,6,8,3");
  REQUIRE(c.code == 0);
  const auto lines = csv_lines(c.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "group,F,E,n,delta,d,count,rate,mode,seconds");
  const std::vector<std::string> expect = {"1", "3", "15", "105", "0"};
  for (size_t i = 0; i < expect.size(); ++i) {
    const auto f = csv_fields(lines[i + 1]);
    REQUIRE(f.size() == 10);
    CHECK(f[6] == expect[i]);
  }
  CHECK(csv_fields(lines[5])[7] == "-inf");  // count 0 has no finite rate
}

TEST_CASE("census witnesses serialize as loadable passing models") {
  const std::string dir = path("wits");
  REQUIRE(run("census --group z2 --n 2 --delta 0.1 --d 4 --witnesses " + dir).code == 0);
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    ++files;
    CHECK(run("verify --model " + e.path().string() + " --n 2 --delta 0.1").code == 0);
  }
  CHECK(files == 3);
}

TEST_CASE("profile matches census counts in orbit mode") {
  const CmdResult p =
      run("profile --group z2 --n 2 --delta 0.1 --d-list 4,6,8 --orbit-mode --stable-output");
  REQUIRE(p.code == 0);
  const auto lines = csv_lines(p.out);
  REQUIRE(lines.size() == 4);
  CHECK(csv_fields(lines[1])[6] == "3");
  CHECK(csv_fields(lines[2])[6] == "15");
  CHECK(csv_fields(lines[3])[6] == "105");
  for (size_t i = 1; i < lines.size(); ++i) {
    CHECK(csv_fields(lines[i])[8] == "orbit-decomposed");
    CHECK(csv_fields(lines[i])[9] == "0");  // --stable-output zeroes timing
  }
}

TEST_CASE("freejoin is a pure function of the master seed") {
  const std::string la = path("la.json"), rb = path("rb.json");
  REQUIRE(run("construct regular --group " + pab_file() + " --name a --copies 10 --out " + la)
              .code == 0);
  REQUIRE(run("construct regular --group " + pab_file() + " --name b --copies 10 --out " + rb)
              .code == 0);
  const std::string base =
      "construct freejoin --group " + pab_file() + " --left " + la + " --right " + rb + " --n 3";
  REQUIRE(run(base + " --seed 7 --out " + path("j1.json")).code == 0);
  REQUIRE(run(base + " --seed 7 --out " + path("j2.json")).code == 0);
  REQUIRE(run(base + " --seed 8 --out " + path("j3.json")).code == 0);
  CHECK(slurp(path("j1.json")) == slurp(path("j2.json")));
  CHECK(slurp(path("j1.json")) != slurp(path("j3.json")));
  CHECK(run("verify --model " + path("j1.json") + " --group " + pab_file() +
            " --n 3 --delta 0.35")
            .code == 0);
}

TEST_CASE("quasitile certifies the interval tiling of a cyclic shift") {
  json img = json::array();
  for (int i = 1; i <= 60; ++i) img.push_back(i % 60 + 1);
  const json m = {{"format", "sofic-model/1"},
                  {"group", {{"spec", "integer z"}, {"name", "z"}}},
                  {"d", 60},
                  {"images", {{"g", img}}},
                  {"provenance", {{"op", "handmade"}}}};
  const std::string f = path("shift60.json");
  spit(f, m.dump(2) + "\n");

  const CmdResult c = run("construct quasitile --model " + f + " --tile 0..10 --eps 0.05");
  REQUIRE(c.code == 0);
  const json j = json::parse(c.out);
  CHECK(j["coverage"] == 1.0);
  CHECK(j["disjoint"] == true);
  CHECK(j["lambda_hat"] == json::array({1.0}));
  CHECK(j["tiles"][0]["centers"] == json::array({1, 11, 21, 31, 41, 51}));
}

TEST_CASE("trace survey lands near the exact pair count and exhausts small d") {
  const CmdResult mc = run("survey trace --d 10 --eps 0.15 --trials 2000 --seed 5");
  REQUIRE(mc.code == 0);
  const auto rows = csv_lines(mc.out);
  REQUIRE(rows.size() == 2);
  const double frac = std::stod(csv_fields(rows[1])[3]);
  CHECK(std::abs(frac - 2669921.0 / 3628800.0) < 0.03);

  const CmdResult ex = run("survey trace --d 4 --eps 0.3 --exhaustive");
  REQUIRE(ex.code == 0);
  CHECK(csv_fields(csv_lines(ex.out)[1])[3] == "0.708333333");

  CHECK(run("survey trace --d 10 --eps 0.15 --trials 0 --seed 5").code == 2);
  CHECK(run("survey trace --d 4 --eps 0.3 --exhaustive --trials 9").code == 2);
}

TEST_CASE("join survey emits a reproducible trend table") {
  const std::string cmd = "survey join --group " + pab_file() +
                          " --n 3 --delta 0.3 --d-list 20,40 --trials 10 --seed 3";
  const CmdResult a = run(cmd);
  REQUIRE(a.code == 0);
  const auto rows = csv_lines(a.out);
  REQUIRE(rows.size() == 3);
  for (size_t i = 1; i < rows.size(); ++i) {
    const double frac = std::stod(csv_fields(rows[i])[3]);
    CHECK(frac >= 0.0);
    CHECK(frac <= 1.0);
  }
  CHECK(run(cmd).out == a.out);
  CHECK(run("survey join --group " + pab_file() +
            " --n 3 --delta 0.3 --d-list 21 --trials 2 --seed 3")
            .code == 2);  // 21 is not a multiple of the factor orders
}

TEST_CASE("run records replay to identical outputs") {
  const std::string cmd = "census --group z2 --n 2 --delta 0.1 --d-list 2,4 --stable-output";
  REQUIRE(run(cmd + " --record " + path("r1.json")).code == 0);
  REQUIRE(run(cmd + " --record " + path("r2.json")).code == 0);
  const json r1 = jload(path("r1.json"));
  const json r2 = jload(path("r2.json"));
  CHECK(r1["format"] == "sofic-run/1");
  CHECK(r1["outputs"] == r2["outputs"]);
  CHECK(r1["config"] == r2["config"]);
  CHECK(r1["outputs"]["payload"].get<std::string>().find("z2,g1,g1,2,0.1,4,3,") !=
        std::string::npos);
}

TEST_CASE("model JSON round-trips through amplify with one copy") {
  const json a = jload(path("m_z3.json"));
  const std::string m2 = path("m_z3_rt.json");
  REQUIRE(run("construct amplify --model " + path("m_z3.json") + " --copies 1 --out " + m2)
              .code == 0);
  const json b = jload(m2);
  CHECK(a["images"] == b["images"]);
  CHECK(a["d"] == b["d"]);
  CHECK(a["group"] == b["group"]);
}

TEST_CASE("induce lifts a subgroup model through the cli") {
  const std::string h = path("h_z2.json");
  REQUIRE(run("construct regular --group z2 --out " + h).code == 0);
  const std::string ind = path("ind.json");
  REQUIRE(run("construct induce --model " + h +
              " --group z4 --embed 0,2 --transversal 0,1 --out " + ind)
              .code == 0);
  CHECK(jload(ind)["d"] == 4);  // index-2 embedding doubles the h-model dimension
  CHECK(run("verify --model " + ind + " --n 3 --delta 1e-9").code == 0);
}

TEST_CASE("amalgamjoin reports exact subgroup agreement in its provenance") {
  const std::string reg = path("amal.txt");
  spit(reg,
       "finite a table = [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]\n"
       "finite b table = [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]\n"
       "finite h table = [[0,1],[1,0]]\n"
       "amalgam p = a *_{h} b with embed_left = [0,2], embed_right = [0,2]\n");
  const std::string al = path("al.json"), ar = path("ar.json"), aj = path("aj.json");
  REQUIRE(run("construct regular --group " + reg + " --name a --copies 12 --out " + al).code == 0);
  REQUIRE(run("construct regular --group " + reg + " --name b --copies 12 --out " + ar).code == 0);
  REQUIRE(run("construct amalgamjoin --group " + reg + " --left " + al + " --right " + ar +
              " --n 2 --seed 3 --out " + aj)
              .code == 0);
  const json p = jload(aj)["provenance"];
  CHECK(p["h_agreement_defect"] == 0.0);
  CHECK(p["aligned_points"] == 48);
  CHECK(p["free_orbits_left"] == 24);
  CHECK(p["free_orbits_right"] == 24);
  CHECK(p["ga_passed"] == true);
}

TEST_CASE("conjugator finds the exact mover for identical models") {
  const CmdResult c = run("construct conjugator --a " + path("m_z3.json") + " --b " +
                          path("m_z3.json") + " --budget 100");
  REQUIRE(c.code == 0);
  const json j = json::parse(c.out);
  CHECK(j["residual"] == 0.0);
  CHECK(j["gamma"].size() == 6);
}

TEST_CASE("bernoulli labelings are seed-determined") {
  const std::string m = path("z100.json");
  REQUIRE(run("construct regular --group z2 --copies 50 --out " + m).code == 0);
  const std::string cmd = "construct bernoulli --model " + m + " --nu 0.5,0.5 --seed 9 --out ";
  REQUIRE(run(cmd + path("bn1.json")).code == 0);
  REQUIRE(run(cmd + path("bn2.json")).code == 0);
  CHECK(slurp(path("bn1.json")) == slurp(path("bn2.json")));
  const json j = jload(path("bn1.json"));
  CHECK(j["cells"] == 2);
  CHECK(j["measure"] == "bernoulli");
  CHECK(j["labels"].size() == 100);
}

TEST_CASE("usage errors exit 2 and --version exits 0") {
  CHECK(run("--version").code == 0);
  CHECK(run("census --group z2 --n 2 --delta 0.1").code == 2);     // no --d or --d-list
  CHECK(run("census --group znope --n 2 --delta 0.1 --d 2").code == 2);
  CHECK(run("construct").code == 2);                               // subcommand required
  CHECK(run("verify --model nope.json --n 2 --delta 0.1").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("stdout and --out carry identical bytes") {
  const CmdResult c = run("construct regular --group z2 --copies 3");
  REQUIRE(c.code == 0);
  REQUIRE(run("construct regular --group z2 --copies 3 --out " + path("dup.json")).code == 0);
  CHECK(c.out == slurp(path("dup.json")));
}
