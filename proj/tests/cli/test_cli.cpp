#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using padic_tate::cli::dispatch;
using json = nlohmann::ordered_json;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<json> records(const std::string& out) {
  std::vector<json> v;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) v.push_back(json::parse(line));
  return v;
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(PADIC_TATE_GOLDEN_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kLineV = R"({"n":2,"ell":{"rows":2,"cols":1,"entries":[[1],[0]]}})";
const std::string kLineT = R"([{"n":2,"ell":{"rows":2,"cols":1,"entries":[[0],[1]]}}])";
const std::string kDiagonal =
    R"({"n":2,"mult":{"rows":2,"cols":1,"entries":[[1],[1]]},"ell":{"rows":2,"cols":0,"entries":[]}})";
const std::string kG = R"({"nvars":2,"degree_cap":4,"terms":[{"exp":[0,4],"coeff":"1"}]})";
const std::string kF = R"({"nvars":2,"degree_cap":4,"terms":[{"exp":[0,2],"coeff":"1"},{"exp":[1,0],"coeff":"5"}]})";

}  // namespace

TEST_CASE("documented examples") {
  const Run e = run({"exp", "--p", "5", "--x", "0", "--prec", "10"});
  CHECK(e.status == 0);
  CHECK(e.out == "1 + O(pi^10)\n");

  const Run j = run({"tate", "j", "--p", "5", "--q", "5^2", "--prec", "40", "--format", "structured"});
  CHECK(j.status == 0);
  const auto rec = records(j.out);
  REQUIRE(rec.size() == 1);
  CHECK(rec[0]["v_j"] == "-2");

  const std::vector<std::string> hom{"tate",   "verify-hom", "--p",    "5", "--q",      "5^2",       "--trials",
                                     "20",     "--seed",     "1",      "--prec", "40", "--format", "structured"};
  const Run h1 = run(hom);
  const Run h2 = run(hom);
  CHECK(h1.status == 0);
  const auto trials = records(h1.out);
  REQUIRE(trials.size() == 20);
  for (std::size_t t = 0; t < trials.size(); ++t) {
    CHECK(trials[t]["trial"] == t);
    CHECK(trials[t]["ok"] == true);
    CHECK(trials[t]["prec"] == 30);
  }
  CHECK(h1.out == h2.out);
}

TEST_CASE("golden structured output") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"tate_j.jsonl", {"tate", "j", "--p", "5", "--q", "5^2", "--prec", "40"}},
      {"tate_invariants.jsonl", {"tate", "invariants", "--p", "3", "--q", "3^2", "--prec", "20"}},
      {"verify_hom.jsonl",
       {"tate", "verify-hom", "--p", "5", "--q", "5^2", "--trials", "3", "--seed", "1", "--prec", "24", "--slack",
        "6"}},
      {"lattice_smith.jsonl",
       {"lattice", "smith", "--matrix", R"({"rows":2,"cols":3,"entries":[[2,4,4],[-6,6,12]]})"}},
      {"lattice_kernel.jsonl", {"lattice", "kernel", "--matrix", R"({"rows":1,"cols":3,"entries":[[1,2,3]]})"}},
      {"balls_next.jsonl", {"balls", "next", "--C", "0,1", "--lambda", "1", "--x", "26"}},
      {"geom_rotund.jsonl", {"geom", "rotund", "--lattice", kDiagonal, "--height", "1"}},
      {"geom_plikely.jsonl", {"geom", "plikely", "--V", kLineV, "--S", R"({"n":2})", "--T", kLineT}},
      {"relations_search.jsonl", {"relations", "search", "--z", "5,25,35", "--height", "6", "--prec", "30"}},
      {"wdiv.jsonl", {"wdiv", "--g", kG, "--f", kF}},
      {"rv.jsonl", {"rv", "--x", "26", "--lambda", "1", "--y", "51"}},
      {"exp_ramified.jsonl", {"exp", "--p", "3", "--ext", "eisenstein:2:1", "--x", "pi^3", "--prec", "12"}},
  };
  for (const auto& [file, args] : cases) {
    CAPTURE(file);
    std::vector<std::string> full = args;
    full.insert(full.end(), {"--format", "structured"});
    const Run r = run(full);
    CHECK(r.status == 0);
    CHECK(r.out == golden(file));
  }
}

TEST_CASE("structured records keep a stable key order") {
  const auto rec = records(run({"tate", "j", "--format", "structured"}).out);
  REQUIRE(rec.size() == 1);
  std::vector<std::string> keys;
  for (const auto& [k, v] : rec[0].items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"cmd", "p", "ext", "q", "j", "v_j", "ok", "prec"});
}

TEST_CASE("seed comes from PADIC_TATE_SEED when set") {
  const std::vector<std::string> base{"tate", "verify-hom", "--trials", "2", "--prec", "20", "--format",
                                      "structured"};
  std::vector<std::string> seeded = base;
  seeded.insert(seeded.end(), {"--seed", "7"});
  const std::string with_flag = run(seeded).out;
  CHECK(with_flag != run(base).out);
  setenv("PADIC_TATE_SEED", "7", 1);
  const std::string with_env = run(base).out;
  std::vector<std::string> other = base;
  other.insert(other.end(), {"--seed", "3"});
  const std::string env_wins = run(other).out;
  setenv("PADIC_TATE_SEED", "seven", 1);
  const Run bad = run(base);
  unsetenv("PADIC_TATE_SEED");
  CHECK(with_env == with_flag);
  CHECK(env_wins == with_flag);
  CHECK(bad.status == 2);
}

TEST_CASE("exit codes") {
  // usage errors, reported with the offending token
  const Run none = run({});
  CHECK(none.status == 2);
  const Run unknown = run({"frobnicate"});
  CHECK(unknown.status == 2);
  CHECK(unknown.err.find("frobnicate") != std::string::npos);
  const Run badflag = run({"exp", "--x", "1", "--bogus"});
  CHECK(badflag.status == 2);
  CHECK(badflag.err.find("--bogus") != std::string::npos);
  CHECK(run({"exp"}).status == 2);
  CHECK(run({"exp", "--x", "5", "--prec", "8", "--slack", "8"}).status == 2);
  CHECK(run({"exp", "--x", "5", "--p", "6"}).status == 2);
  CHECK(run({"exp", "--x", "5", "--ext", "eisenstein:2:5"}).status == 2);
  const Run syntax = run({"exp", "--x", "5 +* 2"});
  CHECK(syntax.status == 2);
  CHECK(syntax.err.find("5 +* 2") != std::string::npos);
  CHECK(run({"exp", "--x", "1"}).status == 2);
  CHECK(run({"harness", "--suite", "nonsense"}).status == 2);
  CHECK(run({"lattice", "smith", "--matrix", "/nonexistent/matrix.json"}).status == 2);
  CHECK(run({"geom", "atypical", "--dims", "3,2,2,2"}).status == 2);
  CHECK(run({"balls", "next", "--C", "0", "--lambda", "1/3", "--x", "1"}).status == 2);
  CHECK(run({"--help"}).status == 0);

  // precision errors
  CHECK(run({"tate", "map", "--u", "5^40"}).status == 3);
  CHECK(run({"tate", "map", "--u", "5^40", "--prec", "40"}).status == 3);

  // verification failure: with no slack the last digit of uX' - X - 2Y is not certified
  CHECK(run({"tate", "verify-ode", "--trials", "2", "--slack", "0"}).status == 1);

  // successes
  CHECK(run({"geom", "atypical", "--dims", "2,2,2,3"}).status == 0);
  CHECK(run({"balls", "same", "--C", "0,1", "--lambda", "1", "--x", "26", "--y", "51"}).status == 0);
  CHECK(run({"relations", "mult", "--q", "25", "--u", "5,125", "--height", "3"}).status == 0);
  CHECK(run({"tate", "add", "--u1", "2", "--u2", "3"}).status == 0);
  CHECK(run({"tate", "verify-ode", "--u", "2"}).status == 0);
  CHECK(run({"log", "--x", "1+5"}).status == 0);
}

TEST_CASE("text output is human readable") {
  const Run j = run({"tate", "j"});
  CHECK(j.out.find("v(j) = -2") != std::string::npos);
  const Run s = run({"lattice", "smith", "--matrix", R"({"rows":1,"cols":1,"entries":[[6]]})"});
  CHECK(s.out == "D = [[6]]\nrank = 1\n");
  const Run same = run({"balls", "same", "--C", "0,1", "--lambda", "1", "--x", "26", "--y", "51"});
  CHECK(same.out == "false\n");
}

TEST_CASE("harness records and exit status") {
  const Run r = run({"harness", "--suite", "lattice", "--format", "structured"});
  CHECK(r.status == 0);
  const auto rec = records(r.out);
  REQUIRE(!rec.empty());
  CHECK(rec.back()["suite"] == "lattice");
  CHECK(rec.back()["failures"] == 0);
  CHECK(rec.front().contains("assertion"));

  const std::vector<std::string> exp{"harness", "--suite", "exp", "--trials", "8", "--format", "structured"};
  std::vector<std::string> threaded = exp;
  threaded.insert(threaded.end(), {"--threads", "4"});
  CHECK(run(exp).out == run(threaded).out);
}
