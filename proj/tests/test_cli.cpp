#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "golden_cases.hpp"
#include "rsecat/cli.hpp"

using namespace rsecat;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rsecat");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("golden outputs are reproduced byte for byte") {
  std::filesystem::path dir = std::filesystem::path(RSECAT_SOURCE_DIR) / "tests" / "golden";
  for (const auto& g : golden_cases()) {
    INFO(g.file);
    Run a = run(g.args), b = run(g.args);
    CHECK(a.code == g.code);
    CHECK(a.out == b.out);
    CHECK(a.out == slurp(dir / g.file));
  }
}

TEST_CASE("json reports parse and expose the value") {
  Run r = run({"mtc", "corpus/s2.cdga", "--n", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["invariant"] == "mtc_2");
  CHECK(j["value"] == 2);
  CHECK(j["witness"]["cocycle"] == "x_1*x_2*v0");
  CHECK_FALSE(j.contains("seconds"));
  Run t = run({"mtc", "corpus/s2.cdga", "--n", "2", "--format", "json", "--timing"});
  CHECK(nlohmann::json::parse(t.out).contains("seconds"));
}

TEST_CASE("exit codes") {
  CHECK(run({"mcat", "corpus/s2.cdga"}).code == 0);
  CHECK(run({"mcat", "corpus/cp3.cdga", "--max-m", "1"}).code == 2);
  // a free dual needs no extra resolution depth
  CHECK(run({"mcat", "corpus/s2.cdga", "--depth", "1"}).code == 0);
  Run missing = run({"mcat", "no/such/model.cdga"});
  CHECK(missing.code == 1);
  CHECK_THAT(missing.err, Catch::Matchers::ContainsSubstring("cannot read"));
  CHECK(run({"mtc", "corpus/s2.cdga", "--n", "1"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"additivity", "corpus/s2.cdga", "corpus/s3.cdga", "--invariant", "lusternik"}).code == 1);
  CHECK(run({"msecat", "corpus/s2_mu2.cdga", "--model", "nope"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("parse errors carry file, line and column") {
  std::filesystem::path p = std::filesystem::temp_directory_path() / "rsecat_bad_model.cdga";
  {
    std::ofstream o(p);
    o << "algebra A\ngenerator x degree 2\nd x = y\n";
  }
  Run r = run({"mcat", p.string()});
  CHECK(r.code == 1);
  CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring(p.string() + ":3:7:"));
  std::filesystem::remove(p);
}

TEST_CASE("window override changes the certified degree") {
  Run r = run({"mcat", "corpus/s2_free.cdga", "--window", "-12", "12"});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("status = window-certified to degree 12"));
  CHECK(run({"mcat", "corpus/s2_free.cdga", "--window", "1", "12"}).code == 1);
}

TEST_CASE("print output reparses to the same document") {
  for (const auto& f : corpus_files()) {
    INFO(f.name);
    Run r = run({"print", std::string(f.name)});
    REQUIRE(r.code == 0);
    CHECK(parse_model(r.out) == parse_model(std::string(f.text)));
  }
}
