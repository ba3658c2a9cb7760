#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sofic/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = sofic::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string list(const std::string& name) {
  const char* dir = std::getenv("SOFIC_LISTS");
  return std::string(dir ? dir : "lists") + "/" + name;
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sofic_cli_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("bf, sft and fe examples") {
  auto bf = run({"bf", list("aa_aaa_b.list")});
  CHECK(bf.code == 0);
  CHECK(bf.out == "sign=-1 torsion=[] free_rank=0 det=-1\n");

  auto sft = run({"sft", list("a_bb.list")});
  CHECK(sft.code == 1);
  CHECK(sft.out.rfind("NOT_SFT label=", 0) == 0);

  auto fe = run({"fe", list("aa_aaa_b.list"), list("full2.list")});
  CHECK(fe.code == 0);
  CHECK(fe.out == "FLOW_EQUIVALENT yes\n");
}

TEST_CASE("cover output is deterministic and exports DOT and JSON") {
  auto dot = tmp("cover.dot"), json = tmp("cover.json");
  auto a = run({"cover", list("aa_aaa_b.list"), "--dot", dot, "--json", json});
  auto b = run({"--dot", dot, "cover", list("aa_aaa_b.list"), "--json", json});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("memory=2 vertices=3 edges=5\n", 0) == 0);
  CHECK(slurp(dot).rfind("digraph cover {\n", 0) == 0);
  auto j = nlohmann::json::parse(slurp(json));
  CHECK(j["command"][0] == "--dot");
  CHECK(j["inputs"].size() == 1);
  CHECK(j["inputs"][0]["fnv1a64"].get<std::string>().size() == 16);
  CHECK(j["warnings"].empty());
  CHECK(j["results"]["memory"] == 2);
  CHECK(j["results"]["vertices"].size() == 3);
  CHECK(j["results"]["edges"].size() == 5);
  // Identical invocations give byte-identical reports.
  auto first = slurp(json);
  run({"--dot", dot, "cover", list("aa_aaa_b.list"), "--json", json});
  CHECK(slurp(json) == first);

  // Commands without a structured result report their text lines.
  run({"fe", list("aa_aaa_b.list"), list("full2.list"), "--json", json});
  auto fe = nlohmann::json::parse(slurp(json));
  CHECK(fe["inputs"].size() == 2);
  CHECK(fe["results"]["lines"][0] == "FLOW_EQUIVALENT yes");
  CHECK(fe["results"]["exit_code"] == 0);
  std::remove(dot.c_str());
  std::remove(json.c_str());
}

TEST_CASE("borders, forbidden and modular") {
  auto b = run({"borders", list("aa_aaa_b.list")});
  CHECK(b.code == 0);
  CHECK(b.out.find("universal ba\n") != std::string::npos);
  CHECK(b.out.find("generator ba b minimal\n") != std::string::npos);
  CHECK(b.out.find("generator aa aa minimal\n") != std::string::npos);
  CHECK(run({"forbidden", list("aa_aaa_b.list")}).out == "bab\n");
  CHECK(run({"modular", list("aa_aaa_b.list"), "--side", "right"}).out == "MODULAR yes\n");
  auto dot = tmp("borders.dot");
  run({"borders", list("aa_aaa_b.list"), "--dot", dot});
  auto text = slurp(dot);
  std::size_t filled = 0;
  for (std::size_t p = text.find("style=filled"); p != std::string::npos; p = text.find("style=filled", p + 1)) ++filled;
  CHECK(filled == 2);
  std::remove(dot.c_str());
}

TEST_CASE("sum surgery check") {
  auto s = run({"sum", list("aa_aaa_b.list"), list("x.list"), "--check-surgery"});
  CHECK(s.code == 0);
  CHECK(s.out == "words=4 alphabet_disjoint=yes\nSURGERY_MATCH yes\n");
  auto overlap = run({"sum", list("aa_aaa_b.list"), list("aa_aaa_b.list"), "--check-surgery"});
  CHECK(overlap.code == 1);
  CHECK(overlap.err.find("AlphabetsOverlap") != std::string::npos);
}

TEST_CASE("weights and entropy") {
  auto w = run({"bf", list("aa_aaa_b.list"), "--weights", "b=2"});
  CHECK(w.code == 0);
  auto bad = run({"bf", list("aa_aaa_b.list"), "--weights", "z=2"});
  CHECK(bad.code == 1);
  auto e = run({"entropy", list("a_ab.list")});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("entropy=0.481211825", 0) == 0);
}

TEST_CASE("family, sweep and search-det") {
  auto f = run({"family", "Diag", "--params", "n=8:4:2"});
  CHECK(f.code == 0);
  CHECK(f.out.find("pipeline sign=-1 torsion=[2,36] free_rank=0 det=-72\n") != std::string::npos);
  CHECK(f.out.find("match yes\n") != std::string::npos);

  auto tsv = tmp("sweep.tsv");
  auto s = run({"sweep", "PosDet", "--grid", "ga=4..5,a=1..3", "--params", "al=1,at=1,be=1", "--out", tsv});
  CHECK(s.code == 0);
  auto text = slurp(tsv);
  CHECK(text.rfind("ga\ta\tsign\ttorsion\tfree_rank\tdet\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 7);
  CHECK(text.find("4\t3\t0\t[]\t1\t0\n") != std::string::npos);
  std::remove(tsv.c_str());

  auto k = run({"search-det", "--", "-5"});
  CHECK(k.code == 0);
  CHECK(k.out.find("det=-5") != std::string::npos);
}

TEST_CASE("reproduce targets") {
  for (const auto& t : sofic::cli::reproduce_targets()) {
    if (t == "det-range") continue;
    auto r = run({"reproduce", t});
    CHECK_MESSAGE(r.code == 0, t);
    CHECK(r.out.find("MATCH\n") != std::string::npos);
  }
  auto d = run({"reproduce", "det-range", "--k", "-5..5"});
  CHECK(d.code == 0);
  CHECK(run({"reproduce", "unknown"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  auto missing = run({"bf", "/nonexistent/file.list"});
  CHECK(missing.code == 2);
  auto flag = run({"cover", list("aa_aaa_b.list"), "--no-such-flag"});
  CHECK(flag.code == 2);
  CHECK(flag.err.find("--no-such-flag") != std::string::npos);
  CHECK(run({"modular", list("aa_aaa_b.list"), "--side", "up"}).code == 2);
  CHECK(run({"family", "Diag", "--params", "n=2:2"}).code == 2);
}
