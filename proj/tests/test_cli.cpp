#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_app.hpp"
#include "test_util.hpp"

using namespace bsym;
namespace fs = std::filesystem;

namespace {

struct run_result {
  int code = 0;
  std::string out;
  std::string err;
};

run_result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

// reports embed wall-clock time; strip those lines before comparing runs
std::string strip_times(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("time: ", 0) == 0) continue;
    if (line.find("\"time_seconds\"") != std::string::npos) continue;
    out += line + "\n";
  }
  return out;
}

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "bsym_cli_tests" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

} // namespace

TEST_CASE("cli: analyze text report") {
  const auto r = run_cli({"analyze", test::fixture_path("ex4.tt")});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out.find("circuit ex4 (tt): 4 inputs, 1 output") != std::string::npos);
  CHECK(r.out.find("circuit pairs: M{x1,x4} NE{x2,x3}") != std::string::npos);
  CHECK(r.out.find("summary: (2,2)") != std::string::npos);
  CHECK(r.out.find("totally symmetric: no") != std::string::npos);
}

TEST_CASE("cli: analyze json report") {
  const auto r = run_cli({"analyze", test::fixture_path("ex5.tt"), "--output", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["circuit"] == "ex5");
  REQUIRE(j["outputs"].size() == 1);
  const auto& pairs = j["outputs"][0]["pairs"];
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0]["i"] == 1);
  CHECK(pairs[0]["j"] == 2);
  CHECK(pairs[0]["kind"] == "E");
  CHECK(j["summary"][0]["size"] == 2);
  CHECK(j["summary"][0]["count"] == 1);
  CHECK(j["total_symmetry"] == "no");
}

TEST_CASE("cli: analyze blif and csv output") {
  const auto r = run_cli({"analyze", test::fixture_path("xor2.blif")});
  CHECK(r.code == 0);
  CHECK(r.out.find("circuit xor2 (blif): 2 inputs, 1 output") != std::string::npos);
  CHECK(r.out.find("circuit groups: M{a,b}") != std::string::npos);
  CHECK(r.out.find("totally symmetric: yes-NE") != std::string::npos);

  const auto csv = run_cli({"analyze", test::fixture_path("ex7.tt"), "--output", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("name,inputs,outputs,summary,time_seconds\n", 0) == 0);
  CHECK(csv.out.find("\"ex7\",3,1,\"(3,1)\",") != std::string::npos);
}

TEST_CASE("cli: analyze failure modes") {
  const auto broken = run_cli({"analyze", test::fixture_path("broken.pla")});
  CHECK(broken.code == 1);
  CHECK(broken.err.rfind("error: ", 0) == 0);
  CHECK(broken.out.empty());

  const auto toobig = run_cli({"analyze", test::fixture_path("ex4.tt"), "--max-vars", "3"});
  CHECK(toobig.code == 2);
  CHECK(toobig.err.find("--max-vars") != std::string::npos);

  const auto missing = run_cli({"analyze", "no_such_file.tt"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("cannot read") != std::string::npos);

  const auto misformat = run_cli({"analyze", test::fixture_path("ex5.tt"), "--format", "pla"});
  CHECK(misformat.code == 1);
}

TEST_CASE("cli: runs are deterministic and filter-invariant") {
  const auto a = run_cli({"analyze", test::fixture_path("ex4.tt")});
  const auto b = run_cli({"analyze", test::fixture_path("ex4.tt")});
  CHECK(strip_times(a.out) == strip_times(b.out));

  const auto nf = run_cli({"analyze", test::fixture_path("ex4.tt"), "--no-filter"});
  CHECK(nf.code == 0);
  CHECK(strip_times(nf.out) == strip_times(a.out));

  const auto seeded = run_cli({"analyze", test::fixture_path("ex4.tt"), "--seed", "42"});
  CHECK(strip_times(seeded.out) == strip_times(a.out));

  const auto j1 = run_cli({"analyze", test::fixture_path("ex5.tt"), "--output", "json"});
  const auto j2 = run_cli({"analyze", test::fixture_path("ex5.tt"), "--output", "json"});
  CHECK(strip_times(j1.out) == strip_times(j2.out));
}

TEST_CASE("cli: vacuous results are opt-in") {
  const auto dflt = run_cli({"analyze", test::fixture_path("const0.tt")});
  CHECK(dflt.code == 0);
  CHECK(dflt.out.find("circuit pairs: (none)") != std::string::npos);
  CHECK(dflt.out.find("circuit groups: (none)") != std::string::npos);
  CHECK(dflt.out.find("summary: (none)") != std::string::npos);

  const auto all = run_cli({"analyze", test::fixture_path("const0.tt"), "--include-vacuous"});
  CHECK(all.out.find("circuit pairs: M{x1,x2}*") != std::string::npos);
  CHECK(all.out.find("circuit groups: M{x1,x2}*") != std::string::npos);
  CHECK(all.out.find("summary: (2,1)") != std::string::npos);
}

TEST_CASE("cli: entropy tables") {
  const auto r = run_cli({"entropy", test::fixture_path("ex8.pla")});
  CHECK(r.code == 0);
  CHECK(r.out.find("H(f) = 0.95\n") != std::string::npos);
  CHECK(r.out.find("H(f|x1=0) = 0.81  H(f|x1=1) = 0.00  H(f|x1) = 0.41") !=
        std::string::npos);
  CHECK(r.out.find("H(f|x2=0) = 0.81  H(f|x2=1) = 1.00  H(f|x2) = 0.91") !=
        std::string::npos);
  CHECK(r.out.find("H(f|x3=0) = 0.81  H(f|x3=1) = 1.00  H(f|x3) = 0.91") !=
        std::string::npos);

  const auto z = run_cli({"entropy", test::fixture_path("const0.tt")});
  CHECK(z.out.find("H(f) = 0.00\n") != std::string::npos);
  CHECK(z.out.find("H(f|x1=0) = 0.00  H(f|x1=1) = 0.00  H(f|x1) = 0.00") !=
        std::string::npos);

  const auto csv = run_cli({"entropy", test::fixture_path("ex8.pla"), "--output", "csv"});
  CHECK(csv.out.rfind("output,var,count0,count1,H0,H1,Hcond\n", 0) == 0);
  CHECK(csv.out.find("f,x1,1,4,0.81,0.00,0.41\n") != std::string::npos);
  CHECK(csv.out.find("f,x2,3,2,0.81,1.00,0.91\n") != std::string::npos);

  const auto j = run_cli({"entropy", test::fixture_path("ex4.tt"), "--output", "json"});
  const auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["outputs"][0]["ones"] == "6");
  CHECK(parsed["outputs"][0]["profile"][0]["count0"] == "3");
  CHECK(parsed["outputs"][0]["profile"][1]["count1"] == "2");
}

TEST_CASE("cli: entropy over a conditioning set") {
  const auto r = run_cli({"entropy", test::fixture_path("ex8.pla"), "--set", "x1, x2"});
  CHECK(r.code == 0);
  CHECK(r.out == "H(f | x1,x2) = 0.25\n");

  const auto single = run_cli({"entropy", test::fixture_path("ex8.pla"), "--set", "x1"});
  CHECK(single.out == "H(f | x1) = 0.41\n");

  const auto j = run_cli(
      {"entropy", test::fixture_path("ex8.pla"), "--set", "x1,x2", "--output", "json"});
  const auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["outputs"][0]["cond_entropy"] == 0.25);
  CHECK(parsed["outputs"][0]["set"] == "x1,x2");

  const auto bad = run_cli({"entropy", test::fixture_path("ex8.pla"), "--set", "x9"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("unknown variable") != std::string::npos);
}

TEST_CASE("cli: bench over a directory") {
  const auto r = run_cli({"bench", std::string(BSYM_FIXTURE_DIR) + "/bench"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "name,inputs,outputs,summary,time_seconds");
  std::getline(lines, line);
  CHECK(line.rfind("\"ex4\",4,1,\"(2,2)\",", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("\"ex5\",3,1,\"(2,1)\",", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("\"ex7\",3,1,\"(3,1)\",", 0) == 0);
  CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("cli: bench skips unparsable files and flags empty directories") {
  const auto dir = fresh_dir("mixed");
  write_file(dir / "good.tt", "0110\n");
  write_file(dir / "bad.pla", ".i 2\n.o 1\n111 1\n.e\n");
  const auto mixed = run_cli({"bench", dir.string()});
  CHECK(mixed.code == 0);
  CHECK(mixed.err.rfind("skip bad.pla: ", 0) == 0);
  CHECK(mixed.out.find("\"good\",2,1,") != std::string::npos);
  CHECK(mixed.out.find("bad") == std::string::npos);

  const auto empty = fresh_dir("empty");
  const auto none = run_cli({"bench", empty.string()});
  CHECK(none.code == 1);
  CHECK(none.err.find("no parsable circuit files") != std::string::npos);

  const auto notdir = run_cli({"bench", test::fixture_path("ex4.tt")});
  CHECK(notdir.code == 1);
  CHECK(notdir.err.find("not a directory") != std::string::npos);

  fs::remove_all(fs::temp_directory_path() / "bsym_cli_tests");
}

TEST_CASE("cli: multi-output per-output reporting") {
  const auto dir = fresh_dir("multi");
  write_file(dir / "pair.pla", ".i 2\n.o 2\n.ilb a b\n.ob s c\n1- 10\n-1 01\n.e\n");
  const auto csv = run_cli(
      {"analyze", (dir / "pair.pla").string(), "--output", "csv", "--per-output"});
  CHECK(csv.code == 0);
  CHECK(csv.out.find("\"pair\",2,2,") != std::string::npos);
  CHECK(csv.out.find("\"pair:s\",2,1,") != std::string::npos);
  CHECK(csv.out.find("\"pair:c\",2,1,") != std::string::npos);

  const auto text = run_cli({"analyze", (dir / "pair.pla").string(), "--per-output"});
  CHECK(text.out.find("output s:") != std::string::npos);
  CHECK(text.out.find("output c:") != std::string::npos);
  fs::remove_all(fs::temp_directory_path() / "bsym_cli_tests");
}

TEST_CASE("cli: PLA warnings go to stderr") {
  const auto dir = fresh_dir("warn");
  write_file(dir / "dc.pla", ".i 1\n.o 2\n1 1-\n.e\n");
  const auto r = run_cli({"analyze", (dir / "dc.pla").string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning: dc:") != std::string::npos);
  CHECK(r.err.find("don't-care") != std::string::npos);
  fs::remove_all(fs::temp_directory_path() / "bsym_cli_tests");
}

TEST_CASE("cli: argument plumbing") {
  const auto ver = run_cli({"--version"});
  CHECK(ver.code == 0);
  CHECK(ver.out == "0.1.0\n");

  CHECK(run_cli({}).code != 0);                        // subcommand required
  CHECK(run_cli({"analyze"}).code != 0);               // input required
  CHECK(run_cli({"analyze", "x", "--nope"}).code != 0);
  CHECK(run_cli({"frobnicate"}).code != 0);
  const auto badfmt =
      run_cli({"analyze", test::fixture_path("ex4.tt"), "--format", "vhdl"});
  CHECK(badfmt.code != 0);

  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("analyze") != std::string::npos);
  CHECK(help.out.find("entropy") != std::string::npos);
  CHECK(help.out.find("bench") != std::string::npos);
}
