#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pdm/cli.hpp"

using nlohmann::json;
namespace cli = pdm::cli;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Result r = run(args);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/pdm_test_" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(cli::format_number(1.5) == "1.5");
  CHECK(cli::format_number(6.0) == "6");
  CHECK(cli::format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(cli::format_number(1e-20) == "1e-20");
  CHECK(cli::format_number(INFINITY) == "inf");
  CHECK(cli::format_number(-INFINITY) == "-inf");
  CHECK(cli::format_number(NAN) == "nan");
  CHECK(cli::format_cell(cli::Cell{}) == "");
  CHECK(cli::format_cell(cli::Cell{true}) == "true");
  CHECK(cli::format_cell(cli::Cell{7LL}) == "7");
}

TEST_CASE("sweep and assignment parsing") {
  const cli::SweepSpec a = cli::parse_sweep("alpha=0.1,0.2,0.5");
  CHECK(a.name == "alpha");
  CHECK(a.values == std::vector<double>{0.1, 0.2, 0.5});
  const cli::SweepSpec b = cli::parse_sweep("alpha=0:1:5");
  REQUIRE(b.values.size() == 5);
  CHECK(b.values.front() == 0.0);
  CHECK(b.values.back() == 1.0);
  CHECK(cli::parse_sweep("alpha=0.3:0.7:1").values == std::vector<double>{0.3});
  CHECK_THROWS(cli::parse_sweep("alpha"));
  CHECK_THROWS(cli::parse_sweep("alpha=0:1:0"));
  CHECK(cli::parse_assignment("e2=4") == std::pair<std::string, double>{"e2", 4.0});
  CHECK_THROWS(cli::parse_assignment("e2=x"));
}

TEST_CASE("list") {
  const json j = run_json({"list"});
  REQUIRE(j["rows"].size() == 13);
  int active = 0;
  for (const json& row : j["rows"]) active += row["active"].get<bool>();
  CHECK(active == 10);
  CHECK(j["rows"][10]["exclusion"] == "no_positive_f");
  CHECK(j["rows"][0]["exclusion"].is_null());

  const Result plain = run({"list", "--format", "plain"});
  CHECK(plain.code == 0);
  CHECK(plain.out.find("no_bound_states") != std::string::npos);
  CHECK(run({"list", "--format", "xml"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("spectrum") {
  const Result box = run({"spectrum", "--model", "box", "--levels", "3"});
  CHECK(box.code == 0);
  CHECK(data_lines(box.out) == std::vector<std::string>{"n,E", "0,1.5", "1,6", "2,13.5"});
  CHECK(box.out.find("# count=inf") != std::string::npos);

  const json c = run_json({"spectrum", "--model", "coulomb", "--levels", "10"});
  CHECK(c["rows"].size() == 3);
  CHECK(c["meta"]["count"] == 3);

  const Result one = run({"spectrum", "--model", "box", "--n", "2"});
  CHECK(data_lines(one.out) == std::vector<std::string>{"n,E", "2,13.5"});
}

TEST_CASE("error exit codes") {
  const Result window = run({"spectrum", "--model", "shifted_osc", "--param", "alpha=0.05", "--param", "beta=0.3"});
  CHECK(window.code == 3);
  CHECK(window.err.find("α > β² ≥ 0") != std::string::npos);
  CHECK(run({"spectrum", "--model", "coulomb", "--n", "3"}).code == 3);
  CHECK(run({"spectrum", "--model", "nope"}).code == 2);
  CHECK(run({"spectrum", "--model", "scarf2"}).code == 2);
  CHECK(run({"spectrum", "--model", "box", "--param", "gamma=1"}).code == 2);
  CHECK(run({"spectrum", "--model", "box", "--param", "alpha"}).code == 2);
  CHECK(run({"spectrum"}).code == 2);
  CHECK(run({"spectrum", "--model", "box", "--levels", "0"}).code == 2);
}

TEST_CASE("wavefunction") {
  const json box = run_json({"wavefunction", "--model", "box", "--n", "1", "--grid", "101"});
  CHECK(box["meta"]["hermiticity_ok"] == true);
  CHECK(box["meta"]["node_count"] == 1);
  int changes = 0;
  double previous = 0.0;
  for (const json& row : box["rows"]) {
    const double v = row["psi"].get<double>();
    if (v != 0.0) {
      if (previous != 0.0 && (v > 0) != (previous > 0)) ++changes;
      previous = v;
    }
  }
  CHECK(changes == 1);

  const json hyp = run_json({"wavefunction", "--model", "hyperbolic_pt", "--n", "0", "--grid", "21"});
  CHECK(hyp["meta"]["hermiticity_ok"] == false);
  CHECK(hyp["meta"]["admitted"] == false);
}

TEST_CASE("verify") {
  CHECK(run({"verify", "--model", "box"}).code == 0);
  CHECK(run({"verify", "--model", "trig_pt", "--levels", "3"}).code == 0);
  const Result bad = run({"verify", "--model", "box", "--corrupt-spectrum"});
  CHECK(bad.code == 4);
  CHECK(bad.out.find("# pass=false") != std::string::npos);
}

TEST_CASE("sweep") {
  const json j = run_json({"sweep", "--model", "coulomb", "--sweep", "alpha=0.05,0.1,0.2,0.5"});
  std::vector<long long> counts;
  for (const json& row : j["rows"]) counts.push_back(row["count"].get<long long>());
  CHECK(counts == std::vector<long long>{4, 3, 2, 1});
  CHECK(j["rows"][3]["E1"].is_null());

  const json e = run_json({"sweep", "--model", "eckart", "--param", "A=1.5", "--param", "B=4", "--sweep",
                           "alpha=-2,-1"});
  CHECK(e["rows"][0]["count"] == "inf");

  const json one = run_json({"sweep", "--model", "box", "--sweep", "alpha=0.5", "--levels", "3"});
  const json spec = run_json({"spectrum", "--model", "box", "--param", "alpha=0.5", "--levels", "3"});
  REQUIRE(one["rows"].size() == 1);
  for (int n = 0; n < 3; ++n)
    CHECK(one["rows"][0]["E" + std::to_string(n)] == spec["rows"][n]["E"]);
  CHECK(run({"sweep", "--model", "box"}).code == 2);
  CHECK(run({"sweep", "--model", "box", "--sweep", "delta=1,2"}).code == 2);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"verify", "--model", "coulomb", "--param", "e2=4", "--param", "l=1",
                                      "--param", "alpha=0.2"};
  const Result a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("config files") {
  const std::string cfg = temp_file("cfg", "# defaults\nmodel = box\nparam.alpha = 0.5\nlevels = 2\n");
  const Result r = run({"spectrum", "--config", cfg});
  CHECK(r.code == 0);
  CHECK(data_lines(r.out) == std::vector<std::string>{"n,E", "0,1.5", "1,6"});

  const Result flags = run({"spectrum", "--config", cfg, "--param", "alpha=0", "--levels", "1"});
  CHECK(data_lines(flags.out) == std::vector<std::string>{"n,E", "0,1"});

  CHECK(run({"spectrum", "--config", temp_file("bad", "colour = blue\n")}).code == 2);
  CHECK(run({"spectrum", "--config", temp_file("noeq", "model box\n")}).code == 2);
  CHECK(run({"spectrum", "--config", "/nonexistent/pdm.cfg"}).code == 2);
}

TEST_CASE("output file") {
  const std::string path = "/tmp/pdm_test_out.csv";
  std::remove(path.c_str());
  const Result r = run({"spectrum", "--model", "box", "--levels", "2", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(data_lines(content.str()) == std::vector<std::string>{"n,E", "0,1.5", "1,6"});
}
