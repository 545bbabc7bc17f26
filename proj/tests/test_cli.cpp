#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "freewave/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "freewave");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = freewave::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// "key = value" lines
std::map<std::string, std::string> fields(const std::string& text) {
  std::map<std::string, std::string> m;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) m[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return m;
}

double num(const std::map<std::string, std::string>& m, const std::string& key) {
  REQUIRE(m.count(key) == 1);
  return std::stod(m.at(key));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("freewave_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("speed of the logistic reaction") {
  const auto r = cli({"speed", "--reaction", "logistic"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(num(fields(r.out), "c_star_f") - 2.0) < 1e-4);
  CHECK(r.err.empty());
}

TEST_CASE("symmetric two-species wave has zero speed") {
  const auto r = cli({"two", "--f", "logistic", "--g", "logistic", "--alpha", "1", "--beta", "1"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(num(fields(r.out), "c")) < 1e-9);
}

TEST_CASE("symmetric three-species wave prints beta_l = tilde beta_l") {
  const auto r = cli({"three", "--f1", "cubic:0.25", "--f2", "logistic", "--f3", "cubic:0.25",
                      "--alpha", "1", "--gamma", "1", "--sigma", "0.5", "--c", "0"});
  REQUIRE(r.code == 0);
  const auto m = fields(r.out);
  CHECK(std::abs(num(m, "beta_l") - num(m, "tilde_beta_l")) < 1e-6);
  CHECK(std::abs(num(m, "beta_l") - 0.7071068) < 1e-6);
  CHECK(m.at("case") == "Case1/CaseI");
}

TEST_CASE("exit codes and error lines") {
  auto r = cli({"speed", "--f", "logistic", "--nonsense"});
  CHECK(r.code == 2);
  r = cli({});
  CHECK(r.code == 2);
  r = cli({"speed", "--f", "cubic:0.7"});
  CHECK(r.code == 3);
  r = cli({"compact", "--f", "logistic", "--sigma", "0.5", "--c", "3"});
  CHECK(r.code == 4);
  // one line of JSON on stderr
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  const auto j = nlohmann::json::parse(r.err);
  CHECK(j.at("exit_code") == 4);
  CHECK(j.contains("message"));
  r = cli({"three", "--f1", "logistic", "--f2", "logistic", "--f3", "logistic", "--alpha", "1",
           "--gamma", "1", "--sigma", "0.5", "--c", "1.9"});
  CHECK(r.code == 4);
  r = cli({"dispersion", "--kind", "sideways", "--f", "logistic", "--g", "logistic"});
  CHECK(r.code == 3);
}

TEST_CASE("config file, with flags taking precedence") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  const auto cfg = dir / "run.json";
  std::ofstream(cfg) << R"({"f": "logistic", "g": "logistic", "alpha": 1, "beta": 2})";
  auto r = cli({"two", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  CHECK(num(fields(r.out), "c") < 0.0);
  r = cli({"two", "--config", cfg.string(), "--beta", "0.5"});
  REQUIRE(r.code == 0);
  CHECK(num(fields(r.out), "c") > 0.0);

  std::ofstream(dir / "bad.json") << R"({"f": "logistic", "colour": 1})";
  CHECK(cli({"speed", "--config", (dir / "bad.json").string()}).code == 3);
  CHECK(cli({"speed", "--config", (dir / "missing.json").string()}).code == 3);
}

TEST_CASE("FREEWAVE_TOL") {
  ::setenv("FREEWAVE_TOL", "abc", 1);
  CHECK(cli({"speed", "--f", "logistic"}).code == 3);
  ::setenv("FREEWAVE_TOL", "1e-6", 1);
  const auto dir = scratch("tol");
  const auto r = cli({"speed", "--f", "logistic", "--out", dir.string()});
  ::unsetenv("FREEWAVE_TOL");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "speed.json"));
  CHECK(j.at("config").at("root_tol") == 1e-6);
}

TEST_CASE("CSV files carry the configuration and a header") {
  const auto dir = scratch("csv");
  auto r = cli({"two", "--f", "logistic", "--g", "cubic:0.25", "--alpha", "1", "--beta", "0.7",
                "--out", dir.string(), "--plot"});
  REQUIRE(r.code == 0);
  for (const char* name : {"two_left.csv", "two_right.csv"}) {
    std::istringstream in(slurp(dir / name));
    std::string first, second;
    std::getline(in, first);
    std::getline(in, second);
    CHECK(first.rfind("# config: ", 0) == 0);
    const auto cfg = nlohmann::json::parse(first.substr(10));
    CHECK(cfg.at("command") == "two");
    CHECK(cfg.at("beta") == 0.7);
    CHECK(second == "z,value");
  }
  CHECK(fs::exists(dir / "two.json"));

  r = cli({"dispersion", "--kind", "three", "--f1", "cubic:0.25", "--f2", "logistic", "--f3",
           "cubic:0.25", "--alpha", "1", "--gamma", "1", "--sigma", "0.5", "--grid",
           "-0.1:0.1:5", "--out", dir.string()});
  REQUIRE(r.code == 0);
  std::istringstream in(slurp(dir / "dispersion.csv"));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line == "c,beta_l,beta_r");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("identical invocations give identical bytes") {
  const auto dir = scratch("det");
  const std::vector<std::string> args = {"three", "--f1", "logistic", "--f2", "cubic:0.25",
                                         "--f3", "logistic", "--alpha", "1", "--gamma", "1",
                                         "--sigma", "0.5", "--c", "0.05", "--out", dir.string()};
  REQUIRE(cli(args).code == 0);
  std::map<std::string, std::string> first;
  for (const auto& e : fs::directory_iterator(dir)) first[e.path().filename()] = slurp(e.path());
  REQUIRE(first.count("three_middle.csv") == 1);
  REQUIRE(cli(args).code == 0);
  for (const auto& [name, bytes] : first) CHECK(slurp(dir / name) == bytes);
}
