#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = stella::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> r;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) r.push_back(l);
  return r;
}

std::vector<double> csv_numbers(const std::string& line) {
  std::vector<double> r;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) r.push_back(std::stod(cell));
  return r;
}

std::size_t count_prefix(const std::string& text, const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& l : lines(text)) n += l.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST_CASE("classify exit codes and JSON") {
  const auto bell = invoke({"classify", "--alpha-frac", "1", "--weights", "1,0,0,0", "--json"});
  CHECK(bell.code == 1);
  const auto j = nlohmann::json::parse(bell.out);
  CHECK(j["label"] == "Entangled");
  CHECK(std::abs(j["min_eig"].get<double>() + 0.5) <= 1e-12);
  CHECK(j["f1"].get<double>() == doctest::Approx(0.25));
  CHECK(j["f2"].get<double>() == doctest::Approx(-0.25));
  CHECK(j["point"]["x"].get<double>() == 0.5);
  CHECK(j["fixed_point"] == false);
  for (const char* key : {"label", "f1", "f2", "det", "min_eig", "point", "fixed_point"}) CHECK(j.contains(key));

  CHECK(invoke({"classify", "--alpha", "0", "--weights", "1,0,0,0"}).code == 0);
  CHECK(invoke({"classify", "--alpha-frac", "1", "--weights", "0.25,0.25,0.25,0.25"}).code == 0);
  CHECK(invoke({"classify", "--alpha-frac", "1", "--weights", "0.5,0,0.5,0"}).code == 2);

  const auto barycenter = invoke({"classify", "--alpha", "0.4", "--weights", "0.25,0.25,0.25,0.25", "--json"});
  CHECK(nlohmann::json::parse(barycenter.out)["fixed_point"] == true);

  const auto text = invoke({"classify", "--alpha-frac", "1", "--weights", "1,0,0,0"});
  CHECK(text.out.rfind("label        Entangled\n", 0) == 0);
}

TEST_CASE("usage errors exit 64") {
  CHECK(invoke({}).code == 64);
  CHECK(invoke({"bogus"}).code == 64);
  CHECK(invoke({"classify", "--alpha", "0.9", "--weights", "1,0,0,0"}).code == 64);
  CHECK(invoke({"classify", "--alpha", "-0.1", "--weights", "1,0,0,0"}).code == 64);
  CHECK(invoke({"classify", "--weights", "1,0,0,0"}).code == 64);
  CHECK(invoke({"classify", "--alpha", "0.1", "--alpha-frac", "0.2", "--weights", "1,0,0,0"}).code == 64);
  CHECK(invoke({"classify", "--alpha", "0.1", "--weights", "1,0,0"}).code == 64);
  CHECK(invoke({"classify", "--alpha", "0.1", "--weights", "0.6,0.6,0,0"}).code == 64);
  CHECK(invoke({"classify", "--alpha", "0.1", "--weights", "1.1,-0.1,0,0"}).code == 64);
  CHECK(invoke({"classify", "--alpha", "0.1", "--weights", "1,0,0,0", "--eps", "0"}).code == 64);
  CHECK(invoke({"volume", "--alpha", "0.1", "--samples", "0"}).code == 64);
  CHECK(invoke({"mesh", "--what", "cube"}).code == 64);
  CHECK(invoke({"mesh", "--what", "coneA"}).code == 64);
  CHECK(invoke({"grid", "--alpha", "0.1", "--resolution", "1"}).code == 64);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("SEP_EPS sets the default boundary band") {
  // Barycenter at pi/4 has f1 = f2 = 1/16.
  const std::vector<std::string> args = {"classify", "--alpha-frac", "1", "--weights", "0.25,0.25,0.25,0.25"};
  ::setenv("SEP_EPS", "0.1", 1);
  CHECK(invoke(args).code == 2);
  auto explicit_eps = args;
  explicit_eps.insert(explicit_eps.end(), {"--eps", "1e-9"});
  CHECK(invoke(explicit_eps).code == 0);
  ::setenv("SEP_EPS", "garbage", 1);
  CHECK(invoke(args).code == 64);
  ::unsetenv("SEP_EPS");
  CHECK(invoke(args).code == 0);
}

TEST_CASE("volume and grid are reproducible") {
  const std::vector<std::string> vol = {"volume", "--alpha-frac", "1", "--samples", "20000", "--seed", "3", "--json"};
  const auto a = invoke(vol);
  const auto b = invoke(vol);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto threaded = vol;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(invoke(threaded).out == a.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["samples"] == 20000);
  CHECK(j["seed"] == 3);
  CHECK(std::abs(j["fraction"].get<double>() - 0.5) < 5 * j["stderr"].get<double>());

  const std::vector<std::string> grid = {"grid", "--alpha", "0.5", "--resolution", "8"};
  const auto g1 = invoke(grid);
  REQUIRE(g1.code == 0);
  CHECK(g1.out == invoke(grid).out);
  CHECK(lines(g1.out).size() == 1 + 165);
  CHECK(lines(g1.out).front() == "x,y,z,w1,w2,w3,w4,label,f1,f2,min_eig");
}

TEST_CASE("sweep") {
  const auto r = invoke({"sweep", "--alpha-steps", "5", "--samples", "20000", "--seed", "1"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "alpha,fraction,stderr,entropy");
  const auto first = csv_numbers(rows[1]);
  const auto last = csv_numbers(rows[5]);
  CHECK(first[0] == 0.0);
  CHECK(first[1] == 1.0);
  CHECK(first[3] == 0.0);
  CHECK(last[0] == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
  CHECK(std::abs(last[3] - std::numbers::ln2) <= 1e-12);
  double previous = 2.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto v = csv_numbers(rows[i]);
    CHECK(v[1] <= previous + 3 * v[2]);
    previous = v[1];
  }

  const auto in_bits = invoke({"sweep", "--alpha-steps", "2", "--samples", "100", "--bits"});
  CHECK(std::abs(csv_numbers(lines(in_bits.out)[2])[3] - 1.0) <= 1e-12);
}

TEST_CASE("mesh output") {
  const auto stella = invoke({"mesh", "--what", "stella"});
  REQUIRE(stella.code == 0);
  CHECK(count_prefix(stella.out, "v ") == 8);
  CHECK(count_prefix(stella.out, "f ") == 8);

  const auto oct = invoke({"mesh", "--what", "octahedron"});
  CHECK(count_prefix(oct.out, "v ") == 6);
  CHECK(count_prefix(oct.out, "f ") == 8);

  const auto cone = invoke({"mesh", "--what", "coneA", "--alpha-frac", "0.5", "--resolution", "64"});
  REQUIRE(cone.code == 0);
  CHECK(count_prefix(cone.out, "v ") == 64 * 8 + 1);
  CHECK(cone.err.empty());

  const auto flat = invoke({"mesh", "--what", "coneB", "--alpha", "0"});
  CHECK(flat.code == 0);
  CHECK(flat.err.find("degenerate") != std::string::npos);
}

TEST_CASE("file output and I/O failures") {
  const auto dir = std::filesystem::temp_directory_path() / "stella_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "tetra.obj").string();
  CHECK(invoke({"mesh", "--what", "tetra", "--out", path}).code == 0);
  std::ifstream in(path);
  std::stringstream contents;
  contents << in.rdbuf();
  CHECK(contents.str() == invoke({"mesh", "--what", "tetra"}).out);
  std::filesystem::remove_all(dir);

  const std::string unwritable = "/nonexistent-dir/out.csv";
  CHECK(invoke({"grid", "--alpha", "0.1", "--resolution", "2", "--out", unwritable}).code == 74);
  CHECK(invoke({"mesh", "--what", "tetra", "--out", unwritable}).code == 74);
  CHECK(invoke({"sweep", "--samples", "10", "--out", unwritable}).code == 74);
}
