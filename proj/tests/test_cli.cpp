#include <doctest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "regiospec/kernels.hpp"

using namespace regiospec;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "regiospec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("eval examples") {
  Run r = run({"eval", "--op", "ds", "--func", "identity", "--domain", "0,1", "--x", "0.5", "--s", "0.25"});
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>()) <= 1e-12);
  CHECK(j["op"] == "ds");
  CHECK(j.contains("errEstimate"));
  CHECK(j["inputs"]["s"] == 0.25);
  r = run({"eval", "--op", "kappa", "--domain", "0,1", "--x", "0.5", "--s", "0.5"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["value"].get<double>() == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-12));
  r = run({"eval", "--op", "ds", "--s", "0", "--x", "0.5", "--func", "identity"});
  CHECK(r.code == 0);
  CHECK(std::abs(Json::parse(r.out)["value"].get<double>()) <= 1e-12);
  r = run({"eval", "--op", "series", "--func", "poly2", "--x", "0.3", "--s", "0.1", "--j", "4"});
  CHECK(r.code == 0);
  r = run({"eval", "--op", "llog", "--func", "identity", "--x", "0.9"});
  CHECK(Json::parse(r.out)["value"].get<double>() == doctest::Approx(0.8).epsilon(1e-10));
  r = run({"eval", "--op", "dk", "--k", "2", "--func", "cospi", "--domain", "0,1,0,2", "--x", "0.3,0.4"});
  CHECK(r.code == 0);
}

TEST_CASE("eval exit codes") {
  CHECK(run({"eval", "--op", "nope", "--x", "0.5"}).code == 2);
  CHECK(run({"eval", "--op", "ds"}).code == 2);
  CHECK(run({"eval", "--op", "ds", "--func", "unknown", "--x", "0.5"}).code == 2);
  Run r = run({"eval", "--op", "ds", "--x", "1.5"});
  CHECK(r.code == 2);
  CHECK(Json::parse(r.out)["error"] == "PointOutsideDomain");
  CHECK(run({"eval", "--op", "ds", "--x", "0.5,0.5"}).code == 2);
  CHECK(run({"eval", "--op", "kappa", "--x", "0.5", "--s", "0"}).code == 2);
  CHECK(run({"eval", "--op", "series", "--func", "poly2", "--x", "0.3", "--s", "0.6"}).code == 2);
  CHECK(run({"eval", "--op", "ds", "--x", "0.5", "--domain", "1,0"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(exit_code(ErrorCode::NoConvergence) == 3);
  CHECK(exit_code(ErrorCode::NotMeanZero) == 3);
  CHECK(exit_code(ErrorCode::InsufficientGrid) == 2);
  CHECK(exit_code(ErrorCode::InvalidOrder) == 2);
}

TEST_CASE("spectrum output") {
  Run r = run({"--deterministic", "spectrum", "--cells", "8", "--s", "0.25", "--count", "9"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(std::abs(j["lambda"][0].get<double>()) <= 1e-10);
  CHECK_FALSE(j.contains("runtimeSeconds"));
  CHECK(j["mesh"]["cells"] == 8);
  CHECK(j["mesh"]["domain"]["interval"][1] == 1.0);
  const Run again = run({"--deterministic", "spectrum", "--cells", "8", "--s", "0.25", "--count", "9"});
  CHECK(again.out == r.out);
  r = run({"spectrum", "--cells", "8", "--s", "0.25", "--format", "csv"});
  CHECK(r.out.rfind("n,lambda,residual\n0,", 0) == 0);
  CHECK(run({"spectrum", "--cells", "8", "--s", "0.95"}).code == 2);
  CHECK(run({"spectrum", "--cells", "1", "--s", "0.2"}).code == 2);
  CHECK(run({"spectrum", "--cells", "8", "--s", "0.2", "--format", "xml"}).code == 2);
}

TEST_CASE("spectrum matches the checked-in oracle fixture") {
  const Json fixture = Json::parse(slurp(std::filesystem::path(REGIOSPEC_FIXTURES) / "spectrum_n8.json"));
  for (const auto& rec : fixture) {
    std::ostringstream s;
    s << rec["s"].get<double>();
    const Run r = run({"spectrum", "--cells", "8", "--s", s.str(), "--count", "9"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    for (std::size_t k = 0; k < 9; ++k)
      CHECK(std::abs(j["lambda"][k].get<double>() - rec["lambda"][k].get<double>()) <= 1e-10);
  }
}

TEST_CASE("sweep output") {
  const auto dir = std::filesystem::temp_directory_path() / "regiospec_cli_test";
  std::filesystem::create_directories(dir);
  const std::string prefix = (dir / "sw").string();
  Run r = run({"--deterministic", "sweep", "--cells", "32", "--s-grid", "0.04,0.02,0.01,0", "--n-max", "2", "--out", prefix});
  CHECK((r.code == 0 || r.code == 1));
  const Json j = Json::parse(slurp(prefix + ".json"));
  CHECK(j["derivative"].size() == 2);
  CHECK(j.contains("verdicts"));
  std::istringstream csv(slurp(prefix + ".csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "n,s,lambda,mu");
  int rows = 0;
  while (std::getline(csv, line)) {
    int n;
    double s, lam, mu;
    char c;
    std::istringstream ls(line);
    ls >> n >> c >> s >> c >> lam >> c >> mu;
    if (s > 0.0) CHECK(mu == doctest::Approx(c_frac(1, s) * lam).epsilon(1e-14));
    ++rows;
  }
  CHECK(rows == 3 * 4);
  const std::string first = slurp(prefix + ".json");
  run({"--deterministic", "sweep", "--cells", "32", "--s-grid", "0.04,0.02,0.01,0", "--n-max", "2", "--out", prefix});
  CHECK(slurp(prefix + ".json") == first);
  r = run({"sweep", "--cells", "16", "--s-grid", "0"});
  CHECK(r.code == 2);
  const Json z = Json::parse(r.out);
  CHECK(z["error"] == "InsufficientGrid");
  CHECK(z["derivative"][0]["error"] == "InsufficientGrid");
  CHECK(run({"sweep", "--cells", "16", "--s-grid", "0.2,0.1"}).code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify command") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto log = std::filesystem::temp_directory_path() / "regiospec_verify_log.json";
  Run r = run({"verify", "--suite", "kernels", "--log", log.string()});
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 5.0);
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS  suite kernels") != std::string::npos);
  const Json j = Json::parse(slurp(log));
  CHECK(j[0]["suite"] == "kernels");
  CHECK(j[0]["pass"] == true);
  std::filesystem::remove(log);
  r = run({"verify", "--suite", "nope"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
}
