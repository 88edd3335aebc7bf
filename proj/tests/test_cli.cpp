#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "lmrnach/cli.hpp"

using namespace lmrnach;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("lmrnach_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t count_csv(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ".csv";
  return n;
}

}  // namespace

TEST_CASE("run writes one CSV") {
  TempDir tmp("run");
  const auto r = invoke({"run", "--scenario", "static", "--dim", "200", "--seed", "1", "--out", tmp.path.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.err.empty());
  CHECK(r.out.find("scenario=static dim=200 seed=1") != std::string::npos);
  const auto csv = tmp.path / "static_200_1.csv";
  REQUIRE(fs::exists(csv));
  CHECK(slurp(csv).rfind(kRoundCsvHeader, 0) == 0);
}

TEST_CASE("repeated runs are byte-identical") {
  TempDir a("det_a"), b("det_b");
  REQUIRE(invoke({"run", "--scenario", "pms2", "--dim", "450", "--seed", "7", "--out", a.path.string()}).code == 0);
  REQUIRE(invoke({"run", "--scenario", "pms2", "--dim", "450", "--seed", "7", "--out", b.path.string()}).code == 0);
  CHECK(slurp(a.path / "pms2_450_7.csv") == slurp(b.path / "pms2_450_7.csv"));
}

TEST_CASE("bad arguments exit nonzero with a one-line diagnostic") {
  TempDir tmp("bad");
  const auto unknown = invoke({"run", "--scenario", "ms9", "--dim", "200", "--out", tmp.path.string()});
  CHECK(unknown.code != 0);
  CHECK(unknown.err.find("ms9") != std::string::npos);
  CHECK(unknown.err.rfind("error: ", 0) == 0);
  CHECK(std::count(unknown.err.begin(), unknown.err.end(), '\n') == 1);

  CHECK(invoke({"run", "--scenario", "ms1", "--dim", "0", "--out", tmp.path.string()}).code == cli::kExitUsage);
  CHECK(invoke({"run", "--scenario", "ms1", "--dim", "-5", "--out", tmp.path.string()}).code == cli::kExitUsage);
  CHECK(invoke({"run", "--scenario", "ms1", "--out", tmp.path.string()}).code == cli::kExitUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"sweep", "--dims", "200,abc", "--out", tmp.path.string()}).code == cli::kExitUsage);
  CHECK(invoke({"sweep", "--seeds", "0", "--out", tmp.path.string()}).code == cli::kExitUsage);
  CHECK(count_csv(tmp.path) == 0);
}

TEST_CASE("unwritable output directory is a runtime error") {
  TempDir tmp("unwritable");
  const auto blocker = tmp.path / "file";
  std::ofstream(blocker) << "x";
  const auto r = invoke({"run", "--scenario", "ms1", "--dim", "200", "--out", (blocker / "sub").string()});
  CHECK(r.code == cli::kExitRuntime);
  CHECK(r.err.find("file") != std::string::npos);
}

TEST_CASE("sweep writes every run and a summary") {
  TempDir tmp("sweep");
  const auto r = invoke(
      {"sweep", "--dims", "450", "--scenarios", "ms2,pms2", "--seeds", "21", "--out", tmp.path.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(count_csv(tmp.path) == 42);
  CHECK(fs::exists(tmp.path / "ms2_450_21.csv"));
  CHECK(fs::exists(tmp.path / "pms2_450_1.csv"));
  const auto doc = nlohmann::json::parse(slurp(tmp.path / "summary.json"));
  CHECK(doc.size() == 2);
  for (const char* s : {"ms2", "pms2"}) {
    const auto& cell = doc.at(s).at("450");
    CHECK(cell.at("runs") == 21);
    CHECK(cell.contains("first_dead_round"));
    CHECK(cell.contains("quarter_dead_round"));
  }
}

TEST_CASE("sweep cell count matches the matrix") {
  TempDir tmp("matrix");
  const auto r = invoke({"sweep", "--dims", "150,300", "--scenarios", "static,ms3,pms4", "--seeds", "2", "--rounds",
                         "200", "--out", tmp.path.string(), "--jobs", "2"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(count_csv(tmp.path) == 12);
  const auto doc = nlohmann::json::parse(slurp(tmp.path / "summary.json"));
  std::size_t cells = 0;
  for (const auto& [scenario, dims] : doc.items()) cells += dims.size();
  CHECK(cells == 6);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
}

TEST_CASE("flags override config, config overrides defaults") {
  TempDir tmp("config");
  const auto cfg = tmp.path / "cfg.json";
  std::ofstream(cfg) << R"({"variant": "ms3", "field": {"xm": 300, "ym": 300}, "max_rounds": 40, "rng_seed": 5})";

  const auto from_config = invoke({"run", "--config", cfg.string(), "--out", tmp.path.string()});
  REQUIRE(from_config.code == 0);
  CHECK(from_config.out.find("scenario=ms3 dim=300 seed=5 rounds=40") != std::string::npos);

  const auto flagged = invoke({"run", "--config", cfg.string(), "--scenario", "ms1", "--dim", "250", "--seed", "2",
                               "--rounds", "30", "--out", tmp.path.string()});
  REQUIRE(flagged.code == 0);
  CHECK(flagged.out.find("scenario=ms1 dim=250 seed=2 rounds=30") != std::string::npos);
  CHECK(fs::exists(tmp.path / "ms1_250_2.csv"));

  std::ofstream(tmp.path / "bad.json") << R"({"weights": {"q": 1}})";
  const auto bad = invoke({"run", "--config", (tmp.path / "bad.json").string(), "--scenario", "ms1", "--dim", "200",
                           "--out", tmp.path.string()});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("weights.q") != std::string::npos);
}

TEST_CASE("check passes") {
  const auto r = invoke({"check"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS energy_conservation pms4@450") != std::string::npos);
}
