#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <json.hpp>

#include "ringgyro/errors.hpp"
#include "ringgyro/experiments.hpp"

using namespace ringgyro;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ringgyro_test_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentConfig small_quasiprob() {
  auto c = ExperimentConfig::defaults(Experiment::quasiprob);
  c.master_seed = 11;
  c.two_mode_traj = 200;
  c.chi_t_list = {-0.03};
  return c;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("quasiprob reruns are byte identical") {
    const auto c = small_quasiprob();
    const auto a = scratch("qa"), b = scratch("qb");
    const auto ra = run_experiment(c, a);
    const auto rb = run_experiment(c, b);
    REQUIRE(ra.outputs.size() == rb.outputs.size());
    REQUIRE(ra.outputs.size() >= 3);
    for (std::size_t i = 0; i < ra.outputs.size(); ++i) {
      if (ra.outputs[i].filename() == "manifest.json") continue;
      CHECK(ra.outputs[i].filename() == rb.outputs[i].filename());
      CHECK(slurp(ra.outputs[i]) == slurp(rb.outputs[i]));
    }
    CHECK(fs::exists(a / "moments.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
  }

  TEST_CASE("manifest records config, seeds and outputs") {
    const auto c = small_quasiprob();
    const auto dir = scratch("manifest");
    run_experiment(c, dir);
    const auto j = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(j.at("experiment") == "quasiprob");
    CHECK(j.at("version") == version());
    CHECK(j.at("config").is_object());
    CHECK(j.at("config").at("master_seed") == "11");
    CHECK(j.at("seeds").is_array());
    CHECK_FALSE(j.at("seeds").empty());
    CHECK(j.at("outputs").size() >= 2);
    CHECK(j.contains("trajectory_seed_rule"));
    fs::remove_all(dir);
  }

  TEST_CASE("invalid configs are rejected before any output") {
    auto c = small_quasiprob();
    c.master_seed.reset();
    const auto dir = scratch("invalid");
    CHECK_THROWS_AS(run_experiment(c, dir), ConfigError);
    CHECK_FALSE(fs::exists(dir / "manifest.json"));
    fs::remove_all(dir);
  }

  TEST_CASE("output directory precedence") {
    ExperimentConfig c;
    c.out_dir = "from_config";
    ::unsetenv("RINGGYRO_OUT_DIR");
    CHECK(resolve_out_dir("", ExperimentConfig{}) == fs::path("out"));
    CHECK(resolve_out_dir("", c) == fs::path("from_config"));
    ::setenv("RINGGYRO_OUT_DIR", "from_env", 1);
    CHECK(resolve_out_dir("", c) == fs::path("from_env"));
    CHECK(resolve_out_dir("from_cli", c) == fs::path("from_cli"));
    ::unsetenv("RINGGYRO_OUT_DIR");
  }

  TEST_CASE("two-mode curves start at the benchmark") {
    auto c = ExperimentConfig::defaults(Experiment::two_mode_curves);
    c.master_seed = 2;
    c.chi_t_list = {0.0, -0.004};
    c.two_mode_traj = 100;
    c.theta_grid_points = 6;
    const auto dir = scratch("curves");
    run_experiment(c, dir);
    const std::string text = slurp(dir / "two_mode_curves.csv");
    CHECK(text.find("chi_t") != std::string::npos);
    CHECK(text.find("0.00079577471545947") != std::string::npos);
    fs::remove_all(dir);
  }
}
