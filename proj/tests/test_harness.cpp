#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "stablab/harness.hpp"

using namespace stablab;
namespace fs = std::filesystem;

namespace {

class Harness : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("stablab_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  ExperimentConfig config(const std::string& name, std::map<std::string, std::string> params = {}) {
    ExperimentConfig c;
    c.experiment = name;
    c.params = std::move(params);
    c.out_dir = dir_;
    return c;
  }
  std::vector<std::string> lines(const std::string& file) const {
    std::ifstream in(dir_ / file);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
  }
  std::string slurp(const std::string& file) const {
    std::ifstream in(dir_ / file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream log_;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string c; std::getline(ss, c, ',');) out.push_back(c);
  return out;
}

}  // namespace

TEST_F(Harness, AltConvergenceTable) {
  EXPECT_EQ(run(config("alt-convergence", {{"r_from", "2"}, {"r_to", "4"}, {"r_max", "5"}}), log_), 0);
  const auto l = lines("alt_convergence.csv");
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[0][0], '#');
  EXPECT_EQ(l[1], "r,nu,at_least,distance");
  EXPECT_EQ(split(l[2])[0], "2");
}

TEST_F(Harness, VershikSingleSample) {
  auto c = config("vershik", {{"ns", "20"}, {"samples", "1"}});
  c.seed = 4;
  EXPECT_EQ(run(c, log_), 0);
  const auto l = lines("vershik_alt20.jsonl");
  ASSERT_EQ(l.size(), 1u);
  const auto j = nlohmann::json::parse(l[0]);
  EXPECT_EQ(j.at("mass"), 1.0);
  EXPECT_EQ(j.at("n_samples"), 1);
  EXPECT_TRUE(j.contains("stderr"));
}

TEST_F(Harness, SampledRowsCarrySampleCounts) {
  auto c = config("vershik", {{"ns", "3,5"}, {"samples", "2000"}});
  c.seed = 1;
  run(c, log_);
  for (const auto& f : {"vershik_alt3.jsonl", "vershik_alt5.jsonl", "vershik_az.jsonl"}) {
    for (const auto& l : lines(f)) {
      const auto j = nlohmann::json::parse(l);
      EXPECT_EQ(j.at("n_samples"), 2000);
      EXPECT_TRUE(j.contains("stderr"));
    }
  }
}

TEST_F(Harness, FullGroupIrsIdenticalLevels) {
  EXPECT_EQ(run(config("fullgroup-irs", {{"levels", "a,a"}, {"ks", "1,2"}}), log_), 0);
  const auto l = lines("fullgroup_irs.csv");
  ASSERT_EQ(l.size(), 4u);
  for (std::size_t i = 2; i < l.size(); ++i) EXPECT_EQ(split(l[i])[5], "0");
}

TEST_F(Harness, OtherExperimentsPass) {
  EXPECT_EQ(run(config("subshift-kr", {{"substitution", "thue-morse"}}), log_), 0);
  EXPECT_EQ(lines("subshift_kr.csv").size(), 2u + 12u);
  EXPECT_TRUE(fs::exists(dir_ / "kr_abb.json"));
  EXPECT_EQ(run(config("fullgroup-embed"), log_), 0);
  auto n = config("neumann", {{"words", "5"}});
  n.seed = 2;
  EXPECT_EQ(run(n, log_), 0);
}

TEST_F(Harness, Reproducible) {
  auto c = config("dgen", {{"instances", "20"}});
  c.seed = 9;
  run(c, log_);
  const std::string first = slurp("dgen.csv") + slurp("dgen_instances.jsonl");
  run(c, log_);
  EXPECT_EQ(slurp("dgen.csv") + slurp("dgen_instances.jsonl"), first);
  for (const auto& e : fs::directory_iterator(dir_)) EXPECT_NE(e.path().extension(), ".tmp");
}

TEST_F(Harness, UsageErrorsNameTheField) {
  auto expect_field = [&](const ExperimentConfig& c, const std::string& field) {
    try {
      run(c, log_);
      ADD_FAILURE() << "no error for " << field;
    } catch (const UsageError& e) {
      EXPECT_EQ(e.field(), field);
    }
  };
  expect_field(config("dgen"), "seed");
  expect_field(config("alt-convergence", {{"radius", "3"}}), "radius");
  expect_field(config("alt-convergence", {{"r_max", "x"}}), "r_max");
  expect_field(config("subshift-kr", {{"substitution", "a->aa"}}), "substitution");
  expect_field(config("fullgroup-embed", {{"gadgets", "a"}}), "gadgets");
  expect_field(config("nonsense"), "experiment");
  ExperimentConfig c;
  EXPECT_THROW(c.set("seed", "-1"), UsageError);
  EXPECT_THROW(c.set("tolerance", "0"), UsageError);
}

TEST_F(Harness, ConfigFileAndOverrides) {
  fs::create_directories(dir_);
  {
    std::ofstream f(dir_ / "exp.cfg");
    f << "# sample\nexperiment = vershik\nseed = 5\nns = 20, 40\nsamples=100\n\n";
  }
  ExperimentConfig c = ExperimentConfig::from_file(dir_ / "exp.cfg");
  EXPECT_EQ(c.experiment, "vershik");
  EXPECT_EQ(*c.seed, 5u);
  EXPECT_EQ(c.params.at("ns"), "20, 40");
  c.set("seed", "6");
  c.set("samples", "50");
  EXPECT_EQ(*c.seed, 6u);
  EXPECT_EQ(c.params.at("samples"), "50");
  {
    std::ofstream f(dir_ / "bad.cfg");
    f << "experiment vershik\n";
  }
  EXPECT_THROW(ExperimentConfig::from_file(dir_ / "bad.cfg"), UsageError);
  EXPECT_THROW(ExperimentConfig::from_file(dir_ / "missing.cfg"), UsageError);
  EXPECT_EQ(experiment_names().size(), 7u);
}
