#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cyclecover/harness.hpp"

using namespace cyclecover;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "cyclecover_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

int run_cli(const std::string& args, const fs::path& out = {}) {
  std::string cmd = std::string(CYCLECOVER_CLI) + " " + args;
  if (!out.empty()) cmd += " > " + out.string();
  cmd += " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, Parsing) {
  const auto cfg = config_from_json(nlohmann::json::parse(
      R"({"family":"tri-sweep","solver":"two-local","count":1,"tri_max":2,"checks":["verifier"],"seed":3})"));
  EXPECT_EQ(cfg.family, Family::TriSweep);
  EXPECT_EQ(cfg.tri_max, 2);
  EXPECT_FALSE(cfg.check_oracle);
  EXPECT_EQ(cfg.seed, 3u);

  auto code_of = [](const char* text) {
    try {
      config_from_json(nlohmann::json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;  // sentinel: no error
  };
  EXPECT_EQ(code_of(R"({"count":0})"), ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"({"family":"nope"})"), ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"({"cuont":3})"), ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"({"count":"many"})"), ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"({"n_max":40,"checks":["oracle"]})"), ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"([1,2])"), ErrorCode::ConfigError);
}

TEST(Experiment, RandomTwoLocalWithOracle) {
  ExperimentConfig cfg;
  cfg.count = 150;
  cfg.n_min = 2;
  cfg.n_max = 11;
  cfg.check_oracle = true;
  const auto rep = run_experiment(cfg);
  ASSERT_EQ(rep.rows.size(), 150u);
  EXPECT_EQ(rep.failures(), 0);
  EXPECT_LE(rep.max_cycles(), 2);
  EXPECT_LE(rep.max_oracle().value_or(0), 2);
}

TEST(Experiment, TriSweepHas64Rows) {
  ExperimentConfig cfg;
  cfg.family = Family::TriSweep;
  const auto rep = run_experiment(cfg);
  ASSERT_EQ(rep.rows.size(), 64u);
  EXPECT_EQ(rep.failures(), 0);
  EXPECT_LE(rep.max_cycles(), 2);
  EXPECT_EQ(rep.rows[0].instance, "tri 1,1,1 low");
  EXPECT_EQ(rep.rows[63].instance, "tri 4,4,4 low");
}

TEST(Experiment, OtherFamilies) {
  ExperimentConfig mean;
  mean.family = Family::Mean;
  mean.solver = SolverKind::Mean;
  mean.count = 40;
  mean.n_max = 10;
  mean.check_oracle = true;
  EXPECT_EQ(run_experiment(mean).failures(), 0);

  ExperimentConfig fano;
  fano.family = Family::Fano;
  fano.solver = SolverKind::RLocal;
  fano.r = 3;
  fano.count = 20;
  EXPECT_EQ(run_experiment(fano).failures(), 0);

  ExperimentConfig tk;
  tk.family = Family::TriangleCycle;
  tk.solver = SolverKind::RLocal;
  tk.count = 10;
  const auto rep = run_experiment(tk);
  EXPECT_EQ(rep.failures(), 0);
  EXPECT_EQ(rep.fallbacks(), 0);
}

TEST(Experiment, ErrorsAreRowsNotCrashes) {
  ExperimentConfig cfg;
  cfg.family = Family::Fano;  // 3-local input to the 2-local solver
  cfg.count = 3;
  const auto rep = run_experiment(cfg);
  EXPECT_EQ(rep.failures(), 3);
  EXPECT_NE(rep.rows[0].error.find("2-local"), std::string::npos);
}

TEST(Experiment, ReportIndependentOfJobs) {
  ExperimentConfig cfg;
  cfg.count = 60;
  cfg.seed = 11;
  const auto one = report_to_string(cfg, run_experiment(cfg));
  cfg.jobs = 4;
  const auto four = report_to_string(cfg, run_experiment(cfg));
  EXPECT_EQ(one, four);
  EXPECT_NE(one.find("# rows=60 failures=0"), std::string::npos);
}

TEST(RamseyProbe, Examples) {
  const auto r1 = ramsey_probe(1, 3, 6, 20, 1);
  EXPECT_TRUE(r1.all_found);
  EXPECT_EQ(r1.min_cycle_len_observed, 6);
  EXPECT_FALSE(r1.below_guarantee);

  const auto small = ramsey_probe(2, 3, 4, 10, 1);
  EXPECT_TRUE(small.below_guarantee);

  const auto r2 = ramsey_probe(2, 3, 12, 60, 7);
  EXPECT_TRUE(r2.all_found);
  EXPECT_GE(r2.min_cycle_len_observed, 3);
  EXPECT_THROW(ramsey_probe(2, 3, 40, 1, 1), Error);
}

TEST(RamseyProbe, MissesAreSaved) {
  const auto dir = scratch("misses");
  fs::remove_all(dir);
  // l = 7 > n / 2r: misses are expected and must land on disk
  const auto res = ramsey_probe(3, 7, 8, 10, 2, dir.string());
  EXPECT_FALSE(res.all_found);
  ASSERT_FALSE(res.saved_misses.empty());
  for (const auto& p : res.saved_misses) {
    const auto c = load_instance(p);
    EXPECT_LT(longest_mono_cycle(c).first, 7);
  }
}

TEST(SeedSearch, Examples) {
  const auto one = seed_search(1, 1, 3);
  ASSERT_TRUE(one);
  EXPECT_EQ(one->n(), 2);
  EXPECT_EQ(one->palette().size(), 1u);

  SeedSearchOptions opt;
  opt.samples_per_n = 5;
  const auto two = seed_search(2, 1, 5, opt);
  if (two) {
    EXPECT_TRUE(robustness_check(*two, 2));
    EXPECT_EQ(two->palette().size(), 2u);
  }
  try {
    seed_search(2, 2, 31);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(SeedSearch, HitsAreSavedAndReverified) {
  SeedSearchOptions opt;
  opt.save_path = scratch("seed.txt").string();
  const auto hit = seed_search(1, 1, 2, opt);
  ASSERT_TRUE(hit);
  EXPECT_EQ(load_instance(opt.save_path), *hit);
}

TEST(Cli, GenSolveVerifyRoundTrip) {
  const auto inst = scratch("cli_tri.txt"), sol = scratch("cli_tri.sol");
  ASSERT_EQ(run_cli("gen tri --sizes 2,3,2 --rule random --seed 4", inst), 0);
  ASSERT_EQ(run_cli("solve two-local --in " + inst.string() + " --trace", sol), 0);
  const auto text = slurp(sol);
  EXPECT_NE(text.find("cycles=2 valid=true"), std::string::npos);
  EXPECT_NE(text.find("# trace: tri-config"), std::string::npos);
  EXPECT_EQ(run_cli("verify --in " + inst.string() + " --partition " + sol.string() + " --max-cycles 2"), 0);
  EXPECT_EQ(run_cli("verify --in " + inst.string() + " --partition " + sol.string() + " --max-cycles 1"), 1);
}

TEST(Cli, Commands) {
  const auto inst = scratch("cli_mean.txt"), out = scratch("cli_out.txt");
  ASSERT_EQ(run_cli("gen mean --n 7 --seed 2", inst), 0);
  EXPECT_EQ(run_cli("solve mean --in " + inst.string(), out), 0);
  EXPECT_EQ(run_cli("oracle min --in " + inst.string(), out), 0);
  EXPECT_NE(slurp(out).find("min="), std::string::npos);
  EXPECT_EQ(run_cli("oracle bt --in " + inst.string() + " --alpha 0 --merged", out), 0);
  EXPECT_EQ(run_cli("oracle robust --in " + inst.string() + " --s 2", out), 0);
  EXPECT_EQ(run_cli("amplify --in " + inst.string(), out), 0);
  EXPECT_EQ(load_instance(out.string()).n(), 8);
  EXPECT_EQ(run_cli("solve r-local --in " + inst.string() + " --r 3 --tk-min 3 --ratio-exp 6", out), 0);
  EXPECT_EQ(run_cli("gen tk --k 4 --colour 0 --bg 1", out), 0);
  EXPECT_EQ(run_cli("gen fano --sizes 1,1,1,1,1,1,2 --seed 3", out), 0);
  EXPECT_EQ(run_cli("gen random --n 9 --r 2 --s 3 --seed 1", out), 0);
  EXPECT_EQ(run_cli("ramsey-probe --r 2 --l 3 --n 8 --samples 5", out), 0);
  EXPECT_EQ(run_cli("seed-search --s 1 --r 1 --n-max 2", out), 0);
  EXPECT_NE(slurp(out).find("found=true"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const auto bad = scratch("cli_bad.txt"), cfg = scratch("cli_cfg.json"), rep = scratch("cli_rep.csv");
  std::ofstream(bad) << "3 1\n0\n";
  EXPECT_EQ(run_cli("solve two-local --in " + bad.string()), 2);
  EXPECT_EQ(run_cli("solve two-local --in /nonexistent/file"), 2);
  EXPECT_EQ(run_cli("gen tri --sizes 0,1,1"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  std::ofstream(cfg) << R"({"count":0})";
  EXPECT_EQ(run_cli("experiment --config " + cfg.string()), 2);
  std::ofstream(cfg, std::ios::trunc) << R"({"family":"tri-sweep","tri_max":2,"output":")" << rep.string() << R"("})";
  EXPECT_EQ(run_cli("experiment --config " + cfg.string()), 0);
  EXPECT_NE(slurp(rep).find("# rows=8 failures=0"), std::string::npos);
  std::ofstream(cfg, std::ios::trunc) << R"({"family":"fano","count":2})";
  EXPECT_EQ(run_cli("experiment --config " + cfg.string()), 1);
  EXPECT_EQ(run_cli("seed-search --s 2 --r 2 --n-max 31"), 2);
}
