#pragma once

// Seeded experiment campaigns, the local-Ramsey cycle probe and the robust-seed search.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "cyclecover/core.hpp"
#include "cyclecover/instances.hpp"
#include "cyclecover/io.hpp"
#include "cyclecover/oracle.hpp"
#include "cyclecover/rng.hpp"
#include "cyclecover/solvers.hpp"

namespace cyclecover {

enum class Family { RandomLocal, TriSweep, Mean, Fano, TriangleCycle };
enum class SolverKind { TwoLocal, Mean, RLocal };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::RandomLocal: return "random-local";
    case Family::TriSweep: return "tri-sweep";
    case Family::Mean: return "mean";
    case Family::Fano: return "fano";
    case Family::TriangleCycle: return "tk";
  }
  return "?";
}

inline std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::TwoLocal: return "two-local";
    case SolverKind::Mean: return "mean";
    case SolverKind::RLocal: return "r-local";
  }
  return "?";
}

struct ExperimentConfig {
  Family family = Family::RandomLocal;
  SolverKind solver = SolverKind::TwoLocal;
  int count = 1;        // instances; for tri-sweep, colourings per size triple
  int n_min = 4, n_max = 12;
  int r = 2;
  int palette_max = 5;  // random-local: palette size drawn from 1..palette_max
  int tri_max = 4;      // tri-sweep: part sizes 1..tri_max
  std::uint64_t seed = 1;
  bool check_oracle = false;
  bool check_verifier = true;
  int jobs = 1;
  std::string output;   // report path; empty = caller decides
  PipelineParams pipeline;
};

inline void validate(const ExperimentConfig& cfg) {
  require(cfg.count >= 1, ErrorCode::ConfigError, "count must be >= 1");
  require(cfg.n_min >= 1 && cfg.n_min <= cfg.n_max, ErrorCode::ConfigError, "need 1 <= n_min <= n_max");
  require(cfg.r >= 1 && cfg.palette_max >= 1 && cfg.tri_max >= 1 && cfg.jobs >= 1, ErrorCode::ConfigError,
          "r, palette_max, tri_max and jobs must be >= 1");
  const int largest = cfg.family == Family::TriSweep ? 3 * cfg.tri_max : cfg.n_max;
  require(!cfg.check_oracle || largest <= default_oracle_max_n(), ErrorCode::ConfigError,
          "instances exceed the oracle budget (" + std::to_string(default_oracle_max_n()) + ")");
}

namespace detail {

template <typename E>
E enum_from(const std::string& text, std::initializer_list<std::pair<const char*, E>> table, const char* what) {
  for (const auto& [name, value] : table)
    if (text == name) return value;
  fail(ErrorCode::ConfigError, std::string("unknown ") + what + " '" + text + "'");
}

}  // namespace detail

/// Reads a config object. Unknown keys are rejected so typos do not silently fall back to defaults.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  static const std::vector<std::string> known{"family", "solver", "count", "n_min", "n_max", "r",
                                              "palette_max", "tri_max", "seed", "checks", "jobs", "output",
                                              "c_pipeline", "tk_min", "ratio_exp"};
  require(j.is_object(), ErrorCode::ConfigError, "config must be a JSON object");
  for (const auto& [key, _] : j.items())
    require(std::find(known.begin(), known.end(), key) != known.end(), ErrorCode::ConfigError,
            "unknown config key '" + key + "'");
  ExperimentConfig cfg;
  try {
    if (j.contains("family"))
      cfg.family = detail::enum_from<Family>(j.at("family").get<std::string>(),
                                             {{"random-local", Family::RandomLocal}, {"tri-sweep", Family::TriSweep},
                                              {"mean", Family::Mean}, {"fano", Family::Fano},
                                              {"tk", Family::TriangleCycle}},
                                             "family");
    if (j.contains("solver"))
      cfg.solver = detail::enum_from<SolverKind>(
          j.at("solver").get<std::string>(),
          {{"two-local", SolverKind::TwoLocal}, {"mean", SolverKind::Mean}, {"r-local", SolverKind::RLocal}}, "solver");
    cfg.count = j.value("count", cfg.count);
    cfg.n_min = j.value("n_min", cfg.n_min);
    cfg.n_max = j.value("n_max", cfg.n_max);
    cfg.r = j.value("r", cfg.r);
    cfg.palette_max = j.value("palette_max", cfg.palette_max);
    cfg.tri_max = j.value("tri_max", cfg.tri_max);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.jobs = j.value("jobs", cfg.jobs);
    cfg.output = j.value("output", cfg.output);
    cfg.pipeline.c_pipeline = j.value("c_pipeline", cfg.pipeline.c_pipeline);
    cfg.pipeline.tk_min = j.value("tk_min", cfg.pipeline.tk_min);
    if (j.contains("ratio_exp")) cfg.pipeline.ratio_exp = j.at("ratio_exp").get<int>();
    if (j.contains("checks")) {
      cfg.check_oracle = cfg.check_verifier = false;
      for (const auto& item : j.at("checks")) {
        const auto name = item.get<std::string>();
        if (name == "oracle")
          cfg.check_oracle = true;
        else if (name == "verifier")
          cfg.check_verifier = true;
        else
          fail(ErrorCode::ConfigError, "unknown check '" + name + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("bad config value: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::ConfigError, "cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

struct ExperimentRow {
  int index = 0;
  std::string instance;  // generator parameters
  int n = 0;
  int locality = 0;
  int palette = 0;
  int cycles = 0;
  std::optional<int> oracle_min;
  bool valid = false;
  std::string error;
  std::string trace;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;

  int failures() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.valid; }));
  }
  int max_cycles() const {
    int m = 0;
    for (const auto& r : rows) m = std::max(m, r.cycles);
    return m;
  }
  double mean_cycles() const {
    if (rows.empty()) return 0.0;
    double s = 0;
    for (const auto& r : rows) s += r.cycles;
    return s / static_cast<double>(rows.size());
  }
  std::optional<int> max_oracle() const {
    std::optional<int> m;
    for (const auto& r : rows)
      if (r.oracle_min) m = std::max(m.value_or(0), *r.oracle_min);
    return m;
  }
  int fallbacks() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const auto& r) {
      return r.trace.find("fallback") != std::string::npos;
    }));
  }
};

namespace detail {

struct GeneratedInstance {
  EdgeColouring colouring;
  std::string label;
};

/// The instance for row `index`; depends only on (cfg, index).
inline GeneratedInstance generate_row(const ExperimentConfig& cfg, int index) {
  const std::uint64_t seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(index));
  Rng rng(Seed{seed});
  switch (cfg.family) {
    case Family::RandomLocal: {
      const int n = rng.uniform_int(cfg.n_min, cfg.n_max);
      const int s = rng.uniform_int(1, cfg.palette_max);
      return {gen_random_local(n, cfg.r, s, Seed{mix_seed(seed, 1)}),
              "random n=" + std::to_string(n) + " r=" + std::to_string(cfg.r) + " s=" + std::to_string(s)};
    }
    case Family::TriSweep: {
      const int m = cfg.tri_max;
      const int triple = index / cfg.count, variant = index % cfg.count;
      const int a = triple / (m * m) + 1, b = (triple / m) % m + 1, c = triple % m + 1;
      const IntraRule rule = variant == 0 ? IntraRule::LowColour : IntraRule::Random;
      return {gen_tri_config(a, b, c, rule, Seed{seed}).first,
              "tri " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                  (variant == 0 ? " low" : " random")};
    }
    case Family::Mean: {
      const int n = rng.uniform_int(std::max(cfg.n_min, 4), std::max(cfg.n_max, 4));
      return {gen_mean_instance(n, Seed{mix_seed(seed, 1)}), "mean n=" + std::to_string(n)};
    }
    case Family::Fano: {
      std::vector<int> sizes(7);
      std::string label = "fano";
      for (auto& s : sizes) {
        s = rng.uniform_int(1, 2);
        label += ' ' + std::to_string(s);
      }
      return {gen_fano_config(sizes, Seed{mix_seed(seed, 1)}), label};
    }
    case Family::TriangleCycle: {
      const int k = rng.uniform_int(3, std::max(3, cfg.n_max / 2));
      return {gen_triangle_cycle(k, 0, 1).first, "tk k=" + std::to_string(k)};
    }
  }
  throw std::logic_error("unknown family");
}

inline int row_count(const ExperimentConfig& cfg) {
  return cfg.family == Family::TriSweep ? cfg.count * cfg.tri_max * cfg.tri_max * cfg.tri_max : cfg.count;
}

inline ExperimentRow run_row(const ExperimentConfig& cfg, int index) {
  ExperimentRow row;
  row.index = index;
  try {
    const GeneratedInstance inst = generate_row(cfg, index);
    const EdgeColouring& c = inst.colouring;
    row.instance = inst.label;
    row.n = c.n();
    row.locality = max_locality(c);
    row.palette = static_cast<int>(c.palette().size());
    SolveResult res;
    VerifyOptions opts;
    int bound = 0;
    switch (cfg.solver) {
      case SolverKind::TwoLocal:
        res = two_local_partition(c);
        opts = {true, true, 2};
        break;
      case SolverKind::Mean:
        res = two_mean_partition(c);
        opts = {true, true, 2};
        break;
      case SolverKind::RLocal: {
        const int r = std::max(cfg.r, row.locality);
        res = r_local_partition(c, r, cfg.pipeline);
        bound = res.trace.has("fallback") ? greedy_route_bound(c.n(), r) : tk_route_bound(cfg.pipeline, r);
        opts.max_cycles = bound;
        break;
      }
    }
    row.trace = res.trace.summary();
    row.cycles = verify_partition(c, res.partition).cycle_count;
    row.valid = true;
    if (cfg.check_verifier) {
      const auto rep = verify_partition(c, res.partition, opts);
      row.valid = rep.valid;
      if (!rep.valid) row.error = std::string(to_string(*rep.failure_reason)) + ": " + rep.detail;
    }
    if (cfg.check_oracle) {
      row.oracle_min = min_cycle_partition(c).count;
      if (cfg.solver != SolverKind::RLocal && *row.oracle_min > 2) {
        row.valid = false;
        row.error = "oracle minimum above 2";
      }
    }
  } catch (const std::exception& e) {
    row.valid = false;
    row.error = e.what();
  }
  return row;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace detail

/// Runs a campaign. Rows are produced by up to cfg.jobs threads but stored in index order, and
/// every row depends only on (cfg, index), so reports do not depend on scheduling.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentReport report;
  const int total = detail::row_count(cfg);
  report.rows.resize(static_cast<std::size_t>(total));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < total; i = next++) report.rows[static_cast<std::size_t>(i)] = detail::run_row(cfg, i);
  };
  const int jobs = std::min(cfg.jobs, std::max(total, 1));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

inline void write_report(std::ostream& os, const ExperimentConfig& cfg, const ExperimentReport& rep) {
  os << "index,instance,n,locality,palette,cycles,oracle_min,valid,error,trace\n";
  for (const auto& r : rep.rows) {
    os << r.index << ',' << detail::csv_field(r.instance) << ',' << r.n << ',' << r.locality << ',' << r.palette
       << ',' << r.cycles << ',' << (r.oracle_min ? std::to_string(*r.oracle_min) : "") << ','
       << (r.valid ? "true" : "false") << ',' << detail::csv_field(r.error) << ',' << detail::csv_field(r.trace)
       << '\n';
  }
  std::ostringstream mean;
  mean << std::fixed << std::setprecision(4) << rep.mean_cycles();
  os << "# family=" << to_string(cfg.family) << " solver=" << to_string(cfg.solver) << " seed=" << cfg.seed << '\n';
  os << "# rows=" << rep.rows.size() << " failures=" << rep.failures() << " max_cycles=" << rep.max_cycles()
     << " mean_cycles=" << mean.str() << " fallbacks=" << rep.fallbacks();
  if (auto m = rep.max_oracle()) os << " max_oracle_min=" << *m;
  os << '\n';
}

inline std::string report_to_string(const ExperimentConfig& cfg, const ExperimentReport& rep) {
  std::ostringstream os;
  write_report(os, cfg, rep);
  return os.str();
}

// ---------------------------------------------------------------------------

struct RamseyProbeResult {
  int r = 0, l = 0, n = 0;
  int samples = 0;
  bool all_found = true;
  int min_cycle_len_observed = 0;
  bool below_guarantee = false;         // n < 2 l r: no cycle of length l is promised
  std::vector<std::string> saved_misses;
};

/// Samples r-local colourings of K_n (palette size varying per sample) and checks each for a
/// monochromatic cycle of length >= l. Misses are written to `miss_dir` when given.
inline RamseyProbeResult ramsey_probe(int r, int l, int n, int samples, std::uint64_t seed,
                                      const std::string& miss_dir = {}, const OracleBudget& budget = {}) {
  require(r >= 1 && l >= 1 && n >= 1 && samples >= 1, ErrorCode::BadParams, "r, l, n, samples must be >= 1");
  detail::check_size(n, budget, "ramsey_probe");
  RamseyProbeResult res;
  res.r = r;
  res.l = l;
  res.n = n;
  res.samples = samples;
  res.below_guarantee = n < 2 * l * r;
  res.min_cycle_len_observed = n;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t s_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
    Rng rng(Seed{s_seed});
    const int s = rng.uniform_int(1, 3 * r);
    const EdgeColouring c = gen_random_local(n, r, s, Seed{mix_seed(s_seed, 1)});
    const int len = longest_mono_cycle(c, budget).first;
    res.min_cycle_len_observed = std::min(res.min_cycle_len_observed, len);
    if (len < l) {
      res.all_found = false;
      if (!miss_dir.empty()) {
        std::filesystem::create_directories(miss_dir);
        const std::string path = miss_dir + "/miss_r" + std::to_string(r) + "_n" + std::to_string(n) + "_" +
                                 std::to_string(i) + ".txt";
        save_instance(path, c);
        res.saved_misses.push_back(path);
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------

struct SeedSearchOptions {
  std::uint64_t seed = 1;
  int samples_per_n = 200;           // random candidates per n when exhaustive enumeration is too big
  std::uint64_t exhaustive_limit = 20000;
  std::string save_path;             // hit is written here when non-empty
};

namespace detail {

inline bool is_robust_seed(const EdgeColouring& c, int s, int r, const OracleBudget& budget) {
  return static_cast<int>(c.palette().size()) == s && is_r_local(c, r) && robustness_check(c, s, budget);
}

}  // namespace detail

/// First colouring with exactly s colours, locality <= r, that needs >= s cycles even after deleting
/// any vertex. Small n are enumerated exhaustively (colourings in first-appearance form), larger n
/// are sampled.
inline std::optional<EdgeColouring> seed_search(int s, int r, int n_max, const SeedSearchOptions& opt = {},
                                                const OracleBudget& budget = {}) {
  require(s >= 1 && r >= 1 && n_max >= 1, ErrorCode::BadParams, "s, r, n_max must be >= 1");
  require(n_max <= kOracleHardCap, ErrorCode::BudgetExceeded, "n_max above the oracle hard cap");
  detail::check_size(n_max, budget, "seed_search");
  auto hit = [&](const EdgeColouring& c) -> std::optional<EdgeColouring> {
    if (!detail::is_robust_seed(c, s, r, budget)) return std::nullopt;
    if (!opt.save_path.empty()) {
      save_instance(opt.save_path, c);
      const EdgeColouring back = load_instance(opt.save_path);
      if (!(back == c) || !detail::is_robust_seed(back, s, r, budget))
        throw std::logic_error("saved seed failed re-verification");
    }
    return c;
  };
  for (int n = 1; n <= n_max; ++n) {
    const int m = n * (n - 1) / 2;
    double space = 1;
    for (int i = 0; i < m && space <= static_cast<double>(opt.exhaustive_limit); ++i) space *= s;
    if (space <= static_cast<double>(opt.exhaustive_limit)) {
      // restricted growth strings: each edge uses at most one colour beyond those seen before it
      std::vector<ColourId> upper(static_cast<std::size_t>(m), 0);
      auto rec = [&](auto&& self, int pos, int used) -> std::optional<EdgeColouring> {
        if (pos == m) {
          if (used != s) return std::nullopt;
          return hit(EdgeColouring(n, upper));
        }
        for (int col = 0; col <= std::min(used, s - 1); ++col) {
          upper[static_cast<std::size_t>(pos)] = col;
          if (auto found = self(self, pos + 1, std::max(used, col + 1))) return found;
        }
        return std::nullopt;
      };
      if (auto found = rec(rec, 0, 0)) return found;
      continue;
    }
    for (int i = 0; i < opt.samples_per_n; ++i) {
      const std::uint64_t sd = mix_seed(mix_seed(opt.seed, static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(i));
      EdgeColouring c;
      try {
        c = gen_random_local(n, r, s, Seed{sd});
      } catch (const Error& e) {
        if (e.code() == ErrorCode::InfeasibleFamily) continue;
        throw;
      }
      if (auto found = hit(c)) return found;
    }
  }
  return std::nullopt;
}

}  // namespace cyclecover
