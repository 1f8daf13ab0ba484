// Command-line front end: generators, solvers, oracles, verification and experiment campaigns.

#include <functional>
#include <optional>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclecover/cyclecover.hpp"

namespace cc = cyclecover;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) cc::fail(cc::ErrorCode::ParseError, "cannot write " + out);
  f << text;
}

void emit_trace(const cc::SolveTrace& trace) {
  for (const auto& e : trace.entries) std::cout << "# trace: " << e.stage << (e.detail.empty() ? "" : " ") << e.detail << '\n';
}

int print_solution(const cc::EdgeColouring& c, const cc::SolveResult& res, const cc::VerifyOptions& opts, bool trace) {
  const auto rep = cc::verify_partition(c, res.partition, opts);
  std::cout << cc::partition_to_string(res.partition);
  std::cout << "cycles=" << rep.cycle_count << " valid=" << (rep.valid ? "true" : "false") << '\n';
  if (trace) emit_trace(res.trace);
  return rep.valid ? kExitOk : kExitVerify;
}

cc::AmplifyRule parse_amplify_rule(const std::string& s) {
  if (s == "least-absent") return cc::AmplifyRule::LeastAbsent;
  if (s == "fresh") return cc::AmplifyRule::Fresh;
  cc::fail(cc::ErrorCode::BadParams, "unknown amplify rule '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monochromatic cycle partitions of locally coloured complete graphs"};
  app.require_subcommand(1);
  std::function<int()> action;

  // gen ---------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->require_subcommand(1);
  std::string gen_out;
  std::uint64_t seed = 1;
  int n = 8, r = 2, s = 3, k = 4;
  cc::ColourId colour = 0, bg = 1;
  std::vector<int> sizes;
  std::string rule = "low";

  auto* gen_random = gen->add_subcommand("random", "random r-local colouring");
  gen_random->add_option("--n", n, "vertices")->required();
  gen_random->add_option("--r", r, "locality")->required();
  gen_random->add_option("--s", s, "palette size bound")->required();
  gen_random->add_option("--seed", seed);
  gen_random->add_option("--out", gen_out);
  gen_random->callback([&] {
    action = [&] {
      emit(cc::instance_to_string(cc::gen_random_local(n, r, s, cc::Seed{seed})), gen_out);
      return kExitOk;
    };
  });

  auto* gen_tri = gen->add_subcommand("tri", "three-part 2-local configuration");
  gen_tri->add_option("--sizes", sizes, "a,b,c")->required()->delimiter(',')->expected(3);
  gen_tri->add_option("--rule", rule, "intra-part colours: low|random");
  gen_tri->add_option("--seed", seed);
  gen_tri->add_option("--out", gen_out);
  gen_tri->callback([&] {
    action = [&] {
      if (rule != "low" && rule != "random") cc::fail(cc::ErrorCode::BadParams, "rule must be low or random");
      const auto intra = rule == "low" ? cc::IntraRule::LowColour : cc::IntraRule::Random;
      emit(cc::instance_to_string(cc::gen_tri_config(sizes[0], sizes[1], sizes[2], intra, cc::Seed{seed}).first),
           gen_out);
      return kExitOk;
    };
  });

  auto* gen_fano = gen->add_subcommand("fano", "seven-part Fano-plane configuration");
  gen_fano->add_option("--sizes", sizes, "seven part sizes")->required()->delimiter(',')->expected(7);
  gen_fano->add_option("--seed", seed);
  gen_fano->add_option("--out", gen_out);
  gen_fano->callback([&] {
    action = [&] {
      emit(cc::instance_to_string(cc::gen_fano_config(sizes, cc::Seed{seed})), gen_out);
      return kExitOk;
    };
  });

  auto* gen_tk = gen->add_subcommand("tk", "planted triangle cycle");
  gen_tk->add_option("--k", k)->required();
  gen_tk->add_option("--colour", colour);
  gen_tk->add_option("--bg", bg);
  gen_tk->add_option("--out", gen_out);
  gen_tk->callback([&] {
    action = [&] {
      emit(cc::instance_to_string(cc::gen_triangle_cycle(k, colour, bg).first), gen_out);
      return kExitOk;
    };
  });

  auto* gen_mean = gen->add_subcommand("mean", "colouring with mean locality <= 2 and a 3-colour vertex");
  gen_mean->add_option("--n", n)->required();
  gen_mean->add_option("--seed", seed);
  gen_mean->add_option("--out", gen_out);
  gen_mean->callback([&] {
    action = [&] {
      emit(cc::instance_to_string(cc::gen_mean_instance(n, cc::Seed{seed})), gen_out);
      return kExitOk;
    };
  });

  std::string in_path, amp_rule = "least-absent";
  bool strict = false;
  auto* amp = app.add_subcommand("amplify", "add a vertex joined in a colour it forces into its own cycle");
  amp->add_option("--in", in_path)->required();
  amp->add_option("--rule", amp_rule, "least-absent|fresh");
  amp->add_flag("--strict", strict, "fail when no colour is absent");
  amp->add_option("--out", gen_out);
  amp->callback([&] {
    action = [&] {
      emit(cc::instance_to_string(cc::amplify(cc::load_instance(in_path), parse_amplify_rule(amp_rule), strict)),
           gen_out);
      return kExitOk;
    };
  });

  // solve -------------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "partition an instance into monochromatic cycles");
  solve->require_subcommand(1);
  bool trace = false;
  cc::PipelineParams params;
  std::optional<int> ratio_exp;

  auto* solve_two = solve->add_subcommand("two-local", "two cycles of different colours (2-local input)");
  solve_two->add_option("--in", in_path)->required();
  solve_two->add_flag("--trace", trace);
  solve_two->callback([&] {
    action = [&] {
      const auto c = cc::load_instance(in_path);
      return print_solution(c, cc::two_local_partition(c), {true, true, 2}, trace);
    };
  });

  auto* solve_mean = solve->add_subcommand("mean", "two cycles of different colours (mean locality <= 2)");
  solve_mean->add_option("--in", in_path)->required();
  solve_mean->add_flag("--trace", trace);
  solve_mean->callback([&] {
    action = [&] {
      const auto c = cc::load_instance(in_path);
      return print_solution(c, cc::two_mean_partition(c), {true, true, 2}, trace);
    };
  });

  auto* solve_r = solve->add_subcommand("r-local", "triangle-cycle pipeline with greedy fallback");
  solve_r->add_option("--in", in_path)->required();
  solve_r->add_option("--r", r)->required();
  solve_r->add_option("--c-pipeline", params.c_pipeline);
  solve_r->add_option("--tk-min", params.tk_min);
  solve_r->add_option("--ratio-exp", ratio_exp);
  solve_r->add_flag("--trace", trace);
  solve_r->callback([&] {
    action = [&] {
      const auto c = cc::load_instance(in_path);
      params.ratio_exp = ratio_exp;
      return print_solution(c, cc::r_local_partition(c, r, params), {}, trace);
    };
  });

  // oracle ------------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "exact brute-force answers (small n)");
  oracle->require_subcommand(1);
  cc::ColourId alpha = 0;
  bool merged = false;

  auto* o_min = oracle->add_subcommand("min", "minimum cycle partition");
  o_min->add_option("--in", in_path)->required();
  o_min->callback([&] {
    action = [&] {
      const auto res = cc::min_cycle_partition(cc::load_instance(in_path));
      std::cout << cc::partition_to_string(res.witness) << "min=" << res.count << '\n';
      return kExitOk;
    };
  });

  auto* o_bt = oracle->add_subcommand("bt", "two cycles, the first in colour alpha");
  o_bt->add_option("--in", in_path)->required();
  o_bt->add_option("--alpha", alpha)->required();
  o_bt->add_flag("--merged", merged, "treat every other colour as one");
  o_bt->callback([&] {
    action = [&] {
      const auto c = cc::load_instance(in_path);
      const auto res = cc::bt_two_cycles(c, alpha, merged);
      if (!res) {
        std::cout << "found=false\n";
        return kExitVerify;
      }
      std::cout << cc::partition_to_string(cc::CyclePartition{{res->first, res->second}}) << "found=true\n";
      return kExitOk;
    };
  });

  auto* o_rob = oracle->add_subcommand("robust", "needs >= s cycles even after any vertex deletion");
  o_rob->add_option("--in", in_path)->required();
  o_rob->add_option("--s", s)->required();
  o_rob->callback([&] {
    action = [&] {
      const auto c = cc::load_instance(in_path);
      const auto best = cc::min_cycle_partition(c);
      std::cout << cc::partition_to_string(best.witness) << "min=" << best.count
                << " robust=" << (cc::robustness_check(c, s) ? "true" : "false") << '\n';
      return kExitOk;
    };
  });

  // verify ------------------------------------------------------------------
  std::string part_path;
  std::optional<int> max_cycles;
  bool distinct = false;
  auto* verify = app.add_subcommand("verify", "check a partition against an instance");
  verify->add_option("--in", in_path)->required();
  verify->add_option("--partition", part_path)->required();
  verify->add_option("--max-cycles", max_cycles);
  verify->add_flag("--distinct-colours", distinct);
  verify->callback([&] {
    action = [&] {
      const auto c = cc::load_instance(in_path);
      const auto rep = cc::verify_partition(c, cc::load_partition(part_path), {true, distinct, max_cycles});
      std::cout << "cycles=" << rep.cycle_count << " valid=" << (rep.valid ? "true" : "false");
      if (!rep.valid) std::cout << " reason=" << cc::to_string(*rep.failure_reason) << " detail=\"" << rep.detail << '"';
      std::cout << '\n';
      return rep.valid ? kExitOk : kExitVerify;
    };
  });

  // campaigns ---------------------------------------------------------------
  std::string config_path, report_out;
  std::optional<int> jobs;
  auto* exp = app.add_subcommand("experiment", "run a seeded campaign from a JSON config");
  exp->add_option("--config", config_path)->required();
  exp->add_option("--out", report_out, "report path (overrides the config)");
  exp->add_option("--jobs", jobs);
  exp->callback([&] {
    action = [&] {
      auto cfg = cc::load_config(config_path);
      if (jobs) cfg.jobs = *jobs;
      if (!report_out.empty()) cfg.output = report_out;
      const auto rep = cc::run_experiment(cfg);
      const auto text = cc::report_to_string(cfg, rep);
      emit(text, cfg.output);
      if (!cfg.output.empty()) std::cout << text.substr(text.rfind("# rows="));
      return rep.failures() == 0 ? kExitOk : kExitVerify;
    };
  });

  int l = 3, samples = 100;
  std::string miss_dir;
  auto* probe = app.add_subcommand("ramsey-probe", "sample r-local colourings for a long monochromatic cycle");
  probe->add_option("--r", r)->required();
  probe->add_option("--l", l)->required();
  probe->add_option("--n", n)->required();
  probe->add_option("--samples", samples);
  probe->add_option("--seed", seed);
  probe->add_option("--miss-dir", miss_dir, "where colourings without the cycle are saved");
  probe->callback([&] {
    action = [&] {
      const auto res = cc::ramsey_probe(r, l, n, samples, seed, miss_dir);
      if (res.below_guarantee)
        std::cerr << "warning: n=" << n << " < 2*l*r=" << 2 * l * r << ", a cycle of length l is not guaranteed\n";
      std::cout << "r=" << res.r << " l=" << res.l << " n=" << res.n << " samples=" << res.samples
                << " all_found=" << (res.all_found ? "true" : "false")
                << " min_cycle_len_observed=" << res.min_cycle_len_observed << '\n';
      for (const auto& p : res.saved_misses) std::cout << "# miss saved: " << p << '\n';
      return res.all_found || res.below_guarantee ? kExitOk : kExitVerify;
    };
  });

  int n_max = 5;
  cc::SeedSearchOptions sopt;
  auto* ss = app.add_subcommand("seed-search", "look for a robust amplifier seed");
  ss->add_option("--s", s)->required();
  ss->add_option("--r", r)->required();
  ss->add_option("--n-max", n_max)->required();
  ss->add_option("--seed", sopt.seed);
  ss->add_option("--samples", sopt.samples_per_n, "random candidates per n beyond exhaustive range");
  ss->add_option("--out", sopt.save_path, "save the hit here");
  ss->callback([&] {
    action = [&] {
      const auto found = cc::seed_search(s, r, n_max, sopt);
      if (!found) {
        std::cout << "found=false\n";
        return kExitOk;
      }
      std::cout << cc::instance_to_string(*found) << "found=true n=" << found->n() << '\n';
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  try {
    return action ? action() : kExitInput;
  } catch (const cc::Error& e) {
    std::cerr << "error [" << cc::to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitVerify;
  }
}
