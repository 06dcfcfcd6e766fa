// ksb: benchmarks, LP checks and hard instances from the command line.
//
// Exit codes: 0 success, 1 invalid input, 2 internal failure (LP mismatch,
// budget-guard trip, failed trial).

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ksb/bench/bench.hpp"
#include "ksb/env/instance_io.hpp"
#include "ksb/hard/hard_instances.hpp"
#include "ksb/lp/packing.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kInternal = 2;

struct InternalFailure : ksb::Error {
  using ksb::Error::Error;
};

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("KSB_SEED");
  if (!raw || !*raw) return std::nullopt;
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(raw, &pos);
    if (pos != std::string(raw).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ksb::InvalidArgument(fmt::format("KSB_SEED='{}' is not an unsigned integer", raw));
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ksb::InvalidArgument(fmt::format("cannot write '{}'", path));
  out << text;
}

// bench ---------------------------------------------------------------------

struct BenchArgs {
  std::string config;
  std::string out;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> parallel;
  std::optional<std::string> stockout;
  bool quiet = false;
};

int cmd_bench(const BenchArgs& a) {
  auto cfg = ksb::bench::load_config(a.config);
  if (a.trials) cfg.trials = *a.trials;
  if (a.seed) cfg.master_seed = *a.seed;
  if (const auto s = env_seed()) cfg.master_seed = *s;
  if (a.parallel) cfg.parallel = *a.parallel;
  if (a.stockout) cfg.stockout = ksb::env::stockout_rule_from_string(*a.stockout);
  if (!a.out.empty()) cfg.output = a.out;
  cfg.validate();

  const std::size_t total =
      cfg.instances.size() * cfg.T_grid.size() * cfg.policies.size() * cfg.trials;
  std::function<void(std::size_t)> progress;
  if (!a.quiet)
    progress = [total](std::size_t done) {
      if (done == total || done % 100 == 0) std::cerr << fmt::format("\r{}/{} rows", done, total);
      if (done == total) std::cerr << '\n';
    };
  const auto rows = ksb::bench::run_benchmark(cfg, progress);
  ksb::bench::write_csv(cfg.output, rows);

  std::size_t failed = 0;
  for (const auto& r : rows)
    if (!r.error.empty()) {
      if (failed < 5)
        std::cerr << fmt::format("trial failed: {} {} T={} {} trial {}: {}\n", r.model,
                                 r.inventory, r.T, r.policy, r.trial, r.error);
      ++failed;
    }
  if (failed) throw InternalFailure(fmt::format("{} of {} trials failed", failed, rows.size()));
  return kOk;
}

// dlp -----------------------------------------------------------------------

struct DlpArgs {
  std::string instance;
  std::string model;
  std::string inventory = "small";
  std::optional<std::int64_t> T;
};

int cmd_dlp(const DlpArgs& a) {
  ksb::env::Instance inst;
  if (!a.instance.empty()) {
    if (!a.model.empty()) throw ksb::InvalidArgument("give either --instance or --model, not both");
    inst = ksb::env::load_instance(a.instance);
    if (a.T) {
      if (*a.T < 1) throw ksb::InvalidArgument("--T must be >= 1");
      std::visit([&](auto& i) { i.T = *a.T; }, inst);
    }
  } else {
    if (a.model.empty()) throw ksb::InvalidArgument("dlp needs --instance or --model");
    if (!a.T) throw ksb::InvalidArgument("--model needs --T");
    if (*a.T < 1) throw ksb::InvalidArgument("--T must be >= 1");
    inst = ksb::env::standard_instance(ksb::env::demand_kind_from_string(a.model),
                                       ksb::env::inventory_level_from_string(a.inventory), *a.T);
  }
  ksb::env::validate(inst);

  const auto reward = ksb::env::expected_reward(inst);
  const auto cost = ksb::env::expected_cost(inst);
  const auto prog = ksb::lp::build_dlp_g(
      reward, cost,
      ksb::lp::Budget{static_cast<double>(ksb::env::horizon(inst)), ksb::env::inventory(inst)});
  const auto sol = ksb::lp::solve_packing(prog);
  nlohmann::json doc = {{"T", ksb::env::horizon(inst)},
                        {"value", sol.value},
                        {"x", sol.x},
                        {"support", sol.support},
                        {"duals", sol.duals},
                        {"pivots", sol.pivots}};
  std::cout << doc.dump(2) << '\n';
  return kOk;
}

// hard ----------------------------------------------------------------------

struct HardArgs {
  std::int64_t T = 0;
  std::size_t d = 0;
  std::optional<std::size_t> K;
  double alpha = 0.0;
  double c0 = 0.1;
  double zeta = 0.5;
  std::string out;
};

int cmd_hard(const HardArgs& a) {
  if (a.T < 1) throw ksb::InvalidArgument("--T must be >= 1");
  if (a.d < 1) throw ksb::InvalidArgument("--d must be >= 1");
  if (!(a.zeta >= 0.0 && a.zeta <= 1.0)) throw ksb::InvalidArgument("--zeta must lie in [0, 1]");
  const std::size_t K = a.K.value_or(a.d + 1);
  const auto lm = ksb::hard::lemma1_mu(a.T, a.d, a.alpha, a.c0, K);
  const auto hb = ksb::hard::build_hard_bnrm(a.T, a.d, K, lm.mu);
  if (hb.warning) std::cerr << "warning: " << *hb.warning << '\n';

  write_text(a.out, ksb::env::instance_to_json(hb.instance).dump(2) + "\n");

  const auto forms =
      ksb::hard::lemma1_closed_forms(static_cast<double>(a.T), a.d, lm.eta, a.zeta);
  nlohmann::json summary = {{"T", a.T},       {"d", a.d},
                            {"K", K},         {"eta", lm.eta},
                            {"mu1", lm.mu.mu1}, {"mu2", lm.mu.mu2},
                            {"zeta", a.zeta}, {"J_full", forms.J_full},
                            {"J", forms.J},   {"J_G", forms.J_G},
                            {"Delta", forms.Delta}};
  if (!a.out.empty() && a.out != "-") std::cout << summary.dump(2) << '\n';
  return kOk;
}

// verify-gap ----------------------------------------------------------------

struct GapArgs {
  std::int64_t T = 0;
  std::size_t d = 0;
  double eta = 0.0;
  double zeta = 0.5;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_verify_gap(const GapArgs& a) {
  ksb::hard::ProbeOptions probe{a.trials, a.seed};
  if (const auto s = env_seed()) probe.seed = *s;
  std::optional<ksb::hard::ProbeOptions> opt;
  if (a.trials > 0) opt = probe;
  const auto rep = ksb::hard::verify_gap(a.T, a.d, a.eta, a.zeta, opt);
  write_text(a.out, ksb::hard::to_json(rep).dump(2) + "\n");
  if (!rep.ok()) {
    for (const auto& m : rep.mismatches()) std::cerr << "mismatch: " << m << '\n';
    throw InternalFailure("closed forms and solver disagree");
  }
  return kOk;
}

// replay --------------------------------------------------------------------

struct ReplayArgs {
  std::string csv;
  std::size_t row = 1;
  std::string stockout = "void";
};

int cmd_replay(const ReplayArgs& a) {
  const auto rule = ksb::env::stockout_rule_from_string(a.stockout);
  const auto rows = ksb::bench::read_csv(a.csv);
  if (a.row < 1 || a.row > rows.size())
    throw ksb::InvalidArgument(fmt::format("--row must lie in [1, {}]", rows.size()));
  const auto& original = rows[a.row - 1];
  const auto again = ksb::bench::replay_row(original, rule);
  const auto want = ksb::bench::format_row(original);
  const auto got = ksb::bench::format_row(again);
  std::cout << got << '\n';
  if (got != want) {
    std::cerr << "replay differs from the CSV row:\n  csv:    " << want << "\n  replay: " << got
              << '\n';
    throw InternalFailure("replay mismatch");
  }
  return kOk;
}

// summarize -----------------------------------------------------------------

struct SummarizeArgs {
  std::string csv;
  std::string out;
};

int cmd_summarize(const SummarizeArgs& a) {
  const auto cells = ksb::bench::summarize(ksb::bench::read_csv(a.csv));
  std::ostringstream text;
  ksb::bench::write_summary(text, cells);
  write_text(a.out, text.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limited-switch learning for network revenue management and bandits with knapsacks"};
  app.require_subcommand(1);

  BenchArgs bench;
  auto* sb = app.add_subcommand("bench", "Run a benchmark grid and write result rows as CSV");
  sb->add_option("--config", bench.config, "Experiment config (JSON)")->required();
  sb->add_option("--out", bench.out, "Output CSV (default: the config's output field)");
  sb->add_option("--trials", bench.trials, "Trials per cell (overrides the config)");
  sb->add_option("--seed", bench.seed, "Master seed (KSB_SEED takes precedence)");
  sb->add_option("--parallel", bench.parallel, "Worker threads (0 = all cores)");
  sb->add_option("--stockout", bench.stockout, "Stockout period rule: void, keep or generous");
  sb->add_flag("--quiet", bench.quiet, "No progress counter");

  DlpArgs dlp;
  auto* sd = app.add_subcommand("dlp", "Solve the deterministic LP of an instance");
  sd->add_option("--instance", dlp.instance, "Instance file (JSON)");
  sd->add_option("--model", dlp.model, "Standard scenario demand model: linear, exponential, logit");
  sd->add_option("--inventory", dlp.inventory, "Standard scenario inventory: small or large");
  sd->add_option("--T", dlp.T, "Horizon (required with --model; overrides the file's T)");

  HardArgs hard;
  auto* sh = app.add_subcommand("hard", "Write a lower-bound instance in the instance JSON format");
  sh->add_option("--T", hard.T, "Horizon")->required();
  sh->add_option("--d", hard.d, "Resources")->required();
  sh->add_option("--K", hard.K, "Actions (default d+1)");
  sh->add_option("--alpha", hard.alpha, "eta = c0 T^-alpha, alpha in [0, 1/2)");
  sh->add_option("--c0", hard.c0, "eta scale");
  sh->add_option("--zeta", hard.zeta, "Cap fraction for the reported closed forms");
  sh->add_option("--out", hard.out, "Instance file (default: standard output)");

  GapArgs gap;
  auto* sg = app.add_subcommand("verify-gap", "Check the lower-bound closed forms against the solver");
  sg->add_option("--T", gap.T, "Horizon")->required();
  sg->add_option("--d", gap.d, "Resources")->required();
  sg->add_option("--eta", gap.eta, "Perturbation size")->required();
  sg->add_option("--zeta", gap.zeta, "Cap fraction");
  sg->add_option("--trials", gap.trials, "Probe trials (0 skips the probe)");
  sg->add_option("--seed", gap.seed, "Probe seed (KSB_SEED takes precedence)");
  sg->add_option("--out", gap.out, "Report file (default: standard output)");

  ReplayArgs replay;
  auto* sr = app.add_subcommand("replay", "Re-run one CSV row and compare");
  sr->add_option("--csv", replay.csv, "Benchmark CSV")->required();
  sr->add_option("--row", replay.row, "Data row, 1-based")->required();
  sr->add_option("--stockout", replay.stockout, "Stockout rule the CSV was produced with");

  SummarizeArgs summarize;
  auto* ss = app.add_subcommand("summarize", "Per-cell mean, stderr and median");
  ss->add_option("--csv", summarize.csv, "Benchmark CSV")->required();
  ss->add_option("--out", summarize.out, "Summary CSV (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*sb) return cmd_bench(bench);
    if (*sd) return cmd_dlp(dlp);
    if (*sh) return cmd_hard(hard);
    if (*sg) return cmd_verify_gap(gap);
    if (*sr) return cmd_replay(replay);
    if (*ss) return cmd_summarize(summarize);
  } catch (const InternalFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const ksb::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const ksb::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInvalid;
}
