#pragma once

// Limited-switch learning via two-stage linear programming.
//
// Epochs 1..nu explore: a pessimistic LP sets a revenue floor J_pes, then K
// optimistic LPs (one per action j, maximizing x_j above the floor) are
// averaged into per-action allocations N_k, each played as one consecutive
// block. Epoch nu+1 exploits the empirical DLP through a vertex solution.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ksb/env/instance.hpp"
#include "ksb/lp/packing.hpp"
#include "ksb/policy/confidence.hpp"
#include "ksb/policy/policy.hpp"
#include "ksb/policy/spec.hpp"

namespace ksb::policy {

/// 1 - 3 a_max sqrt(d n log(dKT)) log(T) t_1 / B_min, unclamped.
/// Bandits with knapsacks use C_max and n = 1.
double ls_gamma_formula(const env::PublicView& view, std::int64_t t1);

/// Plans exploration epoch l (1 <= l < grid.size() - 1) from the current
/// bands. `budget` holds the LP right-hand sides and `start` the periods
/// already played; `prev` is the action played last.
EpochPlan ls2slp_epoch(const ConfidenceState& conf, const env::PublicView& view, std::size_t l,
                       std::span<const std::int64_t> grid, double gamma, const lp::Budget& budget,
                       std::int64_t start, std::optional<std::size_t> prev);

/// Plans the exploitation epoch. With `rebased` the LP is written on the
/// remaining inventory and time and N = x*; otherwise N = (T - t_nu)/T x*.
/// The final block runs to the end of the horizon.
EpochPlan ls2slp_last_epoch(const ConfidenceState& conf, const env::PublicView& view,
                            std::span<const std::int64_t> grid, double gamma,
                            const lp::Budget& budget, std::int64_t start,
                            std::optional<std::size_t> prev, bool rebased);

struct LsOptions {
  int s = 8;
  GammaMode gamma;
  bool update = false;
  /// Single exploration epoch ending here, bypassing nu and the grid
  /// (the explore-then-exploit baseline).
  std::optional<std::int64_t> single_epoch_end;
  std::optional<std::size_t> budget_override;
};

class Ls2slpPolicy final : public Policy {
 public:
  Ls2slpPolicy(env::PublicView view, LsOptions opts, std::uint64_t seed);

  std::size_t choose(std::int64_t t) override;
  void observe(const Observation& obs) override;
  std::optional<std::size_t> switch_budget() const override;
  const std::vector<EpochPlan>* plans() const override { return &plans_; }
  double gamma() const override { return gamma_; }
  bool gamma_clamped() const override { return clamped_; }

  int nu() const noexcept { return nu_; }
  const std::vector<std::int64_t>& grid() const noexcept { return grid_; }
  const ConfidenceState& confidence() const noexcept { return conf_; }

 private:
  void plan_next(std::int64_t start);

  env::PublicView view_;
  LsOptions opts_;
  ConfidenceState conf_;
  int nu_ = 0;
  std::vector<std::int64_t> grid_;
  double gamma_ = 1.0;
  bool clamped_ = false;
  std::mt19937_64 rng_;

  std::vector<EpochPlan> plans_;
  std::size_t next_epoch_ = 1;
  std::vector<Block> queue_;
  std::size_t queue_pos_ = 0;
  std::int64_t left_in_block_ = 0;
  std::optional<std::size_t> prev_;
  std::vector<double> consumed_;
};

}  // namespace ksb::policy
