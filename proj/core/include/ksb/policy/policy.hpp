#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ksb/matrix.hpp"
#include "ksb/policy/schedule.hpp"

namespace ksb::policy {

/// Feedback for one period. `demand` is empty for bandits with knapsacks.
struct Observation {
  std::size_t action = 0;
  double reward = 0.0;
  std::span<const double> cost;
  std::span<const double> demand;
};

/// One planned epoch: the LP data it was built from and the resulting
/// consecutive-block schedule.
struct EpochPlan {
  std::size_t epoch = 1;        // 1-based; the exploitation epoch is nu+1
  bool exploit = false;
  std::int64_t start = 0;       // periods played before the epoch (T_{l-1})
  std::int64_t grid_end = 0;    // t_l
  double gamma = 1.0;

  // LP right-hand sides (remaining quantities for the updating variant).
  double horizon = 0.0;
  std::vector<double> budget;

  // Band snapshot the LPs used.
  std::vector<double> U_rew, L_rew;
  Matrix U_cost, L_cost;

  double j_pes = 0.0;
  std::vector<double> floor_coeffs;  // U_rew with +inf replaced by reward caps
  bool floor_active = false;
  std::vector<std::vector<double>> exploration;  // x^{l,j}, j = 0..K-1

  std::vector<double> lp_solution;  // exploitation vertex x*
  std::vector<double> allocation;   // N_k before the gamma discount
  std::vector<Block> blocks;
};

class Policy {
 public:
  virtual ~Policy() = default;

  /// Action for period t (1-based).
  virtual std::size_t choose(std::int64_t t) = 0;
  virtual void observe(const Observation& obs) = 0;

  /// Hard limit enforced by the runner, if the policy has one.
  virtual std::optional<std::size_t> switch_budget() const { return std::nullopt; }

  /// Epoch plans made so far (planning policies only).
  virtual const std::vector<EpochPlan>* plans() const { return nullptr; }

  virtual double gamma() const { return 1.0; }
  virtual bool gamma_clamped() const { return false; }
};

}  // namespace ksb::policy
