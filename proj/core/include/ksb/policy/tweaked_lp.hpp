#pragma once

#include <cstdint>
#include <vector>

#include "ksb/env/instance.hpp"
#include "ksb/policy/policy.hpp"
#include "ksb/policy/spec.hpp"

namespace ksb::policy {

/// 1 - 2 a_max sqrt(n T log T) / B_min (network revenue management) or
/// 1 - 2 C_max sqrt(T log T) / B_min (bandits with knapsacks), unclamped.
double tweaked_gamma_formula(const env::Instance& inst);

/// Clairvoyant schedule: a vertex of the true-means DLP played as one
/// consecutive block per support action, each shortened by gamma, with the
/// final block running to T.
struct TweakedPlan {
  std::vector<double> x;
  double value = 0.0;
  std::vector<std::size_t> support;
  double gamma = 1.0;
  double gamma_raw = 1.0;
  bool gamma_clamped = false;  // the formula value was negative
  std::vector<Block> blocks;

  std::size_t lambda() const noexcept { return support.size(); }
};

TweakedPlan tweaked_lp_plan(const env::Instance& inst, GammaMode mode);

class TweakedLpPolicy final : public Policy {
 public:
  explicit TweakedLpPolicy(TweakedPlan plan);

  std::size_t choose(std::int64_t t) override;
  void observe(const Observation&) override {}
  std::optional<std::size_t> switch_budget() const override;
  double gamma() const override { return plan_.gamma; }
  bool gamma_clamped() const override { return plan_.gamma_clamped; }

  const TweakedPlan& plan() const noexcept { return plan_; }

 private:
  TweakedPlan plan_;
  std::vector<std::size_t> schedule_;  // cumulative block ends
};

}  // namespace ksb::policy
