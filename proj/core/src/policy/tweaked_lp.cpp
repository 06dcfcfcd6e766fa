#include "ksb/policy/tweaked_lp.hpp"

#include <algorithm>
#include <cmath>

#include "ksb/lp/packing.hpp"

namespace ksb::policy {

double tweaked_gamma_formula(const env::Instance& inst) {
  const double T = static_cast<double>(env::horizon(inst));
  if (env::num_resources(inst) == 0) return 1.0;
  if (const auto* nrm = std::get_if<env::BnrmInstance>(&inst)) {
    const double n = static_cast<double>(nrm->n());
    return 1.0 - 2.0 * nrm->a_max() / nrm->B_min() * std::sqrt(n * T * std::log(T));
  }
  const auto& bw = std::get<env::BwkInstance>(inst);
  return 1.0 - 2.0 * bw.C_max() / bw.B_min() * std::sqrt(T * std::log(T));
}

TweakedPlan tweaked_lp_plan(const env::Instance& inst, GammaMode mode) {
  const std::int64_t T = env::horizon(inst);
  const auto& B = env::inventory(inst);
  const auto reward = env::expected_reward(inst);
  const Matrix cost = env::expected_cost(inst);
  const auto sol = lp::solve_packing(
      lp::build_dlp_g(reward, cost, lp::Budget{static_cast<double>(T), B}));

  TweakedPlan plan;
  plan.x = sol.x;
  plan.value = sol.value;
  plan.support = sol.support;
  if (mode.formula) {
    plan.gamma_raw = tweaked_gamma_formula(inst);
    plan.gamma_clamped = plan.gamma_raw < 0.0;
    plan.gamma = std::clamp(plan.gamma_raw, 0.0, 1.0);
  } else {
    plan.gamma_raw = plan.gamma = mode.value;
  }

  if (plan.support.empty()) {
    plan.blocks.push_back({0, T});
    return plan;
  }

  // The block that runs to T is the one whose overrun is least likely to
  // exhaust a resource.
  auto pressure = [&](std::size_t k) {
    double worst = 0.0;
    for (std::size_t i = 0; i < cost.rows(); ++i) worst = std::max(worst, cost(i, k) / B[i]);
    return worst;
  };
  std::size_t absorber = plan.support.front();
  for (std::size_t k : plan.support)
    if (pressure(k) < pressure(absorber)) absorber = k;

  std::vector<double> lengths(reward.size(), 0.0);
  for (std::size_t k : plan.support)
    if (k != absorber) lengths[k] = plan.gamma * plan.x[k];
  const auto periods = round_periods(lengths, T);
  for (std::size_t k = 0; k < periods.size(); ++k)
    if (periods[k] > 0) plan.blocks.push_back({k, periods[k]});
  const std::int64_t rest = T - total_length(plan.blocks);
  if (rest > 0) plan.blocks.push_back({absorber, rest});
  return plan;
}

TweakedLpPolicy::TweakedLpPolicy(TweakedPlan plan) : plan_(std::move(plan)) {
  std::size_t end = 0;
  for (const auto& b : plan_.blocks) {
    end += static_cast<std::size_t>(b.length);
    schedule_.push_back(end);
  }
}

std::size_t TweakedLpPolicy::choose(std::int64_t t) {
  const auto pos = static_cast<std::size_t>(t - 1);
  const auto it = std::upper_bound(schedule_.begin(), schedule_.end(), pos);
  if (it == schedule_.end()) return plan_.blocks.back().action;
  return plan_.blocks[static_cast<std::size_t>(it - schedule_.begin())].action;
}

std::optional<std::size_t> TweakedLpPolicy::switch_budget() const {
  return plan_.lambda() == 0 ? 0 : plan_.lambda() - 1;
}

}  // namespace ksb::policy
