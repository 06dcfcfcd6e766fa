#include "ksb/policy/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ksb::policy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Intersects [lo, hi] with [cand_lo, cand_hi]. A disjoint candidate
// collapses the band onto the old endpoint nearest to it.
void intersect(double& lo, double& hi, double cand_lo, double cand_hi) {
  if (cand_lo > hi) {
    lo = hi;
    return;
  }
  if (cand_hi < lo) {
    hi = lo;
    return;
  }
  lo = std::max(lo, cand_lo);
  hi = std::min(hi, cand_hi);
}

}  // namespace

ConfidenceState::ConfidenceState(const env::PublicView& view)
    : reward_width_(view.reward_width),
      cost_width_(view.cost_width),
      log_term_(std::log(static_cast<double>(view.d + 1) * static_cast<double>(view.K) *
                         static_cast<double>(view.T))),
      counts_(view.K, 0),
      reward_sum_(view.K, 0.0),
      cost_sum_(view.d, view.K),
      U_rew_(view.K, kInf),
      L_rew_(view.K, 0.0),
      U_cost_(view.d, view.K, kInf),
      L_cost_(view.d, view.K, 0.0) {}

void ConfidenceState::record(std::size_t k, double reward, std::span<const double> cost) {
  ++counts_[k];
  reward_sum_[k] += reward;
  for (std::size_t i = 0; i < d(); ++i) cost_sum_(i, k) += cost[i];
}

double ConfidenceState::mean_reward(std::size_t k) const {
  return counts_[k] == 0 ? 0.0 : reward_sum_[k] / static_cast<double>(counts_[k]);
}

double ConfidenceState::mean_cost(std::size_t i, std::size_t k) const {
  return counts_[k] == 0 ? 0.0 : cost_sum_(i, k) / static_cast<double>(counts_[k]);
}

std::vector<double> ConfidenceState::mean_rewards() const {
  std::vector<double> out(K());
  for (std::size_t k = 0; k < K(); ++k) out[k] = mean_reward(k);
  return out;
}

Matrix ConfidenceState::mean_costs() const {
  Matrix out(d(), K());
  for (std::size_t i = 0; i < d(); ++i)
    for (std::size_t k = 0; k < K(); ++k) out(i, k) = mean_cost(i, k);
  return out;
}

double ConfidenceState::radius(std::size_t k) const {
  if (counts_[k] == 0) return kInf;
  return std::sqrt(log_term_ / static_cast<double>(counts_[k]));
}

void ConfidenceState::refresh_bands() {
  for (std::size_t k = 0; k < K(); ++k) {
    if (counts_[k] == 0) continue;
    const double r = radius(k);
    const double m = mean_reward(k);
    intersect(L_rew_[k], U_rew_[k], m - reward_width_[k] * r, m + reward_width_[k] * r);
    for (std::size_t i = 0; i < d(); ++i) {
      const double c = mean_cost(i, k);
      intersect(L_cost_(i, k), U_cost_(i, k), c - cost_width_[i] * r, c + cost_width_[i] * r);
    }
  }
}

}  // namespace ksb::policy
