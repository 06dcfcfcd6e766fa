#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ksb/env/instance.hpp"
#include "ksb/matrix.hpp"

namespace ksb::policy {

/// Visit counts, empirical means and monotone confidence bands for the
/// per-period reward and per-resource consumption of every action.
///
/// For network revenue management the reward of action k is
/// sum_j p_jk D_j and its mean is sum_j p_jk qbar_jk, so tracking realized
/// rewards and consumption gives the same estimates as tracking demand.
///
/// Bands start at [0, +inf] and only ever shrink: each refresh intersects
/// the previous band with  mean +- width * r_k,  r_k = sqrt(log((d+1)KT) / n_k).
class ConfidenceState {
 public:
  explicit ConfidenceState(const env::PublicView& view);

  void record(std::size_t k, double reward, std::span<const double> cost);

  /// Recomputes the bands from the data recorded so far.
  void refresh_bands();

  std::size_t K() const noexcept { return counts_.size(); }
  std::size_t d() const noexcept { return cost_width_.size(); }

  std::int64_t count(std::size_t k) const { return counts_[k]; }
  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
  double mean_reward(std::size_t k) const;
  double mean_cost(std::size_t i, std::size_t k) const;
  std::vector<double> mean_rewards() const;
  Matrix mean_costs() const;

  /// sqrt(log((d+1)KT) / n_k); +inf when n_k = 0.
  double radius(std::size_t k) const;
  double log_term() const noexcept { return log_term_; }

  const std::vector<double>& U_rew() const noexcept { return U_rew_; }
  const std::vector<double>& L_rew() const noexcept { return L_rew_; }
  const Matrix& U_cost() const noexcept { return U_cost_; }
  const Matrix& L_cost() const noexcept { return L_cost_; }

 private:
  std::vector<double> reward_width_;
  std::vector<double> cost_width_;
  double log_term_;

  std::vector<std::int64_t> counts_;
  std::vector<double> reward_sum_;
  Matrix cost_sum_;  // d x K

  std::vector<double> U_rew_, L_rew_;
  Matrix U_cost_, L_cost_;
};

}  // namespace ksb::policy
