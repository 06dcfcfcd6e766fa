#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ksb/env/instance.hpp"
#include "ksb/matrix.hpp"
#include "ksb/policy/policy.hpp"

namespace ksb::policy {

/// Exploration length of the explore-then-exploit baseline:
/// max(K, floor(theta K^(1/3) T^(2/3))), capped at T.
std::int64_t bz12_exploration_length(std::int64_t T, std::size_t K, double theta);

/// Thompson sampling with a DLP re-solve every period (network revenue
/// management only). Each period draws q~ from independent Beta posteriors,
/// solves the DLP on q~ and plays action k with probability x_k / horizon;
/// the remaining mass goes to the action with the largest x_k.
class Fsw18Policy final : public Policy {
 public:
  Fsw18Policy(env::PublicView view, double alpha, double beta, bool update, std::uint64_t seed);

  std::size_t choose(std::int64_t t) override;
  void observe(const Observation& obs) override;

  /// Posterior mean of the purchase probability of product j at action k.
  double posterior_mean(std::size_t j, std::size_t k) const;

  /// Replaces posterior sampling by fixed means (for tests).
  void freeze(Matrix q) { frozen_ = std::move(q); }

 private:
  double sample_beta(double a, double b);

  env::PublicView view_;
  double alpha_, beta_;
  bool update_;
  std::mt19937_64 rng_;
  Matrix successes_;  // n x K
  std::vector<std::int64_t> plays_;
  std::vector<double> consumed_;
  Matrix frozen_;
};

/// Primal-dual bandits with knapsacks: optimistic rewards, pessimistic costs
/// and multiplicative-weights resource prices. Each period plays the largest
/// UCB(reward) / (v . LCB(cost)); a denominator <= 1e-12 counts as +inf.
class PdPolicy final : public Policy {
 public:
  PdPolicy(env::PublicView view, std::optional<double> eps);

  std::size_t choose(std::int64_t t) override;
  void observe(const Observation& obs) override;

  double eps() const noexcept { return eps_; }
  const std::vector<double>& duals() const noexcept { return v_; }

  /// sqrt(C v / n) + C / n with C = log((d+1) K T).
  double radius(double mean, std::int64_t n) const;

 private:
  env::PublicView view_;
  double reward_scale_ = 1.0;
  std::vector<double> cost_scale_;  // per resource: B_hat_min / B_i
  double eps_ = 0.0;
  double c_rad_ = 0.0;

  std::vector<std::int64_t> plays_;
  std::vector<double> reward_sum_;
  Matrix cost_sum_;  // d x K, scaled
  std::vector<double> v_;
};

}  // namespace ksb::policy
