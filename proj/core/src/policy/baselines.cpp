#include "ksb/policy/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ksb/lp/packing.hpp"

namespace ksb::policy {

std::int64_t bz12_exploration_length(std::int64_t T, std::size_t K, double theta) {
  const double len = theta * std::cbrt(static_cast<double>(K)) *
                     std::pow(static_cast<double>(T), 2.0 / 3.0);
  const auto t1 = std::max(static_cast<std::int64_t>(K),
                           static_cast<std::int64_t>(std::floor(len * (1.0 + 1e-12))));
  return std::min(t1, T);
}

Fsw18Policy::Fsw18Policy(env::PublicView view, double alpha, double beta, bool update,
                         std::uint64_t seed)
    : view_(std::move(view)),
      alpha_(alpha),
      beta_(beta),
      update_(update),
      rng_(seed),
      successes_(view_.n, view_.K),
      plays_(view_.K, 0),
      consumed_(view_.d, 0.0) {
  if (!view_.is_bnrm)
    throw InvalidArgument("FSW18 needs per-product demand feedback (network revenue management)");
}

double Fsw18Policy::sample_beta(double a, double b) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng_);
  const double y = gb(rng_);
  return x + y > 0.0 ? x / (x + y) : 0.5;
}

double Fsw18Policy::posterior_mean(std::size_t j, std::size_t k) const {
  return (alpha_ + successes_(j, k)) / (alpha_ + beta_ + static_cast<double>(plays_[k]));
}

std::size_t Fsw18Policy::choose(std::int64_t t) {
  const std::size_t K = view_.K;
  const std::size_t n = view_.n;
  Matrix q(n, K);
  if (!frozen_.empty()) {
    q = frozen_;
  } else {
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        const double s = successes_(j, k);
        q(j, k) = sample_beta(alpha_ + s, beta_ + static_cast<double>(plays_[k]) - s);
      }
  }

  lp::Budget budget{static_cast<double>(view_.T), view_.B};
  if (update_) {
    budget.horizon = static_cast<double>(view_.T - t + 1);
    for (std::size_t i = 0; i < view_.d; ++i)
      budget.inventory[i] = std::max(0.0, view_.B[i] - consumed_[i]);
  }
  const auto sol = lp::solve_packing(lp::build_dlp(view_.prices, view_.consumption, q, budget));

  std::size_t best = 0;
  for (std::size_t k = 1; k < K; ++k)
    if (sol.x[k] > sol.x[best]) best = k;
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
  double acc = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    acc += budget.horizon > 0.0 ? sol.x[k] / budget.horizon : 0.0;
    if (u < acc) return k;
  }
  return best;
}

void Fsw18Policy::observe(const Observation& obs) {
  ++plays_[obs.action];
  for (std::size_t j = 0; j < obs.demand.size(); ++j)
    successes_(j, obs.action) += obs.demand[j];
  for (std::size_t i = 0; i < view_.d; ++i) consumed_[i] += obs.cost[i];
}

PdPolicy::PdPolicy(env::PublicView view, std::optional<double> eps)
    : view_(std::move(view)),
      cost_scale_(view_.d, 0.0),
      plays_(view_.K, 0),
      reward_sum_(view_.K, 0.0),
      cost_sum_(view_.d, view_.K),
      v_(view_.d, view_.d == 0 ? 0.0 : 1.0 / static_cast<double>(view_.d)) {
  reward_scale_ = 0.0;
  for (double cap : view_.reward_cap) reward_scale_ = std::max(reward_scale_, cap);
  if (reward_scale_ <= 0.0) reward_scale_ = 1.0;

  // Costs are scaled to [0,1] and budgets equalized at the smallest
  // scaled budget, which leaves the multiplier c_i * Bhat_min / B_i.
  double bhat_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < view_.d; ++i) {
    double cap = 0.0;
    for (std::size_t k = 0; k < view_.K; ++k) cap = std::max(cap, view_.consumption_cap(i, k));
    if (cap > 0.0) bhat_min = std::min(bhat_min, view_.B[i] / cap);
  }
  if (!std::isfinite(bhat_min)) bhat_min = static_cast<double>(view_.T);
  for (std::size_t i = 0; i < view_.d; ++i) cost_scale_[i] = bhat_min / view_.B[i];

  eps_ = eps.value_or(std::sqrt(std::log(static_cast<double>(view_.d + 1)) / bhat_min));
  c_rad_ = std::log(static_cast<double>(view_.d + 1) * static_cast<double>(view_.K) *
                    static_cast<double>(view_.T));
}

double PdPolicy::radius(double mean, std::int64_t n) const {
  const double nn = static_cast<double>(n);
  return std::sqrt(c_rad_ * mean / nn) + c_rad_ / nn;
}

std::size_t PdPolicy::choose(std::int64_t) {
  const std::size_t K = view_.K;
  for (std::size_t k = 0; k < K; ++k)
    if (plays_[k] == 0) return k;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  double best_score = -kInf;
  double best_ucb = -kInf;
  for (std::size_t k = 0; k < K; ++k) {
    const double nk = static_cast<double>(plays_[k]);
    const double r = reward_sum_[k] / nk;
    const double ucb = std::min(1.0, r + radius(r, plays_[k]));
    double denom = 0.0;
    for (std::size_t i = 0; i < view_.d; ++i) {
      const double c = cost_sum_(i, k) / nk;
      const double lcb = std::max(0.0, c - radius(c, plays_[k]));
      denom += v_[i] * lcb;
    }
    const double score = denom <= 1e-12 ? kInf : ucb / denom;
    if (score > best_score || (score == best_score && ucb > best_ucb)) {
      best = k;
      best_score = score;
      best_ucb = ucb;
    }
  }
  return best;
}

void PdPolicy::observe(const Observation& obs) {
  const std::size_t k = obs.action;
  ++plays_[k];
  reward_sum_[k] += obs.reward / reward_scale_;
  if (view_.d == 0) return;
  double total = 0.0;
  for (std::size_t i = 0; i < view_.d; ++i) {
    const double c = std::min(1.0, obs.cost[i] * cost_scale_[i]);
    cost_sum_(i, k) += c;
    v_[i] *= std::pow(1.0 + eps_, c);
    total += v_[i];
  }
  for (double& v : v_) v /= total;
}

}  // namespace ksb::policy
