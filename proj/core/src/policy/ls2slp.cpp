#include "ksb/policy/ls2slp.hpp"

#include <algorithm>
#include <cmath>

namespace ksb::policy {

double ls_gamma_formula(const env::PublicView& view, std::int64_t t1) {
  if (view.d == 0 || view.B_min <= 0.0) return 1.0;
  const double d = static_cast<double>(view.d);
  const double n = static_cast<double>(view.n);
  const double K = static_cast<double>(view.K);
  const double T = static_cast<double>(view.T);
  const double correction = 3.0 * view.a_max * std::sqrt(d * n * std::log(d * K * T)) *
                            std::log(T) * static_cast<double>(t1) / view.B_min;
  return 1.0 - correction;
}

namespace {

std::vector<double> clamped_budget(const lp::Budget& budget) {
  std::vector<double> b = budget.inventory;
  for (double& v : b) v = std::max(0.0, v);
  return b;
}

void snapshot(EpochPlan& plan, const ConfidenceState& conf) {
  plan.U_rew = conf.U_rew();
  plan.L_rew = conf.L_rew();
  plan.U_cost = conf.U_cost();
  plan.L_cost = conf.L_cost();
}

}  // namespace

EpochPlan ls2slp_epoch(const ConfidenceState& conf, const env::PublicView& view, std::size_t l,
                       std::span<const std::int64_t> grid, double gamma, const lp::Budget& budget,
                       std::int64_t start, std::optional<std::size_t> prev) {
  if (l < 1 || l + 1 >= grid.size()) throw InvalidArgument("ls2slp_epoch: epoch out of range");
  const std::size_t K = view.K;
  const std::size_t d = view.d;
  const auto inv = clamped_budget(budget);
  const double horizon = std::max(0.0, budget.horizon);

  EpochPlan plan;
  plan.epoch = l;
  plan.start = start;
  plan.grid_end = grid[l];
  plan.gamma = gamma;
  plan.horizon = horizon;
  plan.budget = inv;
  snapshot(plan, conf);

  // First stage: the revenue every plausible model guarantees.
  lp::PackingProgram pes(plan.L_rew);
  for (std::size_t i = 0; i < d; ++i) {
    auto row = plan.U_cost.row(i);
    pes.add_resource_row({row.begin(), row.end()}, inv[i]);
  }
  pes.add_time_row(horizon);
  const auto pes_sol = lp::solve_packing(pes);
  plan.j_pes = pes_sol.value;

  plan.floor_coeffs = plan.U_rew;
  for (std::size_t k = 0; k < K; ++k)
    if (std::isinf(plan.floor_coeffs[k])) plan.floor_coeffs[k] = view.reward_cap[k];
  plan.floor_active = plan.j_pes > 0.0;

  // Second stage: push each action as far as optimism allows.
  std::vector<double> avg(K, 0.0);
  for (std::size_t j = 0; j < K; ++j) {
    std::vector<double> obj(K, 0.0);
    obj[j] = 1.0;
    lp::PackingProgram explore(std::move(obj));
    if (plan.floor_active)
      explore.add_revenue_floor(plan.floor_coeffs, plan.j_pes * (1.0 - 1e-9));
    for (std::size_t i = 0; i < d; ++i) {
      auto row = plan.L_cost.row(i);
      explore.add_resource_row({row.begin(), row.end()}, inv[i]);
    }
    explore.add_time_row(horizon);
    std::vector<double> x;
    try {
      x = lp::solve_packing(explore).x;
    } catch (const lp::Infeasible&) {
      x = pes_sol.x;
    }
    for (std::size_t k = 0; k < K; ++k) avg[k] += x[k] / static_cast<double>(K);
    plan.exploration.push_back(std::move(x));
  }

  const double span_len = static_cast<double>(grid[l] - grid[l - 1]);
  plan.allocation.assign(K, 0.0);
  std::vector<double> lengths(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    plan.allocation[k] = horizon > 0.0 ? span_len / horizon * avg[k] : 0.0;
    lengths[k] = gamma * plan.allocation[k];
  }
  const auto periods = round_periods(lengths, grid[l] - grid[l - 1]);
  plan.blocks = order_blocks(periods, prev);
  return plan;
}

EpochPlan ls2slp_last_epoch(const ConfidenceState& conf, const env::PublicView& view,
                            std::span<const std::int64_t> grid, double gamma,
                            const lp::Budget& budget, std::int64_t start,
                            std::optional<std::size_t> prev, bool rebased) {
  const std::size_t K = view.K;
  const auto inv = clamped_budget(budget);
  const double horizon = std::max(0.0, budget.horizon);
  const std::int64_t T = view.T;
  const std::int64_t t_nu = grid.size() >= 2 ? grid[grid.size() - 2] : 0;

  EpochPlan plan;
  plan.epoch = grid.size() - 1;
  plan.exploit = true;
  plan.start = start;
  plan.grid_end = T;
  plan.gamma = gamma;
  plan.horizon = horizon;
  plan.budget = inv;
  snapshot(plan, conf);

  const auto rbar = conf.mean_rewards();
  const auto prog = lp::build_dlp_g(rbar, conf.mean_costs(), lp::Budget{horizon, inv});
  const auto sol = lp::solve_packing(prog);
  plan.lp_solution = sol.x;

  const double scale = rebased ? 1.0 : static_cast<double>(T - t_nu) / static_cast<double>(T);
  plan.allocation.assign(K, 0.0);
  std::vector<double> lengths(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    plan.allocation[k] = scale * sol.x[k];
    lengths[k] = gamma * plan.allocation[k];
  }
  const std::int64_t remaining = std::max<std::int64_t>(0, T - start);
  const auto periods = round_periods(lengths, remaining);
  plan.blocks = order_blocks(periods, prev);

  const std::int64_t slack = remaining - total_length(plan.blocks);
  if (plan.blocks.empty()) {
    if (remaining > 0) plan.blocks.push_back({prev.value_or(0), remaining});
  } else {
    plan.blocks.back().length += slack;
  }
  return plan;
}

Ls2slpPolicy::Ls2slpPolicy(env::PublicView view, LsOptions opts, std::uint64_t seed)
    : view_(std::move(view)), opts_(opts), conf_(view_), rng_(seed), consumed_(view_.d, 0.0) {
  const std::int64_t T = view_.T;
  const auto K = static_cast<int>(view_.K);
  if (opts_.single_epoch_end) {
    nu_ = 1;
    const std::int64_t t1 = std::clamp<std::int64_t>(*opts_.single_epoch_end, 0, T);
    grid_ = {0, t1, T};
  } else {
    nu_ = policy::nu(opts_.s, static_cast<int>(view_.d), K);
    grid_ = epoch_grid(T, view_.K, nu_);
  }
  if (opts_.gamma.formula) {
    const double raw = ls_gamma_formula(view_, grid_[1]);
    clamped_ = raw < 0.0;
    gamma_ = std::clamp(raw, 0.0, 1.0);
  } else {
    gamma_ = opts_.gamma.value;
  }
}

std::optional<std::size_t> Ls2slpPolicy::switch_budget() const {
  if (opts_.budget_override) return opts_.budget_override;
  return static_cast<std::size_t>(opts_.s);
}

void Ls2slpPolicy::plan_next(std::int64_t start) {
  const std::size_t l = next_epoch_++;
  conf_.refresh_bands();
  lp::Budget budget{static_cast<double>(view_.T), view_.B};
  if (opts_.update) {
    budget.horizon = static_cast<double>(view_.T - start);
    for (std::size_t i = 0; i < view_.d; ++i) budget.inventory[i] = view_.B[i] - consumed_[i];
  }
  if (static_cast<int>(l) <= nu_)
    plans_.push_back(ls2slp_epoch(conf_, view_, l, grid_, gamma_, budget, start, prev_));
  else
    plans_.push_back(
        ls2slp_last_epoch(conf_, view_, grid_, gamma_, budget, start, prev_, opts_.update));
  queue_ = plans_.back().blocks;
  queue_pos_ = 0;
  left_in_block_ = queue_.empty() ? 0 : queue_.front().length;
}

std::size_t Ls2slpPolicy::choose(std::int64_t t) {
  if (view_.K == 1) return 0;
  if (!prev_) prev_ = std::uniform_int_distribution<std::size_t>(0, view_.K - 1)(rng_);

  while (left_in_block_ == 0) {
    if (queue_pos_ + 1 < queue_.size()) {
      ++queue_pos_;
      left_in_block_ = queue_[queue_pos_].length;
    } else if (static_cast<int>(next_epoch_) <= nu_ + 1) {
      plan_next(t - 1);
    } else {
      return *prev_;
    }
  }
  --left_in_block_;
  return queue_[queue_pos_].action;
}

void Ls2slpPolicy::observe(const Observation& obs) {
  conf_.record(obs.action, obs.reward, obs.cost);
  for (std::size_t i = 0; i < view_.d; ++i) consumed_[i] += obs.cost[i];
  prev_ = obs.action;
}

}  // namespace ksb::policy
