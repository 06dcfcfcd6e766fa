#include "ksb/env/environment.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace ksb::env {

namespace {

// Slack for comparing accumulated consumption against inventories that are
// products of decimal fractions and T.
bool exceeds(double used, double budget) { return used > budget + 1e-9 * (1.0 + budget); }

}  // namespace

std::string to_string(StockoutRule rule) {
  switch (rule) {
    case StockoutRule::Void: return "void";
    case StockoutRule::Keep: return "keep";
    case StockoutRule::Generous: return "generous";
  }
  return "unknown";
}

StockoutRule stockout_rule_from_string(std::string_view name) {
  if (name == "void") return StockoutRule::Void;
  if (name == "keep") return StockoutRule::Keep;
  if (name == "generous") return StockoutRule::Generous;
  throw InvalidArgument(fmt::format("unknown stockout rule '{}'", name));
}

Environment::Environment(const Instance& inst, Seed seed, StockoutRule rule)
    : inst_(&inst), key_(trial_key(seed)), rule_(rule) {
  validate(inst);
  if (const auto* nrm = std::get_if<BnrmInstance>(&inst)) q_ = nrm->means();
  state_.remaining = inventory(inst);
  state_.consumed.assign(state_.remaining.size(), 0.0);
}

void Environment::draw(std::size_t k, Outcome& out) const {
  const auto period = static_cast<std::uint64_t>(state_.t);
  if (const auto* nrm = std::get_if<BnrmInstance>(inst_)) {
    const Matrix& q = q_;
    out.demand.assign(nrm->n(), 0.0);
    out.cost.assign(nrm->d(), 0.0);
    for (std::size_t j = 0; j < nrm->n(); ++j) {
      if (uniform01(key_, period, j) < q(j, k)) out.demand[j] = 1.0;
    }
    if (rule_ == StockoutRule::Generous) {
      // Sell product by product while every resource still covers it.
      for (std::size_t j = 0; j < nrm->n(); ++j) {
        if (out.demand[j] == 0.0) continue;
        bool fits = true;
        for (std::size_t i = 0; i < nrm->d(); ++i)
          if (exceeds(state_.consumed[i] + out.cost[i] + nrm->consumption(i, j), nrm->B[i]))
            fits = false;
        if (!fits) {
          out.demand[j] = 0.0;
          continue;
        }
        for (std::size_t i = 0; i < nrm->d(); ++i) out.cost[i] += nrm->consumption(i, j);
      }
    } else {
      for (std::size_t j = 0; j < nrm->n(); ++j)
        for (std::size_t i = 0; i < nrm->d(); ++i)
          out.cost[i] += nrm->consumption(i, j) * out.demand[j];
    }
    for (std::size_t j = 0; j < nrm->n(); ++j) out.reward += nrm->prices(j, k) * out.demand[j];
    return;
  }

  const auto& bw = std::get<BwkInstance>(*inst_);
  auto sample = [&](const ScaledBernoulli& dist, std::uint64_t stream) {
    return uniform01(key_, period, stream) * dist.scale < dist.mean ? dist.scale : 0.0;
  };
  out.reward = sample(bw.reward[k], 0);
  out.cost.assign(bw.d(), 0.0);
  for (std::size_t i = 0; i < bw.d(); ++i) out.cost[i] = sample(bw.cost[i][k], 1 + i);
  if (rule_ == StockoutRule::Generous) {
    for (std::size_t i = 0; i < bw.d(); ++i) {
      if (exceeds(state_.consumed[i] + out.cost[i], bw.B[i])) {
        out.reward = 0.0;
        out.cost.assign(bw.d(), 0.0);
        break;
      }
    }
  }
}

Outcome Environment::step(std::size_t k) {
  if (state_.stopped) throw SteppedAfterStop("environment has already stopped");
  if (k >= num_actions(*inst_))
    throw InvalidArgument(fmt::format("action {} out of range", k));

  Outcome out;
  draw(k, out);
  ++state_.t;
  if (state_.last_action && *state_.last_action != k) ++state_.switches_used;
  state_.last_action = k;

  bool stockout = false;
  if (rule_ != StockoutRule::Generous) {
    for (std::size_t i = 0; i < out.cost.size(); ++i)
      if (exceeds(state_.consumed[i] + out.cost[i], inventory(*inst_)[i])) stockout = true;
  }
  if (stockout && rule_ == StockoutRule::Void) {
    out.voided = true;
    out.reward = 0.0;
    std::fill(out.cost.begin(), out.cost.end(), 0.0);
  }
  for (std::size_t i = 0; i < out.cost.size(); ++i) {
    state_.consumed[i] += out.cost[i];
    state_.remaining[i] = inventory(*inst_)[i] - state_.consumed[i];
  }
  state_.cum_revenue += out.reward;
  if (stockout || state_.t >= horizon(*inst_)) state_.stopped = true;
  out.stopped = state_.stopped;
  return out;
}

std::size_t count_switches(const std::vector<std::uint32_t>& actions) {
  std::size_t s = 0;
  for (std::size_t t = 1; t < actions.size(); ++t)
    if (actions[t] != actions[t - 1]) ++s;
  return s;
}

RunRecord replay_actions(const Instance& inst, Seed seed, const std::vector<std::uint32_t>& actions,
                         StockoutRule rule) {
  Environment env(inst, seed, rule);
  RunRecord rec;
  rec.seed = seed;
  for (std::uint32_t a : actions) {
    if (env.state().stopped) break;
    env.step(a);
    rec.action_log.push_back(a);
  }
  rec.revenue = env.state().cum_revenue;
  rec.switches = env.state().switches_used;
  rec.stop_time = env.state().t;
  return rec;
}

}  // namespace ksb::env
