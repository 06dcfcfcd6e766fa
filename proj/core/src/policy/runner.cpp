#include "ksb/policy/runner.hpp"

#include "ksb/policy/baselines.hpp"
#include "ksb/policy/ls2slp.hpp"
#include "ksb/policy/tweaked_lp.hpp"

namespace ksb::policy {

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const env::Instance& inst,
                                    env::Seed seed) {
  spec.validate();
  env::validate(inst);
  auto view = env::public_view(inst);
  const std::uint64_t rng_seed = env::policy_seed(seed);
  switch (spec.kind) {
    case PolicyKind::LS2SLP: {
      LsOptions opts;
      opts.s = spec.s;
      opts.gamma = spec.gamma;
      opts.update = spec.update;
      return std::make_unique<Ls2slpPolicy>(std::move(view), opts, rng_seed);
    }
    case PolicyKind::BZ12: {
      LsOptions opts;
      opts.s = 0;
      opts.gamma = spec.gamma;
      opts.update = spec.update;
      opts.single_epoch_end = bz12_exploration_length(view.T, view.K, spec.theta);
      opts.budget_override = view.K + view.d;
      return std::make_unique<Ls2slpPolicy>(std::move(view), opts, rng_seed);
    }
    case PolicyKind::TweakedLP:
      return std::make_unique<TweakedLpPolicy>(tweaked_lp_plan(inst, spec.gamma));
    case PolicyKind::FSW18:
      return std::make_unique<Fsw18Policy>(std::move(view), spec.prior_alpha, spec.prior_beta,
                                           spec.update, rng_seed);
    case PolicyKind::PD:
      return std::make_unique<PdPolicy>(std::move(view), spec.eps);
  }
  throw InvalidArgument("unknown policy kind");
}

PolicyRun run(Policy& policy, const env::Instance& inst, env::Seed seed, env::StockoutRule rule) {
  env::Environment environment(inst, seed, rule);
  PolicyRun out;
  out.budget = policy.switch_budget();
  auto& rec = out.record;
  rec.seed = seed;
  rec.action_log.reserve(static_cast<std::size_t>(env::horizon(inst)));

  const std::size_t K = env::num_actions(inst);
  while (!environment.state().stopped) {
    const std::int64_t t = environment.state().t + 1;
    std::size_t k = policy.choose(t);
    if (k >= K) throw InvalidArgument("policy chose an action out of range");
    const auto& last = environment.state().last_action;
    if (out.budget && last && *last != k && environment.state().switches_used >= *out.budget) {
      k = *last;
      ++rec.guard_trips;
    }
    const auto outcome = environment.step(k);
    rec.action_log.push_back(static_cast<std::uint32_t>(k));
    policy.observe(Observation{k, outcome.reward, outcome.cost, outcome.demand});
  }

  rec.revenue = environment.state().cum_revenue;
  rec.switches = environment.state().switches_used;
  rec.stop_time = environment.state().t;
  if (const auto* plans = policy.plans()) out.plans = *plans;
  out.gamma = policy.gamma();
  out.gamma_clamped = policy.gamma_clamped();
  return out;
}

PolicyRun run_policy_detailed(const PolicySpec& spec, const env::Instance& inst, env::Seed seed,
                              env::StockoutRule rule) {
  auto policy = make_policy(spec, inst, seed);
  return run(*policy, inst, seed, rule);
}

env::RunRecord run_policy(const PolicySpec& spec, const env::Instance& inst, env::Seed seed,
                          env::StockoutRule rule) {
  return run_policy_detailed(spec, inst, seed, rule).record;
}

}  // namespace ksb::policy
