#pragma once

#include <memory>
#include <vector>

#include "ksb/env/environment.hpp"
#include "ksb/env/instance.hpp"
#include "ksb/policy/policy.hpp"
#include "ksb/policy/spec.hpp"

namespace ksb::policy {

/// Builds the policy a spec describes. Learners receive only the public
/// view of `inst`; TweakedLP is clairvoyant and reads the true means.
std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const env::Instance& inst,
                                    env::Seed seed);

struct PolicyRun {
  env::RunRecord record;
  std::vector<EpochPlan> plans;
  std::optional<std::size_t> budget;
  double gamma = 1.0;
  bool gamma_clamped = false;
};

/// Plays `policy` to the end of the horizon. A switch beyond the policy's
/// budget is refused: the previous action is repeated and the refusal
/// counted in RunRecord::guard_trips.
PolicyRun run(Policy& policy, const env::Instance& inst, env::Seed seed,
              env::StockoutRule rule = env::StockoutRule::Void);

PolicyRun run_policy_detailed(const PolicySpec& spec, const env::Instance& inst, env::Seed seed,
                              env::StockoutRule rule = env::StockoutRule::Void);

/// Pure function of (spec, instance, seed, rule).
env::RunRecord run_policy(const PolicySpec& spec, const env::Instance& inst, env::Seed seed,
                          env::StockoutRule rule = env::StockoutRule::Void);

}  // namespace ksb::policy
