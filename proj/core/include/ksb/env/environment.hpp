#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ksb/env/instance.hpp"
#include "ksb/env/rng.hpp"

namespace ksb::env {

/// What happens in the period where cumulative demand of some resource first
/// exceeds its initial inventory.
enum class StockoutRule {
  Void,      // the period earns and consumes nothing, and the horizon ends
  Keep,      // the period counts in full, then the horizon ends
  Generous,  // never stop early; sales that no longer fit are lost
};

std::string to_string(StockoutRule rule);
StockoutRule stockout_rule_from_string(std::string_view name);

class SteppedAfterStop : public Error {
 public:
  using Error::Error;
};

struct EnvState {
  std::int64_t t = 0;  // periods played so far
  std::vector<double> remaining;
  std::vector<double> consumed;
  double cum_revenue = 0.0;
  std::optional<std::size_t> last_action;
  std::size_t switches_used = 0;
  bool stopped = false;
};

/// One period's feedback. `demand` is empty for bandits with knapsacks.
struct Outcome {
  double reward = 0.0;
  std::vector<double> cost;
  std::vector<double> demand;
  bool voided = false;
  bool stopped = false;
};

class Environment {
 public:
  Environment(const Instance& inst, Seed seed, StockoutRule rule = StockoutRule::Void);

  /// Plays action k in the next period.
  Outcome step(std::size_t k);

  const EnvState& state() const noexcept { return state_; }
  const Instance& instance() const noexcept { return *inst_; }

 private:
  void draw(std::size_t k, Outcome& out) const;

  const Instance* inst_;
  std::uint64_t key_;
  StockoutRule rule_;
  Matrix q_;  // purchase probabilities, network revenue management only
  EnvState state_;
};

struct RunRecord {
  double revenue = 0.0;
  std::size_t switches = 0;
  std::int64_t stop_time = 0;
  std::vector<std::uint32_t> action_log;
  Seed seed;
  std::size_t guard_trips = 0;  // switches refused by the budget guard
};

/// Number of adjacent unequal pairs.
std::size_t count_switches(const std::vector<std::uint32_t>& actions);

/// Plays a fixed action sequence (stopping early if the environment stops).
RunRecord replay_actions(const Instance& inst, Seed seed, const std::vector<std::uint32_t>& actions,
                         StockoutRule rule = StockoutRule::Void);

}  // namespace ksb::env
