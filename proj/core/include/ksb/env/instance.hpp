#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ksb/error.hpp"
#include "ksb/matrix.hpp"

namespace ksb::env {

enum class DemandKind { BernoulliTable, Linear, Exponential, Logit };

std::string to_string(DemandKind kind);
/// Accepts "bernoulli_table", "linear", "exponential", "logit".
DemandKind demand_kind_from_string(std::string_view name);

struct DemandModel {
  DemandKind kind = DemandKind::BernoulliTable;
  Matrix table;  // n x K purchase probabilities, BernoulliTable only
};

/// Purchase probability of every product at every price vector (n x K).
/// The parametric models are two-product models:
///   linear       q1 = max(0, 0.8 - 0.15 p1),  q2 = max(0, 0.9 - 0.3 p2)
///   exponential  q1 = 0.5 exp(-0.5 p1),       q2 = 0.9 exp(-p2)
///   logit        qi = exp(-pi) / (1 + exp(-p1) + exp(-p2))
Matrix demand_means(const DemandModel& model, const Matrix& prices);

/// Network revenue management: K price vectors over n products that draw
/// on d resources. Demand is Bernoulli per product and period.
struct BnrmInstance {
  std::int64_t T = 0;
  std::vector<double> B;  // d initial inventories
  Matrix prices;          // n x K
  Matrix consumption;     // d x n
  DemandModel demand;

  std::size_t n() const noexcept { return prices.rows(); }
  std::size_t K() const noexcept { return prices.cols(); }
  std::size_t d() const noexcept { return B.size(); }

  Matrix means() const { return demand_means(demand, prices); }
  double a_max() const;
  double p_max() const;
  double B_min() const;

  void validate() const;
};

/// Takes the value `scale` with probability mean/scale and 0 otherwise.
/// scale = 1 is a plain Bernoulli.
struct ScaledBernoulli {
  double mean = 0.0;
  double scale = 1.0;
};

/// Bandits with knapsacks over K arms and d resources.
struct BwkInstance {
  std::int64_t T = 0;
  std::vector<double> B;
  std::vector<ScaledBernoulli> reward;             // K
  std::vector<std::vector<ScaledBernoulli>> cost;  // d x K

  std::size_t K() const noexcept { return reward.size(); }
  std::size_t d() const noexcept { return B.size(); }

  std::vector<double> reward_means() const;
  Matrix cost_means() const;  // d x K
  double R_max() const;
  double C_max() const;
  double B_min() const;

  void validate() const;
};

using Instance = std::variant<BnrmInstance, BwkInstance>;

std::int64_t horizon(const Instance& inst);
std::size_t num_actions(const Instance& inst);
std::size_t num_resources(const Instance& inst);
const std::vector<double>& inventory(const Instance& inst);
void validate(const Instance& inst);

/// Expected per-period reward (length K) and consumption (d x K) of each
/// action. Clairvoyant policies and the benchmark harness only.
std::vector<double> expected_reward(const Instance& inst);
Matrix expected_cost(const Instance& inst);

/// What a learning policy is allowed to know about an instance: everything
/// except the demand (or reward/cost) distributions.
struct PublicView {
  std::int64_t T = 0;
  std::vector<double> B;
  std::size_t K = 0;
  std::size_t d = 0;
  std::size_t n = 1;  // products; 1 for bandits with knapsacks

  std::vector<double> reward_width;  // K: ||p_k||_2 or R_max
  std::vector<double> cost_width;    // d: ||A_i||_2 or C_max
  std::vector<double> reward_cap;    // K: largest one-period reward
  Matrix consumption_cap;            // d x K: largest one-period consumption
  double a_max = 0.0;                // a_max or C_max
  double B_min = 0.0;

  bool is_bnrm = false;
  Matrix prices;       // n x K, network revenue management only
  Matrix consumption;  // d x n, network revenue management only
};

PublicView public_view(const Instance& inst);

enum class InventoryLevel { Small, Large };

std::string to_string(InventoryLevel level);
InventoryLevel inventory_level_from_string(std::string_view name);

/// The two-product, three-resource pricing problem used by the benchmark:
/// price vectors (1,1.5), (1,2), (2,3), (4,4), (4,6.5); consumption columns
/// (1,3,0) and (1,1,5); inventory (0.3,0.5,0.7)T (small) or (1.5,1.2,3)T (large).
BnrmInstance standard_instance(DemandKind model, InventoryLevel level, std::int64_t T);

}  // namespace ksb::env
