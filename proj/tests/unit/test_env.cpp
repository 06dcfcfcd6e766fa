#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ksb/env/environment.hpp"
#include "ksb/env/instance_io.hpp"

using namespace ksb;
using namespace ksb::env;

namespace {

BnrmInstance table_instance(const Matrix& q, const Matrix& prices, const Matrix& consumption,
                            std::vector<double> B, std::int64_t T) {
  BnrmInstance inst;
  inst.T = T;
  inst.B = std::move(B);
  inst.prices = prices;
  inst.consumption = consumption;
  inst.demand = {DemandKind::BernoulliTable, q};
  return inst;
}

BwkInstance small_bwk(std::int64_t T, double budget) {
  BwkInstance inst;
  inst.T = T;
  inst.B = {budget, budget};
  inst.reward = {{0.5, 1.0}, {0.3, 2.0}, {0.9, 1.0}};
  inst.cost = {{{0.2, 1.0}, {0.6, 1.0}, {0.4, 1.0}}, {{0.5, 1.0}, {0.1, 1.0}, {0.9, 1.5}}};
  return inst;
}

std::vector<std::uint32_t> random_actions(std::mt19937_64& rng, std::size_t K, std::size_t T) {
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(K - 1));
  std::vector<std::uint32_t> out(T);
  // mostly long runs with occasional jumps
  std::uint32_t a = pick(rng);
  for (auto& v : out) {
    if (rng() % 7 == 0) a = pick(rng);
    v = a;
  }
  return out;
}

}  // namespace

TEST(DemandMeans, LinearExamples) {
  const Matrix q = demand_means({DemandKind::Linear, {}}, Matrix{{2.0, 4.0}, {3.0, 4.0}});
  EXPECT_DOUBLE_EQ(q(0, 0), 0.8 - 0.3);
  EXPECT_NEAR(q(1, 0), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(q(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(q(0, 1), 0.8 - 0.6);
}

TEST(DemandMeans, ExponentialExample) {
  const Matrix q = demand_means({DemandKind::Exponential, {}}, Matrix{{1.0}, {2.0}});
  EXPECT_DOUBLE_EQ(q(0, 0), 0.5 * std::exp(-0.5));
  EXPECT_DOUBLE_EQ(q(1, 0), 0.9 * std::exp(-2.0));
}

TEST(DemandMeans, LogitExample) {
  const Matrix q = demand_means({DemandKind::Logit, {}}, Matrix{{4.0}, {6.5}});
  const double den = 1.0 + std::exp(-4.0) + std::exp(-6.5);
  EXPECT_DOUBLE_EQ(q(0, 0), std::exp(-4.0) / den);
  EXPECT_DOUBLE_EQ(q(1, 0), std::exp(-6.5) / den);
}

TEST(DemandMeans, ParametricModelsNeedTwoProducts) {
  EXPECT_THROW(demand_means({DemandKind::Logit, {}}, Matrix(3, 2, 1.0)), DimensionMismatch);
  EXPECT_THROW(demand_means({DemandKind::BernoulliTable, Matrix(2, 2)}, Matrix(2, 3, 1.0)),
               DimensionMismatch);
}

TEST(DemandMeans, StandardScenarioProbabilitiesInRange) {
  for (auto kind : {DemandKind::Linear, DemandKind::Exponential, DemandKind::Logit}) {
    const auto q = standard_instance(kind, InventoryLevel::Small, 100).means();
    for (std::size_t j = 0; j < q.rows(); ++j)
      for (double v : q.row(j)) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
  }
}

TEST(Instance, StandardScenarioShape) {
  const auto inst = standard_instance(DemandKind::Linear, InventoryLevel::Large, 1000);
  EXPECT_EQ(inst.K(), 5u);
  EXPECT_EQ(inst.n(), 2u);
  EXPECT_EQ(inst.d(), 3u);
  EXPECT_EQ(inst.B, (std::vector<double>{1500.0, 1200.0, 3000.0}));
  EXPECT_DOUBLE_EQ(inst.a_max(), 5.0);
  EXPECT_DOUBLE_EQ(inst.p_max(), 6.5);
  const auto small = standard_instance(DemandKind::Linear, InventoryLevel::Small, 1000);
  EXPECT_EQ(small.B, (std::vector<double>{300.0, 500.0, 700.0}));
}

TEST(Instance, ValidationRejectsBadData) {
  auto inst = table_instance(Matrix{{1.5}}, Matrix{{1.0}}, Matrix{{1.0}}, {10.0}, 10);
  EXPECT_THROW(inst.validate(), InvalidArgument);
  inst.demand.table = Matrix{{0.5}};
  EXPECT_NO_THROW(inst.validate());
  inst.B = {0.0};
  EXPECT_THROW(inst.validate(), InvalidArgument);
  inst.B = {10.0};
  inst.prices = Matrix{{-1.0}};
  EXPECT_THROW(inst.validate(), InvalidArgument);
  inst.prices = Matrix{{1.0}};
  inst.consumption = Matrix{{1.0, 1.0}};
  EXPECT_THROW(inst.validate(), DimensionMismatch);
  inst.consumption = Matrix{{1.0}};
  inst.T = 0;
  EXPECT_THROW(inst.validate(), InvalidArgument);

  auto bw = small_bwk(10, 5.0);
  bw.reward[1].mean = 3.0;
  EXPECT_THROW(bw.validate(), InvalidArgument);
  bw = small_bwk(10, 5.0);
  bw.cost[0].pop_back();
  EXPECT_THROW(bw.validate(), DimensionMismatch);
  EXPECT_THROW((Matrix{{1.0, 2.0}, {3.0}}), DimensionMismatch);
}

TEST(Instance, PublicViewWidths) {
  const Instance inst = standard_instance(DemandKind::Linear, InventoryLevel::Small, 1000);
  const auto view = public_view(inst);
  EXPECT_TRUE(view.is_bnrm);
  EXPECT_EQ(view.K, 5u);
  EXPECT_DOUBLE_EQ(view.reward_width[4], std::sqrt(16.0 + 6.5 * 6.5));
  EXPECT_DOUBLE_EQ(view.cost_width[2], 5.0);
  EXPECT_DOUBLE_EQ(view.B_min, 300.0);
  const auto bw = public_view(Instance{small_bwk(10, 4.0)});
  EXPECT_FALSE(bw.is_bnrm);
  EXPECT_DOUBLE_EQ(bw.a_max, 1.5);
  EXPECT_DOUBLE_EQ(bw.reward_width[0], 2.0);
}

TEST(Environment, CertainDemandEarnsEveryPeriod) {
  const Instance inst = table_instance(Matrix{{1.0}, {1.0}}, Matrix{{1.0}, {1.5}},
                                       Matrix{{0.5, 0.5}}, {1e9}, 50);
  Environment env(inst, {3, 0});
  for (int t = 0; t < 50; ++t) {
    const auto out = env.step(0);
    EXPECT_DOUBLE_EQ(out.reward, 2.5);
    EXPECT_EQ(out.demand, (std::vector<double>{1.0, 1.0}));
  }
  EXPECT_TRUE(env.state().stopped);
  EXPECT_EQ(env.state().t, 50);
  EXPECT_DOUBLE_EQ(env.state().cum_revenue, 125.0);
  EXPECT_THROW(env.step(0), SteppedAfterStop);
}

TEST(Environment, NoDemandNeverStopsEarly) {
  const Instance inst = table_instance(Matrix{{0.0, 0.0}}, Matrix{{1.0, 2.0}}, Matrix{{1.0}},
                                       {1.0}, 40);
  Environment env(inst, {1, 1});
  for (int t = 0; t < 39; ++t) {
    EXPECT_FALSE(env.step(t % 2).stopped);
  }
  EXPECT_TRUE(env.step(0).stopped);
  EXPECT_EQ(env.state().cum_revenue, 0.0);
  EXPECT_EQ(env.state().t, 40);
}

TEST(Environment, BwkZeroAndCertainDraws) {
  BwkInstance bw;
  bw.T = 20;
  bw.B = {100.0};
  bw.reward = {{0.0, 1.0}, {2.0, 2.0}};
  bw.cost = {{{0.0, 1.0}, {1.0, 1.0}}};
  const Instance inst = bw;
  Environment env(inst, {2, 5});
  for (int t = 0; t < 10; ++t) {
    const auto out = env.step(0);
    EXPECT_EQ(out.reward, 0.0);
    EXPECT_EQ(out.cost, std::vector<double>{0.0});
    EXPECT_TRUE(out.demand.empty());
  }
  for (int t = 0; t < 10; ++t) EXPECT_EQ(env.step(1).reward, 2.0);
  EXPECT_DOUBLE_EQ(env.state().consumed[0], 10.0);
}

TEST(Environment, LogitFrequenciesMatchClosedForm) {
  const std::int64_t N = 1'000'000;
  BnrmInstance nrm;
  nrm.T = N;
  nrm.B = {1e12};
  nrm.prices = Matrix{{4.0}, {6.5}};
  nrm.consumption = Matrix{{1.0, 1.0}};
  nrm.demand.kind = DemandKind::Logit;
  const Instance inst = nrm;
  Environment env(inst, {2024, 0});
  double hits[2] = {0.0, 0.0};
  for (std::int64_t t = 0; t < N; ++t) {
    const auto out = env.step(0);
    hits[0] += out.demand[0];
    hits[1] += out.demand[1];
  }
  const double den = 1.0 + std::exp(-4.0) + std::exp(-6.5);
  const double q[2] = {std::exp(-4.0) / den, std::exp(-6.5) / den};
  for (int j = 0; j < 2; ++j) {
    const double se = std::sqrt(q[j] * (1 - q[j]) / static_cast<double>(N));
    EXPECT_NEAR(hits[j] / static_cast<double>(N), q[j], 3 * se) << "product " << j;
  }
}

TEST(Environment, ScaledBernoulliFrequencyMatchesMean) {
  const std::int64_t N = 1'000'000;
  BwkInstance bw;
  bw.T = N;
  bw.B = {1e12};
  bw.reward = {{0.3, 2.0}};
  bw.cost = {{{0.45, 1.5}}};
  const Instance inst = bw;
  Environment env(inst, {77, 3});
  double rew = 0.0, cost = 0.0;
  for (std::int64_t t = 0; t < N; ++t) {
    const auto out = env.step(0);
    rew += out.reward;
    cost += out.cost[0];
    ASSERT_TRUE(out.reward == 0.0 || out.reward == 2.0);
  }
  const double n = static_cast<double>(N);
  const double pr = 0.15, pc = 0.3;
  EXPECT_NEAR(rew / n, 0.3, 3 * 2.0 * std::sqrt(pr * (1 - pr) / n));
  EXPECT_NEAR(cost / n, 0.45, 3 * 1.5 * std::sqrt(pc * (1 - pc) / n));
}

TEST(Environment, RejectsOutOfRangeAction) {
  const Instance inst = standard_instance(DemandKind::Linear, InventoryLevel::Small, 10);
  Environment env(inst, {0, 0});
  EXPECT_THROW(env.step(5), InvalidArgument);
}

TEST(Environment, StockoutRuleNames) {
  for (auto r : {StockoutRule::Void, StockoutRule::Keep, StockoutRule::Generous})
    EXPECT_EQ(stockout_rule_from_string(to_string(r)), r);
  EXPECT_THROW(stockout_rule_from_string("lenient"), InvalidArgument);
}

TEST(Environment, VoidedPeriodRollsBack) {
  // resource 1 holds exactly three units and every period sells one
  const Instance inst = table_instance(Matrix{{1.0}}, Matrix{{2.0}}, Matrix{{1.0}}, {3.0}, 10);
  Environment env(inst, {0, 0});
  for (int t = 0; t < 3; ++t) EXPECT_FALSE(env.step(0).stopped);
  const auto out = env.step(0);
  EXPECT_TRUE(out.voided);
  EXPECT_TRUE(out.stopped);
  EXPECT_EQ(out.reward, 0.0);
  EXPECT_DOUBLE_EQ(env.state().consumed[0], 3.0);
  EXPECT_DOUBLE_EQ(env.state().cum_revenue, 6.0);
  EXPECT_EQ(env.state().t, 4);

  Environment keep(inst, {0, 0}, StockoutRule::Keep);
  for (int t = 0; t < 4; ++t) keep.step(0);
  EXPECT_TRUE(keep.state().stopped);
  EXPECT_DOUBLE_EQ(keep.state().cum_revenue, 8.0);

  Environment gen(inst, {0, 0}, StockoutRule::Generous);
  for (int t = 0; t < 10; ++t) gen.step(0);
  EXPECT_DOUBLE_EQ(gen.state().cum_revenue, 6.0);
  EXPECT_EQ(gen.state().t, 10);
}

TEST(EnvironmentProperty, ConservationAndMeter) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 60; ++rep) {
    const Instance inst =
        rep % 2 ? Instance{standard_instance(rep % 4 == 1 ? DemandKind::Linear : DemandKind::Logit,
                                             InventoryLevel::Small, 400)}
                : Instance{small_bwk(400, 60.0)};
    const auto actions = random_actions(rng, num_actions(inst), 400);
    Environment env(inst, {static_cast<std::uint64_t>(rep), 1});
    double revenue = 0.0;
    std::vector<double> consumed(num_resources(inst), 0.0);
    std::vector<std::uint32_t> played;
    for (auto a : actions) {
      if (env.state().stopped) break;
      const auto out = env.step(a);
      played.push_back(a);
      revenue += out.reward;
      for (std::size_t i = 0; i < consumed.size(); ++i) consumed[i] += out.cost[i];
      for (std::size_t i = 0; i < consumed.size(); ++i)
        EXPECT_LE(env.state().consumed[i], inventory(inst)[i] + 1e-9);
      EXPECT_EQ(env.state().switches_used, count_switches(played));
    }
    EXPECT_DOUBLE_EQ(env.state().cum_revenue, revenue);
    for (std::size_t i = 0; i < consumed.size(); ++i)
      EXPECT_DOUBLE_EQ(env.state().consumed[i], consumed[i]);
    EXPECT_LE(env.state().t, horizon(inst));

    const auto rec = replay_actions(inst, {static_cast<std::uint64_t>(rep), 1}, actions);
    EXPECT_EQ(rec.action_log, played);
    EXPECT_EQ(rec.revenue, env.state().cum_revenue);
    EXPECT_EQ(rec.stop_time, env.state().t);
    EXPECT_EQ(rec.switches, count_switches(rec.action_log));
  }
}

TEST(EnvironmentProperty, ReplayIsBitIdentical) {
  std::mt19937_64 rng(12);
  const Instance inst = standard_instance(DemandKind::Exponential, InventoryLevel::Small, 2000);
  const auto actions = random_actions(rng, 5, 2000);
  const auto a = replay_actions(inst, {9, 4}, actions);
  const auto b = replay_actions(inst, {9, 4}, actions);
  EXPECT_EQ(a.revenue, b.revenue);
  EXPECT_EQ(a.stop_time, b.stop_time);
  EXPECT_EQ(a.action_log, b.action_log);
  const auto c = replay_actions(inst, {9, 5}, actions);
  EXPECT_NE(a.revenue, c.revenue);
}

TEST(EnvironmentProperty, StoppingDominance) {
  std::mt19937_64 rng(31);
  int early = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const Instance inst =
        rep % 2 ? Instance{standard_instance(DemandKind::Linear, InventoryLevel::Small, 300)}
                : Instance{small_bwk(300, 40.0)};
    const Seed seed{static_cast<std::uint64_t>(rep), 0};
    const auto actions = random_actions(rng, num_actions(inst), 300);
    const auto ung = replay_actions(inst, seed, actions, StockoutRule::Void);
    const auto keep = replay_actions(inst, seed, actions, StockoutRule::Keep);
    const auto gen = replay_actions(inst, seed, actions, StockoutRule::Generous);
    EXPECT_LE(ung.stop_time, gen.stop_time);
    EXPECT_EQ(ung.stop_time, keep.stop_time);
    EXPECT_LE(ung.revenue, keep.revenue);
    EXPECT_LE(ung.revenue, gen.revenue + 1e-9);
    if (ung.stop_time < horizon(inst)) {
      ++early;
      // before the stockout period both criteria see the same sales
      const std::vector<std::uint32_t> prefix(actions.begin(), actions.begin() + ung.stop_time - 1);
      EXPECT_DOUBLE_EQ(replay_actions(inst, seed, prefix, StockoutRule::Generous).revenue,
                       ung.revenue);
    }
  }
  EXPECT_GT(early, 20);
}

TEST(InstanceIo, RoundTrip) {
  const Instance a = standard_instance(DemandKind::Logit, InventoryLevel::Large, 500);
  const Instance b = small_bwk(100, 30.0);
  const Instance c = table_instance(Matrix{{0.5, 0.25}}, Matrix{{1.0, 3.0}}, Matrix{{1.0}}, {4.0}, 8);
  for (const auto& inst : {a, b, c}) {
    const auto doc = instance_to_json(inst);
    const auto back = instance_from_json(doc);
    EXPECT_EQ(instance_to_json(back), doc);
    EXPECT_EQ(expected_reward(back), expected_reward(inst));
    EXPECT_EQ(expected_cost(back), expected_cost(inst));
  }
}

TEST(InstanceIo, ParsesDocumentsAndRejectsBadOnes) {
  const auto doc = nlohmann::json::parse(R"({"kind": "bwk", "T": 10, "B": [3],
      "reward": [{"mean": 0.5}], "cost": [[{"mean": 0.2, "scale": 2}]]})");
  const auto inst = std::get<BwkInstance>(instance_from_json(doc));
  EXPECT_EQ(inst.reward[0].scale, 1.0);
  EXPECT_EQ(inst.cost[0][0].scale, 2.0);

  auto bad = doc;
  bad["reward"][0]["mean"] = 1.5;
  EXPECT_THROW(instance_from_json(bad), InvalidArgument);
  bad = doc;
  bad["kind"] = "mdp";
  EXPECT_THROW(instance_from_json(bad), Error);
}
