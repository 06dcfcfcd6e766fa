#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "ksb/env/environment.hpp"
#include "ksb/hard/hard_instances.hpp"
#include "ksb/lp/packing.hpp"
#include "ksb/policy/baselines.hpp"
#include "ksb/policy/confidence.hpp"
#include "ksb/policy/ls2slp.hpp"
#include "ksb/policy/runner.hpp"
#include "ksb/policy/schedule.hpp"
#include "ksb/policy/spec.hpp"
#include "ksb/policy/tweaked_lp.hpp"
#include "oracle.hpp"

using namespace ksb;
using namespace ksb::policy;
using env::DemandKind;
using env::InventoryLevel;

namespace {

const std::vector<std::pair<DemandKind, InventoryLevel>> kScenarios = {
    {DemandKind::Linear, InventoryLevel::Small},      {DemandKind::Linear, InventoryLevel::Large},
    {DemandKind::Exponential, InventoryLevel::Small}, {DemandKind::Exponential, InventoryLevel::Large},
    {DemandKind::Logit, InventoryLevel::Small},       {DemandKind::Logit, InventoryLevel::Large}};

std::int64_t grid_point(double T, double K, int nu, int l) {
  const double e = (2.0 - std::pow(2.0, -(l - 1))) / (2.0 - std::pow(2.0, -nu));
  return static_cast<std::int64_t>(std::floor(std::pow(K, 1.0 - e) * std::pow(T, e) + 1e-9));
}

PolicySpec ls(int s) {
  PolicySpec spec;
  spec.s = s;
  return spec;
}

env::BwkInstance two_arm_bwk(std::int64_t T) {
  env::BwkInstance bw;
  bw.T = T;
  bw.B = {static_cast<double>(T) / 2};
  bw.reward = {{0.9, 1.0}, {0.2, 1.0}};
  bw.cost = {{{0.5, 1.0}, {0.5, 1.0}}};
  return bw;
}

}  // namespace

TEST(Schedule, NuValues) {
  EXPECT_EQ(nu(8, 3, 5), 1);
  EXPECT_EQ(nu(12, 3, 5), 2);
  EXPECT_EQ(nu(16, 3, 5), 3);
  EXPECT_EQ(nu(3, 3, 5), 0);
  EXPECT_EQ(nu(0, 3, 5), 0);
  EXPECT_EQ(nu(100, 3, 1), 0);
}

TEST(Schedule, EpochGridValues) {
  EXPECT_EQ(epoch_grid(1000, 5, 1), (std::vector<std::int64_t>{0, 170, 1000}));
  EXPECT_EQ(epoch_grid(777, 5, 0), (std::vector<std::int64_t>{0, 777}));
  for (std::int64_t T : {1000, 5000, 10000})
    for (int v = 1; v <= 4; ++v) {
      const auto grid = epoch_grid(T, 5, v);
      ASSERT_EQ(grid.size(), static_cast<std::size_t>(v + 2));
      EXPECT_EQ(grid.front(), 0);
      EXPECT_EQ(grid.back(), T);
      for (int l = 1; l <= v; ++l) {
        EXPECT_EQ(grid[l], grid_point(static_cast<double>(T), 5.0, v, l)) << T << " " << v;
        EXPECT_LE(grid[l - 1], grid[l]);
      }
    }
  EXPECT_THROW(epoch_grid(100, 5, -1), InvalidArgument);
}

TEST(Schedule, RoundPeriods) {
  const std::vector<double> a{1.5, 2.5, 0.7};
  EXPECT_EQ(round_periods(a, 10), (std::vector<std::int64_t>{1, 2, 1}));
  EXPECT_EQ(round_periods(a, 3), (std::vector<std::int64_t>{1, 2, 0}));
  const std::vector<double> b{0.5, 0.5, 0.5, 0.5};
  EXPECT_EQ(round_periods(b, 100), (std::vector<std::int64_t>{1, 1, 0, 0}));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> len(1 + rep % 7);
    double sum = 0.0;
    for (auto& v : len) sum += v = u(rng);
    const std::int64_t cap = rep % 3 == 0 ? static_cast<std::int64_t>(sum / 2) : 1000;
    const auto out = round_periods(len, cap);
    std::int64_t total = 0, floors = 0;
    for (std::size_t k = 0; k < len.size(); ++k) {
      EXPECT_LE(out[k], static_cast<std::int64_t>(std::ceil(len[k])));
      floors += static_cast<std::int64_t>(len[k]);
      total += out[k];
    }
    EXPECT_EQ(total, std::min(cap, static_cast<std::int64_t>(std::floor(sum))));
    if (cap >= floors)
      for (std::size_t k = 0; k < len.size(); ++k)
        EXPECT_GE(out[k], static_cast<std::int64_t>(std::floor(len[k])));
  }
}

TEST(Schedule, OrderBlocks) {
  const std::vector<std::int64_t> p{3, 0, 2};
  EXPECT_EQ(order_blocks(p, 2), (std::vector<Block>{{2, 2}, {0, 3}}));
  EXPECT_EQ(order_blocks(p, 1), (std::vector<Block>{{0, 3}, {2, 2}}));
  EXPECT_EQ(order_blocks(p, std::nullopt), (std::vector<Block>{{0, 3}, {2, 2}}));
  EXPECT_EQ(total_length(order_blocks(p, 0)), 5);
}

TEST(Confidence, InitialBandsAndRadius) {
  const env::Instance inst = env::standard_instance(DemandKind::Linear, InventoryLevel::Small, 1000);
  const auto view = env::public_view(inst);
  ConfidenceState conf(view);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_TRUE(std::isinf(conf.U_rew()[k]));
    EXPECT_EQ(conf.L_rew()[k], 0.0);
    EXPECT_TRUE(std::isinf(conf.radius(k)));
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_TRUE(std::isinf(conf.U_cost()(i, k)));
      EXPECT_EQ(conf.L_cost()(i, k), 0.0);
    }
  }
  const std::vector<double> c{1.0, 2.0, 0.0};
  for (int n = 0; n < 9; ++n) conf.record(2, 3.0, c);
  EXPECT_DOUBLE_EQ(conf.radius(2), std::sqrt(std::log(4.0 * 5.0 * 1000.0) / 9.0));
  EXPECT_DOUBLE_EQ(conf.mean_reward(2), 3.0);
  EXPECT_DOUBLE_EQ(conf.mean_cost(1, 2), 2.0);
}

TEST(Confidence, BandsShrinkMonotonically) {
  const env::Instance inst = env::standard_instance(DemandKind::Logit, InventoryLevel::Small, 2000);
  const auto view = env::public_view(inst);
  ConfidenceState conf(view);
  env::Environment environment(inst, {5, 0}, env::StockoutRule::Generous);
  auto U = conf.U_rew();
  auto L = conf.L_rew();
  auto Uc = conf.U_cost();
  auto Lc = conf.L_cost();
  for (int round = 0; round < 40; ++round) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t k = (round + t / 8) % 5;
      const auto out = environment.step(k);
      conf.record(k, out.reward, out.cost);
    }
    conf.refresh_bands();
    for (std::size_t k = 0; k < 5; ++k) {
      EXPECT_LE(conf.U_rew()[k], U[k]);
      EXPECT_GE(conf.L_rew()[k], L[k]);
      EXPECT_LE(conf.L_rew()[k], conf.U_rew()[k]);
      for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_LE(conf.U_cost()(i, k), Uc(i, k));
        EXPECT_GE(conf.L_cost()(i, k), Lc(i, k));
      }
    }
    U = conf.U_rew();
    L = conf.L_rew();
    Uc = conf.U_cost();
    Lc = conf.L_cost();
  }
}

TEST(Ls2slp, FirstEpochIsUniform) {
  const env::Instance inst = env::standard_instance(DemandKind::Linear, InventoryLevel::Small, 1000);
  const auto view = env::public_view(inst);
  ConfidenceState conf(view);
  const auto grid = epoch_grid(1000, 5, 1);
  const auto plan = ls2slp_epoch(conf, view, 1, grid, 1.0, {1000.0, view.B}, 0, 3);
  EXPECT_EQ(plan.j_pes, 0.0);
  ASSERT_EQ(plan.exploration.size(), 5u);
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t k = 0; k < 5; ++k)
      EXPECT_DOUBLE_EQ(plan.exploration[j][k], j == k ? 1000.0 : 0.0);
  for (double n : plan.allocation) EXPECT_DOUBLE_EQ(n, 34.0);
  ASSERT_EQ(plan.blocks.size(), 5u);
  EXPECT_EQ(plan.blocks.front().action, 3u);
  EXPECT_EQ(total_length(plan.blocks), 170);
}

TEST(Ls2slp, ExplorationLpsMatchEnumeration) {
  const std::int64_t T = 4000;
  const env::Instance inst = two_arm_bwk(T);
  const auto view = env::public_view(inst);
  ConfidenceState conf(view);
  env::Environment environment(inst, {1, 2}, env::StockoutRule::Generous);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t k = t % 2;
    const auto out = environment.step(k);
    conf.record(k, out.reward, out.cost);
  }
  conf.refresh_bands();
  ASSERT_LT(conf.U_rew()[1], conf.L_rew()[0]);
  const auto grid = epoch_grid(T, 2, 2);
  const lp::Budget budget{4000.0, view.B};
  const auto plan = ls2slp_epoch(conf, view, 2, grid, 1.0, budget, grid[1], 1);
  EXPECT_GT(plan.j_pes, 0.0);

  // rebuild both stages independently and solve them by enumeration
  lp::PackingProgram pes(conf.L_rew());
  pes.add_resource_row({conf.U_cost()(0, 0), conf.U_cost()(0, 1)}, view.B[0]);
  pes.add_time_row(4000.0);
  const auto pes_ref = oracle::enumerate_vertices(pes);
  ASSERT_TRUE(pes_ref);
  EXPECT_NEAR(plan.j_pes, pes_ref->value, 1e-9 * pes_ref->value);
  for (std::size_t j = 0; j < 2; ++j) {
    std::vector<double> obj(2, 0.0);
    obj[j] = 1.0;
    lp::PackingProgram explore(obj);
    explore.add_revenue_floor(conf.U_rew(), pes_ref->value * (1.0 - 1e-9));
    explore.add_resource_row({conf.L_cost()(0, 0), conf.L_cost()(0, 1)}, view.B[0]);
    explore.add_time_row(4000.0);
    const auto ref = oracle::enumerate_vertices(explore);
    ASSERT_TRUE(ref);
    EXPECT_NEAR(plan.exploration[j][j], ref->value, 1e-7 * std::max(1.0, ref->value));
  }
  // the low arm is held back by the floor: far below an unconstrained T
  EXPECT_LT(plan.exploration[1][1], 0.5 * T);
  EXPECT_NEAR(plan.exploration[0][1], 0.0, 1e-9);
  double planned = 0.0;
  for (double n : plan.allocation) planned += n;
  EXPECT_LE(planned, static_cast<double>(grid[2] - grid[1]) + 1e-9);
}

TEST(Ls2slp, SingleActionPlaysThroughout) {
  env::BwkInstance bw;
  bw.T = 300;
  bw.B = {1000.0};
  bw.reward = {{0.5, 1.0}};
  bw.cost = {{{0.5, 1.0}}};
  const auto run = run_policy_detailed(ls(8), env::Instance{bw}, {1, 1});
  EXPECT_EQ(run.record.stop_time, 300);
  EXPECT_EQ(run.record.switches, 0u);
}

TEST(Ls2slp, LastEpochSupportAndSwitchBudget) {
  int runs = 0;
  for (const auto& [model, level] : kScenarios)
    for (std::uint64_t trial = 0; trial < 84; ++trial) {
      const env::Instance inst = env::standard_instance(model, level, 1000);
      const auto run = run_policy_detailed(ls(8), inst, {17, trial});
      ASSERT_FALSE(run.plans.empty());
      const auto& last = run.plans.back();
      if (!last.exploit) continue;  // stocked out during exploration
      ++runs;
      std::size_t support = 0;
      for (double x : last.lp_solution) support += x > 1e-9;
      EXPECT_LE(support, 4u);
      EXPECT_LE(run.record.switches, 8u);
      EXPECT_EQ(run.record.guard_trips, 0u);
    }
  EXPECT_GE(runs, 450);
}

TEST(Ls2slp, RealizedEpochsStayInsideGrid) {
  for (int s : {12, 16})
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      const env::Instance inst =
          env::standard_instance(DemandKind::Exponential, InventoryLevel::Large, 5000);
      const auto run = run_policy_detailed(ls(s), inst, {3, trial});
      for (const auto& plan : run.plans) {
        if (plan.exploit) continue;
        EXPECT_LE(plan.start + total_length(plan.blocks), plan.grid_end);
      }
      EXPECT_LE(run.record.switches, static_cast<std::size_t>(s));
    }
}

TEST(Ls2slp, GammaFormulaClampsAtBenchmarkScale) {
  const env::Instance inst = env::standard_instance(DemandKind::Linear, InventoryLevel::Small, 1000);
  const auto view = env::public_view(inst);
  const double raw = ls_gamma_formula(view, 170);
  const double expect =
      1.0 - 3.0 * 5.0 * std::sqrt(3.0 * 2.0 * std::log(15000.0)) * std::log(1000.0) * 170 / 300.0;
  EXPECT_NEAR(raw, expect, 1e-9);
  PolicySpec spec = ls(8);
  spec.gamma = GammaMode::from_formula();
  const auto run = run_policy_detailed(spec, inst, {1, 0});
  EXPECT_TRUE(run.gamma_clamped);
  EXPECT_EQ(run.gamma, 0.0);
}

TEST(Runner, Deterministic) {
  const env::Instance inst = env::standard_instance(DemandKind::Logit, InventoryLevel::Small, 2000);
  for (const char* name : {"LS(12)", "BZ12", "FSW18", "PD", "TweakedLP", "LS(8)-Update"}) {
    const auto spec = parse_label(name);
    const auto a = run_policy(spec, inst, {8, 2});
    const auto b = run_policy(spec, inst, {8, 2});
    EXPECT_EQ(a.action_log, b.action_log) << name;
    EXPECT_EQ(a.revenue, b.revenue) << name;
  }
}

TEST(Runner, GuardRefusesExtraSwitches) {
  class Flipper final : public Policy {
   public:
    std::size_t choose(std::int64_t t) override { return static_cast<std::size_t>(t % 2); }
    void observe(const Observation&) override {}
    std::optional<std::size_t> switch_budget() const override { return 3; }
  } flipper;
  const env::Instance inst = two_arm_bwk(50);
  const auto run = ksb::policy::run(flipper, inst, {1, 1}, env::StockoutRule::Generous);
  EXPECT_EQ(run.record.stop_time, 50);
  EXPECT_EQ(run.record.switches, 3u);
  EXPECT_EQ(env::count_switches(run.record.action_log), 3u);
  // locked on action 0 from t = 4; every odd t after that is refused
  EXPECT_EQ(run.record.guard_trips, 23u);
}

TEST(TweakedLp, SingleSupportNoSwitches) {
  env::BwkInstance bw;
  bw.T = 500;
  bw.B = {1e6};
  bw.reward = {{0.2, 1.0}, {0.7, 1.0}, {0.4, 1.0}};
  bw.cost = {{{0.1, 1.0}, {0.1, 1.0}, {0.1, 1.0}}};
  const env::Instance inst = bw;
  const auto plan = tweaked_lp_plan(inst, GammaMode::fixed(1.0));
  EXPECT_EQ(plan.lambda(), 1u);
  double total = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto rec = run_policy(parse_label("TweakedLP"), inst, {2, static_cast<std::uint64_t>(trial)});
    EXPECT_EQ(rec.switches, 0u);
    total += rec.revenue;
  }
  EXPECT_NEAR(total / 50.0, 350.0, 3 * std::sqrt(500 * 0.21 / 50.0));
}

TEST(TweakedLp, Lemma1InstancePlaysEachActionOnce) {
  const std::int64_t T = 300;
  const auto hard = hard::build_hard_bnrm(T, 2, 3, hard::lemma1_mu_for_eta(2, 0.1));
  const env::Instance inst = hard.instance;
  const auto plan = tweaked_lp_plan(inst, GammaMode::fixed(1.0));
  ASSERT_EQ(plan.lambda(), 3u);
  for (double x : plan.x) EXPECT_NEAR(x, 100.0, 1e-9);
  ASSERT_EQ(plan.blocks.size(), 3u);
  for (const auto& b : plan.blocks) EXPECT_EQ(b.length, 100);
  TweakedLpPolicy policy(plan);
  const auto run = ksb::policy::run(policy, inst, {1, 0}, env::StockoutRule::Generous);
  EXPECT_EQ(run.record.switches, 2u);
}

TEST(TweakedLp, GammaClampAndExpectedConsumption) {
  const env::Instance small = env::standard_instance(DemandKind::Linear, InventoryLevel::Small, 10000);
  const auto clamped = tweaked_lp_plan(small, GammaMode::from_formula());
  EXPECT_LT(clamped.gamma_raw, 0.0);
  EXPECT_TRUE(clamped.gamma_clamped);
  EXPECT_EQ(clamped.gamma, 0.0);
  EXPECT_NEAR(clamped.gamma_raw,
              1.0 - 2.0 * 5.0 / 3000.0 * std::sqrt(2.0 * 10000.0 * std::log(10000.0)), 1e-12);

  const env::Instance inst = env::standard_instance(DemandKind::Linear, InventoryLevel::Large, 10000);

  const auto plan = tweaked_lp_plan(inst, GammaMode::fixed(1.0));
  EXPECT_EQ(total_length(plan.blocks), 10000);
  const auto q = std::get<env::BnrmInstance>(inst).means();
  const auto& nrm = std::get<env::BnrmInstance>(inst);
  for (std::size_t i = 0; i < 3; ++i) {
    double expected = 0.0;
    for (const auto& b : plan.blocks)
      for (std::size_t j = 0; j < 2; ++j)
        expected += static_cast<double>(b.length) * nrm.consumption(i, j) * q(j, b.action);
    EXPECT_LE(expected, nrm.B[i] + 1e-6) << "resource " << i;
  }
}

TEST(Bz12, ExplorationLengthAndSwitchBound) {
  EXPECT_EQ(bz12_exploration_length(1000, 5, 1.0),
            static_cast<std::int64_t>(std::floor(std::cbrt(5.0) * 100.0 + 1e-9)));
  EXPECT_EQ(bz12_exploration_length(1000, 5, 1e-6), 5);
  EXPECT_EQ(bz12_exploration_length(10, 5, 100.0), 10);
  for (const auto& [model, level] : kScenarios)
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
      const env::Instance inst = env::standard_instance(model, level, 2000);
      const auto rec = run_policy(parse_label("BZ12"), inst, {4, trial});
      EXPECT_LE(rec.switches, 8u);
      EXPECT_EQ(rec.guard_trips, 0u);
    }
}

TEST(Fsw18, PosteriorMeanIsConjugate) {
  const env::Instance inst = env::standard_instance(DemandKind::Linear, InventoryLevel::Small, 100);
  Fsw18Policy policy(env::public_view(inst), 1.0, 1.0, false, 3);
  const std::vector<double> cost{0.0, 0.0, 0.0};
  int j = 0;
  for (int n = 1; n <= 12; ++n) {
    const std::vector<double> demand{n % 3 == 0 ? 1.0 : 0.0, 1.0};
    j += n % 3 == 0;
    policy.observe({2, 0.0, cost, demand});
    EXPECT_DOUBLE_EQ(policy.posterior_mean(0, 2), (1.0 + j) / (2.0 + n));
    EXPECT_DOUBLE_EQ(policy.posterior_mean(1, 2), (1.0 + n) / (2.0 + n));
  }
  EXPECT_DOUBLE_EQ(policy.posterior_mean(0, 0), 0.5);
}

TEST(Fsw18, FrozenPosteriorPlaysDlpMix) {
  const std::int64_t T = 1000;
  const env::Instance inst = env::standard_instance(DemandKind::Linear, InventoryLevel::Small, T);
  const auto& nrm = std::get<env::BnrmInstance>(inst);
  const auto x = lp::solve_packing(
                     lp::build_dlp(nrm.prices, nrm.consumption, nrm.means(), {1000.0, nrm.B}))
                     .x;
  std::vector<double> prob(5);
  std::size_t best = 0;
  double mass = 0.0;
  for (std::size_t k = 0; k < 5; ++k) {
    prob[k] = x[k] / 1000.0;
    mass += prob[k];
    if (x[k] > x[best]) best = k;
  }
  prob[best] += 1.0 - mass;

  Fsw18Policy policy(env::public_view(inst), 1.0, 1.0, false, 11);
  policy.freeze(nrm.means());
  const int N = 20000;
  std::vector<double> hits(5, 0.0);
  for (int t = 1; t <= N; ++t) hits[policy.choose(1)] += 1.0;
  for (std::size_t k = 0; k < 5; ++k) {
    const double se = std::sqrt(prob[k] * (1 - prob[k]) / N);
    EXPECT_NEAR(hits[k] / N, prob[k], 4 * se + 1e-12) << "action " << k;
  }
}

TEST(Pd, DefaultStepSize) {
  const env::Instance inst = env::standard_instance(DemandKind::Linear, InventoryLevel::Small, 1000);
  PdPolicy pd(env::public_view(inst), std::nullopt);
  EXPECT_DOUBLE_EQ(pd.eps(), std::sqrt(std::log(4.0) / 125.0));
  EXPECT_EQ(pd.duals(), std::vector<double>(3, 1.0 / 3.0));
}

TEST(Pd, NoResourcesReducesToUcb) {
  env::BwkInstance bw;
  bw.T = 5000;
  bw.reward = {{0.2, 1.0}, {0.8, 1.0}, {0.5, 1.0}};
  const env::Instance inst = bw;
  const auto rec = run_policy(parse_label("PD"), inst, {1, 0});
  const auto best = std::count(rec.action_log.begin(), rec.action_log.end(), 1u);
  EXPECT_GT(best, 4500);
  EXPECT_EQ(rec.action_log[0], 0u);
  EXPECT_EQ(rec.action_log[1], 1u);
  EXPECT_EQ(rec.action_log[2], 2u);
}

TEST(Pd, IdenticalFreeArmsPlayConstant) {
  env::BwkInstance bw;
  bw.T = 300;
  bw.B = {1e6, 1e6};
  bw.reward = {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  bw.cost = {{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}};
  const auto rec = run_policy(parse_label("PD"), env::Instance{bw}, {1, 0});
  for (std::size_t t = 3; t < rec.action_log.size(); ++t) EXPECT_EQ(rec.action_log[t], 0u);
}

TEST(PolicySpec, LabelRoundTrip) {
  std::vector<PolicySpec> specs;
  specs.push_back(ls(8));
  auto upd = ls(12);
  upd.update = true;
  specs.push_back(upd);
  auto formula = ls(16);
  formula.gamma = GammaMode::from_formula();
  specs.push_back(formula);
  PolicySpec bz;
  bz.kind = PolicyKind::BZ12;
  bz.theta = 0.5;
  specs.push_back(bz);
  PolicySpec ts;
  ts.kind = PolicyKind::FSW18;
  ts.prior_alpha = 2.0;
  ts.update = true;
  specs.push_back(ts);
  PolicySpec pd;
  pd.kind = PolicyKind::PD;
  pd.eps = 0.05;
  specs.push_back(pd);
  for (const auto& spec : specs) {
    EXPECT_EQ(parse_label(label(spec)), spec) << label(spec);
    EXPECT_EQ(spec_from_json(spec_to_json(spec)), spec) << label(spec);
  }
  EXPECT_EQ(label(upd), "LS(12)-Update");
  EXPECT_EQ(label(bz), "BZ12[theta=0.5]");
  EXPECT_EQ(label(formula), "LS(16)[gamma=formula]");
}

TEST(PolicySpec, RejectsBadInput) {
  EXPECT_THROW(parse_label("LS(x)"), InvalidArgument);
  EXPECT_THROW(parse_label("UCB"), InvalidArgument);
  EXPECT_THROW(parse_label("LS(-1)"), InvalidArgument);
  EXPECT_THROW(parse_label("BZ12[theta=0]"), InvalidArgument);
  EXPECT_THROW(parse_label("PD-Update"), InvalidArgument);
  EXPECT_THROW(parse_label("LS(8)[gamma=1.5]"), InvalidArgument);
  EXPECT_THROW(spec_from_json(nlohmann::json{{"s", 3}}), InvalidArgument);
  EXPECT_EQ(spec_from_json(nlohmann::json{{"kind", "LS2SLP_Update"}, {"s", 12}}).update, true);
  EXPECT_EQ(spec_from_json(nlohmann::json{{"label", "FSW18"}}).kind, PolicyKind::FSW18);
}
