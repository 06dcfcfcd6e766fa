#include "ksb/env/instance.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ksb::env {

std::string to_string(DemandKind kind) {
  switch (kind) {
    case DemandKind::BernoulliTable: return "bernoulli_table";
    case DemandKind::Linear: return "linear";
    case DemandKind::Exponential: return "exponential";
    case DemandKind::Logit: return "logit";
  }
  return "unknown";
}

DemandKind demand_kind_from_string(std::string_view name) {
  if (name == "bernoulli_table") return DemandKind::BernoulliTable;
  if (name == "linear") return DemandKind::Linear;
  if (name == "exponential") return DemandKind::Exponential;
  if (name == "logit") return DemandKind::Logit;
  throw InvalidArgument(fmt::format("unknown demand model '{}'", name));
}

Matrix demand_means(const DemandModel& model, const Matrix& prices) {
  const std::size_t n = prices.rows();
  const std::size_t K = prices.cols();
  if (model.kind == DemandKind::BernoulliTable) {
    if (model.table.rows() != n || model.table.cols() != K)
      throw DimensionMismatch("bernoulli table must be n x K like the prices");
    return model.table;
  }
  if (n != 2)
    throw DimensionMismatch(
        fmt::format("{} demand is a two-product model, got n = {}", to_string(model.kind), n));

  Matrix q(2, K);
  for (std::size_t k = 0; k < K; ++k) {
    const double p1 = prices(0, k);
    const double p2 = prices(1, k);
    switch (model.kind) {
      case DemandKind::Linear:
        q(0, k) = std::max(0.0, 0.8 - 0.15 * p1);
        q(1, k) = std::max(0.0, 0.9 - 0.3 * p2);
        break;
      case DemandKind::Exponential:
        q(0, k) = 0.5 * std::exp(-0.5 * p1);
        q(1, k) = 0.9 * std::exp(-p2);
        break;
      case DemandKind::Logit: {
        const double e1 = std::exp(-p1);
        const double e2 = std::exp(-p2);
        q(0, k) = e1 / (1.0 + e1 + e2);
        q(1, k) = e2 / (1.0 + e1 + e2);
        break;
      }
      case DemandKind::BernoulliTable: break;
    }
  }
  return q;
}

namespace {

double max_entry(const Matrix& m) {
  double out = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (double v : m.row(r)) out = std::max(out, v);
  return out;
}

double min_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end());
}

void check_budget(std::int64_t T, const std::vector<double>& B) {
  if (T < 1) throw InvalidArgument("horizon T must be at least 1");
  for (double b : B)
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("inventories must be finite and > 0");
}

}  // namespace

double BnrmInstance::a_max() const { return max_entry(consumption); }
double BnrmInstance::p_max() const { return max_entry(prices); }
double BnrmInstance::B_min() const { return min_of(B); }

void BnrmInstance::validate() const {
  check_budget(T, B);
  if (K() == 0 || n() == 0) throw InvalidArgument("instance needs at least one action and product");
  if (consumption.rows() != d() || consumption.cols() != n())
    throw DimensionMismatch(
        fmt::format("consumption must be d x n = {} x {}, got {} x {}", d(), n(),
                    consumption.rows(), consumption.cols()));
  for (std::size_t j = 0; j < n(); ++j)
    for (double p : prices.row(j))
      if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("prices must be finite and >= 0");
  for (std::size_t i = 0; i < d(); ++i)
    for (double a : consumption.row(i))
      if (!(a >= 0.0) || !std::isfinite(a))
        throw InvalidArgument("consumption must be finite and >= 0");
  const Matrix q = means();
  for (std::size_t j = 0; j < q.rows(); ++j)
    for (double v : q.row(j))
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("demand probabilities must lie in [0,1]");
}

std::vector<double> BwkInstance::reward_means() const {
  std::vector<double> r;
  r.reserve(K());
  for (const auto& dist : reward) r.push_back(dist.mean);
  return r;
}

Matrix BwkInstance::cost_means() const {
  Matrix c(d(), K());
  for (std::size_t i = 0; i < d(); ++i)
    for (std::size_t k = 0; k < K(); ++k) c(i, k) = cost[i][k].mean;
  return c;
}

double BwkInstance::R_max() const {
  double out = 0.0;
  for (const auto& dist : reward) out = std::max(out, dist.scale);
  return out;
}

double BwkInstance::C_max() const {
  double out = 0.0;
  for (const auto& row : cost)
    for (const auto& dist : row) out = std::max(out, dist.scale);
  return out;
}

double BwkInstance::B_min() const { return min_of(B); }

void BwkInstance::validate() const {
  check_budget(T, B);
  if (K() == 0) throw InvalidArgument("instance needs at least one arm");
  if (cost.size() != d()) throw DimensionMismatch("cost must have one row per resource");
  auto check = [](const ScaledBernoulli& dist) {
    if (!(dist.scale > 0.0) || !std::isfinite(dist.scale))
      throw InvalidArgument("distribution scale must be finite and > 0");
    if (!(dist.mean >= 0.0 && dist.mean <= dist.scale))
      throw InvalidArgument("distribution mean must lie in [0, scale]");
  };
  for (const auto& dist : reward) check(dist);
  for (const auto& row : cost) {
    if (row.size() != K()) throw DimensionMismatch("cost rows must have K entries");
    for (const auto& dist : row) check(dist);
  }
}

std::int64_t horizon(const Instance& inst) {
  return std::visit([](const auto& i) { return i.T; }, inst);
}

std::size_t num_actions(const Instance& inst) {
  return std::visit([](const auto& i) { return i.K(); }, inst);
}

std::size_t num_resources(const Instance& inst) {
  return std::visit([](const auto& i) { return i.d(); }, inst);
}

const std::vector<double>& inventory(const Instance& inst) {
  return std::visit([](const auto& i) -> const std::vector<double>& { return i.B; }, inst);
}

void validate(const Instance& inst) {
  std::visit([](const auto& i) { i.validate(); }, inst);
}

std::vector<double> expected_reward(const Instance& inst) {
  if (const auto* bw = std::get_if<BwkInstance>(&inst)) return bw->reward_means();
  const auto& nrm = std::get<BnrmInstance>(inst);
  const Matrix q = nrm.means();
  std::vector<double> r(nrm.K(), 0.0);
  for (std::size_t k = 0; k < nrm.K(); ++k)
    for (std::size_t j = 0; j < nrm.n(); ++j) r[k] += nrm.prices(j, k) * q(j, k);
  return r;
}

Matrix expected_cost(const Instance& inst) {
  if (const auto* bw = std::get_if<BwkInstance>(&inst)) return bw->cost_means();
  const auto& nrm = std::get<BnrmInstance>(inst);
  const Matrix q = nrm.means();
  Matrix c(nrm.d(), nrm.K());
  for (std::size_t i = 0; i < nrm.d(); ++i)
    for (std::size_t k = 0; k < nrm.K(); ++k)
      for (std::size_t j = 0; j < nrm.n(); ++j) c(i, k) += nrm.consumption(i, j) * q(j, k);
  return c;
}

PublicView public_view(const Instance& inst) {
  PublicView v;
  v.T = horizon(inst);
  v.B = inventory(inst);
  v.K = num_actions(inst);
  v.d = num_resources(inst);
  v.B_min = min_of(v.B);
  v.consumption_cap = Matrix(v.d, v.K);

  if (const auto* nrm = std::get_if<BnrmInstance>(&inst)) {
    v.is_bnrm = true;
    v.n = nrm->n();
    v.prices = nrm->prices;
    v.consumption = nrm->consumption;
    v.a_max = nrm->a_max();
    for (std::size_t k = 0; k < v.K; ++k) {
      double sq = 0.0, cap = 0.0;
      for (std::size_t j = 0; j < v.n; ++j) {
        sq += nrm->prices(j, k) * nrm->prices(j, k);
        cap += nrm->prices(j, k);
      }
      v.reward_width.push_back(std::sqrt(sq));
      v.reward_cap.push_back(cap);
    }
    for (std::size_t i = 0; i < v.d; ++i) {
      double sq = 0.0, cap = 0.0;
      for (double a : nrm->consumption.row(i)) {
        sq += a * a;
        cap += a;
      }
      v.cost_width.push_back(std::sqrt(sq));
      for (std::size_t k = 0; k < v.K; ++k) v.consumption_cap(i, k) = cap;
    }
    return v;
  }

  const auto& bw = std::get<BwkInstance>(inst);
  v.n = 1;
  v.a_max = bw.C_max();
  v.reward_width.assign(v.K, bw.R_max());
  for (const auto& dist : bw.reward) v.reward_cap.push_back(dist.scale);
  v.cost_width.assign(v.d, bw.C_max());
  for (std::size_t i = 0; i < v.d; ++i)
    for (std::size_t k = 0; k < v.K; ++k) v.consumption_cap(i, k) = bw.cost[i][k].scale;
  return v;
}

std::string to_string(InventoryLevel level) {
  return level == InventoryLevel::Small ? "small" : "large";
}

InventoryLevel inventory_level_from_string(std::string_view name) {
  if (name == "small") return InventoryLevel::Small;
  if (name == "large") return InventoryLevel::Large;
  throw InvalidArgument(fmt::format("unknown inventory scenario '{}'", name));
}

BnrmInstance standard_instance(DemandKind model, InventoryLevel level, std::int64_t T) {
  if (model == DemandKind::BernoulliTable)
    throw InvalidArgument("the standard scenario needs a parametric demand model");
  BnrmInstance inst;
  inst.T = T;
  inst.prices = Matrix{{1.0, 1.0, 2.0, 4.0, 4.0}, {1.5, 2.0, 3.0, 4.0, 6.5}};
  inst.consumption = Matrix{{1.0, 1.0}, {3.0, 1.0}, {0.0, 5.0}};
  const double t = static_cast<double>(T);
  if (level == InventoryLevel::Small)
    inst.B = {0.3 * t, 0.5 * t, 0.7 * t};
  else
    inst.B = {1.5 * t, 1.2 * t, 3.0 * t};
  inst.demand.kind = model;
  return inst;
}

}  // namespace ksb::env
