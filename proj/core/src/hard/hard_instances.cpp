#include "ksb/hard/hard_instances.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ksb/policy/runner.hpp"
#include "ksb/policy/schedule.hpp"
#include "ksb/policy/tweaked_lp.hpp"

namespace ksb::hard {

std::size_t minus_product(std::size_t d, std::size_t k) { return k * (d + 1) + k % (d + 1); }

std::size_t plus_product(std::size_t d, std::size_t k) {
  return k * (d + 1) + (k + 1) % (d + 1);
}

HardBnrm build_hard_bnrm(std::int64_t T, std::size_t d, std::size_t K, const MuMatrix& mu) {
  if (T < 1) throw InvalidArgument("T must be >= 1");
  if (d < 1) throw InvalidArgument("the hard family needs d >= 1");
  if (K < 2) throw InvalidArgument("the hard family needs K >= 2");
  if (mu.mu1.size() != K || mu.mu2.size() != K)
    throw DimensionMismatch(fmt::format("mu must have {} columns", K));

  const std::size_t block = d + 1;
  const std::size_t n = K * block;
  HardBnrm out;
  auto& inst = out.instance;
  inst.T = T;
  inst.B.assign(d, static_cast<double>(T) / 2.0);
  inst.prices = Matrix(n, K, 0.0);
  inst.consumption = Matrix(d, n, 0.0);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < d; ++i) inst.consumption(i, k * block + 1 + i) = 1.0;

  Matrix q(n, K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    const std::size_t rev = k * block;
    inst.prices(rev, k) = 1.0;
    for (std::size_t m = 0; m < block; ++m) q(rev + m, k) = 0.5;
    q(minus_product(d, k), k) = 0.5 - mu.mu2[k];
    q(plus_product(d, k), k) = 0.5 + mu.mu2[k];
    q(rev, k) = 0.5 + mu.mu1[k];
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < K; ++k)
      if (!(q(j, k) >= 0.0 && q(j, k) <= 1.0))
        throw QOutOfRange(fmt::format("q[{}][{}] = {} lies outside [0,1]", j, k, q(j, k)));

  inst.demand.kind = env::DemandKind::BernoulliTable;
  inst.demand.table = std::move(q);
  if (K < 2 * block)
    out.warning = fmt::format("K = {} < 2(d+1) = {}: outside the lower-bound theorem's regime", K,
                              2 * block);
  return out;
}

MuMatrix lemma1_mu_for_eta(std::size_t d, double eta, std::optional<std::size_t> K) {
  if (d < 1) throw InvalidArgument("lemma1 mu needs d >= 1");
  if (!(eta >= 0.0)) throw InvalidArgument("eta must be >= 0");
  if (eta > 0.5) throw EtaTooLarge(fmt::format("eta = {} exceeds 1/2", eta));
  const std::size_t block = d + 1;
  const std::size_t k_total = K.value_or(block);
  MuMatrix mu;
  mu.mu1.assign(k_total, 0.0);
  mu.mu2.assign(k_total, eta);
  const double shift = eta / static_cast<double>(block);
  for (std::size_t k = 0; k < k_total; ++k) {
    if (k % block == 0) mu.mu1[k] = shift;
    if (k % block == d) mu.mu1[k] = -shift;
  }
  return mu;
}

Lemma1Mu lemma1_mu(std::int64_t T, std::size_t d, double alpha, double c0,
                   std::optional<std::size_t> K) {
  if (T < 1) throw InvalidArgument("T must be >= 1");
  if (!(alpha >= 0.0 && alpha < 0.5)) throw InvalidArgument("alpha must lie in [0, 1/2)");
  if (!(c0 >= 0.0)) throw InvalidArgument("c0 must be >= 0");
  Lemma1Mu out;
  out.eta = c0 * std::pow(static_cast<double>(T), -alpha);
  out.mu = lemma1_mu_for_eta(d, out.eta, K);
  return out;
}

namespace {

// Optimal value of the lower-bound program with x_l <= cap (l is 1-based).
// Substituting u = (T - sum_k x_k) / (2 eta) turns every resource row into
// x_i - x_{i+1} <= u, so with a = l-1 actions before l and b = d+1-l after
// it, the program reduces to
//   min (b+1) u + w - v  s.t.  (a+1) v + b w + (M + 2 eta) u >= T,
//                              v <= cap,  v <= w + b u,  u, v, w >= 0,
// where v = x_l, w = x_{d+1}, M = (a(a+1) + (b-1)b) / 2, and the value is
// T/2 - eta/(d+1) times the minimum. v = cap at the optimum, which leaves a
// two-variable covering problem with three candidate vertices.
double capped_value(double T, std::size_t d, double eta, std::size_t l, double cap) {
  const double a = static_cast<double>(l - 1);
  const double b = static_cast<double>(d + 1 - l);
  const double d1 = static_cast<double>(d + 1);
  if (eta == 0.0) return T / 2.0;
  if (l == d + 1) {
    // x_l = x_{d+1}: the chain only runs through the first d actions.
    const double m = a * (a + 1.0) / 2.0 + 2.0 * eta;
    const double u = std::max(0.0, T - (a + 1.0) * cap) / m;
    return T / 2.0 - eta * u / d1;
  }
  const double m = (a * (a + 1.0) + (b - 1.0) * b) / 2.0 + 2.0 * eta;
  const double r = T - (a + 1.0) * cap;
  double best = lp::kInfinity;
  auto consider = [&](double u, double w) {
    if (u < -1e-12 || w < -1e-12) return;
    if (b * w + m * u < r - 1e-9 * T || w + b * u < cap - 1e-9 * T) return;
    best = std::min(best, (b + 1.0) * u + w - cap);
  };
  consider(0.0, std::max(r / b, cap));
  consider(std::max(r / m, cap / b), 0.0);
  if (m != b * b) {
    const double u = (r - b * cap) / (m - b * b);
    consider(u, cap - b * u);
  }
  return T / 2.0 - eta * best / d1;
}

}  // namespace

Lemma1Values lemma1_closed_forms(double T, std::size_t d, double eta, double zeta) {
  if (d < 1) throw InvalidArgument("d must be >= 1");
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw InvalidArgument("zeta must lie in [0, 1]");
  const double d1 = static_cast<double>(d + 1);
  Lemma1Values v;
  v.J_full = T / 2.0;
  v.J.resize(d + 1);
  v.J_G.resize(d + 1);
  for (std::size_t l = 1; l <= d + 1; ++l) {
    v.J[l - 1] = capped_value(T, d, eta, l, 0.0);
    v.J_G[l - 1] = capped_value(T, d, eta, l, zeta * T / d1);
  }
  v.Delta = 4.0 * (1.0 - zeta) * eta / (static_cast<double>(d) * d1 * d1 + 4.0 * eta * d1);
  return v;
}

lp::PackingProgram lemma1_program(double T, std::size_t d, double eta) {
  if (d < 1) throw InvalidArgument("d must be >= 1");
  const std::size_t K = d + 1;
  const double shift = eta / static_cast<double>(K);
  std::vector<double> obj(K, 0.5);
  obj[0] += shift;
  obj[d] -= shift;
  lp::PackingProgram prog(std::move(obj));
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> row(K, 0.5);
    row[i] += eta;
    row[i + 1] -= eta;
    prog.add_resource_row(std::move(row), T / 2.0);
  }
  prog.add_time_row(T);
  return prog;
}

lp::PackingProgram lemma1_excluded(double T, std::size_t d, double eta, std::size_t l) {
  if (l < 1 || l > d + 1) throw InvalidArgument(fmt::format("l must lie in [1, {}]", d + 1));
  auto prog = lemma1_program(T, d, eta);
  prog.add_cap(l - 1, 0.0);
  return prog;
}

lp::PackingProgram lemma1_capped(double T, std::size_t d, double eta, double zeta, std::size_t l) {
  if (l < 1 || l > d + 1) throw InvalidArgument(fmt::format("l must lie in [1, {}]", d + 1));
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw InvalidArgument("zeta must lie in [0, 1]");
  auto prog = lemma1_program(T, d, eta);
  prog.add_cap(l - 1, zeta * T / static_cast<double>(d + 1));
  return prog;
}

bool GapReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const GapCheck& c) { return c.ok; });
}

std::vector<std::string> GapReport::mismatches() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.ok)
      out.push_back(fmt::format("{}: solver {:.12g} vs closed form {:.12g}", c.name, c.solver,
                                c.closed_form));
  return out;
}

namespace {

ProbeResult run_probe(std::int64_t T, std::size_t d, double eta, const Lemma1Values& forms,
                      const ProbeOptions& opts) {
  ProbeResult pr;
  pr.excluded = static_cast<std::size_t>(
                    std::max_element(forms.J.begin(), forms.J.end()) - forms.J.begin()) + 1;
  const double t = static_cast<double>(T);
  const auto sol = lp::solve_packing(lemma1_excluded(t, d, eta, pr.excluded));

  policy::TweakedPlan plan;
  plan.x = sol.x;
  plan.value = sol.value;
  plan.support = sol.support;
  const auto periods = policy::round_periods(sol.x, T);
  plan.blocks = policy::order_blocks(periods, std::nullopt);
  if (plan.blocks.empty()) plan.blocks.push_back({0, T});
  plan.blocks.back().length += T - policy::total_length(plan.blocks);
  for (const auto& b : plan.blocks) {
    pr.actions.push_back(b.action + 1);
    pr.lengths.push_back(b.length);
  }

  const auto inst = build_hard_bnrm(T, d, d + 1, lemma1_mu_for_eta(d, eta)).instance;
  pr.trials = opts.trials;
  pr.reference = forms.J_full;
  double sum = 0.0;
  double sq = 0.0;
  for (std::size_t trial = 0; trial < opts.trials; ++trial) {
    policy::TweakedLpPolicy pol(plan);
    const auto run = policy::run(pol, inst, env::Seed{opts.seed, trial});
    sum += run.record.revenue;
    sq += run.record.revenue * run.record.revenue;
    pr.max_switches = std::max(pr.max_switches, static_cast<double>(run.record.switches));
  }
  if (opts.trials > 0) {
    const double m = static_cast<double>(opts.trials);
    pr.mean_revenue = sum / m;
    if (opts.trials > 1) {
      const double var = std::max(0.0, (sq - m * pr.mean_revenue * pr.mean_revenue) / (m - 1.0));
      pr.stderr_revenue = std::sqrt(var / m);
    }
  }
  pr.shortfall = pr.reference - pr.mean_revenue;
  return pr;
}

}  // namespace

GapReport verify_gap(std::int64_t T, std::size_t d, double eta, double zeta,
                     std::optional<ProbeOptions> probe) {
  if (T < 1) throw InvalidArgument("T must be >= 1");
  if (d < 1) throw InvalidArgument("d must be >= 1");
  if (!(eta >= 0.0)) throw InvalidArgument("eta must be >= 0");
  if (eta > 0.5) throw EtaTooLarge(fmt::format("eta = {} exceeds 1/2", eta));
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw InvalidArgument("zeta must lie in [0, 1]");

  const double t = static_cast<double>(T);
  const auto forms = lemma1_closed_forms(t, d, eta, zeta);
  GapReport rep;
  rep.T = T;
  rep.d = d;
  rep.eta = eta;
  rep.zeta = zeta;
  rep.tolerance = 1e-8 * t;

  auto check = [&](std::string name, double solver, double closed, double tol) {
    rep.checks.push_back({std::move(name), solver, closed, std::abs(solver - closed) <= tol});
  };

  const double full = lp::solve_packing(lemma1_program(t, d, eta)).value;
  check("J_full", full, forms.J_full, rep.tolerance);
  double best_g = -lp::kInfinity;
  for (std::size_t l = 1; l <= d + 1; ++l) {
    const double j0 = lp::solve_packing(lemma1_excluded(t, d, eta, l)).value;
    check(fmt::format("J_{}", l), j0, forms.J[l - 1], rep.tolerance);
  }
  for (std::size_t l = 1; l <= d + 1; ++l) {
    const double jg = lp::solve_packing(lemma1_capped(t, d, eta, zeta, l)).value;
    check(fmt::format("J_{}^G", l), jg, forms.J_G[l - 1], rep.tolerance);
    best_g = std::max(best_g, jg);
  }
  check("Delta", (full - best_g) / full, forms.Delta, 1e-8);

  if (probe) rep.probe = run_probe(T, d, eta, forms, *probe);
  return rep;
}

nlohmann::json to_json(const GapReport& report) {
  nlohmann::json doc;
  doc["T"] = report.T;
  doc["d"] = report.d;
  doc["eta"] = report.eta;
  doc["zeta"] = report.zeta;
  doc["tolerance"] = report.tolerance;
  doc["ok"] = report.ok();
  auto& checks = doc["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"solver", c.solver},
                      {"closed_form", c.closed_form},
                      {"abs_error", std::abs(c.solver - c.closed_form)},
                      {"ok", c.ok}});
  if (report.probe) {
    const auto& p = *report.probe;
    doc["probe"] = {{"excluded_action", p.excluded},
                    {"actions", p.actions},
                    {"lengths", p.lengths},
                    {"trials", p.trials},
                    {"mean_revenue", p.mean_revenue},
                    {"stderr_revenue", p.stderr_revenue},
                    {"max_switches", p.max_switches},
                    {"J_full", p.reference},
                    {"shortfall", p.shortfall},
                    {"shortfall_per_period", p.shortfall / static_cast<double>(report.T)}};
  }
  return doc;
}

}  // namespace ksb::hard
