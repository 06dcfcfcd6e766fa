#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ksb/lp/packing.hpp"

namespace ksb::lp {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-10;

// Dense two-phase tableau. Columns are laid out as
// [structural (unpinned) | one slack or surplus per row | artificials].
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), a_(rows * cols, 0.0), rhs_(rows, 0.0), basis_(rows, 0),
        reduced_(cols, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<double>& rhs() { return rhs_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<double>& reduced() const { return reduced_; }
  double value() const { return value_; }

  // Loads costs and prices out the current basis.
  void set_costs(const std::vector<double>& costs) {
    costs_ = costs;
    for (std::size_t j = 0; j < n_; ++j) {
      double z = 0.0;
      for (std::size_t i = 0; i < m_; ++i) z += costs_[basis_[i]] * at(i, j);
      reduced_[j] = z - costs_[j];
    }
    value_ = 0.0;
    for (std::size_t i = 0; i < m_; ++i) value_ += costs_[basis_[i]] * rhs_[i];
  }

  void pivot(std::size_t r, std::size_t s) {
    const double p = at(r, s);
    for (std::size_t j = 0; j < n_; ++j) at(r, j) /= p;
    rhs_[r] /= p;
    at(r, s) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, s);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) -= f * at(r, j);
      at(i, s) = 0.0;
      rhs_[i] -= f * rhs_[r];
      if (rhs_[i] < 0.0 && rhs_[i] > -1e-12 * (1.0 + std::abs(rhs_[r]))) rhs_[i] = 0.0;
    }
    const double f = reduced_[s];
    if (f != 0.0) {
      for (std::size_t j = 0; j < n_; ++j) reduced_[j] -= f * at(r, j);
      reduced_[s] = 0.0;
      value_ -= f * rhs_[r];
    }
    basis_[r] = s;
  }

  // Runs Bland-rule iterations on columns [0, allowed) until optimal.
  // Returns false if some improving column has no positive entry.
  bool optimize(std::size_t allowed, std::size_t& pivots, std::size_t pivot_limit) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (reduced_[j] < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;

      std::size_t leave = m_;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(rhs_[i], 0.0) / a;
        if (leave == m_) {
          leave = i;
          best = ratio;
          continue;
        }
        const double tie = 1e-12 * std::max(1.0, best);
        if (ratio < best - tie || (ratio <= best + tie && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::min(best, ratio);
        }
      }
      if (leave == m_) return false;
      if (++pivots > pivot_limit)
        throw CycleGuardTripped("simplex exceeded " + std::to_string(pivot_limit) + " pivots");
      pivot(leave, enter);
    }
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> a_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<double> costs_;
  std::vector<double> reduced_;
  double value_ = 0.0;
};

}  // namespace

double max_relative_violation(const PackingProgram& prog, std::span<const double> x) {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (const auto& row : prog.rows()) {
    double lhs = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0.0) continue;  // 0 * inf = 0
      lhs += row.coeffs[k] * x[k];
    }
    const double scale = std::max(1.0, std::abs(row.rhs));
    const double viol = row.is_lower_bound() ? row.rhs - lhs : lhs - row.rhs;
    worst = std::max(worst, viol / scale);
  }
  return worst;
}

VertexSolution solve_packing(const PackingProgram& prog) {
  prog.validate();
  const std::size_t K = prog.num_vars();
  const auto& rows = prog.rows();
  const std::size_t m = rows.size();

  VertexSolution sol;
  sol.x.assign(K, 0.0);
  sol.duals.assign(m, 0.0);
  sol.pinned.assign(K, false);

  std::vector<std::size_t> free_vars;
  for (std::size_t k = 0; k < K; ++k) {
    for (const auto& row : rows)
      if (std::isinf(row.coeffs[k])) sol.pinned[k] = true;
    if (!sol.pinned[k]) free_vars.push_back(k);
  }

  if (free_vars.empty()) {
    // Only ">=" rows with positive rhs could be violated by x = 0.
    for (const auto& row : rows)
      if (row.is_lower_bound() && row.rhs > kFeasibilityTol * std::max(1.0, row.rhs))
        throw Infeasible("all variables pinned but the floor row requires a positive value");
    for (std::size_t i = 0; i < m; ++i) sol.basis.push_back({BasisEntry::Kind::Slack, i});
    sol.status = K == 0 ? SolveStatus::Optimal : SolveStatus::ForcedZero;
    return sol;
  }

  const std::size_t nf = free_vars.size();
  // A ">=" row with zero rhs is rewritten as "-a.x <= 0" so its slack can start basic.
  std::vector<bool> negated(m, false);
  std::vector<bool> needs_artificial(m, false);
  std::size_t num_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!rows[i].is_lower_bound()) continue;
    if (rows[i].rhs <= 0.0) {
      negated[i] = true;
    } else {
      needs_artificial[i] = true;
      ++num_art;
    }
  }

  const std::size_t art_begin = nf + m;
  const std::size_t n = art_begin + num_art;
  Tableau tab(m, n);
  std::vector<std::size_t> art_row;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = negated[i] ? -1.0 : 1.0;
    for (std::size_t c = 0; c < nf; ++c) tab.at(i, c) = sign * rows[i].coeffs[free_vars[c]];
    tab.rhs()[i] = sign * rows[i].rhs;
    if (needs_artificial[i]) {
      tab.at(i, nf + i) = -1.0;  // surplus
      const std::size_t a = art_begin + art_row.size();
      tab.at(i, a) = 1.0;
      tab.basis()[i] = a;
      art_row.push_back(i);
    } else {
      tab.at(i, nf + i) = 1.0;  // slack
      tab.basis()[i] = nf + i;
    }
  }

  std::size_t pivots = 0;
  const std::size_t pivot_limit = 50 * (n + m) + 1000;
  double rhs_scale = 1.0;
  for (const auto& row : rows) rhs_scale = std::max(rhs_scale, row.rhs);

  if (num_art > 0) {
    std::vector<double> phase1(n, 0.0);
    for (std::size_t a = art_begin; a < n; ++a) phase1[a] = -1.0;
    tab.set_costs(phase1);
    tab.optimize(n, pivots, pivot_limit);
    if (tab.value() < -kFeasibilityTol * rhs_scale)
      throw Infeasible("revenue floor cannot be met (phase-1 residual " +
                       std::to_string(-tab.value()) + ")");
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis()[i] < art_begin) continue;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(tab.at(i, j)) > kPivotTol) {
          tab.pivot(i, j);
          ++pivots;
          break;
        }
      }
    }
  }

  std::vector<double> costs(n, 0.0);
  for (std::size_t c = 0; c < nf; ++c) costs[c] = prog.objective()[free_vars[c]];
  tab.set_costs(costs);
  if (!tab.optimize(art_begin, pivots, pivot_limit))
    throw Unbounded("objective is unbounded; add a time row");

  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = tab.basis()[i];
    if (b < nf) {
      sol.x[free_vars[b]] = std::max(0.0, tab.rhs()[i]);
      sol.basis.push_back({BasisEntry::Kind::Structural, free_vars[b]});
    } else if (b < art_begin) {
      sol.basis.push_back({BasisEntry::Kind::Slack, b - nf});
    } else {
      sol.basis.push_back({BasisEntry::Kind::Slack, i});
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    const double d = tab.reduced()[nf + i];
    const double internal = needs_artificial[i] ? -d : d;
    sol.duals[i] = negated[i] ? -internal : internal;
  }

  const double support_tol = 1e-9 * rhs_scale;
  double value = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    if (sol.x[k] <= support_tol * 1e-3) sol.x[k] = 0.0;
    value += prog.objective()[k] * sol.x[k];
    if (sol.x[k] > support_tol) sol.support.push_back(k);
  }
  sol.value = value;
  sol.pivots = pivots;
  sol.status = SolveStatus::Optimal;
  return sol;
}

}  // namespace ksb::lp
