#pragma once

// Dense packing linear programs and a Bland-rule simplex that returns basic
// (vertex) optimal solutions.
//
// A PackingProgram maximizes objective·x over x >= 0 subject to a short list
// of rows. Resource, time and cap rows are "<=" rows; a revenue-floor row is a
// ">=" row. Every rhs is nonnegative, so x = 0 satisfies all "<=" rows.
//
// Resource rows may carry the +infinity sentinel (an action with unknown
// consumption). Any variable with an infinite coefficient is pinned to zero
// before pivoting, which is the 0 * inf = 0 convention.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ksb/error.hpp"
#include "ksb/matrix.hpp"

namespace ksb::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Primal feasibility tolerance, relative to max(1, rhs).
inline constexpr double kFeasibilityTol = 1e-9;

enum class RowKind {
  Resource,      // sum_k a_k x_k <= rhs, coefficients may be +inf
  Time,          // sum_k x_k <= rhs
  RevenueFloor,  // sum_k a_k x_k >= rhs
  Cap,           // pinned-variable row, e.g. x_l <= rhs (rhs = 0 pins x_l)
};

std::string to_string(RowKind kind);

struct Row {
  RowKind kind = RowKind::Resource;
  std::vector<double> coeffs;
  double rhs = 0.0;

  bool is_lower_bound() const noexcept { return kind == RowKind::RevenueFloor; }
};

class PackingProgram {
 public:
  PackingProgram() = default;
  explicit PackingProgram(std::vector<double> objective) : objective_(std::move(objective)) {}

  std::size_t num_vars() const noexcept { return objective_.size(); }
  std::size_t num_rows() const noexcept { return rows_.size(); }

  const std::vector<double>& objective() const noexcept { return objective_; }
  std::vector<double>& objective() noexcept { return objective_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }

  PackingProgram& add_row(RowKind kind, std::vector<double> coeffs, double rhs);
  PackingProgram& add_resource_row(std::vector<double> coeffs, double rhs) {
    return add_row(RowKind::Resource, std::move(coeffs), rhs);
  }
  /// sum_k x_k <= horizon
  PackingProgram& add_time_row(double horizon);
  PackingProgram& add_revenue_floor(std::vector<double> coeffs, double floor) {
    return add_row(RowKind::RevenueFloor, std::move(coeffs), floor);
  }
  /// x_var <= cap
  PackingProgram& add_cap(std::size_t var, double cap);

  /// Throws InvalidProgram when the structural invariants do not hold.
  void validate() const;

 private:
  std::vector<double> objective_;
  std::vector<Row> rows_;
};

enum class SolveStatus {
  Optimal,
  ForcedZero,  // every variable pinned by the +inf sentinel; x = 0
};

/// Identity of a basic column: a structural variable or a row's slack.
struct BasisEntry {
  enum class Kind { Structural, Slack } kind;
  std::size_t index;  // variable index or row index

  friend bool operator==(const BasisEntry&, const BasisEntry&) = default;
};

struct VertexSolution {
  std::vector<double> x;
  double value = 0.0;
  std::vector<std::size_t> support;  // {k : x_k > support_tol}
  std::vector<BasisEntry> basis;
  /// One multiplier per row, signed so that the Lagrangian is
  /// c·x - sum_i duals[i] (row_i·x - rhs_i): >= 0 for "<=" rows, <= 0 for
  /// the ">=" floor row.
  std::vector<double> duals;
  std::vector<bool> pinned;  // variables removed by the +inf sentinel
  SolveStatus status = SolveStatus::Optimal;
  std::size_t pivots = 0;
};

class LpError : public Error {
 public:
  using Error::Error;
};
class InvalidProgram : public LpError {
 public:
  using LpError::LpError;
};
/// Objective unbounded; only possible when the caller omitted the time row.
class Unbounded : public LpError {
 public:
  using LpError::LpError;
};
/// The ">=" floor row cannot be met.
class Infeasible : public LpError {
 public:
  using LpError::LpError;
};
/// Pivot limit exceeded. Bland's rule cannot cycle, so this signals a bug.
class CycleGuardTripped : public LpError {
 public:
  using LpError::LpError;
};

/// Solves the program to a basic optimal solution. Entering columns are
/// chosen by Bland's rule (lowest index with an improving reduced cost) and
/// ratio-test ties go to the lowest basic index, so identical inputs always
/// give identical outputs. The support never exceeds num_rows().
VertexSolution solve_packing(const PackingProgram& prog);

/// Largest violation of any row by x, measured relative to max(1, |rhs|).
double max_relative_violation(const PackingProgram& prog, std::span<const double> x);

// ---------------------------------------------------------------------------
// Deterministic LP builders.

/// Horizon and inventory that an LP is written against. Inventory-updating
/// policies pass the remaining quantities here.
struct Budget {
  double horizon = 0.0;
  std::vector<double> inventory;
};

/// DLP for network revenue management:
///   max  sum_k (sum_j p_jk q_jk) x_k
///   s.t. sum_k (sum_j a_ij q_jk) x_k <= B_i,  sum_k x_k <= T,  x >= 0.
/// prices is n x K, consumption is d x n, means is n x K.
PackingProgram build_dlp(const Matrix& prices, const Matrix& consumption, const Matrix& means,
                         const Budget& budget);

/// Generalized DLP for stochastic packing with per-action reward means
/// (length K) and cost means (d x K).
PackingProgram build_dlp_g(std::span<const double> reward, const Matrix& cost,
                           const Budget& budget);

}  // namespace ksb::lp
