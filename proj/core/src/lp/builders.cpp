#include <cmath>
#include <string>

#include "ksb/lp/packing.hpp"

namespace ksb::lp {

std::string to_string(RowKind kind) {
  switch (kind) {
    case RowKind::Resource: return "resource";
    case RowKind::Time: return "time";
    case RowKind::RevenueFloor: return "revenue-floor";
    case RowKind::Cap: return "cap";
  }
  return "unknown";
}

PackingProgram& PackingProgram::add_row(RowKind kind, std::vector<double> coeffs, double rhs) {
  if (coeffs.size() != objective_.size())
    throw DimensionMismatch("add_row: row has " + std::to_string(coeffs.size()) +
                            " coefficients, program has " + std::to_string(objective_.size()) +
                            " variables");
  rows_.push_back(Row{kind, std::move(coeffs), rhs});
  return *this;
}

PackingProgram& PackingProgram::add_time_row(double horizon) {
  return add_row(RowKind::Time, std::vector<double>(objective_.size(), 1.0), horizon);
}

PackingProgram& PackingProgram::add_cap(std::size_t var, double cap) {
  if (var >= objective_.size()) throw InvalidArgument("add_cap: variable index out of range");
  std::vector<double> coeffs(objective_.size(), 0.0);
  coeffs[var] = 1.0;
  return add_row(RowKind::Cap, std::move(coeffs), cap);
}

void PackingProgram::validate() const {
  for (double c : objective_)
    if (!std::isfinite(c)) throw InvalidProgram("objective coefficients must be finite");
  std::size_t floors = 0;
  for (const auto& row : rows_) {
    if (row.coeffs.size() != objective_.size()) throw DimensionMismatch("row length mismatch");
    if (!std::isfinite(row.rhs) || row.rhs < 0.0)
      throw InvalidProgram(to_string(row.kind) + " row rhs must be finite and >= 0");
    for (double a : row.coeffs) {
      if (std::isnan(a)) throw InvalidProgram("NaN coefficient");
      if (std::isinf(a) && (row.kind != RowKind::Resource || a < 0.0))
        throw InvalidProgram("+inf coefficients are only allowed in resource rows");
    }
    if (row.kind == RowKind::RevenueFloor) ++floors;
  }
  if (floors > 1) throw InvalidProgram("at most one revenue-floor row is supported");
}

PackingProgram build_dlp(const Matrix& prices, const Matrix& consumption, const Matrix& means,
                         const Budget& budget) {
  const std::size_t n = prices.rows();
  const std::size_t K = prices.cols();
  const std::size_t d = consumption.rows();
  if (means.rows() != n || means.cols() != K)
    throw DimensionMismatch("build_dlp: means must be n x K like prices");
  if (consumption.cols() != n) throw DimensionMismatch("build_dlp: consumption must be d x n");
  if (budget.inventory.size() != d)
    throw DimensionMismatch("build_dlp: inventory length must equal d");

  std::vector<double> objective(K, 0.0);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t j = 0; j < n; ++j) objective[k] += prices(j, k) * means(j, k);

  PackingProgram prog(std::move(objective));
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> row(K, 0.0);
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t j = 0; j < n; ++j) row[k] += consumption(i, j) * means(j, k);
    prog.add_resource_row(std::move(row), budget.inventory[i]);
  }
  prog.add_time_row(budget.horizon);
  return prog;
}

PackingProgram build_dlp_g(std::span<const double> reward, const Matrix& cost,
                           const Budget& budget) {
  const std::size_t K = reward.size();
  const std::size_t d = cost.rows();
  if (cost.cols() != K && !(d == 0)) throw DimensionMismatch("build_dlp_g: cost must be d x K");
  if (budget.inventory.size() != d)
    throw DimensionMismatch("build_dlp_g: inventory length must equal d");

  PackingProgram prog(std::vector<double>(reward.begin(), reward.end()));
  for (std::size_t i = 0; i < d; ++i) {
    auto r = cost.row(i);
    prog.add_resource_row(std::vector<double>(r.begin(), r.end()), budget.inventory[i]);
  }
  prog.add_time_row(budget.horizon);
  return prog;
}

}  // namespace ksb::lp
