#include "ksb/policy/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ksb/error.hpp"

namespace ksb::policy {

int nu(int s, int d, int K) {
  if (K < 2) return 0;
  const int num = s - d - 1;
  if (num <= 0) return 0;
  return num / (K - 1);
}

std::vector<std::int64_t> epoch_grid(std::int64_t T, std::size_t K, int nu) {
  if (nu < 0) throw InvalidArgument("epoch_grid: nu must be >= 0");
  if (T < 1 || K < 1) throw InvalidArgument("epoch_grid: need T >= 1 and K >= 1");
  std::vector<std::int64_t> grid{0};
  const double denom = 2.0 - std::ldexp(1.0, -nu);
  const double logK = std::log(static_cast<double>(K));
  const double logT = std::log(static_cast<double>(T));
  for (int l = 1; l <= nu; ++l) {
    const double e = (2.0 - std::ldexp(1.0, -(l - 1))) / denom;
    // The relative nudge keeps exact powers (e.g. K^0 T^1) from flooring down.
    const double v = std::exp((1.0 - e) * logK + e * logT) * (1.0 + 1e-12);
    auto t = static_cast<std::int64_t>(std::floor(v));
    t = std::clamp(t, grid.back(), T);
    grid.push_back(t);
  }
  grid.push_back(T);
  return grid;
}

std::vector<std::int64_t> round_periods(std::span<const double> lengths, std::int64_t cap) {
  const std::size_t K = lengths.size();
  std::vector<std::int64_t> out(K, 0);
  std::vector<double> rem(K, 0.0);
  double sum = 0.0;
  std::int64_t floors = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const double len = std::max(0.0, lengths[k]);
    sum += len;
    out[k] = static_cast<std::int64_t>(std::floor(len + 1e-9));
    rem[k] = len - static_cast<double>(out[k]);
    floors += out[k];
  }
  const std::int64_t target =
      std::min(std::max<std::int64_t>(cap, 0), static_cast<std::int64_t>(std::floor(sum + 1e-9)));

  std::vector<std::size_t> order(K);
  std::iota(order.begin(), order.end(), 0);
  if (floors < target) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
    for (std::size_t idx = 0; floors < target && idx < K; ++idx) {
      if (rem[order[idx]] <= 0.0) break;
      ++out[order[idx]];
      ++floors;
    }
  }
  // Only reachable through rounding noise: trim the longest blocks.
  while (floors > target) {
    auto it = std::max_element(out.begin(), out.end());
    --*it;
    --floors;
  }
  return out;
}

std::vector<Block> order_blocks(std::span<const std::int64_t> periods,
                                std::optional<std::size_t> first) {
  std::vector<Block> blocks;
  if (first && *first < periods.size() && periods[*first] > 0)
    blocks.push_back({*first, periods[*first]});
  for (std::size_t k = 0; k < periods.size(); ++k) {
    if (periods[k] <= 0) continue;
    if (!blocks.empty() && blocks.front().action == k) continue;
    blocks.push_back({k, periods[k]});
  }
  return blocks;
}

std::int64_t total_length(std::span<const Block> blocks) {
  std::int64_t s = 0;
  for (const auto& b : blocks) s += b.length;
  return s;
}

}  // namespace ksb::policy
