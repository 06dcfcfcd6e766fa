#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ksb::policy {

/// Number of learning epochs a switching budget affords:
/// floor((s - d - 1) / (K - 1)), with non-positive values mapped to 0.
/// Returns 0 when K < 2.
int nu(int s, int d, int K);

/// Epoch ends t_0 = 0, t_1, ..., t_{nu+1} = T where
///   t_l = floor(K^(1 - e_l) T^(e_l)),  e_l = (2 - 2^-(l-1)) / (2 - 2^-nu).
std::vector<std::int64_t> epoch_grid(std::int64_t T, std::size_t K, int nu);

struct Block {
  std::size_t action = 0;
  std::int64_t length = 0;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Integer block lengths for fractional allocations: floor every entry, then
/// hand the leftover periods out one at a time in descending order of
/// fractional remainder (ties to the lower index). The total never exceeds
/// min(cap, floor(sum)).
std::vector<std::int64_t> round_periods(std::span<const double> lengths, std::int64_t cap);

/// Consecutive blocks for the positive entries of `periods`. The block of
/// `first` (when given and positive) comes first, the rest by action index.
std::vector<Block> order_blocks(std::span<const std::int64_t> periods,
                                std::optional<std::size_t> first);

std::int64_t total_length(std::span<const Block> blocks);

}  // namespace ksb::policy
