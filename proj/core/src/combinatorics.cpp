#include "cachecast/combinatorics.hpp"

#include <bit>
#include <stdexcept>

namespace cachecast {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result > UINT64_MAX) throw std::overflow_error("binomial: value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t checked_pow(std::uint64_t base, int exponent) {
  if (exponent < 0) throw std::domain_error("checked_pow: negative exponent");
  unsigned __int128 result = 1;
  for (int i = 0; i < exponent; ++i) {
    result *= base;
    if (result > UINT64_MAX) throw std::overflow_error("checked_pow: value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t surjection_count(int num_elements, int num_targets) {
  if (num_targets < 0 || num_elements < 0) return 0;
  if (num_targets == 0) return num_elements == 0 ? 1 : 0;
  __int128 total = 0;
  for (int j = 0; j <= num_targets; ++j) {
    __int128 term = static_cast<__int128>(binomial(num_targets, j)) *
                    checked_pow(static_cast<std::uint64_t>(num_targets - j), num_elements);
    total += (j % 2 == 0) ? term : -term;
  }
  if (total < 0 || total > static_cast<__int128>(UINT64_MAX))
    throw std::overflow_error("surjection_count: value exceeds 64 bits");
  return static_cast<std::uint64_t>(total);
}

std::vector<std::uint32_t> subsets_of_size(int universe, int size) {
  if (universe < 0 || universe > 31) throw std::domain_error("subsets_of_size: universe must be in 0..31");
  if (size < 0 || size > universe) return {};
  if (size == 0) return {0};
  std::vector<std::uint32_t> result;
  result.reserve(binomial(universe, size));
  // Gosper's hack walks equal-popcount masks in ascending (= colex) order.
  std::uint32_t mask = (1u << size) - 1;
  const std::uint64_t limit = std::uint64_t{1} << universe;
  while (mask < limit) {
    result.push_back(mask);
    std::uint32_t lowest = mask & (~mask + 1);
    std::uint32_t ripple = mask + lowest;
    mask = ripple | (((mask ^ ripple) >> 2) / lowest);
  }
  return result;
}

std::size_t colex_rank(std::uint32_t mask) {
  std::size_t rank = 0;
  int seen = 0;
  while (mask != 0) {
    int pos = std::countr_zero(mask);
    mask &= mask - 1;
    rank += binomial(pos, ++seen);
  }
  return rank;
}

std::vector<int> mask_to_elements(std::uint32_t mask) {
  std::vector<int> elements;
  while (mask != 0) {
    int pos = std::countr_zero(mask);
    elements.push_back(pos + 1);
    mask &= mask - 1;
  }
  return elements;
}

std::uint32_t elements_to_mask(const std::vector<int>& elements) {
  std::uint32_t mask = 0;
  for (int e : elements) {
    if (e < 1 || e > 32) throw std::domain_error("elements_to_mask: element out of range");
    mask |= 1u << (e - 1);
  }
  return mask;
}

}  // namespace cachecast
