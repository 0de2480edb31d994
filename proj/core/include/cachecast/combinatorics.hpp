#pragma once

#include <cstdint>
#include <vector>

namespace cachecast {

/// C(n, k) computed exactly; returns 0 when k > n or k < 0.
/// Throws std::overflow_error if the value does not fit in 64 bits.
std::uint64_t binomial(int n, int k);

/// n^k with overflow check.
std::uint64_t checked_pow(std::uint64_t base, int exponent);

/// Number of surjections from a K-element set onto a t-element set
/// (inclusion-exclusion).
std::uint64_t surjection_count(int num_elements, int num_targets);

/// All size-r subsets of {1..K} as bitmasks (bit k-1 <=> element k),
/// in colexicographic order, which for equal-popcount masks is plain
/// ascending numeric order.
std::vector<std::uint32_t> subsets_of_size(int universe, int size);

/// Position of `mask` within subsets_of_size(universe, popcount(mask)).
std::size_t colex_rank(std::uint32_t mask);

/// Sorted 1-based element list of a subset mask, e.g. 0b101 -> {1, 3}.
std::vector<int> mask_to_elements(std::uint32_t mask);

/// Inverse of mask_to_elements; elements must be in 1..32.
std::uint32_t elements_to_mask(const std::vector<int>& elements);

}  // namespace cachecast
