#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cachecast/caching.hpp"
#include "cachecast/gf2.hpp"

namespace cachecast::delivery {

/// 0/1 matrix of the delivery scheme viewed as an index code: one row per
/// message (subfile of a demanded file), one column per transmission.
/// Every column is nonzero.
struct IndexCodeMatrix {
  gf2::BitMatrix matrix;
  std::vector<caching::SubfileId> message_index;  // row meaning
};

/// The broadcast symbols: symbols[j] is the XOR over k in labels[j] of
/// payload(X_{d_k, labels[j] minus k}).
struct TransmissionSet {
  std::vector<std::uint32_t> labels;  // (r+1)-subset masks, colex order
  std::vector<gf2::BitVec> symbols;
};

struct DeliveryResult {
  TransmissionSet transmissions;
  IndexCodeMatrix code;
};

/// One representative user per distinct demanded file: the lowest-indexed
/// user demanding it. Returned sorted ascending (1-based).
std::vector<int> choose_leaders(const caching::DemandVector& demand);

/// Leader-based delivery: emits Y_S for every (r+1)-subset S meeting the
/// leader set, in colex order. The transmission count is
/// C(K, r+1) - C(K - Ne, r+1).
DeliveryResult yma_transmissions(const caching::CachingConfig& cfg,
                                 const caching::Prefetching& pf,
                                 const caching::DemandVector& demand);

/// Recovers user `user`'s demanded file from uncorrupted symbols: cached
/// subfiles are read directly; each missing subfile is isolated by solving
/// for a symbol combination that matches its unit vector outside the
/// user's side information, then cancelling cached contributions. Throws
/// std::runtime_error if some subfile cannot be isolated (an invalid index
/// code; never the case for yma_transmissions output).
gf2::BitVec user_decode_linear(const caching::CachingConfig& cfg, const caching::Prefetching& pf,
                               const caching::DemandVector& demand, int user,
                               const IndexCodeMatrix& code,
                               const std::vector<gf2::BitVec>& symbols);

/// {"labels":[[...],...],"symbols":["<hex>",...],"bits_per_symbol":...}
std::string to_json_string(const TransmissionSet& transmissions, int subfile_bits);

}  // namespace cachecast::delivery
