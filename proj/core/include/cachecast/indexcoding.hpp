#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cachecast/caching.hpp"
#include "cachecast/gf2.hpp"

namespace cachecast::indexcoding {

/// A receiver demands one message and knows a side-information subset that
/// never contains the demand. `interference` is everything else.
struct Receiver {
  int demand = 0;                  // message index, 0-based
  std::uint64_t side_info = 0;     // message-index mask
  std::uint64_t interference = 0;  // complement of {demand} and side_info
};

/// Index coding problem with side information, at most 64 messages.
/// Induced instances keep the subfile meaning of each message; standalone
/// instances loaded from JSON carry labels only.
struct IndexCodingInstance {
  std::size_t num_messages = 0;
  std::vector<std::string> labels;             // size num_messages
  std::vector<caching::SubfileId> subfiles;    // empty for standalone instances
  std::vector<Receiver> receivers;
};

/// The index coding problem of a caching delivery phase: one message per
/// subfile of a demanded file, one receiver per (user, missing subfile of
/// its demand); cached messages become side information. Receivers whose
/// demand sits in their own cache are trivially satisfied and omitted.
IndexCodingInstance induce(const caching::CachingConfig& cfg, const caching::Prefetching& pf,
                           const caching::DemandVector& demand);

/// The canonical generalized independent set: for the i-th leader (sorted
/// by user index), every subfile of its demanded file whose subset avoids
/// all leaders up to and including i. Its size is
/// C(K, r+1) - C(K - Ne, r+1).
std::vector<caching::SubfileId> canonical_independent_set(const caching::CachingConfig& cfg,
                                                          const caching::DemandVector& demand);

/// True when some receiver demands an element of `subset_mask` and holds
/// none of the rest as side information. Throws std::domain_error for the
/// empty set.
bool in_j_family(const IndexCodingInstance& instance, std::uint64_t subset_mask);

/// Generalized independence number: the largest set of messages all of
/// whose nonempty subsets pass in_j_family. Exhaustive over subsets with
/// failing-set pruning; throws std::length_error when num_messages > cap.
unsigned alpha_brute(const IndexCodingInstance& instance, unsigned cap = 16);

/// Minimum rank over all side-information fittings {v_i + e_{f(i)}}: the
/// optimal scalar linear index code length. Exhaustive over assignments of
/// the free side-information bits, receiver-major, with rank-monotone
/// pruning; a valid `lower_hint` (e.g. alpha) aborts the search as soon as
/// it is attained. Throws std::length_error when the total number of free
/// bits exceeds cap.
unsigned min_rank_brute(const IndexCodingInstance& instance, unsigned cap = 24,
                        unsigned lower_hint = 0);

/// True when every receiver can isolate its demand from the columns of L
/// modulo its side information; equivalent to the nonzero-weight condition
/// on row combinations over the decodable-set family.
bool is_valid_index_code(const IndexCodingInstance& instance, const gf2::BitMatrix& code_matrix);

/// {"messages":[...],"receivers":[{"f":...,"X":[...]},...]} (1-based).
std::string to_json_string(const IndexCodingInstance& instance);
IndexCodingInstance instance_from_json_string(const std::string& text);

}  // namespace cachecast::indexcoding
