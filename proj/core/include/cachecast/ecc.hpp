#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cachecast/caching.hpp"
#include "cachecast/codes.hpp"
#include "cachecast/delivery.hpp"
#include "cachecast/rational.hpp"

namespace cachecast::ecc {

/// Delivery scheme that survives up to `delta` corrupted transmissions:
/// the inner index code (one symbol per YMA transmission) concatenated
/// with an outer [n, l, >=2*delta+1] block code. Every bit-plane of the
/// transmitted blocks is a codeword of the outer code.
struct ConcatenatedScheme {
  caching::CachingConfig cfg;
  caching::DemandVector demand;
  int delta = 0;
  std::vector<int> leaders;
  delivery::TransmissionSet inner;
  delivery::IndexCodeMatrix inner_code;
  codes::LinearCode outer;
  codes::SyndromeDecoder outer_decoder;

  std::size_t inner_length() const { return inner.symbols.size(); }
  std::size_t block_count() const { return outer.length(); }
};

/// Optimal number of index-coded transmissions for symmetric batch
/// prefetching: C(K, r+1) - C(K - distinct, r+1).
std::uint64_t min_rank_closed_form(int num_users, int replication, int distinct);

/// Concatenates the YMA delivery with the shortest outer code correcting
/// `delta` errors (the identity code when delta == 0).
ConcatenatedScheme build_scheme(const caching::CachingConfig& cfg, const caching::Prefetching& pf,
                                const caching::DemandVector& demand, int delta);

/// Same, with a caller-chosen outer code (dimension must equal the inner
/// length; distance must be at least 2*delta+1).
ConcatenatedScheme build_scheme_with_code(const caching::CachingConfig& cfg,
                                          const caching::Prefetching& pf,
                                          const caching::DemandVector& demand, int delta,
                                          const codes::LinearCode& outer);

/// The broadcast blocks: block j is the XOR of inner symbols i with
/// G[i][j] == 1.
std::vector<gf2::BitVec> transmit(const ConcatenatedScheme& scheme);

/// Blocks to corrupt: 0-based block index and the nonzero bit pattern to
/// XOR into it.
struct ErrorPattern {
  std::vector<std::pair<int, gf2::BitVec>> flips;
};

std::vector<gf2::BitVec> corrupt(std::vector<gf2::BitVec> blocks, const ErrorPattern& pattern);

struct DecodeOutcome {
  gf2::BitVec file;
  /// False only when some bit-plane syndrome fell outside the correction
  /// radius, which cannot happen with at most delta corrupted blocks.
  bool reliable = true;
};

/// Two-stage decoding: each bit-plane of the received blocks is syndrome
/// decoded with the outer code, recovering the inner symbols exactly when
/// at most delta blocks are corrupted; the inner linear decoder then
/// reconstructs the user's file.
DecodeOutcome receive_and_decode(const ConcatenatedScheme& scheme, const caching::Prefetching& pf,
                                 int user, const std::vector<gf2::BitVec>& received);

struct RateReport {
  Rational rate;  // transmissions / C(K, r), in files
  std::uint64_t transmissions = 0;
  std::uint64_t kappa = 0;
  int delta = 0;
};

/// Exact expectation over uniform demands of N2[kappa(d), 2*delta+1] /
/// C(K, r), via the demand census.
Rational average_rate(const caching::CachingConfig& cfg, int delta);

/// Worst-case demand rate: distinct count min(N, K).
Rational peak_rate(const caching::CachingConfig& cfg, int delta);

RateReport peak_rate_report(const caching::CachingConfig& cfg, int delta);
RateReport rate_report_for_distinct(const caching::CachingConfig& cfg, int distinct, int delta);

enum class RateKind { average, peak };

/// Memory/rate points {(r*N/K, rate(r)) : r = 0..K}.
std::vector<std::pair<Rational, Rational>> rate_vertices(int num_files, int num_users, int delta,
                                                         RateKind kind);

/// Lower convex envelope of rate_vertices evaluated at cache size M
/// (memory sharing between integer-replication schemes). Exact rational
/// arithmetic throughout.
Rational rate_envelope(int num_files, int num_users, int delta, const Rational& cache_size,
                       RateKind kind);

/// One corruption pattern of a sweep and whether all users decoded.
struct SweepResult {
  ErrorPattern pattern;
  bool ok = true;
};

struct SweepReport {
  std::vector<SweepResult> results;
  std::size_t failures = 0;
  bool all_ok() const { return failures == 0; }
};

/// Every block subset of size <= max_errors, with each corrupted block
/// taking both a single-bit and an all-bits payload.
SweepReport adversarial_sweep(const ConcatenatedScheme& scheme, const caching::Prefetching& pf,
                              const std::vector<gf2::BitVec>& files, int max_errors);

/// Seeded random patterns: uniform subset size in [0, max_errors], uniform
/// blocks, uniform nonzero payloads.
SweepReport random_sweep(const ConcatenatedScheme& scheme, const caching::Prefetching& pf,
                         const std::vector<gf2::BitVec>& files, int trials, std::uint64_t seed,
                         int max_errors);

/// Scheme file: config, demand, delta, leaders, transmission labels, outer
/// generator as bit strings, seed.
std::string scheme_to_json_string(const ConcatenatedScheme& scheme, std::uint64_t seed);

}  // namespace cachecast::ecc
