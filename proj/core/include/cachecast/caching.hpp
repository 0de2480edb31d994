#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cachecast/combinatorics.hpp"
#include "cachecast/gf2.hpp"
#include "cachecast/rational.hpp"

namespace cachecast::caching {

/// Problem parameters. `replication` = K*M/N is the number of users that
/// cache each subfile; scheme construction requires it to be an integer,
/// rate evaluation does not.
struct CachingConfig {
  int num_files = 0;           // N
  int num_users = 0;           // K
  Rational cache_size;         // M, in files, 0 <= M <= N
  int subfile_bits = 8;
  Rational replication;        // K*M/N
  bool integral_replication = false;
  int r = 0;                   // replication as int; valid when integral
  std::uint64_t subfiles_per_file = 0;  // C(K, r); valid when integral
  std::uint64_t file_bits = 0;          // subfile_bits * C(K, r); valid when integral
};

/// Validates and derives a config. Throws std::domain_error when M is
/// outside [0, N] or a parameter is non-positive.
CachingConfig make_config(int num_files, int num_users, const Rational& cache_size,
                          int subfile_bits = 8);

/// Subfile X_{file, subset}: `subset` is an r-element subset of the users,
/// as a bitmask (bit k-1 <=> user k).
struct SubfileId {
  int file = 0;  // 1-based
  std::uint32_t subset = 0;
  friend auto operator<=>(const SubfileId&, const SubfileId&) = default;
};

/// "X1{2,3}"
std::string subfile_label(const SubfileId& id);

/// 1-based file index demanded by each user.
using DemandVector = std::vector<int>;

/// Number of distinct files in the demand.
int distinct_demands(const DemandVector& demand);

/// Throws std::domain_error unless demand has K entries in 1..N.
void validate_demand(const CachingConfig& cfg, const DemandVector& demand);

/// Sorted distinct file indices of the demand.
std::vector<int> demanded_files(const DemandVector& demand);

/// Messages of the index coding problem induced by a demand: subfiles of
/// demanded files, ordered file-major then colex by subset.
std::vector<SubfileId> demanded_messages(const CachingConfig& cfg, const DemandVector& demand);

/// count[t] = number of demand vectors with exactly t distinct files
/// = C(N, t) * surjections(K, t); the counts sum to N^K.
std::map<int, std::uint64_t> demand_census(int num_files, int num_users);

/// Symmetric batch placement: each file split into C(K, r) subfiles
/// indexed by r-subsets in colex order; user k caches exactly the
/// subfiles whose subset contains k.
class Prefetching {
 public:
  static Prefetching symmetric_batch(const CachingConfig& cfg,
                                     const std::vector<gf2::BitVec>& files);

  const CachingConfig& config() const { return cfg_; }
  const std::vector<std::uint32_t>& subsets() const { return subsets_; }

  const gf2::BitVec& payload(const SubfileId& id) const;
  bool caches(int user, const SubfileId& id) const { return (id.subset >> (user - 1)) & 1; }
  std::vector<SubfileId> user_cache(int user) const;
  std::uint64_t cached_bits(int user) const;

  /// Concatenates the subfiles of a file back in colex order.
  gf2::BitVec reassemble(int file) const;

 private:
  CachingConfig cfg_;
  std::vector<std::uint32_t> subsets_;   // colex-ordered r-subsets of [K]
  std::vector<gf2::BitVec> payloads_;    // file-major, colex-minor
};

/// N files of file_bits pseudorandom bits from a recorded seed.
std::vector<gf2::BitVec> generate_files(const CachingConfig& cfg, std::uint64_t seed);

}  // namespace cachecast::caching
