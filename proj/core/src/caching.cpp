#include "cachecast/caching.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace cachecast::caching {

CachingConfig make_config(int num_files, int num_users, const Rational& cache_size,
                          int subfile_bits) {
  if (num_files < 1 || num_users < 1)
    throw std::domain_error("make_config: N and K must be positive");
  if (num_users > 31) throw std::domain_error("make_config: at most 31 users supported");
  if (subfile_bits < 1) throw std::domain_error("make_config: subfile_bits must be positive");
  if (cache_size < Rational(0) || cache_size > Rational(num_files))
    throw std::domain_error("make_config: cache size must lie in [0, N]");

  CachingConfig cfg;
  cfg.num_files = num_files;
  cfg.num_users = num_users;
  cfg.cache_size = cache_size;
  cfg.subfile_bits = subfile_bits;
  cfg.replication = cache_size * Rational(num_users) / Rational(num_files);
  cfg.integral_replication = cfg.replication.is_integer();
  if (cfg.integral_replication) {
    cfg.r = static_cast<int>(cfg.replication.num());
    cfg.subfiles_per_file = binomial(num_users, cfg.r);
    cfg.file_bits = cfg.subfiles_per_file * static_cast<std::uint64_t>(subfile_bits);
  }
  return cfg;
}

std::string subfile_label(const SubfileId& id) {
  std::string label = "X" + std::to_string(id.file) + "{";
  bool first = true;
  for (int user : mask_to_elements(id.subset)) {
    if (!first) label += ",";
    label += std::to_string(user);
    first = false;
  }
  return label + "}";
}

int distinct_demands(const DemandVector& demand) {
  std::set<int> files(demand.begin(), demand.end());
  return static_cast<int>(files.size());
}

void validate_demand(const CachingConfig& cfg, const DemandVector& demand) {
  if (static_cast<int>(demand.size()) != cfg.num_users)
    throw std::domain_error("demand: expected one file index per user");
  for (int file : demand)
    if (file < 1 || file > cfg.num_files)
      throw std::domain_error("demand: file index out of range");
}

std::vector<int> demanded_files(const DemandVector& demand) {
  std::set<int> files(demand.begin(), demand.end());
  return {files.begin(), files.end()};
}

std::vector<SubfileId> demanded_messages(const CachingConfig& cfg, const DemandVector& demand) {
  std::vector<SubfileId> messages;
  auto subsets = subsets_of_size(cfg.num_users, cfg.r);
  for (int file : demanded_files(demand))
    for (std::uint32_t subset : subsets) messages.push_back({file, subset});
  return messages;
}

std::map<int, std::uint64_t> demand_census(int num_files, int num_users) {
  std::map<int, std::uint64_t> census;
  int max_distinct = std::min(num_files, num_users);
  for (int t = 1; t <= max_distinct; ++t)
    census[t] = binomial(num_files, t) * surjection_count(num_users, t);
  return census;
}

Prefetching Prefetching::symmetric_batch(const CachingConfig& cfg,
                                         const std::vector<gf2::BitVec>& files) {
  if (!cfg.integral_replication)
    throw std::domain_error("symmetric_batch: replication K*M/N must be an integer");
  if (files.size() != static_cast<std::size_t>(cfg.num_files))
    throw std::length_error("symmetric_batch: expected one bit vector per file");
  for (const auto& file : files)
    if (file.size() != cfg.file_bits)
      throw std::length_error("symmetric_batch: file size must be subfile_bits * C(K, r)");

  Prefetching pf;
  pf.cfg_ = cfg;
  pf.subsets_ = subsets_of_size(cfg.num_users, cfg.r);
  pf.payloads_.reserve(files.size() * pf.subsets_.size());
  for (const auto& file : files)
    for (std::size_t i = 0; i < pf.subsets_.size(); ++i)
      pf.payloads_.push_back(file.slice(i * cfg.subfile_bits, cfg.subfile_bits));
  return pf;
}

const gf2::BitVec& Prefetching::payload(const SubfileId& id) const {
  std::size_t index = static_cast<std::size_t>(id.file - 1) * subsets_.size() + colex_rank(id.subset);
  return payloads_.at(index);
}

std::vector<SubfileId> Prefetching::user_cache(int user) const {
  std::vector<SubfileId> cache;
  for (int file = 1; file <= cfg_.num_files; ++file)
    for (std::uint32_t subset : subsets_)
      if ((subset >> (user - 1)) & 1) cache.push_back({file, subset});
  return cache;
}

std::uint64_t Prefetching::cached_bits(int user) const {
  std::uint64_t bits = 0;
  for (const SubfileId& id : user_cache(user)) bits += payload(id).size();
  return bits;
}

gf2::BitVec Prefetching::reassemble(int file) const {
  gf2::BitVec result;
  for (std::uint32_t subset : subsets_) result.append(payload({file, subset}));
  return result;
}

std::vector<gf2::BitVec> generate_files(const CachingConfig& cfg, std::uint64_t seed) {
  if (!cfg.integral_replication)
    throw std::domain_error("generate_files: replication K*M/N must be an integer");
  std::mt19937_64 rng(seed);
  std::vector<gf2::BitVec> files;
  files.reserve(cfg.num_files);
  for (int file = 0; file < cfg.num_files; ++file) {
    gf2::BitVec bits(cfg.file_bits);
    for (std::uint64_t i = 0; i < cfg.file_bits; ++i) bits.set(i, (rng() >> 32) & 1);
    files.push_back(std::move(bits));
  }
  return files;
}

}  // namespace cachecast::caching
