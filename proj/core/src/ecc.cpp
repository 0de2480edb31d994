#include "cachecast/ecc.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "cachecast/combinatorics.hpp"
#include "cachecast/indexcoding.hpp"

namespace cachecast::ecc {

std::uint64_t min_rank_closed_form(int num_users, int replication, int distinct) {
  return binomial(num_users, replication + 1) -
         binomial(num_users - distinct, replication + 1);
}

ConcatenatedScheme build_scheme(const caching::CachingConfig& cfg, const caching::Prefetching& pf,
                                const caching::DemandVector& demand, int delta) {
  if (delta < 0) throw std::domain_error("build_scheme: delta must be nonnegative");
  delivery::DeliveryResult inner = delivery::yma_transmissions(cfg, pf, demand);
  codes::LinearCode outer = codes::find_optimal_code(
      static_cast<unsigned>(inner.transmissions.symbols.size()), 2 * delta + 1);
  return build_scheme_with_code(cfg, pf, demand, delta, outer);
}

ConcatenatedScheme build_scheme_with_code(const caching::CachingConfig& cfg,
                                          const caching::Prefetching& pf,
                                          const caching::DemandVector& demand, int delta,
                                          const codes::LinearCode& outer) {
  if (delta < 0) throw std::domain_error("build_scheme: delta must be nonnegative");
  ConcatenatedScheme scheme;
  scheme.cfg = cfg;
  scheme.demand = demand;
  scheme.delta = delta;
  scheme.leaders = delivery::choose_leaders(demand);
  delivery::DeliveryResult inner = delivery::yma_transmissions(cfg, pf, demand);
  scheme.inner = std::move(inner.transmissions);
  scheme.inner_code = std::move(inner.code);
  if (outer.dimension() != scheme.inner.symbols.size())
    throw std::invalid_argument("build_scheme: outer code dimension must equal inner length");
  if (delta > 0 && outer.min_distance() < static_cast<std::size_t>(2 * delta + 1))
    throw std::invalid_argument("build_scheme: outer code distance below 2*delta+1");
  scheme.outer = outer;
  scheme.outer_decoder = codes::build_decoder(outer);
  return scheme;
}

std::vector<gf2::BitVec> transmit(const ConcatenatedScheme& scheme) {
  const auto& generator = scheme.outer.generator();
  std::vector<gf2::BitVec> blocks(scheme.block_count(), gf2::BitVec(scheme.cfg.subfile_bits));
  for (std::size_t i = 0; i < scheme.inner_length(); ++i)
    for (std::size_t j = 0; j < scheme.block_count(); ++j)
      if (generator.get(i, j)) blocks[j] ^= scheme.inner.symbols[i];
  return blocks;
}

std::vector<gf2::BitVec> corrupt(std::vector<gf2::BitVec> blocks, const ErrorPattern& pattern) {
  for (const auto& [index, flip] : pattern.flips) {
    if (index < 0 || static_cast<std::size_t>(index) >= blocks.size())
      throw std::invalid_argument("corrupt: block index out of range");
    blocks[index] ^= flip;
  }
  return blocks;
}

DecodeOutcome receive_and_decode(const ConcatenatedScheme& scheme, const caching::Prefetching& pf,
                                 int user, const std::vector<gf2::BitVec>& received) {
  if (received.size() != scheme.block_count())
    throw std::invalid_argument("receive_and_decode: block count mismatch");
  const int bits = scheme.cfg.subfile_bits;
  const std::size_t inner_length = scheme.inner_length();

  DecodeOutcome outcome;
  std::vector<gf2::BitVec> symbols(inner_length, gf2::BitVec(bits));
  if (inner_length > 0) {
    // Stage 1: each bit-plane is an outer codeword with at most delta
    // coordinate errors; syndrome decoding restores the symbol bits.
    for (int b = 0; b < bits; ++b) {
      gf2::BitVec plane(scheme.block_count());
      for (std::size_t j = 0; j < scheme.block_count(); ++j) plane.set(j, received[j].get(b));
      codes::SyndromeDecoder::Result res = scheme.outer_decoder.decode(plane);
      outcome.reliable = outcome.reliable && res.reliable;
      for (std::size_t i = 0; i < inner_length; ++i)
        if (res.message.get(i)) symbols[i].set(b, true);
    }
  }
  // Stage 2: plain linear index decoding on the recovered symbols.
  outcome.file = delivery::user_decode_linear(scheme.cfg, pf, scheme.demand, user,
                                              scheme.inner_code, symbols);
  return outcome;
}

namespace {

Rational rational_from_u64(std::uint64_t num, std::uint64_t den) {
  if (num > static_cast<std::uint64_t>(std::numeric_limits<long long>::max()) ||
      den > static_cast<std::uint64_t>(std::numeric_limits<long long>::max()))
    throw std::overflow_error("rate: value exceeds exact rational range");
  return Rational(static_cast<long long>(num), static_cast<long long>(den));
}

int require_integral_replication(const caching::CachingConfig& cfg, const char* what) {
  if (!cfg.integral_replication)
    throw std::domain_error(std::string(what) + ": replication K*M/N must be an integer");
  return cfg.r;
}

}  // namespace

Rational average_rate(const caching::CachingConfig& cfg, int delta) {
  const int r = require_integral_replication(cfg, "average_rate");
  unsigned __int128 numerator = 0;
  for (const auto& [distinct, count] : caching::demand_census(cfg.num_files, cfg.num_users)) {
    std::uint64_t kappa = min_rank_closed_form(cfg.num_users, r, distinct);
    std::uint64_t blocks = codes::optimal_length(static_cast<unsigned>(kappa), 2 * delta + 1);
    numerator += static_cast<unsigned __int128>(count) * blocks;
  }
  std::uint64_t demand_space = checked_pow(cfg.num_files, cfg.num_users);
  unsigned __int128 denominator =
      static_cast<unsigned __int128>(demand_space) * binomial(cfg.num_users, r);
  if (numerator > UINT64_MAX || denominator > UINT64_MAX)
    throw std::overflow_error("average_rate: expectation exceeds 64-bit range");
  return rational_from_u64(static_cast<std::uint64_t>(numerator),
                           static_cast<std::uint64_t>(denominator));
}

Rational peak_rate(const caching::CachingConfig& cfg, int delta) {
  return peak_rate_report(cfg, delta).rate;
}

RateReport peak_rate_report(const caching::CachingConfig& cfg, int delta) {
  return rate_report_for_distinct(cfg, std::min(cfg.num_files, cfg.num_users), delta);
}

RateReport rate_report_for_distinct(const caching::CachingConfig& cfg, int distinct, int delta) {
  const int r = require_integral_replication(cfg, "rate_report");
  if (distinct < 1 || distinct > std::min(cfg.num_files, cfg.num_users))
    throw std::domain_error("rate_report: distinct count out of range");
  RateReport report;
  report.delta = delta;
  report.kappa = min_rank_closed_form(cfg.num_users, r, distinct);
  report.transmissions = codes::optimal_length(static_cast<unsigned>(report.kappa), 2 * delta + 1);
  report.rate = rational_from_u64(report.transmissions, binomial(cfg.num_users, r));
  return report;
}

std::vector<std::pair<Rational, Rational>> rate_vertices(int num_files, int num_users, int delta,
                                                         RateKind kind) {
  std::vector<std::pair<Rational, Rational>> vertices;
  vertices.reserve(num_users + 1);
  for (int r = 0; r <= num_users; ++r) {
    Rational memory = Rational(static_cast<long long>(r) * num_files, num_users);
    caching::CachingConfig cfg = caching::make_config(num_files, num_users, memory);
    Rational rate = kind == RateKind::average ? average_rate(cfg, delta) : peak_rate(cfg, delta);
    vertices.emplace_back(memory, rate);
  }
  return vertices;
}

namespace {

// cross(a, b, c) > 0 <=> the polyline a->b->c turns left; the lower hull
// keeps only left turns.
Rational hull_cross(const std::pair<Rational, Rational>& a, const std::pair<Rational, Rational>& b,
                    const std::pair<Rational, Rational>& c) {
  return (b.first - a.first) * (c.second - a.second) -
         (b.second - a.second) * (c.first - a.first);
}

}  // namespace

Rational rate_envelope(int num_files, int num_users, int delta, const Rational& cache_size,
                       RateKind kind) {
  if (cache_size < Rational(0) || cache_size > Rational(num_files))
    throw std::domain_error("rate_envelope: cache size must lie in [0, N]");
  std::vector<std::pair<Rational, Rational>> points = rate_vertices(num_files, num_users, delta, kind);
  std::vector<std::pair<Rational, Rational>> hull;
  for (const auto& p : points) {
    while (hull.size() >= 2 && !(hull_cross(hull[hull.size() - 2], hull.back(), p) > Rational(0)))
      hull.pop_back();
    hull.push_back(p);
  }
  if (hull.size() == 1) return hull.front().second;  // K-user degenerate slice, N files == 0 never
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    if (cache_size < hull[i].first || cache_size > hull[i + 1].first) continue;
    const auto& [x0, y0] = hull[i];
    const auto& [x1, y1] = hull[i + 1];
    if (x1 == x0) return std::min(y0, y1);
    return y0 + (y1 - y0) * (cache_size - x0) / (x1 - x0);
  }
  return hull.back().second;
}

namespace {

gf2::BitVec single_bit_flip(int bits) {
  gf2::BitVec flip(bits);
  flip.set(0, true);
  return flip;
}

gf2::BitVec all_bits_flip(int bits) {
  gf2::BitVec flip(bits);
  for (int i = 0; i < bits; ++i) flip.set(i, true);
  return flip;
}

bool pattern_decodes(const ConcatenatedScheme& scheme, const caching::Prefetching& pf,
                     const std::vector<gf2::BitVec>& files, const ErrorPattern& pattern) {
  std::vector<gf2::BitVec> received = corrupt(transmit(scheme), pattern);
  for (int user = 1; user <= scheme.cfg.num_users; ++user) {
    DecodeOutcome outcome = receive_and_decode(scheme, pf, user, received);
    if (outcome.file != files[scheme.demand[user - 1] - 1]) return false;
  }
  return true;
}

}  // namespace

SweepReport adversarial_sweep(const ConcatenatedScheme& scheme, const caching::Prefetching& pf,
                              const std::vector<gf2::BitVec>& files, int max_errors) {
  const int blocks = static_cast<int>(scheme.block_count());
  const int bits = scheme.cfg.subfile_bits;
  if (max_errors > 0 && blocks > 31)
    throw std::length_error("adversarial_sweep: exhaustive sweep limited to 31 blocks");
  SweepReport report;
  for (int size = 0; size <= std::min(max_errors, blocks); ++size) {
    if (size == 0) {
      SweepResult clean;
      clean.ok = pattern_decodes(scheme, pf, files, clean.pattern);
      if (!clean.ok) ++report.failures;
      report.results.push_back(std::move(clean));
      continue;
    }
    for (std::uint32_t subset : subsets_of_size(blocks, size)) {
      std::vector<int> indices;
      for (int element : mask_to_elements(subset)) indices.push_back(element - 1);
      for (std::uint32_t variant = 0; variant < (std::uint32_t{1} << size); ++variant) {
        SweepResult result;
        for (int i = 0; i < size; ++i)
          result.pattern.flips.emplace_back(
              indices[i], (variant >> i) & 1 ? all_bits_flip(bits) : single_bit_flip(bits));
        result.ok = pattern_decodes(scheme, pf, files, result.pattern);
        if (!result.ok) ++report.failures;
        report.results.push_back(std::move(result));
      }
    }
  }
  return report;
}

SweepReport random_sweep(const ConcatenatedScheme& scheme, const caching::Prefetching& pf,
                         const std::vector<gf2::BitVec>& files, int trials, std::uint64_t seed,
                         int max_errors) {
  const int blocks = static_cast<int>(scheme.block_count());
  const int bits = scheme.cfg.subfile_bits;
  std::mt19937_64 rng(seed);
  SweepReport report;
  for (int trial = 0; trial < trials; ++trial) {
    int size = blocks == 0 ? 0
                           : std::uniform_int_distribution<int>(0, std::min(max_errors, blocks))(rng);
    std::vector<int> all_indices(blocks);
    for (int i = 0; i < blocks; ++i) all_indices[i] = i;
    std::shuffle(all_indices.begin(), all_indices.end(), rng);

    SweepResult result;
    for (int i = 0; i < size; ++i) {
      gf2::BitVec flip(bits);
      while (flip.is_zero())
        for (int b = 0; b < bits; ++b) flip.set(b, (rng() >> 32) & 1);
      result.pattern.flips.emplace_back(all_indices[i], std::move(flip));
    }
    std::sort(result.pattern.flips.begin(), result.pattern.flips.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    result.ok = pattern_decodes(scheme, pf, files, result.pattern);
    if (!result.ok) ++report.failures;
    report.results.push_back(std::move(result));
  }
  return report;
}

std::string scheme_to_json_string(const ConcatenatedScheme& scheme, std::uint64_t seed) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["config"] = {{"N", scheme.cfg.num_files},
                 {"K", scheme.cfg.num_users},
                 {"M", scheme.cfg.cache_size.to_string()},
                 {"subfile_bits", scheme.cfg.subfile_bits},
                 {"replication", scheme.cfg.replication.to_string()}};
  j["demand"] = scheme.demand;
  j["delta"] = scheme.delta;
  j["leaders"] = scheme.leaders;
  nlohmann::json labels = nlohmann::json::array();
  for (std::uint32_t mask : scheme.inner.labels) labels.push_back(mask_to_elements(mask));
  j["transmission_labels"] = labels;
  j["outer_generator"] = scheme.outer.generator().to_strings();
  j["outer"] = {{"n", scheme.outer.length()},
                {"k", scheme.outer.dimension()},
                {"d", scheme.outer.min_distance()}};
  j["seed"] = seed;
  return j.dump();
}

}  // namespace cachecast::ecc
