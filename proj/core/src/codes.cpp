#include "cachecast/codes.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "cachecast/combinatorics.hpp"

namespace cachecast::codes {

namespace {

constexpr unsigned kDistanceSweepGuard = 24;  // 2^k codeword sweep
constexpr unsigned kTableGuard = 24;          // 2^(n-k) coset table
constexpr unsigned kSearchGuardK = 7;
constexpr unsigned kSearchGuardD = 7;

// Shortest known lengths, consulted to start (and certify) the search at
// the answer. Every entry is re-derived from scratch by the test suite's
// table re-derivation run; the d = 2 and d = 1 families are provable
// (parity extension / identity), the rest match published code tables.
struct KnownLength {
  unsigned k, d;
  std::uint64_t n;
};
constexpr KnownLength kKnownLengths[] = {
    // d = 2: parity-extended identity, Griesmer-tight.
    {2, 2, 3}, {3, 2, 4}, {4, 2, 5}, {5, 2, 6}, {6, 2, 7}, {7, 2, 8},
    // d = 3: Hamming codes and their shortenings.
    {2, 3, 5}, {3, 3, 6}, {4, 3, 7}, {5, 3, 9}, {6, 3, 10}, {7, 3, 11},
    // d = 4: even-weight extensions of the d = 3 row.
    {2, 4, 6}, {3, 4, 7}, {4, 4, 8}, {5, 4, 10}, {6, 4, 11}, {7, 4, 12},
    // d = 5 and its even extension; exhaustive-search results.
    {2, 5, 8}, {3, 5, 10}, {4, 5, 11}, {5, 5, 13},
    {2, 6, 9}, {3, 6, 11}, {4, 6, 12}, {5, 6, 14},
    // d = 7; exhaustive-search results.
    {2, 7, 11}, {3, 7, 13},
};

const KnownLength* lookup_known(unsigned k, unsigned d) {
  for (const auto& entry : kKnownLengths)
    if (entry.k == k && entry.d == d) return &entry;
  return nullptr;
}

// Lexicographic systematic search for a [n, k, >=d] code. A-rows are
// encoded so that ascending integers equal ascending row-major bit
// strings (column j of A at bit m-1-j). Prefix feasibility: for every
// message supported on the rows chosen so far, weight(message) +
// weight(message * A) must already reach d; this is necessary for any
// completion, so pruning on it is lossless, and trying candidates in
// ascending order makes the first full solution the lexicographic
// minimum.
class SystematicSearch {
 public:
  SystematicSearch(unsigned k, unsigned d, std::uint64_t n)
      : k_(k), d_(d), m_(n - k), rows_(k, 0) {
    subset_xors_.reserve(std::size_t{1} << k);
    subset_xors_.push_back({0, 0});
  }

  bool run() { return descend(0); }
  const std::vector<std::uint32_t>& rows() const { return rows_; }

 private:
  struct Entry {
    unsigned count;
    std::uint32_t xor_value;
  };

  bool descend(unsigned level) {
    if (level == k_) return true;
    const std::uint32_t limit = std::uint32_t{1} << m_;
    for (std::uint32_t cand = 0; cand < limit; ++cand) {
      bool feasible = true;
      for (const Entry& e : subset_xors_) {
        if (e.count + 1 + std::popcount(e.xor_value ^ cand) < d_) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      rows_[level] = cand;
      std::size_t old_size = subset_xors_.size();
      for (std::size_t i = 0; i < old_size; ++i)
        subset_xors_.push_back({subset_xors_[i].count + 1, subset_xors_[i].xor_value ^ cand});
      if (descend(level + 1)) return true;
      subset_xors_.resize(old_size);
    }
    return false;
  }

  unsigned k_, d_, m_;
  std::vector<std::uint32_t> rows_;
  std::vector<Entry> subset_xors_;
};

gf2::BitMatrix systematic_generator(unsigned k, std::uint64_t n, const std::vector<std::uint32_t>& rows) {
  gf2::BitMatrix g(k, n);
  const unsigned m = static_cast<unsigned>(n) - k;
  for (unsigned i = 0; i < k; ++i) {
    g.set(i, i, true);
    for (unsigned j = 0; j < m; ++j)
      if ((rows[i] >> (m - 1 - j)) & 1) g.set(i, k + j, true);
  }
  return g;
}

std::map<std::pair<unsigned, unsigned>, LinearCode>& code_cache() {
  static std::map<std::pair<unsigned, unsigned>, LinearCode> cache;
  return cache;
}
std::mutex& code_cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

LinearCode LinearCode::empty() {
  LinearCode code;
  code.generator_ = gf2::BitMatrix(0, 0);
  code.transform_ = gf2::BitMatrix(0, 0);
  return code;
}

gf2::BitVec LinearCode::encode(const gf2::BitVec& message) const {
  return gf2::row_mul(message, generator_);
}

gf2::BitVec LinearCode::extract_message(const gf2::BitVec& codeword) const {
  gf2::BitVec pivot_bits(k_);
  for (std::size_t i = 0; i < k_; ++i) pivot_bits.set(i, codeword.get(pivots_[i]));
  return gf2::row_mul(pivot_bits, transform_);
}

std::size_t min_distance(const gf2::BitMatrix& g) {
  if (g.rows() > kDistanceSweepGuard)
    throw std::length_error("min_distance: dimension exceeds exhaustive sweep guard");
  if (g.rows() == 0) return 0;
  // Gray-code walk: message i and i+1 differ in bit countr_zero(i+1).
  gf2::BitVec codeword(g.cols());
  std::size_t best = g.cols() + 1;
  const std::uint32_t total = std::uint32_t{1} << g.rows();
  for (std::uint32_t i = 1; i < total; ++i) {
    codeword ^= g.row(std::countr_zero(i));
    best = std::min(best, codeword.weight());
  }
  return best;
}

LinearCode from_generator(const gf2::BitMatrix& g) {
  // Row-reduce [g | I] in one pass: pivots and the transform T with
  // rref(g) = T * g drive extract_message.
  gf2::BitMatrix augmented;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    gf2::BitVec row = g.row(r);
    gf2::BitVec marker(g.rows());
    marker.set(r, true);
    row.append(marker);
    augmented.append_row(std::move(row));
  }
  if (g.rows() == 0) return LinearCode::empty();
  gf2::RrefResult red = gf2::rref(augmented);
  std::vector<std::size_t> pivots;
  for (std::size_t p : red.pivots)
    if (p < g.cols()) pivots.push_back(p);
  if (pivots.size() != g.rows())
    throw std::invalid_argument("from_generator: generator is rank deficient");

  LinearCode code;
  code.generator_ = g;
  code.n_ = g.cols();
  code.k_ = g.rows();
  code.pivots_ = pivots;
  gf2::BitMatrix transform(g.rows(), g.rows());
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.rows(); ++c)
      transform.set(r, c, red.reduced.get(r, g.cols() + c));
  code.transform_ = transform;
  code.d_ = min_distance(g);
  return code;
}

SyndromeDecoder build_decoder(const LinearCode& code) {
  const std::size_t n = code.length();
  const std::size_t k = code.dimension();
  if (n - k > kTableGuard)
    throw std::length_error("build_decoder: redundancy exceeds coset table guard");

  SyndromeDecoder dec;
  dec.code_ = code;
  dec.parity_check_ = gf2::nullspace(code.generator());
  const std::size_t redundancy = dec.parity_check_.rows();

  // BFS over the syndrome space; edges add one column of H, so layers
  // enumerate error weights and the first visit pins a minimum-weight
  // coset leader.
  std::vector<std::uint32_t> column_syndrome(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < redundancy; ++i)
      if (dec.parity_check_.get(i, j)) column_syndrome[j] |= std::uint32_t{1} << i;

  const std::size_t table = std::size_t{1} << redundancy;
  dec.leaders_.assign(table, 0);
  std::vector<bool> visited(table, false);
  std::deque<std::uint32_t> queue;
  visited[0] = true;
  queue.push_back(0);
  while (!queue.empty()) {
    std::uint32_t s = queue.front();
    queue.pop_front();
    std::uint64_t leader = dec.leaders_[s];
    for (std::size_t j = 0; j < n; ++j) {
      if ((leader >> j) & 1) continue;
      std::uint32_t next = s ^ column_syndrome[j];
      if (visited[next]) continue;
      visited[next] = true;
      dec.leaders_[next] = leader | (std::uint64_t{1} << j);
      queue.push_back(next);
    }
  }
  return dec;
}

SyndromeDecoder::Result SyndromeDecoder::decode(const gf2::BitVec& received) const {
  const std::size_t n = code_.length();
  if (received.size() != n) throw std::invalid_argument("decode: received length mismatch");
  std::uint32_t syndrome = 0;
  for (std::size_t i = 0; i < parity_check_.rows(); ++i)
    if (parity_check_.row(i).dot(received)) syndrome |= std::uint32_t{1} << i;
  std::uint64_t leader = leaders_[syndrome];
  Result result;
  result.codeword = received ^ gf2::BitVec::from_mask(leader, n);
  result.message = code_.extract_message(result.codeword);
  result.reliable = static_cast<std::size_t>(std::popcount(leader)) <= code_.correction_radius();
  return result;
}

std::uint64_t griesmer_min_length(unsigned k, unsigned d) {
  std::uint64_t total = 0;
  for (unsigned i = 0; i < k; ++i) {
    std::uint64_t div = std::uint64_t{1} << std::min(i, 63u);
    total += (d + div - 1) / div;
  }
  return total;
}

std::uint64_t sphere_packing_min_length(unsigned k, unsigned d) {
  const unsigned t = (d - 1) / 2;
  for (std::uint64_t n = k;; ++n) {
    unsigned __int128 balls = 0;
    for (unsigned i = 0; i <= t; ++i) balls += binomial(static_cast<int>(n), static_cast<int>(i));
    unsigned __int128 cosets =
        n - k >= 127 ? ~(unsigned __int128){0} : (unsigned __int128){1} << (n - k);
    if (cosets >= balls) return n;
  }
}

LinearCode find_optimal_code(unsigned k, unsigned d, SearchOptions options) {
  if (d == 0) throw std::domain_error("find_optimal_code: distance must be positive");
  if (k == 0) return LinearCode::empty();

  if (options.use_table) {
    std::lock_guard lock(code_cache_mutex());
    auto it = code_cache().find({k, d});
    if (it != code_cache().end()) return it->second;
  }

  LinearCode code;
  if (d == 1) {
    // Identity code; distance is 1 by construction, no sweep needed.
    code.generator_ = gf2::BitMatrix::identity(k);
    code.n_ = k;
    code.k_ = k;
    code.d_ = 1;
    code.pivots_.resize(k);
    for (unsigned i = 0; i < k; ++i) code.pivots_[i] = i;
    code.transform_ = gf2::BitMatrix::identity(k);
  } else if (k == 1) {
    // Repetition code [d, 1, d]; the single nonzero codeword needs weight
    // >= d, so no shorter length exists.
    gf2::BitMatrix repetition(1, d);
    for (unsigned j = 0; j < d; ++j) repetition.set(0, j, true);
    code = from_generator(repetition);
  } else {
    if (k > kSearchGuardK || d > kSearchGuardD)
      throw std::length_error("find_optimal_code: parameters exceed search guard");
    std::uint64_t start = std::max(griesmer_min_length(k, d), sphere_packing_min_length(k, d));
    if (options.use_table) {
      if (const KnownLength* known = lookup_known(k, d)) start = known->n;
    }
    for (std::uint64_t n = start;; ++n) {
      SystematicSearch search(k, d, n);
      if (search.run()) {
        code = from_generator(systematic_generator(k, n, search.rows()));
        break;
      }
    }
  }

  {
    std::lock_guard lock(code_cache_mutex());
    code_cache().insert({{k, d}, code});
  }
  return code;
}

std::uint64_t optimal_length(unsigned k, unsigned d, SearchOptions options) {
  if (d == 0) throw std::domain_error("optimal_length: distance must be positive");
  if (k == 0) return 0;
  if (d == 1) return k;  // identity
  if (k == 1) return d;  // repetition
  return find_optimal_code(k, d, options).length();
}

std::string to_json_string(const LinearCode& code) {
  nlohmann::json j;
  j["n"] = code.length();
  j["k"] = code.dimension();
  j["d"] = code.min_distance();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < code.generator().rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < code.generator().cols(); ++c)
      row.push_back(code.generator().get(r, c) ? 1 : 0);
    rows.push_back(row);
  }
  j["generator"] = rows;
  return j.dump();
}

}  // namespace cachecast::codes
