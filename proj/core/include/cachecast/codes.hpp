#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cachecast/gf2.hpp"

namespace cachecast::codes {

struct SearchOptions {
  /// When true, known optimal lengths are looked up so the search starts
  /// (and certifies) directly at the answer; the returned generator is the
  /// same either way.
  bool use_table = true;
};

/// Binary linear [n, k, d] block code given by a full-row-rank generator.
/// `d` is the exact minimum Hamming distance (0 for the empty k = 0 code).
/// Corrects t = (d - 1) / 2 errors under nearest-codeword decoding.
class LinearCode {
 public:
  static LinearCode empty();

  const gf2::BitMatrix& generator() const { return generator_; }
  std::size_t length() const { return n_; }
  std::size_t dimension() const { return k_; }
  std::size_t min_distance() const { return d_; }
  std::size_t correction_radius() const { return d_ == 0 ? 0 : (d_ - 1) / 2; }

  gf2::BitVec encode(const gf2::BitVec& message) const;

  /// Inverse of encode on codewords: the unique u with u * G == codeword.
  gf2::BitVec extract_message(const gf2::BitVec& codeword) const;

  friend LinearCode from_generator(const gf2::BitMatrix& g);
  friend LinearCode find_optimal_code(unsigned k, unsigned d, SearchOptions options);

 private:
  gf2::BitMatrix generator_;
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::size_t d_ = 0;
  // extract_message support: u = (codeword at pivot columns) * transform.
  std::vector<std::size_t> pivots_;
  gf2::BitMatrix transform_;
};

/// Builds a code from its generator matrix, computing the exact minimum
/// distance. Throws std::invalid_argument when g is rank deficient and
/// std::length_error when k > 24 (exhaustive distance sweep guard).
LinearCode from_generator(const gf2::BitMatrix& g);

/// Exact minimum weight over all 2^k - 1 nonzero codewords (k <= 24).
std::size_t min_distance(const gf2::BitMatrix& g);

/// Coset-leader table decoder. The table is complete: every syndrome maps
/// to a minimum-weight error pattern; a decode is flagged unreliable when
/// that pattern is heavier than the correction radius, which cannot happen
/// for received words within radius t of a codeword.
class SyndromeDecoder {
 public:
  struct Result {
    gf2::BitVec codeword;
    gf2::BitVec message;
    bool reliable = true;
  };

  const gf2::BitMatrix& parity_check() const { return parity_check_; }
  std::size_t table_size() const { return leaders_.size(); }
  std::uint64_t coset_leader(std::uint32_t syndrome) const { return leaders_[syndrome]; }

  Result decode(const gf2::BitVec& received) const;

  friend SyndromeDecoder build_decoder(const LinearCode& code);

 private:
  LinearCode code_;
  gf2::BitMatrix parity_check_;            // (n-k) x n, H * G^T = 0
  std::vector<std::uint64_t> leaders_;     // syndrome -> error mask, min weight
};

/// Builds the complete coset-leader table; throws std::length_error when
/// n - k > 24.
SyndromeDecoder build_decoder(const LinearCode& code);

/// Griesmer lower bound on code length: sum_{i<k} ceil(d / 2^i).
std::uint64_t griesmer_min_length(unsigned k, unsigned d);

/// Smallest n >= k with 2^(n-k) >= sum_{i<=t} C(n, i), t = (d-1)/2.
std::uint64_t sphere_packing_min_length(unsigned k, unsigned d);

/// Shortest binary linear code of dimension k and minimum distance >= d:
/// n equals the true optimum N2[k, d], certified by exhausting systematic
/// generators at every shorter length at or above the max(Griesmer,
/// sphere-packing) lower bound. Ties broken by the lexicographically
/// smallest parity part, row-major. Guards: k <= 7 and d <= 7 except for
/// the trivial families d == 1 (identity) and k <= 1 (repetition).
LinearCode find_optimal_code(unsigned k, unsigned d, SearchOptions options = {});

/// N2[k, d]; memoized alongside find_optimal_code.
std::uint64_t optimal_length(unsigned k, unsigned d, SearchOptions options = {});

/// {"n":..,"k":..,"d":..,"generator":[[0,1,...],...]}
std::string to_json_string(const LinearCode& code);

}  // namespace cachecast::codes
