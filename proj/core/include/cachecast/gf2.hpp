#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cachecast::gf2 {

/// Packed bit vector over GF(2). Addition is XOR, so every vector is its
/// own additive inverse. Unused bits of the last word are kept zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t len) : len_(len), words_(word_count(len), 0) {}

  static BitVec from_string(std::string_view bits);
  /// Inverse of to_hex(); `len` gives the exact bit length.
  static BitVec from_hex(std::string_view hex, std::size_t len);
  static BitVec from_mask(std::uint64_t mask, std::size_t len);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const {
    assert(i < len_);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  void set(std::size_t i, bool value) {
    assert(i < len_);
    if (value)
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void flip(std::size_t i) {
    assert(i < len_);
    words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
  }

  std::size_t weight() const;
  bool is_zero() const;

  /// Parity of the AND of two equal-length vectors (inner product).
  bool dot(const BitVec& other) const;

  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  void append(const BitVec& other);
  BitVec slice(std::size_t begin, std::size_t count) const;

  std::string to_string() const;
  /// Hex with bit i stored at byte i/8, bit position i%8; a trailing
  /// partial byte is zero-padded.
  std::string to_hex() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  static std::size_t word_count(std::size_t len) { return (len + 63) / 64; }
  void clear_tail();

  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense row-major binary matrix.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_strings(const std::vector<std::string>& rows);
  static BitMatrix from_rows(std::vector<BitVec> rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }
  const BitVec& row(std::size_t r) const { return rows_[r]; }
  BitVec& row(std::size_t r) { return rows_[r]; }
  void append_row(BitVec row);

  BitMatrix transposed() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  std::vector<std::string> to_strings() const;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

struct RrefResult {
  BitMatrix reduced;
  std::vector<std::size_t> pivots;  // strictly increasing pivot columns
};

/// Reduced row echelon form over GF(2); preserves the row space.
RrefResult rref(const BitMatrix& m);

/// Dimension of the row space.
std::size_t rank(const BitMatrix& m);

/// One solution of a*x = b with free variables fixed to zero, or nullopt
/// when the system is inconsistent. b.size() must equal a.rows().
std::optional<BitVec> solve(const BitMatrix& a, const BitVec& b);

/// Basis of { x : a*x = 0 }, one vector per row; cols() - rank(a) rows.
BitMatrix nullspace(const BitMatrix& a);

/// Matrix product; throws std::invalid_argument on dimension mismatch.
BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);

/// a * x for a column vector x of length a.cols().
BitVec mul_vec(const BitMatrix& a, const BitVec& x);

/// u * m for a row vector u of length m.rows().
BitVec row_mul(const BitVec& u, const BitMatrix& m);

/// [[0,1,...],...] as arrays of 0/1 row arrays.
std::string to_json_string(const BitMatrix& m);
BitMatrix bitmatrix_from_json_string(const std::string& text);

}  // namespace cachecast::gf2
