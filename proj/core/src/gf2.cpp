#include "cachecast/gf2.hpp"

#include <bit>
#include <stdexcept>

#include <json.hpp>

namespace cachecast::gf2 {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument("BitVec::from_hex: bad hex digit");
}

}  // namespace

BitVec BitVec::from_string(std::string_view bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i, true);
    else if (bits[i] != '0')
      throw std::invalid_argument("BitVec::from_string: expected '0'/'1'");
  }
  return v;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t len) {
  if (hex.size() != (len + 7) / 8 * 2)
    throw std::invalid_argument("BitVec::from_hex: length mismatch");
  BitVec v(len);
  for (std::size_t byte = 0; byte * 2 < hex.size(); ++byte) {
    int value = hex_digit(hex[byte * 2]) * 16 + hex_digit(hex[byte * 2 + 1]);
    for (int bit = 0; bit < 8; ++bit) {
      std::size_t i = byte * 8 + bit;
      if (i < len && ((value >> bit) & 1)) v.set(i, true);
    }
  }
  return v;
}

BitVec BitVec::from_mask(std::uint64_t mask, std::size_t len) {
  assert(len <= 64);
  BitVec v(len);
  if (len > 0) {
    v.words_[0] = len == 64 ? mask : (mask & ((std::uint64_t{1} << len) - 1));
  }
  return v;
}

std::size_t BitVec::weight() const {
  std::size_t w = 0;
  for (std::uint64_t word : words_) w += std::popcount(word);
  return w;
}

bool BitVec::is_zero() const {
  for (std::uint64_t word : words_)
    if (word != 0) return false;
  return true;
}

bool BitVec::dot(const BitVec& other) const {
  assert(len_ == other.len_);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  if (len_ != other.len_) throw std::invalid_argument("BitVec: xor length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

void BitVec::append(const BitVec& other) {
  std::size_t old_len = len_;
  len_ += other.len_;
  words_.resize(word_count(len_), 0);
  for (std::size_t i = 0; i < other.len_; ++i)
    if (other.get(i)) set(old_len + i, true);
}

BitVec BitVec::slice(std::size_t begin, std::size_t count) const {
  assert(begin + count <= len_);
  BitVec v(count);
  for (std::size_t i = 0; i < count; ++i)
    if (get(begin + i)) v.set(i, true);
  return v;
}

std::string BitVec::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::string BitVec::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve((len_ + 7) / 8 * 2);
  for (std::size_t byte = 0; byte * 8 < len_; ++byte) {
    int value = 0;
    for (int bit = 0; bit < 8; ++bit) {
      std::size_t i = byte * 8 + bit;
      if (i < len_ && get(i)) value |= 1 << bit;
    }
    s.push_back(digits[value >> 4]);
    s.push_back(digits[value & 15]);
  }
  return s;
}

void BitVec::clear_tail() {
  if (len_ % 64 != 0 && !words_.empty())
    words_.back() &= (std::uint64_t{1} << (len_ % 64)) - 1;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  BitMatrix m;
  for (const auto& r : rows) m.append_row(BitVec::from_string(r));
  return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVec> rows) {
  BitMatrix m;
  for (auto& r : rows) m.append_row(std::move(r));
  return m;
}

void BitMatrix::append_row(BitVec row) {
  if (rows_.empty())
    cols_ = row.size();
  else if (row.size() != cols_)
    throw std::invalid_argument("BitMatrix: row width mismatch");
  rows_.push_back(std::move(row));
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

std::vector<std::string> BitMatrix::to_strings() const {
  std::vector<std::string> out;
  out.reserve(rows());
  for (std::size_t r = 0; r < rows(); ++r) out.push_back(rows_[r].to_string());
  return out;
}

RrefResult rref(const BitMatrix& m) {
  RrefResult res{m, {}};
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t src = pivot_row;
    while (src < m.rows() && !res.reduced.get(src, c)) ++src;
    if (src == m.rows()) continue;
    if (src != pivot_row) std::swap(res.reduced.row(src), res.reduced.row(pivot_row));
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != pivot_row && res.reduced.get(r, c)) res.reduced.row(r) ^= res.reduced.row(pivot_row);
    res.pivots.push_back(c);
    ++pivot_row;
  }
  return res;
}

std::size_t rank(const BitMatrix& m) { return rref(m).pivots.size(); }

std::optional<BitVec> solve(const BitMatrix& a, const BitVec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  BitMatrix augmented;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    BitVec row = a.row(r);
    BitVec rhs(1);
    rhs.set(0, b.get(r));
    row.append(rhs);
    augmented.append_row(std::move(row));
  }
  if (a.rows() == 0) return BitVec(a.cols());
  RrefResult red = rref(augmented);
  BitVec x(a.cols());
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    if (red.pivots[i] == a.cols()) return std::nullopt;  // pivot in the rhs column
    x.set(red.pivots[i], red.reduced.get(i, a.cols()));
  }
  return x;
}

BitMatrix nullspace(const BitMatrix& a) {
  RrefResult red = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t p : red.pivots) is_pivot[p] = true;
  BitMatrix basis(0, 0);
  for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    BitVec v(a.cols());
    v.set(free_col, true);
    for (std::size_t i = 0; i < red.pivots.size(); ++i)
      if (red.reduced.get(i, free_col)) v.set(red.pivots[i], true);
    basis.append_row(std::move(v));
  }
  if (basis.rows() == 0) basis = BitMatrix(0, a.cols());
  return basis;
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
  BitMatrix result(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a.get(r, k)) result.row(r) ^= b.row(k);
  return result;
}

BitVec mul_vec(const BitMatrix& a, const BitVec& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("mul_vec: dimension mismatch");
  BitVec y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) y.set(r, a.row(r).dot(x));
  return y;
}

BitVec row_mul(const BitVec& u, const BitMatrix& m) {
  if (u.size() != m.rows()) throw std::invalid_argument("row_mul: dimension mismatch");
  BitVec y(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (u.get(r)) y ^= m.row(r);
  return y;
}

std::string to_json_string(const BitMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.get(r, c) ? 1 : 0);
    rows.push_back(row);
  }
  return rows.dump();
}

BitMatrix bitmatrix_from_json_string(const std::string& text) {
  nlohmann::json rows = nlohmann::json::parse(text);
  BitMatrix m;
  for (const auto& row : rows) {
    BitVec bits(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      int value = row[c].get<int>();
      if (value != 0 && value != 1)
        throw std::invalid_argument("bitmatrix_from_json_string: entries must be 0/1");
      bits.set(c, value == 1);
    }
    m.append_row(std::move(bits));
  }
  return m;
}

}  // namespace cachecast::gf2
