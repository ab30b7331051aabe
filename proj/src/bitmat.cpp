#include "polarot/bitmat.hpp"

#include <stdexcept>

namespace ot {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  return (w_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  std::uint64_t& word = w_[r * wpr_ + c / 64];
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  if (v)
    word |= bit;
  else
    word &= ~bit;
}

std::span<const std::uint64_t> BitMatrix::row(std::size_t r) const {
  return {w_.data() + r * wpr_, wpr_};
}

void BitMatrix::assign_row(std::size_t dst_r, const BitMatrix& src, std::size_t src_r) {
  if (src.wpr_ != wpr_) throw std::invalid_argument("row width mismatch");
  for (std::size_t k = 0; k < wpr_; ++k)
    w_[dst_r * wpr_ + k] = src.w_[src_r * wpr_ + k];
}

void BitMatrix::xor_row(std::size_t dst_r, const BitMatrix& src, std::size_t src_r) {
  if (src.wpr_ != wpr_) throw std::invalid_argument("row width mismatch");
  for (std::size_t k = 0; k < wpr_; ++k)
    w_[dst_r * wpr_ + k] ^= src.w_[src_r * wpr_ + k];
}

BitMatrix BitMatrix::multiply(const BitMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("dimension mismatch");
  BitMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (get(i, k)) out.xor_row(i, rhs, k);
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < wpr_; ++k) {
      std::uint64_t word = w_[i * wpr_ + k];
      while (word) {
        const int b = __builtin_ctzll(word);
        word &= word - 1;
        out.set(64 * k + static_cast<std::size_t>(b), i, true);
      }
    }
  return out;
}

std::vector<std::uint8_t> BitMatrix::to_bytes() const {
  const std::size_t bpr = (cols_ + 7) / 8;
  std::vector<std::uint8_t> out(rows_ * bpr, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) out[r * bpr + c / 8] |= static_cast<std::uint8_t>(1u << (c % 8));
  return out;
}

BitMatrix BitMatrix::from_bytes(std::size_t rows, std::size_t cols,
                                const std::vector<std::uint8_t>& bytes) {
  const std::size_t bpr = (cols + 7) / 8;
  if (bytes.size() != rows * bpr) throw std::invalid_argument("byte payload size mismatch");
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if ((bytes[r * bpr + c / 8] >> (c % 8)) & 1u) m.set(r, c, true);
  return m;
}

BitVec vec_mat(const BitVec& u, const BitMatrix& m) {
  if (u.size() != m.rows()) throw std::invalid_argument("dimension mismatch");
  const std::size_t wpr = m.words_per_row();
  std::vector<std::uint64_t> acc(wpr, 0);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i]) {
      const auto r = m.row(i);
      for (std::size_t k = 0; k < wpr; ++k) acc[k] ^= r[k];
    }
  BitVec out(m.cols(), 0);
  for (std::size_t c = 0; c < m.cols(); ++c)
    out[c] = static_cast<std::uint8_t>((acc[c / 64] >> (c % 64)) & 1u);
  return out;
}

BitVec xor_bits(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  BitVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

}  // namespace ot
