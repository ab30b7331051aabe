#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ot {

// A 0/1 vector, one bit per byte. Sized in bits.
using BitVec = std::vector<std::uint8_t>;

// Dense GF(2) matrix with rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool v);

  std::span<const std::uint64_t> row(std::size_t r) const;
  // dst_r := row src_r of src  /  dst_r ^= row src_r of src
  void assign_row(std::size_t dst_r, const BitMatrix& src, std::size_t src_r);
  void xor_row(std::size_t dst_r, const BitMatrix& src, std::size_t src_r);

  BitMatrix multiply(const BitMatrix& rhs) const;
  BitMatrix transpose() const;

  bool operator==(const BitMatrix&) const = default;

  // Row-major packing, each row padded to a whole number of bytes;
  // bit c of a row sits in byte c/8 at position c%8.
  std::vector<std::uint8_t> to_bytes() const;
  static BitMatrix from_bytes(std::size_t rows, std::size_t cols,
                              const std::vector<std::uint8_t>& bytes);

 private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<std::uint64_t> w_;
};

// Row vector times matrix over GF(2): result_j = XOR_i u_i * m[i][j].
BitVec vec_mat(const BitVec& u, const BitMatrix& m);

BitVec xor_bits(const BitVec& a, const BitVec& b);

}  // namespace ot
