#pragma once

#include <cstdint>
#include <vector>

#include "cubic/galois_field.hpp"
#include "cubic/matrix.hpp"

namespace cubic {

// Bit-packed matrix over F_2, 64 entries per word, rows padded to whole words.
// Elimination is XOR of row words; pivoting matches the generic path exactly.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols);

  static Gf2Matrix identity(std::size_t n);
  // Requires the matrix to be over F_2 (GF(2^1)).
  static Gf2Matrix from_matrix(const Matrix<GaloisField>& m);
  Matrix<GaloisField> to_matrix() const;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t i, std::size_t j) const { return (row_ptr(i)[j >> 6] >> (j & 63)) & 1U; }
  void set(std::size_t i, std::size_t j, bool v);
  void flip(std::size_t i, std::size_t j) { row_ptr(i)[j >> 6] ^= std::uint64_t{1} << (j & 63); }

  std::uint64_t* row_ptr(std::size_t i) { return bits_.data() + i * wpr_; }
  const std::uint64_t* row_ptr(std::size_t i) const { return bits_.data() + i * wpr_; }
  void xor_row_into(std::size_t src, std::size_t dst);
  void swap_rows(std::size_t a, std::size_t b);

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct Gf2Echelon {
  Gf2Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

Gf2Echelon gf2_rref(Gf2Matrix m);
std::size_t gf2_rank(const Gf2Matrix& m);
Gf2Matrix gf2_mul(const Gf2Matrix& a, const Gf2Matrix& b);
Gf2Matrix gf2_transpose(const Gf2Matrix& a);
// Basis of {x : x * m = 0}, rows in reduced echelon form (as in row_kernel).
Gf2Matrix gf2_row_kernel(const Gf2Matrix& m);

}  // namespace cubic
