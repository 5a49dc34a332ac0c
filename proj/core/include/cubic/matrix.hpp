#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cubic/errors.hpp"
#include "cubic/ring.hpp"

namespace cubic {

// Dense row-major matrix over a commutative ring. Vectors are rows and
// matrices act on them from the right: applying A then B to x is x * (A * B).
template <Ring R>
class Matrix {
 public:
  using RingType = R;
  using Element = typename R::Element;

  Matrix() = default;
  Matrix(R ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_.zero()) {}
  Matrix(R ring, std::size_t rows, std::size_t cols, std::vector<Element> entries)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw InputError("matrix entry count does not match its shape");
  }

  static Matrix identity(const R& ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
    return m;
  }

  static Matrix scalar(const R& ring, std::size_t n, const Element& value) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
    return m;
  }

  static Matrix from_rows(const R& ring, const std::vector<std::vector<Element>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<Element> data;
    data.reserve(rows.size() * cols);
    for (const auto& row : rows) {
      if (row.size() != cols) throw InputError("ragged matrix rows");
      data.insert(data.end(), row.begin(), row.end());
    }
    return Matrix(ring, rows.size(), cols, std::move(data));
  }

  const R& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const Element& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw InputError("matrix index out of range");
    return (*this)(i, j);
  }

  const std::vector<Element>& entries() const { return data_; }

  std::vector<Element> row(std::size_t i) const {
    return std::vector<Element>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  std::vector<Element> col(std::size_t j) const {
    std::vector<Element> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!ring_.is_zero(x)) return false;
    }
    return true;
  }

  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& x = (*this)(i, j);
        if (i == j ? !ring_.equal(x, ring_.one()) : !ring_.is_zero(x)) return false;
      }
    }
    return true;
  }

  // Scalar multiple of the identity; the scalar is returned through `value`.
  bool is_scalar(Element* value = nullptr) const {
    if (!is_square()) return false;
    if (rows_ == 0) return true;
    const Element& d = (*this)(0, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& x = (*this)(i, j);
        if (i == j ? !ring_.equal(x, d) : !ring_.is_zero(x)) return false;
      }
    }
    if (value) *value = d;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k) {
      if (!a.ring_.equal(a.data_[k], b.data_[k])) return false;
    }
    return true;
  }

 private:
  R ring_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

// Per-axis block sizes of a block-partitioned square matrix.
struct BlockProfile {
  std::vector<std::size_t> sizes;

  std::size_t total() const { return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}); }
  std::size_t offset(std::size_t block) const {
    return std::accumulate(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(block), std::size_t{0});
  }
  friend bool operator==(const BlockProfile&, const BlockProfile&) = default;
};

}  // namespace cubic
