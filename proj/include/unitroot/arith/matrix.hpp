#pragma once

#include <cstddef>
#include <vector>

#include "unitroot/error.hpp"

namespace unitroot {

/// Dense row-major matrix. Arithmetic lives in ring-parameterized free functions
/// because element operations need the ring context (modulus, precision).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class Ring>
Matrix<typename Ring::value_type> identity(const Ring& ring, std::size_t n) {
  Matrix<typename Ring::value_type> m(n, n, ring.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

template <class Ring>
Matrix<typename Ring::value_type> multiply(const Ring& ring, const Matrix<typename Ring::value_type>& a,
                                           const Matrix<typename Ring::value_type>& b) {
  ensure(a.cols() == b.rows(), "matrix dimension mismatch");
  Matrix<typename Ring::value_type> out(a.rows(), b.cols(), ring.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (ring.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = ring.add(out(i, j), ring.mul(a(i, k), b(k, j)));
    }
  return out;
}

template <class Ring>
bool matrices_equal(const Ring& ring, const Matrix<typename Ring::value_type>& a,
                    const Matrix<typename Ring::value_type>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!ring.equal(a(i, j), b(i, j))) return false;
  return true;
}

/// Coefficients [1, c_1, ..., c_n] of det(I - tA), i.e. the reversed characteristic
/// polynomial. Berkowitz's algorithm: division free, so valid over Z/p^k[t]/(g).
template <class Ring>
std::vector<typename Ring::value_type> reversed_charpoly(const Ring& ring, const Matrix<typename Ring::value_type>& a) {
  using T = typename Ring::value_type;
  ensure(a.square(), "characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<T> v{ring.one()};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<T> q(r + 2, ring.zero());
    q[0] = ring.one();
    q[1] = ring.neg(a(r, r));
    std::vector<T> x(r);
    for (std::size_t i = 0; i < r; ++i) x[i] = a(i, r);
    for (std::size_t k = 2; k <= r + 1; ++k) {
      T dot = ring.zero();
      for (std::size_t i = 0; i < r; ++i) dot = ring.add(dot, ring.mul(a(r, i), x[i]));
      q[k] = ring.neg(dot);
      if (k == r + 1) break;
      std::vector<T> next(r, ring.zero());
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] = ring.add(next[i], ring.mul(a(i, j), x[j]));
      x = std::move(next);
    }
    std::vector<T> w(r + 2, ring.zero());
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < v.size(); ++j) w[i] = ring.add(w[i], ring.mul(q[i - j], v[j]));
    v = std::move(w);
  }
  return v;
}

template <class Ring>
typename Ring::value_type determinant(const Ring& ring, const Matrix<typename Ring::value_type>& a) {
  auto cp = reversed_charpoly(ring, a);
  auto d = cp.back();
  return (a.rows() % 2) ? ring.neg(d) : d;
}

/// Gauss-Jordan inverse choosing unit pivots; throws NonUnitDeterminant if a column has none.
template <class Ring>
Matrix<typename Ring::value_type> inverse(const Ring& ring, Matrix<typename Ring::value_type> a) {
  ensure(a.square(), "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  auto inv = identity(ring, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (ring.is_unit(a(r, c))) {
        piv = r;
        break;
      }
    if (piv == n) throw Error(ErrorKind::NonUnitDeterminant, "matrix determinant is not a unit");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    const auto s = ring.inv(a(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = ring.mul(a(c, j), s);
      inv(c, j) = ring.mul(inv(c, j), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || ring.is_zero(a(r, c))) continue;
      const auto f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = ring.sub(a(r, j), ring.mul(f, a(c, j)));
        inv(r, j) = ring.sub(inv(r, j), ring.mul(f, inv(c, j)));
      }
    }
  }
  return inv;
}

}  // namespace unitroot
