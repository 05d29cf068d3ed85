#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hitbend/poly.hpp"

namespace hitbend {

/// Dense row-major matrix over one of the coefficient rings in ring.hpp.
template <class T>
class Matrix {
 public:
  using ring_type = Ring<T>;

  Matrix() = default;
  Matrix(ring_type ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_.zero()) {}
  Matrix(ring_type ring, std::size_t rows, std::size_t cols, std::vector<T> data)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(std::move(data)) {
    require(data_.size() == rows * cols, ErrorCode::SizeMismatch, "matrix data size");
  }
  Matrix(ring_type ring, const std::vector<std::vector<T>>& rows) : ring_(std::move(ring)) {
    rows_ = rows.size();
    cols_ = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows) {
      require(r.size() == cols_, ErrorCode::SizeMismatch, "ragged matrix rows");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(const ring_type& ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
    return m;
  }
  static Matrix scalar(const ring_type& ring, std::size_t n, const T& s) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
  }
  /// Companion matrix of a monic polynomial: subdiagonal ones, last column
  /// holding the negated low coefficients.
  static Matrix companion(const Poly<T>& f) {
    require(f.is_monic() && f.degree() >= 1, ErrorCode::PreconditionViolated,
            "companion needs a monic polynomial of degree >= 1");
    const auto n = static_cast<std::size_t>(f.degree());
    Matrix m(f.ring(), n, n);
    for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = f.ring().one();
    for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -f.coeffs()[i];
    return m;
  }
  static Matrix block_diag(const ring_type& ring, const std::vector<Matrix>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    Matrix m(ring, n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
      off += b.rows();
    }
    return m;
  }

  const ring_type& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<T>& data() const { return data_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v;
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }
  void set_column(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T t = ring_.zero();
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_identity() const { return *this == identity(ring_, rows_); }
  bool is_zero() const {
    for (const auto& x : data_)
      if (!Ring<T>::is_zero(x)) return false;
    return true;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix scaled(const T& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x *= s;
    return r;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    require(v.size() == cols_, ErrorCode::SizeMismatch, "matrix-vector size");
    std::vector<T> out(rows_, ring_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        if (!Ring<T>::is_zero(v[k])) out[i] += (*this)(i, k) * v[k];
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, ErrorCode::SizeMismatch, "matrix product shapes");
    Matrix c(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (Ring<T>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix pow(unsigned long e) const {
    Matrix r = identity(ring_, rows_), b = *this;
    while (e) {
      if (e & 1UL) r = r * b;
      e >>= 1UL;
      if (e) b = b * b;
    }
    return r;
  }

  /// Division-free characteristic polynomial det(tI - M) (Berkowitz).
  Poly<T> charpoly() const {
    require(is_square(), ErrorCode::SizeMismatch, "charpoly of non-square matrix");
    const std::size_t n = rows_;
    if (n == 0) return Poly<T>::constant(ring_, ring_.one());
    // Coefficient vectors are stored highest degree first.
    std::vector<T> vec{ring_.one(), -(*this)(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
      // Toeplitz column: 1, -a_rr, -R S, -R M S, ..., -R M^{r-1} S
      std::vector<T> toeplitz{ring_.one(), -(*this)(r, r)};
      std::vector<T> s(r);
      for (std::size_t i = 0; i < r; ++i) s[i] = (*this)(i, r);
      for (std::size_t k = 0; k < r; ++k) {
        T dot = ring_.zero();
        for (std::size_t i = 0; i < r; ++i) dot += (*this)(r, i) * s[i];
        toeplitz.push_back(-dot);
        std::vector<T> next(r, ring_.zero());
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) next[i] += (*this)(i, j) * s[j];
        s = std::move(next);
      }
      std::vector<T> out(r + 2, ring_.zero());
      for (std::size_t i = 0; i < r + 2; ++i)
        for (std::size_t j = 0; j <= std::min(i, r); ++j) out[i] += toeplitz[i - j] * vec[j];
      vec = std::move(out);
    }
    std::vector<T> c(vec.rbegin(), vec.rend());
    return Poly<T>(ring_, std::move(c));
  }

 private:
  void check_same_shape(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::SizeMismatch, "matrix shapes differ");
  }

  ring_type ring_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Reduced row echelon form over a field. Pivots are taken in the first
/// nonzero column, scanning rows top to bottom. Returns pivot columns.
template <class T>
std::vector<std::size_t> rref_in_place(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && Ring<T>::is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const T inv = Ring<T>::inverse(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || Ring<T>::is_zero(m(r, col))) continue;
      const T f = m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of {x : m x = 0}, one vector per free column in increasing order.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
  const auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(m.cols(), m.ring().zero());
    v[f] = m.ring().one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return rref_in_place(m).size();
}

/// Fraction-free determinant (Bareiss); exact division holds over any field.
template <class T>
T det(Matrix<T> m) {
  require(m.is_square(), ErrorCode::SizeMismatch, "det of non-square matrix");
  const std::size_t n = m.rows();
  const auto& ring = m.ring();
  if (n == 0) return ring.one();
  T prev = ring.one();
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (Ring<T>::is_zero(m(k, k))) {
      std::size_t piv = k + 1;
      while (piv < n && Ring<T>::is_zero(m(piv, k))) ++piv;
      if (piv == n) return ring.zero();
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      negate = !negate;
    }
    const T inv_prev = Ring<T>::inverse(prev);
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) * inv_prev;
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  return negate ? -d : d;
}

/// Exact inverse by Gauss-Jordan elimination.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  require(m.is_square(), ErrorCode::SizeMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> aug(m.ring(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.ring().one();
  }
  const auto pivots = rref_in_place(aug);
  require(pivots.size() == n && pivots.back() == n - 1, ErrorCode::Singular, "matrix is singular");
  Matrix<T> inv(m.ring(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Solve m x = b; nullopt if inconsistent. Free variables are set to zero.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
  Matrix<T> aug(m.ring(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<T> x(m.cols(), m.ring().zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

/// p(M) by Horner.
template <class T>
Matrix<T> eval_poly(const Poly<T>& p, const Matrix<T>& m) {
  Matrix<T> acc(m.ring(), m.rows(), m.cols());
  const auto id = Matrix<T>::identity(m.ring(), m.rows());
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * m + id.scaled(*it);
  return acc;
}

using NfMatrix = Matrix<NfElement>;
using QMatrix = Matrix<Rational>;
using FpDenseMatrix = Matrix<Fp>;

}  // namespace hitbend
