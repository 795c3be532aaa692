#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qspectral/quaternion.hpp"

namespace qspectral {

class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class rank_deficiency_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column vector in H^n. Scalars act on the right.
template <typename Scalar>
class QVector {
 public:
  using value_type = Quaternion<Scalar>;

  QVector() = default;
  explicit QVector(std::size_t n) : data_(n) {}
  QVector(std::initializer_list<value_type> init) : data_(init) {}
  explicit QVector(std::vector<value_type> data) : data_(std::move(data)) {}

  static QVector unit(std::size_t n, std::size_t k) {
    QVector v(n);
    v[k] = value_type(Scalar(1));
    return v;
  }

  std::size_t size() const { return data_.size(); }
  value_type& operator[](std::size_t k) { return data_[k]; }
  const value_type& operator[](std::size_t k) const { return data_[k]; }
  const std::vector<value_type>& entries() const { return data_; }

  QVector& operator+=(const QVector& o) {
    check_same(o);
    for (std::size_t k = 0; k < size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  QVector& operator-=(const QVector& o) {
    check_same(o);
    for (std::size_t k = 0; k < size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend QVector operator+(QVector a, const QVector& b) { return a += b; }
  friend QVector operator-(QVector a, const QVector& b) { return a -= b; }
  QVector operator-() const {
    QVector r(*this);
    for (auto& x : r.data_) x = -x;
    return r;
  }

  /// Right scalar multiplication phi * q.
  friend QVector operator*(const QVector& v, const value_type& q) {
    QVector r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = v[k] * q;
    return r;
  }

  friend bool operator==(const QVector& a, const QVector& b) { return a.data_ == b.data_; }

 private:
  void check_same(const QVector& o) const {
    if (o.size() != size()) throw dimension_error("QVector: length mismatch");
  }
  std::vector<value_type> data_;
};

/// <phi|psi> = sum conj(phi_k) psi_k; conjugate-linear in the first slot.
template <typename S>
Quaternion<S> inner(const QVector<S>& phi, const QVector<S>& psi) {
  if (phi.size() != psi.size()) throw dimension_error("inner: length mismatch");
  Quaternion<S> acc;
  for (std::size_t k = 0; k < phi.size(); ++k) acc += phi[k].conj() * psi[k];
  return acc;
}

template <typename S>
S norm2(const QVector<S>& v) {
  S acc(0);
  for (std::size_t k = 0; k < v.size(); ++k) acc += v[k].norm2();
  return acc;
}

template <typename S>
double norm(const QVector<S>& v) {
  return std::sqrt(to_double(norm2(v)));
}

/// Dense quaternionic matrix, row-major, acting on column vectors from the left.
template <typename Scalar>
class QMatrix {
 public:
  using value_type = Quaternion<Scalar>;

  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<value_type>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw dimension_error("QMatrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = value_type(Scalar(1));
    return m;
  }
  static QMatrix zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols); }
  static QMatrix diagonal(const std::vector<value_type>& d) {
    QMatrix m(d.size(), d.size());
    for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = d[k];
    return m;
  }
  static QMatrix from_columns(const std::vector<QVector<Scalar>>& cols, std::size_t rows) {
    QMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw dimension_error("from_columns: length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QVector<Scalar> col(std::size_t j) const {
    QVector<Scalar> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  QMatrix& operator+=(const QMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  QMatrix& operator-=(const QMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  QMatrix operator-() const {
    QMatrix r(*this);
    for (auto& x : r.data_) x = -x;
    return r;
  }

  /// Real scaling; real scalars commute with everything.
  friend QMatrix operator*(const Scalar& r, QMatrix a) {
    for (auto& x : a.data_) x = x * r;
    return a;
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const QMatrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw dimension_error("QMatrix: shape mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<value_type> data_;
};

using QMatrixd = QMatrix<double>;
using QMatrixq = QMatrix<Rational>;
using QVectord = QVector<double>;
using QVectorq = QVector<Rational>;

/// (AB)_ij = sum_k A_ik B_kj, left factor first in every quaternion product.
template <typename S>
QMatrix<S> matmul(const QMatrix<S>& a, const QMatrix<S>& b) {
  if (a.cols() != b.rows()) throw dimension_error("matmul: inner dimension mismatch");
  QMatrix<S> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <typename S>
QMatrix<S> operator*(const QMatrix<S>& a, const QMatrix<S>& b) {
  return matmul(a, b);
}

template <typename S>
QVector<S> apply(const QMatrix<S>& a, const QVector<S>& v) {
  if (a.cols() != v.size()) throw dimension_error("apply: dimension mismatch");
  QVector<S> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) r[i] += a(i, k) * v[k];
  return r;
}

template <typename S>
QVector<S> operator*(const QMatrix<S>& a, const QVector<S>& v) {
  return apply(a, v);
}

/// (A^dagger)_ij = conj(A_ji).
template <typename S>
QMatrix<S> adjoint(const QMatrix<S>& a) {
  QMatrix<S> r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j).conj();
  return r;
}

template <typename S>
QMatrix<S> power(const QMatrix<S>& a, unsigned k) {
  if (!a.is_square()) throw dimension_error("power: matrix must be square");
  QMatrix<S> r = QMatrix<S>::identity(a.rows());
  for (unsigned e = 0; e < k; ++e) r = matmul(r, a);
  return r;
}

template <typename To, typename From>
QMatrix<To> matrix_cast(const QMatrix<From>& a) {
  QMatrix<To> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = quaternion_cast<To>(a(i, j));
  return r;
}

template <typename To, typename From>
QVector<To> vector_cast(const QVector<From>& v) {
  QVector<To> r(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) r[k] = quaternion_cast<To>(v[k]);
  return r;
}

/// Largest entry modulus; used for scaling tolerances.
template <typename S>
double max_abs(const QMatrix<S>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, norm(a(i, j)));
  return m;
}

/// The operator phi -> sum_j psi_j <phi_j|phi>.
template <typename S>
QMatrix<S> finite_rank_op(const std::vector<std::pair<QVector<S>, QVector<S>>>& pairs,
                          std::size_t rows, std::size_t cols) {
  QMatrix<S> k(rows, cols);
  for (const auto& [psi, phi] : pairs) {
    if (psi.size() != rows || phi.size() != cols)
      throw dimension_error("finite_rank_op: vector length mismatch");
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t b = 0; b < cols; ++b) k(a, b) += psi[a] * phi[b].conj();
  }
  return k;
}

template <typename S>
QMatrix<S> finite_rank_op(const std::vector<std::pair<QVector<S>, QVector<S>>>& pairs) {
  if (pairs.empty()) throw dimension_error("finite_rank_op: empty pair list needs explicit shape");
  return finite_rank_op(pairs, pairs.front().first.size(), pairs.front().second.size());
}

}  // namespace qspectral
