#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qspectral/qmatrix.hpp"

namespace qspectral {

/// Relative pivot tolerance for floating rank decisions.
inline constexpr double kRankTolerance = 1e-9;

/// Complex adjoint embedding. Each entry q = z1 + z2 j (z1 = q0 + q1 i,
/// z2 = q2 + q3 i) becomes the block [[z1, z2], [-conj(z2), conj(z1)]].
/// chi(AB) = chi(A) chi(B) and chi(A^dagger) = chi(A)^H.
template <typename S>
Eigen::MatrixXcd chi(const QMatrix<S>& a) {
  Eigen::MatrixXcd c(2 * a.rows(), 2 * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& q = a(i, j);
      const std::complex<double> z1(to_double(q.q0), to_double(q.q1));
      const std::complex<double> z2(to_double(q.q2), to_double(q.q3));
      const auto r = static_cast<Eigen::Index>(2 * i);
      const auto s = static_cast<Eigen::Index>(2 * j);
      c(r, s) = z1;
      c(r, s + 1) = z2;
      c(r + 1, s) = -std::conj(z2);
      c(r + 1, s + 1) = std::conj(z1);
    }
  return c;
}

/// Inverse of chi on its image; reads the first row of each 2x2 block.
inline QMatrixd chi_inverse(const Eigen::MatrixXcd& c) {
  if (c.rows() % 2 != 0 || c.cols() % 2 != 0)
    throw dimension_error("chi_inverse: dimensions must be even");
  QMatrixd a(static_cast<std::size_t>(c.rows() / 2), static_cast<std::size_t>(c.cols() / 2));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto z1 = c(2 * i, 2 * j);
      const auto z2 = c(2 * i, 2 * j + 1);
      a(i, j) = Quaterniond(z1.real(), z1.imag(), z2.real(), z2.imag());
    }
  return a;
}

template <typename S>
struct RowEchelon {
  QMatrix<S> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row
  std::vector<std::size_t> free_cols;
  std::size_t rank() const { return pivots.size(); }
};

/// Quaternionic Gauss-Jordan elimination with left row operations, which
/// preserve the solution set of A x = 0 for right-linear x. Exact for
/// Rational; for double a pivot counts as zero below kRankTolerance times the
/// largest entry of A.
template <typename S>
RowEchelon<S> row_reduce(QMatrix<S> a) {
  RowEchelon<S> out;
  const std::size_t m = a.rows(), n = a.cols();
  double cutoff = 0.0;
  if constexpr (!is_exact_v<S>) cutoff = kRankTolerance * max_abs(a);

  std::size_t row = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = m;
    if constexpr (is_exact_v<S>) {
      for (std::size_t r = row; r < m; ++r)
        if (!a(r, c).is_zero()) { best = r; break; }
    } else {
      double best_mag = cutoff;
      for (std::size_t r = row; r < m; ++r) {
        const double mag = norm(a(r, c));
        if (mag > best_mag) { best_mag = mag; best = r; }
      }
    }
    if (best == m) {
      out.free_cols.push_back(c);
      if constexpr (!is_exact_v<S>)
        for (std::size_t r = row; r < m; ++r) a(r, c) = Quaternion<S>();
      continue;
    }
    if (best != row)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(row, j), a(best, j));

    const auto pinv = inverse(a(row, c));
    for (std::size_t j = c; j < n; ++j) a(row, j) = pinv * a(row, j);
    a(row, c) = Quaternion<S>(S(1));

    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a(r, c).is_zero()) continue;
      const auto f = a(r, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(row, j);
      a(r, c) = Quaternion<S>();
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

/// Right-H basis of ker(A): one vector per free column, with a 1 in the free
/// slot and zeros in the other free slots.
template <typename S>
std::vector<QVector<S>> kernel_basis(const QMatrix<S>& a) {
  const auto ech = row_reduce(a);
  std::vector<QVector<S>> basis;
  basis.reserve(ech.free_cols.size());
  for (std::size_t f : ech.free_cols) {
    QVector<S> x(a.cols());
    x[f] = Quaternion<S>(S(1));
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) x[ech.pivots[r]] = -ech.reduced(r, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Complex rank of chi(A) with Eigen's column-pivoting QR.
inline std::size_t chi_rank(const Eigen::MatrixXcd& c, double rel_tol = kRankTolerance) {
  if (c.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(c);
  qr.setThreshold(rel_tol);
  return static_cast<std::size_t>(qr.rank());
}

/// dim_H ran(A). Exact row reduction for Rational; rank(chi(A))/2 otherwise.
template <typename S>
std::size_t rank(const QMatrix<S>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  if constexpr (is_exact_v<S>) {
    return row_reduce(a).rank();
  } else {
    if (max_abs(a) == 0.0) return 0;
    return chi_rank(chi(a)) / 2;
  }
}

template <typename S>
std::size_t kernel_dim(const QMatrix<S>& a) {
  return a.cols() - rank(a);
}

/// Orthonormal family {phi_k} with <phi_j|phi_k> = delta_jk.
template <typename S>
struct HilbertBasis {
  std::vector<QVector<S>> vectors;

  std::size_t dimension() const { return vectors.size(); }
  std::size_t ambient() const { return vectors.empty() ? 0 : vectors.front().size(); }

  /// Unitary matrix whose columns are the basis vectors.
  QMatrix<S> as_matrix() const { return QMatrix<S>::from_columns(vectors, ambient()); }

  /// Coefficients <phi_k|phi>, so phi = sum_k phi_k <phi_k|phi>.
  std::vector<Quaternion<S>> coefficients(const QVector<S>& phi) const {
    std::vector<Quaternion<S>> c;
    c.reserve(vectors.size());
    for (const auto& v : vectors) c.push_back(inner(v, phi));
    return c;
  }

  static HilbertBasis canonical(std::size_t n) {
    HilbertBasis b;
    for (std::size_t k = 0; k < n; ++k) b.vectors.push_back(QVector<S>::unit(n, k));
    return b;
  }
};

/// Modified Gram-Schmidt with one re-orthogonalization pass. Coefficients are
/// applied on the right: v <- v - phi_j <phi_j|v>.
inline HilbertBasis<double> gram_schmidt(const std::vector<QVectord>& vectors) {
  HilbertBasis<double> out;
  for (const auto& v0 : vectors) {
    QVectord v = v0;
    const double original = norm(v0);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& phi : out.vectors) v -= phi * inner(phi, v);
    const double r = norm(v);
    if (original == 0.0 || r <= 1e-10 * original)
      throw rank_deficiency_error("gram_schmidt: input vectors are right-linearly dependent");
    out.vectors.push_back(v * Quaterniond(1.0 / r));
  }
  return out;
}

/// Singular values of chi(A), descending. Every value appears twice.
inline Eigen::VectorXd chi_singular_values(const Eigen::MatrixXcd& c) {
  if (c.size() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(c);
  return svd.singularValues();
}

/// Operator 2-norm, computed through chi.
template <typename S>
double operator_norm(const QMatrix<S>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return chi_singular_values(chi(a))(0);
}

}  // namespace qspectral
