#pragma once

#include "qspectral/linalg.hpp"

namespace qspectral {

/// Left scalar multiplication induced by a Hilbert basis {phi_k}:
///   q phi := sum_k phi_k q <phi_k|phi>.
/// The product depends on the basis; two bases generally give different
/// answers for the same (q, phi). Operators are stored in the standard
/// coordinates, so q phi = U diag(q) U^dagger phi with U = [phi_1 ... phi_n].
template <typename S>
class LeftMultStructure {
 public:
  explicit LeftMultStructure(HilbertBasis<S> basis)
      : basis_(std::move(basis)), unitary_(basis_.as_matrix()), unitary_adj_(adjoint(unitary_)) {}

  static LeftMultStructure canonical(std::size_t n) {
    return LeftMultStructure(HilbertBasis<S>::canonical(n));
  }

  /// Builds the structure from a matrix whose columns form the basis.
  /// Throws dimension_error if the matrix is not square or not unitary.
  static LeftMultStructure from_unitary(const QMatrix<S>& u, double tol = 1e-10) {
    if (!u.is_square()) throw dimension_error("basis matrix must be square");
    const auto gram = matmul(adjoint(u), u);
    const auto id = QMatrix<S>::identity(u.rows());
    if (max_abs(gram - id) > tol) throw dimension_error("basis matrix is not unitary");
    HilbertBasis<S> b;
    for (std::size_t j = 0; j < u.cols(); ++j) b.vectors.push_back(u.col(j));
    return LeftMultStructure(std::move(b));
  }

  std::size_t dimension() const { return basis_.dimension(); }
  const HilbertBasis<S>& basis() const { return basis_; }

  /// Matrix of phi -> q phi in standard coordinates.
  QMatrix<S> multiplier(const Quaternion<S>& q) const {
    const std::size_t n = dimension();
    QMatrix<S> d(n, n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = q;
    return matmul(matmul(unitary_, d), unitary_adj_);
  }

 private:
  HilbertBasis<S> basis_;
  QMatrix<S> unitary_;
  QMatrix<S> unitary_adj_;
};

template <typename S>
QVector<S> left_scalar_vec(const LeftMultStructure<S>& l, const Quaternion<S>& q,
                           const QVector<S>& phi) {
  if (phi.size() != l.dimension()) throw dimension_error("left_scalar_vec: length mismatch");
  QVector<S> out(phi.size());
  for (const auto& v : l.basis().vectors) out += v * (q * inner(v, phi));
  return out;
}

/// (qA) phi := q (A phi).
template <typename S>
QMatrix<S> left_scalar_op(const LeftMultStructure<S>& l, const Quaternion<S>& q,
                          const QMatrix<S>& a) {
  if (a.rows() != l.dimension()) throw dimension_error("left_scalar_op: dimension mismatch");
  return matmul(l.multiplier(q), a);
}

/// (Aq) phi := A (q phi).
template <typename S>
QMatrix<S> right_scalar_op(const LeftMultStructure<S>& l, const QMatrix<S>& a,
                           const Quaternion<S>& q) {
  if (a.cols() != l.dimension()) throw dimension_error("right_scalar_op: dimension mismatch");
  return matmul(a, l.multiplier(q));
}

/// Checks (qA)^dagger = A^dagger conj(q) and (Aq)^dagger = conj(q) A^dagger
/// entrywise to tol.
template <typename S>
bool adjoint_identities_check(const LeftMultStructure<S>& l, const Quaternion<S>& q,
                              const QMatrix<S>& a, double tol = 1e-10) {
  const auto adj_a = adjoint(a);
  const auto lhs1 = adjoint(left_scalar_op(l, q, a));
  const auto rhs1 = right_scalar_op(l, adj_a, q.conj());
  const auto lhs2 = adjoint(right_scalar_op(l, a, q));
  const auto rhs2 = left_scalar_op(l, q.conj(), adj_a);
  return max_abs(lhs1 - rhs1) <= tol && max_abs(lhs2 - rhs2) <= tol;
}

}  // namespace qspectral
