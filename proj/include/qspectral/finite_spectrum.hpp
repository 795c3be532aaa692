#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qspectral/linalg.hpp"

namespace qspectral {

/// A point q is on an eigensphere of A when the smallest singular value of
/// chi(R_q(A)) is below this fraction of the largest.
inline constexpr double kMembershipTolerance = 1e-8;

class numerical_error : public std::runtime_error {
 public:
  numerical_error(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

enum class SpectralTag { resolvent, point, residual, continuous };

const char* to_string(SpectralTag tag);

/// R_q(A) = A^2 - 2 Re(q) A + |q|^2 I, from Re q and |q|^2 only.
template <typename S>
QMatrix<S> pseudo_resolvent(const QMatrix<S>& a, const S& re, const S& modulus2) {
  if (!a.is_square()) throw dimension_error("pseudo_resolvent: matrix must be square");
  QMatrix<S> r = matmul(a, a);
  const S two_re = S(2) * re;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) -= a(i, j) * two_re;
  for (std::size_t i = 0; i < a.rows(); ++i) r(i, i) += Quaternion<S>(modulus2);
  return r;
}

template <typename S>
QMatrix<S> pseudo_resolvent(const QMatrix<S>& a, const Quaternion<S>& q) {
  return pseudo_resolvent(a, q.real(), q.norm2());
}

inline QMatrixd pseudo_resolvent(const QMatrixd& a, const HalfPlanePoint& p) {
  return pseudo_resolvent(a, p.u, p.u * p.u + p.s * p.s);
}

/// dim_H ker A from the singular values of chi(A): those at most
/// rel_tol * max(sigma_max, scale) count as zero.
std::size_t numeric_kernel_dim(const QMatrixd& a, double rel_tol = kMembershipTolerance,
                               double scale = 0.0);

/// sigma_min(chi(A)) / max(sigma_max(chi(A)), scale); zero for the zero matrix.
double relative_min_singular_value(const QMatrixd& a, double scale = 0.0);

/// ||A||^2 + 2|u| ||A|| + |q|^2, the size of the terms summed in R_q(A).
double resolvent_scale(const QMatrixd& a, const HalfPlanePoint& p);

/// dim_H ker R_q(A) measured against resolvent_scale.
std::size_t resolvent_kernel_dim(const QMatrixd& a, const HalfPlanePoint& p);

/// Smallest singular value of chi(R_q(A)) relative to resolvent_scale.
double resolvent_residual(const QMatrixd& a, const HalfPlanePoint& p);

struct Eigensphere {
  HalfPlanePoint point;
  std::size_t multiplicity = 0;  // dim_H ker R_q(A)
  bool exact = false;            // multiplicity verified in rational arithmetic
};

struct EigensphereSet {
  std::vector<Eigensphere> spheres;  // sorted by u, then s

  std::size_t total_multiplicity() const;
  /// Index of the sphere matching p within tol, or -1.
  int find(const HalfPlanePoint& p, double tol) const;
};

/// Right eigenvalue spheres of a square matrix from the eigenvalues of chi(A).
/// Throws numerical_error when the eigensolver fails or a detected sphere
/// does not make R_q(A) numerically singular.
EigensphereSet right_eigenspheres(const QMatrixd& a);

/// Rational input: for n <= 3 the exact characteristic-polynomial path runs
/// alongside the QR path and any discrepancy above 1e-6 throws. Multiplicities
/// are computed exactly whenever the sphere has rational Re q and |q|^2.
EigensphereSet right_eigenspheres(const QMatrixq& a);

/// RESOLVENT if R_q(A) is invertible, POINT otherwise. A square matrix with
/// no inverse has a kernel, so residual and continuous never occur here.
SpectralTag s_spectrum_membership(const QMatrixd& a, const Quaterniond& q);
SpectralTag s_spectrum_membership(const QMatrixq& a, const Quaternionq& q);

struct AscDescReport {
  unsigned ascent = 0;
  unsigned descent = 0;
  unsigned stabilization = 0;           // m = ascent = descent
  std::vector<std::size_t> power_ranks;  // rank(A^k), k = 0 .. stabilization + 1
};

/// Ascent and descent from the ranks of A^k. Kernels grow and ranges shrink
/// monotonically, so equal ranks at consecutive powers mean equal subspaces.
template <typename S>
AscDescReport asc_dsc(const QMatrix<S>& a) {
  if (!a.is_square()) throw dimension_error("asc_dsc: matrix must be square");
  AscDescReport rep;
  QMatrix<S> p = QMatrix<S>::identity(a.rows());
  rep.power_ranks.push_back(rank(p));
  for (unsigned k = 0; k <= a.rows(); ++k) {
    p = matmul(p, a);
    rep.power_ranks.push_back(rank(p));
    if (rep.power_ranks[k + 1] == rep.power_ranks[k]) {
      rep.ascent = rep.descent = rep.stabilization = k;
      return rep;
    }
  }
  throw numerical_error("asc_dsc: ranks of powers did not stabilize within n steps", 0.0);
}

/// ker(A^m) and ran(A^m) are algebraic complements: together they span H^n
/// and their dimensions add up to n.
template <typename S>
bool ker_ran_complementary(const QMatrix<S>& a, unsigned m) {
  const auto am = power(a, m);
  const auto ker = kernel_basis(am);
  const std::size_t r = rank(am);
  if (ker.size() + r != a.rows()) return false;
  QMatrix<S> joined(a.rows(), ker.size() + a.cols());
  for (std::size_t j = 0; j < ker.size(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) joined(i, j) = ker[j][i];
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) joined(i, ker.size() + j) = am(i, j);
  return rank(joined) == a.rows();
}

namespace detail {

/// Exact characteristic polynomial det(tI - chi(A)), lowest degree first.
std::vector<Rational> chi_characteristic_polynomial(const QMatrixq& a);

/// p / gcd(p, p'), made monic.
std::vector<Rational> squarefree_part(const std::vector<Rational>& p);

/// Spheres of the roots of a real polynomial with simple roots.
std::vector<HalfPlanePoint> polynomial_root_spheres(const std::vector<Rational>& p);

}  // namespace detail

}  // namespace qspectral
