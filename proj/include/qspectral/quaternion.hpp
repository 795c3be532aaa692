#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "qspectral/scalar.hpp"

namespace qspectral {

/// q = q0 + q1 i + q2 j + q3 k with i^2 = j^2 = k^2 = ijk = -1.
template <typename Scalar>
struct Quaternion {
  Scalar q0{}, q1{}, q2{}, q3{};

  Quaternion() = default;
  Quaternion(Scalar a) : q0(std::move(a)) {}  // NOLINT: real scalars embed implicitly
  Quaternion(Scalar a, Scalar b, Scalar c, Scalar d)
      : q0(std::move(a)), q1(std::move(b)), q2(std::move(c)), q3(std::move(d)) {}

  static Quaternion i() { return {Scalar(0), Scalar(1), Scalar(0), Scalar(0)}; }
  static Quaternion j() { return {Scalar(0), Scalar(0), Scalar(1), Scalar(0)}; }
  static Quaternion k() { return {Scalar(0), Scalar(0), Scalar(0), Scalar(1)}; }

  const Scalar& real() const { return q0; }
  Quaternion imag() const { return {Scalar(0), q1, q2, q3}; }

  Quaternion conj() const { return {q0, -q1, -q2, -q3}; }
  Scalar norm2() const { return q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3; }
  Scalar imag_norm2() const { return q1 * q1 + q2 * q2 + q3 * q3; }
  bool is_zero() const {
    return qspectral::is_zero(q0) && qspectral::is_zero(q1) && qspectral::is_zero(q2) &&
           qspectral::is_zero(q3);
  }
  bool is_real() const {
    return qspectral::is_zero(q1) && qspectral::is_zero(q2) && qspectral::is_zero(q3);
  }

  Quaternion operator-() const { return {-q0, -q1, -q2, -q3}; }

  Quaternion& operator+=(const Quaternion& o) {
    q0 += o.q0; q1 += o.q1; q2 += o.q2; q3 += o.q3;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    q0 -= o.q0; q1 -= o.q1; q2 -= o.q2; q3 -= o.q3;
    return *this;
  }
  Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }

  // Hamilton product; order matters.
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
            a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
            a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
            a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0};
  }

  friend Quaternion operator*(const Quaternion& a, const Scalar& r) {
    return {a.q0 * r, a.q1 * r, a.q2 * r, a.q3 * r};
  }
  friend Quaternion operator*(const Scalar& r, const Quaternion& a) { return a * r; }
  friend Quaternion operator/(const Quaternion& a, const Scalar& r) {
    return {a.q0 / r, a.q1 / r, a.q2 / r, a.q3 / r};
  }

  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.q0 == b.q0 && a.q1 == b.q1 && a.q2 == b.q2 && a.q3 == b.q3;
  }
  friend bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '[' << q.q0 << ", " << q.q1 << ", " << q.q2 << ", " << q.q3 << ']';
  }
};

using Quaterniond = Quaternion<double>;
using Quaternionq = Quaternion<Rational>;

template <typename S>
Quaternion<S> mul(const Quaternion<S>& p, const Quaternion<S>& q) {
  return p * q;
}

template <typename S>
Quaternion<S> conj(const Quaternion<S>& q) {
  return q.conj();
}

template <typename S>
S norm2(const Quaternion<S>& q) {
  return q.norm2();
}

template <typename S>
double norm(const Quaternion<S>& q) {
  return std::sqrt(to_double(q.norm2()));
}

/// conj(q) / |q|^2. Throws std::domain_error for q = 0.
template <typename S>
Quaternion<S> inverse(const Quaternion<S>& q) {
  if (q.is_zero()) throw std::domain_error("non-invertible: zero quaternion");
  return q.conj() / q.norm2();
}

template <typename To, typename From>
Quaternion<To> quaternion_cast(const Quaternion<From>& q) {
  return {scalar_cast<To>(q.q0), scalar_cast<To>(q.q1), scalar_cast<To>(q.q2),
          scalar_cast<To>(q.q3)};
}

/// Similarity sphere [q] = Re q + |Im q| S, reduced to its point (u, s) in
/// the closed upper half-plane.
struct HalfPlanePoint {
  double u = 0.0;
  double s = 0.0;

  double radius() const { return std::hypot(u, s); }
  friend bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;
  friend std::ostream& operator<<(std::ostream& os, const HalfPlanePoint& p) {
    return os << '(' << p.u << ", " << p.s << ')';
  }
};

/// Absolute tolerance for comparing spheres given in floating point.
inline constexpr double kSphereTolerance = 1e-12;

inline bool same_sphere(const HalfPlanePoint& a, const HalfPlanePoint& b,
                        double tol = kSphereTolerance) {
  return std::abs(a.u - b.u) <= tol && std::abs(a.s - b.s) <= tol;
}

template <typename S>
HalfPlanePoint sphere_of(const Quaternion<S>& q) {
  return {to_double(q.q0), std::sqrt(to_double(q.imag_norm2()))};
}

/// Canonical representative u + s i of the sphere, in the {1, i} slice.
inline Quaterniond slice_representative(const HalfPlanePoint& p) {
  if (p.s < 0.0) throw std::invalid_argument("slice_representative: s must be non-negative");
  return {p.u, p.s, 0.0, 0.0};
}

}  // namespace qspectral
