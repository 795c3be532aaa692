#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qspectral/qmatrix.hpp"

namespace qspectral {

class malformed_operator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Spheres of the entries c + w lambda^m, m = 1, 2, ... of a geometric
/// diagonal family. Everything here depends on (c, w) only through
/// Re c, Re w, |Im c|^2, <Im c, Im w>, |Im w|^2, so a family and its
/// conjugate describe the same point sequence.
struct SequenceDescriptor {
  Quaterniond limit;
  Quaterniond offset;
  double ratio = 0.5;

  Quaterniond entry(std::size_t m) const;
  HalfPlanePoint point(std::size_t m) const { return sphere_of(entry(m)); }
  HalfPlanePoint limit_point() const { return sphere_of(limit); }

  /// All m >= 1 (ascending) with point(m) on the sphere p.
  std::vector<std::size_t> indices_at(const HalfPlanePoint& p, double tol = kSphereTolerance) const;

  /// Last index m at which |entry(m)| crosses or touches radius r; 0 if never.
  std::size_t last_radius_crossing(double r) const;

  /// Same point sequence (up to tolerance on the sphere invariants).
  bool same_sequence(const SequenceDescriptor& o, double tol = 1e-12) const;
};

struct DiagonalFamily {
  enum class Kind { constant, geometric };

  Kind kind = Kind::constant;
  Quaterniond value;   // constant value, or the geometric limit c
  Quaterniond offset;  // geometric offset w
  double ratio = 0.0;  // geometric ratio lambda in (0, 1)

  static DiagonalFamily constant(const Quaterniond& v) { return {Kind::constant, v, {}, 0.0}; }
  static DiagonalFamily geometric(const Quaterniond& limit, const Quaterniond& offset, double ratio) {
    return {Kind::geometric, limit, offset, ratio};
  }

  /// Entry at position m >= 1.
  Quaterniond entry(std::size_t m) const;
  /// A geometric family with zero offset is the constant family of its limit.
  bool is_constant_like() const { return kind == Kind::constant || offset.is_zero(); }
  SequenceDescriptor sequence() const { return {value, offset, ratio}; }
  double sup_norm() const;
};

enum class ShiftDirection { forward, backward };

/// Weighted unilateral shift e_m -> e_{m+1} alpha on its own copy of l^2
/// (forward), or its adjoint e_{m+1} -> e_m alpha (backward).
struct ShiftTail {
  double weight = 1.0;
  ShiftDirection direction = ShiftDirection::forward;
};

/// (psi, phi) represents the rank-one term phi' -> psi <phi|phi'>. Vectors are
/// finitely supported in the global coordinates (see StructuredOperator).
using PerturbationPair = std::pair<QVectord, QVectord>;

inline constexpr std::size_t kMaxPerturbationSupport = 4096;

/// Finite block (+) diagonal families (+) shift tails, plus an optional
/// finite-rank perturbation, acting on l^2(N, H).
///
/// Global coordinates: the finite block occupies 0 .. n-1; the infinite
/// components (diagonal families first, then shift tails, C in total) are
/// interleaved, position m of component c sitting at n + m*C + c. Truncating
/// every component to its first N positions keeps exactly the first n + N*C
/// coordinates.
struct StructuredOperator {
  std::optional<QMatrixd> finite_block;
  std::vector<DiagonalFamily> diagonal_families;
  std::vector<ShiftTail> shift_tails;
  std::vector<PerturbationPair> perturbation;

  std::size_t finite_dim() const { return finite_block ? finite_block->rows() : 0; }
  std::size_t infinite_components() const { return diagonal_families.size() + shift_tails.size(); }
  bool is_perturbed() const { return !perturbation.empty(); }
  bool is_infinite_dimensional() const { return infinite_components() > 0; }

  /// Global coordinate of position m (0-based) in infinite component c.
  std::size_t global_index(std::size_t component, std::size_t m) const {
    return finite_dim() + m * infinite_components() + component;
  }
  /// Largest global coordinate touched by the perturbation, plus one.
  std::size_t perturbation_support() const;

  /// The same operator without its perturbation.
  StructuredOperator unperturbed() const;

  /// Upper bound on the operator norm.
  double norm_bound() const;

  /// Throws malformed_operator on any violated invariant.
  void validate() const;
};

StructuredOperator adjoint(const StructuredOperator& a);

/// Attaches the pairs to the existing perturbation. The essential,
/// index and Weyl data of the result are those of a.
StructuredOperator perturb(const StructuredOperator& a, const std::vector<PerturbationPair>& pairs);

}  // namespace qspectral
