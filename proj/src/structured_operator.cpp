#include "qspectral/structured_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qspectral/linalg.hpp"

namespace qspectral {

namespace {

struct SphereInvariants {
  double a0, a1;  // Re c, Re w
  double b0, b1, b2;  // |Im c|^2, <Im c, Im w>, |Im w|^2
};

SphereInvariants invariants_of(const SequenceDescriptor& d) {
  const auto& c = d.limit;
  const auto& w = d.offset;
  return {c.q0, w.q0, c.q1 * c.q1 + c.q2 * c.q2 + c.q3 * c.q3,
          c.q1 * w.q1 + c.q2 * w.q2 + c.q3 * w.q3, w.q1 * w.q1 + w.q2 * w.q2 + w.q3 * w.q3};
}

// Candidate x = lambda^m values (x in (0, 1)) solving for the sphere p.
std::vector<double> candidate_powers(const SequenceDescriptor& d, const HalfPlanePoint& p,
                                     double tol) {
  const auto v = invariants_of(d);
  std::vector<double> xs;
  if (v.a1 != 0.0) {
    xs.push_back((p.u - v.a0) / v.a1);
  } else {
    if (std::abs(v.a0 - p.u) > tol) return xs;
    // b2 x^2 + 2 b1 x + b0 - s^2 = 0
    const double qa = v.b2, qb = 2.0 * v.b1, qc = v.b0 - p.s * p.s;
    if (qa == 0.0) return xs;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < -1e-12 * std::max(1.0, qb * qb)) return xs;
    const double sq = std::sqrt(std::max(0.0, disc));
    xs.push_back((-qb + sq) / (2.0 * qa));
    xs.push_back((-qb - sq) / (2.0 * qa));
  }
  return xs;
}

std::size_t index_near(double x, double ratio) {
  if (!(x > 0.0)) return 0;
  const double m = std::log(x) / std::log(ratio);
  if (!std::isfinite(m) || m < 0.0) return 0;
  if (m > 1e7) return 0;
  return static_cast<std::size_t>(std::llround(m));
}

}  // namespace

Quaterniond SequenceDescriptor::entry(std::size_t m) const {
  return limit + offset * std::pow(ratio, static_cast<double>(m));
}

std::vector<std::size_t> SequenceDescriptor::indices_at(const HalfPlanePoint& p, double tol) const {
  std::vector<std::size_t> out;
  if (offset.is_zero()) return out;
  for (double x : candidate_powers(*this, p, tol)) {
    const std::size_t m0 = index_near(x, ratio);
    for (std::size_t m = (m0 > 1 ? m0 - 1 : 1); m <= m0 + 1; ++m)
      if (same_sphere(point(m), p, tol) && std::find(out.begin(), out.end(), m) == out.end())
        out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t SequenceDescriptor::last_radius_crossing(double r) const {
  // |c + w x|^2 - r^2 = |w|^2 x^2 + 2 <c, w> x + |c|^2 - r^2, x = ratio^m.
  const double qa = offset.norm2();
  const double qb = 2.0 * (limit.q0 * offset.q0 + limit.q1 * offset.q1 + limit.q2 * offset.q2 +
                           limit.q3 * offset.q3);
  const double qc = limit.norm2() - r * r;
  if (qa == 0.0) return 0;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return 0;
  const double sq = std::sqrt(disc);
  std::size_t last = 0;
  for (double x : {(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)}) {
    if (!(x > 0.0)) continue;
    const double m = std::log(x) / std::log(ratio);
    if (!std::isfinite(m) || m < 0.0) continue;
    last = std::max(last, static_cast<std::size_t>(std::floor(m)) + 1);
  }
  return last;
}

bool SequenceDescriptor::same_sequence(const SequenceDescriptor& o, double tol) const {
  const auto a = invariants_of(*this), b = invariants_of(o);
  return std::abs(a.a0 - b.a0) <= tol && std::abs(a.a1 - b.a1) <= tol &&
         std::abs(a.b0 - b.b0) <= tol && std::abs(a.b1 - b.b1) <= tol &&
         std::abs(a.b2 - b.b2) <= tol && std::abs(ratio - o.ratio) <= tol;
}

Quaterniond DiagonalFamily::entry(std::size_t m) const {
  if (kind == Kind::constant) return value;
  return sequence().entry(m);
}

double DiagonalFamily::sup_norm() const {
  if (is_constant_like()) return norm(value);
  // |c + w x| is convex in x on (0, ratio]; the sup is at an endpoint.
  return std::max(norm(value), norm(value + offset * ratio));
}

std::size_t StructuredOperator::perturbation_support() const {
  std::size_t s = 0;
  for (const auto& [psi, phi] : perturbation) s = std::max({s, psi.size(), phi.size()});
  return s;
}

StructuredOperator StructuredOperator::unperturbed() const {
  StructuredOperator b = *this;
  b.perturbation.clear();
  return b;
}

double StructuredOperator::norm_bound() const {
  double n = 0.0;
  if (finite_block) n = operator_norm(*finite_block);
  for (const auto& f : diagonal_families) n = std::max(n, f.sup_norm());
  for (const auto& t : shift_tails) n = std::max(n, t.weight);
  for (const auto& [psi, phi] : perturbation) n += norm(psi) * norm(phi);
  return n;
}

namespace {

bool finite_quaternion(const Quaterniond& q) {
  return std::isfinite(q.q0) && std::isfinite(q.q1) && std::isfinite(q.q2) && std::isfinite(q.q3);
}

}  // namespace

void StructuredOperator::validate() const {
  if (finite_block) {
    if (!finite_block->is_square() || finite_block->rows() == 0)
      throw malformed_operator("finite_block must be a non-empty square matrix");
    for (std::size_t i = 0; i < finite_block->rows(); ++i)
      for (std::size_t j = 0; j < finite_block->cols(); ++j)
        if (!finite_quaternion((*finite_block)(i, j)))
          throw malformed_operator("finite_block has a non-finite entry");
  }
  for (const auto& f : diagonal_families) {
    if (!finite_quaternion(f.value) || !finite_quaternion(f.offset))
      throw malformed_operator("diagonal family has a non-finite parameter");
    if (f.kind == DiagonalFamily::Kind::geometric && !(f.ratio > 0.0 && f.ratio < 1.0))
      throw malformed_operator("geometric family ratio must lie in (0, 1)");
  }
  for (const auto& t : shift_tails)
    if (!(t.weight > 0.0) || !std::isfinite(t.weight))
      throw malformed_operator("shift weight must be a finite positive real");
  if (!finite_block && infinite_components() == 0)
    throw malformed_operator("operator has no components");
  for (const auto& [psi, phi] : perturbation) {
    for (const auto* v : {&psi, &phi}) {
      if (v->size() > kMaxPerturbationSupport)
        throw malformed_operator("unbounded support: perturbation vector longer than " +
                                 std::to_string(kMaxPerturbationSupport));
      for (std::size_t k = 0; k < v->size(); ++k)
        if (!finite_quaternion((*v)[k]))
          throw malformed_operator("unbounded support: non-finite perturbation entry");
    }
  }
  if (!is_infinite_dimensional() && perturbation_support() > finite_dim())
    throw malformed_operator("unbounded support: perturbation outside the finite space");
}

StructuredOperator adjoint(const StructuredOperator& a) {
  StructuredOperator b;
  if (a.finite_block) b.finite_block = adjoint(*a.finite_block);
  for (const auto& f : a.diagonal_families) {
    auto g = f;
    g.value = f.value.conj();
    g.offset = f.offset.conj();
    b.diagonal_families.push_back(g);
  }
  for (const auto& t : a.shift_tails) {
    auto u = t;
    u.direction = t.direction == ShiftDirection::forward ? ShiftDirection::backward
                                                         : ShiftDirection::forward;
    b.shift_tails.push_back(u);
  }
  // (psi <phi|.>)^dagger = phi <psi|.>
  for (const auto& [psi, phi] : a.perturbation) b.perturbation.emplace_back(phi, psi);
  return b;
}

StructuredOperator perturb(const StructuredOperator& a, const std::vector<PerturbationPair>& pairs) {
  StructuredOperator b = a;
  b.perturbation.insert(b.perturbation.end(), pairs.begin(), pairs.end());
  b.validate();
  return b;
}

}  // namespace qspectral
