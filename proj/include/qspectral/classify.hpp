#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qspectral/finite_spectrum.hpp"
#include "qspectral/region_set.hpp"
#include "qspectral/structured_operator.hpp"

namespace qspectral {

/// Element of N-bar_0 = {0, 1, 2, ..., infinity}.
struct ExtendedCount {
  std::size_t value = 0;
  bool infinite = false;

  static ExtendedCount inf() { return {0, true}; }
  bool is_zero() const { return !infinite && value == 0; }
  friend bool operator==(const ExtendedCount&, const ExtendedCount&) = default;
  friend ExtendedCount operator+(ExtendedCount a, ExtendedCount b) {
    if (a.infinite || b.infinite) return inf();
    return {a.value + b.value, false};
  }
  friend ExtendedCount max(ExtendedCount a, ExtendedCount b) {
    if (a.infinite || b.infinite) return inf();
    return {std::max(a.value, b.value), false};
  }
};

std::ostream& operator<<(std::ostream& os, const ExtendedCount& c);

/// Fredholm index: an integer, +-infinity, or undefined off the
/// semi-Fredholm points.
struct FredholmIndex {
  enum class Kind { finite, plus_infinity, minus_infinity, undefined };
  Kind kind = Kind::undefined;
  long long value = 0;

  bool is_finite() const { return kind == Kind::finite; }
  friend bool operator==(const FredholmIndex&, const FredholmIndex&) = default;
};

std::ostream& operator<<(std::ostream& os, const FredholmIndex& i);

/// Three-valued membership: perturbed operators delegate non-invariant sets.
enum class Verdict { no, yes, delegated };

const char* to_string(Verdict v);

struct SpectralClassification {
  HalfPlanePoint point;
  bool perturbed = false;

  Verdict resolvent = Verdict::no;
  Verdict point_spectrum = Verdict::no;
  Verdict residual_spectrum = Verdict::no;
  Verdict continuous_spectrum = Verdict::no;
  Verdict s_spectrum = Verdict::no;
  std::optional<ExtendedCount> kernel_dim;          // dim ker R_q(A)
  std::optional<ExtendedCount> adjoint_kernel_dim;  // dim ker R_q(A^dagger)

  bool left_semi_fredholm = false;
  bool right_semi_fredholm = false;
  bool fredholm = false;
  FredholmIndex index;

  bool essential_left = false;   // sigma_el
  bool essential_right = false;  // sigma_er
  bool essential = false;        // sigma_e
  bool plus_infinity = false;    // sigma_{+inf}
  bool minus_infinity = false;   // sigma_{-inf}
  /// k with p in sigma_k (k != 0); empty otherwise.
  std::optional<long long> sigma_k;

  Verdict sigma_0 = Verdict::no;
  Verdict weyl = Verdict::no;  // ws, exact for every operator
  Verdict browder = Verdict::no;
  Verdict isolated = Verdict::no;
  Verdict accumulation = Verdict::no;
  Verdict pi_0 = Verdict::no;

  std::optional<ExtendedCount> ascent;   // of R_q(A)
  std::optional<ExtendedCount> descent;  // of R_q(A)

  /// One-line verdict, e.g. "sigma_rS; Fredholm index -2; in ws, Bs; ...".
  std::string summary() const;
};

std::ostream& operator<<(std::ostream& os, const SpectralClassification& c);

SpectralClassification classify(const StructuredOperator& a, const HalfPlanePoint& p);

FredholmIndex fredholm_index(const StructuredOperator& a, const HalfPlanePoint& p);

/// Names of the sets reported by spectrum_regions.
enum class SetName {
  sigma_s,
  sigma_ps,
  sigma_rs,
  sigma_cs,
  sigma_e,
  sigma_el,
  sigma_er,
  sigma_plus_inf,
  sigma_minus_inf,
  sigma_0,
  weyl,
  browder,
  iso,
  acc,
  pi_0
};

const char* to_string(SetName n);
/// Recognizes the names above and "sigma_k:<k>"; returns false otherwise.
bool is_known_set_name(const std::string& name);
/// True for sets that stay exact under finite-rank perturbation.
bool is_perturbation_invariant(const std::string& name);

/// Name of sigma_k in region maps: "sigma_k:<k>".
std::string sigma_k_name(long long k);

/// Partition of the half-plane into cells on which classify is constant:
/// bands and circles between the shift radii, explicit spheres (finite block
/// eigenspheres, constant families, limits, leading family entries) and the
/// tails of geometric families.
class SpectralModel {
 public:
  struct Atom {
    enum class Kind { band, point, tail };
    Kind kind = Kind::band;
    RadialBand band;               // band
    HalfPlanePoint point;          // point
    std::size_t family = 0;        // tail: index into diagonal_families
    std::size_t start = 1;         // tail: first index of the tail
    HalfPlanePoint representative;
    std::size_t band_index = 0;    // enclosing band atom for points and tails
    SpectralClassification data;
  };
  using AtomSet = std::vector<bool>;

  explicit SpectralModel(const StructuredOperator& a);

  const StructuredOperator& op() const { return op_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  AtomSet members(SetName n) const;
  AtomSet sigma_k(long long k) const;
  /// Every k != 0 occurring in some sigma_k.
  std::vector<long long> indices() const;

  RegionSet region(const AtomSet& s) const;

  /// Distance to the nearest cell boundary: shift circles, explicit spheres,
  /// family entries and limits.
  double boundary_distance(const HalfPlanePoint& p) const;

 private:
  void add_band_atoms();
  void add_point_atoms();
  std::size_t band_of(const HalfPlanePoint& p) const;

  StructuredOperator op_;
  std::vector<double> radii_;
  std::vector<Atom> atoms_;
  std::vector<std::size_t> band_atoms_;
};

SpectralModel::AtomSet operator|(const SpectralModel::AtomSet& a, const SpectralModel::AtomSet& b);
SpectralModel::AtomSet operator&(const SpectralModel::AtomSet& a, const SpectralModel::AtomSet& b);
SpectralModel::AtomSet operator-(const SpectralModel::AtomSet& a, const SpectralModel::AtomSet& b);
bool none(const SpectralModel::AtomSet& a);

/// Exact regions of every set. For a perturbed operator only the
/// perturbation-invariant sets are present.
std::map<std::string, RegionSet> spectrum_regions(const StructuredOperator& a);

RegionSet weyl_spectrum(const StructuredOperator& a);
/// Throws std::domain_error for perturbed operators, where Bs is delegated.
RegionSet browder_spectrum(const StructuredOperator& a);

namespace testing {

/// Test-only hook applied to every classification before it is returned;
/// used to check that invariant suites detect a faulty classifier.
void set_classifier_fault(std::function<void(SpectralClassification&)> fault);
void clear_classifier_fault();

}  // namespace testing

}  // namespace qspectral
