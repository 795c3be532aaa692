#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "qspectral/structured_operator.hpp"

namespace qspectral {

/// A radial band {r_inner <= |p| <= r_outer} of the closed upper half-plane,
/// with either end open. Circles, disks and annuli are all bands.
struct RadialBand {
  double r_inner = 0.0;
  double r_outer = 0.0;  // +infinity for an unbounded band
  bool inner_closed = true;
  bool outer_closed = true;

  bool contains_radius(double r, double tol = kSphereTolerance) const;
  bool is_circle() const { return r_inner == r_outer; }
  bool is_disk() const { return r_inner == 0.0 && inner_closed && !is_circle(); }
};

enum class PrimitiveKind {
  point,
  point_sequence,
  circle,
  disk,
  annulus,
  puncture,
  puncture_sequence
};

const char* to_string(PrimitiveKind kind);

/// One primitive of a region. Punctures remove points from the bands of the
/// same RegionSet; points and sequences are never removed.
struct RegionPrimitive {
  PrimitiveKind kind = PrimitiveKind::point;
  HalfPlanePoint point;       // point, puncture
  RadialBand band;            // circle, disk, annulus
  SequenceDescriptor sequence;  // point_sequence, puncture_sequence
  std::size_t start = 1;      // first sequence index included
  bool with_limit = false;    // point_sequence: the limit point is included

  /// (u, s) used to order primitives: the point, the first sequence point,
  /// or (0, r_inner) for a band.
  HalfPlanePoint anchor() const;
};

/// Axially symmetric subset of H given by its trace on the half-plane s >= 0.
class RegionSet {
 public:
  RegionSet() = default;

  static RegionSet point(const HalfPlanePoint& p);
  static RegionSet circle(double r);
  static RegionSet disk(double r, bool closed = true);
  static RegionSet band(const RadialBand& b);
  static RegionSet sequence(const SequenceDescriptor& seq, std::size_t start, bool with_limit);

  void add(const RegionPrimitive& prim) { prims_.push_back(prim); }
  const std::vector<RegionPrimitive>& primitives() const { return prims_; }
  bool empty() const;

  bool contains(const HalfPlanePoint& p) const;

  /// Bands, points and sequence limits, used as critical data by equality
  /// probing and by boundary distances.
  std::vector<double> critical_radii() const;
  std::vector<HalfPlanePoint> explicit_points() const;
  std::vector<SequenceDescriptor> sequences() const;

  /// Primitives sorted by anchor (u, then s), ties broken by kind.
  std::vector<RegionPrimitive> sorted_primitives() const;

  /// Distance from p to the nearest primitive boundary (band edges, points,
  /// sequence points and limits).
  double boundary_distance(const HalfPlanePoint& p) const;

  friend RegionSet unite(const RegionSet& a, const RegionSet& b);

 private:
  bool punctured(const HalfPlanePoint& p) const;
  bool in_band(const HalfPlanePoint& p) const;

  std::vector<RegionPrimitive> prims_;
};

RegionSet unite(const RegionSet& a, const RegionSet& b);

/// Set equality decided on a probe set that meets every cell of the common
/// refinement of both primitive lists.
bool region_equal(const RegionSet& a, const RegionSet& b);

/// CSV with header kind,u,s,r_inner,r_outer,inner_closed,outer_closed,
/// limit,offset,ratio,start,with_limit; rows sorted by anchor.
void write_csv(std::ostream& os, const RegionSet& r);

std::ostream& operator<<(std::ostream& os, const RegionSet& r);

}  // namespace qspectral
