#include "qspectral/region_set.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <tuple>

namespace qspectral {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_band_kind(PrimitiveKind k) {
  return k == PrimitiveKind::circle || k == PrimitiveKind::disk || k == PrimitiveKind::annulus;
}

bool is_sequence_kind(PrimitiveKind k) {
  return k == PrimitiveKind::point_sequence || k == PrimitiveKind::puncture_sequence;
}

PrimitiveKind band_kind(const RadialBand& b) {
  if (b.is_circle()) return PrimitiveKind::circle;
  if (b.is_disk()) return PrimitiveKind::disk;
  return PrimitiveKind::annulus;
}

bool sequence_hits(const SequenceDescriptor& seq, std::size_t start, const HalfPlanePoint& p) {
  for (std::size_t m : seq.indices_at(p))
    if (m >= start) return true;
  return false;
}

double point_distance(const HalfPlanePoint& a, const HalfPlanePoint& b) {
  return std::hypot(a.u - b.u, a.s - b.s);
}

void push_unique(std::vector<double>& v, double x) {
  for (double y : v)
    if (std::abs(x - y) <= kSphereTolerance) return;
  v.push_back(x);
}

void push_unique(std::vector<HalfPlanePoint>& v, const HalfPlanePoint& p) {
  for (const auto& q : v)
    if (same_sphere(p, q)) return;
  v.push_back(p);
}

}  // namespace

bool RadialBand::contains_radius(double r, double tol) const {
  const bool above = inner_closed ? r >= r_inner - tol : r > r_inner + tol;
  if (!above) return false;
  if (std::isinf(r_outer)) return true;
  return outer_closed ? r <= r_outer + tol : r < r_outer - tol;
}

const char* to_string(PrimitiveKind kind) {
  switch (kind) {
    case PrimitiveKind::point: return "POINT";
    case PrimitiveKind::point_sequence: return "POINT_SEQUENCE";
    case PrimitiveKind::circle: return "CIRCLE";
    case PrimitiveKind::disk: return "DISK";
    case PrimitiveKind::annulus: return "ANNULUS";
    case PrimitiveKind::puncture: return "PUNCTURE";
    case PrimitiveKind::puncture_sequence: return "PUNCTURE_SEQUENCE";
  }
  return "?";
}

HalfPlanePoint RegionPrimitive::anchor() const {
  if (is_band_kind(kind)) return {0.0, band.r_inner};
  if (is_sequence_kind(kind)) return sequence.point(start);
  return point;
}

RegionSet RegionSet::point(const HalfPlanePoint& p) {
  RegionSet r;
  RegionPrimitive prim;
  prim.kind = PrimitiveKind::point;
  prim.point = p;
  r.add(prim);
  return r;
}

RegionSet RegionSet::band(const RadialBand& b) {
  RegionSet r;
  RegionPrimitive prim;
  prim.kind = band_kind(b);
  prim.band = b;
  r.add(prim);
  return r;
}

RegionSet RegionSet::circle(double r) { return band({r, r, true, true}); }

RegionSet RegionSet::disk(double r, bool closed) { return band({0.0, r, true, closed}); }

RegionSet RegionSet::sequence(const SequenceDescriptor& seq, std::size_t start, bool with_limit) {
  RegionSet r;
  RegionPrimitive prim;
  prim.kind = PrimitiveKind::point_sequence;
  prim.sequence = seq;
  prim.start = start;
  prim.with_limit = with_limit;
  r.add(prim);
  return r;
}

bool RegionSet::in_band(const HalfPlanePoint& p) const {
  const double r = p.radius();
  for (const auto& prim : prims_)
    if (is_band_kind(prim.kind) && prim.band.contains_radius(r)) return true;
  return false;
}

bool RegionSet::punctured(const HalfPlanePoint& p) const {
  for (const auto& prim : prims_) {
    if (prim.kind == PrimitiveKind::puncture && same_sphere(prim.point, p)) return true;
    if (prim.kind == PrimitiveKind::puncture_sequence && sequence_hits(prim.sequence, prim.start, p))
      return true;
  }
  return false;
}

bool RegionSet::contains(const HalfPlanePoint& p) const {
  for (const auto& prim : prims_) {
    if (prim.kind == PrimitiveKind::point && same_sphere(prim.point, p)) return true;
    if (prim.kind == PrimitiveKind::point_sequence) {
      if (prim.with_limit && same_sphere(prim.sequence.limit_point(), p)) return true;
      if (sequence_hits(prim.sequence, prim.start, p)) return true;
    }
  }
  return in_band(p) && !punctured(p);
}

bool RegionSet::empty() const {
  for (const auto& prim : prims_)
    if (prim.kind != PrimitiveKind::puncture && prim.kind != PrimitiveKind::puncture_sequence)
      return false;
  return true;
}

std::vector<double> RegionSet::critical_radii() const {
  std::vector<double> out;
  for (const auto& prim : prims_) {
    if (!is_band_kind(prim.kind)) continue;
    push_unique(out, prim.band.r_inner);
    if (std::isfinite(prim.band.r_outer)) push_unique(out, prim.band.r_outer);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HalfPlanePoint> RegionSet::explicit_points() const {
  std::vector<HalfPlanePoint> out;
  for (const auto& prim : prims_) {
    if (prim.kind == PrimitiveKind::point || prim.kind == PrimitiveKind::puncture)
      push_unique(out, prim.point);
    if (is_sequence_kind(prim.kind)) push_unique(out, prim.sequence.limit_point());
  }
  return out;
}

std::vector<SequenceDescriptor> RegionSet::sequences() const {
  std::vector<SequenceDescriptor> out;
  for (const auto& prim : prims_)
    if (is_sequence_kind(prim.kind)) out.push_back(prim.sequence);
  return out;
}

std::vector<RegionPrimitive> RegionSet::sorted_primitives() const {
  auto out = prims_;
  std::stable_sort(out.begin(), out.end(), [](const RegionPrimitive& a, const RegionPrimitive& b) {
    const auto pa = a.anchor(), pb = b.anchor();
    return std::make_tuple(pa.u, pa.s, static_cast<int>(a.kind), a.band.r_outer) <
           std::make_tuple(pb.u, pb.s, static_cast<int>(b.kind), b.band.r_outer);
  });
  return out;
}

double RegionSet::boundary_distance(const HalfPlanePoint& p) const {
  double d = kInf;
  const double r = p.radius();
  for (const auto& prim : prims_) {
    if (is_band_kind(prim.kind)) {
      if (prim.band.r_inner > 0.0 || !prim.band.inner_closed)
        d = std::min(d, std::abs(r - prim.band.r_inner));
      if (std::isfinite(prim.band.r_outer)) d = std::min(d, std::abs(r - prim.band.r_outer));
    } else if (is_sequence_kind(prim.kind)) {
      const auto& seq = prim.sequence;
      d = std::min(d, point_distance(p, seq.limit_point()));
      const double w = norm(seq.offset);
      for (std::size_t m = prim.start; m < prim.start + 10000; ++m) {
        d = std::min(d, point_distance(p, seq.point(m)));
        if (w * std::pow(seq.ratio, static_cast<double>(m)) < 1e-6) break;
      }
    } else {
      d = std::min(d, point_distance(p, prim.point));
    }
  }
  return d;
}

namespace {

struct ProbeData {
  std::vector<double> radii;
  std::vector<HalfPlanePoint> points;
  std::vector<std::pair<SequenceDescriptor, std::size_t>> sequences;
};

ProbeData collect(const RegionSet& a, const RegionSet& b) {
  ProbeData d;
  for (const auto* r : {&a, &b}) {
    for (double x : r->critical_radii()) push_unique(d.radii, x);
    for (const auto& p : r->explicit_points()) push_unique(d.points, p);
    for (const auto& prim : r->primitives())
      if (is_sequence_kind(prim.kind)) d.sequences.emplace_back(prim.sequence, prim.start);
  }
  return d;
}

// An index beyond which every sequence point lies in one cell of the common
// refinement: past every radius crossing, explicit point and sequence start.
std::size_t far_index(const ProbeData& d, const SequenceDescriptor& seq) {
  std::size_t m = 1;
  for (double r : d.radii) m = std::max(m, seq.last_radius_crossing(r));
  for (const auto& p : d.points) {
    m = std::max(m, seq.last_radius_crossing(p.radius()));
    for (std::size_t k : seq.indices_at(p)) m = std::max(m, k);
  }
  for (const auto& [other, start] : d.sequences) {
    m = std::max(m, start);
    for (std::size_t k : seq.indices_at(other.point(start))) m = std::max(m, k);
  }
  return m + 2;
}

bool is_special(const ProbeData& d, const HalfPlanePoint& p) {
  for (const auto& q : d.points)
    if (point_distance(p, q) < 1e-6) return true;
  for (const auto& [seq, start] : d.sequences)
    if (!seq.indices_at(p, 1e-6).empty()) return true;
  return false;
}

HalfPlanePoint generic_point(const ProbeData& d, double r) {
  static constexpr double kAngles[] = {0.6180339887, 1.2247448714, 0.4142135624, 2.2360679775,
                                       2.6457513111, 1.7320508076, 0.2679491924, 2.9};
  for (double theta : kAngles) {
    const HalfPlanePoint p{r * std::cos(theta), r * std::sin(theta)};
    if (!is_special(d, p)) return p;
  }
  return {r * std::cos(3.0), r * std::sin(3.0)};
}

std::vector<HalfPlanePoint> probes(const ProbeData& d) {
  std::vector<HalfPlanePoint> out = d.points;
  std::vector<double> radii = d.radii;
  for (const auto& p : d.points) push_unique(radii, p.radius());
  std::sort(radii.begin(), radii.end());
  if (radii.empty()) {
    out.push_back(generic_point(d, 1.0));
  } else {
    if (radii.front() > 0.0) out.push_back(generic_point(d, radii.front() / 2.0));
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (radii[i] > 0.0) out.push_back(generic_point(d, radii[i]));
      else out.push_back({0.0, 0.0});
      if (i + 1 < radii.size()) out.push_back(generic_point(d, (radii[i] + radii[i + 1]) / 2.0));
    }
    out.push_back(generic_point(d, radii.back() + 1.0));
  }
  for (const auto& [seq, start] : d.sequences) {
    out.push_back(seq.limit_point());
    const std::size_t far = far_index(d, seq);
    for (std::size_t m = 1; m <= far + 1; ++m) out.push_back(seq.point(m));
  }
  return out;
}

void restore_punctures(const RegionSet& from, const RegionSet& other, const ProbeData& d,
                       RegionSet& out) {
  for (const auto& prim : from.primitives()) {
    if (prim.kind == PrimitiveKind::puncture && other.contains(prim.point))
      out.add(RegionSet::point(prim.point).primitives().front());
    if (prim.kind == PrimitiveKind::puncture_sequence) {
      const std::size_t far = std::max(far_index(d, prim.sequence), prim.start);
      for (std::size_t m = prim.start; m < far; ++m)
        if (other.contains(prim.sequence.point(m)))
          out.add(RegionSet::point(prim.sequence.point(m)).primitives().front());
      if (other.contains(prim.sequence.point(far)))
        out.add(RegionSet::sequence(prim.sequence, far, false).primitives().front());
    }
  }
}

}  // namespace

RegionSet unite(const RegionSet& a, const RegionSet& b) {
  RegionSet out;
  for (const auto& prim : a.primitives()) out.add(prim);
  for (const auto& prim : b.primitives()) out.add(prim);
  const ProbeData d = collect(a, b);
  restore_punctures(a, b, d, out);
  restore_punctures(b, a, d, out);
  return out;
}

bool region_equal(const RegionSet& a, const RegionSet& b) {
  const ProbeData d = collect(a, b);
  for (const auto& p : probes(d))
    if (a.contains(p) != b.contains(p)) return false;
  return true;
}

namespace {

void write_quaternion(std::ostream& os, const Quaterniond& q) {
  os << q.q0 << ' ' << q.q1 << ' ' << q.q2 << ' ' << q.q3;
}

}  // namespace

void write_csv(std::ostream& os, const RegionSet& r) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(12);
  os << "kind,u,s,r_inner,r_outer,inner_closed,outer_closed,limit,offset,ratio,start,with_limit\n";
  for (const auto& prim : r.sorted_primitives()) {
    const auto a = prim.anchor();
    os << to_string(prim.kind) << ',' << a.u << ',' << a.s << ',';
    if (is_band_kind(prim.kind)) {
      os << prim.band.r_inner << ',';
      if (std::isinf(prim.band.r_outer)) os << "inf";
      else os << prim.band.r_outer;
      os << ',' << int(prim.band.inner_closed) << ',' << int(prim.band.outer_closed) << ",,,,,";
    } else if (is_sequence_kind(prim.kind)) {
      os << ",,,,";
      write_quaternion(os, prim.sequence.limit);
      os << ',';
      write_quaternion(os, prim.sequence.offset);
      os << ',' << prim.sequence.ratio << ',' << prim.start << ',' << int(prim.with_limit);
    } else {
      os << ",,,,,,,,";
    }
    os << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

std::ostream& operator<<(std::ostream& os, const RegionSet& r) {
  os << '{';
  bool first = true;
  for (const auto& prim : r.sorted_primitives()) {
    if (!first) os << ", ";
    first = false;
    os << to_string(prim.kind);
    if (is_band_kind(prim.kind)) {
      os << (prim.band.inner_closed ? '[' : '(') << prim.band.r_inner << ", " << prim.band.r_outer
         << (prim.band.outer_closed ? ']' : ')');
    } else if (is_sequence_kind(prim.kind)) {
      os << " m>=" << prim.start << " from " << prim.sequence.point(prim.start)
         << (prim.with_limit ? " with limit " : " limit ") << prim.sequence.limit_point();
    } else {
      os << ' ' << prim.point;
    }
  }
  return os << '}';
}

}  // namespace qspectral
