#include "qspectral/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qspectral {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::function<void(SpectralClassification&)>& fault_hook() {
  static std::function<void(SpectralClassification&)> hook;
  return hook;
}

// Kernel and cokernel dimensions, range closedness, ascent and descent of
// R_q restricted to one component.
struct LocalData {
  ExtendedCount ker;
  ExtendedCount coker;
  bool closed = true;
  ExtendedCount asc;
  ExtendedCount dsc;
};

LocalData combine(const LocalData& a, const LocalData& b) {
  return {a.ker + b.ker, a.coker + b.coker, a.closed && b.closed, max(a.asc, b.asc),
          max(a.dsc, b.dsc)};
}

LocalData finite_local(const QMatrixd& f, const HalfPlanePoint& p) {
  const std::size_t k = resolvent_kernel_dim(f, p);
  if (k == 0) return {};
  const auto rep = asc_dsc(pseudo_resolvent(f, p));
  const std::size_t m = std::max<std::size_t>(rep.ascent, 1);
  return {{k, false}, {k, false}, true, {m, false}, {m, false}};
}

LocalData diagonal_local(const DiagonalFamily& f, const HalfPlanePoint& p) {
  if (f.is_constant_like()) {
    if (!same_sphere(sphere_of(f.value), p)) return {};
    return {ExtendedCount::inf(), ExtendedCount::inf(), true, {1, false}, {1, false}};
  }
  const auto seq = f.sequence();
  const std::size_t hits = seq.indices_at(p).size();
  const ExtendedCount k{hits, false};
  const ExtendedCount step{hits > 0 ? 1u : 0u, false};
  if (!same_sphere(seq.limit_point(), p)) return {k, k, true, step, step};
  // The entries approach the sphere without reaching it: the range is dense
  // in the complement of the kernel but not closed.
  return {k, k, false, step, ExtendedCount::inf()};
}

LocalData shift_local(const ShiftTail& t, const HalfPlanePoint& p) {
  const double r = p.radius();
  if (r > t.weight + kSphereTolerance) return {};
  if (std::abs(r - t.weight) <= kSphereTolerance)
    return {{0, false}, {0, false}, false, {0, false}, ExtendedCount::inf()};
  if (t.direction == ShiftDirection::forward)
    return {{0, false}, {2, false}, true, {0, false}, ExtendedCount::inf()};
  return {{2, false}, {0, false}, true, ExtendedCount::inf(), {0, false}};
}

Verdict yes_no(bool b) { return b ? Verdict::yes : Verdict::no; }

bool is_accumulation_point(const StructuredOperator& a, const HalfPlanePoint& p) {
  double alpha_max = 0.0;
  for (const auto& t : a.shift_tails) alpha_max = std::max(alpha_max, t.weight);
  if (!a.shift_tails.empty() && p.radius() <= alpha_max + kSphereTolerance) return true;
  for (const auto& f : a.diagonal_families)
    if (!f.is_constant_like() && same_sphere(f.sequence().limit_point(), p)) return true;
  return false;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const ExtendedCount& c) {
  if (c.infinite) return os << "inf";
  return os << c.value;
}

std::ostream& operator<<(std::ostream& os, const FredholmIndex& i) {
  switch (i.kind) {
    case FredholmIndex::Kind::finite: return os << i.value;
    case FredholmIndex::Kind::plus_infinity: return os << "+inf";
    case FredholmIndex::Kind::minus_infinity: return os << "-inf";
    case FredholmIndex::Kind::undefined: return os << "undefined";
  }
  return os;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::no: return "no";
    case Verdict::yes: return "yes";
    case Verdict::delegated: return "UNKNOWN-DELEGATED";
  }
  return "?";
}

SpectralClassification classify(const StructuredOperator& a, const HalfPlanePoint& p) {
  if (p.s < 0.0 || !std::isfinite(p.u) || !std::isfinite(p.s))
    throw std::invalid_argument("classify: point must satisfy s >= 0");
  a.validate();

  LocalData d;
  if (a.finite_block) d = combine(d, finite_local(*a.finite_block, p));
  for (const auto& f : a.diagonal_families) d = combine(d, diagonal_local(f, p));
  for (const auto& t : a.shift_tails) d = combine(d, shift_local(t, p));

  SpectralClassification c;
  c.point = p;
  c.perturbed = a.is_perturbed();

  c.left_semi_fredholm = d.closed && !d.ker.infinite;
  c.right_semi_fredholm = d.closed && !d.coker.infinite;
  c.fredholm = c.left_semi_fredholm && c.right_semi_fredholm;
  if (c.fredholm) {
    c.index = {FredholmIndex::Kind::finite,
               static_cast<long long>(d.ker.value) - static_cast<long long>(d.coker.value)};
  } else if (c.left_semi_fredholm) {
    c.index = {FredholmIndex::Kind::minus_infinity, 0};
  } else if (c.right_semi_fredholm) {
    c.index = {FredholmIndex::Kind::plus_infinity, 0};
  }
  c.essential_left = !c.left_semi_fredholm;
  c.essential_right = !c.right_semi_fredholm;
  c.essential = !c.fredholm;
  c.plus_infinity = c.index.kind == FredholmIndex::Kind::plus_infinity;
  c.minus_infinity = c.index.kind == FredholmIndex::Kind::minus_infinity;
  if (c.fredholm && c.index.value != 0) c.sigma_k = c.index.value;
  const bool weyl_op = c.fredholm && c.index.value == 0;
  c.weyl = yes_no(!weyl_op);

  const bool resolvent = d.ker.is_zero() && d.coker.is_zero() && d.closed;
  const bool acc_geometry = is_accumulation_point(a, p);

  if (!c.perturbed) {
    c.resolvent = yes_no(resolvent);
    c.point_spectrum = yes_no(!d.ker.is_zero());
    c.residual_spectrum = yes_no(d.ker.is_zero() && !d.coker.is_zero());
    c.continuous_spectrum = yes_no(d.ker.is_zero() && d.coker.is_zero() && !d.closed);
    c.s_spectrum = yes_no(!resolvent);
    c.kernel_dim = d.ker;
    c.adjoint_kernel_dim = d.coker;
    c.ascent = d.asc;
    c.descent = d.dsc;
    const bool in_s = !resolvent;
    const bool browder_op = c.fredholm && !d.asc.infinite && !d.dsc.infinite;
    c.sigma_0 = yes_no(in_s && weyl_op);
    c.browder = yes_no(!browder_op);
    c.accumulation = yes_no(in_s && acc_geometry);
    c.isolated = yes_no(in_s && !acc_geometry);
    c.pi_0 = yes_no(in_s && !acc_geometry && weyl_op);
  } else {
    const Verdict del = Verdict::delegated;
    const bool in_ws = !weyl_op;
    c.resolvent = in_ws ? Verdict::no : del;
    c.point_spectrum = c.residual_spectrum = c.continuous_spectrum = del;
    c.s_spectrum = in_ws ? Verdict::yes : del;
    c.sigma_0 = in_ws ? Verdict::no : del;
    c.browder = in_ws ? Verdict::yes : del;
    const bool ws_continuum = in_ws && acc_geometry && !a.shift_tails.empty();
    c.accumulation = ws_continuum ? Verdict::yes : del;
    c.isolated = ws_continuum ? Verdict::no : del;
    c.pi_0 = in_ws ? Verdict::no : del;
  }

  if (fault_hook()) fault_hook()(c);
  return c;
}

FredholmIndex fredholm_index(const StructuredOperator& a, const HalfPlanePoint& p) {
  return classify(a, p).index;
}

std::string SpectralClassification::summary() const {
  std::ostringstream os;
  if (perturbed && point_spectrum == Verdict::delegated) {
    os << (s_spectrum == Verdict::yes ? "sigma_S (part UNKNOWN-DELEGATED)" : "UNKNOWN-DELEGATED");
  } else if (resolvent == Verdict::yes) {
    return "resolvent";
  } else if (point_spectrum == Verdict::yes) {
    os << "sigma_pS dim " << *kernel_dim;
  } else if (residual_spectrum == Verdict::yes) {
    os << "sigma_rS";
  } else {
    os << "sigma_cS";
  }
  if (fredholm) os << "; Fredholm index " << index;
  else os << "; not Fredholm";
  if (sigma_0 == Verdict::yes) os << "; sigma_0";
  if (pi_0 == Verdict::yes) os << "; pi_0";
  if (weyl == Verdict::yes && browder == Verdict::yes) os << "; in ws, Bs";
  else if (browder == Verdict::yes) os << "; in Bs, not ws";
  else if (browder == Verdict::no) os << "; not Bs";
  else os << "; Bs UNKNOWN-DELEGATED";
  if (ascent && descent) os << "; asc(R_q)=" << *ascent << " dsc(R_q)=" << *descent;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const SpectralClassification& c) {
  auto opt = [](const std::optional<ExtendedCount>& v) {
    std::ostringstream s;
    if (v) s << *v;
    else s << "UNKNOWN-DELEGATED";
    return s.str();
  };
  os << c.summary() << '\n';
  os << "point: " << c.point << '\n';
  os << "rho_S: " << to_string(c.resolvent) << '\n';
  os << "sigma_pS: " << to_string(c.point_spectrum) << " (dim ker R_q = " << opt(c.kernel_dim)
     << ")\n";
  os << "sigma_rS: " << to_string(c.residual_spectrum)
     << " (dim ker R_q(A^dagger) = " << opt(c.adjoint_kernel_dim) << ")\n";
  os << "sigma_cS: " << to_string(c.continuous_spectrum) << '\n';
  os << "sigma_el: " << (c.essential_left ? "yes" : "no") << '\n';
  os << "sigma_er: " << (c.essential_right ? "yes" : "no") << '\n';
  os << "sigma_e: " << (c.essential ? "yes" : "no") << '\n';
  os << "sigma_k: ";
  if (c.sigma_k) os << "yes (k = " << *c.sigma_k << ")\n";
  else os << "no\n";
  os << "sigma_+inf: " << (c.plus_infinity ? "yes" : "no") << '\n';
  os << "sigma_-inf: " << (c.minus_infinity ? "yes" : "no") << '\n';
  os << "fredholm: " << (c.fredholm ? "yes" : "no") << '\n';
  os << "index: " << c.index << '\n';
  os << "sigma_0: " << to_string(c.sigma_0) << '\n';
  os << "ws: " << to_string(c.weyl) << '\n';
  os << "Bs: " << to_string(c.browder) << '\n';
  os << "iso: " << to_string(c.isolated) << '\n';
  os << "acc: " << to_string(c.accumulation) << '\n';
  os << "pi_0: " << to_string(c.pi_0) << '\n';
  os << "asc(R_q): " << opt(c.ascent) << '\n';
  os << "dsc(R_q): " << opt(c.descent) << '\n';
  return os;
}

const char* to_string(SetName n) {
  switch (n) {
    case SetName::sigma_s: return "sigma_s";
    case SetName::sigma_ps: return "sigma_ps";
    case SetName::sigma_rs: return "sigma_rs";
    case SetName::sigma_cs: return "sigma_cs";
    case SetName::sigma_e: return "sigma_e";
    case SetName::sigma_el: return "sigma_el";
    case SetName::sigma_er: return "sigma_er";
    case SetName::sigma_plus_inf: return "sigma_+inf";
    case SetName::sigma_minus_inf: return "sigma_-inf";
    case SetName::sigma_0: return "sigma_0";
    case SetName::weyl: return "ws";
    case SetName::browder: return "bs";
    case SetName::iso: return "iso";
    case SetName::acc: return "acc";
    case SetName::pi_0: return "pi_0";
  }
  return "?";
}

namespace {

constexpr SetName kAllSets[] = {SetName::sigma_s,  SetName::sigma_ps,       SetName::sigma_rs,
                                SetName::sigma_cs, SetName::sigma_e,        SetName::sigma_el,
                                SetName::sigma_er, SetName::sigma_plus_inf, SetName::sigma_minus_inf,
                                SetName::sigma_0,  SetName::weyl,           SetName::browder,
                                SetName::iso,      SetName::acc,            SetName::pi_0};

bool invariant_set(SetName n) {
  switch (n) {
    case SetName::sigma_e:
    case SetName::sigma_el:
    case SetName::sigma_er:
    case SetName::sigma_plus_inf:
    case SetName::sigma_minus_inf:
    case SetName::weyl:
      return true;
    default:
      return false;
  }
}

bool parse_sigma_k(const std::string& name, long long& k) {
  const std::string prefix = "sigma_k:";
  if (name.rfind(prefix, 0) != 0) return false;
  try {
    std::size_t used = 0;
    k = std::stoll(name.substr(prefix.size()), &used);
    return used == name.size() - prefix.size() && k != 0;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

std::string sigma_k_name(long long k) { return "sigma_k:" + std::to_string(k); }

bool is_known_set_name(const std::string& name) {
  long long k = 0;
  if (parse_sigma_k(name, k)) return true;
  for (SetName n : kAllSets)
    if (name == to_string(n)) return true;
  return false;
}

bool is_perturbation_invariant(const std::string& name) {
  long long k = 0;
  if (parse_sigma_k(name, k)) return true;
  for (SetName n : kAllSets)
    if (name == to_string(n)) return invariant_set(n);
  return false;
}

SpectralModel::AtomSet operator|(const SpectralModel::AtomSet& a, const SpectralModel::AtomSet& b) {
  SpectralModel::AtomSet r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] || b[i];
  return r;
}

SpectralModel::AtomSet operator&(const SpectralModel::AtomSet& a, const SpectralModel::AtomSet& b) {
  SpectralModel::AtomSet r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
  return r;
}

SpectralModel::AtomSet operator-(const SpectralModel::AtomSet& a, const SpectralModel::AtomSet& b) {
  SpectralModel::AtomSet r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && !b[i];
  return r;
}

bool none(const SpectralModel::AtomSet& a) {
  return std::none_of(a.begin(), a.end(), [](bool b) { return b; });
}

namespace {

void push_point(std::vector<HalfPlanePoint>& v, const HalfPlanePoint& p) {
  for (const auto& q : v)
    if (same_sphere(p, q)) return;
  v.push_back(p);
}

}  // namespace

SpectralModel::SpectralModel(const StructuredOperator& a) : op_(a.unperturbed()) {
  op_.validate();
  for (const auto& t : op_.shift_tails) {
    bool seen = false;
    for (double r : radii_) seen = seen || std::abs(r - t.weight) <= kSphereTolerance;
    if (!seen) radii_.push_back(t.weight);
  }
  std::sort(radii_.begin(), radii_.end());
  add_band_atoms();
  add_point_atoms();
}

void SpectralModel::add_band_atoms() {
  std::vector<RadialBand> bands;
  double lo = 0.0;
  bool lo_closed = true;
  for (double r : radii_) {
    bands.push_back({lo, r, lo_closed, false});
    bands.push_back({r, r, true, true});
    lo = r;
    lo_closed = false;
  }
  bands.push_back({lo, kInf, lo_closed, false});
  for (const auto& b : bands) {
    Atom atom;
    atom.kind = Atom::Kind::band;
    atom.band = b;
    band_atoms_.push_back(atoms_.size());
    atoms_.push_back(atom);
  }
}

std::size_t SpectralModel::band_of(const HalfPlanePoint& p) const {
  const double r = p.radius();
  for (std::size_t i : band_atoms_)
    if (atoms_[i].band.is_circle() && atoms_[i].band.contains_radius(r)) return i;
  for (std::size_t i : band_atoms_)
    if (atoms_[i].band.contains_radius(r, 0.0)) return i;
  return band_atoms_.back();
}

void SpectralModel::add_point_atoms() {
  std::vector<HalfPlanePoint> fixed;
  if (op_.finite_block)
    for (const auto& e : right_eigenspheres(*op_.finite_block).spheres) push_point(fixed, e.point);
  for (const auto& f : op_.diagonal_families) push_point(fixed, sphere_of(f.value));

  std::vector<HalfPlanePoint> points = fixed;
  std::vector<std::pair<std::size_t, std::size_t>> tails;  // (family, start)
  for (std::size_t fi = 0; fi < op_.diagonal_families.size(); ++fi) {
    const auto& f = op_.diagonal_families[fi];
    if (f.is_constant_like()) continue;
    const auto seq = f.sequence();
    std::size_t last = 0;
    for (double r : radii_) last = std::max(last, seq.last_radius_crossing(r));
    for (const auto& p : fixed)
      for (std::size_t m : seq.indices_at(p)) last = std::max(last, m);
    for (std::size_t m = 1; m <= last; ++m) push_point(points, seq.point(m));
    tails.emplace_back(fi, last + 1);
  }

  for (const auto& p : points) {
    Atom atom;
    atom.kind = Atom::Kind::point;
    atom.point = p;
    atom.representative = p;
    atom.band_index = band_of(p);
    atoms_.push_back(atom);
  }
  for (const auto& [fi, start] : tails) {
    Atom atom;
    atom.kind = Atom::Kind::tail;
    atom.family = fi;
    atom.start = start;
    atom.representative = op_.diagonal_families[fi].sequence().point(start);
    atom.band_index = band_of(atom.representative);
    atoms_.push_back(atom);
  }

  auto special = [&](const HalfPlanePoint& q) {
    for (const auto& p : points)
      if (std::hypot(p.u - q.u, p.s - q.s) < 1e-6) return true;
    for (const auto& [fi, start] : tails)
      if (!op_.diagonal_families[fi].sequence().indices_at(q, 1e-6).empty()) return true;
    return false;
  };
  static constexpr double kAngles[] = {1.2247448714, 0.6180339887, 2.2360679775, 0.4142135624,
                                       2.6457513111, 1.7320508076, 0.2679491924, 2.9};
  for (std::size_t i : band_atoms_) {
    auto& atom = atoms_[i];
    const auto& b = atom.band;
    double r = 0.0;
    if (b.is_circle()) r = b.r_inner;
    else if (std::isinf(b.r_outer)) r = b.r_inner + 1.0;
    else r = (b.r_inner + b.r_outer) / 2.0;
    atom.representative = {r * std::cos(kAngles[0]), r * std::sin(kAngles[0])};
    for (double theta : kAngles) {
      const HalfPlanePoint q{r * std::cos(theta), r * std::sin(theta)};
      if (!special(q)) {
        atom.representative = q;
        break;
      }
    }
    atom.band_index = i;
  }

  for (auto& atom : atoms_) atom.data = classify(op_, atom.representative);
}

SpectralModel::AtomSet SpectralModel::members(SetName n) const {
  AtomSet s(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& c = atoms_[i].data;
    bool in = false;
    switch (n) {
      case SetName::sigma_s: in = c.s_spectrum == Verdict::yes; break;
      case SetName::sigma_ps: in = c.point_spectrum == Verdict::yes; break;
      case SetName::sigma_rs: in = c.residual_spectrum == Verdict::yes; break;
      case SetName::sigma_cs: in = c.continuous_spectrum == Verdict::yes; break;
      case SetName::sigma_e: in = c.essential; break;
      case SetName::sigma_el: in = c.essential_left; break;
      case SetName::sigma_er: in = c.essential_right; break;
      case SetName::sigma_plus_inf: in = c.plus_infinity; break;
      case SetName::sigma_minus_inf: in = c.minus_infinity; break;
      case SetName::sigma_0: in = c.sigma_0 == Verdict::yes; break;
      case SetName::weyl: in = c.weyl == Verdict::yes; break;
      case SetName::browder: in = c.browder == Verdict::yes; break;
      case SetName::iso: in = c.isolated == Verdict::yes; break;
      case SetName::acc: in = c.accumulation == Verdict::yes; break;
      case SetName::pi_0: in = c.pi_0 == Verdict::yes; break;
    }
    s[i] = in;
  }
  return s;
}

SpectralModel::AtomSet SpectralModel::sigma_k(long long k) const {
  AtomSet s(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    s[i] = atoms_[i].data.sigma_k && *atoms_[i].data.sigma_k == k;
  return s;
}

std::vector<long long> SpectralModel::indices() const {
  std::vector<long long> out;
  for (const auto& atom : atoms_)
    if (atom.data.sigma_k && std::find(out.begin(), out.end(), *atom.data.sigma_k) == out.end())
      out.push_back(*atom.data.sigma_k);
  std::sort(out.begin(), out.end());
  return out;
}

RegionSet SpectralModel::region(const AtomSet& s) const {
  RegionSet out;
  // Consecutive included bands merge into one band.
  std::optional<RadialBand> run;
  for (std::size_t i : band_atoms_) {
    const auto& b = atoms_[i].band;
    if (s[i]) {
      if (!run) run = b;
      else {
        run->r_outer = b.r_outer;
        run->outer_closed = b.outer_closed;
      }
    } else if (run) {
      out.add(RegionSet::band(*run).primitives().front());
      run.reset();
    }
  }
  if (run)
    out.add(RegionSet::band(*run).primitives().front());

  std::vector<HalfPlanePoint> points, punctures;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& atom = atoms_[i];
    if (atom.kind != Atom::Kind::point) continue;
    const bool band_in = s[atom.band_index];
    if (s[i] && !band_in) points.push_back(atom.point);
    if (!s[i] && band_in) punctures.push_back(atom.point);
  }

  auto take = [](std::vector<HalfPlanePoint>& v, const HalfPlanePoint& p) {
    for (auto it = v.begin(); it != v.end(); ++it)
      if (same_sphere(*it, p)) {
        v.erase(it);
        return true;
      }
    return false;
  };

  std::vector<RegionPrimitive> sequences;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& atom = atoms_[i];
    if (atom.kind != Atom::Kind::tail) continue;
    const bool band_in = s[atom.band_index];
    if (s[i] == band_in) continue;
    const auto seq = op_.diagonal_families[atom.family].sequence();
    RegionPrimitive prim;
    prim.kind = s[i] ? PrimitiveKind::point_sequence : PrimitiveKind::puncture_sequence;
    prim.sequence = seq;
    prim.start = atom.start;
    auto& pool = s[i] ? points : punctures;
    while (prim.start > 1) {
      const auto head = seq.point(prim.start - 1);
      bool found = false;
      for (const auto& q : pool) found = found || same_sphere(q, head);
      if (!found) break;
      --prim.start;
    }
    if (s[i]) prim.with_limit = take(points, seq.limit_point());
    sequences.push_back(prim);
  }
  for (const auto& prim : sequences) {
    auto& pool = prim.kind == PrimitiveKind::point_sequence ? points : punctures;
    pool.erase(std::remove_if(pool.begin(), pool.end(),
                              [&](const HalfPlanePoint& q) {
                                for (std::size_t m : prim.sequence.indices_at(q))
                                  if (m >= prim.start) return true;
                                return false;
                              }),
               pool.end());
  }

  for (const auto& p : points) out.add(RegionSet::point(p).primitives().front());
  for (const auto& p : punctures) {
    RegionPrimitive prim;
    prim.kind = PrimitiveKind::puncture;
    prim.point = p;
    out.add(prim);
  }
  for (const auto& prim : sequences) out.add(prim);
  return out;
}

double SpectralModel::boundary_distance(const HalfPlanePoint& p) const {
  double d = kInf;
  for (double r : radii_) d = std::min(d, std::abs(p.radius() - r));
  for (const auto& atom : atoms_) {
    if (atom.kind == Atom::Kind::point) {
      d = std::min(d, std::hypot(p.u - atom.point.u, p.s - atom.point.s));
    } else if (atom.kind == Atom::Kind::tail) {
      const auto seq = op_.diagonal_families[atom.family].sequence();
      const double w = norm(seq.offset);
      for (std::size_t m = atom.start; m < atom.start + 10000; ++m) {
        const auto q = seq.point(m);
        d = std::min(d, std::hypot(p.u - q.u, p.s - q.s));
        if (w * std::pow(seq.ratio, static_cast<double>(m)) < 1e-6) break;
      }
    }
  }
  return d;
}

std::map<std::string, RegionSet> spectrum_regions(const StructuredOperator& a) {
  const SpectralModel model(a);
  std::map<std::string, RegionSet> out;
  for (SetName n : kAllSets) {
    if (a.is_perturbed() && !invariant_set(n)) continue;
    out[to_string(n)] = model.region(model.members(n));
  }
  for (long long k : model.indices()) out[sigma_k_name(k)] = model.region(model.sigma_k(k));
  return out;
}

RegionSet weyl_spectrum(const StructuredOperator& a) {
  const SpectralModel model(a);
  return model.region(model.members(SetName::weyl));
}

RegionSet browder_spectrum(const StructuredOperator& a) {
  if (a.is_perturbed())
    throw std::domain_error("browder_spectrum: UNKNOWN-DELEGATED for perturbed operators");
  const SpectralModel model(a);
  return model.region(model.members(SetName::browder));
}

namespace testing {

void set_classifier_fault(std::function<void(SpectralClassification&)> fault) {
  fault_hook() = std::move(fault);
}

void clear_classifier_fault() { fault_hook() = nullptr; }

}  // namespace testing

}  // namespace qspectral
