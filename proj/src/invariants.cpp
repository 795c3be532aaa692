#include "qspectral/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qspectral/classify.hpp"
#include "qspectral/finite_spectrum.hpp"
#include "qspectral/leftmul.hpp"
#include "qspectral/oracle.hpp"
#include "qspectral/spec_io.hpp"

namespace qspectral {

void CheckReport::record(const std::string& name, bool ok, const std::string& operator_spec,
                         std::optional<HalfPlanePoint> point, const std::string& detail) {
  auto& s = suite(name);
  ++s.cases;
  if (ok) return;
  ++s.failures;
  counterexamples_.push_back({name, operator_spec, point, detail});
}

SuiteResult& CheckReport::suite(const std::string& name) {
  for (auto& s : suites_)
    if (s.name == name) return s;
  suites_.push_back({name, 0, 0});
  return suites_.back();
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& s : other.suites_) {
    auto& mine = suite(s.name);
    mine.cases += s.cases;
    mine.failures += s.failures;
  }
  counterexamples_.insert(counterexamples_.end(), other.counterexamples_.begin(),
                          other.counterexamples_.end());
}

bool CheckReport::ok() const { return failures() == 0; }

std::size_t CheckReport::failures() const {
  std::size_t n = 0;
  for (const auto& s : suites_) n += s.failures;
  return n;
}

std::vector<HalfPlanePoint> half_plane_grid(std::size_t nu, std::size_t ns) {
  std::vector<HalfPlanePoint> out;
  for (std::size_t j = 0; j < ns; ++j)
    for (std::size_t i = 0; i < nu; ++i) {
      const double u = nu > 1 ? -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(nu - 1) : 0.0;
      const double s = ns > 1 ? 3.0 * static_cast<double>(j) / static_cast<double>(ns - 1) : 0.0;
      out.push_back({u, s});
    }
  return out;
}

void write_summary(std::ostream& os, const CheckReport& r) {
  os << "suite,cases,failures\n";
  for (const auto& s : r.suites()) os << s.name << ',' << s.cases << ',' << s.failures << '\n';
}

void write_counterexamples(std::ostream& os, const CheckReport& r, std::size_t limit) {
  std::size_t n = 0;
  for (const auto& c : r.counterexamples()) {
    if (n++ == limit) break;
    os << "counterexample in " << c.suite;
    if (c.point) os << " at point " << c.point->u << ',' << c.point->s;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n' << c.operator_spec << '\n';
  }
}

namespace {

// ---------------------------------------------------------------- structured

bool browder_op(const SpectralClassification& c) {
  return c.fredholm && c.ascent && c.descent && !c.ascent->infinite && !c.descent->infinite;
}

bool weyl_op(const SpectralClassification& c) { return c.fredholm && c.index.value == 0; }

bool yes(Verdict v) { return v == Verdict::yes; }

void pointwise_suites(CheckReport& rep, const StructuredOperator& a, const std::string& spec,
                      const HalfPlanePoint& p) {
  const auto c = classify(a, p);
  const bool in_s = yes(c.s_spectrum);
  const bool in_k = c.sigma_k.has_value();

  rep.record("opmodel.pes",
             c.essential == ((c.essential_left && c.essential_right) || c.plus_infinity ||
                             c.minus_infinity) &&
                 !c.plus_infinity && !c.minus_infinity && c.essential_left == c.essential &&
                 c.essential_right == c.essential,
             spec, p, "sigma_e differs from (sigma_el & sigma_er) | sigma_+-inf");
  rep.record("opmodel.schechter_ws", yes(c.weyl) == (c.essential || in_k), spec, p,
             "ws differs from sigma_e | sigma_k");

  if (c.perturbed) {
    rep.record("opmodel.containments", !c.essential || yes(c.weyl), spec, p, "sigma_e not in ws");
    return;
  }
  const int parts = yes(c.resolvent) + yes(c.point_spectrum) + yes(c.residual_spectrum) +
                    yes(c.continuous_spectrum);
  rep.record("opmodel.partition", parts == 1, spec, p, "not exactly one of rho/pS/rS/cS");
  rep.record("opmodel.containments",
             (!c.essential || yes(c.weyl)) && (!yes(c.weyl) || yes(c.browder)) &&
                 (!yes(c.browder) || in_s),
             spec, p, "sigma_e <= ws <= Bs <= sigma_S violated");
  rep.record("opmodel.schechter", yes(c.weyl) == (in_s && !yes(c.sigma_0)), spec, p,
             "ws differs from sigma_S minus sigma_0");
  const bool invertible = yes(c.resolvent);
  rep.record("opmodel.browder_chain",
             (!invertible || browder_op(c)) && (!browder_op(c) || weyl_op(c)) &&
                 (!weyl_op(c) || c.fredholm),
             spec, p, "invertible => Browder => Weyl => Fredholm violated");
  rep.record("opmodel.bt2", !(browder_op(c) && in_s) || yes(c.pi_0), spec, p,
             "Browder point of sigma_S outside pi_0");
  rep.record("opmodel.iso_acc", !in_s || (yes(c.isolated) != yes(c.accumulation)), spec, p,
             "sigma_S point neither or both isolated and accumulation");
}

void region_suites(CheckReport& rep, const StructuredOperator& a, const std::string& spec,
                   const std::vector<HalfPlanePoint>& grid) {
  const SpectralModel model(a);
  using S = SetName;
  const auto s_s = model.members(S::sigma_s), e = model.members(S::sigma_e),
             el = model.members(S::sigma_el), er = model.members(S::sigma_er),
             ws = model.members(S::weyl), s0 = model.members(S::sigma_0),
             bs = model.members(S::browder), pi0 = model.members(S::pi_0),
             acc = model.members(S::acc), pinf = model.members(S::sigma_plus_inf),
             minf = model.members(S::sigma_minus_inf);
  SpectralModel::AtomSet ks(s_s.size());
  for (long long k : model.indices()) ks = ks | model.sigma_k(k);

  auto eq = [](const SpectralModel::AtomSet& x, const SpectralModel::AtomSet& y) { return x == y; };
  auto sub = [](const SpectralModel::AtomSet& x, const SpectralModel::AtomSet& y) {
    return none(x - y);
  };
  rep.record("opmodel.wr1", sub(e, ws) && sub(ws, s_s), spec, std::nullopt, "(a) sigma_e <= ws <= sigma_S");
  rep.record("opmodel.wr1", eq(e, ws) == none(ks), spec, std::nullopt, "(b) sigma_e = ws iff no sigma_k");
  rep.record("opmodel.wr1", eq(s_s, ws | s0) && none(ws & s0), spec, std::nullopt,
             "(c) sigma_S = ws + sigma_0 disjointly");
  rep.record("opmodel.wr1", eq(ws, s_s) == none(s0), spec, std::nullopt, "(d) ws = sigma_S iff sigma_0 empty");
  rep.record("opmodel.wr1", (eq(e, ws) && eq(ws, s_s)) == none(ks | s0), spec, std::nullopt,
             "(e) sigma_e = ws = sigma_S iff no sigma_k, k in Z");
  rep.record("opmodel.ep7", eq(s_s, e | ks | s0), spec, std::nullopt, "sigma_S != sigma_e + sigma_k");
  rep.record("opmodel.pes_regions", eq(e, (el & er) | pinf | minf) && none(pinf) && none(minf) &&
                                        eq(el, e) && eq(er, e),
             spec, std::nullopt, "sigma_e != sigma_el & sigma_er");
  rep.record("opmodel.br2", eq(s_s - pi0, acc | ws), spec, std::nullopt, "sigma_S - pi_0 != acc + ws");
  rep.record("opmodel.br3", sub(e, ws) && sub(ws, bs) && sub(bs, s_s), spec, std::nullopt,
             "sigma_e <= ws <= Bs <= sigma_S");

  // The same identities on the emitted RegionSets.
  const auto r_s = model.region(s_s), r_ws = model.region(ws), r_s0 = model.region(s0);
  rep.record("opmodel.region_identities", region_equal(r_s, unite(r_ws, r_s0)), spec, std::nullopt,
             "sigma_S != ws u sigma_0 as regions");
  RegionSet r_wk = model.region(e);
  for (long long k : model.indices()) r_wk = unite(r_wk, model.region(model.sigma_k(k)));
  rep.record("opmodel.region_identities", region_equal(r_ws, r_wk), spec, std::nullopt,
             "ws != sigma_e u sigma_k as regions");
  rep.record("opmodel.region_identities",
             region_equal(model.region(s_s - pi0), unite(model.region(acc), r_ws)), spec,
             std::nullopt, "sigma_S - pi_0 != acc u ws as regions");

  // Regions agree with direct classification.
  const auto regions = spectrum_regions(a);
  for (const auto& p : grid) {
    const auto c = classify(a, p);
    const bool ok = regions.at("sigma_s").contains(p) == yes(c.s_spectrum) &&
                    regions.at("sigma_e").contains(p) == c.essential &&
                    regions.at("ws").contains(p) == yes(c.weyl) &&
                    regions.at("bs").contains(p) == yes(c.browder) &&
                    regions.at("sigma_0").contains(p) == yes(c.sigma_0) &&
                    regions.at("pi_0").contains(p) == yes(c.pi_0) &&
                    regions.at("acc").contains(p) == yes(c.accumulation) &&
                    regions.at("sigma_rs").contains(p) == yes(c.residual_spectrum) &&
                    regions.at("sigma_cs").contains(p) == yes(c.continuous_spectrum);
    rep.record("opmodel.region_membership", ok, spec, p, "region membership differs from classify");
  }
  for (const auto& atom : model.atoms()) {
    const auto& p = atom.representative;
    const auto c = classify(a, p);
    rep.record("opmodel.region_membership",
               regions.at("sigma_s").contains(p) == yes(c.s_spectrum) &&
                   regions.at("ws").contains(p) == yes(c.weyl),
               spec, p, "region membership differs from classify at a cell representative");
  }

  // ws(A) = ws(A^dagger)^*, Bs likewise; spheres are closed under conjugation.
  const auto adj = adjoint(a);
  rep.record("opmodel.adjoint", region_equal(weyl_spectrum(a), weyl_spectrum(adj)), spec,
             std::nullopt, "ws(A) != ws(A^dagger)*");
  rep.record("opmodel.adjoint", region_equal(browder_spectrum(a), browder_spectrum(adj)), spec,
             std::nullopt, "Bs(A) != Bs(A^dagger)*");

  // Weyl at 0 iff 0 in rho_S u sigma_0.
  const auto c0 = classify(a, {0.0, 0.0});
  rep.record("opmodel.wp3", weyl_op(c0) == (yes(c0.resolvent) || yes(c0.sigma_0)), spec,
             HalfPlanePoint{0.0, 0.0}, "Weyl at 0 differs from 0 in rho_S u sigma_0");
}

void perturbation_suites(CheckReport& rep, const StructuredOperator& a, const CheckOptions& opt,
                         Rng& rng, const std::vector<HalfPlanePoint>& grid) {
  const auto base = spectrum_regions(a);
  const SpectralModel model(a);
  for (std::size_t t = 0; t < opt.perturbations; ++t) {
    const auto b = perturb(a, random_perturbation(rng, a, 1 + t % 3));
    const std::string spec = serialize(b);
    const auto regions = spectrum_regions(b);
    bool same = true;
    for (const auto& [name, r] : regions) {
      if (!is_perturbation_invariant(name)) same = false;
      else if (!base.count(name) || !region_equal(base.at(name), r)) same = false;
    }
    for (const auto& [name, r] : base)
      if (is_perturbation_invariant(name) && !regions.count(name)) same = false;
    rep.record("opmodel.perturbation_invariance", same, spec, std::nullopt,
               "invariant sets changed under a finite-rank perturbation");
    for (const auto& p : grid) pointwise_suites(rep, b, spec, p);

    // ws(A) = ws(A+K) lies in sigma_S(A+K): truncations never look invertible there.
    const TruncationOracle oracle(b);
    for (const auto& p : half_plane_grid(7, 4)) {
      if (model.boundary_distance(p) < 0.05) continue;
      const auto c = classify(b, p);
      if (!yes(c.weyl)) continue;
      const auto r = oracle.evaluate(p, false);
      rep.record("oracle.perturbed_ws", r.verdict != TrendVerdict::bounded_away, spec, p,
                 "BOUNDED-AWAY at a point of ws(A+K)");
    }
  }
}

void oracle_suites(CheckReport& rep, const StructuredOperator& a, const std::string& spec,
                   const CheckOptions& opt) {
  const SpectralModel model(a);
  const TruncationOracle oracle(a);
  for (const auto& p : half_plane_grid(opt.oracle_grid_u, opt.oracle_grid_s)) {
    if (model.boundary_distance(p) < 0.05) continue;
    const auto r = oracle.evaluate(p, false);
    if (r.verdict == TrendVerdict::inconclusive) continue;
    const auto ag = agreement(r.verdict, classify(a, p));
    rep.record("oracle.agreement", ag != Agreement::disagree, spec, p,
               std::string("verdict ") + to_string(r.verdict) + " contradicts classify");
  }
  for (const auto& t : a.shift_tails) {
    for (const auto& p : half_plane_grid(7, 4)) {
      const HalfPlanePoint scaled{p.u / t.weight, p.s / t.weight};
      const auto x = shift_kernel_dims(t.weight, p, t.direction);
      const auto y = shift_kernel_dims(1.0, scaled, t.direction);
      rep.record("oracle.scaling",
                 x.kernel == y.kernel && x.adjoint_kernel == y.adjoint_kernel && x.fredholm == y.fredholm,
                 spec, p, "shift_kernel_dims not scale covariant");
    }
    // Interior point: the truncated adjoint side has exactly two vanishing directions.
    StructuredOperator lone;
    lone.shift_tails.push_back(t);
    const HalfPlanePoint p{0.3 * t.weight, 0.2 * t.weight};
    const auto dims = shift_kernel_dims(t.weight, p, t.direction);
    const auto r = TruncationOracle(lone, {64}).evaluate(p);
    rep.record("oracle.shift_kernels",
               r.rows.back().kernel_estimate == dims.kernel &&
                   r.rows.back().adjoint_kernel_estimate == dims.adjoint_kernel,
               spec, p, "truncated kernel dimensions differ from the recurrence count");
  }
}

// ------------------------------------------------------------------ matrices

double max_dev(const QVectord& a, const QVectord& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, norm(a[k] - b[k]));
  return m;
}

Quaternionq random_small_rational(Rng& rng) {
  std::uniform_int_distribution<int> d(-9, 9), den(1, 5);
  return {Rational(d(rng), den(rng)), Rational(d(rng), den(rng)), Rational(d(rng), den(rng)),
          Rational(d(rng), den(rng))};
}

void quaternion_suite(CheckReport& rep, Rng& rng, std::size_t cases) {
  for (std::size_t t = 0; t < cases; ++t) {
    const auto p = random_small_rational(rng), q = random_small_rational(rng),
               r = random_small_rational(rng);
    const bool ok = (p * q) * r == p * (q * r) && (p * q).norm2() == p.norm2() * q.norm2() &&
                    (p * q).conj() == q.conj() * p.conj() &&
                    q * q - q * (Rational(2) * q.real()) + Quaternionq(q.norm2()) == Quaternionq();
    std::ostringstream os;
    os << "p=" << p << " q=" << q << " r=" << r;
    rep.record("quat.algebra", ok, os.str());
  }
}

void chi_suite(CheckReport& rep, const QMatrixd& a, const QMatrixd& b, const std::string& spec) {
  const auto ca = chi(a), cb = chi(b);
  const double dev = (chi(matmul(a, b)) - ca * cb).norm();
  rep.record("qmat.chi_homomorphism", dev <= 1e-12 * ca.norm() * cb.norm(), spec, std::nullopt,
             "chi(AB) != chi(A)chi(B)");
}

void adjoint_pairing_suite(CheckReport& rep, Rng& rng, const QMatrixd& a, const std::string& spec) {
  const auto phi = random_vector(rng, a.cols()), psi = random_vector(rng, a.rows());
  const auto lhs = inner(psi, apply(a, phi)), rhs = inner(apply(adjoint(a), psi), phi);
  const double scale = std::max(1.0, operator_norm(a) * norm(phi) * norm(psi));
  rep.record("qmat.adjoint_pairing", norm(lhs - rhs) <= 1e-10 * scale, spec, std::nullopt,
             "<psi|A phi> != <A^dagger psi|phi>");
}

void exact_matrix_suites(CheckReport& rep, const QMatrixq& a, const std::string& spec) {
  const std::size_t n = a.rows();
  const auto cd = chi(a), cad = chi(adjoint(a));
  rep.record("qmat.chi_adjoint", cad == cd.adjoint(), spec, std::nullopt,
             "chi(A^dagger) != chi(A)^H");
  const std::size_t r = rank(a);
  const auto ker = kernel_basis(a);
  bool kernel_ok = ker.size() + r == n && rank(adjoint(a)) == r && chi_rank(cd) == 2 * r;
  for (const auto& v : ker)
    for (std::size_t i = 0; i < n; ++i) kernel_ok = kernel_ok && apply(a, v)[i].is_zero();
  rep.record("qmat.rank", kernel_ok, spec, std::nullopt,
             "rank/kernel inconsistent (rank(A) vs rank(A^dagger), A v = 0, chi rank)");

  const auto report = asc_dsc(a);
  bool monotone = true;
  for (std::size_t k = 0; k + 1 < report.power_ranks.size(); ++k)
    monotone = monotone && report.power_ranks[k + 1] <= report.power_ranks[k];
  rep.record("spec_fd.asc_dsc",
             report.ascent == report.descent && report.stabilization <= n && monotone &&
                 ker_ran_complementary(a, report.stabilization) &&
                 (report.descent != 0 || r == n),
             spec, std::nullopt, "ascent/descent or complementarity failed");

  // R_q(A) commutes with A, exactly.
  const Quaternionq q(Rational(1, 2), Rational(-1, 3), Rational(2), Rational(0));
  const auto rq = pseudo_resolvent(a, q);
  rep.record("spec_fd.commute", matmul(rq, a) == matmul(a, rq), spec, std::nullopt,
             "R_q(A) A != A R_q(A)");
}

Quaterniond random_on_sphere(Rng& rng, const HalfPlanePoint& p) {
  std::normal_distribution<double> g;
  double x = 0, y = 0, z = 0, n = 0;
  while (n < 1e-6) {
    x = g(rng), y = g(rng), z = g(rng);
    n = std::sqrt(x * x + y * y + z * z);
  }
  return {p.u, p.s * x / n, p.s * y / n, p.s * z / n};
}

void spectrum_suites(CheckReport& rep, Rng& rng, const QMatrixd& a, const std::string& spec) {
  const auto spheres = right_eigenspheres(a);
  rep.record("spec_fd.nonempty",
             !spheres.spheres.empty() && spheres.total_multiplicity() <= a.rows(), spec,
             std::nullopt, "empty S-spectrum or multiplicity above n");
  for (const auto& e : spheres.spheres) {
    bool same = true;
    for (int t = 0; t < 8; ++t)
      same = same && resolvent_kernel_dim(a, sphere_of(random_on_sphere(rng, e.point))) ==
                         e.multiplicity;
    rep.record("spec_fd.sphere_invariance", same, spec, e.point,
               "dim ker R_q(A) varies over the sphere");
  }
}

// Upper-triangular matrix: its diagonal entries are right eigenvalues.
void correspondence_suite(CheckReport& rep, Rng& rng, std::size_t n) {
  QMatrixd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = random_quaternion(rng);
  const std::string spec = serialize(a);
  for (std::size_t k = 0; k < n; ++k) {
    const auto q = a(k, k);
    const auto rq = pseudo_resolvent(a, q);
    bool ok = resolvent_kernel_dim(a, sphere_of(q)) > 0;
    // A kernel vector v of R_q(A) yields an eigenvector w = Av - v conj(q) with
    // Aw = wq, or v itself satisfies Av = v conj(q) when w vanishes.
    const auto svd = Eigen::BDCSVD<Eigen::MatrixXcd>(chi(rq), Eigen::ComputeFullV);
    const Eigen::VectorXcd x = svd.matrixV().col(2 * n - 1);
    QVectord v(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto z1 = x(2 * i), z2 = x(2 * i + 1);
      v[i] = Quaterniond(z1.real(), z1.imag(), -z2.real(), z2.imag());
    }
    QVectord w = apply(a, v) - v * q.conj();
    const double scale = std::max(1.0, operator_norm(a));
    if (norm(w) > 1e-6 * scale) {
      ok = ok && max_dev(apply(a, w), w * q) <= 1e-7 * scale * norm(w);
    } else {
      ok = ok && max_dev(apply(a, v), v * q.conj()) <= 1e-7 * scale * norm(v);
    }
    rep.record("spec_fd.correspondence", ok, spec, sphere_of(q), "eigenvector / kernel mismatch");
  }
  // Off every diagonal sphere the pseudo-resolvent is invertible.
  const Quaterniond far(10.0 + operator_norm(a), 0.5, 0.0, 0.0);
  rep.record("spec_fd.correspondence", resolvent_kernel_dim(a, sphere_of(far)) == 0, spec,
             sphere_of(far), "kernel off the spectrum");
}

void leftmul_suite(CheckReport& rep, Rng& rng, const HilbertBasis<double>& basis,
                   const QMatrixd& a, const std::string& spec) {
  const LeftMultStructure<double> l(basis);
  const std::size_t n = l.dimension();
  const auto q = random_quaternion(rng), p = random_quaternion(rng);
  const auto phi = random_vector(rng, n), psi = random_vector(rng, n);
  const double r = random_quaternion(rng).q0;
  auto lm = [&](const Quaterniond& x, const QVectord& v) { return left_scalar_vec(l, x, v); };
  double dev = 0.0;
  dev = std::max(dev, max_dev(lm(q, phi + psi), lm(q, phi) + lm(q, psi)));        // (a)
  dev = std::max(dev, max_dev(lm(q, phi * p), lm(q, phi) * p));                    // (a)
  dev = std::max(dev, std::abs(norm(lm(q, phi)) - norm(q) * norm(phi)));           // (b)
  dev = std::max(dev, max_dev(lm(q, lm(p, phi)), lm(q * p, phi)));                 // (c)
  dev = std::max(dev, norm(inner(lm(q.conj(), phi), psi) - inner(phi, lm(q, psi))));  // (d)
  dev = std::max(dev, max_dev(lm(Quaterniond(r), phi), phi * Quaterniond(r)));     // (e)
  for (const auto& v : basis.vectors) dev = std::max(dev, max_dev(lm(q, v), v * q));  // (f)
  // (Aq) phi = A (q phi) and (qA) phi = q (A phi)
  dev = std::max(dev, max_dev(apply(right_scalar_op(l, a, q), phi), apply(a, lm(q, phi))));
  dev = std::max(dev, max_dev(apply(left_scalar_op(l, q, a), phi), lm(q, apply(a, phi))));
  rep.record("leftmul.identities", dev <= 1e-10 * std::max(1.0, operator_norm(a)) * 10.0, spec,
             std::nullopt, "left multiplication identity deviates by " + std::to_string(dev));
  rep.record("leftmul.adjoint_identities", adjoint_identities_check(l, q, a), spec, std::nullopt,
             "(qA)^dagger != A^dagger conj(q) or (Aq)^dagger != conj(q) A^dagger");
}

QMatrixq exact_copy(const QMatrixd& m) { return matrix_cast<Rational>(m); }

}  // namespace

CheckReport check_structured(const StructuredOperator& a, const CheckOptions& opt) {
  CheckReport rep;
  const std::string spec = serialize(a);
  const auto grid = half_plane_grid(opt.grid_u, opt.grid_s);
  std::vector<HalfPlanePoint> points = grid;
  const SpectralModel model(a);
  for (const auto& atom : model.atoms()) points.push_back(atom.representative);
  for (const auto& p : points) pointwise_suites(rep, a, spec, p);
  if (!a.is_perturbed()) region_suites(rep, a, spec, grid);
  Rng rng(opt.seed);
  if (!a.is_perturbed() && a.is_infinite_dimensional()) perturbation_suites(rep, a, opt, rng, grid);
  oracle_suites(rep, a, spec, opt);
  return rep;
}

CheckReport check_matrix(const QMatrixd& m, const std::optional<QMatrixd>& basis,
                         const CheckOptions& opt) {
  CheckReport rep;
  Rng rng(opt.seed);
  const std::string spec = serialize(m);
  const std::size_t n = m.rows();
  chi_suite(rep, m, random_matrix(rng, n, n), spec);
  adjoint_pairing_suite(rep, rng, m, spec);
  exact_matrix_suites(rep, exact_copy(m), spec);
  spectrum_suites(rep, rng, m, spec);
  leftmul_suite(rep, rng, HilbertBasis<double>::canonical(n), m, spec);
  if (basis) {
    const auto l = LeftMultStructure<double>::from_unitary(*basis);
    leftmul_suite(rep, rng, l.basis(), m, spec);
  } else {
    leftmul_suite(rep, rng, random_basis(rng, n), m, spec);
  }
  return rep;
}

CheckReport check_corpus(std::uint64_t seed, std::size_t count, const CheckOptions& opt) {
  CheckReport rep;
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  quaternion_suite(rep, rng, 4 * count);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = dim(rng);
    const auto a = random_matrix(rng, n, n);
    const std::string spec = serialize(a);
    chi_suite(rep, a, random_matrix(rng, n, n), spec);
    adjoint_pairing_suite(rep, rng, a, spec);
    spectrum_suites(rep, rng, a, spec);
    correspondence_suite(rep, rng, n);
    leftmul_suite(rep, rng, t % 2 ? random_basis(rng, n) : HilbertBasis<double>::canonical(n), a, spec);
    const auto q = random_rational_matrix(rng, n);
    exact_matrix_suites(rep, q, serialize(matrix_cast<double>(q)));
  }
  CheckOptions o = opt;
  for (const auto& a : structured_corpus(seed, count)) {
    o.seed = rng();
    rep.merge(check_structured(a, o));
  }
  return rep;
}

}  // namespace qspectral
