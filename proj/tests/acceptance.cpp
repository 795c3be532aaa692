// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qspectral/classify.hpp"
#include "qspectral/corpus.hpp"
#include "qspectral/finite_spectrum.hpp"
#include "qspectral/invariants.hpp"
#include "qspectral/leftmul.hpp"
#include "qspectral/oracle.hpp"

using namespace qspectral;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kNearBoundary = 0.05;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failure messages of one criterion; only the first few are kept.
class Criterion {
 public:
  void fail(const std::string& message) {
    if (failures_++ < 3) messages_.push_back(message);
  }
  void expect(bool ok, const std::string& message) {
    if (!ok) fail(message);
  }
  std::size_t failures() const { return failures_; }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

std::string str(const HalfPlanePoint& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

double max_dev(const QVectord& a, const QVectord& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, norm(a[k] - b[k]));
  return m;
}

double max_dev(const QMatrixd& a, const QMatrixd& b) { return max_abs(a - b); }

Quaterniond random_unit_imaginary(Rng& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    const double x = g(rng), y = g(rng), z = g(rng);
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r > 1e-3) return {0.0, x / r, y / r, z / r};
  }
}

RegionSet region_of(const std::map<std::string, RegionSet>& regions, const std::string& name) {
  const auto it = regions.find(name);
  return it == regions.end() ? RegionSet() : it->second;
}

std::vector<long long> sigma_k_indices(const std::map<std::string, RegionSet>& regions) {
  std::vector<long long> ks;
  const std::string prefix = "sigma_k:";
  for (const auto& [name, r] : regions)
    if (name.rfind(prefix, 0) == 0) ks.push_back(std::stoll(name.substr(prefix.size())));
  return ks;
}

bool subset(const RegionSet& a, const RegionSet& b) { return region_equal(unite(a, b), b); }

// Grid points plus the explicit points and leading sequence points of every
// region, where the pointwise identities are probed.
std::vector<HalfPlanePoint> probes(const std::map<std::string, RegionSet>& regions) {
  auto pts = half_plane_grid(61, 31);
  for (const auto& [name, r] : regions) {
    for (const auto& p : r.explicit_points()) pts.push_back(p);
    for (const auto& seq : r.sequences()) {
      pts.push_back(seq.limit_point());
      for (std::size_t m = 1; m <= 6; ++m) pts.push_back(seq.point(m));
    }
    for (double rad : r.critical_radii()) {
      pts.push_back({rad, 0.0});
      pts.push_back({0.0, rad});
      pts.push_back({-rad / std::sqrt(2.0), rad / std::sqrt(2.0)});
    }
  }
  return pts;
}

// ---- criteria

void identity_and_zero(Criterion& c) {
  const auto t0 = Clock::now();
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto id = right_eigenspheres(QMatrixq::identity(n));
    c.expect(id.spheres.size() == 1 && id.spheres[0].point == HalfPlanePoint{1.0, 0.0} &&
                 id.spheres[0].multiplicity == n,
             "identity of size " + std::to_string(n));
    const auto zero = right_eigenspheres(QMatrixq::zero(n, n));
    c.expect(zero.spheres.size() == 1 && zero.spheres[0].point == HalfPlanePoint{0.0, 0.0} &&
                 zero.spheres[0].multiplicity == n,
             "zero of size " + std::to_string(n));
  }
  const double t = seconds_since(t0);
  c.expect(t < 1.0, "runtime " + std::to_string(t) + " s");
}

void sphere_invariance(Criterion& c) {
  Rng rng(kSeed + 2);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = dim(rng);
    const auto a = random_matrix(rng, n, n);
    const Eigen::MatrixXcd ca = oracle::embed(a);
    const double na = oracle::spectral_norm(ca);
    const auto spheres = right_eigenspheres(a);
    for (const auto& e : spheres.spheres) {
      std::vector<std::size_t> dims;
      for (int r = 0; r < 8; ++r) {
        const Quaterniond q = Quaterniond(e.point.u) + random_unit_imaginary(rng) * e.point.s;
        const double scale = na * na + 2.0 * std::abs(e.point.u) * na + q.norm2();
        // R_q built from the representative itself: Re q and |q|^2 only.
        const Eigen::MatrixXcd rq = ca * ca - 2.0 * q.real() * ca +
                                    q.norm2() * Eigen::MatrixXcd::Identity(ca.rows(), ca.cols());
        dims.push_back(oracle::kernel_dim(rq, 1e-8 * scale));
      }
      for (std::size_t d : dims)
        c.expect(d == dims.front() && d == e.multiplicity,
                 "matrix " + std::to_string(t) + " sphere " + str(e.point));
    }
  }
}

void chi_homomorphism(Criterion& c) {
  Rng rng(kSeed + 3);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int t = 0; t < 500; ++t) {
    const std::size_t m = dim(rng), k = dim(rng), n = dim(rng);
    const auto a = random_matrix(rng, m, k), b = random_matrix(rng, k, n);
    const Eigen::MatrixXcd lhs = chi(matmul(a, b));
    const Eigen::MatrixXcd rhs = chi(a) * chi(b);
    const double bound = 1e-12 * oracle::spectral_norm(chi(a)) * oracle::spectral_norm(chi(b));
    c.expect(oracle::spectral_norm(lhs - rhs) <= bound, "pair " + std::to_string(t));
    const auto qa = random_integer_matrix(rng, m, k, 9);
    c.expect(chi(adjoint(qa)) == Eigen::MatrixXcd(chi(qa).adjoint()),
             "rational adjoint " + std::to_string(t));
  }
}

// sum_k phi_k q <phi_k|phi> with the complex block product.
QVectord left_mult_oracle(const HilbertBasis<double>& basis, const Quaterniond& q, const QVectord& phi) {
  QVectord out(phi.size());
  for (const auto& v : basis.vectors) {
    Eigen::Matrix2cd g = Eigen::Matrix2cd::Zero();
    for (std::size_t k = 0; k < phi.size(); ++k) g += oracle::block(v[k]).adjoint() * oracle::block(phi[k]);
    const auto coeff = oracle::product(q, oracle::from_block(g));
    for (std::size_t k = 0; k < phi.size(); ++k) out[k] += oracle::product(v[k], coeff);
  }
  return out;
}

Quaterniond inner_oracle(const QVectord& a, const QVectord& b) {
  Eigen::Matrix2cd g = Eigen::Matrix2cd::Zero();
  for (std::size_t k = 0; k < a.size(); ++k) g += oracle::block(a[k]).adjoint() * oracle::block(b[k]);
  return oracle::from_block(g);
}

void left_multiplication(Criterion& c) {
  Rng rng(kSeed + 4);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = dim(rng);
    const auto basis = random_basis(rng, n);
    const LeftMultStructure<double> l(basis);
    const auto q = random_quaternion(rng), p = random_quaternion(rng);
    const auto a = random_matrix(rng, n, n);
    const auto phi = random_vector(rng, n), psi = random_vector(rng, n);
    const double r = random_quaternion(rng).q0;
    auto lm = [&](const Quaterniond& x, const QVectord& v) { return left_scalar_vec(l, x, v); };
    std::vector<double> dev{
        max_dev(lm(q, phi), left_mult_oracle(basis, q, phi)),
        // (a) additivity and compatibility with right scalars
        max_dev(lm(q, phi + psi), lm(q, phi) + lm(q, psi)),
        max_dev(lm(q, phi * p), lm(q, phi) * p),
        // (b) norm
        std::abs(norm(lm(q, phi)) - norm(q) * norm(phi)),
        // (c) associativity
        max_dev(lm(q, lm(p, phi)), lm(oracle::product(q, p), phi)),
        // (d) adjoint of left scalars
        norm(inner_oracle(lm(q.conj(), phi), psi) - inner_oracle(phi, lm(q, psi))),
        // (e) real scalars commute
        max_dev(lm(Quaterniond(r), phi), phi * Quaterniond(r)),
        // (f) linearity in q
        max_dev(lm(q + p, phi), lm(q, phi) + lm(p, phi)),
        // operator scaling matches the vector action
        max_dev(apply(left_scalar_op(l, q, a), phi), left_mult_oracle(basis, q, apply(a, phi))),
        max_dev(apply(right_scalar_op(l, a, q), phi), apply(a, left_mult_oracle(basis, q, phi))),
        // adjoint identities
        max_dev(adjoint(left_scalar_op(l, q, a)), right_scalar_op(l, adjoint(a), q.conj())),
        max_dev(adjoint(right_scalar_op(l, a, q)), left_scalar_op(l, q.conj(), adjoint(a)))};
    for (const auto& v : basis.vectors) dev.push_back(max_dev(lm(q, v), v * q));
    for (double d : dev) worst = std::max(worst, d);
    c.expect(adjoint_identities_check(l, q, a, 1e-10), "adjoint identities " + std::to_string(t));
  }
  c.expect(worst <= 1e-10, "max deviation " + std::to_string(worst));
}

void ascent_descent(Criterion& c) {
  Rng rng(kSeed + 5);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = dim(rng);
    const auto a = random_rational_matrix(rng, n);
    const auto rep = asc_dsc(a);
    const std::string id = "matrix " + std::to_string(t);
    c.expect(rep.ascent == rep.descent, id + ": ascent != descent");
    c.expect(rep.stabilization <= n, id + ": stabilization beyond n");
    // Independent power ranks: kernel dimensions of the powers by row reduction.
    QMatrixq p = QMatrixq::identity(n);
    for (std::size_t k = 0; k < rep.power_ranks.size(); ++k) {
      c.expect(rep.power_ranks[k] == n - kernel_basis(p).size(), id + ": power rank");
      if (k > 0) c.expect(rep.power_ranks[k] <= rep.power_ranks[k - 1], id + ": ranks not monotone");
      p = matmul(p, a);
    }
    c.expect(ker_ran_complementary(a, rep.stabilization), id + ": complementarity");
  }
}

void schechter(Criterion& c, const std::vector<StructuredOperator>& corpus) {
  const auto t0 = Clock::now();
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const auto regions = spectrum_regions(corpus[t]);
    const std::string id = "operator " + std::to_string(t) + ": ";
    const auto s = region_of(regions, "sigma_s"), e = region_of(regions, "sigma_e"),
               w = region_of(regions, "ws"), s0 = region_of(regions, "sigma_0");
    RegionSet union_k, union_all_k = s0;
    for (long long k : sigma_k_indices(regions)) {
      union_k = unite(union_k, region_of(regions, sigma_k_name(k)));
      union_all_k = unite(union_all_k, region_of(regions, sigma_k_name(k)));
    }
    c.expect(region_equal(w, unite(e, union_k)), id + "ws != sigma_e + sigma_k");
    c.expect(subset(e, w) && subset(w, s), id + "(a)");
    c.expect(region_equal(e, w) == union_k.empty(), id + "(b)");
    c.expect(region_equal(s, unite(w, s0)), id + "(c) union");
    c.expect(region_equal(w, s) == s0.empty(), id + "(d)");
    c.expect((region_equal(e, w) && region_equal(w, s)) == union_all_k.empty(), id + "(e)");
    for (const auto& p : probes(regions)) {
      c.expect(!(w.contains(p) && s0.contains(p)), id + "(c) ws meets sigma_0 at " + str(p));
      c.expect(w.contains(p) == (s.contains(p) && !s0.contains(p)), id + "ws at " + str(p));
    }
  }
  const double t = seconds_since(t0);
  c.expect(t < 30.0, "runtime " + std::to_string(t) + " s");
}

void perturbation_invariance(Criterion& c, const std::vector<StructuredOperator>& corpus) {
  Rng rng(kSeed + 7);
  std::uniform_int_distribution<std::size_t> rank(1, 3);
  for (std::size_t t = 0; t < 20; ++t) {
    const auto& a = corpus[t];
    const auto base = spectrum_regions(a);
    for (int k = 0; k < 3; ++k) {
      const auto b = perturb(a, random_perturbation(rng, a, rank(rng)));
      const auto pert = spectrum_regions(b);
      const std::string id = "operator " + std::to_string(t) + " perturbation " + std::to_string(k);
      for (const char* name : {"sigma_e", "sigma_el", "sigma_er", "ws"})
        c.expect(region_equal(region_of(base, name), region_of(pert, name)), id + ": " + name);
      c.expect(sigma_k_indices(base) == sigma_k_indices(pert), id + ": sigma_k indices");
      for (long long i : sigma_k_indices(base))
        c.expect(region_equal(region_of(base, sigma_k_name(i)), region_of(pert, sigma_k_name(i))),
                 id + ": " + sigma_k_name(i));
      c.expect(region_equal(weyl_spectrum(a), weyl_spectrum(b)), id + ": weyl_spectrum");
    }
  }

  // I versus I - P with P the projector onto the first coordinate: 0 moves
  // into sigma_0 while ws stays the single sphere of 1.
  StructuredOperator id;
  id.diagonal_families.push_back(DiagonalFamily::constant(Quaterniond(1.0)));
  const auto witness = perturb(id, {{QVectord{Quaterniond(-1.0)}, QVectord{Quaterniond(1.0)}}});
  const HalfPlanePoint origin{0.0, 0.0};
  const auto sections = [&](const StructuredOperator& a) {
    const auto rq = oracle::pseudo_resolvent(oracle::embed(truncate(a, 32)), 0.0, 0.0);
    return oracle::kernel_dim(rq, 1e-10);
  };
  c.expect(sections(id) == 0, "identity truncation singular at 0");
  c.expect(sections(witness) == 1, "I - P truncation kernel at 0");
  c.expect(estimate_sigma0(TruncationOracle(witness).evaluate(origin)), "oracle sigma_0 estimate");
  c.expect(!region_of(spectrum_regions(id), "sigma_s").contains(origin), "0 in sigma_s(I)");
  c.expect(region_equal(weyl_spectrum(witness), RegionSet::point({1.0, 0.0})), "ws(I - P)");
  c.expect(classify(witness, origin).sigma_0 == Verdict::delegated, "sigma_0 of I - P not delegated");
}

void shift_anchor(Criterion& c) {
  const auto t0 = Clock::now();
  StructuredOperator a;
  a.shift_tails.push_back({1.0, ShiftDirection::forward});
  const auto regions = spectrum_regions(a);
  c.expect(region_equal(region_of(regions, "sigma_s"), RegionSet::disk(1.0)), "sigma_s");
  c.expect(region_equal(region_of(regions, "sigma_e"), RegionSet::circle(1.0)), "sigma_e");
  c.expect(region_equal(region_of(regions, "sigma_rs"), RegionSet::disk(1.0, false)), "sigma_rs");
  c.expect(region_equal(region_of(regions, sigma_k_name(-2)), RegionSet::disk(1.0, false)), "sigma_k:-2");
  c.expect(sigma_k_indices(regions) == std::vector<long long>{-2}, "sigma_k indices");
  c.expect(region_equal(region_of(regions, "ws"), RegionSet::disk(1.0)), "ws");
  c.expect(region_equal(region_of(regions, "bs"), RegionSet::disk(1.0)), "bs");
  c.expect(region_of(regions, "sigma_0").empty(), "sigma_0");

  const SpectralModel model(a);
  const TruncationOracle oracle(a);
  for (const auto& p : half_plane_grid(121, 61)) {
    const double r = p.radius();
    if (r < 1.0 - kSphereTolerance) {
      const auto cl = classify(a, p);
      c.expect(cl.index == FredholmIndex{FredholmIndex::Kind::finite, -2}, "index at " + str(p));
      c.expect(cl.residual_spectrum == Verdict::yes, "sigma_rs at " + str(p));
    }
    if (model.boundary_distance(p) < kNearBoundary) continue;
    const auto v = oracle.evaluate(p, false).verdict;
    if (r < 1.0) c.expect(v != TrendVerdict::bounded_away, "BOUNDED-AWAY inside at " + str(p));
    else c.expect(v != TrendVerdict::vanishing, "VANISHING outside at " + str(p));
  }
  for (const HalfPlanePoint p : {HalfPlanePoint{1.0, 0.0}, HalfPlanePoint{-1.0, 0.0}})
    c.expect(oracle.evaluate(p, false).verdict == TrendVerdict::vanishing, "boundary at " + str(p));
  const double t = seconds_since(t0);
  c.expect(t < 60.0, "runtime " + std::to_string(t) + " s");
}

void browder_chain(Criterion& c, const std::vector<StructuredOperator>& corpus) {
  bool browder_not_invertible = false, weyl_not_browder = false, fredholm_not_weyl = false;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const auto& a = corpus[t];
    auto pts = half_plane_grid(41, 21);
    const SpectralModel model(a);
    for (const auto& atom : model.atoms()) pts.push_back(atom.representative);
    for (const auto& p : pts) {
      const auto cl = classify(a, p);
      const bool invertible = cl.resolvent == Verdict::yes;
      const bool browder = cl.browder == Verdict::no;
      const bool weyl = cl.weyl == Verdict::no;
      const bool fredholm = cl.fredholm;
      const std::string id = "operator " + std::to_string(t) + " at " + str(p);
      c.expect(cl.browder != Verdict::delegated, id + ": Bs delegated");
      c.expect(!invertible || browder, id + ": invertible but not Browder");
      c.expect(!browder || weyl, id + ": Browder but not Weyl");
      c.expect(!weyl || fredholm, id + ": Weyl but not Fredholm");
      if (browder && !invertible) browder_not_invertible = true;
      if (weyl && !browder) weyl_not_browder = true;
      if (fredholm && !weyl) fredholm_not_weyl = true;
      if (browder && cl.s_spectrum == Verdict::yes)
        c.expect(cl.pi_0 == Verdict::yes, id + ": Browder point of sigma_s outside pi_0");
    }
  }
  c.expect(browder_not_invertible, "no Browder, non-invertible witness");
  c.expect(weyl_not_browder, "no Weyl, non-Browder witness");
  c.expect(fredholm_not_weyl, "no Fredholm, non-Weyl witness");
}

void oracle_agreement(Criterion& c, const std::vector<StructuredOperator>& corpus) {
  std::size_t decided = 0, agreed = 0;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const auto& a = corpus[t];
    const SpectralModel model(a);
    const TruncationOracle oracle(a);
    for (const auto& p : half_plane_grid(40, 40)) {
      if (model.boundary_distance(p) < kNearBoundary) continue;
      const auto v = oracle.evaluate(p, false).verdict;
      if (v == TrendVerdict::inconclusive) continue;
      ++decided;
      if (agreement(v, classify(a, p)) == Agreement::agree) ++agreed;
      else c.fail("operator " + std::to_string(t) + " at " + str(p) + ": " + to_string(v));
    }
  }
  c.expect(decided > 0, "no decided cells");
  std::cout << "  decided cells: " << decided << ", agreeing: " << agreed << '\n';
}

}  // namespace

int main() {
  const auto corpus = structured_corpus(corpus_seed(kSeed), 50);
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"1 identity and zero eigenspheres", identity_and_zero},
      {"2 sphere invariance", sphere_invariance},
      {"3 chi homomorphism", chi_homomorphism},
      {"4 left scalar multiplication and adjoint identities", left_multiplication},
      {"5 ascent and descent", ascent_descent},
      {"6 Schechter identities", [&](Criterion& c) { schechter(c, corpus); }},
      {"7 compact perturbation invariance", [&](Criterion& c) { perturbation_invariance(c, corpus); }},
      {"8 shift anchor", shift_anchor},
      {"9 Browder chain", [&](Criterion& c) { browder_chain(c, corpus); }},
      {"10 oracle agreement", [&](Criterion& c) { oracle_agreement(c, corpus); }}};

  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Criterion c;
    const auto t0 = Clock::now();
    try {
      run(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures() == 0;
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << seconds_since(t0) << " s)\n";
    for (const auto& m : c.messages()) std::cout << "  " << m << '\n';
    if (c.failures() > c.messages().size())
      std::cout << "  ... " << c.failures() - c.messages().size() << " more\n";
    std::cout.flush();
  }
  return failed == 0 ? 0 : 1;
}
