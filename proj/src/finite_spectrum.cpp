#include "qspectral/finite_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qspectral {

const char* to_string(SpectralTag tag) {
  switch (tag) {
    case SpectralTag::resolvent: return "resolvent";
    case SpectralTag::point: return "sigma_pS";
    case SpectralTag::residual: return "sigma_rS";
    case SpectralTag::continuous: return "sigma_cS";
  }
  return "?";
}

std::size_t numeric_kernel_dim(const QMatrixd& a, double rel_tol, double scale) {
  if (a.cols() == 0) return 0;
  if (a.rows() == 0) return a.cols();
  const Eigen::VectorXd sv = chi_singular_values(chi(a));
  const double top = std::max(sv(0), scale);
  if (top == 0.0) return a.cols();
  // chi(A) is 2m x 2n; columns beyond the row count are kernel directions.
  std::size_t small = 2 * a.cols() - static_cast<std::size_t>(sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) <= rel_tol * top) ++small;
  return (small + 1) / 2;
}

double relative_min_singular_value(const QMatrixd& a, double scale) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const Eigen::VectorXd sv = chi_singular_values(chi(a));
  const double top = std::max(sv(0), scale);
  if (top == 0.0) return 0.0;
  return sv(sv.size() - 1) / top;
}

double resolvent_scale(const QMatrixd& a, const HalfPlanePoint& p) {
  const double n = operator_norm(a);
  return n * n + 2.0 * std::abs(p.u) * n + p.u * p.u + p.s * p.s;
}

std::size_t resolvent_kernel_dim(const QMatrixd& a, const HalfPlanePoint& p) {
  return numeric_kernel_dim(pseudo_resolvent(a, p), kMembershipTolerance, resolvent_scale(a, p));
}

double resolvent_residual(const QMatrixd& a, const HalfPlanePoint& p) {
  return relative_min_singular_value(pseudo_resolvent(a, p), resolvent_scale(a, p));
}

std::size_t EigensphereSet::total_multiplicity() const {
  std::size_t t = 0;
  for (const auto& e : spheres) t += e.multiplicity;
  return t;
}

int EigensphereSet::find(const HalfPlanePoint& p, double tol) const {
  for (std::size_t k = 0; k < spheres.size(); ++k)
    if (same_sphere(spheres[k].point, p, tol)) return static_cast<int>(k);
  return -1;
}

namespace {

constexpr double kPathDiscrepancy = 1e-6;
constexpr double kClusterTolerance = 1e-5;

double scale_of(const QMatrixd& a) { return std::max(1.0, max_abs(a)); }

struct Cluster {
  HalfPlanePoint centroid;
  std::size_t count = 0;
};

// Eigenvalues of chi(A) mapped to (Re, |Im|) and grouped. Each quaternionic
// eigenvalue contributes the pair {lambda, conj(lambda)}, which map to the same
// point. Defective blocks scatter eigenvalues by eps^(1/k); the centroid of a
// cluster stays accurate to rounding.
std::vector<Cluster> qr_clusters(const QMatrixd& a) {
  const Eigen::MatrixXcd c = chi(a);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw numerical_error("right_eigenspheres: eigensolver did not converge", -1.0);
  }
  const auto& ev = es.eigenvalues();
  std::vector<HalfPlanePoint> pts;
  pts.reserve(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index k = 0; k < ev.size(); ++k) pts.push_back({ev(k).real(), std::abs(ev(k).imag())});

  const double tol = kClusterTolerance * scale_of(a);
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < pts.size(); ++x)
    for (std::size_t y = x + 1; y < pts.size(); ++y)
      if (std::hypot(pts[x].u - pts[y].u, pts[x].s - pts[y].s) <= tol) parent[root(x)] = root(y);

  std::vector<Cluster> out;
  std::vector<int> slot(pts.size(), -1);
  for (std::size_t x = 0; x < pts.size(); ++x) {
    const std::size_t r = root(x);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.push_back({});
    }
    auto& cl = out[static_cast<std::size_t>(slot[r])];
    cl.centroid.u += pts[x].u;
    cl.centroid.s += pts[x].s;
    ++cl.count;
  }
  for (auto& cl : out) {
    cl.centroid.u /= static_cast<double>(cl.count);
    cl.centroid.s /= static_cast<double>(cl.count);
    // A real eigenvalue inside a defective block scatters off the axis; the
    // folded |Im| centroid is then positive but tiny.
    if (cl.centroid.s <= tol) {
      const HalfPlanePoint real_pt{cl.centroid.u, 0.0};
      if (resolvent_residual(a, real_pt) < kMembershipTolerance)
        cl.centroid = real_pt;
    }
  }
  return out;
}

void sort_spheres(EigensphereSet& set) {
  std::sort(set.spheres.begin(), set.spheres.end(), [](const Eigensphere& x, const Eigensphere& y) {
    return x.point.u != y.point.u ? x.point.u < y.point.u : x.point.s < y.point.s;
  });
}

Eigensphere numeric_sphere(const QMatrixd& a, const HalfPlanePoint& p) {
  const std::size_t dim = resolvent_kernel_dim(a, p);
  if (dim == 0) {
    const double res = resolvent_residual(a, p);
    std::ostringstream os;
    os << "right_eigenspheres: detected sphere " << p
       << " does not make R_q(A) singular (relative residual " << res << ")";
    throw numerical_error(os.str(), res);
  }
  return {p, dim, false};
}

// Best rational approximation with bounded denominator (continued fractions).
std::optional<Rational> reconstruct_rational(double x, long long max_den = 1000000) {
  if (!std::isfinite(x)) return std::nullopt;
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(r);
    if (std::abs(fl) > 1e15) return std::nullopt;
    const auto a = static_cast<long long>(fl);
    const long long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    const double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::abs(approx - x) <= 1e-9 * std::max(1.0, std::abs(x))) return Rational(h1, k1);
    const double frac = r - fl;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  if (k1 != 0) {
    const double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::abs(approx - x) <= 1e-9 * std::max(1.0, std::abs(x))) return Rational(h1, k1);
  }
  return std::nullopt;
}

// Exact multiplicity when Re q and |q|^2 reconstruct to rationals making R_q
// exactly singular.
std::optional<Eigensphere> exact_sphere(const QMatrixq& a, const HalfPlanePoint& p) {
  const auto u = reconstruct_rational(p.u);
  const auto n2 = reconstruct_rational(p.u * p.u + p.s * p.s);
  if (!u || !n2) return std::nullopt;
  if (*n2 < (*u) * (*u)) return std::nullopt;
  const auto r = pseudo_resolvent(a, *u, *n2);
  const std::size_t rk = rank(r);
  if (rk == a.rows()) return std::nullopt;
  const double s = std::sqrt(to_double(*n2 - (*u) * (*u)));
  return Eigensphere{{to_double(*u), s}, a.rows() - rk, true};
}

}  // namespace

EigensphereSet right_eigenspheres(const QMatrixd& a) {
  if (!a.is_square()) throw dimension_error("right_eigenspheres: matrix must be square");
  EigensphereSet set;
  if (a.rows() == 0) return set;
  for (const auto& cl : qr_clusters(a)) set.spheres.push_back(numeric_sphere(a, cl.centroid));
  sort_spheres(set);
  return set;
}

EigensphereSet right_eigenspheres(const QMatrixq& a) {
  if (!a.is_square()) throw dimension_error("right_eigenspheres: matrix must be square");
  EigensphereSet set;
  if (a.rows() == 0) return set;
  const QMatrixd ad = matrix_cast<double>(a);

  std::vector<HalfPlanePoint> points;
  for (const auto& cl : qr_clusters(ad)) points.push_back(cl.centroid);

  if (a.rows() <= 3) {
    const auto exact =
        detail::polynomial_root_spheres(detail::squarefree_part(detail::chi_characteristic_polynomial(a)));
    auto mismatch = [](const std::vector<HalfPlanePoint>& from, const std::vector<HalfPlanePoint>& to) {
      double worst = 0.0;
      for (const auto& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : to) best = std::min(best, std::hypot(p.u - q.u, p.s - q.s));
        worst = std::max(worst, best);
      }
      return worst;
    };
    const double gap = std::max(mismatch(exact, points), mismatch(points, exact));
    if (exact.size() != points.size() || gap > kPathDiscrepancy) {
      std::ostringstream os;
      os << "right_eigenspheres: exact and QR paths disagree (" << exact.size() << " vs "
         << points.size() << " spheres, gap " << gap << ")";
      throw numerical_error(os.str(), gap);
    }
    points = exact;
  }

  for (const auto& p : points) {
    if (auto e = exact_sphere(a, p)) {
      set.spheres.push_back(*e);
    } else {
      set.spheres.push_back(numeric_sphere(ad, p));
    }
  }
  sort_spheres(set);
  return set;
}

SpectralTag s_spectrum_membership(const QMatrixd& a, const Quaterniond& q) {
  return resolvent_residual(a, sphere_of(q)) < kMembershipTolerance ? SpectralTag::point
                                                               : SpectralTag::resolvent;
}

SpectralTag s_spectrum_membership(const QMatrixq& a, const Quaternionq& q) {
  const auto r = pseudo_resolvent(a, q);
  return rank(r) < a.rows() ? SpectralTag::point : SpectralTag::resolvent;
}

namespace detail {

namespace {

struct GaussRational {
  Rational re, im;
  GaussRational() = default;
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  trim(d);
  return d;
}

void make_monic(Poly& p) {
  trim(p);
  if (p.empty()) return;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
}

// Returns (quotient, remainder).
std::pair<Poly, Poly> divmod(Poly num, Poly den) {
  trim(num);
  trim(den);
  if (den.empty()) throw std::domain_error("polynomial division by zero");
  if (num.size() < den.size()) return {Poly{}, num};
  Poly quot(num.size() - den.size() + 1);
  while (!num.empty() && num.size() >= den.size()) {
    const std::size_t shift = num.size() - den.size();
    const Rational f = num.back() / den.back();
    quot[shift] = f;
    for (std::size_t k = 0; k < den.size(); ++k) num[shift + k] -= f * den[k];
    num.pop_back();
    trim(num);
  }
  trim(quot);
  return {quot, num};
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

}  // namespace

std::vector<Rational> chi_characteristic_polynomial(const QMatrixq& a) {
  if (!a.is_square()) throw dimension_error("characteristic polynomial: matrix must be square");
  const std::size_t n = 2 * a.rows();
  std::vector<GaussRational> c(n * n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& q = a(i, j);
      const GaussRational z1{q.q0, q.q1}, z2{q.q2, q.q3};
      c[(2 * i) * n + 2 * j] = z1;
      c[(2 * i) * n + 2 * j + 1] = z2;
      c[(2 * i + 1) * n + 2 * j] = {-z2.re, z2.im};
      c[(2 * i + 1) * n + 2 * j + 1] = {z1.re, -z1.im};
    }

  // Faddeev-LeVerrier: M_k = C M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(C M_k) / k.
  std::vector<GaussRational> coeff(n + 1);
  coeff[n] = {Rational(1), Rational(0)};
  std::vector<GaussRational> m(n * n), cm(n * n);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<GaussRational> next(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        GaussRational acc;
        for (std::size_t l = 0; l < n; ++l) acc = acc + c[i * n + l] * m[l * n + j];
        next[i * n + j] = acc;
      }
    for (std::size_t i = 0; i < n; ++i) next[i * n + i] = next[i * n + i] + coeff[n - k + 1];
    m = std::move(next);
    GaussRational tr;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr = tr + c[i * n + l] * m[l * n + i];
    const Rational kk(static_cast<long>(k));
    coeff[n - k] = {-tr.re / kk, -tr.im / kk};
  }

  Poly p(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    if (!coeff[k].im.is_zero())
      throw std::logic_error("characteristic polynomial of chi(A) must be real");
    p[k] = coeff[k].re;
  }
  return p;
}

std::vector<Rational> squarefree_part(const std::vector<Rational>& p) {
  Poly q = p;
  make_monic(q);
  if (q.size() <= 2) return q;
  const Poly g = gcd(q, derivative(q));
  Poly s = divmod(q, g).first;
  make_monic(s);
  return s;
}

std::vector<HalfPlanePoint> polynomial_root_spheres(const std::vector<Rational>& p_in) {
  Poly p = p_in;
  make_monic(p);
  using cld = std::complex<long double>;
  const std::size_t deg = p.empty() ? 0 : p.size() - 1;
  std::vector<long double> c(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) c[k] = p[k].convert_to<long double>();

  std::vector<cld> z(deg);
  if (deg == 1) {
    z[0] = -c[0];
  } else if (deg > 1) {
    long double bound = 0;
    for (std::size_t k = 0; k < deg; ++k) bound = std::max(bound, std::abs(c[k]));
    bound += 1;
    const long double pi = 3.14159265358979323846264338327950288L;
    for (std::size_t k = 0; k < deg; ++k)
      z[k] = std::polar(bound, 2 * pi * static_cast<long double>(k) / static_cast<long double>(deg) + 0.4L);

    auto eval = [&](const cld& x, cld& dp) {
      cld v = c[deg];
      dp = 0;
      for (std::size_t k = deg; k-- > 0;) {
        dp = dp * x + v;
        v = v * x + c[k];
      }
      return v;
    };
    // Aberth-Ehrlich iteration; the roots are simple, so convergence is cubic.
    for (int it = 0; it < 500; ++it) {
      long double worst = 0;
      for (std::size_t k = 0; k < deg; ++k) {
        cld dp;
        const cld v = eval(z[k], dp);
        if (v == cld(0)) continue;
        const cld ratio = v / dp;
        cld sum = 0;
        for (std::size_t j = 0; j < deg; ++j)
          if (j != k) sum += cld(1) / (z[k] - z[j]);
        const cld w = ratio / (cld(1) - ratio * sum);
        z[k] -= w;
        worst = std::max(worst, std::abs(w) / (1 + std::abs(z[k])));
      }
      if (worst < 1e-19L) break;
    }
    for (auto& x : z)
      for (int it = 0; it < 3; ++it) {
        cld dp;
        const cld v = eval(x, dp);
        if (dp != cld(0)) x -= v / dp;
      }
  }

  std::vector<HalfPlanePoint> out;
  for (const auto& x : z) {
    const double scale = std::max(1.0L, std::abs(x));
    HalfPlanePoint pt{static_cast<double>(x.real()), static_cast<double>(std::abs(x.imag()))};
    if (pt.s <= 1e-12 * scale) pt.s = 0.0;
    bool dup = false;
    for (const auto& q : out)
      if (std::hypot(q.u - pt.u, q.s - pt.s) <= 1e-9 * scale) dup = true;
    if (!dup) out.push_back(pt);
  }
  return out;
}

}  // namespace detail

}  // namespace qspectral
