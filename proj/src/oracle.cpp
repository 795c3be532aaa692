#include "qspectral/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numeric>
#include <stdexcept>

#include "qspectral/linalg.hpp"

namespace qspectral {

QMatrixd truncate(const StructuredOperator& a, std::size_t n) {
  a.validate();
  if (n == 0) throw std::invalid_argument("truncate: N too small (N must be positive)");
  const std::size_t fd = a.finite_dim();
  const std::size_t cc = a.infinite_components();
  const std::size_t dim = fd + n * cc;
  if (a.perturbation_support() > dim)
    throw std::invalid_argument("truncate: N too small to contain the perturbation support");
  QMatrixd t(dim, dim);
  if (a.finite_block)
    for (std::size_t i = 0; i < fd; ++i)
      for (std::size_t j = 0; j < fd; ++j) t(i, j) = (*a.finite_block)(i, j);
  std::size_t c = 0;
  for (const auto& f : a.diagonal_families) {
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t g = a.global_index(c, m);
      t(g, g) = f.entry(m + 1);
    }
    ++c;
  }
  for (const auto& s : a.shift_tails) {
    for (std::size_t m = 0; m + 1 < n; ++m) {
      const std::size_t from = a.global_index(c, m), to = a.global_index(c, m + 1);
      if (s.direction == ShiftDirection::forward) t(to, from) = Quaterniond(s.weight);
      else t(from, to) = Quaterniond(s.weight);
    }
    ++c;
  }
  for (const auto& [psi, phi] : a.perturbation)
    for (std::size_t i = 0; i < psi.size(); ++i)
      for (std::size_t j = 0; j < phi.size(); ++j) t(i, j) += psi[i] * phi[j].conj();
  return t;
}

const char* to_string(TrendVerdict v) {
  switch (v) {
    case TrendVerdict::vanishing: return "VANISHING";
    case TrendVerdict::bounded_away: return "BOUNDED-AWAY";
    case TrendVerdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(Agreement a) {
  switch (a) {
    case Agreement::agree: return "agree";
    case Agreement::disagree: return "DISAGREE";
    case Agreement::undecided: return "undecided";
  }
  return "?";
}

TrendVerdict trend_verdict(const std::vector<double>& values) {
  if (values.empty()) return TrendVerdict::inconclusive;
  if (values.back() < kVanishingThreshold) return TrendVerdict::vanishing;
  std::vector<double> ratios;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    ratios.push_back(values[i] > 0.0 ? values[i + 1] / values[i] : 1.0);
  if (!ratios.empty()) {
    // A sequence settling on a positive floor has doubling ratios climbing
    // towards one; power-law and geometric decay keep them level or falling.
    bool decaying = true;
    for (std::size_t i = 0; i < ratios.size(); ++i)
      decaying = decaying && ratios[i] < kDecayRatio &&
                 (i == 0 || ratios[i] <= kRatioSlack * ratios[i - 1]);
    if (decaying) return TrendVerdict::vanishing;
  }
  const bool above =
      std::all_of(values.begin(), values.end(), [](double v) { return v > kBoundedThreshold; });
  if (above && (ratios.empty() || ratios.back() >= kDecayRatio)) return TrendVerdict::bounded_away;
  return TrendVerdict::inconclusive;
}

void write_csv(std::ostream& os, const TruncationReport& r) {
  const auto prec = os.precision();
  os << std::setprecision(12);
  os << "N,min_singular_value,ker_dim,adj_ker_dim\n";
  for (const auto& row : r.rows)
    os << row.size << ',' << row.min_singular_value << ',' << row.kernel_estimate << ','
       << row.adjoint_kernel_estimate << '\n';
  os.precision(prec);
}

std::ostream& operator<<(std::ostream& os, const TruncationReport& r) {
  write_csv(os, r);
  return os << "verdict: " << to_string(r.verdict) << '\n'
            << "agreement: " << to_string(r.agreement) << '\n';
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

// Number of directions in the span of the columns of v (orthonormal) that
// keep more than half of their mass on the interior coordinates.
template <typename Matrix>
std::size_t interior_count(const Matrix& v, const std::vector<bool>& interior_rows) {
  if (v.cols() == 0) return 0;
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    if (interior_rows[static_cast<std::size_t>(i)]) rows.push_back(i);
  if (rows.empty()) return 0;
  Matrix restricted(static_cast<Eigen::Index>(rows.size()), v.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) restricted.row(k) = v.row(rows[k]);
  Eigen::JacobiSVD<Matrix> svd(restricted);
  const auto sv = svd.singularValues();
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > std::sqrt(0.5)) ++n;
  return n;
}

struct BlockResult {
  double min_sv = 0.0;
  std::size_t ker = 0;
  std::size_t adj = 0;
};

template <typename Matrix>
BlockResult analyse(const Matrix& r, const std::vector<bool>& interior_rows, std::size_t multiplicity,
                    bool estimate_kernels) {
  BlockResult out;
  Eigen::BDCSVD<Matrix> values(r);
  const auto sv = values.singularValues();
  out.min_sv = sv(sv.size() - 1);
  if (!estimate_kernels) return out;
  const double tol = kVanishingThreshold * std::max(1.0, sv(0));
  Eigen::Index small = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= tol) ++small;
  if (small == 0) return out;
  Eigen::BDCSVD<Matrix> full(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix v_null = full.matrixV().rightCols(small);
  const Matrix u_null = full.matrixU().rightCols(small);
  out.ker = (interior_count(v_null, interior_rows) + multiplicity / 2) / multiplicity;
  out.adj = (interior_count(u_null, interior_rows) + multiplicity / 2) / multiplicity;
  return out;
}

}  // namespace

TruncationOracle::TruncationOracle(const StructuredOperator& a, std::vector<std::size_t> sizes) {
  std::sort(sizes.begin(), sizes.end());
  const std::size_t fd = a.finite_dim();
  const std::size_t cc = a.infinite_components();
  for (std::size_t n : sizes) {
    const QMatrixd t = truncate(a, n);
    const std::size_t dim = t.rows();
    std::vector<std::size_t> parent(dim);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (!t(i, j).is_zero()) parent[find_root(parent, i)] = find_root(parent, j);
    std::vector<std::vector<std::size_t>> groups(dim);
    for (std::size_t i = 0; i < dim; ++i) groups[find_root(parent, i)].push_back(i);

    Section section;
    section.size = n;
    for (const auto& idx : groups) {
      if (idx.empty()) continue;
      const std::size_t k = idx.size();
      QMatrixd sub(k, k);
      bool real = true;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          sub(i, j) = t(idx[i], idx[j]);
          real = real && sub(i, j).is_real();
        }
      Block b;
      b.real = real;
      for (std::size_t i : idx) b.interior.push_back(i < fd || (i - fd) / cc < (n + 1) / 2);
      if (real) {
        b.real_matrix.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) b.real_matrix(i, j) = sub(i, j).q0;
      } else {
        b.complex_matrix = chi(sub);
      }
      section.blocks.push_back(std::move(b));
    }
    sections_.push_back(std::move(section));
  }
}

TruncationReport TruncationOracle::evaluate(const HalfPlanePoint& p, bool estimate_kernels) const {
  TruncationReport rep;
  rep.point = p;
  const double two_u = 2.0 * p.u;
  const double n2 = p.u * p.u + p.s * p.s;
  std::vector<double> values;
  for (const auto& section : sections_) {
    TruncationRow row;
    row.size = section.size;
    row.min_singular_value = std::numeric_limits<double>::infinity();
    for (const auto& b : section.blocks) {
      BlockResult res;
      if (b.real) {
        const auto& m = b.real_matrix;
        Eigen::MatrixXd r = m * m - two_u * m;
        r.diagonal().array() += n2;
        res = analyse(r, b.interior, 1, estimate_kernels);
      } else {
        const auto& m = b.complex_matrix;
        Eigen::MatrixXcd r = m * m - two_u * m;
        r.diagonal().array() += n2;
        std::vector<bool> rows;
        for (bool in : b.interior) {
          rows.push_back(in);
          rows.push_back(in);
        }
        res = analyse(r, rows, 2, estimate_kernels);
      }
      row.min_singular_value = std::min(row.min_singular_value, res.min_sv);
      row.kernel_estimate += res.ker;
      row.adjoint_kernel_estimate += res.adj;
    }
    values.push_back(row.min_singular_value);
    rep.rows.push_back(row);
  }
  rep.verdict = trend_verdict(values);
  return rep;
}

Agreement agreement(TrendVerdict v, const SpectralClassification& c) {
  if (c.s_spectrum == Verdict::yes)
    return v == TrendVerdict::bounded_away ? Agreement::disagree : Agreement::agree;
  if (c.resolvent == Verdict::yes)
    return v == TrendVerdict::vanishing ? Agreement::disagree : Agreement::agree;
  return Agreement::undecided;
}

TruncationReport cross_check(const StructuredOperator& a, const HalfPlanePoint& p,
                             const std::vector<std::size_t>& sizes) {
  const TruncationOracle oracle(a, sizes);
  auto rep = oracle.evaluate(p);
  rep.agreement = agreement(rep.verdict, classify(a, p));
  return rep;
}

ShiftKernelDims shift_kernel_dims(double alpha, const HalfPlanePoint& p, ShiftDirection direction) {
  if (!(alpha > 0.0)) throw std::invalid_argument("shift_kernel_dims: alpha must be positive");
  // Adjoint side: alpha^2 x_{m+2} - 2 u alpha x_{m+1} + |q|^2 x_m = 0 for all
  // m >= 0, solved by x_m = t^m with alpha^2 t^2 - 2 u alpha t + |q|^2 = 0.
  const std::complex<double> a2 = alpha * alpha, b = -2.0 * p.u * alpha;
  const std::complex<double> c = p.u * p.u + p.s * p.s;
  const std::complex<double> disc = std::sqrt(b * b - 4.0 * a2 * c);
  const std::complex<double> roots[] = {(-b + disc) / (2.0 * a2), (-b - disc) / (2.0 * a2)};
  ShiftKernelDims d;
  std::size_t decaying = 0;
  for (const auto& t : roots) {
    const double mod = std::abs(t);
    if (std::abs(mod - 1.0) <= 1e-12) d.fredholm = false;
    if (mod < 1.0) ++decaying;
  }
  if (!d.fredholm) return {0, 0, false};
  // Operator side: alpha^2 x_{m-2} - 2 u alpha x_{m-1} + |q|^2 x_m = 0 with
  // x_{-1} = x_{-2} = 0 has no free initial data, so only x = 0 solves it.
  d.kernel = 0;
  d.adjoint_kernel = decaying;
  if (direction == ShiftDirection::backward) std::swap(d.kernel, d.adjoint_kernel);
  return d;
}

bool estimate_sigma0(const TruncationReport& r) {
  if (r.verdict != TrendVerdict::vanishing || r.rows.empty()) return false;
  const auto& first = r.rows.front();
  if (first.kernel_estimate == 0) return false;
  for (const auto& row : r.rows)
    if (row.kernel_estimate != first.kernel_estimate ||
        row.adjoint_kernel_estimate != first.kernel_estimate)
      return false;
  return true;
}

}  // namespace qspectral
