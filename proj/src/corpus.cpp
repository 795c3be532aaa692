#include "qspectral/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace qspectral {

std::uint64_t corpus_seed(std::uint64_t fallback) {
  const char* env = std::getenv("QSPECTRAL_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  return fallback;
}

Quaterniond random_quaternion(Rng& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng), g(rng), g(rng)};
}

Quaterniond random_dyadic_quaternion(Rng& rng) {
  std::uniform_int_distribution<int> q(-8, 8);
  std::bernoulli_distribution keep(0.5);
  Quaterniond x(q(rng) / 4.0);
  if (keep(rng)) x.q1 = q(rng) / 4.0;
  if (keep(rng)) x.q2 = q(rng) / 4.0;
  if (keep(rng)) x.q3 = q(rng) / 4.0;
  return x;
}

QVectord random_vector(Rng& rng, std::size_t n) {
  QVectord v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = random_quaternion(rng);
  return v;
}

QMatrixd random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  QMatrixd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_quaternion(rng);
  return m;
}

QMatrixq random_integer_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  QMatrixq m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = Quaternionq(Rational(d(rng)), Rational(d(rng)), Rational(d(rng)), Rational(d(rng)));
  return m;
}

namespace {

// Unit upper-triangular integer matrix and its exact inverse.
std::pair<QMatrixq, QMatrixq> unimodular_pair(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-1, 1);
  QMatrixq p = QMatrixq::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      p(i, j) = Quaternionq(Rational(d(rng)), Rational(d(rng)), Rational(0), Rational(d(rng)));
  // Back substitution on P X = I, column by column.
  QMatrixq inv = QMatrixq::identity(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t ii = n; ii-- > 0;) {
      Quaternionq acc = ii == c ? Quaternionq(Rational(1)) : Quaternionq();
      for (std::size_t k = ii + 1; k < n; ++k) acc -= p(ii, k) * inv(k, c);
      inv(ii, c) = acc;
    }
  return {p, inv};
}

}  // namespace

QMatrixq random_rational_matrix(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> pick(0, 3);
  switch (pick(rng)) {
    case 0: {
      // Block-diagonal: a nilpotent chain of random length plus a generic block.
      std::uniform_int_distribution<std::size_t> len(1, n);
      const std::size_t k = len(rng);
      QMatrixq j(n, n);
      for (std::size_t i = 0; i + 1 < k; ++i) j(i, i + 1) = Quaternionq(Rational(1));
      const auto g = random_integer_matrix(rng, n - k, n - k, 2);
      for (std::size_t a = 0; a < n - k; ++a)
        for (std::size_t b = 0; b < n - k; ++b) j(k + a, k + b) = g(a, b);
      const auto [p, pinv] = unimodular_pair(rng, n);
      return matmul(matmul(p, j), pinv);
    }
    case 1: {
      std::uniform_int_distribution<std::size_t> r(0, n > 1 ? n - 1 : 0);
      const std::size_t k = r(rng);
      if (k == 0) return QMatrixq(n, n);
      return matmul(random_integer_matrix(rng, n, k, 2), random_integer_matrix(rng, k, n, 2));
    }
    default:
      return random_integer_matrix(rng, n, n, 3);
  }
}

HilbertBasis<double> random_basis(Rng& rng, std::size_t n) {
  std::vector<QVectord> vs;
  for (std::size_t k = 0; k < n; ++k) vs.push_back(random_vector(rng, n));
  return gram_schmidt(vs);
}

StructuredOperator random_structured_operator(Rng& rng) {
  std::uniform_int_distribution<int> count(0, 2);
  std::uniform_int_distribution<int> coin(0, 1);
  StructuredOperator a;
  if (coin(rng)) {
    std::uniform_int_distribution<std::size_t> dim(1, 2);
    const std::size_t n = dim(rng);
    QMatrixd f(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        f(i, j) = (i == j || coin(rng)) ? random_dyadic_quaternion(rng) : Quaterniond();
    a.finite_block = f;
  }
  static constexpr double kRatios[] = {0.25, 0.5, 0.75};
  static constexpr double kWeights[] = {0.5, 1.0, 1.5, 2.0, 2.5};
  std::uniform_int_distribution<int> ratio(0, 2), weight(0, 4);
  do {
    a.diagonal_families.clear();
    a.shift_tails.clear();
    const int nf = count(rng), ns = count(rng);
    for (int k = 0; k < nf; ++k) {
      if (coin(rng)) {
        a.diagonal_families.push_back(DiagonalFamily::constant(random_dyadic_quaternion(rng)));
      } else {
        Quaterniond w;
        while (w.is_zero()) w = random_dyadic_quaternion(rng);
        a.diagonal_families.push_back(
            DiagonalFamily::geometric(random_dyadic_quaternion(rng), w, kRatios[ratio(rng)]));
      }
    }
    for (int k = 0; k < ns; ++k)
      a.shift_tails.push_back({kWeights[weight(rng)],
                               coin(rng) ? ShiftDirection::forward : ShiftDirection::backward});
  } while (a.infinite_components() == 0);
  a.validate();
  return a;
}

std::vector<StructuredOperator> structured_corpus(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<StructuredOperator> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_structured_operator(rng));
  return out;
}

std::vector<PerturbationPair> random_perturbation(Rng& rng, const StructuredOperator& a,
                                                  std::size_t rank) {
  const std::size_t support = a.is_infinite_dimensional() ? 8 : a.finite_dim();
  std::uniform_int_distribution<std::size_t> len(1, support);
  std::vector<PerturbationPair> out;
  for (std::size_t k = 0; k < rank; ++k) {
    QVectord psi(len(rng)), phi(len(rng));
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = random_dyadic_quaternion(rng);
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = random_dyadic_quaternion(rng);
    out.emplace_back(psi, phi);
  }
  return out;
}

}  // namespace qspectral
