#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qspectral/corpus.hpp"
#include "qspectral/linalg.hpp"

using namespace qspectral;

namespace {

const Quaterniond kI = Quaterniond::i(), kJ = Quaterniond::j(), kK = Quaterniond::k();

double max_dev(const QVectord& a, const QVectord& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, norm(a[k] - b[k]));
  return m;
}

// <phi|psi> via the complex embedding: the (0, 0) and (0, 1) entries of
// embed(phi)^H embed(psi) restricted to one block column.
Quaterniond inner_oracle(const QVectord& phi, const QVectord& psi) {
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
  for (std::size_t k = 0; k < phi.size(); ++k)
    acc += oracle::block(phi[k]).adjoint() * oracle::block(psi[k]);
  return oracle::from_block(acc);
}

}  // namespace

TEST(QMatrix, MatmulIdentityAndUnits) {
  Rng rng(1);
  const auto a = random_matrix(rng, 3, 3);
  EXPECT_EQ(matmul(a, QMatrixd::identity(3)), a);
  const QMatrixd mi{{kI}}, mj{{kJ}};
  EXPECT_EQ(matmul(mi, mj), (QMatrixd{{kK}}));
  EXPECT_EQ(matmul(mj, mi), (QMatrixd{{-kK}}));
}

TEST(QMatrix, MatmulMatchesEmbeddingOracle) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_matrix(rng, 3, 4), b = random_matrix(rng, 4, 2);
    const Eigen::MatrixXcd expected = oracle::embed(a) * oracle::embed(b);
    EXPECT_LE((oracle::embed(matmul(a, b)) - expected).norm(), 1e-12 * (1.0 + expected.norm()));
  }
}

TEST(QMatrix, Adjoint) {
  const QMatrixd d{{kI, Quaterniond()}, {Quaterniond(), kJ}};
  EXPECT_EQ(adjoint(d), (QMatrixd{{-kI, Quaterniond()}, {Quaterniond(), -kJ}}));
  EXPECT_EQ(adjoint(QMatrixd::identity(3)), QMatrixd::identity(3));
}

TEST(QMatrix, AdjointPairing) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_matrix(rng, 4, 3);
    const auto phi = random_vector(rng, 3), psi = random_vector(rng, 4);
    const auto lhs = inner_oracle(psi, apply(a, phi));
    const auto rhs = inner_oracle(apply(adjoint(a), psi), phi);
    EXPECT_LE(norm(lhs - rhs), 1e-12 * (1.0 + norm(lhs)));
  }
}

TEST(QMatrix, Chi) {
  EXPECT_EQ(chi(QMatrixd{{Quaterniond(1.0)}}), Eigen::MatrixXcd::Identity(2, 2));
  Eigen::MatrixXcd j(2, 2);
  j << 0.0, 1.0, -1.0, 0.0;
  EXPECT_EQ(chi(QMatrixd{{kJ}}), j);
  Rng rng(4);
  const auto a = random_matrix(rng, 2, 3);
  EXPECT_EQ(chi(a), oracle::embed(a));
  EXPECT_EQ(chi_inverse(chi(a)), a);
}

TEST(QMatrix, ChiIsMultiplicativeAndRespectsAdjoint) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_matrix(rng, 3, 3), b = random_matrix(rng, 3, 3);
    const Eigen::MatrixXcd ca = chi(a), cb = chi(b);
    EXPECT_LE((chi(matmul(a, b)) - ca * cb).norm(),
              1e-12 * oracle::spectral_norm(ca) * oracle::spectral_norm(cb) * 6.0);
  }
  const auto q = random_integer_matrix(rng, 3, 4, 5);
  EXPECT_EQ(chi(adjoint(q)), Eigen::MatrixXcd(chi(q).adjoint()));
}

TEST(QMatrix, KernelBasis) {
  EXPECT_TRUE(kernel_basis(QMatrixd::identity(3)).empty());
  EXPECT_EQ(kernel_basis(QMatrixd::zero(2, 2)).size(), 2u);

  // Second column = first column times i on the right: row 1 gives 1*i = i,
  // row 2 gives j*i = -k.
  const QMatrixq a{{Quaternionq(Rational(1)), Quaternionq::i()},
                   {Quaternionq::j(), -Quaternionq::k()}};
  const auto basis = kernel_basis(a);
  ASSERT_EQ(basis.size(), 1u);
  for (const auto& x : basis) EXPECT_EQ(apply(a, x), QVectorq(2));
  EXPECT_EQ(oracle::kernel_dim(oracle::embed(matrix_cast<double>(a)), 1e-12), 1u);

  // The matrix of the spec example [[1, i], [j, k]] has full rank.
  const QMatrixd b{{Quaterniond(1.0), kI}, {kJ, kK}};
  EXPECT_EQ(kernel_basis(b).size(), oracle::kernel_dim(oracle::embed(b), 1e-12));
}

TEST(QMatrix, RankMatchesOracleOnRationalMatrices) {
  Rng rng(6);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 5);
    const auto a = random_rational_matrix(rng, n);
    const auto ad = matrix_cast<double>(a);
    const std::size_t expected = n - oracle::kernel_dim(oracle::embed(ad), 1e-9 * (1.0 + max_abs(ad)));
    EXPECT_EQ(rank(a), expected);
    EXPECT_EQ(rank(ad), expected);
    EXPECT_EQ(rank(adjoint(a)), rank(a));
    for (const auto& x : kernel_basis(a)) EXPECT_EQ(apply(a, x), QVectorq(n));
  }
  EXPECT_EQ(rank(QMatrixq::identity(4)), 4u);
}

TEST(QMatrix, RankOneOperator) {
  Rng rng(7);
  const auto psi = random_vector(rng, 3), phi = random_vector(rng, 3);
  EXPECT_EQ(rank(finite_rank_op<double>({{psi, phi}})), 1u);
  const auto x = random_vector(rng, 3);
  EXPECT_LE(max_dev(apply(finite_rank_op<double>({{psi, phi}}), x), psi * inner_oracle(phi, x)), 1e-12);

  const auto e1 = QVectord::unit(2, 0), e2 = QVectord::unit(2, 1);
  EXPECT_EQ(finite_rank_op<double>({}, 2, 2), QMatrixd::zero(2, 2));
  EXPECT_EQ(finite_rank_op<double>({{e1, e1}}),
            QMatrixd::diagonal({Quaterniond(1.0), Quaterniond()}));
  const QMatrixd swap{{Quaterniond(), Quaterniond(1.0)}, {Quaterniond(1.0), Quaterniond()}};
  EXPECT_EQ(finite_rank_op<double>({{e1, e2}, {e2, e1}}), swap);
}

TEST(QMatrix, GramSchmidt) {
  const auto e1 = QVectord::unit(2, 0), e2 = QVectord::unit(2, 1);
  const auto std_basis = gram_schmidt({e1, e2});
  EXPECT_EQ(std_basis.vectors[0], e1);
  EXPECT_EQ(std_basis.vectors[1], e2);

  const auto b = gram_schmidt({e1, e1 + e2 * kK});
  EXPECT_LE(max_dev(b.vectors[1], e2 * kK), 1e-15);

  Rng rng(8);
  std::vector<QVectord> vs;
  for (int k = 0; k < 4; ++k) vs.push_back(random_vector(rng, 4));
  const auto basis = gram_schmidt(vs);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t c = 0; c < 4; ++c)
      EXPECT_LE(norm(inner_oracle(basis.vectors[a], basis.vectors[c]) - Quaterniond(a == c ? 1.0 : 0.0)),
                1e-12);
  const auto phi = random_vector(rng, 4);
  double parseval = 0.0;
  for (const auto& c : basis.coefficients(phi)) parseval += c.norm2();
  EXPECT_NEAR(parseval, norm2(phi), 1e-12 * norm2(phi));
  EXPECT_THROW(gram_schmidt({e1, e1 * kI}), rank_deficiency_error);
}
