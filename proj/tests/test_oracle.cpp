#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qspectral/oracle.hpp"

using namespace qspectral;

namespace {

StructuredOperator shift(double weight = 1.0) {
  StructuredOperator a;
  a.shift_tails.push_back({weight, ShiftDirection::forward});
  return a;
}

StructuredOperator family(const DiagonalFamily& f) {
  StructuredOperator a;
  a.diagonal_families.push_back(f);
  return a;
}

}  // namespace

TEST(Truncate, Examples) {
  EXPECT_EQ(truncate(family(DiagonalFamily::constant(Quaterniond(1.0))), 3), QMatrixd::identity(3));
  QMatrixd sub(3, 3);
  sub(1, 0) = sub(2, 1) = Quaterniond(1.0);
  EXPECT_EQ(truncate(shift(), 3), sub);
  EXPECT_EQ(truncate(family(DiagonalFamily::geometric(Quaterniond(), Quaterniond(1.0), 0.5)), 3),
            QMatrixd::diagonal({Quaterniond(0.5), Quaterniond(0.25), Quaterniond(0.125)}));
  EXPECT_THROW(truncate(shift(), 0), std::invalid_argument);
  const auto k = perturb(shift(), {{QVectord::unit(5, 4), QVectord::unit(5, 0)}});
  EXPECT_THROW(truncate(k, 3), std::invalid_argument);
  EXPECT_EQ(truncate(k, 5)(4, 0), Quaterniond(1.0));
}

TEST(Truncate, InterleavesComponents) {
  StructuredOperator a = shift(2.0);
  a.diagonal_families.push_back(DiagonalFamily::constant(Quaterniond(7.0)));
  a.finite_block = QMatrixd{{Quaterniond(3.0)}};
  const auto t = truncate(a, 2);
  ASSERT_EQ(t.rows(), 5u);
  EXPECT_EQ(t(0, 0), Quaterniond(3.0));
  EXPECT_EQ(t(1, 1), Quaterniond(7.0));  // family, position 0
  EXPECT_EQ(t(3, 3), Quaterniond(7.0));  // family, position 1
  EXPECT_EQ(t(4, 2), Quaterniond(2.0));  // shift, position 0 -> 1
}

TEST(TrendVerdict, Rules) {
  EXPECT_EQ(trend_verdict({1e-3, 1e-5, 1e-7}), TrendVerdict::vanishing);
  EXPECT_EQ(trend_verdict({1.2e-2, 3.2e-3, 8.3e-4}), TrendVerdict::vanishing);
  EXPECT_EQ(trend_verdict({1.0, 1.0, 1.0}), TrendVerdict::bounded_away);
  EXPECT_EQ(trend_verdict({0.074, 0.027, 0.0126}), TrendVerdict::inconclusive);
  EXPECT_EQ(trend_verdict({0.5, 4e-4, 3e-4}), TrendVerdict::inconclusive);
  EXPECT_EQ(trend_verdict({}), TrendVerdict::inconclusive);
}

TEST(CrossCheck, Examples) {
  const auto out = cross_check(shift(), {2.0, 0.0});
  EXPECT_EQ(out.verdict, TrendVerdict::bounded_away);
  EXPECT_EQ(out.agreement, Agreement::agree);
  const auto edge = cross_check(shift(), {1.0, 0.0});
  EXPECT_EQ(edge.verdict, TrendVerdict::vanishing);
  EXPECT_EQ(edge.agreement, Agreement::agree);
  const auto id = cross_check(family(DiagonalFamily::constant(Quaterniond(1.0))), {1.0, 0.0});
  EXPECT_EQ(id.verdict, TrendVerdict::vanishing);
  for (const auto& row : id.rows) EXPECT_EQ(row.min_singular_value, 0.0);
  ASSERT_EQ(out.rows.size(), 3u);
  EXPECT_EQ(out.rows[0].size, 16u);
  EXPECT_EQ(out.rows[2].size, 64u);
}

TEST(CrossCheck, MinSingularValuesMatchDirectComputation) {
  StructuredOperator a = shift(1.5);
  a.diagonal_families.push_back(DiagonalFamily::geometric(Quaterniond(0.5), Quaterniond(0, 1, 1, 0), 0.5));
  const HalfPlanePoint p{0.3, 0.8};
  const auto r = TruncationOracle(a, {8, 16}).evaluate(p);
  for (const auto& row : r.rows) {
    const Eigen::MatrixXcd c = oracle::embed(truncate(a, row.size));
    const auto rq = oracle::pseudo_resolvent(c, p.u, p.s);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(rq).singularValues();
    EXPECT_NEAR(row.min_singular_value, sv(sv.size() - 1), 1e-10);
  }
}

TEST(ShiftKernelDims, Examples) {
  const auto inside = shift_kernel_dims(1.0, {0.5, 0.0});
  EXPECT_EQ(inside.kernel, 0u);
  EXPECT_EQ(inside.adjoint_kernel, 2u);
  EXPECT_TRUE(inside.fredholm);
  const auto imag = shift_kernel_dims(1.0, {0.0, 0.5});
  EXPECT_EQ(imag.kernel, 0u);
  EXPECT_EQ(imag.adjoint_kernel, 2u);
  const auto outside = shift_kernel_dims(1.0, {2.0, 0.0});
  EXPECT_EQ(outside.kernel, 0u);
  EXPECT_EQ(outside.adjoint_kernel, 0u);
  EXPECT_FALSE(shift_kernel_dims(1.0, {0.6, 0.8}).fredholm);
  const auto back = shift_kernel_dims(1.0, {0.5, 0.0}, ShiftDirection::backward);
  EXPECT_EQ(back.kernel, 2u);
  EXPECT_EQ(back.adjoint_kernel, 0u);
}

TEST(ShiftKernelDims, ScalingCovariance) {
  for (double alpha : {0.5, 1.5, 2.5})
    for (double u = -3.0; u <= 3.0; u += 0.5)
      for (double s = 0.0; s <= 3.0; s += 0.5) {
        const auto a = shift_kernel_dims(alpha, {u, s});
        const auto b = shift_kernel_dims(1.0, {u / alpha, s / alpha});
        EXPECT_EQ(a.kernel, b.kernel);
        EXPECT_EQ(a.adjoint_kernel, b.adjoint_kernel);
        EXPECT_EQ(a.fredholm, b.fredholm);
      }
}

TEST(ShiftKernelDims, TruncatedAdjointHasTwoVanishingSingularValues) {
  const HalfPlanePoint p{0.3, 0.2};
  for (std::size_t n : {32, 64}) {
    const Eigen::MatrixXcd s = oracle::embed(truncate(shift(), n));
    const auto rq = oracle::pseudo_resolvent(Eigen::MatrixXcd(s.adjoint()), p.u, p.s);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(rq).singularValues();
    // chi doubles every quaternionic dimension.
    std::size_t small = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) small += sv(k) < 1e-8;
    EXPECT_EQ(small, 4u);
  }
  const auto r = TruncationOracle(shift(), {64}).evaluate(p);
  EXPECT_EQ(r.rows[0].kernel_estimate, 0u);
  EXPECT_EQ(r.rows[0].adjoint_kernel_estimate, 2u);
}

TEST(EstimateSigma0, ProjectorWitness) {
  const auto id = family(DiagonalFamily::constant(Quaterniond(1.0)));
  const auto k = perturb(id, {{QVectord{Quaterniond(-1.0)}, QVectord{Quaterniond(1.0)}}});
  const TruncationOracle o(k);
  EXPECT_TRUE(estimate_sigma0(o.evaluate({0.0, 0.0})));
  EXPECT_FALSE(estimate_sigma0(o.evaluate({1.0, 0.0})));
  EXPECT_FALSE(estimate_sigma0(TruncationOracle(id).evaluate({0.0, 0.0})));
}

TEST(Report, Csv) {
  TruncationReport r;
  r.rows.push_back({16, 0.5, 0, 2});
  std::ostringstream os;
  write_csv(os, r);
  EXPECT_EQ(os.str(), "N,min_singular_value,ker_dim,adj_ker_dim\n16,0.5,0,2\n");
}
