#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "qspectral/classify.hpp"
#include "qspectral/structured_operator.hpp"

namespace qspectral {

/// Leading section of A: every infinite component cut to its first N
/// positions (a shift becomes the N x N nilpotent weighted shift). Throws
/// std::invalid_argument when N is zero or the section misses part of the
/// perturbation support.
QMatrixd truncate(const StructuredOperator& a, std::size_t n);

enum class TrendVerdict { vanishing, bounded_away, inconclusive };

const char* to_string(TrendVerdict v);

inline constexpr double kVanishingThreshold = 1e-6;
inline constexpr double kBoundedThreshold = 1e-3;
inline constexpr double kDecayRatio = 0.5;
inline constexpr double kRatioSlack = 1.1;

/// Agreement of a trend verdict with a classification: spectrum points must
/// not look bounded away, resolvent points must not look vanishing.
enum class Agreement { agree, disagree, undecided };

const char* to_string(Agreement a);

struct TruncationRow {
  std::size_t size = 0;
  double min_singular_value = 0.0;
  std::size_t kernel_estimate = 0;
  std::size_t adjoint_kernel_estimate = 0;
};

struct TruncationReport {
  HalfPlanePoint point;
  std::vector<TruncationRow> rows;
  TrendVerdict verdict = TrendVerdict::inconclusive;
  Agreement agreement = Agreement::undecided;
};

/// Verdict from the recorded minimum singular values (ascending sizes).
/// VANISHING: the last value is below kVanishingThreshold, or every doubling
/// ratio is below kDecayRatio and no ratio exceeds the previous one by more
/// than kRatioSlack. BOUNDED-AWAY: every value exceeds kBoundedThreshold and
/// the last doubling ratio is at least kDecayRatio.
TrendVerdict trend_verdict(const std::vector<double>& values);

/// CSV rows "N,min_singular_value,ker_dim,adj_ker_dim" with a header.
void write_csv(std::ostream& os, const TruncationReport& r);
std::ostream& operator<<(std::ostream& os, const TruncationReport& r);

inline const std::vector<std::size_t>& default_truncation_sizes() {
  static const std::vector<std::size_t> sizes{16, 32, 64};
  return sizes;
}

/// Truncations of one operator at fixed sizes, split into the connected
/// blocks of their sparsity pattern so that each query only factors small
/// blocks.
class TruncationOracle {
 public:
  explicit TruncationOracle(const StructuredOperator& a,
                            std::vector<std::size_t> sizes = default_truncation_sizes());

  /// Minimum singular values and kernel estimates of chi(R_q) per size, with
  /// the trend verdict. The agreement field is left undecided.
  TruncationReport evaluate(const HalfPlanePoint& p, bool estimate_kernels = true) const;

 private:
  struct Block {
    bool real = true;
    Eigen::MatrixXd real_matrix;      // the block when every entry is real
    Eigen::MatrixXcd complex_matrix;  // chi of the block otherwise
    std::vector<bool> interior;       // per quaternionic coordinate
  };
  struct Section {
    std::size_t size = 0;
    std::vector<Block> blocks;
  };

  std::vector<Section> sections_;
};

/// Runs the truncation oracle and compares the verdict with classify(a, p).
TruncationReport cross_check(const StructuredOperator& a, const HalfPlanePoint& p,
                             const std::vector<std::size_t>& sizes = default_truncation_sizes());

/// Agreement between a verdict and a classification.
Agreement agreement(TrendVerdict v, const SpectralClassification& c);

struct ShiftKernelDims {
  std::size_t kernel = 0;          // dim ker R_q(S)
  std::size_t adjoint_kernel = 0;  // dim ker R_q(S^dagger)
  bool fredholm = true;            // false on the circle |q| = alpha
};

/// Square-summable solutions of the recurrences R_q(S)x = 0 and
/// R_q(S^dagger)x = 0 for the forward shift of weight alpha (swapped for
/// the backward shift), counted from the moduli of the characteristic roots.
ShiftKernelDims shift_kernel_dims(double alpha, const HalfPlanePoint& p,
                                  ShiftDirection direction = ShiftDirection::forward);

/// sigma_0 estimate from a report: vanishing minimum singular values with
/// stable, equal and nonzero kernel and adjoint kernel estimates.
bool estimate_sigma0(const TruncationReport& r);

}  // namespace qspectral
