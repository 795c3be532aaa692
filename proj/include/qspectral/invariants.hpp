#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qspectral/corpus.hpp"
#include "qspectral/structured_operator.hpp"

namespace qspectral {

/// A failing case: the operator (as a spec document), the point if the
/// property is pointwise, and what went wrong.
struct Counterexample {
  std::string suite;
  std::string operator_spec;
  std::optional<HalfPlanePoint> point;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
};

class CheckReport {
 public:
  /// Records one case of a suite; a false outcome stores a counterexample.
  void record(const std::string& suite, bool ok, const std::string& operator_spec = {},
              std::optional<HalfPlanePoint> point = std::nullopt, const std::string& detail = {});
  void merge(const CheckReport& other);

  const std::vector<SuiteResult>& suites() const { return suites_; }
  const std::vector<Counterexample>& counterexamples() const { return counterexamples_; }
  bool ok() const;
  std::size_t failures() const;

 private:
  SuiteResult& suite(const std::string& name);

  std::vector<SuiteResult> suites_;
  std::vector<Counterexample> counterexamples_;
};

struct CheckOptions {
  /// Grid for pointwise opmodel suites, over [-3, 3] x [0, 3].
  std::size_t grid_u = 13;
  std::size_t grid_s = 7;
  /// Grid for oracle agreement.
  std::size_t oracle_grid_u = 40;
  std::size_t oracle_grid_s = 40;
  /// Random finite-rank perturbations tried per operator.
  std::size_t perturbations = 2;
  std::uint64_t seed = 42;
};

/// Opmodel and oracle suites for one structured operator.
CheckReport check_structured(const StructuredOperator& a, const CheckOptions& opt = {});

/// quat, qmat, leftmul and spec_fd suites on one matrix with random probes.
CheckReport check_matrix(const QMatrixd& m, const std::optional<QMatrixd>& basis = std::nullopt,
                         const CheckOptions& opt = {});

/// Every suite: random matrices and rationals for the finite modules, and the
/// structured corpus for opmodel and oracle.
CheckReport check_corpus(std::uint64_t seed, std::size_t count, const CheckOptions& opt = {});

/// Evenly spaced points of [-3, 3] x [0, 3], nu columns by ns rows.
std::vector<HalfPlanePoint> half_plane_grid(std::size_t nu, std::size_t ns);

/// "suite,cases,failures" CSV.
void write_summary(std::ostream& os, const CheckReport& r);
/// Spec document, point and detail of each counterexample.
void write_counterexamples(std::ostream& os, const CheckReport& r, std::size_t limit = 5);

}  // namespace qspectral
