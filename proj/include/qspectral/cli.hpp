#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qspectral/quaternion.hpp"

namespace qspectral::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kParseError = 2,
  kUnsupported = 3,
  kNumericalFailure = 4
};

inline constexpr std::size_t kDefaultGrid = 121;

struct SpectrumArgs {
  std::string file;
  std::vector<std::string> sets;   // empty: every available set
  std::optional<std::size_t> grid;  // columns of the raster; rows = (grid + 1) / 2
  std::string out;                  // file (one CSV) or directory; empty: stdout
  bool oracle = false;
};

struct ClassifyArgs {
  std::string file;
  std::string point;  // "u,s"
  bool oracle = false;
};

struct CheckArgs {
  std::string file;    // empty: corpus mode
  std::string corpus;  // "seed,count"
  std::string dump;    // file for the first counterexample spec
  bool inject_fault = false;
};

int cmd_spectrum(const SpectrumArgs& args, std::ostream& out, std::ostream& err);
int cmd_classify(const ClassifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to the subcommands.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "u,s" with s >= 0; throws parse_error otherwise.
HalfPlanePoint parse_point(const std::string& text);

}  // namespace qspectral::cli
