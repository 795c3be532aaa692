#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qspectral/structured_operator.hpp"

namespace qspectral {

class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contents of an operator-spec JSON document: exactly one of a matrix or a
/// structured operator, plus an optional unitary basis.
struct OperatorSpec {
  std::optional<QMatrixd> matrix;
  std::optional<StructuredOperator> structured;
  std::optional<QMatrixd> basis;
};

/// Throws parse_error on malformed JSON, unknown or missing keys, literals
/// that are not 4-arrays of finite numbers, or invalid parameters.
OperatorSpec parse_operator_spec(const std::string& text);
OperatorSpec load_operator_spec(const std::string& path);

/// {"structured": {...}} in the same format; parse(serialize(a)) == a.
std::string serialize(const StructuredOperator& a);
std::string serialize(const QMatrixd& matrix);

bool operator==(const DiagonalFamily& a, const DiagonalFamily& b);
bool operator==(const ShiftTail& a, const ShiftTail& b);
bool operator==(const StructuredOperator& a, const StructuredOperator& b);

}  // namespace qspectral
