#include "qspectral/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qspectral {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw parse_error(where + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw parse_error(where + ": number is not finite");
  return x;
}

Quaterniond quaternion(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4)
    throw parse_error(where + ": quaternion literal must be a 4-array");
  return {number(j[0], where), number(j[1], where), number(j[2], where), number(j[3], where)};
}

QVectord vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw parse_error(where + ": expected an array of quaternions");
  QVectord v(j.size());
  for (std::size_t k = 0; k < j.size(); ++k)
    v[k] = quaternion(j[k], where + "[" + std::to_string(k) + "]");
  return v;
}

QMatrixd matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw parse_error(where + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw parse_error(where + ": rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  QMatrixd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw parse_error(where + ": rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = quaternion(j[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw parse_error(where + ": unknown key \"" + it.key() + "\"");
  }
}

DiagonalFamily family(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw parse_error(where + ": family needs a \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "constant") {
    check_keys(j, {"kind", "value"}, where);
    if (!j.contains("value")) throw parse_error(where + ": constant family needs \"value\"");
    return DiagonalFamily::constant(quaternion(j["value"], where + ".value"));
  }
  if (kind == "geometric") {
    check_keys(j, {"kind", "limit", "offset", "ratio"}, where);
    for (const char* k : {"limit", "offset", "ratio"})
      if (!j.contains(k)) throw parse_error(where + ": geometric family needs \"" + k + "\"");
    const double ratio = number(j["ratio"], where + ".ratio");
    if (!(ratio > 0.0 && ratio < 1.0)) throw parse_error(where + ": ratio must lie in (0, 1)");
    return DiagonalFamily::geometric(quaternion(j["limit"], where + ".limit"),
                                     quaternion(j["offset"], where + ".offset"), ratio);
  }
  throw parse_error(where + ": unknown family kind \"" + kind + "\"");
}

ShiftTail shift(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("weight")) throw parse_error(where + ": shift needs \"weight\"");
  check_keys(j, {"weight", "direction"}, where);
  ShiftTail t;
  t.weight = number(j["weight"], where + ".weight");
  if (!(t.weight > 0.0)) throw parse_error(where + ": weight must be positive");
  if (j.contains("direction")) {
    const auto& d = j["direction"];
    if (d == "forward") t.direction = ShiftDirection::forward;
    else if (d == "backward") t.direction = ShiftDirection::backward;
    else throw parse_error(where + ": direction must be \"forward\" or \"backward\"");
  }
  return t;
}

StructuredOperator structured(const json& j) {
  if (!j.is_object()) throw parse_error("structured: expected an object");
  check_keys(j, {"finite_block", "diagonal_families", "shift_tails", "perturbation"}, "structured");
  StructuredOperator a;
  if (j.contains("finite_block") && !j["finite_block"].is_null())
    a.finite_block = matrix(j["finite_block"], "structured.finite_block");
  auto list = [&](const char* key) -> const json& {
    static const json empty = json::array();
    if (!j.contains(key)) return empty;
    if (!j[key].is_array()) throw parse_error(std::string("structured.") + key + ": expected an array");
    return j[key];
  };
  const auto& fams = list("diagonal_families");
  for (std::size_t k = 0; k < fams.size(); ++k)
    a.diagonal_families.push_back(family(fams[k], "diagonal_families[" + std::to_string(k) + "]"));
  const auto& tails = list("shift_tails");
  for (std::size_t k = 0; k < tails.size(); ++k)
    a.shift_tails.push_back(shift(tails[k], "shift_tails[" + std::to_string(k) + "]"));
  const auto& pert = list("perturbation");
  for (std::size_t k = 0; k < pert.size(); ++k) {
    const std::string where = "perturbation[" + std::to_string(k) + "]";
    if (!pert[k].is_array() || pert[k].size() != 2)
      throw parse_error(where + ": expected a [psi, phi] pair");
    a.perturbation.emplace_back(vector(pert[k][0], where + ".psi"), vector(pert[k][1], where + ".phi"));
  }
  try {
    a.validate();
  } catch (const malformed_operator& e) {
    throw parse_error(std::string("structured: ") + e.what());
  }
  return a;
}

json to_json(const Quaterniond& q) { return json::array({q.q0, q.q1, q.q2, q.q3}); }

json to_json(const QVectord& v) {
  json out = json::array();
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(to_json(v[k]));
  return out;
}

json to_json(const QMatrixd& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(row);
  }
  return out;
}

}  // namespace

OperatorSpec parse_operator_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw parse_error("document must be a JSON object");
  check_keys(doc, {"matrix", "structured", "basis", "description"}, "document");
  const bool has_matrix = doc.contains("matrix"), has_structured = doc.contains("structured");
  if (has_matrix == has_structured)
    throw parse_error("document must contain exactly one of \"matrix\" and \"structured\"");
  OperatorSpec spec;
  if (has_matrix) {
    spec.matrix = matrix(doc["matrix"], "matrix");
    if (!spec.matrix->is_square()) throw parse_error("matrix: must be square");
  } else {
    spec.structured = structured(doc["structured"]);
  }
  if (doc.contains("basis")) {
    spec.basis = matrix(doc["basis"], "basis");
    if (!spec.basis->is_square()) throw parse_error("basis: must be square");
  }
  return spec;
}

OperatorSpec load_operator_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_operator_spec(buf.str());
}

std::string serialize(const StructuredOperator& a) {
  json s = json::object();
  if (a.finite_block) s["finite_block"] = to_json(*a.finite_block);
  json fams = json::array();
  for (const auto& f : a.diagonal_families) {
    if (f.kind == DiagonalFamily::Kind::constant)
      fams.push_back({{"kind", "constant"}, {"value", to_json(f.value)}});
    else
      fams.push_back({{"kind", "geometric"},
                      {"limit", to_json(f.value)},
                      {"offset", to_json(f.offset)},
                      {"ratio", f.ratio}});
  }
  s["diagonal_families"] = fams;
  json tails = json::array();
  for (const auto& t : a.shift_tails)
    tails.push_back({{"weight", t.weight},
                     {"direction", t.direction == ShiftDirection::forward ? "forward" : "backward"}});
  s["shift_tails"] = tails;
  json pert = json::array();
  for (const auto& [psi, phi] : a.perturbation) pert.push_back(json::array({to_json(psi), to_json(phi)}));
  s["perturbation"] = pert;
  return json{{"structured", s}}.dump(2);
}

std::string serialize(const QMatrixd& m) { return json{{"matrix", to_json(m)}}.dump(2); }

bool operator==(const DiagonalFamily& a, const DiagonalFamily& b) {
  if (a.kind != b.kind || a.value != b.value) return false;
  return a.kind == DiagonalFamily::Kind::constant || (a.offset == b.offset && a.ratio == b.ratio);
}

bool operator==(const ShiftTail& a, const ShiftTail& b) {
  return a.weight == b.weight && a.direction == b.direction;
}

bool operator==(const StructuredOperator& a, const StructuredOperator& b) {
  return a.finite_block == b.finite_block && a.diagonal_families == b.diagonal_families &&
         a.shift_tails == b.shift_tails && a.perturbation == b.perturbation;
}

}  // namespace qspectral
