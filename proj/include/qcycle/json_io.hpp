#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "qcycle/report.hpp"
#include "qcycle/series.hpp"
#include "qcycle/tensor.hpp"

// Every document written carries "schema": 1 and a "kind"; on input both are
// optional but must match when present. Rationals are strings ("a/b" or "a");
// integer JSON numbers are accepted on input.
namespace qcycle::json_io {

using nlohmann::json;

inline constexpr int kSchema = 1;

inline json scalar_to_json(const Scalar& a) { return format_scalar(a); }

inline Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  fail("ParseError", "expected a rational string, got " + j.dump());
}

inline void require_header(const json& j, const std::string& kind) {
  if (!j.is_object()) fail("ParseError", "expected a JSON object");
  if (j.contains("schema") && j["schema"] != kSchema) fail("ParseError", "unsupported schema " + j["schema"].dump());
  if (j.contains("kind") && j["kind"] != kind) fail("ParseError", "expected kind \"" + kind + "\"");
}

inline json tensor_to_json(const CoeffTensor& t) {
  json a = json::array();
  for (int i = 0; i < t.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < t.n(); ++j) {
      json col = json::array();
      for (int k = 0; k < t.n(); ++k) col.push_back(scalar_to_json(t(i, j, k)));
      row.push_back(std::move(col));
    }
    a.push_back(std::move(row));
  }
  return a;
}

inline CoeffTensor tensor_from_json(const json& a, int n) {
  auto sized = [&](const json& x) { return x.is_array() && static_cast<int>(x.size()) == n; };
  if (!sized(a)) fail("ParseError", "tensor must be an n x n x n array");
  CoeffTensor t(n);
  for (int i = 0; i < n; ++i) {
    if (!sized(a[i])) fail("ParseError", "tensor must be an n x n x n array");
    for (int j = 0; j < n; ++j) {
      if (!sized(a[i][j])) fail("ParseError", "tensor must be an n x n x n array");
      for (int k = 0; k < n; ++k) t.at(i, j, k) = scalar_from_json(a[i][j][k]);
    }
  }
  return t;
}

// p[i][j][k] = p_{ij}^k; "d" is omitted in the involutive case.
inline json structure_to_json(const QCycleStructure& s) {
  json j{{"schema", kSchema}, {"kind", "qcycle_structure"}, {"n", s.n()}, {"p", tensor_to_json(s.p)}};
  if (!s.involutive()) j["d"] = tensor_to_json(s.d);
  return j;
}

inline QCycleStructure structure_from_json(const json& j) {
  require_header(j, "qcycle_structure");
  if (!j.contains("n") || !j["n"].is_number_integer()) fail("ParseError", "missing integer n");
  const int n = j["n"].get<int>();
  if (n < 2) fail("InvalidDimension", "n must be at least 2");
  if (!j.contains("p")) fail("ParseError", "missing p");
  CoeffTensor p = tensor_from_json(j["p"], n);
  if (!j.contains("d")) return QCycleStructure(std::move(p));
  return {std::move(p), tensor_from_json(j["d"], n)};
}

inline json series_to_json(const Series1& s) {
  json c = json::array();
  for (const auto& a : s.coeffs()) c.push_back(scalar_to_json(a));
  return {{"schema", kSchema}, {"kind", "series1"}, {"trunc_order", s.order()}, {"coeffs", c}};
}

// coeffs[u][v] is the coefficient of x^u y^v.
inline json series_to_json(const Series2& s) {
  json c = json::array();
  for (int u = 0; u < s.order(); ++u) {
    json row = json::array();
    for (int v = 0; v < s.order(); ++v) row.push_back(scalar_to_json(s(u, v)));
    c.push_back(std::move(row));
  }
  return {{"schema", kSchema}, {"kind", "series2"}, {"trunc_order", s.order()}, {"coeffs", c}};
}

inline json report_to_json(const Report& r, const std::string& what) {
  json checks = json::array();
  for (const auto& c : r.checks()) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"schema", kSchema}, {"kind", "report"}, {"what", what}, {"ok", r.ok()}, {"checks", checks}};
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("ParseError", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail("ParseError", std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail("IOError", "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace qcycle::json_io
