#pragma once

// JSON and CSV renderings of matrices, heights, profiles and reports.
// Output is byte-stable: keys keep insertion order and every double is
// written with 17 significant digits independent of the locale.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "geoecc/capability.hpp"
#include "geoecc/codes.hpp"
#include "geoecc/height.hpp"
#include "geoecc/height_search.hpp"

namespace geoecc {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";  // no "-0"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// A finite number, or the string "inf" (JSON has no infinity literal).
inline Json height_value(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

inline Json vector_json(std::span<const double> v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

namespace detail {

inline bool is_flat(const Json& j) {
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

inline void write_json(const Json& j, std::string& out, int indent, int depth) {
  const auto pad = [&](int d) { out.append(static_cast<std::size_t>(indent * d), ' '); };
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_flat(j)) {
        out += '[';
        bool first = true;
        for (const auto& e : j) {
          if (!first) out += ", ";
          first = false;
          write_json(e, out, indent, depth + 1);
        }
        out += ']';
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        write_json(e, out, indent, depth + 1);
      }
      out += '\n';
      pad(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        write_json(it.value(), out, indent, depth + 1);
      }
      out += '\n';
      pad(depth);
      out += '}';
      return;
    }
    default: out += j.dump(); return;
  }
}

}  // namespace detail

inline std::string dump(const Json& j, int indent = 2) {
  std::string out;
  detail::write_json(j, out, indent, 0);
  out += '\n';
  return out;
}

inline Json family_json(FamilyTag family) { return std::string(family_name(family.kind)); }

inline Json to_json(const GeneratorMatrix& g) {
  Json j;
  j["k"] = g.k();
  j["n"] = g.n();
  j["family"] = family_json(g.family());
  Json cols = Json::array();
  for (const auto& c : g.columns()) cols.push_back(vector_json(c));
  j["columns"] = std::move(cols);
  return j;
}

/// Loaded matrices are always Custom: closed forms are never trusted for a
/// matrix read from disk.
inline GeneratorMatrix matrix_from_json(const Json& j) {
  require(j.is_object() && j.contains("columns") && j["columns"].is_array(),
          "matrix JSON needs a \"columns\" array");
  std::vector<Vector> cols;
  for (const auto& c : j["columns"]) {
    require(c.is_array(), "matrix column must be an array");
    Vector v;
    for (const auto& x : c) {
      require(x.is_number(), "matrix entries must be numbers");
      v.push_back(x.get<double>());
    }
    cols.push_back(std::move(v));
  }
  GeneratorMatrix g = from_columns(std::move(cols));
  if (j.contains("k")) require(j["k"].is_number_integer() && j["k"].get<std::size_t>() == g.k(), "\"k\" does not match the columns");
  if (j.contains("n")) require(j["n"].is_number_integer() && j["n"].get<std::size_t>() == g.n(), "\"n\" does not match the columns");
  return g;
}

inline Json height_json(std::size_t m, const ExtendedHeight& h) {
  Json j;
  j["m"] = m;
  j["value"] = height_value(h.value);
  if (h.witness) j["witness"] = vector_json(*h.witness);
  return j;
}

inline Json to_json(const MHeightProfile& p) {
  Json j;
  j["family"] = family_json(p.family);
  j["n"] = p.n;
  Json rows = Json::array();
  for (std::size_t m = 1; m <= p.max_m(); ++m) rows.push_back(height_json(m, p.at(m)));
  j["heights"] = std::move(rows);
  return j;
}

inline std::string profile_csv(const MHeightProfile& p) {
  std::string out = "m,value\n";
  for (std::size_t m = 1; m <= p.max_m(); ++m) {
    out += std::to_string(m);
    out += ',';
    out += format_double(p.at(m).value);
    out += '\n';
  }
  return out;
}

inline Json violations_json(const std::vector<Violation>& vs) {
  Json arr = Json::array();
  for (const auto& v : vs) {
    Json j;
    j["what"] = v.what;
    j["magnitude"] = v.magnitude;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline Json to_json(const RankReport& r) {
  Json j;
  j["point"] = vector_json(r.point);
  j["index_base"] = r.index_base;
  j["perm"] = r.perm;
  j["violations"] = violations_json(r.violations);
  return j;
}

inline Json to_json(const MonotonicityReport& r) {
  Json j;
  j["family"] = family_json(r.family);
  j["index"] = r.index;
  j["points"] = r.points;
  j["assertions"] = r.assertions;
  j["violations"] = violations_json(r.violations);
  return j;
}

inline Json capability_json(double ratio, const std::vector<CapabilityPair>& pairs) {
  Json j;
  j["ratio"] = ratio;
  Json arr = Json::array();
  for (const auto& [tau, sigma] : pairs) arr.push_back(Json::array({tau, sigma}));
  j["pairs"] = std::move(arr);
  return j;
}

inline Json error_json(ErrorKind kind, const std::string& message) {
  Json j;
  j["error"]["kind"] = std::string(to_string(kind));
  j["error"]["message"] = message;
  return j;
}

}  // namespace geoecc
