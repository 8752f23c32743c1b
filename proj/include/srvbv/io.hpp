#pragma once

#include "srvbv/curve.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace srvbv {

// File-level failures (missing/unreadable/unwritable paths). Malformed
// content is reported as std::invalid_argument like every other bad input.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Vec vec_from_json(const nlohmann::json& j, int dimension, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dimension)
    throw std::invalid_argument(std::string("curve json: ") + what + " must be an array of length 'dimension'");
  Vec v(dimension);
  for (int i = 0; i < dimension; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number())
      throw std::invalid_argument(std::string("curve json: ") + what + " entries must be numbers");
    v[i] = j[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

inline nlohmann::json vec_to_json(const Vec& v) {
  nlohmann::json j = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

}  // namespace detail

// Schema: {"dimension": d, "nodes": [{"t": .., "value": [..]} or
// {"t": .., "left": [..], "right": [..]}]}. "value" means left == right.
// Checks the schema only; curve-level invariants are the caller's problem
// (curve_from_json below enforces them).
inline SbvCurve curve_from_json_unchecked(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("curve json: root must be an object");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw std::invalid_argument("curve json: missing integer 'dimension'");
  if (!j.contains("nodes") || !j["nodes"].is_array())
    throw std::invalid_argument("curve json: missing array 'nodes'");
  SbvCurve c;
  c.dimension = j["dimension"].get<int>();
  for (const auto& nj : j["nodes"]) {
    if (!nj.is_object()) throw std::invalid_argument("curve json: nodes must be objects");
    if (!nj.contains("t") || !nj["t"].is_number())
      throw std::invalid_argument("curve json: node missing number 't'");
    Node n;
    n.t = nj["t"].get<double>();
    if (nj.contains("value")) {
      if (nj.contains("left") || nj.contains("right"))
        throw std::invalid_argument("curve json: node mixes 'value' with 'left'/'right'");
      n.left = detail::vec_from_json(nj["value"], c.dimension, "value");
      n.right = n.left;
    } else if (nj.contains("left") && nj.contains("right")) {
      n.left = detail::vec_from_json(nj["left"], c.dimension, "left");
      n.right = detail::vec_from_json(nj["right"], c.dimension, "right");
    } else {
      throw std::invalid_argument("curve json: node needs 'value' or both 'left' and 'right'");
    }
    c.nodes.push_back(std::move(n));
  }
  return c;
}

inline SbvCurve curve_from_json(const nlohmann::json& j) {
  SbvCurve c = curve_from_json_unchecked(j);
  require_valid(c);
  return c;
}

inline nlohmann::json curve_to_json(const SbvCurve& c) {
  nlohmann::json j;
  j["dimension"] = c.dimension;
  j["nodes"] = nlohmann::json::array();
  for (const Node& n : c.nodes) {
    nlohmann::json nj;
    nj["t"] = n.t;
    if (n.is_jump()) {
      nj["left"] = detail::vec_to_json(n.left);
      nj["right"] = detail::vec_to_json(n.right);
    } else {
      nj["value"] = detail::vec_to_json(n.left);
    }
    j["nodes"].push_back(std::move(nj));
  }
  return j;
}

inline nlohmann::json curve_to_json(const AcCurve& c) { return curve_to_json(as_sbv(c)); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) throw IoError("read failed: " + path);
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out.good()) throw IoError("write failed: " + path);
}

inline nlohmann::json load_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("json: parse error in ") + path + ": " + e.what());
  }
}

inline SbvCurve load_curve(const std::string& path) { return curve_from_json(load_json(path)); }

inline void save_curve(const std::string& path, const SbvCurve& c) {
  write_file(path, curve_to_json(c).dump(2) + "\n");
}

// FNV-1a, 64 bit, rendered as 16 hex digits. Stable content fingerprint for
// result files.
inline std::string digest_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  static const char* hexd = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hexd[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace srvbv
