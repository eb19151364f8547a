#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coverlink/clasp.hpp"
#include "coverlink/errors.hpp"
#include "coverlink/group_ring.hpp"
#include "coverlink/integer.hpp"
#include "coverlink/presentation.hpp"
#include "coverlink/qm.hpp"

// JSON encodings for group-ring elements, clasp programs, twisted linking
// matrices and integer matrices. Integers are read from JSON numbers or from
// decimal strings; writers emit numbers unless asked for strings.
namespace coverlink::json_io {

using Json = nlohmann::ordered_json;

namespace detail {

inline BigInt to_bigint(const Json& v, const std::string& what) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? BigInt(v.get<std::uint64_t>()) : BigInt(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw ParseError(what + ": '" + s + "' is not a decimal integer");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  }
  throw ParseError(what + ": expected an integer");
}

inline std::int64_t to_int64(const Json& v, const std::string& what) {
  const BigInt b = to_bigint(v, what);
  if (b > std::numeric_limits<std::int64_t>::max() || b < std::numeric_limits<std::int64_t>::min())
    throw ParseError(what + ": integer out of range");
  return static_cast<std::int64_t>(b);
}

inline std::size_t to_index(const Json& v, const std::string& what) {
  const auto x = to_int64(v, what);
  if (x < 0) throw ParseError(what + ": negative index");
  return static_cast<std::size_t>(x);
}

inline const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

// Values beyond 64 bits are always written as strings.
inline Json number(const BigInt& v, bool strings) {
  if (strings || v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    return v.str();
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline Json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse(text);
}

// Group references: "trivial", "cyclic:<k>", "qm:<p>" for the two-generator
// presentation of Q_m with m = -(4p+3), or a path to a presentation file (relative paths
// resolve against base_dir).
inline GroupPtr resolve_group(const std::string& name, const std::string& base_dir = ".",
                              EnumerationOptions opts = {}) {
  auto integer_after = [&](std::size_t prefix) {
    try {
      std::size_t used = 0;
      const long v = std::stol(name.substr(prefix), &used);
      if (used != name.size() - prefix) throw std::invalid_argument(name);
      return v;
    } catch (const std::exception&) {
      throw ParseError("bad group reference '" + name + "'");
    }
  };
  if (name == "trivial") return FiniteGroup::trivial();
  if (name.rfind("cyclic:", 0) == 0) {
    const long k = integer_after(7);
    if (k < 1) throw ParseError("cyclic group order must be positive");
    return FiniteGroup::cyclic(k);
  }
  if (name.rfind("qm:", 0) == 0) {
    const long p = integer_after(3);
    if (4 * p + 3 == 0) throw ParseError("4p+3 must be nonzero");
    return FiniteGroup::from_presentation(qm::qm_presentation(qm::QmInstance::from_p(p)), opts);
  }
  std::filesystem::path path(name);
  if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
  return FiniteGroup::from_presentation(load_presentation(path.string()), opts);
}

// [[coefficient, "word"], ...]
inline GroupRingElement element_from_json(const Json& v, const GroupPtr& group) {
  if (!v.is_array()) throw ParseError("group ring element must be an array of [coefficient, word] pairs");
  GroupRingElement out(group);
  for (const auto& term : v) {
    if (!term.is_array() || term.size() != 2 || !term[1].is_string())
      throw ParseError("group ring term must be [coefficient, \"word\"]");
    out.add_term(group->element(term[1].get<std::string>()), detail::to_int64(term[0], "coefficient"));
  }
  return out;
}

inline Json element_to_json(const GroupRingElement& a, bool strings = false) {
  Json out = Json::array();
  for (const auto& [g, c] : a.terms()) out.push_back(Json::array({detail::number(c, strings), a.group()->name(g)}));
  return out;
}

struct ProgramFile {
  std::string group_name;
  GroupPtr group;
  ClaspProgram program;
};

inline ClaspOp op_from_json(const Json& v, const FiniteGroup& group) {
  if (!v.is_array() || v.empty() || !v[0].is_string()) throw ParseError("instruction must be an array");
  const auto kind = v[0].get<std::string>();
  auto word = [&](const Json& w) {
    if (!w.is_string()) throw ParseError("instruction element must be a word string");
    return group.element(w.get<std::string>());
  };
  if (kind == "clasp") {
    if (v.size() != 5) throw ParseError("expected [\"clasp\", i, j, sign, \"word\"]");
    return ClaspOp::clasp(detail::to_index(v[1], "i"), detail::to_index(v[2], "j"),
                          static_cast<int>(detail::to_int64(v[3], "sign")), word(v[4]));
  }
  if (kind == "self") {
    if (v.size() != 4) throw ParseError("expected [\"self\", i, sign, \"word\"]");
    return ClaspOp::self(detail::to_index(v[1], "i"), static_cast<int>(detail::to_int64(v[2], "sign")), word(v[3]));
  }
  throw ParseError("unknown instruction '" + kind + "'");
}

inline Json op_to_json(const ClaspOp& op, const FiniteGroup& group) {
  if (op.kind == ClaspOp::Kind::clasp) return Json::array({"clasp", op.i, op.j, op.sign, group.name(op.element)});
  return Json::array({"self", op.i, op.sign, group.name(op.element)});
}

inline std::vector<std::int64_t> framings_from_json(const Json& v) {
  if (!v.is_array()) throw ParseError("framings must be an array");
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(detail::to_int64(x, "framing"));
  return out;
}

// { "n": 2, "framings": [0, 0], "group": "qm:1",
//   "ops": [["clasp", 0, 1, 1, "e"], ["self", 0, -1, "y z"]], "mu": true }
inline ProgramFile program_from_json(const Json& v, const std::string& base_dir = ".", EnumerationOptions opts = {}) {
  ProgramFile out;
  const auto& g = detail::field(v, "group");
  if (!g.is_string()) throw ParseError("'group' must be a string");
  out.group_name = g.get<std::string>();
  out.group = resolve_group(out.group_name, base_dir, opts);
  out.program.n = detail::to_index(detail::field(v, "n"), "n");
  out.program.framings = framings_from_json(detail::field(v, "framings"));
  if (v.contains("ops")) {
    if (!v.at("ops").is_array()) throw ParseError("'ops' must be an array");
    for (const auto& op : v.at("ops")) out.program.ops.push_back(op_from_json(op, *out.group));
  }
  if (v.contains("mu")) {
    if (!v.at("mu").is_boolean()) throw ParseError("'mu' must be true or false");
    out.program.track_mu = v.at("mu").get<bool>();
  }
  return out;
}

inline Json program_to_json(const ClaspProgram& prog, const std::string& group_name, const FiniteGroup& group) {
  Json out;
  out["n"] = prog.n;
  out["framings"] = prog.framings;
  out["group"] = group_name;
  Json ops = Json::array();
  for (const auto& op : prog.ops) ops.push_back(op_to_json(op, group));
  out["ops"] = std::move(ops);
  if (prog.track_mu) out["mu"] = true;
  return out;
}

struct MatrixFile {
  std::string group_name;
  GroupPtr group;
  RingMatrix matrix;
  std::vector<std::int64_t> framings;
  std::optional<std::vector<GroupRingElement>> mu;
};

// { "group": "qm:1", "framings": [0, 0],
//   "matrix": [[[], [[1, "e"]]], [[[1, "e"]], []]], "mu": [[...], [...]] }
inline MatrixFile matrix_from_json(const Json& v, const std::string& base_dir = ".", EnumerationOptions opts = {}) {
  MatrixFile out;
  const auto& g = detail::field(v, "group");
  if (!g.is_string()) throw ParseError("'group' must be a string");
  out.group_name = g.get<std::string>();
  out.group = resolve_group(out.group_name, base_dir, opts);
  out.framings = framings_from_json(detail::field(v, "framings"));
  const auto& m = detail::field(v, "matrix");
  if (!m.is_array()) throw ParseError("'matrix' must be an array of rows");
  for (const auto& row : m) {
    if (!row.is_array()) throw ParseError("matrix row must be an array");
    std::vector<GroupRingElement> r;
    for (const auto& x : row) r.push_back(element_from_json(x, out.group));
    out.matrix.push_back(std::move(r));
  }
  if (v.contains("mu")) {
    const auto& mu = v.at("mu");
    if (!mu.is_array()) throw ParseError("'mu' must be an array of elements");
    std::vector<GroupRingElement> vals;
    for (const auto& x : mu) vals.push_back(element_from_json(x, out.group));
    out.mu = std::move(vals);
  }
  return out;
}

inline Json matrix_to_json(const TwistedLinkingMatrix& t, const std::string& group_name, bool strings = false) {
  Json out;
  out["group"] = group_name;
  Json fr = Json::array();
  for (auto n : t.framings()) fr.push_back(detail::number(n, strings));
  out["framings"] = std::move(fr);
  Json rows = Json::array();
  for (const auto& row : t.lambda()) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(element_to_json(x, strings));
    rows.push_back(std::move(r));
  }
  out["matrix"] = std::move(rows);
  if (t.mu()) {
    Json mu = Json::array();
    for (const auto& x : *t.mu()) mu.push_back(element_to_json(x, strings));
    out["mu"] = std::move(mu);
  }
  return out;
}

// Array of arrays, or an object with a "matrix" field holding one.
inline BigMatrix integer_matrix_from_json(const Json& v) {
  const Json& m = v.is_object() ? detail::field(v, "matrix") : v;
  if (!m.is_array()) throw ParseError("integer matrix must be an array of rows");
  BigMatrix out;
  for (const auto& row : m) {
    if (!row.is_array()) throw ParseError("matrix row must be an array");
    std::vector<BigInt> r;
    for (const auto& x : row) r.push_back(detail::to_bigint(x, "matrix entry"));
    out.push_back(std::move(r));
  }
  return out;
}

inline Json integer_matrix_to_json(const BigMatrix& m, bool strings = false) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(detail::number(x, strings));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace coverlink::json_io
