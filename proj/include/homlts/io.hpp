#pragma once

// JSON files for algebras, representations, cochains, deformations and formal
// isomorphisms. Scalars are always JSON strings in canonical form ("-3/4",
// GF(p) residues in [0, p)); indices are 0-based integers. Sparse lists omit
// zeros and are written in lexicographic index order, so serialize(parse(x))
// reproduces a canonical file byte for byte.

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "homlts/deformation.hpp"
#include "homlts/extension.hpp"

namespace homlts::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text, rejecting duplicate object keys. `what` names the source
/// in diagnostics.
inline Json parse_json(const std::string& text, const std::string& what) {
  std::vector<std::set<std::string>> keys;
  std::string duplicate;
  const Json::parser_callback_t cb = [&](int, Json::parse_event_t ev, Json& parsed) {
    switch (ev) {
      case Json::parse_event_t::object_start: keys.emplace_back(); break;
      case Json::parse_event_t::object_end: keys.pop_back(); break;
      case Json::parse_event_t::key:
        if (!keys.back().insert(parsed.get<std::string>()).second && duplicate.empty())
          duplicate = parsed.get<std::string>();
        break;
      default: break;
    }
    return true;
  };
  Json j;
  try {
    j = Json::parse(text, cb);
  } catch (const Json::parse_error& e) {
    throw parse_error(what + ": invalid JSON: " + e.what());
  }
  if (!duplicate.empty()) throw parse_error(what + ": duplicate key \"" + duplicate + "\"");
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json read_json_file(const std::string& path) { return parse_json(read_file(path), path); }

namespace detail {

inline void write_inline(const Json& j, std::string& out) {
  if (j.is_array()) {
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      write_inline(j[i], out);
    }
    out += ']';
  } else if (j.is_object()) {
    out += '{';
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ", ";
      first = false;
      out += Json(k).dump() + ": ";
      write_inline(v, out);
    }
    out += '}';
  } else {
    out += j.dump();
  }
}

// Containers go on one line when that line fits in 100 columns.
inline void write_pretty(const Json& j, std::size_t indent, std::string& out) {
  std::string flat;
  write_inline(j, flat);
  if ((!j.is_array() && !j.is_object()) || j.empty() || indent + flat.size() <= 100) {
    out += flat;
    return;
  }
  const std::string pad(indent + 2, ' ');
  if (j.is_array()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      write_pretty(j[i], indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "]";
  } else {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      out += pad + Json(k).dump() + ": ";
      write_pretty(v, indent + 2, out);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
  }
}

// A JSON value together with its path from the document root.
struct Node {
  const Json& j;
  std::string path;
  std::string source;

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(source + ": " + (path.empty() ? "document" : path) + ": " + msg);
  }

  Node operator[](const char* key) const {
    if (!j.is_object()) fail("expected an object");
    if (!j.contains(key)) fail(std::string("missing field \"") + key + "\"");
    return {j.at(key), path.empty() ? key : path + "." + key, source};
  }
  Node operator[](std::size_t i) const { return {j.at(i), path + "[" + std::to_string(i) + "]", source}; }
  bool has(const char* key) const { return j.is_object() && j.contains(key); }

  void require_object(std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail("expected an object");
    for (const auto& [k, v] : j.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || k == a;
      if (!ok) fail("unknown field \"" + k + "\"");
    }
  }

  std::size_t array_size() const {
    if (!j.is_array()) fail("expected an array");
    return j.size();
  }

  std::size_t index(std::size_t bound) const {
    if (!j.is_number_integer()) fail("expected a non-negative integer");
    const auto v = j.get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) >= bound)
      fail("index " + std::to_string(v) + " out of range [0, " + std::to_string(bound) + ")");
    return static_cast<std::size_t>(v);
  }

  std::size_t count(std::size_t min, std::size_t max) const {
    if (!j.is_number_integer()) fail("expected an integer");
    const auto v = j.get<std::int64_t>();
    if (v < static_cast<std::int64_t>(min) || static_cast<std::uint64_t>(v) > max)
      fail("value " + std::to_string(v) + " out of range [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    return static_cast<std::size_t>(v);
  }

  template <FieldScalar K>
  K scalar(const FieldSpec& field) const {
    if (!j.is_string()) fail("scalars must be JSON strings, e.g. \"1/2\"");
    try {
      return K::parse(j.get<std::string>(), field);
    } catch (const parse_error& e) {
      fail(e.what());
    }
  }

  template <FieldScalar K>
  Matrix<K> matrix(const FieldSpec& field, std::size_t rows, std::size_t cols) const {
    if (array_size() != rows) fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    Matrix<K> m(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto row = (*this)[r];
      if (row.array_size() != cols)
        row.fail("expected " + std::to_string(cols) + " entries, got " + std::to_string(row.j.size()));
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c].template scalar<K>(field);
    }
    return m;
  }
};

// Upper bound for dimensions read from files; the coefficient budget is the
// real limit.
constexpr std::size_t max_file_dim = 4096;

}  // namespace detail

/// Writes a document in canonical layout, with a trailing newline.
inline std::string dump(const Json& j) {
  std::string out;
  detail::write_pretty(j, 0, out);
  out += '\n';
  return out;
}

inline Json field_to_json(const FieldSpec& f) {
  if (f.is_rational()) return "Q";
  Json j = Json::object();
  j["GF"] = f.characteristic();
  return j;
}

inline FieldSpec field_from_json(const Json& j, const std::string& source = "input") {
  const detail::Node n{j, "field", source};
  if (j.is_string()) {
    if (j.get<std::string>() != "Q") n.fail("expected \"Q\" or {\"GF\": p}");
    return FieldSpec::rationals();
  }
  n.require_object({"GF"});
  const auto p = n["GF"];
  if (!p.j.is_number_unsigned()) p.fail("expected a prime");
  try {
    return FieldSpec::prime_field(p.j.get<std::uint64_t>());
  } catch (const precondition_error& e) {
    p.fail(e.what());
  }
}

/// The field named in an algebra document.
inline FieldSpec algebra_field(const Json& j, const std::string& source = "input") {
  const detail::Node n{j, "", source};
  return field_from_json(n["field"].j, source);
}

template <FieldScalar K>
Json matrix_to_json(const Matrix<K>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

template <FieldScalar K>
Json vector_to_json(std::span<const K> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

template <FieldScalar K>
Json algebra_to_json(const HomTripleSystem<K>& t) {
  const std::size_t d = t.dim();
  Json j;
  j["field"] = field_to_json(t.field());
  j["dim"] = d;
  j["alpha"] = matrix_to_json(t.alpha());
  Json br = Json::array();
  MultiIndex idx(3, 0);
  do {
    const auto v = t.bracket().at(idx);
    for (std::size_t l = 0; l < d; ++l) {
      if (v[l].is_zero()) continue;
      Json e;
      e["i"] = idx[0];
      e["j"] = idx[1];
      e["k"] = idx[2];
      e["l"] = l;
      e["c"] = v[l].to_string();
      br.push_back(std::move(e));
    }
  } while (d > 0 && next_index(idx, d));
  j["bracket"] = std::move(br);
  j["multiplicative"] = t.multiplicative();
  return j;
}

/// Reads an algebra document over the field K. "multiplicative" defaults to
/// true when absent.
template <FieldScalar K>
HomTripleSystem<K> algebra_from_json(const Json& j, const std::string& source = "input") {
  const detail::Node n{j, "", source};
  n.require_object({"field", "dim", "alpha", "bracket", "multiplicative"});
  const FieldSpec field = field_from_json(n["field"].j, source);
  if (!scalar_matches<K>(field)) n["field"].fail("field does not match the requested scalar type");
  const std::size_t d = n["dim"].count(1, detail::max_file_dim);
  const auto alpha = n["alpha"].template matrix<K>(field, d, d);
  MultilinearMap<K> br(field, 3, d, d);
  const auto list = n["bracket"];
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t e = 0; e < list.array_size(); ++e) {
    const auto entry = list[e];
    entry.require_object({"i", "j", "k", "l", "c"});
    const std::vector<std::size_t> key{entry["i"].index(d), entry["j"].index(d), entry["k"].index(d),
                                       entry["l"].index(d)};
    if (!seen.insert(key).second) entry.fail("duplicate entry for (i, j, k, l)");
    br.at({key[0], key[1], key[2]})[key[3]] = entry["c"].template scalar<K>(field);
  }
  bool mult = true;
  if (n.has("multiplicative")) {
    const auto m = n["multiplicative"];
    if (!m.j.is_boolean()) m.fail("expected true or false");
    mult = m.j.get<bool>();
  }
  return HomTripleSystem<K>(field, std::move(br), alpha, mult);
}

template <FieldScalar K>
Json representation_to_json(const Representation<K>& r) {
  Json j;
  j["mdim"] = r.mdim();
  j["A"] = matrix_to_json(r.twist());
  Json th = Json::array();
  for (std::size_t a = 0; a < r.dim(); ++a)
    for (std::size_t b = 0; b < r.dim(); ++b) {
      if (r.theta(a, b).is_zero()) continue;
      Json e;
      e["a"] = a;
      e["b"] = b;
      e["matrix"] = matrix_to_json(r.theta(a, b));
      th.push_back(std::move(e));
    }
  j["theta"] = std::move(th);
  return j;
}

template <FieldScalar K>
Representation<K> representation_from_json(const Json& j, const HomTripleSystem<K>& base,
                                           const std::string& source = "input") {
  const detail::Node n{j, "", source};
  n.require_object({"mdim", "A", "theta"});
  const auto& field = base.field();
  const std::size_t d = base.dim();
  const std::size_t m = n["mdim"].count(1, detail::max_file_dim);
  const auto A = n["A"].template matrix<K>(field, m, m);
  std::vector<Matrix<K>> theta(d * d, Matrix<K>(field, m, m));
  std::vector<bool> seen(d * d, false);
  const auto list = n["theta"];
  for (std::size_t e = 0; e < list.array_size(); ++e) {
    const auto entry = list[e];
    entry.require_object({"a", "b", "matrix"});
    const std::size_t a = entry["a"].index(d), b = entry["b"].index(d);
    if (seen[a * d + b]) entry.fail("duplicate block (a, b)");
    seen[a * d + b] = true;
    theta[a * d + b] = entry["matrix"].template matrix<K>(field, m, m);
  }
  return Representation<K>(base, m, std::move(theta), A);
}

template <FieldScalar K>
Json cochain_to_json(const Cochain<K>& f) {
  Json j;
  j["degree"] = f.arity();
  Json values = Json::array();
  for (std::size_t t = 0; t < f.tuple_count(); ++t) {
    const auto v = f.value(t);
    if (std::all_of(v.begin(), v.end(), [](const K& x) { return x.is_zero(); })) continue;
    Json e;
    e["idx"] = f.decode(t);
    e["v"] = vector_to_json<K>(v);
    values.push_back(std::move(e));
  }
  j["values"] = std::move(values);
  return j;
}

/// Reads a cochain T^n -> V with dim T = d and dim V = m.
template <FieldScalar K>
Cochain<K> cochain_from_json(const Json& j, const FieldSpec& field, std::size_t d, std::size_t m,
                             const std::string& source = "input", const std::string& path = "") {
  const detail::Node n{j, path, source};
  n.require_object({"degree", "values"});
  const std::size_t deg = n["degree"].count(1, 64);
  Cochain<K> f(field, deg, d, m);
  std::set<MultiIndex> seen;
  const auto list = n["values"];
  for (std::size_t e = 0; e < list.array_size(); ++e) {
    const auto entry = list[e];
    entry.require_object({"idx", "v"});
    const auto idx = entry["idx"];
    if (idx.array_size() != deg) idx.fail("expected " + std::to_string(deg) + " indices");
    MultiIndex key(deg);
    for (std::size_t s = 0; s < deg; ++s) key[s] = idx[s].index(d);
    if (!seen.insert(key).second) entry.fail("duplicate tuple");
    const auto v = entry["v"];
    if (v.array_size() != m) v.fail("expected " + std::to_string(m) + " coordinates");
    auto dst = f.value(f.tuple_offset(key));
    for (std::size_t c = 0; c < m; ++c) dst[c] = v[c].template scalar<K>(field);
  }
  return f;
}

template <FieldScalar K>
Json deformation_to_json(const TruncatedDeformation<K>& D) {
  Json j;
  j["order"] = D.order();
  Json jets = Json::array();
  for (const auto& c : D.jets()) jets.push_back(cochain_to_json(c));
  j["jets"] = std::move(jets);
  return j;
}

template <FieldScalar K>
TruncatedDeformation<K> deformation_from_json(const Json& j, const HomTripleSystem<K>& base,
                                              const std::string& source = "input") {
  const detail::Node n{j, "", source};
  n.require_object({"order", "jets"});
  const std::size_t order = n["order"].count(0, 64);
  const auto list = n["jets"];
  if (list.array_size() != order) list.fail("expected " + std::to_string(order) + " jets");
  std::vector<Cochain<K>> jets;
  for (std::size_t i = 0; i < order; ++i) {
    const auto path = "jets[" + std::to_string(i) + "]";
    auto c = cochain_from_json<K>(list[i].j, base.field(), base.dim(), base.dim(), source, path);
    if (c.arity() != 3) list[i].fail("jets must have degree 3");
    jets.push_back(std::move(c));
  }
  return TruncatedDeformation<K>(base, std::move(jets));
}

template <FieldScalar K>
Json isomorphism_to_json(const FormalIsomorphism<K>& phi) {
  Json j;
  j["order"] = phi.order();
  Json list = Json::array();
  for (const auto& m : phi.phis) list.push_back(matrix_to_json(m));
  j["phis"] = std::move(list);
  return j;
}

template <FieldScalar K>
FormalIsomorphism<K> isomorphism_from_json(const Json& j, const HomTripleSystem<K>& base,
                                           const std::string& source = "input") {
  const detail::Node n{j, "", source};
  n.require_object({"order", "phis"});
  const std::size_t order = n["order"].count(0, 64);
  const auto list = n["phis"];
  if (list.array_size() != order) list.fail("expected " + std::to_string(order) + " matrices");
  FormalIsomorphism<K> out;
  for (std::size_t i = 0; i < order; ++i)
    out.phis.push_back(list[i].template matrix<K>(base.field(), base.dim(), base.dim()));
  return out;
}

/// An extension as one document: the total algebra plus iota, pi and s.
template <FieldScalar K>
Json extension_to_json(const CentralExtension<K>& e) {
  Json j;
  j["algebra"] = algebra_to_json(e.total);
  j["iota"] = matrix_to_json(e.iota);
  j["pi"] = matrix_to_json(e.pi);
  j["section"] = matrix_to_json(e.section);
  return j;
}

}  // namespace homlts::io
