#pragma once

#include "lira/constructions.hpp"
#include "lira/lie_rinehart.hpp"
#include "lira/lifting.hpp"
#include "lira/nabtensor.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

namespace lira::io {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -------- scalars --------

inline Rational scalar_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto r = parse_rational(j.get<std::string>());
    if (!r) throw ParseError(where + ": malformed scalar '" + j.get<std::string>() + "'");
    return *r;
  }
  throw ParseError(where + ": scalar must be an integer or a \"p/q\" string");
}

inline json scalar_to_json(const Rational& x) {
  if (denominator(x) == 1 && numerator(x) >= -((boost::multiprecision::mpz_int(1) << 53)) &&
      numerator(x) <= (boost::multiprecision::mpz_int(1) << 53))
    return json(numerator(x).convert_to<std::int64_t>());
  return json(format_rational(x));
}

// -------- vectors / matrices / tensors --------

inline Vec vec_from_json(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim)
    throw ParseError(where + ": expected an array of length " + std::to_string(dim));
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = scalar_from_json(j[i], where);
  return v;
}

inline json vec_to_json(const Vec& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(scalar_to_json(x));
  return j;
}

inline Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                               const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    m.set_row(i, vec_from_json(j[i], cols, where + " row " + std::to_string(i)));
  return m;
}

inline json matrix_to_json(const Matrix& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(vec_to_json(m.row(i)));
  return j;
}

inline Tensor3 tensor_from_json(const json& j, std::size_t d0, std::size_t d1, std::size_t d2,
                                const std::string& where) {
  if (!j.is_array() || j.size() != d0)
    throw ParseError(where + ": expected " + std::to_string(d0) + " slices");
  Tensor3 t(d0, d1, d2);
  for (std::size_t i = 0; i < d0; ++i) {
    if (!j[i].is_array() || j[i].size() != d1)
      throw ParseError(where + ": slice " + std::to_string(i) + " must have " +
                       std::to_string(d1) + " rows");
    for (std::size_t k = 0; k < d1; ++k)
      t.set_slice(i, k, vec_from_json(j[i][k], d2, where));
  }
  return t;
}

inline json tensor_to_json(const Tensor3& t) {
  json j = json::array();
  for (std::size_t i = 0; i < t.d0; ++i) {
    json s = json::array();
    for (std::size_t k = 0; k < t.d1; ++k) s.push_back(vec_to_json(t.slice(i, k)));
    j.push_back(std::move(s));
  }
  return j;
}

// -------- document helpers --------

inline json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

inline std::size_t dim_from_json(const json& j, const std::string& where) {
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<std::int64_t>() < 0)
    throw ParseError(where + ": missing or invalid \"dim\"");
  return j["dim"].get<std::size_t>();
}

// -------- algebras --------

inline CommAlgebra comm_algebra_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("base: expected an object");
  CommAlgebra a;
  a.dim = dim_from_json(j, "base");
  if (!j.contains("unit") || !j.contains("mult"))
    throw ParseError("base: needs \"unit\" and \"mult\"");
  a.unit = vec_from_json(j["unit"], a.dim, "base.unit");
  a.mult = tensor_from_json(j["mult"], a.dim, a.dim, a.dim, "base.mult");
  return a;
}

inline LieRinehartAlgebra algebra_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("base") || !doc.contains("algebra"))
    throw ParseError("algebra file: needs \"base\" and \"algebra\" sections");
  LieRinehartAlgebra l;
  l.base = comm_algebra_from_json(doc["base"]);
  const json& alg = doc["algebra"];
  l.dim = dim_from_json(alg, "algebra");
  if (!alg.contains("a_action") || !alg.contains("bracket") || !alg.contains("anchor"))
    throw ParseError("algebra: needs \"a_action\", \"bracket\" and \"anchor\"");
  l.a_action = tensor_from_json(alg["a_action"], l.base.dim, l.dim, l.dim, "algebra.a_action");
  l.bracket = tensor_from_json(alg["bracket"], l.dim, l.dim, l.dim, "algebra.bracket");
  if (!alg["anchor"].is_array() || alg["anchor"].size() != l.dim)
    throw ParseError("algebra.anchor: expected one matrix per basis element");
  for (std::size_t i = 0; i < l.dim; ++i)
    l.anchor.push_back(
        matrix_from_json(alg["anchor"][i], l.base.dim, l.base.dim, "algebra.anchor"));
  return l;
}

/// Parses and validates; axiom violations are reported in the error message.
inline LieRinehartAlgebra parse_algebra(const std::string& path) {
  const json doc = load_document(path);
  LieRinehartAlgebra l = algebra_from_json(doc);
  ValidationReport rep = validate_comm_algebra(l.base);
  rep.merge(validate_lr(l));
  if (!rep.ok()) throw ParseError(path + ": axiom violations: " + rep.summary());
  return l;
}

inline json algebra_to_json(const LieRinehartAlgebra& l) {
  json base;
  base["dim"] = l.base.dim;
  base["unit"] = vec_to_json(l.base.unit);
  base["mult"] = tensor_to_json(l.base.mult);
  json alg;
  alg["dim"] = l.dim;
  alg["a_action"] = tensor_to_json(l.a_action);
  alg["bracket"] = tensor_to_json(l.bracket);
  json anchors = json::array();
  for (const auto& m : l.anchor) anchors.push_back(matrix_to_json(m));
  alg["anchor"] = anchors;
  json doc;
  doc["base"] = base;
  doc["algebra"] = alg;
  return doc;
}

/// "builtin:<name>" or a path, resolved relative to the referencing file.
inline LieRinehartAlgebra resolve_algebra_ref(const std::string& ref,
                                              const std::string& referencing_file) {
  if (ref.rfind("builtin:", 0) == 0) return builtin(ref.substr(8));
  std::filesystem::path p(ref);
  if (p.is_relative())
    p = std::filesystem::path(referencing_file).parent_path() / p;
  return parse_algebra(p.string());
}

// -------- modules --------

struct ParsedModule {
  std::variant<LeftLRModule, RightLRModule> value;

  bool is_left() const { return std::holds_alternative<LeftLRModule>(value); }
};

inline ParsedModule parse_module(const std::string& path, const LieRinehartAlgebra& l) {
  const json doc = load_document(path);
  if (!doc.is_object() || !doc.contains("module"))
    throw ParseError(path + ": needs a \"module\" section");
  const json& mj = doc["module"];
  const std::string kind = mj.value("kind", "left");
  const std::size_t dim = dim_from_json(mj, "module");
  if (!mj.contains("a_action") || !mj.contains("action"))
    throw ParseError(path + ": module needs \"a_action\" and \"action\"");
  const Tensor3 a_action =
      tensor_from_json(mj["a_action"], l.base.dim, dim, dim, "module.a_action");
  ParsedModule out;
  if (kind == "left") {
    LeftLRModule m;
    m.dim = dim;
    m.a_action = a_action;
    m.l_action = tensor_from_json(mj["action"], l.dim, dim, dim, "module.action");
    const ValidationReport rep = validate_left_module(l, m);
    if (!rep.ok()) throw ParseError(path + ": axiom violations: " + rep.summary());
    out.value = std::move(m);
  } else if (kind == "right") {
    RightLRModule m;
    m.dim = dim;
    m.a_action = a_action;
    m.r_action = tensor_from_json(mj["action"], dim, l.dim, dim, "module.action");
    const ValidationReport rep = validate_right_module(l, m);
    if (!rep.ok()) throw ParseError(path + ": axiom violations: " + rep.summary());
    out.value = std::move(m);
  } else {
    throw ParseError(path + ": module kind must be \"left\" or \"right\"");
  }
  return out;
}

inline json left_module_to_json(const LeftLRModule& m) {
  json mj;
  mj["kind"] = "left";
  mj["dim"] = m.dim;
  mj["a_action"] = tensor_to_json(m.a_action);
  mj["action"] = tensor_to_json(m.l_action);
  json doc;
  doc["module"] = mj;
  return doc;
}

inline json right_module_to_json(const RightLRModule& m) {
  json mj;
  mj["kind"] = "right";
  mj["dim"] = m.dim;
  mj["a_action"] = tensor_to_json(m.a_action);
  mj["action"] = tensor_to_json(m.r_action);
  json doc;
  doc["module"] = mj;
  return doc;
}

// -------- morphisms --------

/// {"morphism": {"source": <ref>, "target": <ref>, "matrix": [[...]]}}
inline LRMorphism parse_morphism(const std::string& path) {
  const json doc = load_document(path);
  if (!doc.is_object() || !doc.contains("morphism"))
    throw ParseError(path + ": needs a \"morphism\" section");
  const json& mj = doc["morphism"];
  if (!mj.contains("source") || !mj.contains("target") || !mj.contains("matrix"))
    throw ParseError(path + ": morphism needs \"source\", \"target\" and \"matrix\"");
  LRMorphism f;
  f.source = resolve_algebra_ref(mj["source"].get<std::string>(), path);
  f.target = resolve_algebra_ref(mj["target"].get<std::string>(), path);
  f.matrix = matrix_from_json(mj["matrix"], f.target.dim, f.source.dim, "morphism.matrix");
  const ValidationReport rep = validate_morphism(f);
  if (!rep.ok()) throw ParseError(path + ": not a morphism: " + rep.summary());
  return f;
}

inline json morphism_to_json(const std::string& source_ref, const std::string& target_ref,
                             const Matrix& m) {
  json mj;
  mj["source"] = source_ref;
  mj["target"] = target_ref;
  mj["matrix"] = matrix_to_json(m);
  json doc;
  doc["morphism"] = mj;
  return doc;
}

// -------- actions and derivations --------

inline ActionPair parse_actions(const std::string& path, const LieRinehartAlgebra& l,
                                const LieRinehartAlgebra& m) {
  const json doc = load_document(path);
  if (!doc.is_object() || !doc.contains("actions"))
    throw ParseError(path + ": needs an \"actions\" section");
  const json& aj = doc["actions"];
  if (!aj.contains("l_on_m") || !aj.contains("m_on_l"))
    throw ParseError(path + ": actions need \"l_on_m\" and \"m_on_l\"");
  ActionPair pair;
  pair.l_on_m = tensor_from_json(aj["l_on_m"], l.dim, m.dim, m.dim, "actions.l_on_m");
  pair.m_on_l = tensor_from_json(aj["m_on_l"], m.dim, l.dim, l.dim, "actions.m_on_l");
  return pair;
}

inline json actions_to_json(const ActionPair& pair) {
  json aj;
  aj["l_on_m"] = tensor_to_json(pair.l_on_m);
  aj["m_on_l"] = tensor_to_json(pair.m_on_l);
  json doc;
  doc["actions"] = aj;
  return doc;
}

inline DerivationPair parse_derivation(const std::string& path, const LieRinehartAlgebra& l) {
  const json doc = load_document(path);
  if (!doc.is_object() || !doc.contains("derivation"))
    throw ParseError(path + ": needs a \"derivation\" section");
  const json& dj = doc["derivation"];
  if (!dj.contains("delta") || !dj.contains("delta0"))
    throw ParseError(path + ": derivation needs \"delta\" and \"delta0\"");
  DerivationPair d;
  d.delta = matrix_from_json(dj["delta"], l.dim, l.dim, "derivation.delta");
  d.delta0 = matrix_from_json(dj["delta0"], l.base.dim, l.base.dim, "derivation.delta0");
  const ValidationReport rep = validate_derivation_pair(l, d);
  if (!rep.ok()) throw ParseError(path + ": not a derivation: " + rep.summary());
  return d;
}

inline json derivation_to_json(const DerivationPair& d) {
  json dj;
  dj["delta"] = matrix_to_json(d.delta);
  dj["delta0"] = matrix_to_json(d.delta0);
  json doc;
  doc["derivation"] = dj;
  return doc;
}

inline void write_document(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << doc.dump(1) << "\n";
}

}  // namespace lira::io
