#pragma once

// JSON form of hiproofs, version 1:
//   {"version": 1, "hiproof": node}
//   node  = {"kind": "atomic", "label": label, "goal": s, "arity": n, "vars": [s]}
//         | {"kind": "sequence" | "tensor", "items": [node]}
//         | {"kind": "box", "label": label, "inner": node}
//   label = {"kind": "rule" | "tactic" | "user" | "identity" | "duplicate"
//                   | "variable", "text": s}
// Tactic label text is the printed expression and is parsed back on input.
// Keys are written in sorted order, so output is deterministic.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>  // vendored nlohmann/json

#include "hiprove/errors.hpp"
#include "hiprove/hiproof.hpp"
#include "hiprove/script.hpp"

namespace hiprove {

inline constexpr int kHiproofJsonVersion = 1;

/// Malformed JSON text or a document that does not follow the schema.
/// `where` is a byte offset for parse errors, a JSON pointer otherwise.
class JsonError : public Error {
 public:
  JsonError(const std::string& detail, std::string where)
      : Error("json", detail), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

namespace detail {

inline nlohmann::json label_to_json(const Label& l) {
  return {{"kind", kind_name(l.kind())}, {"text", l.text()}};
}

inline nlohmann::json node_to_json(const Hiproof& h) {
  using K = Hiproof::Kind;
  switch (h.kind()) {
    case K::Atomic:
      return {{"kind", "atomic"},
              {"label", label_to_json(h.label())},
              {"goal", h.goal()},
              {"arity", h.arity()},
              {"vars", h.vars()}};
    case K::Box:
      return {{"kind", "box"}, {"label", label_to_json(h.label())}, {"inner", node_to_json(h.inner())}};
    default: {
      nlohmann::json items = nlohmann::json::array();
      for (const auto& it : h.items()) items.push_back(node_to_json(it));
      return {{"kind", h.is(K::Sequence) ? "sequence" : "tensor"}, {"items", std::move(items)}};
    }
  }
}

class JsonReader {
 public:
  Hiproof node(const nlohmann::json& j, const std::string& at) {
    require_object(j, at);
    const std::string kind = string_field(j, "kind", at);
    if (kind == "atomic") {
      Label l = label(field(j, "label", at), at + "/label");
      const std::string goal = string_field(j, "goal", at);
      const auto& ar = field(j, "arity", at);
      if (!ar.is_number_unsigned()) throw JsonError("arity must be a non-negative integer", at + "/arity");
      std::vector<std::string> vars;
      if (j.contains("vars")) {
        const auto& vs = j.at("vars");
        if (!vs.is_array()) throw JsonError("vars must be an array", at + "/vars");
        for (std::size_t i = 0; i < vs.size(); ++i) {
          if (!vs[i].is_string())
            throw JsonError("vars entries must be strings", at + "/vars/" + std::to_string(i));
          vars.push_back(vs[i].get<std::string>());
        }
      }
      return Hiproof::atomic(std::move(l), goal, ar.get<std::size_t>(), std::move(vars));
    }
    if (kind == "box") {
      Label l = label(field(j, "label", at), at + "/label");
      return Hiproof::box(std::move(l), node(field(j, "inner", at), at + "/inner"));
    }
    if (kind == "sequence" || kind == "tensor") {
      const auto& items = field(j, "items", at);
      if (!items.is_array()) throw JsonError("items must be an array", at + "/items");
      std::vector<Hiproof> hs;
      for (std::size_t i = 0; i < items.size(); ++i)
        hs.push_back(node(items[i], at + "/items/" + std::to_string(i)));
      return kind == "sequence" ? Hiproof::sequence(std::move(hs)) : Hiproof::tensor(std::move(hs));
    }
    throw JsonError("unknown node kind '" + kind + "'", at + "/kind");
  }

 private:
  static void require_object(const nlohmann::json& j, const std::string& at) {
    if (!j.is_object()) throw JsonError("expected an object", at.empty() ? "/" : at);
  }

  static const nlohmann::json& field(const nlohmann::json& j, const char* key, const std::string& at) {
    if (!j.contains(key)) throw JsonError(std::string("missing field '") + key + "'", at.empty() ? "/" : at);
    return j.at(key);
  }

  static std::string string_field(const nlohmann::json& j, const char* key, const std::string& at) {
    const auto& v = field(j, key, at);
    if (!v.is_string()) throw JsonError(std::string(key) + " must be a string", at + "/" + key);
    return v.get<std::string>();
  }

  static Label label(const nlohmann::json& j, const std::string& at) {
    require_object(j, at);
    const std::string kind = string_field(j, "kind", at);
    const std::string text = string_field(j, "text", at);
    if (kind == "rule") return RuleLabel{text};
    if (kind == "user") return UserLabel{text};
    if (kind == "identity") return IdentityLabel{};
    if (kind == "duplicate") return DuplicateLabel{};
    if (kind == "variable") return VariableLabel{text};
    if (kind == "tactic") {
      try {
        return TacticLabel{parse_tactic_expr(text)};
      } catch (const SyntaxError& e) {
        throw JsonError(std::string("tactic label does not parse: ") + e.what(), at + "/text");
      }
    }
    throw JsonError("unknown label kind '" + kind + "'", at + "/kind");
  }
};

}  // namespace detail

inline nlohmann::json to_json(const Hiproof& h) {
  return {{"version", kHiproofJsonVersion}, {"hiproof", detail::node_to_json(h)}};
}

inline std::string to_json_text(const Hiproof& h) { return to_json(h).dump(2) + "\n"; }

/// Reads a document without checking well-formedness.
inline Hiproof from_json_unchecked(const nlohmann::json& doc) {
  if (!doc.is_object()) throw JsonError("expected an object", "/");
  if (!doc.contains("version") || doc.at("version") != kHiproofJsonVersion)
    throw JsonError("unsupported or missing version (expected 1)", "/version");
  if (!doc.contains("hiproof")) throw JsonError("missing field 'hiproof'", "/");
  return detail::JsonReader().node(doc.at("hiproof"), "/hiproof");
}

/// Reads a document; throws MalformedProof if the proof is not well formed.
inline Hiproof from_json(const nlohmann::json& doc) {
  Hiproof h = from_json_unchecked(doc);
  if (auto rep = well_formed(h); !rep) throw MalformedProof(rep);
  return h;
}

/// JSON pointer, within a document written by to_json, of the node reached
/// by `path` (child indices as in for_each_node).
inline std::string json_pointer(const Hiproof& root, const std::vector<std::size_t>& path) {
  std::string out = "/hiproof";
  const Hiproof* p = &root;
  for (auto i : path) {
    if (p->is(Hiproof::Kind::Box)) {
      out += "/inner";
    } else {
      out += "/items/" + std::to_string(i);
    }
    if (i >= p->items().size()) break;
    p = &p->items()[i];
  }
  return out;
}

inline nlohmann::json parse_json_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonError(e.what(), "byte " + std::to_string(e.byte));
  }
}

inline Hiproof from_json_text(std::string_view text) { return from_json(parse_json_text(text)); }

}  // namespace hiprove
