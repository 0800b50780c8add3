#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hdalang/conclist.hpp"
#include "hdalang/error.hpp"
#include "hdalang/hda.hpp"
#include "hdalang/pomset.hpp"
#include "hdalang/presentation.hpp"
#include "hdalang/st.hpp"
#include "hdalang/st_automaton.hpp"

namespace hdalang {

using Json = nlohmann::ordered_json;

inline constexpr int kDocumentVersion = 1;

enum class DocumentKind { Pomset, Hda, StAutomaton, Presentation };

inline std::string_view to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::Pomset: return "pomset";
    case DocumentKind::Hda: return "hda";
    case DocumentKind::StAutomaton: return "st-automaton";
    case DocumentKind::Presentation: return "presentation";
  }
  return "unknown";
}

namespace detail {

[[noreturn]] inline void bad_document(const std::string& what) { throw Error(ErrorCode::InvalidDocument, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad_document(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad_document(std::string("missing field '") + key + "'");
  return *it;
}

inline const Json* optional_field(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

inline std::string str(const Json& j, const char* what) {
  if (!j.is_string()) bad_document(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline std::size_t index(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) bad_document(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) bad_document(std::string(what) + " must be an array");
  return j;
}

inline std::vector<std::string> strings(const Json& j, const char* what) {
  std::vector<std::string> out;
  for (const auto& x : array(j, what)) out.push_back(str(x, what));
  return out;
}

inline void check_version(const Json& j) {
  if (!j.is_object()) bad_document("document must be a JSON object");
  if (auto v = optional_field(j, "version"); v && (!v->is_number_integer() || v->get<int>() != kDocumentVersion))
    bad_document("unsupported document version " + v->dump());
}

inline Json header(DocumentKind k) {
  Json j;
  j["version"] = kDocumentVersion;
  j["kind"] = std::string(to_string(k));
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Conclists and letters

inline Json to_json(const Conclist& u) { return Json(u); }

inline Conclist conclist_from_json(const Json& j) { return detail::strings(j, "conclist"); }

/// Map key form of a conclist, e.g. `[a,b]`.
inline Conclist conclist_from_key(const std::string& key) {
  if (key.size() < 2 || key.front() != '[' || key.back() != ']') detail::bad_document("bad conclist key '" + key + "'");
  Conclist out;
  const std::string body = key.substr(1, key.size() - 2);
  if (body.empty()) return out;
  std::stringstream in(body);
  for (std::string label; std::getline(in, label, ',');) out.push_back(label);
  return out;
}

inline Json subset_to_json(Subset s) { return Json(positions(s)); }

inline Subset subset_from_json(const Json& j, std::size_t width) {
  Subset s = 0;
  for (const auto& x : detail::array(j, "subset")) {
    const std::size_t i = detail::index(x, "subset index");
    if (i >= width) detail::bad_document("subset index " + std::to_string(i) + " out of range");
    s |= bit(i);
  }
  return s;
}

inline Json to_json(const STLetter& l) {
  Json j;
  j["kind"] = l.kind == LetterKind::starter ? "starter" : l.kind == LetterKind::terminator ? "terminator" : "id";
  j["conclist"] = to_json(l.carrier);
  j["subset"] = subset_to_json(l.subset);
  return j;
}

inline STLetter letter_from_json(const Json& j) {
  const std::string kind = detail::str(detail::field(j, "kind"), "letter kind");
  Conclist u = conclist_from_json(detail::field(j, "conclist"));
  if (u.size() > kMaxConclistLength) detail::bad_document("conclist too long");
  Subset s = 0;
  if (auto sub = detail::optional_field(j, "subset")) s = subset_from_json(*sub, u.size());
  if (kind == "id") return STLetter::identity(std::move(u));
  if (s == 0) detail::bad_document(kind + " with an empty subset");
  if (kind == "starter") return STLetter::starter(std::move(u), s);
  if (kind == "terminator") return STLetter::terminator(std::move(u), s);
  detail::bad_document("unknown letter kind '" + kind + "'");
}

inline Json to_json(const STSequence& w) {
  Json j;
  j["start"] = to_json(w.start);
  j["letters"] = Json::array();
  for (const auto& l : w.letters) j["letters"].push_back(to_json(l));
  j["text"] = to_string(w);
  return j;
}

inline STSequence sequence_from_json(const Json& j) {
  STSequence w;
  w.start = conclist_from_json(detail::field(j, "start"));
  for (const auto& l : detail::array(detail::field(j, "letters"), "letters")) w.letters.push_back(letter_from_json(l));
  Conclist at = w.start;
  for (const auto& l : w.letters) {
    if (l.source() != at) throw Error(ErrorCode::InterfaceMismatch, to_string(l) + " does not continue " + to_string(at));
    at = l.target();
  }
  return w;
}

// ---------------------------------------------------------------------------
// Pomsets

inline Json to_json(const Pomset& p) {
  Json j = detail::header(DocumentKind::Pomset);
  std::set<Label> alphabet(p.labels().begin(), p.labels().end());
  j["alphabet"] = Json(std::vector<Label>(alphabet.begin(), alphabet.end()));
  j["events"] = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) j["events"].push_back({{"id", p.id(i)}, {"label", p.label(i)}});
  j["precedence"] = Json::array();
  j["event_order"] = Json::array();
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (p.precedes(a, b)) j["precedence"].push_back({p.id(a), p.id(b)});
      if (p.ordered(a, b)) j["event_order"].push_back({p.id(a), p.id(b)});
    }
  j["sources"] = Json::array();
  j["targets"] = Json::array();
  for (auto e : p.sources()) j["sources"].push_back(p.id(e));
  for (auto e : p.targets()) j["targets"].push_back(p.id(e));
  return j;
}

inline Pomset pomset_from_json(const Json& j) {
  detail::check_version(j);
  RawPomset raw;
  for (const auto& e : detail::array(detail::field(j, "events"), "events"))
    raw.events.emplace_back(detail::str(detail::field(e, "id"), "event id"),
                            detail::str(detail::field(e, "label"), "event label"));
  auto pairs = [](const Json& arr, const char* what) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& pr : detail::array(arr, what)) {
      if (!pr.is_array() || pr.size() != 2) detail::bad_document(std::string(what) + " entries must be pairs");
      out.emplace_back(detail::str(pr[0], what), detail::str(pr[1], what));
    }
    return out;
  };
  if (auto a = detail::optional_field(j, "precedence")) raw.precedence = pairs(*a, "precedence");
  if (auto a = detail::optional_field(j, "event_order")) raw.event_order = pairs(*a, "event_order");
  if (auto a = detail::optional_field(j, "sources")) raw.sources = detail::strings(*a, "sources");
  if (auto a = detail::optional_field(j, "targets")) raw.targets = detail::strings(*a, "targets");
  if (auto a = detail::optional_field(j, "alphabet")) {
    const auto alphabet = detail::strings(*a, "alphabet");
    for (const auto& [id, label] : raw.events)
      if (std::find(alphabet.begin(), alphabet.end(), label) == alphabet.end())
        detail::bad_document("label '" + label + "' of event '" + id + "' is not in the alphabet");
  }
  return validate_ipomset(raw);
}

// ---------------------------------------------------------------------------
// HDAs

inline Json to_json(const RawHda& r) {
  Json j = detail::header(DocumentKind::Hda);
  j["cells"] = Json::array();
  for (const auto& c : r.cells) j["cells"].push_back({{"id", c.id}, {"conclist", to_json(c.type)}});
  auto faces = [](const std::map<std::string, std::map<std::size_t, std::string>>& m) {
    Json out = Json::object();
    for (const auto& [cell, by_index] : m) {
      Json f = Json::object();
      for (const auto& [i, target] : by_index) f[std::to_string(i)] = target;
      out[cell] = f;
    }
    return out;
  };
  j["lower"] = faces(r.lower);
  j["upper"] = faces(r.upper);
  j["initial"] = Json(r.initial);
  j["accepting"] = Json(r.accepting);
  return j;
}

inline Json to_json(const Hda& h) { return to_json(h.raw()); }

inline RawHda raw_hda_from_json(const Json& j) {
  detail::check_version(j);
  RawHda r;
  for (const auto& c : detail::array(detail::field(j, "cells"), "cells"))
    r.cell(detail::str(detail::field(c, "id"), "cell id"), conclist_from_json(detail::field(c, "conclist")));
  auto faces = [](const Json* src, std::map<std::string, std::map<std::size_t, std::string>>& dst) {
    if (!src) return;
    if (!src->is_object()) detail::bad_document("faces must be an object");
    for (const auto& [cell, by_index] : src->items()) {
      if (!by_index.is_object()) detail::bad_document("faces of '" + cell + "' must be an object");
      for (const auto& [key, target] : by_index.items()) {
        std::size_t i = 0;
        try {
          std::size_t used = 0;
          i = std::stoul(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          detail::bad_document("face index '" + key + "' of '" + cell + "' is not a number");
        }
        dst[cell][i] = detail::str(target, "face target");
      }
    }
  };
  faces(detail::optional_field(j, "lower"), r.lower);
  faces(detail::optional_field(j, "upper"), r.upper);
  if (auto a = detail::optional_field(j, "initial")) r.initial = detail::strings(*a, "initial");
  if (auto a = detail::optional_field(j, "accepting")) r.accepting = detail::strings(*a, "accepting");
  return r;
}

inline Hda hda_from_json(const Json& j) { return validate_hda(raw_hda_from_json(j)); }

// ---------------------------------------------------------------------------
// ST-automata

inline Json to_json(const StAutomaton& a) {
  Json j = detail::header(DocumentKind::StAutomaton);
  j["states"] = Json::array();
  j["initial"] = Json::array();
  j["final"] = Json::array();
  for (std::size_t q = 0; q < a.size(); ++q) {
    j["states"].push_back({{"id", a.states[q].id}, {"conclist", to_json(a.states[q].label)}});
    if (a.initial[q]) j["initial"].push_back(a.states[q].id);
    if (a.final[q]) j["final"].push_back(a.states[q].id);
  }
  j["transitions"] = Json::array();
  for (const auto& t : a.transitions)
    j["transitions"].push_back({{"from", a.states[t.from].id}, {"letter", to_json(t.letter)}, {"to", a.states[t.to].id}});
  return j;
}

inline StAutomaton st_automaton_from_json(const Json& j) {
  detail::check_version(j);
  StAutomaton a;
  for (const auto& s : detail::array(detail::field(j, "states"), "states"))
    a.add_state(detail::str(detail::field(s, "id"), "state id"), conclist_from_json(detail::field(s, "conclist")));
  auto state = [&](const Json& x) {
    const std::string id = detail::str(x, "state reference");
    auto q = a.find(id);
    if (!q) detail::bad_document("unknown state '" + id + "'");
    return *q;
  };
  if (auto arr = detail::optional_field(j, "initial"))
    for (const auto& x : detail::array(*arr, "initial")) a.initial[state(x)] = true;
  if (auto arr = detail::optional_field(j, "final"))
    for (const auto& x : detail::array(*arr, "final")) a.final[state(x)] = true;
  if (auto arr = detail::optional_field(j, "transitions"))
    for (const auto& t : detail::array(*arr, "transitions"))
      a.transitions.push_back(
          {state(detail::field(t, "from")), letter_from_json(detail::field(t, "letter")), state(detail::field(t, "to"))});
  check_st_automaton(a);
  return a;
}

// ---------------------------------------------------------------------------
// Presentations

/// Targets equal to the dead element are written as null.
inline Json to_json(const Presentation& p) {
  Json j = detail::header(DocumentKind::Presentation);
  auto ref = [&](std::size_t m) { return m == kDead ? Json(nullptr) : Json(p.elements[m].id); };
  j["elements"] = Json::array();
  for (const auto& e : p.elements) j["elements"].push_back({{"id", e.id}, {"src", to_json(e.src)}, {"tgt", to_json(e.tgt)}});
  j["actions"] = Json::array();
  for (const auto& [key, to] : p.actions)
    j["actions"].push_back({{"element", ref(key.first)}, {"letter", to_json(key.second)}, {"to", ref(to)}});
  j["initials"] = Json::object();
  for (const auto& [u, m] : p.initials) j["initials"][to_string(u)] = ref(m);
  j["accepting"] = Json::array();
  for (auto m : p.accepting) j["accepting"].push_back(ref(m));
  if (p.lower) {
    j["lower"] = Json::array();
    for (const auto& [key, to] : *p.lower)
      j["lower"].push_back({{"element", ref(key.first)}, {"subset", subset_to_json(key.second)}, {"to", ref(to)}});
  }
  j["implicit_dead"] = p.implicit_dead;
  return j;
}

inline Presentation presentation_from_json(const Json& j) {
  detail::check_version(j);
  Presentation p;
  for (const auto& e : detail::array(detail::field(j, "elements"), "elements")) {
    const std::string id = detail::str(detail::field(e, "id"), "element id");
    if (p.find(id)) detail::bad_document("element id '" + id + "' repeated");
    p.add(id, conclist_from_json(detail::field(e, "src")), conclist_from_json(detail::field(e, "tgt")));
  }
  auto ref = [&](const Json& x) -> std::size_t {
    if (x.is_null()) return kDead;
    return p.at(detail::str(x, "element reference"));
  };
  auto live = [&](const Json& x) {
    const std::size_t m = ref(x);
    if (m == kDead) detail::bad_document("the dead element cannot be used here");
    return m;
  };
  if (auto arr = detail::optional_field(j, "actions"))
    for (const auto& a : detail::array(*arr, "actions")) {
      const std::size_t from = live(detail::field(a, "element"));
      const STLetter l = letter_from_json(detail::field(a, "letter"));
      if (!p.actions.emplace(std::pair{from, l}, ref(detail::field(a, "to"))).second)
        detail::bad_document("action of " + to_string(l) + " on '" + p.elements[from].id + "' given twice");
    }
  if (auto obj = detail::optional_field(j, "initials")) {
    if (!obj->is_object()) detail::bad_document("initials must be an object");
    for (const auto& [key, m] : obj->items()) p.initials[conclist_from_key(key)] = ref(m);
  }
  if (auto arr = detail::optional_field(j, "accepting"))
    for (const auto& x : detail::array(*arr, "accepting")) p.accepting.insert(live(x));
  if (auto arr = detail::optional_field(j, "lower")) {
    p.lower.emplace();
    for (const auto& l : detail::array(*arr, "lower")) {
      const std::size_t m = live(detail::field(l, "element"));
      const Subset s = subset_from_json(detail::field(l, "subset"), p.elements[m].tgt.size());
      (*p.lower)[{m, s}] = ref(detail::field(l, "to"));
    }
  }
  if (auto b = detail::optional_field(j, "implicit_dead")) {
    if (!b->is_boolean()) detail::bad_document("implicit_dead must be a boolean");
    p.implicit_dead = b->get<bool>();
  }
  return p;
}

// ---------------------------------------------------------------------------
// Documents

/// The "kind" field when present, otherwise the distinguishing top-level key.
inline DocumentKind document_kind(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::UnknownDocumentKind, "document is not a JSON object");
  if (auto k = detail::optional_field(j, "kind")) {
    const std::string s = k->is_string() ? k->get<std::string>() : k->dump();
    for (auto kind : {DocumentKind::Pomset, DocumentKind::Hda, DocumentKind::StAutomaton, DocumentKind::Presentation})
      if (s == to_string(kind)) return kind;
    throw Error(ErrorCode::UnknownDocumentKind, "unknown document kind '" + s + "'");
  }
  if (j.contains("events")) return DocumentKind::Pomset;
  if (j.contains("cells")) return DocumentKind::Hda;
  if (j.contains("states")) return DocumentKind::StAutomaton;
  if (j.contains("elements")) return DocumentKind::Presentation;
  throw Error(ErrorCode::UnknownDocumentKind, "cannot tell what the document describes");
}

inline Json parse_json(const std::string& text, const std::string& origin = "input") {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidDocument, origin + ": " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidDocument, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

}  // namespace hdalang
