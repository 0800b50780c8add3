#pragma once

#include <numeric>
#include <string>

#include "hdalang/hda.hpp"
#include "hdalang/io.hpp"
#include "hdalang/pomset.hpp"
#include "hdalang/presentation.hpp"
#include "hdalang/st.hpp"
#include "hdalang/st_automaton.hpp"

namespace hdalang {

namespace detail {

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Events in the order they appear along the sparse decomposition, so that
/// isomorphic pomsets print identically. Solid arrows cover precedence,
/// dotted ones the event order; a bullet before (after) the label marks a
/// source (target) event.
inline std::string export_dot(const Pomset& p) {
  const auto rank = decompose(p).event_rank;
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
  std::string out = "digraph pomset {\n  rankdir=LR;\n  node [shape=plaintext];\n";
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t e = order[k];
    std::string label = (p.is_source(e) ? "•" : "") + p.label(e) + (p.is_target(e) ? "•" : "");
    out += "  n" + std::to_string(rank[e]) + " [label=" + detail::quoted(label) + "];\n";
  }
  auto covers = [&](std::size_t a, std::size_t b) {
    if (!p.precedes(a, b)) return false;
    for (std::size_t c = 0; c < p.size(); ++c)
      if (p.precedes(a, c) && p.precedes(c, b)) return false;
    return true;
  };
  for (auto a : order)
    for (auto b : order)
      if (covers(a, b)) out += "  n" + std::to_string(rank[a]) + " -> n" + std::to_string(rank[b]) + ";\n";
  for (auto a : order)
    for (auto b : order)
      if (p.ordered(a, b))
        out += "  n" + std::to_string(rank[a]) + " -> n" + std::to_string(rank[b]) + " [style=dotted];\n";
  return out + "}\n";
}

/// Vertices are points (double circle when accepting, an entry arrow when
/// initial), edges are labelled arrows from lower to upper face, and higher
/// cells are boxes tied to their faces by dashed lines.
inline std::string export_dot(const Hda& h) {
  std::string out = "digraph hda {\n  rankdir=LR;\n";
  auto node = [&](std::size_t x) { return detail::quoted(h.id(x)); };
  for (std::size_t x = 0; x < h.size(); ++x) {
    if (h.dim(x) == 1) continue;
    std::string attrs;
    if (h.dim(x) == 0)
      attrs = std::string("shape=") + (h.is_accepting(x) ? "doublecircle" : "circle") + ", label=" + node(x);
    else
      attrs = std::string("shape=box, style=filled, fillcolor=lightgray") + (h.is_accepting(x) ? ", peripheries=2" : "") +
              ", label=" + detail::quoted(h.id(x) + " " + to_string(h.type(x)));
    out += "  " + node(x) + " [" + attrs + "];\n";
    if (h.is_initial(x)) {
      out += "  " + detail::quoted("init:" + h.id(x)) + " [shape=point];\n";
      out += "  " + detail::quoted("init:" + h.id(x)) + " -> " + node(x) + ";\n";
    }
  }
  for (std::size_t x = 0; x < h.size(); ++x) {
    if (h.dim(x) == 1) {
      std::string attrs = "label=" + detail::quoted(h.id(x) + ":" + h.type(x)[0]);
      if (h.is_initial(x)) attrs += ", color=blue";
      if (h.is_accepting(x)) attrs += ", penwidth=2";
      out += "  " + node(h.face(x, false, 0)) + " -> " + node(h.face(x, true, 0)) + " [" + attrs + "];\n";
    } else if (h.dim(x) >= 2) {
      for (std::size_t i = 0; i < h.dim(x); ++i)
        for (bool up : {false, true}) {
          const std::size_t f = h.face(x, up, i);
          if (h.dim(f) == 1) continue;
          out += "  " + node(x) + " -> " + node(f) + " [style=dashed, arrowhead=none];\n";
        }
    }
  }
  return out + "}\n";
}

inline std::string export_dot(const StAutomaton& a) {
  std::string out = "digraph st_automaton {\n  rankdir=LR;\n";
  auto node = [&](std::size_t q) { return detail::quoted(a.states[q].id); };
  for (std::size_t q = 0; q < a.size(); ++q) {
    out += "  " + node(q) + " [shape=" + (a.final[q] ? "doublecircle" : "circle") + ", label=" +
           detail::quoted(a.states[q].id + "\n" + to_string(a.states[q].label)) + "];\n";
    if (a.initial[q]) {
      out += "  " + detail::quoted("init:" + a.states[q].id) + " [shape=point];\n";
      out += "  " + detail::quoted("init:" + a.states[q].id) + " -> " + node(q) + ";\n";
    }
  }
  for (const auto& t : a.transitions)
    out += "  " + node(t.from) + " -> " + node(t.to) + " [label=" + detail::quoted(to_string(t.letter)) + "];\n";
  return out + "}\n";
}

inline std::string export_dot(const Presentation& p) {
  std::string out = "digraph presentation {\n  rankdir=LR;\n";
  auto node = [&](std::size_t m) { return detail::quoted(p.name(m)); };
  bool dead_used = false;
  for (std::size_t m = 0; m < p.size(); ++m) {
    const auto& e = p.elements[m];
    out += "  " + node(m) + " [shape=" + (p.is_accepting(m) ? "doublecircle" : "circle") + ", label=" +
           detail::quoted(e.id + "\n" + to_string(e.src) + "→" + to_string(e.tgt)) + "];\n";
  }
  for (const auto& [u, m] : p.initials) {
    const std::string init = detail::quoted("init:" + to_string(u));
    out += "  " + init + " [shape=point];\n  " + init + " -> " + node(m) + ";\n";
    dead_used = dead_used || m == kDead;
  }
  for (const auto& [key, to] : p.actions) {
    out += "  " + node(key.first) + " -> " + node(to) + " [label=" + detail::quoted(to_string(key.second)) + "];\n";
    dead_used = dead_used || to == kDead;
  }
  if (p.lower)
    for (const auto& [key, to] : *p.lower) {
      std::string label = "∂";
      for (auto i : positions(key.second)) label += std::to_string(i);
      out += "  " + node(key.first) + " -> " + node(to) + " [style=dashed, label=" + detail::quoted(label) + "];\n";
      dead_used = dead_used || to == kDead;
    }
  if (dead_used) out += "  \"dead\" [shape=box];\n";
  return out + "}\n";
}

/// DOT rendering of any JSON document.
inline std::string export_dot(const Json& doc) {
  switch (document_kind(doc)) {
    case DocumentKind::Pomset: return export_dot(pomset_from_json(doc));
    case DocumentKind::Hda: return export_dot(hda_from_json(doc));
    case DocumentKind::StAutomaton: return export_dot(st_automaton_from_json(doc));
    case DocumentKind::Presentation: return export_dot(presentation_from_json(doc));
  }
  throw Error(ErrorCode::UnknownDocumentKind, "cannot render document");
}

}  // namespace hdalang
