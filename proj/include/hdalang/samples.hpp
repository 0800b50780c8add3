#pragma once

// Reference objects drawn from the standard pictures of the theory: the
// gluing example, the example HDA with its path, the counter example built
// from a module, and the alternating family P_2n.

#include <string>
#include <vector>

#include "hdalang/hda.hpp"
#include "hdalang/pomset.hpp"
#include "hdalang/presentation.hpp"
#include "hdalang/st.hpp"

namespace hdalang::samples {

/// Left operand of the gluing example: b < d, a concurrent with both,
/// S = {b}, T = {a, d}.
inline Pomset gluing_left() {
  return validate_ipomset(RawPomset{
      {{"a", "a"}, {"b", "b"}, {"d", "d"}},
      {{"b", "d"}},
      {{"a", "b"}, {"a", "d"}},
      {"b"},
      {"a", "d"},
  });
}

/// Right operand: a < c, d concurrent with both, S = {a, d}, T = {d}.
inline Pomset gluing_right() {
  return validate_ipomset(RawPomset{
      {{"a", "a"}, {"c", "c"}, {"d", "d"}},
      {{"a", "c"}},
      {{"a", "d"}, {"c", "d"}},
      {"a", "d"},
      {"d"},
  });
}

/// Expected result of gluing the two operands above.
inline Pomset gluing_result() {
  return validate_ipomset(RawPomset{
      {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}},
      {{"b", "d"}, {"a", "c"}, {"b", "c"}},
      {{"a", "b"}, {"a", "d"}, {"c", "d"}},
      {"b"},
      {"d"},
  });
}

/// Pomset of the dashed path in the example HDA: a1 < c, a1 < a2, b < a2,
/// with the second a still running at the end.
inline Pomset path_pomset() {
  return validate_ipomset(RawPomset{
      {{"a1", "a"}, {"b", "b"}, {"c", "c"}, {"a2", "a"}},
      {{"a1", "c"}, {"a1", "a2"}, {"b", "a2"}},
      {{"a1", "b"}, {"c", "b"}, {"c", "a2"}},
      {},
      {"a2"},
  });
}

/// The six-letter sparse decomposition of path_pomset().
inline STSequence path_decomposition() {
  return STSequence{
      {},
      {
          STLetter::starter({"a", "b"}, 0b11),
          STLetter::terminator({"a", "b"}, 0b01),
          STLetter::starter({"c", "b"}, 0b01),
          STLetter::terminator({"c", "b"}, 0b10),
          STLetter::starter({"c", "a"}, 0b10),
          STLetter::terminator({"c", "a"}, 0b01),
      },
  };
}

/// P_0 is empty; P_2n alternates n "upper" and n "lower" a-events, each
/// concurrent with its neighbours, upper events first in event order.
inline Pomset p2n(std::size_t n) {
  const std::size_t size = 2 * n;
  PomsetParts parts(size);
  for (std::size_t i = 0; i < size; ++i) parts.labels[i] = "a";
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 2; j < size; ++j) parts.precedence.set(i, j);
  for (std::size_t i = 0; i + 1 < size; ++i) {
    // even index = upper event (1st, 3rd, ... in reading order)
    if (i % 2 == 0)
      parts.event_order.set(i, i + 1);
    else
      parts.event_order.set(i + 1, i);
  }
  return validate_ipomset(std::move(parts));
}

namespace detail {

inline void add_edge(RawHda& r, const std::string& id, const Label& label, const std::string& from,
                     const std::string& to) {
  r.cell(id, {label}).faces(id, 0, from, to);
}

}  // namespace detail

/// Three squares over a 3x3 grid of vertices. Vertex vIJ sits at column I,
/// row J; edges are named by their endpoints. Rows read a then c, columns
/// read b then a. Square x = [a,b] spans columns 0-1 and rows 0-1,
/// y = [c,b] columns 1-2 rows 0-1, z = [c,a] columns 1-2 rows 1-2.
inline RawHda grid_hda_document() {
  RawHda r;
  auto v = [](int i, int j) { return "v" + std::to_string(i) + std::to_string(j); };
  auto e = [&](int i, int j, int k, int l) { return v(i, j) + ">" + v(k, l); };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.cell(v(i, j), {});
  for (int j = 0; j < 3; ++j) {
    detail::add_edge(r, e(0, j, 1, j), "a", v(0, j), v(1, j));
    detail::add_edge(r, e(1, j, 2, j), "c", v(1, j), v(2, j));
  }
  for (int i = 0; i < 3; ++i) {
    detail::add_edge(r, e(i, 0, i, 1), "b", v(i, 0), v(i, 1));
    detail::add_edge(r, e(i, 1, i, 2), "a", v(i, 1), v(i, 2));
  }
  r.cell("x", {"a", "b"}).faces("x", 0, e(0, 0, 0, 1), e(1, 0, 1, 1)).faces("x", 1, e(0, 0, 1, 0), e(0, 1, 1, 1));
  r.cell("y", {"c", "b"}).faces("y", 0, e(1, 0, 1, 1), e(2, 0, 2, 1)).faces("y", 1, e(1, 0, 2, 0), e(1, 1, 2, 1));
  r.cell("z", {"c", "a"}).faces("z", 0, e(1, 1, 1, 2), e(2, 1, 2, 2)).faces("z", 1, e(1, 1, 2, 1), e(1, 2, 2, 2));
  r.initial = {"v00"};
  r.accepting = {"v22", "v21>v22"};
  return r;
}

inline Hda grid_hda() { return validate_hda(grid_hda_document()); }

/// The accepting path through x, y and z whose event pomset is path_pomset().
inline Path grid_path(const Hda& h) {
  auto c = [&](const char* id) { return *h.find(id); };
  return Path{c("v00"),
              {
                  {true, 0b11, c("x")},
                  {false, 0b01, c("v10>v11")},
                  {true, 0b01, c("y")},
                  {false, 0b10, c("v11>v21")},
                  {true, 0b10, c("z")},
                  {false, 0b01, c("v21>v22")},
              }};
}

/// HDA built from the counter-free module for down([a||b]) b* + a: one
/// square whose right b-edge goes back and forth between two accepting
/// vertices (the edges `up` and `down`).
inline RawHda counter_hda_document() {
  RawHda r;
  for (const char* v : {"v00", "v01", "v10", "v11", "v20"}) r.cell(v, {});
  detail::add_edge(r, "b0", "b", "v00", "v01");
  detail::add_edge(r, "a0", "a", "v00", "v10");
  detail::add_edge(r, "a1", "a", "v01", "v11");
  detail::add_edge(r, "up", "b", "v10", "v11");
  detail::add_edge(r, "down", "b", "v11", "v10");
  detail::add_edge(r, "b2", "b", "v10", "v20");
  detail::add_edge(r, "loop", "b", "v20", "v20");
  r.cell("q", {"a", "b"}).faces("q", 0, "b0", "up").faces("q", 1, "a0", "a1");
  r.initial = {"v00"};
  r.accepting = {"v10", "v11", "v20"};
  return r;
}

inline Hda counter_hda() { return validate_hda(counter_hda_document()); }

/// counter_hda() with its three accepting vertices merged into one.
inline RawHda merged_hda_document() {
  RawHda r;
  for (const char* v : {"start", "b", "acc"}) r.cell(v, {});
  detail::add_edge(r, "b0", "b", "start", "b");
  detail::add_edge(r, "a0", "a", "start", "acc");
  detail::add_edge(r, "a1", "a", "b", "acc");
  detail::add_edge(r, "loop", "b", "acc", "acc");
  r.cell("q", {"a", "b"}).faces("q", 0, "b0", "loop").faces("q", 1, "a0", "a1");
  r.initial = {"start"};
  r.accepting = {"acc"};
  return r;
}

inline Hda merged_hda() { return validate_hda(merged_hda_document()); }

/// One vertex, initial and accepting, with an a-loop: the words a*.
inline RawHda a_star_document() {
  RawHda r;
  r.cell("v", {});
  detail::add_edge(r, "a", "a", "v", "v");
  r.initial = {"v"};
  r.accepting = {"v"};
  return r;
}

/// Two vertices swapped by a-edges: the words of even length.
inline RawHda aa_star_document() {
  RawHda r;
  r.cell("even", {}).cell("odd", {});
  detail::add_edge(r, "go", "a", "even", "odd");
  detail::add_edge(r, "back", "a", "odd", "even");
  r.initial = {"even"};
  r.accepting = {"even"};
  return r;
}

/// Presentation of the language down-closure([a||b]) b* + a that has no
/// counter, while the HDA built from it does. Missing actions are dead.
inline Presentation counter_free_presentation() {
  Presentation p;
  p.implicit_dead = true;
  const Conclist e{}, a{"a"}, b{"b"}, ab{"a", "b"};
  p.add("v00", e, e);
  p.add("v01", e, b);
  p.add("v02", e, e);
  p.add("v10", e, a);
  p.add("v11", e, ab);
  p.add("v12", e, a);
  p.add("v20", e, e);
  p.add("v21", e, b);
  p.add("v22", e, e);
  p.add("v30", e, b);
  p.add("v31", e, b);
  p.add("v40", e, e);
  p.add("v41", e, b);
  const auto start = [](const Conclist& u, Subset s) { return STLetter::starter(u, s); };
  const auto finish = [](const Conclist& u, Subset s) { return STLetter::terminator(u, s); };
  p.set_action("v00", start(b, 0b1), "v01");
  p.set_action("v00", start(a, 0b1), "v10");
  p.set_action("v00", start(ab, 0b11), "v11");
  p.set_action("v01", finish(b, 0b1), "v02");
  p.set_action("v01", start(ab, 0b01), "v11");
  p.set_action("v10", start(ab, 0b10), "v11");
  p.set_action("v10", finish(a, 0b1), "v20");
  p.set_action("v11", finish(ab, 0b10), "v12");
  p.set_action("v11", finish(ab, 0b01), "v21");
  p.set_action("v11", finish(ab, 0b11), "v22");
  p.set_action("v02", start(a, 0b1), "v12");
  p.set_action("v12", finish(a, 0b1), "v22");
  p.set_action("v21", finish(b, 0b1), "v22");
  p.set_action("v22", start(b, 0b1), "v31");
  p.set_action("v31", finish(b, 0b1), "v20");
  p.set_action("v20", start(b, 0b1), "v30");
  p.set_action("v30", finish(b, 0b1), "v40");
  p.set_action("v40", start(b, 0b1), "v41");
  p.set_action("v41", finish(b, 0b1), "v40");
  p.initials[e] = p.at("v00");
  p.accepting = {p.at("v20"), p.at("v22"), p.at("v40")};
  return p;
}

}  // namespace hdalang::samples
