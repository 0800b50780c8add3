#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "hdalang/conclist.hpp"
#include "hdalang/error.hpp"
#include "hdalang/pomset.hpp"

namespace hdalang {

enum class LetterKind { identity, starter, terminator };

/// A starter, terminator or identity on a conclist: the elementary pomsets
/// from which every pomset is glued.
struct STLetter {
  LetterKind kind = LetterKind::identity;
  Conclist carrier;
  Subset subset = 0;

  static STLetter identity(Conclist u) { return {LetterKind::identity, std::move(u), 0}; }
  static STLetter starter(Conclist u, Subset a) {
    return a == 0 ? identity(std::move(u)) : STLetter{LetterKind::starter, std::move(u), a};
  }
  static STLetter terminator(Conclist u, Subset a) {
    return a == 0 ? identity(std::move(u)) : STLetter{LetterKind::terminator, std::move(u), a};
  }

  [[nodiscard]] Conclist source() const {
    return kind == LetterKind::starter ? remove_positions(carrier, subset) : carrier;
  }
  [[nodiscard]] Conclist target() const {
    return kind == LetterKind::terminator ? remove_positions(carrier, subset) : carrier;
  }

  [[nodiscard]] Pomset to_pomset() const {
    switch (kind) {
      case LetterKind::starter: return starter_pomset(carrier, subset);
      case LetterKind::terminator: return terminator_pomset(carrier, subset);
      case LetterKind::identity: break;
    }
    return identity_pomset(carrier);
  }

  auto operator<=>(const STLetter&) const = default;
  bool operator==(const STLetter&) const = default;
};

/// Compact text form, e.g. `+[a,b]{0}` for the starter of `a` under `b`,
/// `-[a,b]{0,1}` for a terminator, `=[a]` for an identity.
inline std::string to_string(const STLetter& l) {
  std::string s = l.kind == LetterKind::starter ? "+" : l.kind == LetterKind::terminator ? "-" : "=";
  s += to_string(l.carrier);
  if (l.kind != LetterKind::identity) {
    s += '{';
    bool first = true;
    for (auto i : positions(l.subset)) {
      if (!first) s += ',';
      s += std::to_string(i);
      first = false;
    }
    s += '}';
  }
  return s;
}

/// A word of ST-letters together with the object it starts at, so that the
/// empty word still denotes an identity pomset.
struct STSequence {
  Conclist start;
  std::vector<STLetter> letters;

  [[nodiscard]] Conclist finish() const { return letters.empty() ? start : letters.back().target(); }

  /// Starters and terminators alternate and no identity letter occurs.
  [[nodiscard]] bool is_sparse() const {
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (letters[i].kind == LetterKind::identity) return false;
      if (i > 0 && letters[i].kind == letters[i - 1].kind) return false;
    }
    return true;
  }

  bool operator==(const STSequence&) const = default;
  auto operator<=>(const STSequence&) const = default;
};

inline std::string to_string(const STSequence& w) {
  std::string s = to_string(w.start) + ":";
  for (const auto& l : w.letters) s += " " + to_string(l);
  return s;
}

/// Sparse decomposition plus the order in which events appear along it
/// (source events first, then each starter's new events by carrier position).
struct SparseDecomposition {
  STSequence sequence;
  std::vector<std::size_t> event_rank;  ///< event index -> appearance rank
  std::size_t dimension = 0;
};

/// Sweeps the interval structure: an event starts exactly when the set of
/// finished events equals its set of predecessors; an active event ends as
/// soon as every event concurrent with it has started (unless it is a target).
inline SparseDecomposition decompose(const Pomset& p) {
  const std::size_t n = p.size();
  SparseDecomposition out;
  out.event_rank.assign(n, 0);

  std::vector<char> started(n, 0);
  std::vector<char> finished(n, 0);
  std::vector<char> marked(n, 0);
  std::vector<std::size_t> active = p.sources();
  active.reserve(n);
  std::vector<std::size_t> rest;
  rest.reserve(n);
  std::size_t next_rank = 0;
  for (auto e : active) {
    started[e] = 1;
    out.event_rank[e] = next_rank++;
  }
  out.sequence.start = p.labels_of(active);
  out.dimension = active.size();

  std::size_t finished_count = 0;
  std::vector<std::size_t> pred_count(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (p.precedes(y, x)) ++pred_count[x];

  auto marked_positions = [&] {
    Subset s = 0;
    for (std::size_t k = 0; k < active.size(); ++k)
      if (marked[active[k]]) s |= bit(k);
    return s;
  };

  while (true) {
    bool any_start = false;
    for (std::size_t x = 0; x < n; ++x) {
      if (started[x] || pred_count[x] != finished_count) continue;
      bool ok = true;
      for (std::size_t y = 0; y < n && ok; ++y)
        if (p.precedes(y, x) && !finished[y]) ok = false;
      if (!ok) continue;
      // insert x into the active list at its event-order position
      std::size_t pos = active.size();
      while (pos > 0 && p.ordered(x, active[pos - 1])) --pos;
      active.insert(active.begin() + static_cast<std::ptrdiff_t>(pos), x);
      started[x] = 1;
      marked[x] = 1;
      any_start = true;
    }
    if (any_start) {
      for (auto x : active)
        if (marked[x]) out.event_rank[x] = next_rank++;
      out.sequence.letters.push_back(STLetter::starter(p.labels_of(active), marked_positions()));
      for (auto x : active) marked[x] = 0;
      out.dimension = std::max(out.dimension, active.size());
    }

    bool any_end = false;
    for (auto y : active) {
      if (p.is_target(y)) continue;
      bool ok = true;
      for (std::size_t z = 0; z < n && ok; ++z)
        if (!started[z] && p.concurrent(y, z)) ok = false;
      if (ok) {
        marked[y] = 1;
        any_end = true;
      }
    }
    if (any_end) {
      out.sequence.letters.push_back(STLetter::terminator(p.labels_of(active), marked_positions()));
      rest.clear();
      for (auto y : active) {
        if (marked[y]) {
          marked[y] = 0;
          finished[y] = 1;
          ++finished_count;
        } else {
          rest.push_back(y);
        }
      }
      std::swap(active, rest);
    }
    if (!any_start && !any_end) break;
  }

  for (std::size_t x = 0; x < n; ++x)
    if (!started[x] || (!finished[x] && !p.is_target(x)))
      throw Error(ErrorCode::NotIntervalOrder, "sweep stalled at event " + p.id(x));
  return out;
}

inline STSequence st_decompose_sparse(const Pomset& p) { return decompose(p).sequence; }

/// Maximum antichain size of the precedence order.
inline std::size_t dimension(const Pomset& p) { return decompose(p).dimension; }

/// Builds the pomset of an ST-sequence by running the letters over a list
/// of active events. Equivalent to folding `glue` over the letters.
inline Pomset glue_st(const STSequence& w) {
  std::size_t total = w.start.size();
  for (const auto& letter : w.letters)
    if (letter.kind == LetterKind::starter) total += static_cast<std::size_t>(cardinality(letter.subset));
  PomsetParts parts(total);
  std::size_t next = 0;
  std::vector<std::size_t> active;
  active.reserve(total);
  std::vector<std::size_t> finished;
  finished.reserve(total);
  std::vector<std::size_t> scratch;
  scratch.reserve(total);

  auto record_order = [&] {
    for (std::size_t i = 0; i < active.size(); ++i)
      for (std::size_t j = i + 1; j < active.size(); ++j) parts.event_order.set(active[i], active[j]);
  };
  for (const auto& label : w.start) {
    parts.labels[next] = label;
    parts.sources[next] = true;
    active.push_back(next++);
  }
  record_order();

  Conclist current = w.start;
  auto follows = [&](const STLetter& letter) {
    if (letter.kind != LetterKind::starter) return letter.carrier == current;
    std::size_t old = 0;
    for (std::size_t k = 0; k < letter.carrier.size(); ++k) {
      if (has(letter.subset, k)) continue;
      if (old == current.size() || current[old] != letter.carrier[k]) return false;
      ++old;
    }
    return old == current.size();
  };
  for (const auto& letter : w.letters) {
    if (letter.subset >> letter.carrier.size() != 0)
      throw Error(ErrorCode::InvalidDocument, "letter " + to_string(letter) + " has positions outside its carrier");
    if (!follows(letter))
      throw Error(ErrorCode::InterfaceMismatch,
                  "letter " + to_string(letter) + " cannot follow object " + to_string(current));
    scratch.clear();
    if (letter.kind == LetterKind::starter) {
      std::size_t old = 0;
      for (std::size_t k = 0; k < letter.carrier.size(); ++k) {
        if (has(letter.subset, k)) {
          const std::size_t e = next++;
          parts.labels[e] = letter.carrier[k];
          for (auto f : finished) parts.precedence.set(f, e);
          scratch.push_back(e);
        } else {
          scratch.push_back(active[old++]);
        }
      }
      std::swap(active, scratch);
      record_order();
    } else if (letter.kind == LetterKind::terminator) {
      for (std::size_t k = 0; k < active.size(); ++k) {
        if (has(letter.subset, k))
          finished.push_back(active[k]);
        else
          scratch.push_back(active[k]);
      }
      std::swap(active, scratch);
    }
    current.clear();
    for (auto e : active) current.push_back(parts.labels[e]);
  }

  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b)
      if (parts.precedence.get(a, b)) {
        parts.event_order.set(a, b, false);
        parts.event_order.set(b, a, false);
      }
  for (auto e : active) parts.targets[e] = true;
  return detail::assemble(std::move(parts));
}

/// Canonical encoding: isomorphic pomsets and only those share it, because
/// the sparse decomposition is unique and determines the pomset.
inline std::string canonical_form(const Pomset& p) { return to_string(st_decompose_sparse(p)); }

inline bool is_isomorphic(const Pomset& p, const Pomset& q) {
  return p.size() == q.size() && canonical_form(p) == canonical_form(q);
}

/// Merges consecutive letters of the same kind and drops identities. The
/// result glues to the same pomset.
inline STSequence normalize(const STSequence& w) {
  STSequence out{w.start, {}};
  for (const auto& l : w.letters) {
    if (l.kind == LetterKind::identity) continue;
    if (!out.letters.empty() && out.letters.back().kind == l.kind) {
      STLetter& prev = out.letters.back();
      if (l.kind == LetterKind::starter) {
        // prev starts B inside U-A; l starts A inside U.
        Subset lifted = expand(prev.subset, l.subset, l.carrier.size());
        prev = STLetter::starter(l.carrier, lifted | l.subset);
      } else {
        Subset lifted = expand(l.subset, prev.subset, prev.carrier.size());
        prev = STLetter::terminator(prev.carrier, prev.subset | lifted);
      }
      continue;
    }
    out.letters.push_back(l);
  }
  return out;
}

}  // namespace hdalang
