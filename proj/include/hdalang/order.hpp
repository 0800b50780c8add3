#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hdalang/pomset.hpp"
#include "hdalang/st.hpp"

namespace hdalang {

/// A set of pomsets keyed by canonical form.
using PomsetSet = std::map<std::string, Pomset>;

inline void insert(PomsetSet& set, const Pomset& p) { set.emplace(canonical_form(p), p); }

/// P ⊑ Q: some bijection P -> Q preserves labels and interfaces, reflects
/// precedence, and sends every event-ordered concurrent pair of P to an
/// event-ordered pair of Q.
inline bool is_subsumed(const Pomset& p, const Pomset& q) {
  const std::size_t n = p.size();
  if (q.size() != n) return false;
  std::vector<std::size_t> image(n, 0);
  std::vector<bool> used(n, false);

  auto compatible = [&](std::size_t x, std::size_t fx) {
    if (p.label(x) != q.label(fx) || p.is_source(x) != q.is_source(fx) || p.is_target(x) != q.is_target(fx))
      return false;
    for (std::size_t y = 0; y < x; ++y) {
      const std::size_t fy = image[y];
      if (q.precedes(fx, fy) && !p.precedes(x, y)) return false;
      if (q.precedes(fy, fx) && !p.precedes(y, x)) return false;
      if (p.concurrent(x, y)) {
        if (p.ordered(x, y) && !q.ordered(fx, fy)) return false;
        if (p.ordered(y, x) && !q.ordered(fy, fx)) return false;
      }
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t x) -> bool {
    if (x == n) return true;
    for (std::size_t fx = 0; fx < n; ++fx) {
      if (used[fx] || !compatible(x, fx)) continue;
      used[fx] = true;
      image[x] = fx;
      if (self(self, x + 1)) return true;
      used[fx] = false;
    }
    return false;
  };
  return search(search, 0);
}

/// All pomsets obtained from `q` by adding precedence, keeping the interval
/// and interface invariants. Event order is dropped on pairs that become
/// comparable.
inline PomsetSet downward_closure(const Pomset& q) {
  PomsetSet out;
  const std::size_t n = q.size();
  std::set<Relation> seen;

  auto emit = [&](const Relation& lt) {
    PomsetParts parts = q.parts();
    parts.precedence = lt;
    try {
      insert(out, validate_ipomset(std::move(parts)));
    } catch (const Error&) {
      // not an interval order
    }
  };

  auto explore = [&](auto&& self, const Relation& lt) -> void {
    if (!seen.insert(lt).second) return;
    emit(lt);
    for (std::size_t a = 0; a < n; ++a) {
      if (q.is_target(a)) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || q.is_source(b) || lt.get(a, b) || lt.get(b, a)) continue;
        Relation next = lt;
        next.set(a, b);
        next.transitive_closure();
        self(self, next);
      }
    }
  };
  explore(explore, q.precedence());
  return out;
}

inline PomsetSet downward_closure(const std::vector<Pomset>& ps) {
  PomsetSet out;
  for (const auto& q : ps) out.merge(downward_closure(q));
  return out;
}

inline PomsetSet downward_closure(const PomsetSet& ps) {
  PomsetSet out;
  for (const auto& [key, q] : ps) out.merge(downward_closure(q));
  return out;
}

}  // namespace hdalang
