#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hdalang/conclist.hpp"
#include "hdalang/error.hpp"
#include "hdalang/hda.hpp"
#include "hdalang/st.hpp"
#include "hdalang/st_automaton.hpp"

namespace hdalang {

/// Stands for the absorbing, never accepting element that missing actions
/// lead to.
inline constexpr std::size_t kDead = static_cast<std::size_t>(-1);

struct PresentationElement {
  std::string id;
  Conclist src;
  Conclist tgt;
};

/// Finite module over pomsets given by its letter actions: a deterministic
/// automaton whose states are typed by a source and a target conclist.
struct Presentation {
  std::vector<PresentationElement> elements;
  std::map<std::pair<std::size_t, STLetter>, std::size_t> actions;
  std::map<Conclist, std::size_t> initials;  ///< image of id_U
  std::set<std::size_t> accepting;
  std::optional<std::map<std::pair<std::size_t, Subset>, std::size_t>> lower;
  bool implicit_dead = false;  ///< missing actions go to the dead element instead of failing

  [[nodiscard]] std::size_t size() const { return elements.size(); }

  std::size_t add(std::string id, Conclist src, Conclist tgt) {
    elements.push_back({std::move(id), std::move(src), std::move(tgt)});
    return elements.size() - 1;
  }

  [[nodiscard]] std::optional<std::size_t> find(const std::string& id) const {
    for (std::size_t m = 0; m < elements.size(); ++m)
      if (elements[m].id == id) return m;
    return std::nullopt;
  }

  [[nodiscard]] std::size_t at(const std::string& id) const {
    auto m = find(id);
    if (!m) throw Error(ErrorCode::InvalidDocument, "unknown element '" + id + "'");
    return *m;
  }

  void set_action(const std::string& from, const STLetter& letter, const std::string& to) {
    actions[{at(from), letter}] = at(to);
  }

  [[nodiscard]] std::string name(std::size_t m) const { return m == kDead ? "dead" : elements[m].id; }

  /// m . g, or kDead. Throws ActionUndefined for a missing action unless
  /// `implicit_dead` holds.
  [[nodiscard]] std::size_t act(std::size_t m, const STLetter& g) const {
    if (m == kDead) return kDead;
    if (g.kind == LetterKind::identity) {
      if (elements[m].tgt != g.carrier)
        throw Error(ErrorCode::InterfaceMismatch, "identity on " + to_string(g.carrier) + " applied to " + name(m));
      return m;
    }
    auto it = actions.find({m, g});
    if (it != actions.end()) return it->second;
    if (elements[m].tgt != g.source())
      throw Error(ErrorCode::InterfaceMismatch, to_string(g) + " applied to " + name(m));
    if (implicit_dead) return kDead;
    throw Error(ErrorCode::ActionUndefined, "no action of " + to_string(g) + " on " + name(m));
  }

  /// Like act, but missing actions always give kDead.
  [[nodiscard]] std::size_t act_or_dead(std::size_t m, const STLetter& g) const {
    if (m == kDead) return kDead;
    if (g.kind == LetterKind::identity) return m;
    auto it = actions.find({m, g});
    return it == actions.end() ? kDead : it->second;
  }

  [[nodiscard]] std::optional<std::size_t> lower_face(std::size_t m, Subset a) const {
    if (m == kDead) return kDead;
    if (a == 0) return m;
    if (!lower) return std::nullopt;
    auto it = lower->find({m, a});
    if (it == lower->end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] bool is_accepting(std::size_t m) const { return m != kDead && accepting.count(m) > 0; }
};

/// phi(P) for the pomset given by its ST-sequence.
inline std::size_t evaluate(const Presentation& p, const STSequence& w) {
  auto it = p.initials.find(w.start);
  std::size_t m = kDead;
  if (it != p.initials.end()) {
    m = it->second;
  } else if (!p.implicit_dead) {
    throw Error(ErrorCode::ActionUndefined, "no initial element for " + to_string(w.start));
  }
  for (const auto& l : w.letters) m = p.act(m, l);
  return m;
}

inline std::size_t evaluate(const Presentation& p, const Pomset& pomset) {
  return evaluate(p, st_decompose_sparse(pomset));
}

inline bool recognizes(const Presentation& p, const Pomset& pomset) {
  return p.is_accepting(evaluate(p, pomset));
}

/// Every starter and terminator whose carrier occurs as an element target
/// or as a carrier in the action table.
inline std::vector<STLetter> presentation_letters(const Presentation& p) {
  std::set<Conclist> carriers;
  for (const auto& e : p.elements) carriers.insert(e.tgt);
  for (const auto& [key, to] : p.actions) carriers.insert(key.second.carrier);
  std::vector<STLetter> out;
  for (const auto& u : carriers)
    for (Subset a = 1; a <= full_subset(u.size()); ++a) {
      out.push_back(STLetter::starter(u, a));
      out.push_back(STLetter::terminator(u, a));
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Elements reachable from the initial elements through actions.
inline std::vector<std::size_t> reachable_elements(const Presentation& p) {
  std::vector<bool> seen(p.size(), false);
  std::deque<std::size_t> queue;
  for (const auto& [u, m] : p.initials)
    if (!seen[m]) {
      seen[m] = true;
      queue.push_back(m);
    }
  std::map<std::size_t, std::vector<std::size_t>> next;
  for (const auto& [key, to] : p.actions) next[key.first].push_back(to);
  while (!queue.empty()) {
    const std::size_t m = queue.front();
    queue.pop_front();
    for (auto to : next[m])
      if (!seen[to]) {
        seen[to] = true;
        queue.push_back(to);
      }
  }
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < p.size(); ++m)
    if (seen[m]) out.push_back(m);
  return out;
}

// ---------------------------------------------------------------------------
// Validation

struct PresentationReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::size_t word_bound = 0;  ///< letter words up to this length were compared
  std::size_t words_checked = 0;
};

namespace detail {

inline constexpr std::size_t kMaxReportedViolations = 25;

inline void report(PresentationReport& r, std::string message) {
  r.ok = false;
  if (r.violations.size() < kMaxReportedViolations) r.violations.push_back(std::move(message));
}

/// Coherence of lower faces with each other and with the letter actions,
/// checked on live elements.
inline void check_coherence(const Presentation& p, const std::vector<STLetter>& letters, PresentationReport& r) {
  for (std::size_t m = 0; m < p.size(); ++m) {
    const Conclist& u = p.elements[m].tgt;
    const std::size_t n = u.size();
    for (Subset a = 1; a <= full_subset(n); ++a) {
      auto f = p.lower_face(m, a);
      if (!f) {
        report(r, "missing lower face of " + p.name(m) + " at " + std::to_string(a));
        continue;
      }
      if (*f == kDead) continue;
      const auto& e = p.elements[*f];
      if (e.src != p.elements[m].src || e.tgt != remove_positions(u, a))
        report(r, "lower face of " + p.name(m) + " at " + std::to_string(a) + " is mistyped");
      for (Subset b = 1; b <= full_subset(n - static_cast<std::size_t>(cardinality(a))); ++b) {
        auto twice = p.lower_face(*f, b);
        auto once = p.lower_face(m, a | expand(b, a, n));
        if (twice && once && *twice != *once)
          report(r, "lower faces of " + p.name(m) + " do not compose at " + std::to_string(a) + "," +
                        std::to_string(b));
      }
    }
    for (const auto& g : letters) {
      if (g.source() != u) continue;
      const std::size_t mg = p.act_or_dead(m, g);
      if (mg == kDead) continue;
      const Conclist& v = g.carrier;
      const std::size_t nv = v.size();
      if (g.kind == LetterKind::starter) {
        for (Subset a = 1; a <= full_subset(nv); ++a) {
          auto lhs = p.lower_face(mg, a);
          auto base = p.lower_face(m, compress(a & ~g.subset, g.subset, nv));
          if (!lhs || !base) continue;
          const std::size_t rhs =
              p.act_or_dead(*base, STLetter::starter(remove_positions(v, a), compress(g.subset & ~a, a, nv)));
          if (*lhs != rhs)
            report(r, "lower face " + std::to_string(a) + " of " + p.name(m) + "." + to_string(g) + " is " +
                          p.name(*lhs) + ", expected " + p.name(rhs));
        }
      } else {
        const std::size_t rest = nv - static_cast<std::size_t>(cardinality(g.subset));
        for (Subset a = 1; a <= full_subset(rest); ++a) {
          const Subset lifted = expand(a, g.subset, nv);
          auto lhs = p.lower_face(mg, a);
          auto base = p.lower_face(m, lifted);
          if (!lhs || !base) continue;
          const std::size_t rhs = p.act_or_dead(
              *base, STLetter::terminator(remove_positions(v, lifted), compress(g.subset, lifted, nv)));
          if (*lhs != rhs)
            report(r, "lower face " + std::to_string(a) + " of " + p.name(m) + "." + to_string(g) + " is " +
                          p.name(*lhs) + ", expected " + p.name(rhs));
        }
      }
    }
  }
}

}  // namespace detail

/// Typing, the identity law, agreement of the action on letter words that
/// glue to the same pomset (up to `max_letters` letters), and coherence of
/// lower faces when present.
inline PresentationReport validate_presentation(const Presentation& p, std::size_t max_letters = 4) {
  PresentationReport r;
  r.word_bound = max_letters;
  std::set<std::string> ids;
  for (const auto& e : p.elements)
    if (!ids.insert(e.id).second) detail::report(r, "element id '" + e.id + "' repeated");
  for (const auto& [u, m] : p.initials)
    if (m >= p.size() || p.elements[m].src != u || p.elements[m].tgt != u)
      detail::report(r, "initial element for " + to_string(u) + " is mistyped");
  for (auto m : p.accepting)
    if (m >= p.size()) detail::report(r, "accepting element out of range");
  for (const auto& [key, to] : p.actions) {
    const auto& [m, g] = key;
    if (m >= p.size() || to >= p.size()) {
      detail::report(r, "action endpoint out of range");
      continue;
    }
    if (p.elements[m].tgt != g.source() || p.elements[to].src != p.elements[m].src ||
        p.elements[to].tgt != g.target())
      detail::report(r, "action " + p.name(m) + "." + to_string(g) + " = " + p.name(to) + " is mistyped");
    if (g.kind == LetterKind::identity && to != m)
      detail::report(r, "identity law fails at " + p.name(m));
  }
  if (p.lower)
    for (const auto& [key, to] : *p.lower)
      if (key.first >= p.size() || to >= p.size()) detail::report(r, "lower face endpoint out of range");
  if (!r.ok) return r;

  const auto letters = presentation_letters(p);
  std::map<Conclist, std::vector<const STLetter*>> by_source;
  for (const auto& l : letters) by_source[l.source()].push_back(&l);
  for (std::size_t m = 0; m < p.size(); ++m) {
    std::map<STSequence, std::pair<std::size_t, STSequence>> seen;
    STSequence w{p.elements[m].tgt, {}};
    std::function<void(std::size_t)> go = [&](std::size_t at) {
      ++r.words_checked;
      auto [it, fresh] = seen.emplace(normalize(w), std::pair{at, w});
      if (!fresh && it->second.first != at)
        detail::report(r, p.name(m) + " acted on by " + to_string(w) + " gives " + p.name(at) + " but by " +
                              to_string(it->second.second) + " gives " + p.name(it->second.first));
      if (w.letters.size() == max_letters) return;
      for (const STLetter* l : by_source[w.finish()]) {
        w.letters.push_back(*l);
        go(p.act_or_dead(at, *l));
        w.letters.pop_back();
      }
    };
    go(m);
  }
  if (p.lower) detail::check_coherence(p, letters, r);
  return r;
}

// ---------------------------------------------------------------------------
// Counter-freeness

struct ModuleCounterWitness {
  Conclist object;
  STSequence word;
  std::size_t index = 0;
  std::size_t period = 0;
  std::size_t element = 0;  ///< an element whose orbit under the word keeps cycling
};

struct ModuleCounterReport {
  bool counter_free = true;
  std::size_t stabilization = 1;
  std::size_t endomorphisms = 0;
  std::optional<ModuleCounterWitness> witness;
};

/// For each conclist U, explores the maps {m : tgt m = U} -> M induced by
/// letter words leaving U and checks the powers of those returning to U.
/// Missing actions count as the dead element.
inline ModuleCounterReport is_counter_free_module(const Presentation& p) {
  ModuleCounterReport report;
  const auto letters = presentation_letters(p);
  std::map<Conclist, std::vector<const STLetter*>> by_source;
  for (const auto& l : letters) by_source[l.source()].push_back(&l);
  std::map<Conclist, std::vector<std::size_t>> domain;
  for (std::size_t m = 0; m < p.size(); ++m) domain[p.elements[m].tgt].push_back(m);

  using Map = std::vector<std::size_t>;
  for (const auto& [u, dom] : domain) {
    struct Node {
      Conclist at;
      Map image;
      auto operator<=>(const Node&) const = default;
    };
    std::set<Node> seen;
    std::vector<Node> nodes{{u, dom}};
    std::vector<std::pair<std::size_t, const STLetter*>> back{{0, nullptr}};
    seen.insert(nodes[0]);
    for (std::size_t k = 0; k < nodes.size(); ++k)
      for (const STLetter* l : by_source[nodes[k].at]) {
        Node next{l->target(), nodes[k].image};
        for (auto& m : next.image) m = p.act_or_dead(m, *l);
        if (!seen.insert(next).second) continue;
        nodes.push_back(std::move(next));
        back.emplace_back(k, l);
      }

    std::map<std::size_t, std::size_t> position;
    for (std::size_t i = 0; i < dom.size(); ++i) position[dom[i]] = i;
    auto compose = [&](const Map& f, const Map& g) {
      Map out(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] == kDead ? kDead : g[position.at(f[i])];
      return out;
    };
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      if (nodes[k].at != u) continue;
      ++report.endomorphisms;
      auto pd = power_data(nodes[k].image, compose);
      if (pd.period == 1) {
        report.stabilization = std::max(report.stabilization, pd.index);
        continue;
      }
      if (report.witness) continue;
      report.counter_free = false;
      ModuleCounterWitness w{u, {u, {}}, pd.index, pd.period, 0};
      for (std::size_t at = k; at != 0; at = back[at].first) w.word.letters.push_back(*back[at].second);
      std::reverse(w.word.letters.begin(), w.word.letters.end());
      Map power = nodes[k].image;
      for (std::size_t i = 1; i < pd.index; ++i) power = compose(power, nodes[k].image);
      const Map next = compose(power, nodes[k].image);
      for (std::size_t i = 0; i < dom.size(); ++i)
        if (power[i] != next[i]) {
          w.element = dom[i];
          break;
        }
      report.witness = w;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suffix presentation

/// Keeps the elements with source `u`.
inline Presentation restrict_to_source(const Presentation& p, const Conclist& u) {
  Presentation out;
  out.implicit_dead = p.implicit_dead;
  std::vector<std::size_t> to(p.size(), kDead);
  for (std::size_t m = 0; m < p.size(); ++m)
    if (p.elements[m].src == u) to[m] = out.add(p.elements[m].id, u, p.elements[m].tgt);
  for (const auto& [key, m] : p.actions)
    if (to[key.first] != kDead) out.actions[{to[key.first], key.second}] = to[m];
  if (auto it = p.initials.find(u); it != p.initials.end()) out.initials[u] = to[it->second];
  for (auto m : p.accepting)
    if (to[m] != kDead) out.accepting.insert(to[m]);
  if (p.lower) {
    out.lower.emplace();
    for (const auto& [key, m] : *p.lower)
      if (to[key.first] != kDead) (*out.lower)[{to[key.first], key.second}] = to[m];
  }
  return out;
}

/// Elements are pairs (source U, class of P\L) over the reachable subset
/// states of the determinized ST-automaton of h, classes being taken up to
/// equality of accepted sparse suffixes. Classes with no accepted suffix are
/// left implicit as the dead element.
inline Presentation suffix_presentation(const Hda& h) {
  const Determinized d = determinize_reachable(hda_to_st_automaton(h));
  const StAutomaton& a = d.automaton;
  const std::size_t n = a.size();

  // states from which some final state is reachable
  std::vector<bool> live(n, false);
  for (std::size_t q = 0; q < n; ++q) live[q] = a.final[q];
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : a.transitions)
      if (live[t.to] && !live[t.from]) live[t.from] = changed = true;
  }

  std::vector<std::size_t> cls(n, kDead);
  std::vector<std::size_t> reps;
  for (std::size_t q = 0; q < n; ++q) {
    if (!live[q]) continue;
    for (auto r : reps)
      if (a.states[r].label == a.states[q].label && sparse_suffix_equivalent(a, r, q).equivalent) {
        cls[q] = cls[r];
        break;
      }
    if (cls[q] == kDead) {
      cls[q] = reps.size();
      reps.push_back(q);
    }
  }
  std::map<std::pair<std::size_t, STLetter>, std::size_t> delta;
  for (const auto& t : a.transitions) delta[{t.from, t.letter}] = t.to;
  std::map<std::size_t, std::vector<const StTransition*>> out_of;
  for (const auto& t : a.transitions) out_of[t.from].push_back(&t);

  Presentation p;
  p.implicit_dead = true;
  for (const auto& [u, q0] : d.initial_of) {
    if (!live[q0]) continue;
    std::map<std::size_t, std::size_t> element;  // class -> element
    std::deque<std::size_t> queue;
    auto element_of = [&](std::size_t q) {
      auto [it, fresh] = element.emplace(cls[q], p.size());
      if (fresh) {
        const std::size_t r = reps[cls[q]];
        p.add(to_string(u) + ":" + a.states[r].id, u, a.states[r].label);
        if (a.final[r]) p.accepting.insert(it->second);
        queue.push_back(r);
      }
      return it->second;
    };
    p.initials[u] = element_of(q0);
    while (!queue.empty()) {
      const std::size_t r = queue.front();
      queue.pop_front();
      const std::size_t m = element.at(cls[r]);
      for (const StTransition* t : out_of[r])
        if (live[t->to]) p.actions[{m, t->letter}] = element_of(t->to);
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Coherent closure and the HDA construction

/// Elements are tuples (phi(P - A))_{A subset of T_P}, indexed by A as a
/// bitmask. Letter actions follow the exchange laws of event removal; tuples
/// whose full component is dead are left implicit.
inline Presentation coherent_closure(const Presentation& p) {
  for (const auto& e : p.elements)
    if (!e.src.empty())
      throw Error(ErrorCode::SourceNotEmpty, "element " + e.id + " has source " + to_string(e.src));
  for (const auto& [u, m] : p.initials)
    if (!u.empty()) throw Error(ErrorCode::SourceNotEmpty, "initial element for " + to_string(u));

  const auto letters = presentation_letters(p);
  std::map<Conclist, std::vector<const STLetter*>> by_source;
  for (const auto& l : letters) by_source[l.source()].push_back(&l);

  using Tuple = std::vector<std::size_t>;
  Presentation out;
  out.implicit_dead = true;
  out.lower.emplace();
  std::map<std::pair<Conclist, Tuple>, std::size_t> index;
  std::vector<Tuple> tuples;
  std::deque<std::size_t> queue;
  auto element_of = [&](const Conclist& u, Tuple t) {
    auto [it, fresh] = index.emplace(std::pair{u, t}, out.size());
    if (!fresh) return it->second;
    std::string id;
    for (std::size_t k = 0; k < t.size(); ++k) id += (k ? "|" : "") + (t[k] == kDead ? "_" : p.elements[t[k]].id);
    out.add(id, {}, u);
    if (p.is_accepting(t[0])) out.accepting.insert(it->second);
    tuples.push_back(std::move(t));
    queue.push_back(it->second);
    return it->second;
  };

  if (auto it = p.initials.find(Conclist{}); it != p.initials.end()) out.initials[{}] = element_of({}, {it->second});
  while (!queue.empty()) {
    const std::size_t e = queue.front();
    queue.pop_front();
    const Conclist u = out.elements[e].tgt;
    const std::size_t n = u.size();
    const Tuple t = tuples[e];
    for (Subset a = 1; a <= full_subset(n); ++a) {
      const std::size_t rest = n - static_cast<std::size_t>(cardinality(a));
      Tuple face(std::size_t{1} << rest);
      for (Subset c = 0; c < face.size(); ++c) face[c] = t[a | expand(c, a, n)];
      (*out.lower)[{e, a}] = element_of(remove_positions(u, a), std::move(face));
    }
    for (const STLetter* g : by_source[u]) {
      if (p.act_or_dead(t[0], *g) == kDead) continue;
      const Conclist v = g->target();
      const std::size_t nv = g->carrier.size();
      Tuple next(std::size_t{1} << v.size());
      if (g->kind == LetterKind::starter) {
        for (Subset a = 0; a < next.size(); ++a)
          next[a] = p.act_or_dead(t[compress(a & ~g->subset, g->subset, nv)],
                                  STLetter::starter(remove_positions(v, a), compress(g->subset & ~a, a, nv)));
      } else {
        for (Subset a = 0; a < next.size(); ++a) {
          const Subset lifted = expand(a, g->subset, nv);
          next[a] = p.act_or_dead(t[lifted], STLetter::terminator(remove_positions(g->carrier, lifted),
                                                                  compress(g->subset, lifted, nv)));
        }
      }
      out.actions[{e, *g}] = element_of(v, std::move(next));
    }
  }
  return out;
}

/// Cells are the elements reachable from phi(id_[]) closed under faces;
/// lower faces come from the presentation, upper faces from terminators.
inline Hda presentation_to_hda(const Presentation& p) {
  for (const auto& e : p.elements)
    if (!e.src.empty())
      throw Error(ErrorCode::SourceNotEmpty, "element " + e.id + " has source " + to_string(e.src));
  if (!p.lower) throw Error(ErrorCode::NotCoherent, "presentation carries no lower faces");
  auto init = p.initials.find(Conclist{});
  if (init == p.initials.end()) throw Error(ErrorCode::InvalidDocument, "no initial element for []");

  std::map<std::size_t, std::vector<std::size_t>> next;
  for (const auto& [key, to] : p.actions) next[key.first].push_back(to);
  std::vector<bool> seen(p.size(), false);
  std::vector<std::size_t> order;
  std::deque<std::size_t> queue{init->second};
  seen[init->second] = true;
  RawHda raw;
  auto visit = [&](std::size_t m) {
    if (!seen[m]) {
      seen[m] = true;
      queue.push_back(m);
    }
  };
  while (!queue.empty()) {
    const std::size_t m = queue.front();
    queue.pop_front();
    order.push_back(m);
    const Conclist& u = p.elements[m].tgt;
    raw.cell(p.elements[m].id, u);
    for (std::size_t i = 0; i < u.size(); ++i) {
      auto lo = p.lower_face(m, bit(i));
      const std::size_t up = p.act_or_dead(m, STLetter::terminator(u, bit(i)));
      if (!lo || *lo == kDead || up == kDead)
        throw Error(ErrorCode::MissingFace, "cell " + p.name(m) + " has no " + (up == kDead ? "upper" : "lower") +
                                                " face at " + std::to_string(i));
      raw.faces(p.elements[m].id, i, p.elements[*lo].id, p.elements[up].id);
      visit(*lo);
      visit(up);
    }
    for (auto to : next[m]) visit(to);
  }
  PresentationReport coherence;
  detail::check_coherence(p, presentation_letters(p), coherence);
  if (!coherence.ok) throw Error(ErrorCode::NotCoherent, coherence.violations.front());
  raw.initial.push_back(p.elements[init->second].id);
  for (auto m : order)
    if (p.accepting.count(m)) raw.accepting.push_back(p.elements[m].id);
  return validate_hda(raw);
}

}  // namespace hdalang
