#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hdalang/conclist.hpp"
#include "hdalang/error.hpp"
#include "hdalang/hda.hpp"
#include "hdalang/relation.hpp"
#include "hdalang/st.hpp"

namespace hdalang {

struct StState {
  std::string id;
  Conclist label;
};

struct StTransition {
  std::size_t from = 0;
  STLetter letter;
  std::size_t to = 0;
};

/// Word automaton over starters and terminators whose states carry
/// conclists compatible with the letters' interfaces.
struct StAutomaton {
  std::vector<StState> states;
  std::vector<bool> initial;
  std::vector<bool> final;
  std::vector<StTransition> transitions;

  [[nodiscard]] std::size_t size() const { return states.size(); }

  std::size_t add_state(std::string id, Conclist label, bool is_initial = false, bool is_final = false) {
    states.push_back({std::move(id), std::move(label)});
    initial.push_back(is_initial);
    final.push_back(is_final);
    return states.size() - 1;
  }

  [[nodiscard]] std::optional<std::size_t> find(const std::string& id) const {
    for (std::size_t q = 0; q < states.size(); ++q)
      if (states[q].id == id) return q;
    return std::nullopt;
  }

  /// Letters occurring on transitions, sorted.
  [[nodiscard]] std::vector<STLetter> alphabet() const {
    std::set<STLetter> letters;
    for (const auto& t : transitions) letters.insert(t.letter);
    return {letters.begin(), letters.end()};
  }
};

/// Checks ids, sizes and that every transition respects state labels.
inline void check_st_automaton(const StAutomaton& a) {
  const std::size_t n = a.size();
  if (a.initial.size() != n || a.final.size() != n)
    throw Error(ErrorCode::InvalidDocument, "initial/final flags do not match the state count");
  std::set<std::string> ids;
  for (const auto& s : a.states)
    if (!ids.insert(s.id).second) throw Error(ErrorCode::InvalidDocument, "state id '" + s.id + "' repeated");
  for (const auto& t : a.transitions) {
    if (t.from >= n || t.to >= n) throw Error(ErrorCode::InvalidDocument, "transition endpoint out of range");
    if (t.letter.kind == LetterKind::identity)
      throw Error(ErrorCode::InvalidDocument, "identity letters are not stored as transitions");
    if (a.states[t.from].label != t.letter.source() || a.states[t.to].label != t.letter.target())
      throw Error(ErrorCode::InterfaceMismatch, "transition " + a.states[t.from].id + " -" + to_string(t.letter) +
                                                    "-> " + a.states[t.to].id + " does not respect state labels");
  }
}

/// States are the cells; a starter enters a cell from its lower face, a
/// terminator leaves it to its upper face.
inline StAutomaton hda_to_st_automaton(const Hda& h) {
  StAutomaton a;
  for (std::size_t x = 0; x < h.size(); ++x) a.add_state(h.id(x), h.type(x), h.is_initial(x), h.is_accepting(x));
  for (std::size_t x = 0; x < h.size(); ++x)
    for (Subset s = 1; s <= full_subset(h.dim(x)); ++s) {
      a.transitions.push_back({h.face_set(x, false, s), STLetter::starter(h.type(x), s), x});
      a.transitions.push_back({x, STLetter::terminator(h.type(x), s), h.face_set(x, true, s)});
    }
  return a;
}

using StateSet = std::vector<std::size_t>;

namespace detail {

inline std::map<STLetter, std::vector<std::pair<std::size_t, std::size_t>>> edges_by_letter(const StAutomaton& a) {
  std::map<STLetter, std::vector<std::pair<std::size_t, std::size_t>>> out;
  for (const auto& t : a.transitions) out[t.letter].emplace_back(t.from, t.to);
  return out;
}

}  // namespace detail

/// Subset simulation with precomputed letter edges.
class StRunner {
 public:
  explicit StRunner(const StAutomaton& a) : a_(a), edges_(detail::edges_by_letter(a)) {}

  [[nodiscard]] StateSet start(const Conclist& u) const {
    StateSet out;
    for (std::size_t q = 0; q < a_.size(); ++q)
      if (a_.initial[q] && a_.states[q].label == u) out.push_back(q);
    return out;
  }

  [[nodiscard]] StateSet step(const StateSet& s, const STLetter& letter) const {
    StateSet out;
    if (letter.kind == LetterKind::identity) {
      for (auto q : s)
        if (a_.states[q].label == letter.carrier) out.push_back(q);
      return out;
    }
    auto it = edges_.find(letter);
    if (it == edges_.end() || s.empty()) return out;
    for (auto [from, to] : it->second)
      if (std::binary_search(s.begin(), s.end(), from)) out.push_back(to);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  [[nodiscard]] StateSet run(StateSet s, const STSequence& w) const {
    s = step(s, STLetter::identity(w.start));
    for (const auto& l : w.letters) s = step(s, l);
    return s;
  }

  [[nodiscard]] bool meets_final(const StateSet& s) const {
    return std::any_of(s.begin(), s.end(), [&](std::size_t q) { return a_.final[q]; });
  }

  [[nodiscard]] bool accepts(const STSequence& w) const { return meets_final(run(start(w.start), w)); }

 private:
  const StAutomaton& a_;
  std::map<STLetter, std::vector<std::pair<std::size_t, std::size_t>>> edges_;
};

inline bool st_accepts(const StAutomaton& a, const STSequence& w) { return StRunner(a).accepts(w); }

/// Deterministic automaton over reachable subset states, one sink per
/// conclist for totality. `subsets[q]` is the set of original states behind q.
struct Determinized {
  StAutomaton automaton;
  std::vector<StateSet> subsets;
  std::map<Conclist, std::size_t> initial_of;
};

inline Determinized determinize_reachable(const StAutomaton& a) {
  StRunner runner(a);
  const auto letters = a.alphabet();
  std::set<Conclist> objects;
  for (const auto& s : a.states) objects.insert(s.label);
  for (const auto& l : letters) {
    objects.insert(l.source());
    objects.insert(l.target());
  }
  std::map<Conclist, std::vector<const STLetter*>> by_source;
  for (const auto& l : letters) by_source[l.source()].push_back(&l);

  Determinized d;
  std::map<std::pair<Conclist, StateSet>, std::size_t> index;
  std::deque<std::size_t> queue;
  auto state_of = [&](const Conclist& u, const StateSet& s) {
    auto key = std::pair{u, s};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    std::string id = "{";
    for (std::size_t k = 0; k < s.size(); ++k) id += (k ? "," : "") + a.states[s[k]].id;
    id += "}";
    if (s.empty()) id += to_string(u);
    const std::size_t q = d.automaton.add_state(id, u, false, runner.meets_final(s));
    d.subsets.push_back(s);
    index.emplace(std::move(key), q);
    queue.push_back(q);
    return q;
  };

  for (const auto& u : objects) {
    const std::size_t q = state_of(u, runner.start(u));
    d.automaton.initial[q] = true;
    d.initial_of[u] = q;
  }
  while (!queue.empty()) {
    const std::size_t q = queue.front();
    queue.pop_front();
    const Conclist u = d.automaton.states[q].label;
    const StateSet s = d.subsets[q];
    for (const STLetter* l : by_source[u]) {
      const std::size_t to = state_of(l->target(), runner.step(s, *l));
      d.automaton.transitions.push_back({q, *l, to});
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Suffix equivalence

struct SuffixComparison {
  bool equivalent = true;
  std::optional<STSequence> witness;  ///< shortest sparse word accepted from exactly one side
};

/// Compares the sets of sparse words accepted from two states by a search
/// over pairs of subset states that remembers the kind of the last letter.
inline SuffixComparison sparse_suffix_equivalent(const StAutomaton& a, std::size_t q1, std::size_t q2) {
  if (a.states[q1].label != a.states[q2].label)
    throw Error(ErrorCode::LabelMismatch, "states " + a.states[q1].id + " and " + a.states[q2].id +
                                              " carry different conclists");
  StRunner runner(a);
  std::map<Conclist, std::vector<STLetter>> by_source;
  for (const auto& l : a.alphabet()) by_source[l.source()].push_back(l);

  struct Node {
    Conclist object;
    StateSet left;
    StateSet right;
    LetterKind last;
    auto operator<=>(const Node&) const = default;
  };
  std::vector<Node> nodes{{a.states[q1].label, {q1}, {q2}, LetterKind::identity}};
  std::vector<std::pair<std::size_t, STLetter>> back{{0, STLetter::identity({})}};
  std::set<Node> seen{nodes[0]};
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Node node = nodes[k];
    if (runner.meets_final(node.left) != runner.meets_final(node.right)) {
      STSequence w{a.states[q1].label, {}};
      for (std::size_t at = k; at != 0; at = back[at].first) w.letters.push_back(back[at].second);
      std::reverse(w.letters.begin(), w.letters.end());
      return {false, w};
    }
    if (node.left.empty() && node.right.empty()) continue;
    for (const auto& l : by_source[node.object]) {
      if (l.kind == node.last) continue;
      Node next{l.target(), runner.step(node.left, l), runner.step(node.right, l), l.kind};
      if (!seen.insert(next).second) continue;
      nodes.push_back(std::move(next));
      back.emplace_back(k, l);
    }
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Monoids

/// Finite monoid given by its multiplication table; element 0 is the unit.
struct FiniteMonoid {
  std::vector<std::vector<std::size_t>> table;
  std::size_t unit = 0;

  [[nodiscard]] std::size_t size() const { return table.size(); }
  [[nodiscard]] std::size_t mul(std::size_t x, std::size_t y) const { return table[x][y]; }
};

/// Transformation monoid of a deterministic automaton: each element is a map
/// on states, with `size()` standing for "undefined". Generators are the
/// letters of the alphabet.
struct TransitionMonoid {
  FiniteMonoid monoid;
  std::vector<std::vector<std::size_t>> transformations;
  std::vector<STSequence> words;  ///< a generating word per element (start left empty)
};

inline TransitionMonoid transition_monoid(const StAutomaton& a) {
  const std::size_t n = a.size();
  std::map<STLetter, std::vector<std::size_t>> gens;
  for (const auto& l : a.alphabet()) gens[l].assign(n + 1, n);
  for (const auto& t : a.transitions) {
    auto& f = gens[t.letter];
    if (f[t.from] != n && f[t.from] != t.to)
      throw Error(ErrorCode::InvalidDocument, "automaton is not deterministic at state " + a.states[t.from].id);
    f[t.from] = t.to;
  }

  TransitionMonoid m;
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::size_t> id(n + 1);
  for (std::size_t q = 0; q <= n; ++q) id[q] = q;
  index.emplace(id, 0);
  m.transformations.push_back(id);
  m.words.push_back({});
  auto then = [&](const std::vector<std::size_t>& f, const std::vector<std::size_t>& g) {
    std::vector<std::size_t> out(n + 1);
    for (std::size_t q = 0; q <= n; ++q) out[q] = g[f[q]];
    return out;
  };
  for (std::size_t k = 0; k < m.transformations.size(); ++k)
    for (const auto& [letter, g] : gens) {
      auto next = then(m.transformations[k], g);
      if (index.count(next)) continue;
      index.emplace(next, m.transformations.size());
      STSequence w = m.words[k];
      w.letters.push_back(letter);
      m.transformations.push_back(std::move(next));
      m.words.push_back(std::move(w));
    }
  const std::size_t size = m.transformations.size();
  m.monoid.table.assign(size, std::vector<std::size_t>(size, 0));
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y)
      m.monoid.table[x][y] = index.at(then(m.transformations[x], m.transformations[y]));
  return m;
}

struct AperiodicityReport {
  bool aperiodic = true;
  std::size_t stabilization = 1;  ///< smallest n with x^n = x^(n+1) for every element
  std::optional<std::size_t> witness;
  std::size_t witness_index = 0;
  std::size_t witness_period = 0;
};

inline AperiodicityReport is_aperiodic_monoid(const FiniteMonoid& m) {
  AperiodicityReport r;
  for (std::size_t x = 0; x < m.size(); ++x) {
    auto pd = power_data(x, [&](std::size_t a, std::size_t b) { return m.mul(a, b); });
    if (pd.period == 1) {
      r.stabilization = std::max(r.stabilization, pd.index);
    } else if (r.aperiodic) {
      r.aperiodic = false;
      r.witness = x;
      r.witness_index = pd.index;
      r.witness_period = pd.period;
    }
  }
  return r;
}

/// Checks the monoid laws over the whole table.
inline bool check_monoid_laws(const FiniteMonoid& m) {
  for (std::size_t x = 0; x < m.size(); ++x) {
    if (m.mul(m.unit, x) != x || m.mul(x, m.unit) != x) return false;
    for (std::size_t y = 0; y < m.size(); ++y)
      for (std::size_t z = 0; z < m.size(); ++z)
        if (m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z))) return false;
  }
  return true;
}

struct StCounterReport {
  bool counter_free = true;
  std::size_t semigroup_size = 0;
  std::optional<STSequence> witness;
  std::size_t period = 0;
};

/// Counter-freeness of a possibly nondeterministic automaton: every relation
/// on states induced by a nonempty word must have eventually constant powers.
inline StCounterReport is_counter_free_st_automaton(const StAutomaton& a) {
  const std::size_t n = a.size();
  std::map<STLetter, Relation> gens;
  for (const auto& l : a.alphabet()) gens.emplace(l, Relation(n));
  for (const auto& t : a.transitions) gens.at(t.letter).set(t.from, t.to);

  std::map<Relation, std::size_t> index;
  std::vector<Relation> elements;
  std::vector<std::pair<std::size_t, STLetter>> back;
  for (const auto& [letter, r] : gens)
    if (index.emplace(r, elements.size()).second) {
      elements.push_back(r);
      back.emplace_back(SIZE_MAX, letter);
    }
  for (std::size_t k = 0; k < elements.size(); ++k)
    for (const auto& [letter, g] : gens) {
      Relation next = elements[k].then(g);
      if (!index.emplace(next, elements.size()).second) continue;
      elements.push_back(std::move(next));
      back.emplace_back(k, letter);
    }

  StCounterReport report;
  report.semigroup_size = elements.size();
  for (std::size_t k = 0; k < elements.size(); ++k) {
    auto pd = power_data(elements[k], [](const Relation& x, const Relation& y) { return x.then(y); });
    if (pd.period == 1) continue;
    report.counter_free = false;
    report.period = pd.period;
    STSequence w;
    for (std::size_t at = k; at != SIZE_MAX; at = back[at].first) w.letters.push_back(back[at].second);
    std::reverse(w.letters.begin(), w.letters.end());
    w.start = w.letters.front().source();
    report.witness = w;
    break;
  }
  return report;
}

}  // namespace hdalang
