#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hdalang/conclist.hpp"
#include "hdalang/enumerate.hpp"
#include "hdalang/error.hpp"
#include "hdalang/order.hpp"
#include "hdalang/relation.hpp"
#include "hdalang/st.hpp"

namespace hdalang {

struct Cell {
  std::string id;
  Conclist type;
};

/// HDA document before validation. Faces are given per single event,
/// keyed by the event's position in the cell's conclist.
struct RawHda {
  std::vector<Cell> cells;
  std::map<std::string, std::map<std::size_t, std::string>> lower;
  std::map<std::string, std::map<std::size_t, std::string>> upper;
  std::vector<std::string> initial;
  std::vector<std::string> accepting;

  RawHda& cell(std::string id, Conclist type) {
    cells.push_back({std::move(id), std::move(type)});
    return *this;
  }
  RawHda& faces(const std::string& x, std::size_t i, std::string lo, std::string up) {
    lower[x][i] = std::move(lo);
    upper[x][i] = std::move(up);
    return *this;
  }
};

using CellSet = std::vector<std::size_t>;

class Hda;
Hda validate_hda(const RawHda& raw);

/// Validated HDA: every cell has both faces for every event and the
/// precubical identities hold, so faces along subsets are well defined.
class Hda {
 public:
  Hda() = default;

  [[nodiscard]] std::size_t size() const { return cells_.size(); }
  [[nodiscard]] const std::string& id(std::size_t x) const { return cells_[x].id; }
  [[nodiscard]] const Conclist& type(std::size_t x) const { return cells_[x].type; }
  [[nodiscard]] std::size_t dim(std::size_t x) const { return cells_[x].type.size(); }
  [[nodiscard]] bool is_initial(std::size_t x) const { return initial_[x]; }
  [[nodiscard]] bool is_accepting(std::size_t x) const { return accepting_[x]; }

  /// Single-event face at position i: lower if `upper` is false.
  [[nodiscard]] std::size_t face(std::size_t x, bool upper, std::size_t i) const {
    return upper ? upper_[x][i] : lower_[x][i];
  }

  /// Face along a set of positions, composed from the highest position down
  /// so that the remaining positions keep their indices.
  [[nodiscard]] std::size_t face_set(std::size_t x, bool upper, Subset a) const {
    for (std::size_t i = dim(x); i-- > 0;)
      if (has(a, i)) x = face(x, upper, i);
    return x;
  }

  [[nodiscard]] std::optional<std::size_t> find(const std::string& cell_id) const {
    auto it = index_.find(cell_id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Conclists that occur as cell types, sorted.
  [[nodiscard]] const std::vector<Conclist>& objects() const { return objects_; }
  [[nodiscard]] const CellSet& cells_of(const Conclist& u) const {
    static const CellSet none;
    auto it = by_type_.find(u);
    return it == by_type_.end() ? none : it->second;
  }
  /// Position of x within cells_of(type(x)).
  [[nodiscard]] std::size_t local_index(std::size_t x) const { return local_[x]; }

  [[nodiscard]] CellSet initial_cells() const { return collect(initial_); }
  [[nodiscard]] CellSet accepting_cells() const { return collect(accepting_); }

  [[nodiscard]] RawHda raw() const {
    RawHda r;
    for (std::size_t x = 0; x < size(); ++x) {
      r.cells.push_back(cells_[x]);
      for (std::size_t i = 0; i < dim(x); ++i) r.faces(id(x), i, id(lower_[x][i]), id(upper_[x][i]));
      if (initial_[x]) r.initial.push_back(id(x));
      if (accepting_[x]) r.accepting.push_back(id(x));
    }
    return r;
  }

 private:
  friend Hda validate_hda(const RawHda& raw);

  [[nodiscard]] CellSet collect(const std::vector<bool>& mask) const {
    CellSet out;
    for (std::size_t x = 0; x < mask.size(); ++x)
      if (mask[x]) out.push_back(x);
    return out;
  }

  std::vector<Cell> cells_;
  std::vector<std::vector<std::size_t>> lower_;
  std::vector<std::vector<std::size_t>> upper_;
  std::vector<bool> initial_;
  std::vector<bool> accepting_;
  std::map<std::string, std::size_t> index_;
  std::vector<Conclist> objects_;
  std::map<Conclist, CellSet> by_type_;
  std::vector<std::size_t> local_;
};

inline Hda validate_hda(const RawHda& raw) {
  Hda h;
  const std::size_t n = raw.cells.size();
  h.cells_ = raw.cells;
  for (std::size_t x = 0; x < n; ++x)
    if (!h.index_.emplace(raw.cells[x].id, x).second)
      throw Error(ErrorCode::InvalidDocument, "cell id '" + raw.cells[x].id + "' repeated");
  auto lookup = [&](const std::string& id) {
    auto it = h.index_.find(id);
    if (it == h.index_.end()) throw Error(ErrorCode::InvalidDocument, "no cell with id '" + id + "'");
    return it->second;
  };

  h.lower_.assign(n, {});
  h.upper_.assign(n, {});
  for (const auto* table : {&raw.lower, &raw.upper}) {
    const bool is_upper = table == &raw.upper;
    const char* name = is_upper ? "upper" : "lower";
    for (const auto& [cell_id, by_index] : *table) {
      const std::size_t x = lookup(cell_id);
      for (const auto& [i, target] : by_index) {
        if (i >= h.dim(x))
          throw Error(ErrorCode::FaceTypeMismatch, std::string(name) + " face " + std::to_string(i) + " of " +
                                                       cell_id + " is outside its conclist " + to_string(h.type(x)));
        lookup(target);
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (const bool is_upper : {false, true}) {
      const auto& table = is_upper ? raw.upper : raw.lower;
      auto& out = is_upper ? h.upper_[x] : h.lower_[x];
      const char* name = is_upper ? "upper" : "lower";
      auto it = table.find(h.id(x));
      for (std::size_t i = 0; i < h.dim(x); ++i) {
        if (it == table.end() || !it->second.count(i))
          throw Error(ErrorCode::MissingFace,
                      "cell " + h.id(x) + " has no " + name + " face for event " + std::to_string(i));
        const std::size_t y = lookup(it->second.at(i));
        const Conclist expected = remove_positions(h.type(x), bit(i));
        if (h.type(y) != expected)
          throw Error(ErrorCode::FaceTypeMismatch, std::string(name) + " face " + std::to_string(i) + " of " + h.id(x) +
                                                       " is " + h.id(y) + " of type " + to_string(h.type(y)) +
                                                       ", expected " + to_string(expected));
        out.push_back(y);
      }
    }
  }

  // d^mu_i d^nu_j = d^nu_{j-1} d^mu_i for i < j
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t j = 0; j < h.dim(x); ++j)
      for (std::size_t i = 0; i < j; ++i)
        for (const bool mu : {false, true})
          for (const bool nu : {false, true}) {
            const std::size_t left = h.face(h.face(x, nu, j), mu, i);
            const std::size_t right = h.face(h.face(x, mu, i), nu, j - 1);
            if (left != right)
              throw Error(ErrorCode::PrecubicalViolation,
                          "square at " + h.id(x) + ": " + (nu ? "upper" : "lower") + " face " + std::to_string(j) +
                              " then " + (mu ? "upper" : "lower") + " face " + std::to_string(i) + " gives " +
                              h.id(left) + ", the other order gives " + h.id(right));
          }

  h.initial_.assign(n, false);
  h.accepting_.assign(n, false);
  for (const auto& id : raw.initial) h.initial_[lookup(id)] = true;
  for (const auto& id : raw.accepting) h.accepting_[lookup(id)] = true;

  h.local_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    auto& bucket = h.by_type_[h.type(x)];
    h.local_[x] = bucket.size();
    bucket.push_back(x);
  }
  for (const auto& [u, cells] : h.by_type_) h.objects_.push_back(u);
  return h;
}

// ---------------------------------------------------------------------------
// Paths

struct PathStep {
  bool up = true;  ///< start events (lower face) or end events (upper face)
  Subset subset = 0;
  std::size_t cell = 0;  ///< cell reached by the step
};

struct Path {
  std::size_t start = 0;
  std::vector<PathStep> steps;

  [[nodiscard]] std::size_t finish() const { return steps.empty() ? start : steps.back().cell; }
};

inline void validate_path(const Hda& h, const Path& path) {
  if (path.start >= h.size()) throw Error(ErrorCode::InvalidPath, "start cell out of range");
  std::size_t at = path.start;
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    const auto& s = path.steps[k];
    const std::string where = "step " + std::to_string(k);
    if (s.cell >= h.size()) throw Error(ErrorCode::InvalidPath, where + ": cell out of range");
    if (s.subset == 0) throw Error(ErrorCode::InvalidPath, where + ": empty event set");
    if (s.up) {
      if (s.subset >> h.dim(s.cell) != 0 || h.face_set(s.cell, false, s.subset) != at)
        throw Error(ErrorCode::InvalidPath, where + ": " + h.id(at) + " is not that lower face of " + h.id(s.cell));
    } else {
      if (s.subset >> h.dim(at) != 0 || h.face_set(at, true, s.subset) != s.cell)
        throw Error(ErrorCode::InvalidPath, where + ": " + h.id(s.cell) + " is not that upper face of " + h.id(at));
    }
    at = s.cell;
  }
}

inline bool is_accepting_path(const Hda& h, const Path& path) {
  return h.is_initial(path.start) && h.is_accepting(path.finish());
}

/// The ST-letters read along a path.
inline STSequence path_sequence(const Hda& h, const Path& path) {
  STSequence w{h.type(path.start), {}};
  std::size_t at = path.start;
  for (const auto& s : path.steps) {
    if (s.up)
      w.letters.push_back(STLetter::starter(h.type(s.cell), s.subset));
    else
      w.letters.push_back(STLetter::terminator(h.type(at), s.subset));
    at = s.cell;
  }
  return w;
}

inline Pomset ev_path(const Hda& h, const Path& path) {
  validate_path(h, path);
  return glue_st(path_sequence(h, path));
}

/// Merges consecutive steps in the same direction; endpoints and ev are kept.
inline Path normalize_path(const Hda& h, const Path& path) {
  Path out{path.start, {}};
  std::size_t before_last = path.start;
  for (const auto& s : path.steps) {
    if (!out.steps.empty() && out.steps.back().up == s.up) {
      PathStep& prev = out.steps.back();
      if (s.up)
        prev.subset = s.subset | expand(prev.subset, s.subset, h.dim(s.cell));
      else
        prev.subset = prev.subset | expand(s.subset, prev.subset, h.dim(before_last));
      prev.cell = s.cell;
      continue;
    }
    before_last = out.finish();
    out.steps.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subset simulation

/// Image of a set of cells under one letter. Starters move to every cell of
/// the letter's carrier whose lower face lies in the set; terminators take
/// upper faces; identities keep the cells of the right type.
inline CellSet step(const Hda& h, const CellSet& cells, const STLetter& letter) {
  CellSet out;
  switch (letter.kind) {
    case LetterKind::starter: {
      std::vector<char> in(h.size(), 0);
      for (auto c : cells) in[c] = 1;
      for (auto x : h.cells_of(letter.carrier))
        if (in[h.face_set(x, false, letter.subset)]) out.push_back(x);
      return out;
    }
    case LetterKind::terminator:
      for (auto c : cells)
        if (h.type(c) == letter.carrier) out.push_back(h.face_set(c, true, letter.subset));
      break;
    case LetterKind::identity:
      for (auto c : cells)
        if (h.type(c) == letter.carrier) out.push_back(c);
      return out;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline CellSet run(const Hda& h, CellSet cells, const STSequence& w) {
  cells = step(h, cells, STLetter::identity(w.start));
  for (const auto& l : w.letters) {
    if (cells.empty()) break;
    cells = step(h, cells, l);
  }
  return cells;
}

inline bool meets_accepting(const Hda& h, const CellSet& cells) {
  return std::any_of(cells.begin(), cells.end(), [&](std::size_t x) { return h.is_accepting(x); });
}

/// Is P the event pomset of some accepting path?
inline bool accepts(const Hda& h, const Pomset& p) {
  return meets_accepting(h, run(h, h.initial_cells(), st_decompose_sparse(p)));
}

/// d(x, P): end cells of paths from x whose event pomset is P.
inline CellSet reach_set(const Hda& h, std::size_t x, const Pomset& p) {
  const STSequence w = st_decompose_sparse(p);
  if (h.type(x) != w.start)
    throw Error(ErrorCode::InterfaceMismatch,
                "cell " + h.id(x) + " has type " + to_string(h.type(x)) + ", pomset source is " + to_string(w.start));
  return run(h, {x}, w);
}

/// Every accepted pomset with at most `max_events` events, found by walking
/// sparse letter sequences with their subset states.
inline PomsetSet enumerate_language(const Hda& h, std::size_t max_events) {
  check_event_bound(max_events);
  PomsetSet out;
  STSequence w;

  auto walk = [&](auto&& self, const CellSet& cells, std::size_t events, LetterKind last) -> void {
    if (meets_accepting(h, cells)) insert(out, glue_st(w));
    const Conclist here = w.finish();
    if (last != LetterKind::starter) {
      std::set<STLetter> letters;
      std::vector<char> in(h.size(), 0);
      for (auto c : cells) in[c] = 1;
      for (std::size_t x = 0; x < h.size(); ++x)
        for (Subset a = 1; a <= full_subset(h.dim(x)); ++a)
          if (events + static_cast<std::size_t>(cardinality(a)) <= max_events && in[h.face_set(x, false, a)])
            letters.insert(STLetter::starter(h.type(x), a));
      for (const auto& l : letters) {
        w.letters.push_back(l);
        self(self, step(h, cells, l), events + static_cast<std::size_t>(cardinality(l.subset)), LetterKind::starter);
        w.letters.pop_back();
      }
    }
    if (last != LetterKind::terminator) {
      for (Subset a = 1; a <= full_subset(here.size()); ++a) {
        STLetter l = STLetter::terminator(here, a);
        w.letters.push_back(l);
        self(self, step(h, cells, l), events, LetterKind::terminator);
        w.letters.pop_back();
      }
    }
  };

  std::set<Conclist> starts;
  for (auto x : h.initial_cells())
    if (h.dim(x) <= max_events) starts.insert(h.type(x));
  for (const auto& u : starts) {
    w = STSequence{u, {}};
    walk(walk, step(h, h.initial_cells(), STLetter::identity(u)), u.size(), LetterKind::identity);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Letter relations and counter-freeness

/// Every starter and terminator that moves between cells of h.
inline std::vector<STLetter> hda_letters(const Hda& h) {
  std::vector<STLetter> out;
  for (const auto& u : h.objects())
    for (Subset a = 1; a <= full_subset(u.size()); ++a) {
      out.push_back(STLetter::starter(u, a));
      out.push_back(STLetter::terminator(u, a));
    }
  return out;
}

/// t(g) as a relation X[src g] x X[tgt g] on local indices.
inline Relation letter_relation(const Hda& h, const STLetter& letter) {
  const CellSet& from = h.cells_of(letter.source());
  const CellSet& to = h.cells_of(letter.target());
  Relation r(from.size(), to.size());
  switch (letter.kind) {
    case LetterKind::starter:
      for (auto x : h.cells_of(letter.carrier)) r.set(h.local_index(h.face_set(x, false, letter.subset)), h.local_index(x));
      break;
    case LetterKind::terminator:
      for (auto x : h.cells_of(letter.carrier)) r.set(h.local_index(x), h.local_index(h.face_set(x, true, letter.subset)));
      break;
    case LetterKind::identity:
      for (std::size_t i = 0; i < from.size(); ++i) r.set(i, i);
      break;
  }
  return r;
}

/// Stabilization data of the powers x, x^2, ...: x^index = x^(index+period).
struct PowerData {
  std::size_t index = 1;
  std::size_t period = 1;
};

template <typename T, typename Mul>
PowerData power_data(const T& x, Mul mul) {
  std::vector<T> powers{x};
  while (true) {
    T next = mul(powers.back(), x);
    for (std::size_t i = 0; i < powers.size(); ++i)
      if (powers[i] == next) return {i + 1, powers.size() - i};
    powers.push_back(std::move(next));
  }
}

struct CounterWitness {
  Conclist object;
  STSequence word;  ///< a pomset P : object -> object with periodic d(-, P^n)
  std::size_t index = 0;
  std::size_t period = 0;
  CellSet oscillating;  ///< cells x whose d(x, P^n) never settles
};

struct CounterFreeReport {
  bool counter_free = true;
  std::size_t stabilization = 1;  ///< largest n with x^n = x^(n+1) over aperiodic endomorphisms
  std::size_t endomorphisms = 0;
  std::vector<CounterWitness> witnesses;  ///< at most one per object
};

namespace detail {

struct RelationNode {
  Conclist object;
  Relation relation;
  auto operator<=>(const RelationNode&) const = default;
};

}  // namespace detail

/// Explores, for each object U, every relation t(P) with S_P = U and checks
/// the power sequence of each endomorphism. Generating words are recovered
/// from the search tree.
inline CounterFreeReport is_counter_free_hda(const Hda& h) {
  CounterFreeReport report;
  std::map<Conclist, std::vector<std::pair<STLetter, Relation>>> by_source;
  for (const auto& l : hda_letters(h)) by_source[l.source()].emplace_back(l, letter_relation(h, l));

  for (const auto& u : h.objects()) {
    std::set<detail::RelationNode> seen;
    std::vector<detail::RelationNode> nodes;
    std::deque<std::size_t> queue;
    nodes.push_back({u, Relation::identity(h.cells_of(u).size())});
    seen.insert(nodes[0]);
    queue.push_back(0);
    std::vector<std::size_t> from(1, 0);
    std::vector<STLetter> via(1, STLetter::identity(u));
    bool witnessed = false;

    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      const detail::RelationNode node = nodes[k];
      if (node.object == u) {
        ++report.endomorphisms;
        auto pd = power_data(node.relation, [](const Relation& a, const Relation& b) { return a.then(b); });
        if (pd.period == 1) {
          report.stabilization = std::max(report.stabilization, pd.index);
        } else if (!witnessed) {
          witnessed = true;
          report.counter_free = false;
          CounterWitness wit{u, {u, {}}, pd.index, pd.period, {}};
          for (std::size_t at = k; at != 0; at = from[at]) wit.word.letters.push_back(via[at]);
          std::reverse(wit.word.letters.begin(), wit.word.letters.end());
          wit.word = normalize(wit.word);
          Relation power = node.relation;
          std::vector<Relation> cycle;
          for (std::size_t i = 1; i < pd.index; ++i) power = power.then(node.relation);
          for (std::size_t i = 0; i < pd.period; ++i) {
            cycle.push_back(power);
            power = power.then(node.relation);
          }
          const CellSet& cells = h.cells_of(u);
          for (std::size_t row = 0; row < cells.size(); ++row)
            for (const auto& c : cycle)
              if (c.row(row) != cycle[0].row(row)) {
                wit.oscillating.push_back(cells[row]);
                break;
              }
          report.witnesses.push_back(std::move(wit));
        }
      }
      auto it = by_source.find(node.object);
      if (it == by_source.end()) continue;
      for (const auto& [letter, rel] : it->second) {
        detail::RelationNode next{letter.target(), node.relation.then(rel)};
        if (!seen.insert(next).second) continue;
        nodes.push_back(next);
        from.push_back(k);
        via.push_back(letter);
        queue.push_back(nodes.size() - 1);
      }
    }
  }
  return report;
}

/// Structural isomorphism of HDAs: a type-preserving bijection of cells that
/// commutes with all faces and preserves initial and accepting cells.
inline std::optional<std::vector<std::size_t>> find_isomorphism(const Hda& g, const Hda& h) {
  if (g.size() != h.size() || g.objects() != h.objects()) return std::nullopt;
  for (const auto& u : g.objects())
    if (g.cells_of(u).size() != h.cells_of(u).size()) return std::nullopt;
  const std::size_t n = g.size();
  // assign high-dimensional cells first so faces are forced early
  std::vector<std::size_t> order(n);
  for (std::size_t x = 0; x < n; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.dim(a) > g.dim(b); });
  std::vector<std::optional<std::size_t>> map(n);
  std::vector<bool> used(n, false);

  auto assign = [&](auto&& self, std::size_t x, std::size_t y, std::vector<std::size_t>& trail) -> bool {
    if (map[x]) return *map[x] == y;
    if (used[y] || g.type(x) != h.type(y) || g.is_initial(x) != h.is_initial(y) ||
        g.is_accepting(x) != h.is_accepting(y))
      return false;
    map[x] = y;
    used[y] = true;
    trail.push_back(x);
    for (std::size_t i = 0; i < g.dim(x); ++i)
      for (const bool up : {false, true})
        if (!self(self, g.face(x, up, i), h.face(y, up, i), trail)) return false;
    return true;
  };
  auto undo = [&](const std::vector<std::size_t>& trail) {
    for (auto x : trail) {
      used[*map[x]] = false;
      map[x].reset();
    }
  };

  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    const std::size_t x = order[k];
    if (map[x]) return self(self, k + 1);
    for (auto y : h.cells_of(g.type(x))) {
      std::vector<std::size_t> trail;
      if (assign(assign, x, y, trail) && self(self, k + 1)) return true;
      undo(trail);
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  std::vector<std::size_t> out(n);
  for (std::size_t x = 0; x < n; ++x) out[x] = *map[x];
  return out;
}

}  // namespace hdalang
