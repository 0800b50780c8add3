#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdalang/conclist.hpp"
#include "hdalang/error.hpp"
#include "hdalang/relation.hpp"

namespace hdalang {

/// Unvalidated pomset data, indexed by event position.
struct PomsetParts {
  std::vector<std::string> ids;
  std::vector<Label> labels;
  Relation precedence;
  Relation event_order;
  std::vector<bool> sources;
  std::vector<bool> targets;

  explicit PomsetParts(std::size_t n = 0)
      : ids(n), labels(n), precedence(n), event_order(n), sources(n, false), targets(n, false) {
    for (std::size_t i = 0; i < n; ++i) ids[i] = "e" + std::to_string(i);
  }
};

/// Pomset document before validation: events are referred to by id.
struct RawPomset {
  std::vector<std::pair<std::string, Label>> events;
  std::vector<std::pair<std::string, std::string>> precedence;
  std::vector<std::pair<std::string, std::string>> event_order;
  std::vector<std::string> sources;
  std::vector<std::string> targets;
};

class Pomset;
Pomset validate_ipomset(PomsetParts parts);

namespace detail {
Pomset assemble(PomsetParts parts);
}

/// Interval pomset with interfaces. Immutable once built; the precedence is
/// stored transitively closed and the event order only on pairs that are
/// incomparable for precedence.
class Pomset {
 public:
  Pomset() = default;

  [[nodiscard]] std::size_t size() const { return parts_.labels.size(); }
  [[nodiscard]] bool empty() const { return size() == 0; }

  [[nodiscard]] const std::string& id(std::size_t i) const { return parts_.ids[i]; }
  [[nodiscard]] const Label& label(std::size_t i) const { return parts_.labels[i]; }
  [[nodiscard]] const std::vector<Label>& labels() const { return parts_.labels; }
  [[nodiscard]] const std::vector<std::string>& ids() const { return parts_.ids; }

  [[nodiscard]] bool precedes(std::size_t i, std::size_t j) const { return parts_.precedence.get(i, j); }
  [[nodiscard]] bool ordered(std::size_t i, std::size_t j) const { return parts_.event_order.get(i, j); }
  [[nodiscard]] bool comparable(std::size_t i, std::size_t j) const { return precedes(i, j) || precedes(j, i); }
  [[nodiscard]] bool concurrent(std::size_t i, std::size_t j) const { return i != j && !comparable(i, j); }

  [[nodiscard]] bool is_source(std::size_t i) const { return parts_.sources[i]; }
  [[nodiscard]] bool is_target(std::size_t i) const { return parts_.targets[i]; }

  [[nodiscard]] const Relation& precedence() const { return parts_.precedence; }
  [[nodiscard]] const Relation& event_order() const { return parts_.event_order; }
  [[nodiscard]] const PomsetParts& parts() const { return parts_; }

  /// Source interface events, listed in event order.
  [[nodiscard]] std::vector<std::size_t> sources() const { return sorted_by_event_order(parts_.sources); }
  [[nodiscard]] std::vector<std::size_t> targets() const { return sorted_by_event_order(parts_.targets); }

  [[nodiscard]] Conclist source_conclist() const { return labels_of(sources()); }
  [[nodiscard]] Conclist target_conclist() const { return labels_of(targets()); }

  /// Pairwise concurrent events in event order (the order is total on them).
  [[nodiscard]] std::vector<std::size_t> in_event_order(std::vector<std::size_t> events) const {
    std::vector<std::size_t> rank(events.size(), 0);
    for (std::size_t a = 0; a < events.size(); ++a)
      for (std::size_t b = 0; b < events.size(); ++b)
        if (ordered(events[b], events[a])) ++rank[a];
    std::vector<std::size_t> idx(events.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
    std::vector<std::size_t> out;
    out.reserve(events.size());
    for (auto k : idx) out.push_back(events[k]);
    return out;
  }

  [[nodiscard]] Conclist labels_of(const std::vector<std::size_t>& events) const {
    Conclist out;
    out.reserve(events.size());
    for (auto e : events) out.push_back(label(e));
    return out;
  }

  [[nodiscard]] std::optional<std::size_t> find(const std::string& event_id) const {
    auto it = std::find(parts_.ids.begin(), parts_.ids.end(), event_id);
    if (it == parts_.ids.end()) return std::nullopt;
    return static_cast<std::size_t>(it - parts_.ids.begin());
  }

 private:
  friend Pomset detail::assemble(PomsetParts parts);

  [[nodiscard]] std::vector<std::size_t> sorted_by_event_order(const std::vector<bool>& mask) const {
    std::vector<std::size_t> evs;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) evs.push_back(i);
    return in_event_order(std::move(evs));
  }

  PomsetParts parts_;
};

namespace detail {

inline Pomset assemble(PomsetParts parts) {
  Pomset p;
  p.parts_ = std::move(parts);
  return p;
}

inline std::string event_name(const PomsetParts& parts, std::size_t i) {
  return parts.ids[i] + ":" + parts.labels[i];
}

}  // namespace detail

/// Validates the four iiPomset invariants and returns the normalized value:
/// precedence transitively closed, event order restricted to incomparable pairs.
inline Pomset validate_ipomset(PomsetParts parts) {
  const std::size_t n = parts.labels.size();
  if (parts.ids.size() != n || parts.sources.size() != n || parts.targets.size() != n ||
      parts.precedence.rows() != n || parts.event_order.rows() != n)
    throw Error(ErrorCode::InvalidDocument, "inconsistent pomset part sizes");

  {
    std::vector<std::string> sorted = parts.ids;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw Error(ErrorCode::DuplicateEvent, "event id '" + *dup + "' repeated");
  }

  parts.precedence.transitive_closure();
  for (std::size_t i = 0; i < n; ++i)
    if (parts.precedence.get(i, i))
      throw Error(ErrorCode::PrecedenceCyclic, "precedence cycle through " + detail::event_name(parts, i));

  const Relation& lt = parts.precedence;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!lt.get(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          if (!lt.get(c, d) || lt.get(a, d) || lt.get(c, b)) continue;
          throw Error(ErrorCode::NotIntervalOrder,
                      "2+2 pattern " + detail::event_name(parts, a) + "<" + detail::event_name(parts, b) + ", " +
                          detail::event_name(parts, c) + "<" + detail::event_name(parts, d));
        }
    }

  Relation closure = parts.event_order;
  closure.transitive_closure();
  for (std::size_t i = 0; i < n; ++i)
    if (closure.get(i, i))
      throw Error(ErrorCode::EventOrderCyclic, "event order cycle through " + detail::event_name(parts, i));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lt.get(i, j) || lt.get(j, i)) parts.event_order.set(i, j, false);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (lt.get(i, j) || lt.get(j, i)) continue;
      if (!parts.event_order.get(i, j) && !parts.event_order.get(j, i))
        throw Error(ErrorCode::EventOrderIncomplete, "concurrent events " + detail::event_name(parts, i) + " and " +
                                                         detail::event_name(parts, j) + " are not event-ordered");
    }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!lt.get(j, i)) continue;
      if (parts.sources[i])
        throw Error(ErrorCode::InterfaceNotExtremal, "source event " + detail::event_name(parts, i) + " is preceded by " +
                                                         detail::event_name(parts, j));
      if (parts.targets[j])
        throw Error(ErrorCode::InterfaceNotExtremal, "target event " + detail::event_name(parts, j) + " precedes " +
                                                         detail::event_name(parts, i));
    }

  return detail::assemble(std::move(parts));
}

/// Validates a pomset given by event ids.
inline Pomset validate_ipomset(const RawPomset& raw) {
  PomsetParts parts(raw.events.size());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < raw.events.size(); ++i) {
    parts.ids[i] = raw.events[i].first;
    parts.labels[i] = raw.events[i].second;
    if (!index.emplace(raw.events[i].first, i).second)
      throw Error(ErrorCode::DuplicateEvent, "event id '" + raw.events[i].first + "' repeated");
  }
  auto lookup = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorCode::UnknownEvent, "no event with id '" + id + "'");
    return it->second;
  };
  for (const auto& [a, b] : raw.precedence) parts.precedence.set(lookup(a), lookup(b));
  for (const auto& [a, b] : raw.event_order) parts.event_order.set(lookup(a), lookup(b));
  for (const auto& s : raw.sources) parts.sources[lookup(s)] = true;
  for (const auto& t : raw.targets) parts.targets[lookup(t)] = true;
  return validate_ipomset(std::move(parts));
}

/// Convenience constructor from event positions; ids are e0, e1, ...
inline Pomset make_pomset(const std::vector<Label>& labels,
                          const std::vector<std::pair<std::size_t, std::size_t>>& precedence,
                          const std::vector<std::pair<std::size_t, std::size_t>>& event_order,
                          const std::vector<std::size_t>& sources = {},
                          const std::vector<std::size_t>& targets = {}) {
  PomsetParts parts(labels.size());
  parts.labels = labels;
  for (auto [a, b] : precedence) parts.precedence.set(a, b);
  for (auto [a, b] : event_order) parts.event_order.set(a, b);
  for (auto s : sources) parts.sources.at(s) = true;
  for (auto t : targets) parts.targets.at(t) = true;
  return validate_ipomset(std::move(parts));
}

/// Discrete pomset on `u` with total event order and the given interfaces.
inline Pomset discrete_pomset(const Conclist& u, Subset sources, Subset targets) {
  PomsetParts parts(u.size());
  parts.labels = u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) parts.event_order.set(i, j);
    parts.sources[i] = has(sources, i);
    parts.targets[i] = has(targets, i);
  }
  return detail::assemble(std::move(parts));
}

inline Pomset identity_pomset(const Conclist& u) {
  return discrete_pomset(u, full_subset(u.size()), full_subset(u.size()));
}
/// Starter: the events `a` of `u` begin, the rest were already running.
inline Pomset starter_pomset(const Conclist& u, Subset a) {
  return discrete_pomset(u, full_subset(u.size()) & ~a, full_subset(u.size()));
}
/// Terminator: the events `a` of `u` end, the rest keep running.
inline Pomset terminator_pomset(const Conclist& u, Subset a) {
  return discrete_pomset(u, full_subset(u.size()), full_subset(u.size()) & ~a);
}

/// Gluing P * Q along the unique conclist isomorphism T_P -> S_Q.
inline Pomset glue(const Pomset& p, const Pomset& q) {
  const auto tp = p.targets();
  const auto sq = q.sources();
  if (p.labels_of(tp) != q.labels_of(sq))
    throw Error(ErrorCode::InterfaceMismatch,
                "target " + to_string(p.labels_of(tp)) + " does not match source " + to_string(q.labels_of(sq)));

  // Q-events are mapped either onto the matching P-interface event or appended.
  std::vector<std::size_t> qmap(q.size());
  std::size_t n = p.size();
  for (std::size_t k = 0; k < sq.size(); ++k) qmap[sq[k]] = tp[k];
  for (std::size_t j = 0; j < q.size(); ++j)
    if (!q.is_source(j)) qmap[j] = n++;

  PomsetParts parts(n);
  for (std::size_t i = 0; i < p.size(); ++i) {
    parts.ids[i] = p.id(i);
    parts.labels[i] = p.label(i);
    parts.sources[i] = p.is_source(i);
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (q.is_source(j)) continue;
    std::string id = q.id(j);
    while (std::find(parts.ids.begin(), parts.ids.begin() + static_cast<std::ptrdiff_t>(qmap[j]), id) !=
           parts.ids.begin() + static_cast<std::ptrdiff_t>(qmap[j]))
      id += "'";
    parts.ids[qmap[j]] = id;
    parts.labels[qmap[j]] = q.label(j);
  }
  for (std::size_t j = 0; j < q.size(); ++j) parts.targets[qmap[j]] = q.is_target(j);

  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (p.precedes(a, b)) parts.precedence.set(a, b);
      if (p.ordered(a, b)) parts.event_order.set(a, b);
    }
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = 0; b < q.size(); ++b) {
      if (q.precedes(a, b)) parts.precedence.set(qmap[a], qmap[b]);
      if (q.ordered(a, b)) parts.event_order.set(qmap[a], qmap[b]);
    }
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p.is_target(a)) continue;
    for (std::size_t b = 0; b < q.size(); ++b)
      if (!q.is_source(b)) parts.precedence.set(a, qmap[b]);
  }
  return validate_ipomset(std::move(parts));
}

/// Induced subpomset on the events outside `events`. Every removed event
/// must belong to the target interface.
inline Pomset remove_events(const Pomset& p, const std::vector<std::size_t>& events) {
  std::vector<bool> removed(p.size(), false);
  for (auto e : events) {
    if (e >= p.size() || !p.is_target(e))
      throw Error(ErrorCode::NotInTargetInterface,
                  "event " + (e < p.size() ? p.id(e) : std::to_string(e)) + " is not in the target interface");
    removed[e] = true;
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!removed[i]) keep.push_back(i);
  PomsetParts parts(keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    parts.ids[a] = p.id(keep[a]);
    parts.labels[a] = p.label(keep[a]);
    parts.sources[a] = p.is_source(keep[a]);
    parts.targets[a] = p.is_target(keep[a]);
    for (std::size_t b = 0; b < keep.size(); ++b) {
      if (p.precedes(keep[a], keep[b])) parts.precedence.set(a, b);
      if (p.ordered(keep[a], keep[b])) parts.event_order.set(a, b);
    }
  }
  return detail::assemble(std::move(parts));
}

/// P - A where A is given as positions of the target conclist of P.
inline Pomset remove_target_events(const Pomset& p, Subset a) {
  const auto t = p.targets();
  if (a >> t.size() != 0)
    throw Error(ErrorCode::NotInTargetInterface, "subset exceeds the target interface of size " + std::to_string(t.size()));
  std::vector<std::size_t> events;
  for (auto k : positions(a)) events.push_back(t[k]);
  return remove_events(p, events);
}

}  // namespace hdalang
