#pragma once

#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hdalang/conclist.hpp"
#include "hdalang/error.hpp"
#include "hdalang/order.hpp"
#include "hdalang/st.hpp"

namespace hdalang {

/// Default bound on enumerated event counts; `IPOMSET_MAX_EVENTS` overrides it.
inline constexpr std::size_t kDefaultEventBound = 7;
/// Hard ceiling: enumeration beyond this is refused.
inline constexpr std::size_t kEventBoundCeiling = 12;

inline std::size_t default_event_bound() {
  if (const char* env = std::getenv("IPOMSET_MAX_EVENTS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return kDefaultEventBound;
}

inline void check_event_bound(std::size_t max_events) {
  if (max_events > kEventBoundCeiling)
    throw Error(ErrorCode::BoundTooLarge, "max_events " + std::to_string(max_events) + " exceeds " +
                                              std::to_string(kEventBoundCeiling));
}

/// All starters leaving object `v` that add at least one event, keeping the
/// carrier within `max_dim` and adding at most `max_new` events.
inline std::vector<STLetter> starters_from(const Conclist& v, const std::vector<Label>& alphabet, std::size_t max_dim,
                                           std::size_t max_new) {
  std::vector<STLetter> out;
  if (alphabet.empty()) return out;
  for (std::size_t len = v.size() + 1; len <= max_dim && len - v.size() <= max_new; ++len) {
    const std::size_t k = len - v.size();
    for (Subset a = 1; a <= full_subset(len); ++a) {
      if (static_cast<std::size_t>(cardinality(a)) != k) continue;
      std::vector<std::size_t> idx(k, 0);
      while (true) {
        Conclist u;
        std::size_t old = 0;
        std::size_t fresh = 0;
        for (std::size_t pos = 0; pos < len; ++pos)
          u.push_back(has(a, pos) ? alphabet[idx[fresh++]] : v[old++]);
        out.push_back(STLetter::starter(std::move(u), a));
        std::size_t d = 0;
        while (d < k && ++idx[d] == alphabet.size()) idx[d++] = 0;
        if (d == k) break;
      }
    }
  }
  return out;
}

inline std::vector<STLetter> terminators_from(const Conclist& v) {
  std::vector<STLetter> out;
  for (Subset a = 1; a <= full_subset(v.size()); ++a) out.push_back(STLetter::terminator(v, a));
  return out;
}

/// Visits every isomorphism class of pomsets over `alphabet` with at most
/// `max_events` events and dimension at most `max_dim`, each exactly once,
/// by walking sparse ST-sequences. With `source` set, only pomsets with that
/// source interface are produced.
inline void for_each_pomset(const std::vector<Label>& alphabet, std::size_t max_events, std::size_t max_dim,
                            const std::optional<Conclist>& source,
                            const std::function<void(const STSequence&)>& visit) {
  check_event_bound(max_events);
  std::vector<Conclist> starts;
  if (source) {
    if (source->size() <= max_dim && source->size() <= max_events) starts.push_back(*source);
  } else {
    for (auto& u : all_conclists(alphabet, std::min(max_dim, max_events))) starts.push_back(std::move(u));
  }

  STSequence w;
  auto walk = [&](auto&& self, std::size_t events, LetterKind last) -> void {
    visit(w);
    const Conclist here = w.finish();
    if (last != LetterKind::starter && events < max_events) {
      for (auto& l : starters_from(here, alphabet, max_dim, max_events - events)) {
        const std::size_t added = static_cast<std::size_t>(cardinality(l.subset));
        w.letters.push_back(std::move(l));
        self(self, events + added, LetterKind::starter);
        w.letters.pop_back();
      }
    }
    if (last != LetterKind::terminator) {
      for (auto& l : terminators_from(here)) {
        w.letters.push_back(std::move(l));
        self(self, events, LetterKind::terminator);
        w.letters.pop_back();
      }
    }
  };
  for (const auto& u : starts) {
    w.start = u;
    w.letters.clear();
    walk(walk, u.size(), LetterKind::identity);
  }
}

inline std::vector<Pomset> enumerate_pomsets(const std::vector<Label>& alphabet, std::size_t max_events,
                                             std::size_t max_dim, const std::optional<Conclist>& source = std::nullopt) {
  std::vector<Pomset> out;
  for_each_pomset(alphabet, max_events, max_dim, source, [&](const STSequence& w) { out.push_back(glue_st(w)); });
  return out;
}

}  // namespace hdalang
