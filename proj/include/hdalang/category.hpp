#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hdalang/conclist.hpp"
#include "hdalang/hda.hpp"
#include "hdalang/relation.hpp"
#include "hdalang/st.hpp"

namespace hdalang {

inline constexpr std::size_t kNoMorphism = static_cast<std::size_t>(-1);

struct Morphism {
  std::size_t source = 0;  ///< object index
  std::size_t target = 0;
  std::string name;
};

/// Finite category with an explicit composition table.
/// `compose[f][g]` is f;g (f first) or kNoMorphism when not composable.
struct FiniteCategory {
  std::vector<Conclist> objects;
  std::vector<Morphism> morphisms;
  std::vector<std::size_t> identity;
  std::vector<std::vector<std::size_t>> compose;

  [[nodiscard]] std::size_t size() const { return morphisms.size(); }

  [[nodiscard]] std::optional<std::size_t> object(const Conclist& u) const {
    auto it = std::find(objects.begin(), objects.end(), u);
    if (it == objects.end()) return std::nullopt;
    return static_cast<std::size_t>(it - objects.begin());
  }

  [[nodiscard]] std::size_t then(std::size_t f, std::size_t g) const { return compose[f][g]; }

  [[nodiscard]] bool is_endomorphism(std::size_t f) const { return morphisms[f].source == morphisms[f].target; }
};

/// Identity and associativity over the whole table, plus typing of composites.
inline std::vector<std::string> check_category_laws(const FiniteCategory& c) {
  std::vector<std::string> violations;
  const std::size_t n = c.size();
  for (std::size_t f = 0; f < n; ++f) {
    const auto& m = c.morphisms[f];
    if (c.then(c.identity[m.source], f) != f || c.then(f, c.identity[m.target]) != f)
      violations.push_back("identity law fails at " + m.name);
    for (std::size_t g = 0; g < n; ++g) {
      const bool composable = m.target == c.morphisms[g].source;
      const std::size_t fg = c.then(f, g);
      if (composable != (fg != kNoMorphism)) {
        violations.push_back("composability of " + m.name + ";" + c.morphisms[g].name);
        continue;
      }
      if (!composable) continue;
      if (c.morphisms[fg].source != m.source || c.morphisms[fg].target != c.morphisms[g].target)
        violations.push_back("composite " + m.name + ";" + c.morphisms[g].name + " is mistyped");
      for (std::size_t h = 0; h < n; ++h) {
        if (c.morphisms[g].target != c.morphisms[h].source) continue;
        if (c.then(fg, h) != c.then(f, c.then(g, h)))
          violations.push_back("associativity fails at " + m.name + "," + c.morphisms[g].name + "," +
                               c.morphisms[h].name);
      }
    }
  }
  return violations;
}

struct CategoryAperiodicity {
  bool aperiodic = true;
  std::size_t stabilization = 1;  ///< largest index over endomorphisms with period 1
  std::optional<std::size_t> witness;
  std::size_t witness_index = 0;
  std::size_t witness_period = 0;
};

inline CategoryAperiodicity is_aperiodic_category(const FiniteCategory& c) {
  CategoryAperiodicity r;
  for (std::size_t f = 0; f < c.size(); ++f) {
    if (!c.is_endomorphism(f)) continue;
    auto pd = power_data(f, [&](std::size_t x, std::size_t y) { return c.then(x, y); });
    if (pd.period == 1) {
      r.stabilization = std::max(r.stabilization, pd.index);
    } else if (r.aperiodic) {
      r.aperiodic = false;
      r.witness = f;
      r.witness_index = pd.index;
      r.witness_period = pd.period;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Transition category

/// Morphisms U -> V are the relations t(P) on cells induced by pomsets P
/// from U to V. The functor sends each letter to its relation; K holds the
/// relations linking an initial cell to an accepting one.
struct TransitionCategory {
  FiniteCategory category;
  std::map<STLetter, std::size_t> functor;
  std::vector<bool> accepting;  ///< K
  std::vector<Relation> relations;
  std::vector<STSequence> words;  ///< a generating word per morphism
};

inline TransitionCategory transition_category(const Hda& h) {
  TransitionCategory tc;
  FiniteCategory& c = tc.category;
  c.objects = h.objects();
  std::map<Conclist, std::vector<std::pair<STLetter, Relation>>> by_source;
  for (const auto& l : hda_letters(h)) by_source[l.source()].emplace_back(l, letter_relation(h, l));

  std::map<std::tuple<std::size_t, std::size_t, Relation>, std::size_t> index;
  auto add = [&](std::size_t u, std::size_t v, Relation r, STSequence w) {
    auto [it, fresh] = index.emplace(std::tuple{u, v, r}, c.morphisms.size());
    if (!fresh) return it->second;
    c.morphisms.push_back({u, v, ""});
    tc.relations.push_back(std::move(r));
    tc.words.push_back(std::move(w));
    return it->second;
  };
  for (std::size_t u = 0; u < c.objects.size(); ++u)
    c.identity.push_back(add(u, u, Relation::identity(h.cells_of(c.objects[u]).size()), {c.objects[u], {}}));
  for (std::size_t k = 0; k < c.morphisms.size(); ++k) {
    const std::size_t v = c.morphisms[k].target;
    for (const auto& [letter, r] : by_source[c.objects[v]]) {
      STSequence w = tc.words[k];
      w.letters.push_back(letter);
      add(c.morphisms[k].source, *c.object(letter.target()), tc.relations[k].then(r), std::move(w));
    }
  }
  for (std::size_t f = 0; f < c.size(); ++f) c.morphisms[f].name = "t" + std::to_string(f);

  const std::size_t n = c.size();
  c.compose.assign(n, std::vector<std::size_t>(n, kNoMorphism));
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g)
      if (c.morphisms[f].target == c.morphisms[g].source)
        c.compose[f][g] =
            index.at({c.morphisms[f].source, c.morphisms[g].target, tc.relations[f].then(tc.relations[g])});

  for (const auto& [u, letters] : by_source)
    for (const auto& [letter, r] : letters) {
      tc.functor[letter] = index.at({*c.object(u), *c.object(letter.target()), r});
    }

  tc.accepting.assign(n, false);
  for (std::size_t f = 0; f < n; ++f) {
    const auto xs = h.cells_of(c.objects[c.morphisms[f].source]);
    const auto ys = h.cells_of(c.objects[c.morphisms[f].target]);
    for (std::size_t i = 0; i < xs.size() && !tc.accepting[f]; ++i)
      if (h.is_initial(xs[i]))
        for (std::size_t j = 0; j < ys.size(); ++j)
          if (h.is_accepting(ys[j]) && tc.relations[f].get(i, j)) {
            tc.accepting[f] = true;
            break;
          }
  }
  return tc;
}

/// F(P) through the sparse decomposition of P; nullopt when an interface of
/// P is not an object (no cell carries it).
inline std::optional<std::size_t> evaluate(const TransitionCategory& tc, const STSequence& w) {
  auto u = tc.category.object(w.start);
  if (!u) return std::nullopt;
  std::size_t f = tc.category.identity[*u];
  for (const auto& l : w.letters) {
    if (l.kind == LetterKind::identity) continue;
    auto it = tc.functor.find(l);
    if (it == tc.functor.end()) return std::nullopt;
    f = tc.category.then(f, it->second);
    if (f == kNoMorphism) return std::nullopt;
  }
  return f;
}

inline std::optional<std::size_t> evaluate(const TransitionCategory& tc, const Pomset& p) {
  return evaluate(tc, st_decompose_sparse(p));
}

inline bool recognizes(const TransitionCategory& tc, const Pomset& p) {
  auto f = evaluate(tc, p);
  return f && tc.accepting[*f];
}

// ---------------------------------------------------------------------------
// Syntactic category

struct SyntacticCategory {
  FiniteCategory category;
  std::vector<bool> accepting;          ///< image of K
  std::vector<std::size_t> projection;  ///< transition morphism -> class
};

/// Quotient of the transition category by the two-sided congruence
/// m ~ m' iff c;m;d and c;m';d agree on K for every composable c, d.
inline SyntacticCategory syntactic_category(const TransitionCategory& tc) {
  const FiniteCategory& c = tc.category;
  const std::size_t n = c.size();
  std::vector<std::vector<std::size_t>> into(c.objects.size()), out_of(c.objects.size());
  for (std::size_t f = 0; f < n; ++f) {
    into[c.morphisms[f].target].push_back(f);
    out_of[c.morphisms[f].source].push_back(f);
  }
  std::map<std::tuple<std::size_t, std::size_t, std::vector<bool>>, std::size_t> classes;
  SyntacticCategory s;
  s.category.objects = c.objects;
  s.projection.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const auto& mm = c.morphisms[m];
    std::vector<bool> signature;
    signature.reserve(into[mm.source].size() * out_of[mm.target].size());
    for (auto left : into[mm.source]) {
      const std::size_t lm = c.then(left, m);
      for (auto right : out_of[mm.target]) signature.push_back(tc.accepting[c.then(lm, right)]);
    }
    auto [it, fresh] = classes.emplace(std::tuple{mm.source, mm.target, std::move(signature)}, s.category.size());
    if (fresh) {
      s.category.morphisms.push_back({mm.source, mm.target, "[" + mm.name + "]"});
      s.accepting.push_back(tc.accepting[m]);
    }
    s.projection[m] = it->second;
  }
  for (std::size_t u = 0; u < c.objects.size(); ++u) s.category.identity.push_back(s.projection[c.identity[u]]);
  const std::size_t k = s.category.size();
  std::vector<std::size_t> rep(k);
  for (std::size_t m = n; m-- > 0;) rep[s.projection[m]] = m;
  s.category.compose.assign(k, std::vector<std::size_t>(k, kNoMorphism));
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y) {
      const std::size_t xy = c.then(rep[x], rep[y]);
      if (xy != kNoMorphism) s.category.compose[x][y] = s.projection[xy];
    }
  return s;
}

}  // namespace hdalang
