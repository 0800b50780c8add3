#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hdalang/enumerate.hpp"
#include "hdalang/error.hpp"
#include "hdalang/pomset.hpp"
#include "hdalang/st.hpp"

namespace hdalang {

/// Primitive connectives. Disjunction, implication, universal and unique
/// quantification, and concurrency are expanded into these by the parser.
enum class FoKind { True, False, Label, Start, Terminate, Not, And, Exists, Precedes, EventOrder, Equal };

struct FoNode {
  FoKind kind = FoKind::True;
  Label label;            ///< for Label
  std::size_t x = 0;      ///< variable slot (bound variable for Exists)
  std::size_t y = 0;      ///< second slot for binary atoms
  std::vector<FoNode> args;

  friend bool operator==(const FoNode&, const FoNode&) = default;
};

/// A formula with its variables renamed apart: every binder owns a distinct
/// slot, and `variables[k]` is the printed name of slot k.
struct Formula {
  FoNode root;
  std::vector<std::string> variables;

  [[nodiscard]] std::set<std::size_t> free_slots() const {
    std::set<std::size_t> out;
    collect_free(root, {}, out);
    return out;
  }
  [[nodiscard]] std::vector<std::string> free_variables() const {
    std::vector<std::string> out;
    for (auto k : free_slots()) out.push_back(variables[k]);
    return out;
  }
  [[nodiscard]] bool closed() const { return free_slots().empty(); }

  [[nodiscard]] std::set<Label> labels() const {
    std::set<Label> out;
    collect_labels(root, out);
    return out;
  }

 private:
  static void collect_free(const FoNode& n, std::set<std::size_t> bound, std::set<std::size_t>& out) {
    auto use = [&](std::size_t v) {
      if (!bound.count(v)) out.insert(v);
    };
    switch (n.kind) {
      case FoKind::True:
      case FoKind::False: return;
      case FoKind::Label:
      case FoKind::Start:
      case FoKind::Terminate: use(n.x); return;
      case FoKind::Precedes:
      case FoKind::EventOrder:
      case FoKind::Equal:
        use(n.x);
        use(n.y);
        return;
      case FoKind::Exists: bound.insert(n.x); break;
      case FoKind::Not:
      case FoKind::And: break;
    }
    for (const auto& a : n.args) collect_free(a, bound, out);
  }
  static void collect_labels(const FoNode& n, std::set<Label>& out) {
    if (n.kind == FoKind::Label) out.insert(n.label);
    for (const auto& a : n.args) collect_labels(a, out);
  }
};

/// Assignment of variable names to event indices of one pomset.
using Valuation = std::map<std::string, std::size_t>;

// ---------------------------------------------------------------------------
// Construction helpers over primitive nodes

namespace fo {

inline FoNode truth() { return {FoKind::True, {}, 0, 0, {}}; }
inline FoNode falsity() { return {FoKind::False, {}, 0, 0, {}}; }
inline FoNode atom(FoKind k, std::size_t x, std::size_t y = 0) { return {k, {}, x, y, {}}; }
inline FoNode labelled(const Label& a, std::size_t x) { return {FoKind::Label, a, x, 0, {}}; }
inline FoNode negate(FoNode f) {
  if (f.kind == FoKind::Not) return std::move(f.args[0]);
  return {FoKind::Not, {}, 0, 0, {std::move(f)}};
}
inline FoNode conj(FoNode f, FoNode g) { return {FoKind::And, {}, 0, 0, {std::move(f), std::move(g)}}; }
inline FoNode disj(FoNode f, FoNode g) { return negate(conj(negate(std::move(f)), negate(std::move(g)))); }
inline FoNode implies(FoNode f, FoNode g) { return negate(conj(std::move(f), negate(std::move(g)))); }
inline FoNode exists(std::size_t x, FoNode body) { return {FoKind::Exists, {}, x, 0, {std::move(body)}}; }
inline FoNode forall(std::size_t x, FoNode body) { return negate(exists(x, negate(std::move(body)))); }
inline FoNode concurrent(std::size_t x, std::size_t y) {
  return negate(disj(disj(atom(FoKind::Precedes, x, y), atom(FoKind::Precedes, y, x)), atom(FoKind::Equal, x, y)));
}

}  // namespace fo

// ---------------------------------------------------------------------------
// Parser

namespace detail {

class FoParser {
 public:
  explicit FoParser(std::string_view text) : text_(text) {}

  Formula parse() {
    FoNode root = formula();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return {std::move(root), std::move(names_)};
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
  std::vector<std::pair<std::string, std::size_t>> scope_;  // innermost last
  std::map<std::string, std::size_t> free_;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(std::string_view tok) {
    skip_space();
    return text_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::optional<std::string> peek_ident() {
    skip_space();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) return std::nullopt;
    std::size_t end = pos_;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    return std::string(text_.substr(pos_, end - pos_));
  }
  std::string ident() {
    auto id = peek_ident();
    if (!id) fail("expected identifier");
    pos_ += id->size();
    return *id;
  }
  bool keyword(std::string_view kw) {
    auto id = peek_ident();
    if (!id || *id != kw) return false;
    pos_ += id->size();
    return true;
  }

  std::size_t fresh(const std::string& base) {
    std::string name = base;
    auto taken = [&](const std::string& s) {
      for (const auto& n : names_)
        if (n == s) return true;
      return false;
    };
    while (taken(name)) name += '\'';
    names_.push_back(name);
    return names_.size() - 1;
  }

  std::size_t lookup(const std::string& name) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return it->second;
    auto it = free_.find(name);
    if (it != free_.end()) return it->second;
    const std::size_t slot = fresh(name);
    free_.emplace(name, slot);
    return slot;
  }

  // Copy of `n` with slot `from` replaced by `to` and every binder renamed
  // to a fresh slot.
  FoNode rename(const FoNode& n, std::map<std::size_t, std::size_t> sub) {
    auto map = [&](std::size_t v) {
      auto it = sub.find(v);
      return it == sub.end() ? v : it->second;
    };
    FoNode out = n;
    out.args.clear();
    if (n.kind == FoKind::Exists) {
      out.x = fresh(names_[n.x]);
      sub[n.x] = out.x;
    } else {
      out.x = map(n.x);
      out.y = map(n.y);
    }
    for (const auto& a : n.args) out.args.push_back(rename(a, sub));
    return out;
  }

  FoNode formula() { return implication(); }

  FoNode implication() {
    FoNode lhs = disjunction();
    if (accept("->")) return fo::implies(std::move(lhs), implication());
    return lhs;
  }

  bool disjunction_bar() {
    skip_space();
    return peek("|") && !peek("||");
  }

  FoNode disjunction() {
    FoNode f = conjunction();
    while (disjunction_bar()) {
      ++pos_;
      f = fo::disj(std::move(f), conjunction());
    }
    return f;
  }

  FoNode conjunction() {
    FoNode f = unary();
    while (accept("&")) f = fo::conj(std::move(f), unary());
    return f;
  }

  FoNode unary() {
    if (accept("!")) return fo::negate(unary());
    if (peek("exists!")) {
      pos_ += 7;
      return quantified(2);
    }
    if (keyword("exists")) return quantified(0);
    if (keyword("forall")) return quantified(1);
    return atom();
  }

  // 0: exists, 1: forall, 2: exists unique
  FoNode quantified(int which) {
    const std::string name = ident();
    expect(".");
    const std::size_t slot = fresh(name);
    scope_.emplace_back(name, slot);
    FoNode body = formula();
    scope_.pop_back();
    if (which == 0) return fo::exists(slot, std::move(body));
    if (which == 1) return fo::forall(slot, std::move(body));
    const std::size_t other = fresh(name);
    FoNode copy = rename(body, {{slot, other}});
    FoNode unique = fo::forall(other, fo::implies(std::move(copy), fo::atom(FoKind::Equal, other, slot)));
    return fo::exists(slot, fo::conj(std::move(body), std::move(unique)));
  }

  FoNode atom() {
    if (accept("(")) {
      FoNode f = formula();
      expect(")");
      return f;
    }
    const std::size_t at = (skip_space(), pos_);
    const std::string id = ident();
    if (id == "true") return fo::truth();
    if (id == "false") return fo::falsity();
    if (accept("(")) {
      const std::size_t x = lookup(ident());
      expect(")");
      if (id == "S") return fo::atom(FoKind::Start, x);
      if (id == "T") return fo::atom(FoKind::Terminate, x);
      return fo::labelled(id, x);
    }
    const std::size_t x = lookup(id);
    if (accept("~>")) return fo::atom(FoKind::EventOrder, x, lookup(ident()));
    if (accept("||")) return fo::concurrent(x, lookup(ident()));
    if (accept("!=")) return fo::negate(fo::atom(FoKind::Equal, x, lookup(ident())));
    if (accept("<")) return fo::atom(FoKind::Precedes, x, lookup(ident()));
    if (accept("=")) return fo::atom(FoKind::Equal, x, lookup(ident()));
    pos_ = at;
    fail("expected a relation after '" + id + "'");
  }
};

inline void print(const Formula& f, const FoNode& n, std::string& out) {
  const auto& v = f.variables;
  switch (n.kind) {
    case FoKind::True: out += "true"; return;
    case FoKind::False: out += "false"; return;
    case FoKind::Label: out += n.label + "(" + v[n.x] + ")"; return;
    case FoKind::Start: out += "S(" + v[n.x] + ")"; return;
    case FoKind::Terminate: out += "T(" + v[n.x] + ")"; return;
    case FoKind::Precedes: out += v[n.x] + " < " + v[n.y]; return;
    case FoKind::EventOrder: out += v[n.x] + " ~> " + v[n.y]; return;
    case FoKind::Equal: out += v[n.x] + " = " + v[n.y]; return;
    case FoKind::Not:
      out += "!(";
      print(f, n.args[0], out);
      out += ")";
      return;
    case FoKind::And:
      out += "(";
      print(f, n.args[0], out);
      out += " & ";
      print(f, n.args[1], out);
      out += ")";
      return;
    case FoKind::Exists:
      out += "(exists " + v[n.x] + ". ";
      print(f, n.args[0], out);
      out += ")";
      return;
  }
}

inline bool holds(const Pomset& p, const FoNode& n, std::vector<std::size_t>& env) {
  switch (n.kind) {
    case FoKind::True: return true;
    case FoKind::False: return false;
    case FoKind::Label: return p.label(env[n.x]) == n.label;
    case FoKind::Start: return p.is_source(env[n.x]);
    case FoKind::Terminate: return p.is_target(env[n.x]);
    case FoKind::Precedes: return p.precedes(env[n.x], env[n.y]);
    case FoKind::EventOrder: return p.ordered(env[n.x], env[n.y]);
    case FoKind::Equal: return env[n.x] == env[n.y];
    case FoKind::Not: return !holds(p, n.args[0], env);
    case FoKind::And: return holds(p, n.args[0], env) && holds(p, n.args[1], env);
    case FoKind::Exists:
      for (std::size_t e = 0; e < p.size(); ++e) {
        env[n.x] = e;
        if (holds(p, n.args[0], env)) return true;
      }
      return false;
  }
  return false;
}

}  // namespace detail

/// Concrete syntax: `a(x)`, `S(x)`, `T(x)`, `!`, `&`, `|`, `->`, `exists x.`,
/// `forall x.`, `exists! x.`, `x < y`, `x ~> y`, `x = y`, `x != y`, `x || y`,
/// `true`, `false`. Quantifier bodies extend as far right as possible;
/// `->` is right-associative and binds weakest.
inline Formula parse_formula(std::string_view text) { return detail::FoParser(text).parse(); }

/// Primitive-only rendering; parses back to an equivalent formula.
inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(f, f.root, out);
  return out;
}

inline bool satisfies(const Pomset& p, const Formula& f, const Valuation& nu) {
  std::vector<std::size_t> env(f.variables.size(), 0);
  for (auto k : f.free_slots()) {
    auto it = nu.find(f.variables[k]);
    if (it == nu.end()) throw Error(ErrorCode::InvalidDocument, "variable " + f.variables[k] + " is unassigned");
    if (it->second >= p.size())
      throw Error(ErrorCode::UnknownEvent, "variable " + f.variables[k] + " names no event");
    env[k] = it->second;
  }
  return detail::holds(p, f.root, env);
}

inline bool satisfies(const Pomset& p, const Formula& f) {
  if (!f.closed()) throw Error(ErrorCode::InvalidDocument, "formula has free variables");
  std::vector<std::size_t> env(f.variables.size(), 0);
  return detail::holds(p, f.root, env);
}

/// Canonical members with at most `max_events` events and dimension at most
/// `max_dim`, over `alphabet` (the formula's labels when empty).
inline std::vector<Pomset> fo_language(const Formula& f, std::size_t max_events, std::size_t max_dim,
                                       std::vector<Label> alphabet = {}) {
  if (!f.closed()) throw Error(ErrorCode::InvalidDocument, "formula has free variables");
  if (alphabet.empty()) {
    auto ls = f.labels();
    alphabet.assign(ls.begin(), ls.end());
    if (alphabet.empty()) alphabet.push_back("a");
  }
  std::vector<Pomset> out;
  std::vector<std::size_t> env(f.variables.size(), 0);
  for_each_pomset(alphabet, max_events, max_dim, std::nullopt, [&](const STSequence& w) {
    Pomset p = glue_st(w);
    if (detail::holds(p, f.root, env)) out.push_back(std::move(p));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Named formulas

namespace detail {

inline constexpr const char* kProp31Text = "forall x. a(x) & exists! y. x || y";

// Every event is an a with empty interfaces, and it is a middle event with
// two distinct concurrent neighbours below (or above) it, or the first event,
// or the last one.
inline constexpr const char* kP2nText =
    "forall x. a(x) & !S(x) & !T(x) & ("
    " (exists y. exists y'. y ~> x & y' ~> x & y != y' & forall z. (z = x | z = y | z = y' | z < x | x < z))"
    " | (exists y. exists y'. x ~> y & x ~> y' & y != y' & forall z. (z = x | z = y | z = y' | z < x | x < z))"
    " | (exists y. x ~> y & forall z. (z = x | z = y | x < z))"
    " | (exists y. y ~> x & forall z. (z = x | z = y | z < x)))";

}  // namespace detail

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"prop31", "p2n_family", "complement_p2n"};
  return names;
}

inline std::string builtin_text(const std::string& name) {
  if (name == "prop31") return detail::kProp31Text;
  if (name == "p2n_family") return detail::kP2nText;
  if (name == "complement_p2n")
    return std::string("(forall x. !S(x) & !T(x)) & !(") + detail::kP2nText + ")";
  throw Error(ErrorCode::UnknownName, "no builtin formula named " + name);
}

inline Formula builtin(const std::string& name) { return parse_formula(builtin_text(name)); }

}  // namespace hdalang
