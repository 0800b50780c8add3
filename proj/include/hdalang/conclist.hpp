#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace hdalang {

using Label = std::string;

/// Labels of a concurrency list, listed in event order. Conclists compare
/// by value: two conclists are the same object when their label sequences
/// agree.
using Conclist = std::vector<Label>;

/// A subset of positions of a conclist, bit i standing for position i.
using Subset = std::uint32_t;

inline constexpr std::size_t kMaxConclistLength = 31;

constexpr bool has(Subset s, std::size_t i) { return ((s >> i) & 1U) != 0; }
constexpr Subset bit(std::size_t i) { return Subset{1} << i; }
constexpr Subset full_subset(std::size_t n) { return n == 0 ? 0 : (Subset{1} << n) - 1; }
constexpr int cardinality(Subset s) { return std::popcount(s); }

/// Reindex `mask` (a subset of positions 0..n-1) onto the positions that
/// survive once `removed` is deleted. Bits of `mask` inside `removed` are dropped.
constexpr Subset compress(Subset mask, Subset removed, std::size_t n) {
  Subset out = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (has(removed, i)) continue;
    if (has(mask, i)) out |= bit(j);
    ++j;
  }
  return out;
}

/// Inverse of compress: lift a subset of the surviving positions back onto
/// positions 0..n-1.
constexpr Subset expand(Subset mask, Subset removed, std::size_t n) {
  Subset out = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (has(removed, i)) continue;
    if (has(mask, j)) out |= bit(i);
    ++j;
  }
  return out;
}

inline Conclist remove_positions(const Conclist& u, Subset removed) {
  Conclist out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!has(removed, i)) out.push_back(u[i]);
  return out;
}

inline std::string to_string(const Conclist& u) {
  std::string s = "[";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i != 0) s += ',';
    s += u[i];
  }
  return s + "]";
}

inline std::vector<std::size_t> positions(Subset s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1)
    if (s & 1U) out.push_back(i);
  return out;
}

/// All conclists over `alphabet` of length at most `max_length`, shortest first.
inline std::vector<Conclist> all_conclists(const std::vector<Label>& alphabet, std::size_t max_length) {
  std::vector<Conclist> out{Conclist{}};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& a : alphabet) {
        Conclist next = out[i];
        next.push_back(a);
        out.push_back(std::move(next));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

}  // namespace hdalang
