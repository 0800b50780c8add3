#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hdalang {

/// Dense boolean matrix, used both for relations on the events of a pomset
/// and for relations between cell sets of an HDA.
class Relation {
 public:
  Relation() = default;
  Relation(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}
  explicit Relation(std::size_t n) : Relation(n, n) {}

  static Relation identity(std::size_t n) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i) r.set(i, i);
    return r;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  [[nodiscard]] bool get(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v = true) { bits_[i * cols_ + j] = v ? 1 : 0; }

  [[nodiscard]] bool empty() const {
    for (auto b : bits_)
      if (b) return false;
    return true;
  }

  [[nodiscard]] std::size_t count() const {
    std::size_t c = 0;
    for (auto b : bits_) c += b;
    return c;
  }

  /// Diagrammatic composition: (this ; other)(i,k) iff exists j, this(i,j) and other(j,k).
  [[nodiscard]] Relation then(const Relation& other) const {
    Relation out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!get(i, j)) continue;
        for (std::size_t k = 0; k < other.cols_; ++k)
          if (other.get(j, k)) out.set(i, k);
      }
    return out;
  }

  /// Row i seen as the image of {i}.
  [[nodiscard]] std::vector<std::uint8_t> row(std::size_t i) const {
    return {bits_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            bits_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  void transitive_closure() {
    for (std::size_t k = 0; k < rows_; ++k)
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!get(i, k)) continue;
        for (std::size_t j = 0; j < cols_; ++j)
          if (get(k, j)) set(i, j);
      }
  }

  [[nodiscard]] bool irreflexive() const {
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i)
      if (get(i, i)) return false;
    return true;
  }

  auto operator<=>(const Relation&) const = default;
  bool operator==(const Relation&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace hdalang
