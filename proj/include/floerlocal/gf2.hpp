#pragma once

/**
 * @file gf2.hpp
 * @brief Dense bit vectors and Gaussian elimination over the two-element field.
 */

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace floerlocal::gf2 {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVec& operator^=(const BitVec& other) {
    if (other.n_ != n_) throw std::invalid_argument("gf2::BitVec size mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Index of the lowest set bit, or size() when empty.
  std::size_t first_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w]) return (w << 6) + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return n_;
  }

  // Parity of the bitwise AND, i.e. the standard bilinear pairing.
  bool dot(const BitVec& other) const {
    if (other.n_ != n_) throw std::invalid_argument("gf2::BitVec size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        out.push_back((w << 6) + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
    return out;
  }

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Incrementally maintained echelon basis of a subspace of F_2^n.
///
/// Vectors are stored in insertion order; each stored vector has zeros at the
/// pivots of all earlier vectors, so a single forward pass reduces any input.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t n) : n_(n) {}

  std::size_t dimension() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }

  BitVec reduce(BitVec v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (v.get(pivots_[k])) v ^= rows_[k];
    }
    return v;
  }

  bool contains(const BitVec& v) const { return reduce(v).none(); }

  // Returns true when v was independent of the current span.
  bool insert(const BitVec& v) {
    BitVec r = reduce(v);
    const std::size_t p = r.first_set();
    if (p == r.size()) return false;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t n_;
  std::vector<BitVec> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const std::vector<BitVec>& rows, std::size_t ncols) {
  EchelonBasis basis(ncols);
  for (const auto& r : rows) basis.insert(r);
  return basis.dimension();
}

namespace detail {

// Reduced row echelon form in place; returns pivot column per pivot row.
inline std::vector<std::size_t> rref(std::vector<BitVec>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && !rows[sel].get(c)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace detail

/// Basis of {x : row . x = 0 for every row}.
inline std::vector<BitVec> nullspace(std::vector<BitVec> rows, std::size_t ncols) {
  const auto pivots = detail::rref(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<BitVec> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    BitVec x(ncols);
    x.set(free);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      if (rows[k].get(free)) x.set(pivots[k]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Solves rows[i] . x = rhs[i] for all i; nullopt when inconsistent.
inline std::optional<BitVec> solve(const std::vector<BitVec>& rows, const std::vector<bool>& rhs,
                                   std::size_t ncols) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("gf2::solve: rhs length mismatch");
  std::vector<BitVec> aug;
  aug.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    BitVec a(ncols + 1);
    for (auto j : rows[i].ones()) a.set(j);
    a.set(ncols, rhs[i]);
    aug.push_back(std::move(a));
  }
  const auto pivots = detail::rref(aug, ncols + 1);
  BitVec x(ncols);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    if (pivots[k] == ncols) return std::nullopt;
    if (aug[k].get(ncols)) x.set(pivots[k]);
  }
  return x;
}

}  // namespace floerlocal::gf2
