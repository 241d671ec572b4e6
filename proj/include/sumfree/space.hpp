#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sumfree/error.hpp"

namespace sumfree {

using Residue = std::uint32_t;

/// A point of F_p^n, stored as its base-p index. Coordinate 0 is the most
/// significant digit, so every slice {x : x_0 = k} is a contiguous index range.
struct Element {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(Element, Element) = default;
};

inline constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t{1} << 22;

class Space {
 public:
  /// Validates p prime, n >= 1 and p^n <= max_order.
  Space(std::uint32_t p, std::uint32_t n, std::uint64_t max_order = kDefaultMaxOrder);

  std::uint32_t p() const noexcept;
  std::uint32_t n() const noexcept;
  std::uint32_t order() const noexcept;
  /// Index distance between neighbours along coordinate i, i.e. p^(n-1-i).
  std::uint32_t stride(std::uint32_t i) const noexcept;
  /// Number of 64-bit words in a bitset over the space.
  std::size_t words() const noexcept;

  /// F_p^(n-1); requires n >= 2.
  Space quotient() const;

  Element element(std::uint64_t index) const;
  std::vector<Residue> coords(Element x) const;
  Element from_coords(std::span<const Residue> coords) const;
  Residue digit(Element x, std::uint32_t i) const noexcept;

  Element combine(Residue c1, Element x, Residue c2, Element y) const;
  Element add(Element x, Element y) const { return combine(1, x, 1, y); }
  Element sub(Element x, Element y) const { return combine(1, x, p() - 1, y); }
  Element neg(Element x) const { return combine(p() - 1, x, 0, x); }
  Element scale(Residue c, Element x) const { return combine(c, x, 0, x); }

  Residue inverse(Residue c) const;

  /// m with p = 6m - 1, if p has that form.
  std::optional<std::uint32_t> m_6m_minus_1() const noexcept;
  /// m with p = 3m + 1, if p has that form.
  std::optional<std::uint32_t> m_3m_plus_1() const noexcept;

  /// Masks used for word-level translation. mask(i, d) holds the elements whose
  /// i-th digit is < p - d; its complement within the space wraps around.
  std::span<const std::uint64_t> low_mask(std::uint32_t coord, Residue d) const;

  friend bool operator==(const Space& a, const Space& b) noexcept {
    return a.p() == b.p() && a.n() == b.n();
  }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

Space make_space(std::uint32_t p, std::uint32_t n, std::uint64_t max_order = kDefaultMaxOrder);

bool is_prime(std::uint64_t v) noexcept;

/// Surjective map F_p^n -> F_p, scalar-normalized (first nonzero coefficient 1).
class LinearForm {
 public:
  explicit LinearForm(std::vector<Residue> coeffs);

  const std::vector<Residue>& coeffs() const noexcept { return coeffs_; }
  Residue operator()(const Space& s, Element x) const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  std::vector<Residue> coeffs_;
};

/// All (p^n - 1)/(p - 1) normalized forms, in lexicographic coefficient order.
std::vector<LinearForm> linear_forms(const Space& s);

/// Evaluates c * form without normalizing; c ranges over the nonzero residues.
Residue evaluate_scaled(const Space& s, const LinearForm& form, Residue c, Element x);

class LinearAuto {
 public:
  /// Row-major n x n matrix; throws invalid_argument if singular mod p.
  LinearAuto(const Space& s, std::vector<Residue> matrix);

  static LinearAuto identity(const Space& s);
  static LinearAuto dilation(const Space& s, Residue c);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t p() const noexcept { return p_; }
  const std::vector<Residue>& matrix() const noexcept { return matrix_; }
  Residue at(std::uint32_t row, std::uint32_t col) const { return matrix_[row * n_ + col]; }

  Element operator()(const Space& s, Element x) const;
  LinearAuto inverse() const;
  /// (this * other)(x) = this(other(x)).
  LinearAuto compose(const LinearAuto& other) const;
  bool is_identity() const noexcept;

  friend bool operator==(const LinearAuto&, const LinearAuto&) = default;

 private:
  friend class AutomorphismStream;
  LinearAuto(std::uint32_t p, std::uint32_t n, std::vector<Residue> matrix, bool);

  std::uint32_t p_;
  std::uint32_t n_;
  std::vector<Residue> matrix_;
};

Residue determinant(std::uint32_t p, std::uint32_t n, std::vector<Residue> matrix);

/// |GL(n, p)|, saturating at UINT64_MAX.
std::uint64_t gl_order(std::uint32_t p, std::uint32_t n) noexcept;

inline constexpr std::uint64_t kDefaultAutomorphismCap = 1'000'000;

/// Yields every invertible matrix exactly once. Rows are chosen one at a time
/// outside the span of the rows already fixed, so singular matrices are never
/// generated. Single consumer.
class AutomorphismStream {
 public:
  AutomorphismStream(const Space& s, std::uint64_t cap = kDefaultAutomorphismCap);

  std::optional<LinearAuto> next();
  std::uint64_t size() const noexcept { return size_; }

 private:
  bool advance(std::uint32_t depth);
  void rebuild_span(std::uint32_t depth);

  Space space_;
  std::uint64_t size_;
  std::vector<std::uint32_t> rows_;
  // spans_[d] marks the span of rows_[0..d).
  std::vector<std::vector<char>> in_span_;
  std::vector<std::vector<std::uint32_t>> span_list_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<LinearAuto> automorphisms(const Space& s, std::uint64_t cap = kDefaultAutomorphismCap);

}  // namespace sumfree
