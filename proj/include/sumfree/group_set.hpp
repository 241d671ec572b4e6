#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumfree/space.hpp"

namespace sumfree {

/// A subset of F_p^n as a bitset of width p^n. Bit i is set iff the element
/// with index i belongs to the set.
class GroupSet {
 public:
  explicit GroupSet(Space space);
  GroupSet(Space space, std::initializer_list<std::uint32_t> indices);
  GroupSet(Space space, std::span<const std::uint32_t> indices);

  static GroupSet full(Space space);
  /// {x : x_0 in [lo, hi]} with cyclic wrap when lo > hi.
  static GroupSet slab(Space space, Residue lo, Residue hi);

  const Space& space() const noexcept { return space_; }

  bool contains(Element x) const noexcept { return (bits_[x.index / 64] >> (x.index % 64)) & 1u; }
  bool contains(std::uint32_t index) const noexcept { return contains(Element{index}); }
  void insert(Element x) noexcept { bits_[x.index / 64] |= std::uint64_t{1} << (x.index % 64); }
  void insert(std::uint32_t index) noexcept { insert(Element{index}); }
  void erase(Element x) noexcept { bits_[x.index / 64] &= ~(std::uint64_t{1} << (x.index % 64)); }

  std::size_t size() const noexcept;
  bool empty() const noexcept;
  std::vector<std::uint32_t> indices() const;

  std::span<const std::uint64_t> words() const noexcept { return bits_; }
  std::span<std::uint64_t> mutable_words() noexcept { return bits_; }

  /// g + A.
  GroupSet translate(Element g) const;

  GroupSet& operator|=(const GroupSet& o);
  GroupSet& operator&=(const GroupSet& o);
  GroupSet& operator-=(const GroupSet& o);
  friend GroupSet operator|(GroupSet a, const GroupSet& b) { return a |= b; }
  friend GroupSet operator&(GroupSet a, const GroupSet& b) { return a &= b; }
  friend GroupSet operator-(GroupSet a, const GroupSet& b) { return a -= b; }
  GroupSet complement() const;

  bool intersects(const GroupSet& o) const;
  bool is_subset_of(const GroupSet& o) const;

  /// Lowercase hex of the bit array: 64-bit words in order, each word written
  /// as its 8 little-endian bytes.
  std::string to_hex() const;
  static GroupSet from_hex(Space space, std::string_view hex);

  friend bool operator==(const GroupSet& a, const GroupSet& b) noexcept {
    return a.space_ == b.space_ && a.bits_ == b.bits_;
  }
  /// Orders by hex serialization, i.e. lexicographically by byte stream.
  friend bool hex_less(const GroupSet& a, const GroupSet& b);

 private:
  void require_same(const GroupSet& o) const;

  Space space_;
  std::vector<std::uint64_t> bits_;
};

bool hex_less(const GroupSet& a, const GroupSet& b);

/// A + B.
GroupSet sumset(const GroupSet& a, const GroupSet& b);
/// A - B.
GroupSet difference_set(const GroupSet& a, const GroupSet& b);
/// {c a : a in A}; c != 0.
GroupSet dilate(const GroupSet& a, Residue c);
GroupSet negate(const GroupSet& a);
/// phi[A].
GroupSet apply(const LinearAuto& phi, const GroupSet& a);

/// No solution of x + y = z in A, x = y allowed.
bool is_sum_free(const GroupSet& a);

/// Sym(X) = {g : g + X = X}.
GroupSet symmetry_group(const GroupSet& x);

bool is_subspace(const GroupSet& k);

/// Products with the first coordinate: {(k, y) : k in first, y in rest}.
/// `rest` lives in F_p^(n-1).
GroupSet product(const Space& s, const GroupSet& first, const GroupSet& rest);
/// The fibre {y : (k, y) in A} of A over first coordinate k, as a subset of
/// F_p^(n-1).
GroupSet fibre(const GroupSet& a, Residue k);

/// Output of the Kneser decomposition of a triple with (A+B) disjoint from C.
struct KneserDecomposition {
  GroupSet K;  // Sym(A+B), a hyperplane
  GroupSet L;  // complement line
  Element direction;  // generator of L
  GroupSet A_star;
  GroupSet B_star;
  GroupSet C_star;
};

/// Requires A, B, C nonempty, (A+B) & C empty and
/// |A|+|B|+|C| > (p^2+1) p^(n-2). L is spanned by the first standard basis
/// vector outside K.
KneserDecomposition kneser_decompose(const GroupSet& a, const GroupSet& b, const GroupSet& c);

/// (|A|+|B|+|C|) p^2 > (p^2 + 1) p^n, evaluated exactly.
bool exceeds_kneser_threshold(const Space& s, std::uint64_t total);

}  // namespace sumfree
