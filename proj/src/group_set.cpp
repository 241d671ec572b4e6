#include "sumfree/group_set.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

#include "bitops.hpp"

namespace sumfree {

GroupSet::GroupSet(Space space) : space_(std::move(space)), bits_(space_.words(), 0) {}

GroupSet::GroupSet(Space space, std::initializer_list<std::uint32_t> indices)
    : GroupSet(std::move(space), std::span<const std::uint32_t>(indices.begin(), indices.size())) {}

GroupSet::GroupSet(Space space, std::span<const std::uint32_t> indices) : GroupSet(std::move(space)) {
  for (auto i : indices) insert(space_.element(i));
}

GroupSet GroupSet::full(Space space) {
  GroupSet s(std::move(space));
  detail::fill_prefix(s.bits_, s.space_.order());
  return s;
}

GroupSet GroupSet::slab(Space space, Residue lo, Residue hi) {
  GroupSet s(std::move(space));
  const auto p = s.space_.p();
  const auto block = s.space_.stride(0);
  for (Residue k = lo % p;; k = (k + 1) % p) {
    for (std::uint32_t j = 0; j < block; ++j) s.insert(k * block + j);
    if (k == hi % p) break;
  }
  return s;
}

std::size_t GroupSet::size() const noexcept {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool GroupSet::empty() const noexcept {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::uint32_t> GroupSet::indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(size());
  detail::for_each_bit(bits_, [&](std::uint32_t i) { out.push_back(i); });
  return out;
}

void GroupSet::require_same(const GroupSet& o) const {
  if (!(space_ == o.space_))
    fail(ErrorCode::space_mismatch, "sets live in F_" + std::to_string(space_.p()) + "^" + std::to_string(space_.n()) +
                                        " and F_" + std::to_string(o.space_.p()) + "^" + std::to_string(o.space_.n()));
}

GroupSet GroupSet::translate(Element g) const {
  GroupSet out(space_);
  std::vector<std::uint64_t> scratch(bits_.size());
  detail::translate(space_, bits_, g, out.bits_, scratch);
  return out;
}

GroupSet& GroupSet::operator|=(const GroupSet& o) {
  require_same(o);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  return *this;
}

GroupSet& GroupSet::operator&=(const GroupSet& o) {
  require_same(o);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  return *this;
}

GroupSet& GroupSet::operator-=(const GroupSet& o) {
  require_same(o);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~o.bits_[i];
  return *this;
}

GroupSet GroupSet::complement() const { return full(space_) - *this; }

bool GroupSet::intersects(const GroupSet& o) const {
  require_same(o);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & o.bits_[i]) return true;
  return false;
}

bool GroupSet::is_subset_of(const GroupSet& o) const {
  require_same(o);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

std::string GroupSet::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bits_.size() * 16);
  for (auto w : bits_) {
    for (int byte = 0; byte < 8; ++byte) {
      const unsigned v = (w >> (8 * byte)) & 0xffu;
      out.push_back(kDigits[v >> 4]);
      out.push_back(kDigits[v & 0xf]);
    }
  }
  return out;
}

GroupSet GroupSet::from_hex(Space space, std::string_view hex) {
  GroupSet s(std::move(space));
  if (hex.size() != s.bits_.size() * 16)
    fail(ErrorCode::parse_error, "hex set must have " + std::to_string(s.bits_.size() * 16) + " digits, got " +
                                     std::to_string(hex.size()));
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  for (std::size_t w = 0; w < s.bits_.size(); ++w) {
    std::uint64_t word = 0;
    for (int byte = 0; byte < 8; ++byte) {
      const int hi = nibble(hex[w * 16 + 2 * byte]);
      const int lo = nibble(hex[w * 16 + 2 * byte + 1]);
      if (hi < 0 || lo < 0) fail(ErrorCode::parse_error, "invalid hex digit (lowercase only)");
      word |= static_cast<std::uint64_t>(hi * 16 + lo) << (8 * byte);
    }
    s.bits_[w] = word;
  }
  GroupSet all = full(s.space_);
  if (!s.is_subset_of(all)) fail(ErrorCode::parse_error, "hex set has bits beyond the group order");
  return s;
}

bool hex_less(const GroupSet& a, const GroupSet& b) {
  a.require_same(b);
  for (std::size_t w = 0; w < a.bits_.size(); ++w) {
    if (a.bits_[w] == b.bits_[w]) continue;
    // the first differing byte (lowest-order) decides
    const std::uint64_t diff = a.bits_[w] ^ b.bits_[w];
    const int byte = std::countr_zero(diff) / 8;
    return ((a.bits_[w] >> (8 * byte)) & 0xff) < ((b.bits_[w] >> (8 * byte)) & 0xff);
  }
  return false;
}

// ---------------------------------------------------------------------------

GroupSet sumset(const GroupSet& a, const GroupSet& b) {
  if (!(a.space() == b.space())) fail(ErrorCode::space_mismatch, "sumset operands live in different spaces");
  const GroupSet& small = a.size() <= b.size() ? a : b;
  const GroupSet& large = a.size() <= b.size() ? b : a;
  const Space& s = a.space();
  GroupSet out(s);
  std::vector<std::uint64_t> shifted(s.words()), scratch(s.words());
  auto dst = out.mutable_words();
  detail::for_each_bit(small.words(), [&](std::uint32_t x) {
    detail::translate(s, large.words(), Element{x}, shifted, scratch);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= shifted[i];
  });
  return out;
}

GroupSet difference_set(const GroupSet& a, const GroupSet& b) { return sumset(a, negate(b)); }

GroupSet dilate(const GroupSet& a, Residue c) {
  const Space& s = a.space();
  if (c % s.p() == 0) fail(ErrorCode::zero_dilation, "dilation factor must be nonzero mod p");
  GroupSet out(s);
  detail::for_each_bit(a.words(), [&](std::uint32_t x) { out.insert(s.scale(c, Element{x})); });
  return out;
}

GroupSet negate(const GroupSet& a) { return dilate(a, a.space().p() - 1); }

GroupSet apply(const LinearAuto& phi, const GroupSet& a) {
  const Space& s = a.space();
  GroupSet out(s);
  detail::for_each_bit(a.words(), [&](std::uint32_t x) { out.insert(phi(s, Element{x})); });
  return out;
}

bool is_sum_free(const GroupSet& a) {
  const Space& s = a.space();
  std::vector<std::uint64_t> shifted(s.words()), scratch(s.words());
  const auto words = a.words();
  bool ok = true;
  detail::for_each_bit_until(words, [&](std::uint32_t x) {
    detail::translate(s, words, Element{x}, shifted, scratch);
    for (std::size_t i = 0; i < words.size(); ++i)
      if (shifted[i] & words[i]) {
        ok = false;
        return false;
      }
    return true;
  });
  return ok;
}

GroupSet symmetry_group(const GroupSet& x) {
  const Space& s = x.space();
  const auto members = x.indices();
  if (members.empty()) fail(ErrorCode::empty_input, "symmetry group of the empty set");
  // g + X = X forces g + x0 in X, so only g in X - x0 need testing.
  const Element x0{members.front()};
  GroupSet out(s);
  for (auto y : members) {
    const Element g = s.sub(Element{y}, x0);
    if (x.translate(g) == x) out.insert(g);
  }
  return out;
}

bool is_subspace(const GroupSet& k) {
  if (!k.contains(0u)) return false;
  return sumset(k, k) == k;
}

GroupSet product(const Space& s, const GroupSet& first, const GroupSet& rest) {
  if (s.n() < 2) fail(ErrorCode::invalid_argument, "product requires n >= 2");
  if (first.space().n() != 1 || first.space().p() != s.p())
    fail(ErrorCode::space_mismatch, "first factor must live in F_p");
  if (!(rest.space() == s.quotient())) fail(ErrorCode::space_mismatch, "second factor must live in F_p^(n-1)");
  GroupSet out(s);
  const auto block = s.stride(0);
  const auto tail = rest.indices();
  for (auto k : first.indices())
    for (auto y : tail) out.insert(k * block + y);
  return out;
}

GroupSet fibre(const GroupSet& a, Residue k) {
  const Space& s = a.space();
  const Space q = s.quotient();
  GroupSet out(q);
  const auto block = s.stride(0);
  for (std::uint32_t y = 0; y < block; ++y)
    if (a.contains(k * block + y)) out.insert(y);
  return out;
}

// ---------------------------------------------------------------------------

bool exceeds_kneser_threshold(const Space& s, std::uint64_t total) {
  const unsigned __int128 p = s.p();
  unsigned __int128 pn = 1;
  for (std::uint32_t i = 0; i < s.n(); ++i) pn *= p;
  return static_cast<unsigned __int128>(total) * p * p > (p * p + 1) * pn;
}

KneserDecomposition kneser_decompose(const GroupSet& a, const GroupSet& b, const GroupSet& c) {
  const Space& s = a.space();
  if (!(b.space() == s) || !(c.space() == s)) fail(ErrorCode::space_mismatch, "decomposition operands differ in space");
  if (a.empty() || b.empty() || c.empty()) fail(ErrorCode::hypothesis_violated, "A, B, C must be nonempty");
  const GroupSet ab = sumset(a, b);
  if (ab.intersects(c)) fail(ErrorCode::hypothesis_violated, "(A+B) meets C");
  if (!exceeds_kneser_threshold(s, a.size() + b.size() + c.size()))
    fail(ErrorCode::hypothesis_violated, "|A|+|B|+|C| does not exceed (p^2+1)p^(n-2)");

  GroupSet k = symmetry_group(ab);
  if (k.size() != s.order() / s.p())
    fail(ErrorCode::internal, "Sym(A+B) is not a hyperplane although the size hypothesis holds");

  std::uint32_t axis = 0;
  while (axis < s.n() && k.contains(s.stride(axis))) ++axis;
  if (axis == s.n()) fail(ErrorCode::internal, "hyperplane contains every basis vector");
  const Element dir{s.stride(axis)};

  GroupSet line(s);
  for (Residue t = 0; t < s.p(); ++t) line.insert(s.scale(t, dir));

  // Each coset of K meets L exactly once.
  auto project = [&](const GroupSet& x) {
    GroupSet star(s);
    detail::for_each_bit(x.words(), [&](std::uint32_t v) {
      for (Residue t = 0; t < s.p(); ++t) {
        const Element l = s.scale(t, dir);
        if (k.contains(s.sub(Element{v}, l))) {
          star.insert(l);
          break;
        }
      }
    });
    return star;
  };

  return KneserDecomposition{k, line, dir, project(a), project(b), project(c)};
}

}  // namespace sumfree
