#include "sumfree/build.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace sumfree {
namespace {

// {k} x rest, OR-ed into out. rest is null for n = 1.
void put_slice(GroupSet& out, Residue k, const GroupSet* rest) {
  const Space& s = out.space();
  const auto block = s.stride(0);
  if (s.n() == 1) {
    out.insert(k % s.p());
    return;
  }
  for (auto y : rest->indices()) out.insert((k % s.p()) * block + y);
}

void put_full_slices(GroupSet& out, Residue lo, Residue hi) {
  const Space& s = out.space();
  const auto block = s.stride(0);
  for (Residue k = lo; k <= hi; ++k)
    for (std::uint32_t y = 0; y < block; ++y) out.insert((k % s.p()) * block + y);
}

std::uint32_t require_6m_minus_1(const Space& s, std::uint32_t min_p) {
  auto m = s.m_6m_minus_1();
  if (!m || s.p() < min_p)
    fail(ErrorCode::bad_prime, "requires a prime p = 6m-1 >= " + std::to_string(min_p) + ", got " + std::to_string(s.p()));
  return *m;
}

std::uint32_t require_3m_plus_1(const Space& s, std::uint32_t min_p) {
  auto m = s.m_3m_plus_1();
  if (!m || s.p() < min_p)
    fail(ErrorCode::bad_prime, "requires a prime p = 3m+1 >= " + std::to_string(min_p) + ", got " + std::to_string(s.p()));
  return *m;
}

// F^(n-1) \ {0, x, 2x}
GroupSet punctured(const Space& q, Element x) {
  if (x.index == 0) fail(ErrorCode::zero_direction, "direction x must be nonzero");
  if (x.index >= q.order()) fail(ErrorCode::invalid_argument, "direction x out of range");
  const Element twice = q.scale(2, x);
  if (twice.index == 0 || twice == x) fail(ErrorCode::zero_direction, "2x coincides with 0 or x");
  GroupSet out = GroupSet::full(q);
  out.erase(Element{0});
  out.erase(x);
  out.erase(twice);
  return out;
}

GroupSet lift(const Space& s, const GroupSet& b) {
  // b x F_p^(n - ell)
  const std::uint32_t block = s.order() / b.space().order();
  GroupSet out(s);
  for (auto v : b.indices())
    for (std::uint32_t z = 0; z < block; ++z) out.insert(v * block + z);
  return out;
}

}  // namespace

std::vector<char> middle_interval(std::uint32_t p) {
  std::vector<char> mask(p, 0);
  if (p == 2 || p == 3) {
    mask[1] = 1;
    return mask;
  }
  if (p % 3 != 2) fail(ErrorCode::unsupported_prime, "the middle interval is defined for p = 2 (mod 3) and p = 3");
  for (std::uint32_t r = (p + 1) / 3; r <= (2 * p - 1) / 3; ++r) mask[r] = 1;
  return mask;
}

GroupSet cuboid(const Space& s) {
  if (s.p() % 3 != 2)
    fail(ErrorCode::wrong_residue_class, "cuboid requires p = 2 (mod 3), got p = " + std::to_string(s.p()));
  return GroupSet::slab(s, (s.p() + 1) / 3, (2 * s.p() - 1) / 3);
}

GroupSet very_structured(const Space& s, const std::optional<GroupSet>& P) {
  const std::uint32_t m = require_6m_minus_1(s, 11);
  GroupSet out(s);
  if (s.n() == 1) {
    if (P) fail(ErrorCode::bad_p, "P must be empty when n = 1");
    put_full_slices(out, 2 * m - 1, 4 * m - 3);
    return out;
  }
  const Space q = s.quotient();
  GroupSet p_set = P ? *P : GroupSet(q);
  if (!(p_set.space() == q)) fail(ErrorCode::space_mismatch, "P must live in F_p^(n-1)");
  if (sumset(p_set, p_set).contains(0u)) fail(ErrorCode::bad_p, "0 lies in P+P");

  const GroupSet zero(q, {0});
  const GroupSet all = GroupSet::full(q);
  put_slice(out, 2 * m - 1, &zero);
  const GroupSet not_p = all - p_set;
  put_slice(out, 2 * m, &not_p);
  put_full_slices(out, 2 * m + 1, 4 * m - 3);
  const GroupSet not_zero = all - zero;
  put_slice(out, 4 * m - 2, &not_zero);
  put_slice(out, 4 * m - 1, &p_set);
  return out;
}

GroupSet structured(const Space& s, const StructuredWitness& w) {
  if (w.ell < 1 || w.ell > s.n()) fail(ErrorCode::invalid_argument, "ell must lie in [1, n]");
  if (w.automorphism.n() != s.n() || w.automorphism.p() != s.p())
    fail(ErrorCode::space_mismatch, "automorphism does not act on this space");
  const Space base(s.p(), w.ell);
  const GroupSet b = very_structured(base, w.P);
  return apply(w.automorphism, lift(s, b));
}

GroupSet witness_sf2_2mod3(const Space& s, std::optional<Element> x) {
  GroupSet out(s);
  if (s.n() == 1) {
    const std::uint32_t m = require_6m_minus_1(s, 17);
    put_full_slices(out, 2 * m - 2, 4 * m - 5);
    return out;
  }
  const std::uint32_t m = require_6m_minus_1(s, 11);
  const Space q = s.quotient();
  if (!x) fail(ErrorCode::zero_direction, "a nonzero direction x is required for n >= 2");
  const GroupSet rest = punctured(q, *x);
  const GroupSet pair(q, {0u, x->index});
  put_slice(out, 2 * m - 1, &pair);
  put_full_slices(out, 2 * m, 4 * m - 3);
  put_slice(out, 4 * m - 2, &rest);
  return out;
}

GroupSet rs_family(const Space& s, RsVariant variant, const std::optional<GroupSet>& K) {
  const std::uint32_t m = require_3m_plus_1(s, 7);
  GroupSet out(s);
  if (s.n() == 1) {
    switch (variant) {
      case RsVariant::low: put_full_slices(out, m, 2 * m - 1); break;
      case RsVariant::high: put_full_slices(out, m + 1, 2 * m); break;
      case RsVariant::split:
        put_full_slices(out, m, 2 * m + 1);
        out.erase(Element{m + 1});
        out.erase(Element{2 * m});
        break;
    }
    return out;
  }
  if (variant == RsVariant::high) {
    put_full_slices(out, m + 1, 2 * m);
    return out;
  }
  const Space q = s.quotient();
  if (!K) fail(ErrorCode::not_subspace, "subspace K is required for this variant when n >= 2");
  if (!(K->space() == q)) fail(ErrorCode::space_mismatch, "K must live in F_p^(n-1)");
  if (!is_subspace(*K)) fail(ErrorCode::not_subspace, "K is not a subspace of F_p^(n-1)");
  const GroupSet rest = K->complement();
  if (variant == RsVariant::low) {
    put_slice(out, m, &*K);
    put_full_slices(out, m + 1, 2 * m - 1);
    put_slice(out, 2 * m, &rest);
  } else {
    put_slice(out, m, &*K);
    put_slice(out, 2 * m + 1, &*K);
    put_slice(out, m + 1, &rest);
    put_slice(out, 2 * m, &rest);
    if (m >= 2) put_full_slices(out, m + 2, 2 * m - 1);
  }
  return out;
}

GroupSet witness_sf1_1mod3(const Space& s, std::optional<Element> x) {
  const std::uint32_t m = require_3m_plus_1(s, 13);
  GroupSet out(s);
  if (s.n() == 1) {
    put_full_slices(out, m - 1, 2 * m - 3);
    return out;
  }
  const Space q = s.quotient();
  if (!x) fail(ErrorCode::zero_direction, "a nonzero direction x is required for n >= 2");
  const GroupSet rest = punctured(q, *x);
  const GroupSet pair(q, {0u, x->index});
  put_slice(out, m, &pair);
  put_full_slices(out, m + 1, 2 * m - 1);
  put_slice(out, 2 * m, &rest);
  return out;
}

std::vector<GroupSet> subspaces(const Space& s) {
  std::vector<GroupSet> out{GroupSet(s, {0u})};
  std::set<std::string> seen{out.front().to_hex()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const GroupSet current = out[i];
    for (std::uint32_t v = 1; v < s.order(); ++v) {
      if (current.contains(v)) continue;
      GroupSet line(s);
      for (Residue t = 0; t < s.p(); ++t) line.insert(s.scale(t, Element{v}));
      GroupSet bigger = sumset(current, line);
      if (seen.insert(bigger.to_hex()).second) out.push_back(std::move(bigger));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const GroupSet& a, const GroupSet& b) { return a.size() < b.size(); });
  return out;
}

}  // namespace sumfree
