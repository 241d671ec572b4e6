#pragma once

#include <optional>

#include "sumfree/group_set.hpp"

namespace sumfree {

/// Data for one structured set: A = auto[B x F_p^(n-ell)] where B is the very
/// structured subset of F_p^ell built from P. P lives in F_p^(ell-1) and is
/// absent when ell = 1.
struct StructuredWitness {
  std::uint32_t ell = 1;
  LinearAuto automorphism;
  std::optional<GroupSet> P;
};

/// [(p+1)/3, (2p-1)/3] x F_p^(n-1); requires p = 2 (mod 3).
GroupSet cuboid(const Space& s);

/// The five-part set on the first coordinate for p = 6m-1 >= 11:
///   {(2m-1,0)} | {2m} x (F\P) | [2m+1,4m-3] x F | {4m-2} x (F\{0}) | {4m-1} x P
/// P must satisfy 0 not in P+P; at n = 1 it must be absent.
GroupSet very_structured(const Space& s, const std::optional<GroupSet>& P = std::nullopt);

GroupSet structured(const Space& s, const StructuredWitness& w);

/// Size (2m-1)p^(n-1) - 1 witness for the second level when p = 6m-1.
/// n = 1: [2m-2, 4m-5], needs p >= 17. n >= 2: x is a nonzero vector of F_p^(n-1).
GroupSet witness_sf2_2mod3(const Space& s, std::optional<Element> x = std::nullopt);

enum class RsVariant { low, high, split };

/// The extremal sum-free families for p = 3m+1. K is a subspace of F_p^(n-1)
/// and is ignored for `high` and for n = 1.
GroupSet rs_family(const Space& s, RsVariant variant, const std::optional<GroupSet>& K = std::nullopt);

/// Size m p^(n-1) - 1 witness for the first level when p = 3m+1 >= 13.
GroupSet witness_sf1_1mod3(const Space& s, std::optional<Element> x = std::nullopt);

/// Middle interval I_p used by the cuboid: [(p+1)/3, (2p-1)/3] as a residue mask
/// (entry r is true iff r is in the interval). For p in {2, 3} this is {1}.
std::vector<char> middle_interval(std::uint32_t p);

/// All subspaces of F_p^d, smallest first.
std::vector<GroupSet> subspaces(const Space& s);

}  // namespace sumfree
