#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sumfree/build.hpp"
#include "sumfree/group_set.hpp"

namespace sumfree {

struct Budget {
  std::uint64_t max_nodes = 500'000'000;
  bool deterministic = true;
  /// Witnesses beyond this count are counted but not stored.
  std::uint64_t max_witnesses = 2'000'000;
};

enum class SearchStatus { proved, indeterminate };
enum class DedupMode { none, isomorphism };

std::string to_string(SearchStatus s);
std::string to_string(DedupMode d);

struct SearchOutcome {
  std::size_t value = 0;
  /// Sorted by hex serialization.
  std::vector<GroupSet> witnesses;
  SearchStatus status = SearchStatus::proved;
  std::uint64_t nodes = 0;
  DedupMode dedup = DedupMode::none;
  /// Number of extremal sets found; may exceed witnesses.size() when the
  /// storage cap was hit or after deduplication.
  std::uint64_t witness_count = 0;
  bool witnesses_complete = true;
};

/// Restricts the search. A candidate is accepted iff it is not contained in
/// any member of `excluded_supersets` and `predicate` (if set) holds.
struct SearchFilter {
  std::vector<GroupSet> excluded_supersets;
  std::function<bool(const GroupSet&)> predicate;

  bool accepts(const GroupSet& a) const;
};

/// Largest sum-free sets passing the filter, all of them. Supports p^n <= 256.
SearchOutcome max_sum_free(const Space& s, const SearchFilter& filter = {}, const Budget& budget = {});

/// Some nonzero form maps A into the middle interval I_p, i.e. A lies inside an
/// automorphic image of the cuboid. p = 2 (mod 3) or p = 3.
bool is_cuboid_covered(const GroupSet& a);

/// All sets {x : c*lambda(x) in I_p}: the automorphic images of the cuboid.
std::vector<GroupSet> cuboid_images(const Space& s);

/// A subset of phi[B] for some member B and automorphism phi. Members that are
/// unions of first-coordinate fibres are handled through linear forms; other
/// members require enumerating GL(n,p) up to `cap`.
bool covered_by_family(const GroupSet& a, const std::vector<GroupSet>& family,
                       std::uint64_t cap = kDefaultAutomorphismCap);

/// Levels 0..k of the sf hierarchy. Level j excludes every set contained in a
/// level j-1 extremal set; the previous level's witness list must therefore be
/// complete, otherwise the remaining levels are reported indeterminate.
std::vector<SearchOutcome> sf_hierarchy(const Space& s, std::uint32_t k, const Budget& budget = {});

bool verify_structured_witness(const GroupSet& a, const StructuredWitness& w);

/// Outcome of structured-set recognition.
struct Recognition {
  std::optional<StructuredWitness> witness;
  /// Absence of a witness is conclusive.
  bool conclusive = true;
};

/// Form-based recognition: tries every nonzero form lambda with
/// lambda[A] in [2m-1, 4m-1], normalizes the bottom fibre to a subspace and
/// compares against the five-part shape. Always conclusive.
Recognition recognize_structured(const GroupSet& a);

/// Reference route: enumerate GL(n,p) (up to cap) and compare phi^-1[A] with
/// every very structured product. Inconclusive when the group exceeds cap.
Recognition recognize_structured_by_automorphisms(const GroupSet& a, std::uint64_t cap = kDefaultAutomorphismCap);

/// Keeps one representative (smallest by hex) per automorphism orbit.
std::vector<GroupSet> dedup_by_automorphism(const std::vector<GroupSet>& sets,
                                            std::uint64_t cap = kDefaultAutomorphismCap);

/// Orbit of a set under all automorphisms, sorted by hex.
std::vector<GroupSet> automorphic_images(const GroupSet& a, std::uint64_t cap = kDefaultAutomorphismCap);

}  // namespace sumfree
