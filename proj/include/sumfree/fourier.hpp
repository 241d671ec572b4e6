#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "sumfree/group_set.hpp"

namespace sumfree {

/// values[y] = sum over x in A of exp(-2 pi i <x,y> / p), y indexed like elements.
struct Spectrum {
  std::vector<std::complex<double>> values;
  std::size_t set_size = 0;
};

Spectrum spectrum(const GroupSet& a);

/// Reference O(p^(2n)) double sum; test and verification use only.
Spectrum spectrum_naive(const GroupSet& a);

struct BoundCheck {
  double min_real = 0.0;  // min over nontrivial characters of Re A^(y)
  double bound = 0.0;     // -|A|^2 / (|G| - |A|)
  bool ok = false;        // min_real <= bound + 1e-9
  Element argmin{};
};

/// Requires A nonempty and sum-free.
BoundCheck sum_free_bound_check(const GroupSet& a);

struct SliceProfile {
  LinearForm form;
  std::vector<std::size_t> sizes;  // sizes[k] = |A & form^-1(k)|
};

SliceProfile slice_profile(const GroupSet& a, const LinearForm& form);
LinearForm first_coordinate_form(const Space& s);

struct L1Deviation {
  double U = 0.0;  // lower median of the sizes
  std::uint64_t deviation = 0;
};

L1Deviation slice_l1_deviation(const SliceProfile& profile);

enum class Prop24Status { not_applicable, holds, violated };

struct Prop24Result {
  Prop24Status status = Prop24Status::not_applicable;
  double lhs = 0.0;  // sum_{k=1}^{10} (1 - cos(2 k pi / 11)) |A_k|
  double rhs = 0.0;  // 11 |A| / 8
  std::vector<std::size_t> profile;
};

/// The weighted slice inequality for sum-free sets of F_11^n (n >= 2) with at
/// least 3 * 11^(n-1) elements and at most two empty first-coordinate slices.
Prop24Result prop24_check(const GroupSet& a);

inline constexpr double kRealTolerance = 1e-9;

}  // namespace sumfree
