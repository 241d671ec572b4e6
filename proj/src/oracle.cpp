#include <algorithm>
#include <bit>

#include "sumfree/verify.hpp"

namespace sumfree {

SearchOutcome oracle_max_sum_free(const Space& s) {
  const std::uint32_t order = s.order();
  if (order > 25) fail(ErrorCode::space_too_large, "the exhaustive oracle supports p^n <= 25");

  std::vector<std::uint32_t> sum(order * order);
  for (std::uint32_t x = 0; x < order; ++x)
    for (std::uint32_t y = 0; y < order; ++y) sum[x * order + y] = s.add(Element{x}, Element{y}).index;

  auto sum_free = [&](std::uint32_t mask) {
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
      const auto x = static_cast<std::uint32_t>(std::countr_zero(rest));
      for (std::uint32_t ys = rest; ys; ys &= ys - 1) {
        const auto y = static_cast<std::uint32_t>(std::countr_zero(ys));
        if ((mask >> sum[x * order + y]) & 1u) return false;
      }
    }
    return true;
  };

  int best = 0;
  std::vector<std::uint32_t> found{0};
  const std::uint64_t total = std::uint64_t{1} << order;
  for (std::uint64_t m = 2; m < total; m += 2) {  // odd masks contain 0
    const auto mask = static_cast<std::uint32_t>(m);
    const int size = std::popcount(mask);
    if (size < best || !sum_free(mask)) continue;
    if (size > best) {
      best = size;
      found.clear();
    }
    found.push_back(mask);
  }

  SearchOutcome out;
  out.value = static_cast<std::size_t>(best);
  out.nodes = total;
  for (auto mask : found) {
    GroupSet g(s);
    g.mutable_words()[0] = mask;
    out.witnesses.push_back(std::move(g));
  }
  std::sort(out.witnesses.begin(), out.witnesses.end(), hex_less);
  out.witness_count = out.witnesses.size();
  return out;
}

}  // namespace sumfree
