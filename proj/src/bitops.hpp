#pragma once

// Word-level helpers shared by the set algebra and the search engine.

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "sumfree/space.hpp"

namespace sumfree::detail {

inline void fill_prefix(std::span<std::uint64_t> words, std::uint32_t count) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::uint64_t lo = std::uint64_t{w} * 64;
    if (lo + 64 <= count)
      words[w] = ~std::uint64_t{0};
    else if (lo < count)
      words[w] = (std::uint64_t{1} << (count - lo)) - 1;
    else
      words[w] = 0;
  }
}

template <class F>
void for_each_bit(std::span<const std::uint64_t> words, F&& f) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t v = words[w];
    while (v) {
      const int b = std::countr_zero(v);
      f(static_cast<std::uint32_t>(w * 64 + b));
      v &= v - 1;
    }
  }
}

// Stops as soon as f returns false.
template <class F>
void for_each_bit_until(std::span<const std::uint64_t> words, F&& f) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t v = words[w];
    while (v) {
      const int b = std::countr_zero(v);
      if (!f(static_cast<std::uint32_t>(w * 64 + b))) return;
      v &= v - 1;
    }
  }
}

// out |= in << k (in bits), truncated to out's width.
inline void or_shift_left(std::span<const std::uint64_t> in, std::size_t k, std::span<std::uint64_t> out) {
  const std::size_t q = k / 64, r = k % 64;
  for (std::size_t w = out.size(); w-- > q;) {
    std::uint64_t v = in[w - q] << r;
    if (r && w - q >= 1) v |= in[w - q - 1] >> (64 - r);
    out[w] |= v;
  }
}

// out |= in >> k.
inline void or_shift_right(std::span<const std::uint64_t> in, std::size_t k, std::span<std::uint64_t> out) {
  const std::size_t q = k / 64, r = k % 64;
  for (std::size_t w = 0; w + q < in.size(); ++w) {
    std::uint64_t v = in[w + q] >> r;
    if (r && w + q + 1 < in.size()) v |= in[w + q + 1] << (64 - r);
    out[w] |= v;
  }
}

// dst = g + src. Adding d to digit i moves an element up by d*stride(i) unless
// the digit wraps, in which case it moves down by (p-d)*stride(i).
inline void translate(const Space& s, std::span<const std::uint64_t> src, Element g, std::span<std::uint64_t> dst,
                      std::span<std::uint64_t> scratch) {
  const std::size_t nw = src.size();
  for (std::size_t w = 0; w < nw; ++w) dst[w] = src[w];
  for (std::uint32_t i = 0; i < s.n(); ++i) {
    const Residue d = s.digit(g, i);
    if (d == 0) continue;
    const auto low = s.low_mask(i, d);
    const std::size_t stride = s.stride(i);
    for (std::size_t w = 0; w < nw; ++w) scratch[w] = dst[w];
    for (std::size_t w = 0; w < nw; ++w) dst[w] = 0;
    // low part
    std::uint64_t tmp_small[8]{};
    if (nw <= 8) {
      for (std::size_t w = 0; w < nw; ++w) tmp_small[w] = scratch[w] & low[w];
      or_shift_left({tmp_small, nw}, std::size_t{d} * stride, dst);
      for (std::size_t w = 0; w < nw; ++w) tmp_small[w] = scratch[w] & ~low[w];
      or_shift_right({tmp_small, nw}, std::size_t{s.p() - d} * stride, dst);
    } else {
      std::vector<std::uint64_t> tmp(nw);
      for (std::size_t w = 0; w < nw; ++w) tmp[w] = scratch[w] & low[w];
      or_shift_left(tmp, std::size_t{d} * stride, dst);
      for (std::size_t w = 0; w < nw; ++w) tmp[w] = scratch[w] & ~low[w];
      or_shift_right(tmp, std::size_t{s.p() - d} * stride, dst);
    }
  }
}

}  // namespace sumfree::detail
