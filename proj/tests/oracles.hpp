// Reference implementations for tests. They work on coordinate vectors and
// plain masks and share no code with the library's bitset kernels.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "sumfree/group_set.hpp"

namespace oracle {

struct Grid {
  std::uint32_t p, n, order;

  Grid(std::uint32_t p_, std::uint32_t n_) : p(p_), n(n_), order(1) {
    for (std::uint32_t i = 0; i < n; ++i) order *= p;
  }

  std::vector<std::uint32_t> coords(std::uint32_t idx) const {
    std::vector<std::uint32_t> c(n);
    for (std::uint32_t i = n; i-- > 0;) {
      c[i] = idx % p;
      idx /= p;
    }
    return c;
  }
  std::uint32_t index(const std::vector<std::uint32_t>& c) const {
    std::uint32_t idx = 0;
    for (auto v : c) idx = idx * p + v;
    return idx;
  }
  std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
    auto a = coords(x), b = coords(y);
    for (std::uint32_t i = 0; i < n; ++i) a[i] = (a[i] + b[i]) % p;
    return index(a);
  }
  std::uint32_t neg(std::uint32_t x) const {
    auto a = coords(x);
    for (auto& v : a) v = (p - v) % p;
    return index(a);
  }
  std::uint32_t scale(std::uint32_t c, std::uint32_t x) const {
    auto a = coords(x);
    for (auto& v : a) v = static_cast<std::uint32_t>((std::uint64_t{c} * v) % p);
    return index(a);
  }
  // y = M x, M row-major.
  std::uint32_t mul(const std::vector<std::uint32_t>& m, std::uint32_t x) const {
    const auto a = coords(x);
    std::vector<std::uint32_t> out(n, 0);
    for (std::uint32_t r = 0; r < n; ++r) {
      std::uint64_t acc = 0;
      for (std::uint32_t c = 0; c < n; ++c) acc += std::uint64_t{m[r * n + c]} * a[c];
      out[r] = static_cast<std::uint32_t>(acc % p);
    }
    return index(out);
  }
};

using Members = std::vector<std::uint32_t>;

inline Members members(const sumfree::GroupSet& a) { return a.indices(); }

inline std::vector<char> indicator(const Grid& g, const Members& a) {
  std::vector<char> v(g.order, 0);
  for (auto x : a) v[x] = 1;
  return v;
}

inline Members sumset(const Grid& g, const Members& a, const Members& b) {
  std::vector<char> hit(g.order, 0);
  for (auto x : a)
    for (auto y : b) hit[g.add(x, y)] = 1;
  Members out;
  for (std::uint32_t z = 0; z < g.order; ++z)
    if (hit[z]) out.push_back(z);
  return out;
}

inline bool is_sum_free(const Grid& g, const Members& a) {
  const auto in = indicator(g, a);
  for (auto x : a)
    for (auto y : a)
      if (in[g.add(x, y)]) return false;
  return true;
}

inline Members symmetry(const Grid& g, const Members& x) {
  const auto in = indicator(g, x);
  Members out;
  for (std::uint32_t t = 0; t < g.order; ++t) {
    bool ok = true;
    for (auto v : x)
      if (!in[g.add(t, v)]) ok = false;
    if (ok) out.push_back(t);
  }
  return out;
}

inline std::vector<std::complex<double>> dft(const Grid& g, const Members& a) {
  std::vector<std::complex<double>> out(g.order);
  for (std::uint32_t y = 0; y < g.order; ++y) {
    const auto cy = g.coords(y);
    std::complex<double> acc = 0;
    for (auto x : a) {
      const auto cx = g.coords(x);
      std::uint64_t dot = 0;
      for (std::uint32_t i = 0; i < g.n; ++i) dot += std::uint64_t{cx[i]} * cy[i];
      const double t = -2.0 * std::numbers::pi * static_cast<double>(dot % g.p) / g.p;
      acc += std::complex<double>(std::cos(t), std::sin(t));
    }
    out[y] = acc;
  }
  return out;
}

// Literal recursion of the hierarchy over all subsets of a group of order <= 20.
// families[j] holds the masks of the extremal sets at level j.
struct Hierarchy {
  std::vector<std::size_t> values;
  std::vector<std::vector<std::uint32_t>> families;
};

inline Hierarchy brute_hierarchy(const Grid& g, std::uint32_t k) {
  std::vector<std::uint32_t> sf;
  const std::uint64_t total = std::uint64_t{1} << g.order;
  std::vector<std::uint32_t> sum(g.order * g.order);
  for (std::uint32_t x = 0; x < g.order; ++x)
    for (std::uint32_t y = 0; y < g.order; ++y) sum[x * g.order + y] = g.add(x, y);
  for (std::uint64_t m = 0; m < total; ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    bool ok = true;
    for (std::uint32_t x = 0; x < g.order && ok; ++x)
      if ((mask >> x) & 1u)
        for (std::uint32_t y = 0; y < g.order && ok; ++y)
          if (((mask >> y) & 1u) && ((mask >> sum[x * g.order + y]) & 1u)) ok = false;
    if (ok) sf.push_back(mask);
  }
  Hierarchy h;
  std::vector<std::uint32_t> level = sf;
  for (std::uint32_t j = 0; j <= k; ++j) {
    std::size_t best = 0;
    for (auto m : level) best = std::max<std::size_t>(best, std::popcount(m));
    std::vector<std::uint32_t> top;
    for (auto m : level)
      if (static_cast<std::size_t>(std::popcount(m)) == best) top.push_back(m);
    if (level.empty()) {
      best = 0;
      top.clear();
    }
    h.values.push_back(best);
    h.families.push_back(top);
    std::vector<std::uint32_t> next;
    for (auto m : level) {
      bool covered = false;
      for (auto b : top)
        if ((m & ~b) == 0) covered = true;
      if (!covered) next.push_back(m);
    }
    level = std::move(next);
  }
  return h;
}

inline std::uint32_t to_mask(const sumfree::GroupSet& a) {
  std::uint32_t m = 0;
  for (auto x : a.indices()) m |= 1u << x;
  return m;
}

// Random sum-free set grown greedily from the empty set.
inline Members random_sum_free(const Grid& g, std::mt19937_64& rng, std::size_t cap) {
  std::vector<std::uint32_t> order(g.order);
  for (std::uint32_t i = 0; i < g.order; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  Members a;
  std::vector<char> in(g.order, 0);
  for (auto x : order) {
    if (a.size() >= cap) break;
    a.push_back(x);
    in[x] = 1;
    if (!is_sum_free(g, a)) {
      a.pop_back();
      in[x] = 0;
    }
  }
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace oracle
