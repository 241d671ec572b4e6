#include "sumfree/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sumfree {
namespace {

std::vector<std::complex<double>> roots(std::uint32_t p) {
  // roots[k] = exp(-2 pi i k / p)
  std::vector<std::complex<double>> w(p);
  for (std::uint32_t k = 0; k < p; ++k) {
    const double t = -2.0 * std::numbers::pi * static_cast<double>(k) / p;
    w[k] = {std::cos(t), std::sin(t)};
  }
  return w;
}

}  // namespace

Spectrum spectrum(const GroupSet& a) {
  const Space& s = a.space();
  const std::uint32_t p = s.p();
  const auto w = roots(p);
  std::vector<std::complex<double>> f(s.order());
  for (auto x : a.indices()) f[x] = 1.0;

  // One p-point DFT along every line parallel to each coordinate axis.
  std::vector<std::complex<double>> line(p), out(p);
  for (std::uint32_t i = 0; i < s.n(); ++i) {
    const std::uint32_t stride = s.stride(i);
    const std::uint32_t block = stride * p;
    for (std::uint32_t base = 0; base < s.order(); base += block) {
      for (std::uint32_t off = 0; off < stride; ++off) {
        for (std::uint32_t t = 0; t < p; ++t) line[t] = f[base + off + t * stride];
        for (std::uint32_t y = 0; y < p; ++y) {
          std::complex<double> acc = 0.0;
          for (std::uint32_t x = 0; x < p; ++x) acc += line[x] * w[(std::uint64_t{x} * y) % p];
          out[y] = acc;
        }
        for (std::uint32_t t = 0; t < p; ++t) f[base + off + t * stride] = out[t];
      }
    }
  }
  return Spectrum{std::move(f), a.size()};
}

Spectrum spectrum_naive(const GroupSet& a) {
  const Space& s = a.space();
  const auto w = roots(s.p());
  const auto members = a.indices();
  Spectrum out{std::vector<std::complex<double>>(s.order()), members.size()};
  for (std::uint32_t y = 0; y < s.order(); ++y) {
    std::complex<double> acc = 0.0;
    for (auto x : members) {
      std::uint64_t dot = 0;
      for (std::uint32_t i = 0; i < s.n(); ++i) dot += std::uint64_t{s.digit(Element{x}, i)} * s.digit(Element{y}, i);
      acc += w[dot % s.p()];
    }
    out.values[y] = acc;
  }
  return out;
}

BoundCheck sum_free_bound_check(const GroupSet& a) {
  if (a.empty()) fail(ErrorCode::empty_input, "bound check needs a nonempty set");
  if (!is_sum_free(a)) fail(ErrorCode::not_sum_free, "bound check needs a sum-free set");
  const Space& s = a.space();
  const Spectrum spec = spectrum(a);
  BoundCheck out;
  out.min_real = spec.values[1].real();
  out.argmin = Element{1};
  for (std::uint32_t y = 2; y < s.order(); ++y) {
    if (spec.values[y].real() < out.min_real) {
      out.min_real = spec.values[y].real();
      out.argmin = Element{y};
    }
  }
  const double size = static_cast<double>(a.size());
  out.bound = -size * size / (static_cast<double>(s.order()) - size);
  out.ok = out.min_real <= out.bound + kRealTolerance;
  return out;
}

LinearForm first_coordinate_form(const Space& s) {
  std::vector<Residue> c(s.n(), 0);
  c[0] = 1;
  return LinearForm(std::move(c));
}

SliceProfile slice_profile(const GroupSet& a, const LinearForm& form) {
  const Space& s = a.space();
  SliceProfile out{form, std::vector<std::size_t>(s.p(), 0)};
  for (auto x : a.indices()) ++out.sizes[form(s, Element{x})];
  return out;
}

L1Deviation slice_l1_deviation(const SliceProfile& profile) {
  std::vector<std::size_t> sorted = profile.sizes;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t median = sorted[(sorted.size() - 1) / 2];
  std::uint64_t dev = 0;
  for (auto v : profile.sizes) dev += v > median ? v - median : median - v;
  return L1Deviation{static_cast<double>(median), dev};
}

Prop24Result prop24_check(const GroupSet& a) {
  const Space& s = a.space();
  if (s.p() != 11 || s.n() < 2) fail(ErrorCode::wrong_space, "the weighted slice inequality lives in F_11^n, n >= 2");
  Prop24Result out;
  out.profile = slice_profile(a, first_coordinate_form(s)).sizes;
  const std::size_t empty_slices = static_cast<std::size_t>(std::count(out.profile.begin(), out.profile.end(), 0u));
  if (empty_slices > 2 || a.size() < 3u * (s.order() / 11) || !is_sum_free(a)) return out;
  for (std::uint32_t k = 1; k <= 10; ++k)
    out.lhs += (1.0 - std::cos(2.0 * k * std::numbers::pi / 11.0)) * static_cast<double>(out.profile[k]);
  out.rhs = 11.0 * static_cast<double>(a.size()) / 8.0;
  out.status = out.lhs < out.rhs + kRealTolerance ? Prop24Status::holds : Prop24Status::violated;
  return out;
}

}  // namespace sumfree
