#include "sumfree/space.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace sumfree {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "Ok";
    case ErrorCode::composite_modulus: return "CompositeModulus";
    case ErrorCode::dimension_too_large: return "DimensionTooLarge";
    case ErrorCode::group_too_large: return "GroupTooLarge";
    case ErrorCode::space_mismatch: return "SpaceMismatch";
    case ErrorCode::zero_dilation: return "ZeroDilation";
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::hypothesis_violated: return "HypothesisViolated";
    case ErrorCode::wrong_residue_class: return "WrongResidueClass";
    case ErrorCode::bad_prime: return "BadPrime";
    case ErrorCode::bad_p: return "BadP";
    case ErrorCode::zero_direction: return "ZeroDirection";
    case ErrorCode::not_subspace: return "NotSubspace";
    case ErrorCode::unsupported_prime: return "UnsupportedPrime";
    case ErrorCode::not_sum_free: return "NotSumFree";
    case ErrorCode::wrong_space: return "WrongSpace";
    case ErrorCode::space_too_large: return "SpaceTooLarge";
    case ErrorCode::exhaustive_too_large: return "ExhaustiveTooLarge";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::internal: return "Internal";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t v) noexcept {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

struct Space::Impl {
  std::uint32_t p;
  std::uint32_t n;
  std::uint32_t order;
  std::size_t words;
  std::vector<std::uint32_t> strides;
  // low_masks[(coord * p + d) * words + w]
  std::vector<std::uint64_t> low_masks;
};

Space::Space(std::uint32_t p, std::uint32_t n, std::uint64_t max_order) {
  if (p < 2 || !is_prime(p)) fail(ErrorCode::composite_modulus, "modulus " + std::to_string(p) + " is not prime");
  if (n < 1) fail(ErrorCode::invalid_argument, "dimension must be at least 1");
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    order *= p;
    if (order > max_order || order > std::numeric_limits<std::uint32_t>::max())
      fail(ErrorCode::dimension_too_large,
           std::to_string(p) + "^" + std::to_string(n) + " exceeds the order cap " + std::to_string(max_order));
  }
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->n = n;
  impl->order = static_cast<std::uint32_t>(order);
  impl->words = (order + 63) / 64;
  impl->strides.resize(n);
  std::uint32_t s = 1;
  for (std::uint32_t i = n; i-- > 0;) {
    impl->strides[i] = s;
    s *= p;
  }
  impl->low_masks.assign(std::size_t{n} * p * impl->words, 0);
  for (std::uint32_t x = 0; x < impl->order; ++x) {
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t digit = (x / impl->strides[i]) % p;
      for (std::uint32_t d = 1; d < p; ++d)
        if (digit < p - d) impl->low_masks[(std::size_t{i} * p + d) * impl->words + x / 64] |= std::uint64_t{1} << (x % 64);
    }
  }
  impl_ = std::move(impl);
}

Space make_space(std::uint32_t p, std::uint32_t n, std::uint64_t max_order) { return Space(p, n, max_order); }

std::uint32_t Space::p() const noexcept { return impl_->p; }
std::uint32_t Space::n() const noexcept { return impl_->n; }
std::uint32_t Space::order() const noexcept { return impl_->order; }
std::uint32_t Space::stride(std::uint32_t i) const noexcept { return impl_->strides[i]; }
std::size_t Space::words() const noexcept { return impl_->words; }

Space Space::quotient() const {
  if (n() < 2) fail(ErrorCode::invalid_argument, "F_p^0 is not representable");
  return Space(p(), n() - 1);
}

Element Space::element(std::uint64_t index) const {
  if (index >= order()) fail(ErrorCode::invalid_argument, "element index " + std::to_string(index) + " out of range");
  return Element{static_cast<std::uint32_t>(index)};
}

std::vector<Residue> Space::coords(Element x) const {
  std::vector<Residue> out(n());
  for (std::uint32_t i = 0; i < n(); ++i) out[i] = digit(x, i);
  return out;
}

Element Space::from_coords(std::span<const Residue> c) const {
  if (c.size() != n()) fail(ErrorCode::invalid_argument, "coordinate vector has wrong length");
  std::uint32_t idx = 0;
  for (std::uint32_t i = 0; i < n(); ++i) {
    if (c[i] >= p()) fail(ErrorCode::invalid_argument, "coordinate out of range");
    idx = idx * p() + c[i];
  }
  return Element{idx};
}

Residue Space::digit(Element x, std::uint32_t i) const noexcept { return (x.index / stride(i)) % p(); }

Element Space::combine(Residue c1, Element x, Residue c2, Element y) const {
  const std::uint64_t P = p();
  std::uint32_t idx = 0;
  std::uint32_t xi = x.index, yi = y.index;
  std::uint32_t place = 1;
  for (std::uint32_t i = 0; i < n(); ++i) {
    const std::uint64_t dx = xi % P, dy = yi % P;
    xi /= p();
    yi /= p();
    idx += static_cast<std::uint32_t>((c1 % P * dx + c2 % P * dy) % P) * place;
    place *= p();
  }
  return Element{idx};
}

Residue Space::inverse(Residue c) const {
  c %= p();
  if (c == 0) fail(ErrorCode::zero_dilation, "0 has no inverse");
  // Fermat; p is small enough that this never overflows 64 bits.
  std::uint64_t result = 1, base = c, e = p() - 2;
  while (e) {
    if (e & 1) result = result * base % p();
    base = base * base % p();
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

std::optional<std::uint32_t> Space::m_6m_minus_1() const noexcept {
  if ((p() + 1) % 6 != 0) return std::nullopt;
  return (p() + 1) / 6;
}

std::optional<std::uint32_t> Space::m_3m_plus_1() const noexcept {
  if (p() % 3 != 1) return std::nullopt;
  return (p() - 1) / 3;
}

std::span<const std::uint64_t> Space::low_mask(std::uint32_t coord, Residue d) const {
  return {impl_->low_masks.data() + (std::size_t{coord} * p() + d) * words(), words()};
}

// ---------------------------------------------------------------------------

LinearForm::LinearForm(std::vector<Residue> coeffs) : coeffs_(std::move(coeffs)) {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](Residue c) { return c != 0; });
  if (first == coeffs_.end()) fail(ErrorCode::invalid_argument, "linear form must be nonzero");
  if (*first != 1) fail(ErrorCode::invalid_argument, "linear form must be normalized (first nonzero coefficient 1)");
}

Residue LinearForm::operator()(const Space& s, Element x) const {
  if (coeffs_.size() != s.n()) fail(ErrorCode::space_mismatch, "form dimension differs from space");
  std::uint64_t acc = 0;
  for (std::uint32_t i = 0; i < s.n(); ++i) acc += std::uint64_t{coeffs_[i]} * s.digit(x, i);
  return static_cast<Residue>(acc % s.p());
}

Residue evaluate_scaled(const Space& s, const LinearForm& form, Residue c, Element x) {
  return static_cast<Residue>(std::uint64_t{c} * form(s, x) % s.p());
}

std::vector<LinearForm> linear_forms(const Space& s) {
  std::vector<LinearForm> out;
  out.reserve((s.order() - 1) / (s.p() - 1));
  for (std::uint32_t idx = 1; idx < s.order(); ++idx) {
    auto c = s.coords(Element{idx});
    auto first = std::find_if(c.begin(), c.end(), [](Residue v) { return v != 0; });
    if (*first == 1) out.emplace_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------

Residue determinant(std::uint32_t p, std::uint32_t n, std::vector<Residue> a) {
  std::uint64_t det = 1;
  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t pivot = col;
    while (pivot < n && a[pivot * n + col] % p == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::uint32_t k = 0; k < n; ++k) std::swap(a[pivot * n + k], a[col * n + k]);
      det = (p - det % p) % p;
    }
    const std::uint64_t pv = a[col * n + col] % p;
    det = det * pv % p;
    // inverse of pivot
    std::uint64_t inv = 1, base = pv, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (std::uint32_t r = col + 1; r < n; ++r) {
      const std::uint64_t f = a[r * n + col] % p * inv % p;
      if (f == 0) continue;
      for (std::uint32_t k = col; k < n; ++k)
        a[r * n + k] = static_cast<Residue>((a[r * n + k] + (p - f) * (a[col * n + k] % p)) % p);
    }
  }
  return static_cast<Residue>(det);
}

LinearAuto::LinearAuto(std::uint32_t p, std::uint32_t n, std::vector<Residue> matrix, bool)
    : p_(p), n_(n), matrix_(std::move(matrix)) {}

LinearAuto::LinearAuto(const Space& s, std::vector<Residue> matrix) : p_(s.p()), n_(s.n()), matrix_(std::move(matrix)) {
  if (matrix_.size() != std::size_t{n_} * n_) fail(ErrorCode::invalid_argument, "matrix must be n x n");
  for (auto& v : matrix_) {
    if (v >= p_) fail(ErrorCode::invalid_argument, "matrix entry out of range");
  }
  if (determinant(p_, n_, matrix_) == 0) fail(ErrorCode::invalid_argument, "matrix is singular mod p");
}

LinearAuto LinearAuto::identity(const Space& s) { return dilation(s, 1); }

LinearAuto LinearAuto::dilation(const Space& s, Residue c) {
  if (c % s.p() == 0) fail(ErrorCode::zero_dilation, "dilation by 0");
  std::vector<Residue> m(std::size_t{s.n()} * s.n(), 0);
  for (std::uint32_t i = 0; i < s.n(); ++i) m[i * s.n() + i] = c % s.p();
  return LinearAuto(s.p(), s.n(), std::move(m), true);
}

Element LinearAuto::operator()(const Space& s, Element x) const {
  if (s.n() != n_ || s.p() != p_) fail(ErrorCode::space_mismatch, "automorphism belongs to another space");
  std::uint32_t idx = 0;
  for (std::uint32_t r = 0; r < n_; ++r) {
    std::uint64_t acc = 0;
    for (std::uint32_t c = 0; c < n_; ++c) acc += std::uint64_t{matrix_[r * n_ + c]} * s.digit(x, c);
    idx = idx * p_ + static_cast<std::uint32_t>(acc % p_);
  }
  return Element{idx};
}

LinearAuto LinearAuto::inverse() const {
  const std::uint32_t n = n_, p = p_;
  std::vector<std::uint64_t> a(std::size_t{n} * 2 * n, 0);
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t c = 0; c < n; ++c) a[r * 2 * n + c] = matrix_[r * n + c];
    a[r * 2 * n + n + r] = 1;
  }
  auto inv_mod = [p](std::uint64_t v) {
    std::uint64_t res = 1, b = v % p, e = p - 2;
    while (e) {
      if (e & 1) res = res * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return res;
  };
  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t pivot = col;
    while (a[pivot * 2 * n + col] == 0) ++pivot;  // invertible by construction
    if (pivot != col)
      for (std::uint32_t k = 0; k < 2 * n; ++k) std::swap(a[pivot * 2 * n + k], a[col * 2 * n + k]);
    const std::uint64_t inv = inv_mod(a[col * 2 * n + col]);
    for (std::uint32_t k = 0; k < 2 * n; ++k) a[col * 2 * n + k] = a[col * 2 * n + k] * inv % p;
    for (std::uint32_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const std::uint64_t f = a[r * 2 * n + col];
      if (f == 0) continue;
      for (std::uint32_t k = 0; k < 2 * n; ++k) a[r * 2 * n + k] = (a[r * 2 * n + k] + (p - f) * a[col * 2 * n + k]) % p;
    }
  }
  std::vector<Residue> out(std::size_t{n} * n);
  for (std::uint32_t r = 0; r < n; ++r)
    for (std::uint32_t c = 0; c < n; ++c) out[r * n + c] = static_cast<Residue>(a[r * 2 * n + n + c]);
  return LinearAuto(p, n, std::move(out), true);
}

LinearAuto LinearAuto::compose(const LinearAuto& other) const {
  if (other.n_ != n_ || other.p_ != p_) fail(ErrorCode::space_mismatch, "cannot compose automorphisms of different spaces");
  std::vector<Residue> out(std::size_t{n_} * n_);
  for (std::uint32_t r = 0; r < n_; ++r)
    for (std::uint32_t c = 0; c < n_; ++c) {
      std::uint64_t acc = 0;
      for (std::uint32_t k = 0; k < n_; ++k) acc += std::uint64_t{matrix_[r * n_ + k]} * other.matrix_[k * n_ + c];
      out[r * n_ + c] = static_cast<Residue>(acc % p_);
    }
  return LinearAuto(p_, n_, std::move(out), true);
}

bool LinearAuto::is_identity() const noexcept {
  for (std::uint32_t r = 0; r < n_; ++r)
    for (std::uint32_t c = 0; c < n_; ++c)
      if (matrix_[r * n_ + c] != (r == c ? 1u : 0u)) return false;
  return true;
}

std::uint64_t gl_order(std::uint32_t p, std::uint32_t n) noexcept {
  unsigned __int128 qn = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    qn *= p;
    if (qn > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  unsigned __int128 total = 1, pi = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    total *= (qn - pi);
    if (total > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    pi *= p;
  }
  return static_cast<std::uint64_t>(total);
}

// ---------------------------------------------------------------------------

AutomorphismStream::AutomorphismStream(const Space& s, std::uint64_t cap)
    : space_(s), size_(gl_order(s.p(), s.n())) {
  if (size_ > cap)
    fail(ErrorCode::group_too_large,
         "|GL(" + std::to_string(s.n()) + "," + std::to_string(s.p()) + ")| = " + std::to_string(size_) +
             " exceeds cap " + std::to_string(cap));
  const std::uint32_t n = s.n();
  rows_.assign(n, 0);
  in_span_.assign(n + 1, std::vector<char>(s.order(), 0));
  span_list_.assign(n + 1, {});
  in_span_[0][0] = 1;
  span_list_[0] = {0};
}

void AutomorphismStream::rebuild_span(std::uint32_t depth) {
  // span of rows_[0..depth] from span of rows_[0..depth)
  auto& mark = in_span_[depth + 1];
  auto& list = span_list_[depth + 1];
  for (auto idx : list) mark[idx] = 0;
  list.clear();
  const Element row{rows_[depth]};
  for (auto base : span_list_[depth]) {
    for (Residue t = 0; t < space_.p(); ++t) {
      const Element v = space_.combine(1, Element{base}, t, row);
      if (!mark[v.index]) {
        mark[v.index] = 1;
        list.push_back(v.index);
      }
    }
  }
}

// Moves rows_[depth] to the next vector outside the span of earlier rows,
// starting after its current value. Returns false when exhausted.
bool AutomorphismStream::advance(std::uint32_t depth) {
  std::uint32_t v = rows_[depth] + 1;
  while (v < space_.order() && in_span_[depth][v]) ++v;
  if (v >= space_.order()) return false;
  rows_[depth] = v;
  return true;
}

std::optional<LinearAuto> AutomorphismStream::next() {
  if (done_) return std::nullopt;
  const std::uint32_t n = space_.n();
  std::uint32_t depth;
  if (!started_) {
    started_ = true;
    depth = 0;
    rows_[0] = 0;
    if (!advance(0)) {
      done_ = true;
      return std::nullopt;
    }
  } else {
    depth = n - 1;
    while (!advance(depth)) {
      if (depth == 0) {
        done_ = true;
        return std::nullopt;
      }
      --depth;
    }
  }
  // fill deeper rows with their first admissible vector
  for (;;) {
    rebuild_span(depth);
    if (depth + 1 == n) break;
    ++depth;
    rows_[depth] = 0;
    if (!advance(depth)) {
      // cannot happen: a proper subspace never covers every nonzero vector
      fail(ErrorCode::internal, "automorphism enumeration ran out of rows");
    }
  }
  std::vector<Residue> m(std::size_t{n} * n);
  for (std::uint32_t r = 0; r < n; ++r) {
    const auto c = space_.coords(Element{rows_[r]});
    std::copy(c.begin(), c.end(), m.begin() + std::size_t{r} * n);
  }
  return LinearAuto(space_.p(), n, std::move(m), true);
}

std::vector<LinearAuto> automorphisms(const Space& s, std::uint64_t cap) {
  AutomorphismStream stream(s, cap);
  std::vector<LinearAuto> out;
  out.reserve(stream.size());
  while (auto a = stream.next()) out.push_back(std::move(*a));
  return out;
}

}  // namespace sumfree
