// Branch-and-bound enumeration of maximum sum-free sets.
//
// Each node holds a sum-free set A and the candidates: elements x with A + x
// still sum-free, i.e. x outside {0} | (A+A) | (A-A) | A/2. Branching includes
// or excludes the lowest candidate; leaves are nodes without candidates, so
// every sum-free set is reached by exactly one leaf. A node is cut when
// |A| + |candidates| falls below the best value (ties are kept so the whole
// extremal family is enumerated) or when A together with every candidate lies
// inside an excluded superset.

#include <algorithm>
#include <array>
#include <bit>

#include "sumfree/solve.hpp"

namespace sumfree {
namespace {

template <std::size_t W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  bool none() const {
    for (auto v : w)
      if (v) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto v : w) c += std::popcount(v);
    return c;
  }
  std::uint32_t lowest() const {
    for (std::size_t i = 0; i < W; ++i)
      if (w[i]) return static_cast<std::uint32_t>(i * 64 + std::countr_zero(w[i]));
    return ~0u;
  }
  void set(std::uint32_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::uint32_t i) { w[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  Bits operator|(const Bits& o) const {
    Bits r;
    for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] | o.w[i];
    return r;
  }
  Bits and_not(const Bits& o) const {
    Bits r;
    for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] & ~o.w[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < W; ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
};

template <std::size_t W>
Bits<W> shl(const Bits<W>& in, std::size_t k) {
  Bits<W> out;
  const std::size_t q = k / 64, r = k % 64;
  for (std::size_t i = W; i-- > q;) {
    std::uint64_t v = in.w[i - q] << r;
    if (r && i - q >= 1) v |= in.w[i - q - 1] >> (64 - r);
    out.w[i] = v;
  }
  return out;
}

template <std::size_t W>
Bits<W> shr(const Bits<W>& in, std::size_t k) {
  Bits<W> out;
  const std::size_t q = k / 64, r = k % 64;
  for (std::size_t i = 0; i + q < W; ++i) {
    std::uint64_t v = in.w[i + q] >> r;
    if (r && i + q + 1 < W) v |= in.w[i + q + 1] << (64 - r);
    out.w[i] = v;
  }
  return out;
}

struct Move {
  std::uint32_t up;    // shift for the non-wrapping part
  std::uint32_t down;  // shift for the wrapping part
  std::uint32_t mask;  // index into the mask table
};

template <std::size_t W>
class Engine {
 public:
  Engine(const Space& s, const SearchFilter& filter, const Budget& budget)
      : space_(s), filter_(filter), budget_(budget) {
    const std::uint32_t order = s.order();
    for (std::uint32_t i = 0; i < s.n(); ++i)
      for (Residue d = 1; d < s.p(); ++d) {
        Bits<W> m;
        const auto low = s.low_mask(i, d);
        for (std::size_t k = 0; k < std::min<std::size_t>(W, low.size()); ++k) m.w[k] = low[k];
        masks_.push_back(m);
      }
    full_ = Bits<W>{};
    for (std::uint32_t x = 0; x < order; ++x) full_.set(x);
    moves_.resize(order);
    neg_.resize(order);
    half_.assign(order, ~0u);
    for (std::uint32_t x = 0; x < order; ++x) {
      const Element e{x};
      for (std::uint32_t i = 0; i < s.n(); ++i) {
        const Residue d = s.digit(e, i);
        if (d == 0) continue;
        moves_[x].push_back(Move{d * s.stride(i), (s.p() - d) * s.stride(i), i * (s.p() - 1) + (d - 1)});
      }
      neg_[x] = s.neg(e).index;
      if (s.p() != 2) half_[x] = s.scale(s.inverse(2), e).index;
    }
    for (const auto& b : filter.excluded_supersets) {
      if (!(b.space() == s)) fail(ErrorCode::space_mismatch, "excluded superset lives in another space");
      Bits<W> bits;
      for (auto v : b.indices()) bits.set(v);
      excluded_.push_back(bits);
    }
  }

  SearchOutcome run() {
    Bits<W> cand = full_;
    cand.reset(0);
    Bits<W> empty;
    recurse(empty, empty, cand, 0);

    SearchOutcome out;
    out.value = static_cast<std::size_t>(best_ < 0 ? 0 : best_);
    out.nodes = nodes_;
    out.status = aborted_ ? SearchStatus::indeterminate : SearchStatus::proved;
    out.witness_count = found_;
    out.witnesses_complete = !aborted_ && found_ == stored_.size();
    for (const auto& b : stored_) {
      GroupSet g(space_);
      auto dst = g.mutable_words();
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = b.w[i];
      out.witnesses.push_back(std::move(g));
    }
    std::sort(out.witnesses.begin(), out.witnesses.end(), hex_less);
    return out;
  }

 private:
  Bits<W> translate(const Bits<W>& src, std::uint32_t g) const {
    Bits<W> cur = src;
    for (const auto& mv : moves_[g]) {
      const Bits<W>& low = masks_[mv.mask];
      Bits<W> lo, hi;
      for (std::size_t i = 0; i < W; ++i) {
        lo.w[i] = cur.w[i] & low.w[i];
        hi.w[i] = cur.w[i] & ~low.w[i] & full_.w[i];
      }
      cur = shl(lo, mv.up) | shr(hi, mv.down);
    }
    return cur;
  }

  bool covered(const Bits<W>& a) const {
    for (const auto& b : excluded_)
      if (a.subset_of(b)) return true;
    return false;
  }

  void record(const Bits<W>& a, int size) {
    if (size < best_) return;
    if (covered(a)) return;
    if (filter_.predicate) {
      GroupSet g(space_);
      auto dst = g.mutable_words();
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a.w[i];
      if (!filter_.predicate(g)) return;
    }
    if (size > best_) {
      best_ = size;
      stored_.clear();
      found_ = 0;
    }
    ++found_;
    if (stored_.size() < budget_.max_witnesses) stored_.push_back(a);
  }

  void recurse(const Bits<W>& a, const Bits<W>& neg_a, const Bits<W>& cand, int size) {
    if (aborted_) return;
    if (++nodes_ > budget_.max_nodes) {
      aborted_ = true;
      return;
    }
    if (cand.none()) {
      record(a, size);
      return;
    }
    if (size + cand.count() < best_) return;
    if (!excluded_.empty() && covered(a | cand)) return;

    const std::uint32_t x = cand.lowest();
    Bits<W> rest = cand;
    rest.reset(x);

    // include x
    Bits<W> a2 = a, neg2 = neg_a;
    a2.set(x);
    neg2.set(neg_[x]);
    Bits<W> forbidden = translate(a2, x) | translate(neg2, x) | translate(a2, neg_[x]);
    if (half_[x] != ~0u) forbidden.set(half_[x]);
    recurse(a2, neg2, rest.and_not(forbidden), size + 1);

    // exclude x
    recurse(a, neg_a, rest, size);
  }

  const Space& space_;
  const SearchFilter& filter_;
  const Budget& budget_;
  std::vector<Bits<W>> masks_;
  Bits<W> full_;
  std::vector<std::vector<Move>> moves_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> half_;
  std::vector<Bits<W>> excluded_;

  int best_ = -1;
  std::uint64_t nodes_ = 0;
  std::uint64_t found_ = 0;
  bool aborted_ = false;
  std::vector<Bits<W>> stored_;
};

}  // namespace

bool SearchFilter::accepts(const GroupSet& a) const {
  for (const auto& b : excluded_supersets)
    if (a.is_subset_of(b)) return false;
  return !predicate || predicate(a);
}

SearchOutcome max_sum_free(const Space& s, const SearchFilter& filter, const Budget& budget) {
  if (budget.max_nodes == 0) fail(ErrorCode::invalid_argument, "node budget must be positive");
  const std::uint32_t order = s.order();
  if (order <= 64) return Engine<1>(s, filter, budget).run();
  if (order <= 128) return Engine<2>(s, filter, budget).run();
  if (order <= 256) return Engine<4>(s, filter, budget).run();
  fail(ErrorCode::space_too_large, "the exact search supports p^n <= 256");
}

}  // namespace sumfree
