#include <algorithm>
#include <bit>
#include <random>

#include "sumfree/verify.hpp"

namespace sumfree {
namespace {

// ---------------------------------------------------------------------------
// Names

struct LawName {
  LawId id;
  const char* name;
};

constexpr LawName kLawNames[] = {
    {LawId::cauchy_davenport, "cauchy_davenport"},
    {LawId::vosper, "vosper"},
    {LawId::kneser, "kneser"},
    {LawId::bdumm, "bdumm"},
    {LawId::lem42, "lem42"},
    {LawId::lemABCD, "lemABCD"},
    {LawId::lem5_classification, "lem5_classification"},
    {LawId::lem32_noncover, "lem32_noncover"},
    {LawId::lem6_classification, "lem6_classification"},
    {LawId::prop21, "prop21"},
    {LawId::prop22, "prop22"},
    {LawId::prop23, "prop23"},
    {LawId::prop24, "prop24"},
    {LawId::sf_formulas, "sf_formulas"},
};

// ---------------------------------------------------------------------------
// Randomness. Bounded draws avoid std distributions so that instances are
// identical across standard libraries.

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do v = eng_();
    while (v >= limit);
    return v % bound;
  }
  std::uint32_t below32(std::uint64_t bound) { return static_cast<std::uint32_t>(below(bound)); }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Space requirements

std::uint32_t require_6m_minus_1(const Space& s) {
  const auto m = s.m_6m_minus_1();
  if (!m || s.p() < 11) fail(ErrorCode::bad_prime, "law requires p = 6m-1 >= 11");
  return *m;
}

void require_space(LawId law, const Space& s) {
  switch (law) {
    case LawId::cauchy_davenport:
    case LawId::vosper:
      if (s.n() != 1) fail(ErrorCode::wrong_space, "law lives in F_p");
      break;
    case LawId::kneser:
    case LawId::bdumm:
    case LawId::lem42:
    case LawId::sf_formulas:
      break;
    case LawId::lemABCD:
      if (s.p() == 2) fail(ErrorCode::wrong_space, "law requires an odd prime");
      break;
    case LawId::lem5_classification:
      if (s.p() % 3 != 2) fail(ErrorCode::bad_prime, "law requires p = 2 (mod 3)");
      break;
    case LawId::lem32_noncover:
    case LawId::prop21:
      require_6m_minus_1(s);
      break;
    case LawId::lem6_classification:
      if (s.n() != 1) fail(ErrorCode::wrong_space, "law lives in F_p");
      require_6m_minus_1(s);
      break;
    case LawId::prop22:
    case LawId::prop23:
      if (s.n() < 2) fail(ErrorCode::wrong_space, "law requires n >= 2");
      require_6m_minus_1(s);
      break;
    case LawId::prop24:
      if (s.p() != 11 || s.n() < 2) fail(ErrorCode::wrong_space, "law lives in F_11^n, n >= 2");
      break;
  }
}

std::size_t arity(LawId law) {
  switch (law) {
    case LawId::cauchy_davenport:
    case LawId::vosper:
    case LawId::kneser:
    case LawId::bdumm:
      return 2;
    case LawId::lem42:
    case LawId::lemABCD:
      return 3;
    default:
      return 1;
  }
}

std::uint64_t power(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// ---------------------------------------------------------------------------
// Predicates on GroupSets

bool is_progression(const GroupSet& x, Residue d) {
  const GroupSet shifted = x.translate(Element{d});
  return (x & shifted).size() + 1 == x.size();
}

std::size_t empty_first_slices(const GroupSet& a) {
  const auto sizes = slice_profile(a, first_coordinate_form(a.space())).sizes;
  return static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), 0u));
}

bool inside_strip(const GroupSet& a, Residue lo, Residue hi) {
  for (auto x : a.indices()) {
    const Residue v = a.space().digit(Element{x}, 0);
    if (v < lo || v > hi) return false;
  }
  return true;
}

LawEvaluation eval_pair(LawId law, const GroupSet& a, const GroupSet& b) {
  const Space& s = a.space();
  const std::uint64_t na = a.size(), nb = b.size();
  switch (law) {
    case LawId::cauchy_davenport: {
      if (!na || !nb) return {};
      return {true, sumset(a, b).size() >= std::min<std::uint64_t>(s.p(), na + nb - 1)};
    }
    case LawId::vosper: {
      if (na < 2 || nb < 2) return {};
      const std::uint64_t sum = sumset(a, b).size();
      if (sum + 2 > s.p() || sum > na + nb - 1) return {};
      for (Residue d = 1; d < s.p(); ++d)
        if (is_progression(a, d) && is_progression(b, d)) return {true, true};
      return {true, false};
    }
    case LawId::kneser: {
      if (!na || !nb) return {};
      const GroupSet ab = sumset(a, b);
      const GroupSet k = symmetry_group(ab);
      const std::uint64_t middle = sumset(a, k).size() + sumset(b, k).size() - k.size();
      return {true, ab.size() >= middle && middle + k.size() >= na + nb};
    }
    case LawId::bdumm: {
      if (na + nb <= s.order()) return {};
      return {true, sumset(a, b).size() == s.order()};
    }
    default:
      fail(ErrorCode::internal, "not a pair law");
  }
}

bool lem42_conclusion(const GroupSet& a, const GroupSet& b, const GroupSet& c) {
  const Space& s = a.space();
  const std::uint64_t total = a.size() + b.size() + c.size();
  if (total > (s.p() + 1) * power(s.p(), s.n() - 1)) return false;
  if (!exceeds_kneser_threshold(s, total)) return true;
  std::optional<KneserDecomposition> d;
  try {
    d = kneser_decompose(a, b, c);
  } catch (const Error&) {
    return false;
  }
  if (d->K.size() * s.p() != s.order() || !is_subspace(d->K) || !is_subspace(d->L)) return false;
  if (d->L.size() != s.p() || (d->K & d->L).size() != 1) return false;
  const std::pair<const GroupSet*, const GroupSet*> parts[] = {{&a, &d->A_star}, {&b, &d->B_star}, {&c, &d->C_star}};
  for (const auto& [x, star] : parts) {
    if (!star->is_subset_of(d->L)) return false;
    if (!x->is_subset_of(sumset(d->K, *star))) return false;
  }
  if (d->A_star.size() + d->B_star.size() + d->C_star.size() != s.p() + 1) return false;
  const GroupSet diff = difference_set(d->C_star, d->A_star);
  return !diff.intersects(d->B_star) && (diff | d->B_star) == d->L;
}

LawEvaluation eval_triple(LawId law, const GroupSet& a, const GroupSet& b, const GroupSet& c) {
  const Space& s = a.space();
  if (a.empty() || b.empty() || c.empty() || sumset(a, b).intersects(c)) return {};
  const std::uint64_t total = a.size() + b.size() + c.size();
  if (law == LawId::lem42) return {true, lem42_conclusion(a, b, c)};
  if (!exceeds_kneser_threshold(s, total)) return {};
  const std::uint64_t hyperplane = s.order() / s.p();
  if (b.size() + hyperplane <= difference_set(a, c).size()) return {};
  const bool full = difference_set(b, b).size() == s.order();
  return {true, full && 2 * (a.size() + c.size()) <= (s.p() + 1) * hyperplane};
}

bool lem6_conclusion(const GroupSet& a, std::uint32_t m) {
  const Space& s = a.space();
  const GroupSet upper = GroupSet::slab(s, 2 * m, 4 * m - 1);
  const GroupSet lower = GroupSet::slab(s, 2 * m - 1, 4 * m - 3);
  for (Residue c = 1; c < s.p(); ++c) {
    const GroupSet d = dilate(a, c);
    if (d.is_subset_of(upper) || d == lower) return true;
  }
  return false;
}

LawEvaluation eval_single(LawId law, const GroupSet& a) {
  const Space& s = a.space();
  const std::uint64_t hyperplane = s.order() / s.p();
  switch (law) {
    case LawId::lem5_classification: {
      const std::uint64_t threshold = (s.p() + 1) * hyperplane;  // 3 |Q|
      if (3 * a.size() < threshold || !is_sum_free(a)) return {};
      return {true, 3 * a.size() == threshold && is_cuboid_covered(a)};
    }
    case LawId::lem32_noncover: {
      if (!recognize_structured(a).witness) return {};
      return {true, !is_cuboid_covered(a)};
    }
    case LawId::lem6_classification: {
      const std::uint32_t m = require_6m_minus_1(s);
      if (a.size() != 2 * m - 1 || !is_sum_free(a)) return {};
      return {true, lem6_conclusion(a, m)};
    }
    case LawId::prop21:
    case LawId::prop22: {
      const std::uint32_t m = require_6m_minus_1(s);
      if (a.size() < (2 * m - 1) * hyperplane) return {};
      if (law == LawId::prop21 && !inside_strip(a, 2 * m - 1, 4 * m - 1)) return {};
      if (law == LawId::prop22 && s.p() - empty_first_slices(a) > s.p() - 3) return {};
      if (!is_sum_free(a) || is_cuboid_covered(a)) return {};
      return {true, recognize_structured(a).witness.has_value()};
    }
    case LawId::prop23: {
      const std::uint32_t m = require_6m_minus_1(s);
      if (a.size() < (2 * m - 1) * hyperplane || empty_first_slices(a) > 2 || !is_sum_free(a)) return {};
      const auto dev = slice_l1_deviation(slice_profile(a, first_coordinate_form(s)));
      return {true, dev.deviation <= 2 * hyperplane};
    }
    case LawId::prop24: {
      const auto r = prop24_check(a);
      if (r.status == Prop24Status::not_applicable) return {};
      return {true, r.status == Prop24Status::holds};
    }
    default:
      fail(ErrorCode::internal, "not a single-set law");
  }
}

// ---------------------------------------------------------------------------
// Generators

GroupSet random_subset(const Space& s, Rng& rng) {
  const std::uint64_t density = 1 + rng.below(15);  // out of 16
  GroupSet out(s);
  for (std::uint32_t x = 0; x < s.order(); ++x)
    if (rng.chance(density, 16)) out.insert(x);
  return out;
}

Element random_nonzero(const Space& s, Rng& rng) { return Element{1 + rng.below32(s.order() - 1)}; }

GroupSet progression(const Space& s, Element start, Element diff, std::uint32_t len) {
  GroupSet out(s);
  Element cur = start;
  for (std::uint32_t t = 0; t < len; ++t) {
    out.insert(cur);
    cur = s.add(cur, diff);
  }
  return out;
}

LinearAuto random_auto(const Space& s, Rng& rng) {
  for (;;) {
    std::vector<Residue> mat(std::size_t{s.n()} * s.n());
    for (auto& v : mat) v = rng.below32(s.p());
    if (determinant(s.p(), s.n(), mat) != 0) return LinearAuto(s, std::move(mat));
  }
}

// Maps every first-coordinate slice onto a slice: x_0 -> c x_0. c = 1 keeps
// each slice in place.
LinearAuto slice_auto(const Space& s, Rng& rng, bool keep_slices) {
  for (;;) {
    std::vector<Residue> mat(std::size_t{s.n()} * s.n());
    mat[0] = keep_slices ? 1 : 1 + rng.below32(s.p() - 1);
    for (std::uint32_t r = 1; r < s.n(); ++r)
      for (std::uint32_t c = 0; c < s.n(); ++c) mat[r * s.n() + c] = rng.below32(s.p());
    if (determinant(s.p(), s.n(), mat) != 0) return LinearAuto(s, std::move(mat));
  }
}

GroupSet random_pair_member(const Space& s, Rng& rng) {
  switch (rng.below(4)) {
    case 0:
      return random_subset(s, rng);
    case 1:
    case 2: {
      GroupSet ap = progression(s, Element{rng.below32(s.order())}, random_nonzero(s, rng), 1 + rng.below32(s.p()));
      if (rng.chance(1, 2)) ap.insert(rng.below32(s.order()));
      return ap;
    }
    default: {
      // Union of parallel hyperplanes {x : lambda(x) in interval}, thinned.
      const auto forms = linear_forms(s);
      const LinearForm& f = forms[rng.below(forms.size())];
      const Residue lo = rng.below32(s.p());
      const std::uint32_t len = 1 + rng.below32(s.p());
      GroupSet out(s);
      for (std::uint32_t x = 0; x < s.order(); ++x)
        if ((f(s, Element{x}) + s.p() - lo) % s.p() < len) out.insert(x);
      const std::uint32_t drop = rng.below32(3);
      auto members = out.indices();
      for (std::uint32_t i = 0; i < drop && !members.empty(); ++i) out.erase(Element{members[rng.below(members.size())]});
      return out;
    }
  }
}

void remove_random(GroupSet& a, std::uint64_t count, Rng& rng) {
  auto members = a.indices();
  rng.shuffle(members);
  for (std::uint64_t i = 0; i < count && i < members.size(); ++i) a.erase(Element{members[i]});
}

// Adds random admissible elements of `allowed` until A is maximal there.
void greedy_grow(GroupSet& a, const GroupSet& allowed, Rng& rng) {
  const Space& s = a.space();
  GroupSet cand = allowed - a;
  cand.erase(Element{0});
  cand -= sumset(a, a);
  cand -= difference_set(a, a);
  for (auto x : a.indices()) {
    if (s.p() != 2) cand.erase(s.scale(s.inverse(2), Element{x}));
  }
  for (;;) {
    const auto options = cand.indices();
    if (options.empty()) return;
    const Element x{options[rng.below(options.size())]};
    a.insert(x);
    const GroupSet neg = negate(a);
    cand -= a.translate(x);
    cand -= neg.translate(x);
    cand -= a.translate(s.neg(x));
    if (s.p() != 2) cand.erase(s.scale(s.inverse(2), x));
    cand.erase(x);
  }
}

std::optional<GroupSet> random_p(std::uint32_t p, std::uint32_t dim, Rng& rng) {
  if (dim == 0) return std::nullopt;
  const Space q(p, dim);
  GroupSet out(q);
  std::vector<std::uint32_t> order(q.order() - 1);
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i + 1;
  rng.shuffle(order);
  const std::uint64_t target = rng.below((q.order() - 1) / 2 + 1);
  for (auto x : order) {
    if (out.size() >= target) break;
    if (!out.contains(q.neg(Element{x}))) out.insert(x);
  }
  return out;
}

GroupSet random_structured(const Space& s, const LinearAuto& phi, Rng& rng) {
  const std::uint32_t ell = 1 + rng.below32(s.n());
  return structured(s, StructuredWitness{ell, phi, random_p(s.p(), ell - 1, rng)});
}

std::vector<GroupSet> random_triple(const Space& s, Rng& rng) {
  const std::uint32_t p = s.p();
  const Space line(p, 1);
  GroupSet as(line), bs(line);
  if (rng.chance(3, 4)) {
    as = progression(line, Element{rng.below32(p)}, Element{1}, 1 + rng.below32(p - 1));
    bs = progression(line, Element{rng.below32(p)}, Element{1}, 1 + rng.below32(p - as.size()));
  } else {
    as = random_subset(line, rng);
    bs = random_subset(line, rng);
    if (as.empty()) as.insert(0u);
    if (bs.empty()) bs.insert(0u);
  }
  GroupSet free = sumset(as, bs).complement();
  GroupSet cs(line);
  for (auto v : free.indices())
    if (rng.chance(7, 8)) cs.insert(v);
  if (cs.empty() && !free.empty()) cs.insert(free.indices().front());

  auto lift = [&](const GroupSet& star) {
    GroupSet x(s);
    const std::uint32_t block = s.stride(0);
    for (auto v : star.indices())
      for (std::uint32_t y = 0; y < block; ++y) x.insert(v * block + y);
    return x;
  };
  std::vector<GroupSet> out{lift(as), lift(bs), lift(cs)};
  // Thin the fibres; the budget straddles the (p^2+1)p^(n-2) boundary.
  const std::uint64_t budget = rng.below(s.order() / p + 1);
  for (std::uint64_t i = 0; i < budget; ++i) {
    GroupSet& x = out[rng.below(3)];
    if (x.size() > 1) remove_random(x, 1, rng);
  }
  const LinearAuto phi = random_auto(s, rng);
  for (auto& x : out) x = apply(phi, x);
  return out;
}

GroupSet lem6_subset(const Space& s, std::uint32_t m, Rng& rng) {
  std::vector<std::uint32_t> pool;
  if (rng.chance(1, 2)) {
    for (std::uint32_t x = 2 * m - 1; x <= 4 * m - 1; ++x) pool.push_back(x);
  } else {
    for (std::uint32_t x = 0; x < s.p(); ++x) pool.push_back(x);
  }
  rng.shuffle(pool);
  GroupSet out(s);
  for (std::uint32_t i = 0; i < 2 * m - 1; ++i) out.insert(pool[i]);
  return dilate(out, 1 + rng.below32(s.p() - 1));
}

// Seeds for the slice propositions: structured sets or cuboid images.
GroupSet slice_seed(const Space& s, const LinearAuto& phi, Rng& rng) {
  if (rng.chance(1, 2)) return random_structured(s, phi, rng);
  return apply(phi, cuboid(s));
}

GroupSet support_slab(const GroupSet& a) {
  const Space& s = a.space();
  const auto sizes = slice_profile(a, first_coordinate_form(s)).sizes;
  GroupSet out(s);
  const std::uint32_t block = s.stride(0);
  for (Residue k = 0; k < s.p(); ++k)
    if (sizes[k])
      for (std::uint32_t y = 0; y < block; ++y) out.insert(k * block + y);
  return out;
}

GroupSet proposition_instance(LawId law, const Space& s, Rng& rng) {
  const std::uint32_t m = law == LawId::prop24 ? 2 : require_6m_minus_1(s);
  const std::uint64_t threshold = law == LawId::prop24 ? 3 * (s.order() / 11) : (2 * m - 1) * (s.order() / s.p());
  switch (law) {
    case LawId::prop21: {
      GroupSet a = slice_seed(s, slice_auto(s, rng, true), rng);
      if (rng.chance(2, 3)) {
        remove_random(a, rng.below(s.order() / s.p() + 1), rng);
        greedy_grow(a, GroupSet::slab(s, 2 * m - 1, 4 * m - 1), rng);
      }
      return a;
    }
    case LawId::prop22: {
      GroupSet a = slice_seed(s, slice_auto(s, rng, false), rng);
      if (rng.chance(2, 3)) {
        GroupSet allowed = support_slab(a);
        const std::uint32_t block = s.stride(0);
        // Widen the support to at most p-3 slices.
        for (Residue k = 0; k < s.p() && allowed.size() / block < s.p() - 3; ++k)
          if (!allowed.contains(k * block) && rng.chance(1, 2))
            for (std::uint32_t y = 0; y < block; ++y) allowed.insert(k * block + y);
        remove_random(a, rng.below(s.order() / s.p() + 1), rng);
        greedy_grow(a, allowed, rng);
      }
      return a;
    }
    default: {
      const LinearAuto phi = rng.chance(1, 2) ? random_auto(s, rng) : slice_auto(s, rng, false);
      GroupSet a = slice_seed(s, phi, rng);
      const std::uint64_t slack = a.size() > threshold ? a.size() - threshold : 0;
      switch (rng.below(3)) {
        case 0:
          remove_random(a, rng.below(slack + 1), rng);
          break;
        case 1:
          remove_random(a, rng.below(s.order() / s.p() + 1), rng);
          greedy_grow(a, GroupSet::full(s), rng);
          break;
        default:
          break;
      }
      return a;
    }
  }
}

// ---------------------------------------------------------------------------
// Small groups as 64-bit masks, for the exhaustive pair scans.

class MaskGroup {
 public:
  explicit MaskGroup(const Space& s) : s_(s), order_(s.order()) {
    full_ = order_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order_) - 1;
    if (s.n() > 1) {
      table_.resize(std::size_t{order_} * order_);
      for (std::uint32_t g = 0; g < order_; ++g)
        for (std::uint32_t x = 0; x < order_; ++x) table_[g * order_ + x] = s.add(Element{g}, Element{x}).index;
    }
  }

  std::uint64_t full() const { return full_; }

  std::uint64_t translate(std::uint64_t m, std::uint32_t g) const {
    if (g == 0) return m;
    if (table_.empty()) return ((m << g) | (m >> (order_ - g))) & full_;
    std::uint64_t out = 0;
    for (; m; m &= m - 1) out |= std::uint64_t{1} << table_[g * order_ + std::countr_zero(m)];
    return out;
  }

  std::uint64_t sumset(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0;
    for (; a; a &= a - 1) out |= translate(b, static_cast<std::uint32_t>(std::countr_zero(a)));
    return out;
  }

  std::uint64_t symmetry(std::uint64_t x) const {
    std::uint64_t out = 0;
    for (std::uint32_t g = 0; g < order_; ++g)
      if (translate(x, g) == x) out |= std::uint64_t{1} << g;
    return out;
  }

  LawEvaluation eval(LawId law, std::uint64_t a, std::uint64_t b) const {
    const int na = std::popcount(a), nb = std::popcount(b);
    switch (law) {
      case LawId::cauchy_davenport:
        if (!na || !nb) return {};
        return {true, std::popcount(sumset(a, b)) >= std::min<int>(static_cast<int>(order_), na + nb - 1)};
      case LawId::vosper: {
        if (na < 2 || nb < 2) return {};
        const int sum = std::popcount(sumset(a, b));
        if (sum + 2 > static_cast<int>(order_) || sum > na + nb - 1) return {};
        for (std::uint32_t d = 1; d < order_; ++d)
          if (std::popcount(a & translate(a, d)) == na - 1 && std::popcount(b & translate(b, d)) == nb - 1)
            return {true, true};
        return {true, false};
      }
      case LawId::kneser: {
        if (!na || !nb) return {};
        const std::uint64_t ab = sumset(a, b), k = symmetry(ab);
        const int nk = std::popcount(k);
        const int middle = std::popcount(sumset(a, k)) + std::popcount(sumset(b, k)) - nk;
        return {true, std::popcount(ab) >= middle && middle + nk >= na + nb};
      }
      case LawId::bdumm:
        if (na + nb <= static_cast<int>(order_)) return {};
        return {true, sumset(a, b) == full_};
      default:
        fail(ErrorCode::internal, "not a pair law");
    }
  }

  GroupSet to_set(std::uint64_t m) const {
    GroupSet g(s_);
    g.mutable_words()[0] = m;
    return g;
  }

 private:
  Space s_;
  std::uint32_t order_;
  std::uint64_t full_;
  std::vector<std::uint32_t> table_;
};

// ---------------------------------------------------------------------------
// Report plumbing

struct Tally {
  LawReport report;

  // Returns false once a counterexample has been recorded.
  bool add(const std::vector<GroupSet>& instance, const LawEvaluation& ev, std::uint64_t trial) {
    ++report.trials;
    if (!ev.applicable) return true;
    ++report.applicable;
    if (ev.holds) return true;
    nlohmann::json sets = nlohmann::json::array();
    for (const auto& x : instance) sets.push_back(x.to_hex());
    report.certificate = nlohmann::json{{"law", to_string(report.law)}, {"p", report.p},
                                        {"n", report.n},           {"mode", to_string(report.mode)},
                                        {"seed", report.seed},     {"trial", trial},
                                        {"instance", sets}};
    report.verdict = Verdict::counterexample;
    return false;
  }

  LawReport finish() {
    if (report.verdict != Verdict::counterexample)
      report.verdict = report.applicable ? Verdict::pass : Verdict::vacuous;
    return report;
  }
};

[[noreturn]] void too_large(const std::string& what) { fail(ErrorCode::exhaustive_too_large, what); }

void exhaustive_pairs(Tally& t, const Space& s) {
  const LawId law = t.report.law;
  const std::uint32_t cap = law == LawId::kneser ? 9 : 13;
  if (s.order() > cap) too_large("pair scans are limited to groups of order <= " + std::to_string(cap));
  const MaskGroup g(s);
  const std::uint64_t total = g.full() + 1;
  for (std::uint64_t a = 0; a < total; ++a) {
    for (std::uint64_t b = 0; b < total; ++b) {
      const LawEvaluation fast = g.eval(law, a, b);
      std::vector<GroupSet> inst;
      if (fast.applicable && !fast.holds) {
        inst = {g.to_set(a), g.to_set(b)};
        if (!t.add(inst, eval_pair(law, inst[0], inst[1]), a * total + b)) return;
        fail(ErrorCode::internal, "mask and set kernels disagree");
      }
      ++t.report.trials;
      t.report.applicable += fast.applicable;
    }
  }
}

void exhaustive_triples(Tally& t, const Space& s) {
  const LawId law = t.report.law;
  if (s.order() > 9) too_large("triple scans are limited to groups of order <= 9");
  const MaskGroup g(s);
  const std::uint64_t total = g.full() + 1;
  std::uint64_t index = 0;
  for (std::uint64_t a = 1; a < total; ++a)
    for (std::uint64_t b = 1; b < total; ++b) {
      const std::uint64_t room = g.full() & ~g.sumset(a, b);
      for (std::uint64_t c = room; c; c = (c - 1) & room) {
        const std::vector<GroupSet> inst{g.to_set(a), g.to_set(b), g.to_set(c)};
        if (!t.add(inst, eval_triple(law, inst[0], inst[1], inst[2]), index++)) return;
      }
    }
}

void exhaustive_singles(Tally& t, const Space& s) {
  const LawId law = t.report.law;
  const std::uint64_t total = std::uint64_t{1} << s.order();
  const MaskGroup g(s);
  for (std::uint64_t a = 0; a < total; ++a) {
    const GroupSet x = g.to_set(a);
    if (!t.add({x}, eval_single(law, x), a)) return;
  }
}

void exhaustive_lem5(Tally& t, const Space& s) {
  if (s.order() <= 17) return exhaustive_singles(t, s);
  if (s.order() > 64) too_large("the constructive cuboid scan is limited to p^n <= 64");
  // Every sum-free set of the threshold size is a maximum one, so the
  // complete extremal family is the instance universe.
  const SearchOutcome all = max_sum_free(s);
  if (all.status != SearchStatus::proved || !all.witnesses_complete)
    fail(ErrorCode::internal, "incomplete extremal family");
  std::uint64_t i = 0;
  for (const auto& w : all.witnesses)
    if (!t.add({w}, eval_single(t.report.law, w), i++)) return;
}

void exhaustive_lem32(Tally& t, const Space& s) {
  std::uint64_t count = 0;
  for (std::uint32_t ell = 1; ell <= s.n(); ++ell) {
    const std::uint64_t pairs = (power(s.p(), ell - 1) - 1) / 2;
    if (pairs > 12 || (count += power(3, static_cast<std::uint32_t>(pairs))) > (1u << 20))
      too_large("structured stream exceeds 2^20 sets");
  }
  std::vector<LinearAuto> autos{LinearAuto::identity(s)};
  if (s.n() == 1)
    for (Residue c = 2; c < s.p(); ++c) autos.push_back(LinearAuto::dilation(s, c));
  std::uint64_t index = 0;
  for (std::uint32_t ell = 1; ell <= s.n(); ++ell) {
    std::vector<std::optional<GroupSet>> ps;
    if (ell == 1) {
      ps.push_back(std::nullopt);
    } else {
      // Choose none, x or -x from every pair {x, -x}.
      const Space q(s.p(), ell - 1);
      std::vector<std::uint32_t> reps;
      for (std::uint32_t x = 1; x < q.order(); ++x)
        if (x < q.neg(Element{x}).index) reps.push_back(x);
      const std::uint64_t combos = power(3, static_cast<std::uint32_t>(reps.size()));
      for (std::uint64_t code = 0; code < combos; ++code) {
        GroupSet pset(q);
        std::uint64_t c = code;
        for (auto x : reps) {
          if (c % 3 == 1) pset.insert(x);
          if (c % 3 == 2) pset.insert(q.neg(Element{x}));
          c /= 3;
        }
        ps.push_back(std::move(pset));
      }
    }
    for (const auto& pset : ps)
      for (const auto& phi : autos) {
        const GroupSet a = structured(s, StructuredWitness{ell, phi, pset});
        if (!t.add({a}, eval_single(t.report.law, a), index++)) return;
      }
  }
}

void exhaustive_lem6(Tally& t, const Space& s) {
  const std::uint32_t m = require_6m_minus_1(s);
  const std::uint32_t k = 2 * m - 1;
  const std::uint32_t p = s.p();
  if (p > 63) too_large("subset scan is limited to p < 64");
  // C(p, k) <= 2^22
  double combos = 1;
  for (std::uint32_t i = 0; i < k; ++i) combos = combos * (p - i) / (i + 1);
  if (combos > double(1u << 22)) too_large("more than 2^22 subsets of size 2m-1");
  const MaskGroup g(s);
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << p;
  std::uint64_t index = 0;
  while (mask < limit) {
    const GroupSet x = g.to_set(mask);
    if (!t.add({x}, eval_single(t.report.law, x), index++)) return;
    const std::uint64_t low = mask & -mask, ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;  // next subset of the same size
  }
}

void exhaustive_prop21(Tally& t, const Space& s) {
  const std::uint32_t m = require_6m_minus_1(s);
  if (s.n() != 1) too_large("strip subsets exceed the single-subset cap for n >= 2");
  const std::uint32_t width = 2 * m + 1;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << width); ++code) {
    GroupSet x(s);
    for (std::uint32_t i = 0; i < width; ++i)
      if ((code >> i) & 1u) x.insert(2 * m - 1 + i);
    if (!t.add({x}, eval_single(t.report.law, x), code)) return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(LawId id) {
  for (const auto& e : kLawNames)
    if (e.id == id) return e.name;
  return "unknown";
}

std::string to_string(LawMode m) { return m == LawMode::exhaustive ? "exhaustive" : "random"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::counterexample:
      return "counterexample";
    case Verdict::vacuous:
      return "vacuous";
    case Verdict::unproved:
      return "unproved";
  }
  return "unknown";
}

LawId parse_law(const std::string& name) {
  for (const auto& e : kLawNames)
    if (name == e.name) return e.id;
  fail(ErrorCode::invalid_argument, "unknown law '" + name + "'");
}

LawMode parse_mode(const std::string& name) {
  if (name == "exhaustive") return LawMode::exhaustive;
  if (name == "random") return LawMode::random;
  fail(ErrorCode::invalid_argument, "unknown mode '" + name + "'");
}

const std::vector<LawId>& all_laws() {
  static const std::vector<LawId> laws = [] {
    std::vector<LawId> v;
    for (const auto& e : kLawNames) v.push_back(e.id);
    return v;
  }();
  return laws;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::counterexample:
      return 2;
    case Verdict::unproved:
      return 3;
    default:
      return 0;
  }
}

LawEvaluation evaluate_law(LawId law, const std::vector<GroupSet>& instance) {
  if (law == LawId::sf_formulas) fail(ErrorCode::invalid_argument, "sf_formulas is checked through the sf table");
  if (instance.size() != arity(law)) fail(ErrorCode::invalid_argument, "wrong number of sets for the law");
  const Space& s = instance.front().space();
  for (const auto& x : instance)
    if (!(x.space() == s)) fail(ErrorCode::space_mismatch, "instance sets live in different spaces");
  require_space(law, s);
  switch (arity(law)) {
    case 2:
      return eval_pair(law, instance[0], instance[1]);
    case 3:
      return eval_triple(law, instance[0], instance[1], instance[2]);
    default:
      return eval_single(law, instance[0]);
  }
}

std::vector<GroupSet> random_instance(LawId law, const Space& s, std::uint64_t seed, std::uint64_t trial) {
  require_space(law, s);
  Rng rng(splitmix(splitmix(seed) ^ (trial * 0x2545f4914f6cdd1dull) ^ (static_cast<std::uint64_t>(law) << 56)));
  switch (law) {
    case LawId::cauchy_davenport:
    case LawId::vosper:
    case LawId::kneser:
    case LawId::bdumm:
      return {random_pair_member(s, rng), random_pair_member(s, rng)};
    case LawId::lem42:
    case LawId::lemABCD:
      return random_triple(s, rng);
    case LawId::lem5_classification: {
      GroupSet a = apply(random_auto(s, rng), cuboid(s));
      if (rng.chance(1, 2)) {
        remove_random(a, 1 + rng.below(std::max<std::uint64_t>(1, a.size() / 2)), rng);
        greedy_grow(a, GroupSet::full(s), rng);
      }
      return {a};
    }
    case LawId::lem32_noncover:
      return {random_structured(s, random_auto(s, rng), rng)};
    case LawId::lem6_classification:
      return {lem6_subset(s, require_6m_minus_1(s), rng)};
    case LawId::prop21:
    case LawId::prop22:
    case LawId::prop23:
    case LawId::prop24:
      return {proposition_instance(law, s, rng)};
    case LawId::sf_formulas:
      break;
  }
  fail(ErrorCode::invalid_argument, "sf_formulas has no random instances");
}

const std::vector<SfTableEntry>& default_sf_table() {
  static const std::vector<SfTableEntry> table{
      // level 0
      {5, 1, 0, 2}, {11, 1, 0, 4}, {17, 1, 0, 6}, {23, 1, 0, 8}, {7, 1, 0, 2}, {13, 1, 0, 4},
      {2, 4, 0, 8}, {2, 5, 0, 16}, {3, 2, 0, 3}, {3, 3, 0, 9}, {5, 2, 0, 10},
      // level 1
      {11, 1, 1, 3}, {17, 1, 1, 5}, {23, 1, 1, 7}, {7, 1, 1, 0}, {13, 1, 1, 3},
      {2, 4, 1, 5}, {2, 5, 1, 10}, {3, 3, 1, 5}, {5, 2, 1, 5},
      // level 2
      {11, 1, 2, 0}, {17, 1, 2, 4}, {23, 1, 2, 6},
  };
  return table;
}

LawReport check_sf_table(const std::vector<SfTableEntry>& entries, const Budget& budget) {
  LawReport r;
  r.law = LawId::sf_formulas;
  r.mode = LawMode::exhaustive;
  if (!entries.empty()) {
    r.p = entries.front().p;
    r.n = entries.front().n;
    for (const auto& e : entries)
      if (e.p != r.p || e.n != r.n) r.p = r.n = 0;
  }
  bool unproved = false;
  for (const auto& e : entries) {
    ++r.trials;
    const Space s(e.p, e.n);
    const auto levels = sf_hierarchy(s, e.k, budget);
    const SearchOutcome& top = levels.back();
    if (top.status != SearchStatus::proved) {
      unproved = true;
      continue;
    }
    ++r.applicable;
    if (top.value != e.expected) {
      r.verdict = Verdict::counterexample;
      nlohmann::json witnesses = nlohmann::json::array();
      for (const auto& w : top.witnesses) witnesses.push_back(w.to_hex());
      r.certificate = nlohmann::json{{"law", "sf_formulas"}, {"p", e.p},
                                     {"n", e.n},             {"k", e.k},
                                     {"expected", e.expected}, {"actual", top.value},
                                     {"witnesses", witnesses}};
      return r;
    }
  }
  r.verdict = unproved ? Verdict::unproved : r.applicable ? Verdict::pass : Verdict::vacuous;
  return r;
}

LawReport check_law(LawId law, const Space& s, LawMode mode, std::uint64_t trials, std::uint64_t seed) {
  require_space(law, s);
  if (law == LawId::sf_formulas) {
    std::vector<SfTableEntry> entries;
    for (const auto& e : default_sf_table())
      if (e.p == s.p() && e.n == s.n()) entries.push_back(e);
    LawReport r = check_sf_table(entries);
    r.p = s.p();
    r.n = s.n();
    r.mode = mode;
    r.seed = seed;
    return r;
  }

  Tally t;
  t.report.law = law;
  t.report.p = s.p();
  t.report.n = s.n();
  t.report.mode = mode;
  t.report.seed = seed;

  if (mode == LawMode::random) {
    for (std::uint64_t i = 0; i < trials; ++i) {
      const auto inst = random_instance(law, s, seed, i);
      if (!t.add(inst, evaluate_law(law, inst), i)) break;
    }
    return t.finish();
  }

  switch (law) {
    case LawId::cauchy_davenport:
    case LawId::vosper:
    case LawId::kneser:
    case LawId::bdumm:
      exhaustive_pairs(t, s);
      break;
    case LawId::lem42:
    case LawId::lemABCD:
      exhaustive_triples(t, s);
      break;
    case LawId::lem5_classification:
      exhaustive_lem5(t, s);
      break;
    case LawId::lem32_noncover:
      exhaustive_lem32(t, s);
      break;
    case LawId::lem6_classification:
      exhaustive_lem6(t, s);
      break;
    case LawId::prop21:
      exhaustive_prop21(t, s);
      break;
    default:
      too_large("the instance universe exceeds every exhaustive cap; use random mode");
  }
  return t.finish();
}

bool replay_certificate(const nlohmann::json& cert) {
  const LawId law = parse_law(cert.at("law").get<std::string>());
  const Space s(cert.at("p").get<std::uint32_t>(), cert.at("n").get<std::uint32_t>());
  if (law == LawId::sf_formulas) {
    const auto k = cert.at("k").get<std::uint32_t>();
    const auto levels = sf_hierarchy(s, k);
    return levels.back().status == SearchStatus::proved &&
           levels.back().value != cert.at("expected").get<std::size_t>();
  }
  std::vector<GroupSet> inst;
  for (const auto& h : cert.at("instance")) inst.push_back(GroupSet::from_hex(s, h.get<std::string>()));
  const LawEvaluation ev = evaluate_law(law, inst);
  return ev.applicable && !ev.holds;
}

}  // namespace sumfree
