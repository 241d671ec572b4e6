#include "sumfree/solve.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sumfree {

std::string to_string(SearchStatus s) { return s == SearchStatus::proved ? "proved" : "indeterminate"; }
std::string to_string(DedupMode d) { return d == DedupMode::none ? "none" : "isomorphism"; }

namespace {

// Residues hit by the normalized form on A.
std::vector<char> form_values(const GroupSet& a, const LinearForm& f) {
  const Space& s = a.space();
  std::vector<char> hit(s.p(), 0);
  for (auto x : a.indices()) hit[f(s, Element{x})] = 1;
  return hit;
}

// Some scalar c != 0 with c * values inside `target`.
bool some_scalar_maps_into(const std::vector<char>& values, const std::vector<char>& target) {
  const std::uint32_t p = static_cast<std::uint32_t>(values.size());
  for (std::uint32_t c = 1; c < p; ++c) {
    bool ok = true;
    for (std::uint32_t v = 0; v < p && ok; ++v)
      if (values[v] && !target[std::uint64_t{c} * v % p]) ok = false;
    if (ok) return true;
  }
  return false;
}

// S with B = S x F^(n-1), if B is a union of first-coordinate fibres.
std::optional<std::vector<char>> fibre_profile(const GroupSet& b) {
  const Space& s = b.space();
  const auto block = s.stride(0);
  std::vector<char> profile(s.p(), 0);
  for (Residue k = 0; k < s.p(); ++k) {
    std::uint32_t count = 0;
    for (std::uint32_t y = 0; y < block; ++y) count += b.contains(k * block + y);
    if (count == block)
      profile[k] = 1;
    else if (count != 0)
      return std::nullopt;
  }
  return profile;
}

}  // namespace

bool is_cuboid_covered(const GroupSet& a) {
  const Space& s = a.space();
  if (s.p() % 3 == 1)
    fail(ErrorCode::unsupported_prime, "cuboid coverage is undefined for p = 1 (mod 3); use covered_by_family");
  const auto target = middle_interval(s.p());
  for (const auto& f : linear_forms(s))
    if (some_scalar_maps_into(form_values(a, f), target)) return true;
  return false;
}

std::vector<GroupSet> cuboid_images(const Space& s) {
  const auto target = middle_interval(s.p());
  std::map<std::string, GroupSet> images;
  for (const auto& f : linear_forms(s)) {
    for (Residue c = 1; c < s.p(); ++c) {
      GroupSet img(s);
      for (std::uint32_t x = 0; x < s.order(); ++x)
        if (target[evaluate_scaled(s, f, c, Element{x})]) img.insert(x);
      images.emplace(img.to_hex(), std::move(img));
    }
  }
  std::vector<GroupSet> out;
  for (auto& [hex, g] : images) out.push_back(std::move(g));
  return out;
}

bool covered_by_family(const GroupSet& a, const std::vector<GroupSet>& family, std::uint64_t cap) {
  const Space& s = a.space();
  std::optional<std::vector<LinearAuto>> group;
  std::vector<LinearForm> forms;
  for (const auto& b : family) {
    if (!(b.space() == s)) fail(ErrorCode::space_mismatch, "family member lives in another space");
    if (a.is_subset_of(b)) return true;
    if (auto profile = fibre_profile(b)) {
      if (forms.empty()) forms = linear_forms(s);
      for (const auto& f : forms)
        if (some_scalar_maps_into(form_values(a, f), *profile)) return true;
      continue;
    }
    if (!group) group = automorphisms(s, cap);
    for (const auto& phi : *group)
      if (apply(phi, a).is_subset_of(b)) return true;
  }
  return false;
}

std::vector<SearchOutcome> sf_hierarchy(const Space& s, std::uint32_t k, const Budget& budget) {
  std::vector<SearchOutcome> levels;
  SearchFilter filter;
  bool blocked = false;
  for (std::uint32_t j = 0; j <= k; ++j) {
    if (blocked) {
      SearchOutcome unknown;
      unknown.status = SearchStatus::indeterminate;
      unknown.witnesses_complete = false;
      levels.push_back(std::move(unknown));
      continue;
    }
    if (j > 0 && levels.back().value == 0 && levels.back().witnesses.empty()) {
      // SF_{j-1} is empty, hence so is SF_j.
      levels.push_back(SearchOutcome{});
      continue;
    }
    SearchOutcome level = max_sum_free(s, filter, budget);
    if (level.status != SearchStatus::proved || !level.witnesses_complete) blocked = true;
    for (const auto& w : level.witnesses) filter.excluded_supersets.push_back(w);
    levels.push_back(std::move(level));
  }
  return levels;
}

bool verify_structured_witness(const GroupSet& a, const StructuredWitness& w) {
  return structured(a.space(), w) == a;
}

namespace {

struct Basis {
  std::vector<Element> vectors;
  GroupSet span;
};

// Extends `basis` by vectors of `pool` until its span covers `pool`.
void extend_basis(const Space& s, Basis& basis, const GroupSet& pool) {
  for (auto v : pool.indices()) {
    if (basis.span.contains(v)) continue;
    GroupSet line(s);
    for (Residue t = 0; t < s.p(); ++t) line.insert(s.scale(t, Element{v}));
    basis.span = sumset(basis.span, line);
    basis.vectors.push_back(Element{v});
  }
}

std::optional<StructuredWitness> try_form(const GroupSet& a, const LinearForm& f, Residue c, std::uint32_t m) {
  const Space& s = a.space();
  const std::uint32_t p = s.p();
  const auto members = a.indices();
  auto level = [&](std::uint32_t x) { return evaluate_scaled(s, f, c, Element{x}); };

  std::optional<Element> a0;
  for (auto x : members) {
    const Residue v = level(x);
    if (v < 2 * m - 1 || v > 4 * m - 1) return std::nullopt;
    if (v == 2 * m - 1 && !a0) a0 = Element{x};
  }
  if (!a0) return std::nullopt;

  // u with level(u) = 1; pi(x) = x - level(x) u projects onto ker.
  const Element u = s.scale(s.inverse(2 * m - 1), *a0);
  auto project = [&](std::uint32_t x) { return s.combine(1, Element{x}, p - level(x), u); };

  GroupSet kernel(s);
  for (std::uint32_t x = 0; x < s.order(); ++x)
    if (level(x) == 0) kernel.insert(x);

  std::vector<GroupSet> fibres(p, GroupSet(s));
  for (auto x : members) fibres[level(x)].insert(project(x));

  const GroupSet& w = fibres[2 * m - 1];
  if (!is_subspace(w)) return std::nullopt;
  for (Residue i = 2 * m + 1; i + 3 <= 4 * m; ++i)
    if (!(fibres[i] == kernel)) return std::nullopt;
  if (!(fibres[4 * m - 2] == kernel - w)) return std::nullopt;
  const GroupSet& p_prime = fibres[4 * m - 1];
  if (!(sumset(p_prime, w) == p_prime) && !p_prime.empty()) return std::nullopt;
  if (sumset(p_prime, p_prime).intersects(w)) return std::nullopt;
  if (!(fibres[2 * m] == kernel - p_prime)) return std::nullopt;

  // Basis [u | complement of W in ker | basis of W].
  Basis wb{{}, GroupSet(s, {0u})};
  extend_basis(s, wb, w);
  Basis full{{}, wb.span};
  extend_basis(s, full, kernel);
  const std::uint32_t ell = s.n() - static_cast<std::uint32_t>(wb.vectors.size());

  std::vector<Element> columns{u};
  columns.insert(columns.end(), full.vectors.begin(), full.vectors.end());
  columns.insert(columns.end(), wb.vectors.begin(), wb.vectors.end());
  std::vector<Residue> matrix(std::size_t{s.n()} * s.n());
  for (std::uint32_t col = 0; col < s.n(); ++col) {
    const auto coords = s.coords(columns[col]);
    for (std::uint32_t row = 0; row < s.n(); ++row) matrix[row * s.n() + col] = coords[row];
  }

  StructuredWitness witness{ell, LinearAuto(s, std::move(matrix)), std::nullopt};
  if (ell >= 2) {
    const Space q(p, ell - 1);
    GroupSet pset(q);
    for (std::uint32_t t = 0; t < q.order(); ++t) {
      const auto coeff = q.coords(Element{t});
      Element point{0};
      for (std::uint32_t j = 0; j < coeff.size(); ++j) point = s.combine(1, point, coeff[j], full.vectors[j]);
      if (p_prime.contains(point)) pset.insert(t);
    }
    witness.P = std::move(pset);
  }
  if (!verify_structured_witness(a, witness)) fail(ErrorCode::internal, "recognized witness does not rebuild the set");
  return witness;
}

}  // namespace

Recognition recognize_structured(const GroupSet& a) {
  const Space& s = a.space();
  const auto m = s.m_6m_minus_1();
  if (!m || s.p() < 11) fail(ErrorCode::bad_prime, "structured sets require p = 6m-1 >= 11");
  if (a.size() != (2 * *m - 1) * (s.order() / s.p())) return {};
  for (const auto& f : linear_forms(s))
    for (Residue c = 1; c < s.p(); ++c)
      if (auto w = try_form(a, f, c, *m)) return {std::move(w), true};
  return {};
}

Recognition recognize_structured_by_automorphisms(const GroupSet& a, std::uint64_t cap) {
  const Space& s = a.space();
  const auto m = s.m_6m_minus_1();
  if (!m || s.p() < 11) fail(ErrorCode::bad_prime, "structured sets require p = 6m-1 >= 11");
  std::optional<AutomorphismStream> stream;
  try {
    stream.emplace(s, cap);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::group_too_large) return {std::nullopt, false};
    throw;
  }
  const std::uint32_t top = 4 * *m - 1;
  while (auto phi = stream->next()) {
    const GroupSet b = apply(phi->inverse(), a);
    for (std::uint32_t ell = 1; ell <= s.n(); ++ell) {
      StructuredWitness w{ell, *phi, std::nullopt};
      if (ell >= 2) {
        // P is read off the top fibre of B restricted to F^ell x {0}.
        const Space q(s.p(), ell - 1);
        const std::uint32_t tail = s.order() / (q.order() * s.p());
        GroupSet pset(q);
        for (std::uint32_t t = 0; t < q.order(); ++t)
          if (b.contains((top * q.order() + t) * tail)) pset.insert(t);
        if (sumset(pset, pset).contains(0u)) continue;
        w.P = std::move(pset);
      }
      if (verify_structured_witness(a, w)) return {std::move(w), true};
    }
  }
  return {std::nullopt, true};
}

std::vector<GroupSet> automorphic_images(const GroupSet& a, std::uint64_t cap) {
  std::map<std::string, GroupSet> seen;
  AutomorphismStream stream(a.space(), cap);
  while (auto phi = stream.next()) {
    GroupSet img = apply(*phi, a);
    seen.emplace(img.to_hex(), std::move(img));
  }
  std::vector<GroupSet> out;
  for (auto& [hex, g] : seen) out.push_back(std::move(g));
  return out;
}

std::vector<GroupSet> dedup_by_automorphism(const std::vector<GroupSet>& sets, std::uint64_t cap) {
  if (sets.empty()) return {};
  const auto group = automorphisms(sets.front().space(), cap);
  std::map<std::string, GroupSet> reps;
  for (const auto& a : sets) {
    GroupSet best = a;
    std::string best_hex = a.to_hex();
    for (const auto& phi : group) {
      GroupSet img = apply(phi, a);
      std::string hex = img.to_hex();
      if (hex < best_hex) {
        best_hex = std::move(hex);
        best = std::move(img);
      }
    }
    reps.emplace(std::move(best_hex), std::move(best));
  }
  std::vector<GroupSet> out;
  for (auto& [hex, g] : reps) out.push_back(std::move(g));
  return out;
}

}  // namespace sumfree
