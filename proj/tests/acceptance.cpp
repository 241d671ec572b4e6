// Acceptance run: one PASS/FAIL line per criterion. Pass --stretch to add the
// long sf_1(F_5^3) search to criterion 10.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sumfree/fourier.hpp"
#include "sumfree/solve.hpp"
#include "sumfree/verify.hpp"

using namespace sumfree;

namespace {

constexpr double kParsevalRel = 1e-6;
constexpr double kBoundSlack = 1e-9;
constexpr double kSpectrumAbs = 1e-9;

struct Context {
  std::ostringstream detail;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "  mismatch: " << what << "\n";
    }
  }
  void note(const std::string& what) { detail << "  " << what << "\n"; }
};

struct ValueCase {
  std::uint32_t p, n, k;
  std::size_t expected;
};

void check_values(Context& c, const std::vector<ValueCase>& cases) {
  for (const auto& v : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto levels = sf_hierarchy(Space(v.p, v.n), v.k);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto& l = levels[v.k];
    char buf[160];
    std::snprintf(buf, sizeof buf, "sf_%u(F_%u^%u) = %zu (%s, expected %zu, %.2fs)", v.k, v.p, v.n, l.value,
                  to_string(l.status).c_str(), v.expected, secs);
    c.note(buf);
    c.expect(l.status == SearchStatus::proved && l.value == v.expected, buf);
  }
}

std::set<std::string> hexes(const std::vector<GroupSet>& sets) {
  std::set<std::string> out;
  for (const auto& a : sets) out.insert(a.to_hex());
  return out;
}

std::set<std::string> dilates(const GroupSet& a) {
  std::set<std::string> out;
  for (Residue c = 1; c < a.space().p(); ++c) out.insert(dilate(a, c).to_hex());
  return out;
}

GroupSet random_P(const Space& q, std::mt19937_64& rng) {
  GroupSet P(q);
  for (std::uint32_t x = 1; x < q.order(); ++x)
    if (rng() % 2 && !P.contains(q.neg(Element{x}))) P.insert(x);
  return P;
}

LinearAuto random_auto(const Space& s, std::mt19937_64& rng) {
  for (;;) {
    std::vector<Residue> m(s.n() * s.n());
    for (auto& v : m) v = static_cast<Residue>(rng() % s.p());
    if (determinant(s.p(), s.n(), m) != 0) return LinearAuto(s, m);
  }
}

void law(Context& c, LawId id, const Space& s, LawMode mode, std::uint64_t trials) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = check_law(id, s, mode, trials, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[200];
  std::snprintf(buf, sizeof buf, "%s F_%u^%u %s: %s, trials %llu, applicable %llu (%.2fs)", to_string(id).c_str(),
                s.p(), s.n(), to_string(mode).c_str(), to_string(r.verdict).c_str(),
                static_cast<unsigned long long>(r.trials), static_cast<unsigned long long>(r.applicable), secs);
  c.note(buf);
  c.expect(r.verdict == Verdict::pass || (mode == LawMode::random && r.verdict == Verdict::vacuous), buf);
}

void criterion1(Context& c) {
  check_values(c, {{5, 1, 0, 2}, {11, 1, 0, 4}, {17, 1, 0, 6}, {23, 1, 0, 8},
                   {7, 1, 0, 2}, {13, 1, 0, 4}, {2, 4, 0, 8}, {3, 2, 0, 3}});
}

void criterion2(Context& c) {
  check_values(c, {{11, 1, 1, 3}, {17, 1, 1, 5}, {23, 1, 1, 7}, {7, 1, 1, 0}, {13, 1, 1, 3},
                   {2, 4, 1, 5}, {2, 5, 1, 10}, {3, 3, 1, 5}, {5, 2, 1, 5}});
}

void criterion3(Context& c) { check_values(c, {{11, 1, 2, 0}, {17, 1, 2, 4}, {23, 1, 2, 6}}); }

void criterion4(Context& c) {
  const Space f11(11, 1);
  const auto levels = sf_hierarchy(f11, 1);
  const auto l0 = hexes(levels[0].witnesses), l1 = hexes(levels[1].witnesses);
  c.expect(l0 == dilates(GroupSet(f11, {4, 5, 6, 7})), "level 0 witnesses are the dilates of {4,5,6,7}");
  c.expect(l1 == dilates(GroupSet(f11, {3, 4, 5})), "level 1 witnesses are the dilates of {3,4,5}");
  c.expect(l0.size() == 5 && l1.size() == 10, "witness counts 5 and 10");
  const auto brute = oracle::brute_hierarchy(oracle::Grid(11, 1), 1);
  c.expect(brute.families[0].size() == 5 && brute.families[1].size() == 10, "all-subsets recursion counts 5 and 10");
  c.expect(oracle_max_sum_free(f11).witnesses.size() == 5, "exhaustive oracle count 5");
  c.note("level 0: " + std::to_string(l0.size()) + " witnesses, level 1: " + std::to_string(l1.size()) +
         " witnesses; all-subsets recursion: " + std::to_string(brute.families[0].size()) + " and " +
         std::to_string(brute.families[1].size()));
}

void criterion5(Context& c) {
  std::mt19937_64 rng(5);
  std::size_t failures = 0, checked = 0;
  for (std::uint32_t p : {11u, 17u}) {
    const std::uint32_t m = (p + 1) / 6;
    for (std::uint32_t n : {1u, 2u, 3u}) {
      const Space s(p, n);
      for (int t = 0; t < 50; ++t) {
        const std::uint32_t ell = 1 + static_cast<std::uint32_t>(rng() % n);
        std::optional<GroupSet> P;
        if (ell >= 2) P = random_P(Space(p, ell - 1), rng);
        const GroupSet a = structured(s, {ell, random_auto(s, rng), P});
        ++checked;
        if (a.size() != (2 * m - 1) * (s.order() / p) || !is_sum_free(a) || is_cuboid_covered(a)) ++failures;
        if (n >= 2) {
          const GroupSet v = very_structured(s, random_P(s.quotient(), rng));
          ++checked;
          if (v.size() != (2 * m - 1) * (s.order() / p) || !is_sum_free(v) || is_cuboid_covered(v)) ++failures;
        }
      }
      if (!(p == 11 && n == 1)) {
        std::optional<Element> x;
        if (n >= 2) x = Element{1 + static_cast<std::uint32_t>(rng() % (s.quotient().order() - 1))};
        const GroupSet w = witness_sf2_2mod3(s, x);
        ++checked;
        if (w.size() != (2 * m - 1) * (s.order() / p) - 1 || !is_sum_free(w)) ++failures;
      }
    }
  }
  for (std::uint32_t p : {13u, 19u}) {
    const std::uint32_t m = (p - 1) / 3;
    for (std::uint32_t n : {1u, 2u, 3u}) {
      const Space s(p, n);
      std::optional<Element> x;
      if (n >= 2) x = Element{1 + static_cast<std::uint32_t>(rng() % (s.quotient().order() - 1))};
      const GroupSet w = witness_sf1_1mod3(s, x);
      ++checked;
      if (w.size() != m * (s.order() / p) - 1 || !is_sum_free(w)) ++failures;
    }
  }
  c.note(std::to_string(checked) + " constructed sets, " + std::to_string(failures) + " failures");
  c.expect(failures == 0, "constructor property failures");
}

void criterion6(Context& c) {
  for (std::uint32_t p : {5u, 7u}) {
    law(c, LawId::cauchy_davenport, Space(p, 1), LawMode::exhaustive, 0);
    law(c, LawId::kneser, Space(p, 1), LawMode::exhaustive, 0);
  }
  law(c, LawId::kneser, Space(3, 2), LawMode::exhaustive, 0);
  for (std::uint32_t p : {7u, 11u, 13u}) law(c, LawId::vosper, Space(p, 1), LawMode::exhaustive, 0);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) law(c, LawId::bdumm, Space(p, 1), LawMode::exhaustive, 0);
  law(c, LawId::lem6_classification, Space(11, 1), LawMode::exhaustive, 0);
  law(c, LawId::lem6_classification, Space(17, 1), LawMode::exhaustive, 0);
  const auto l11 = check_law(LawId::lem6_classification, Space(11, 1), LawMode::exhaustive, 0, 1);
  const auto l17 = check_law(LawId::lem6_classification, Space(17, 1), LawMode::exhaustive, 0, 1);
  c.expect(l11.trials == 165 && l17.trials == 6188, "lem6 subset counts 165 and 6188");
}

void criterion7(Context& c) {
  const Space s(11, 2);
  for (auto id : {LawId::lem42, LawId::lemABCD, LawId::prop21, LawId::prop22, LawId::prop23, LawId::prop24})
    law(c, id, s, LawMode::random, 10'000);
}

void criterion8(Context& c) {
  std::mt19937_64 rng(8);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{11, 1}, {5, 2}, {11, 2}}) {
    const Space s(p, n);
    const oracle::Grid g(p, n);
    double worst_rel = 0, worst_gap = -1e300, worst_abs = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto m = oracle::random_sum_free(g, rng, 1 + rng() % s.order());
      const GroupSet a(s, std::span<const std::uint32_t>(m));
      const auto sp = spectrum(a);
      double energy = 0;
      for (const auto& v : sp.values) energy += std::norm(v);
      const double expect = static_cast<double>(s.order()) * static_cast<double>(a.size());
      worst_rel = std::max(worst_rel, std::abs(energy - expect) / expect);
      const auto b = sum_free_bound_check(a);
      worst_gap = std::max(worst_gap, b.min_real - b.bound);
      if (s.order() <= 25 && t < 200) {
        const auto ref = oracle::dft(g, m);
        for (std::uint32_t y = 0; y < s.order(); ++y) worst_abs = std::max(worst_abs, std::abs(sp.values[y] - ref[y]));
      }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "F_%u^%u: max Parseval rel err %.3g, max (minRe - bound) %.3g, max |spectrum - naive| %.3g",
                  p, n, worst_rel, worst_gap, worst_abs);
    c.note(buf);
    c.expect(worst_rel <= kParsevalRel, std::string("Parseval ") + buf);
    c.expect(worst_gap <= kBoundSlack, std::string("bound ") + buf);
    c.expect(worst_abs <= kSpectrumAbs, std::string("naive spectrum ") + buf);
  }
}

void criterion9(Context& c) {
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> spaces{
      {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {7, 1}, {11, 1}, {13, 1},
      {5, 2}, {17, 1}, {19, 1}, {23, 1}};
  for (auto [p, n] : spaces) {
    const Space s(p, n);
    const auto a = max_sum_free(s), b = oracle_max_sum_free(s);
    const bool full = s.order() <= 16;
    const bool same = a.status == SearchStatus::proved && a.value == b.value && (!full || a.witnesses == b.witnesses);
    c.expect(same, "solver and oracle differ on F_" + std::to_string(p) + "^" + std::to_string(n));
  }
  c.note(std::to_string(spaces.size()) + " spaces compared (witness sets for order <= 16, values up to 25)");
}

void criterion10(Context& c, bool stretch) {
  Budget b;
  b.max_nodes = 2'000'000;
  const auto h = sf_hierarchy(Space(11, 2), 1, b);
  const auto& l1 = h[1];
  bool sound = true;
  for (const auto& w : l1.witnesses) sound = sound && is_sum_free(w) && w.size() == l1.value;
  c.note("sf_1(F_11^2) with 2e6 nodes: level 0 " + to_string(h[0].status) + ", level 1 " + to_string(l1.status) +
         " (lower bound " + std::to_string(l1.value) + ")");
  c.expect(l1.status == SearchStatus::indeterminate && sound, "sf_1(F_11^2) must be reported unproved");
  bool too_large = false;
  try {
    sf_hierarchy(Space(17, 2), 1);
  } catch (const Error& e) {
    too_large = e.code() == ErrorCode::space_too_large;
  }
  c.note(std::string("sf_1(F_17^2): ") + (too_large ? "SpaceTooLarge" : "unexpected result"));
  c.expect(too_large, "F_17^2 must be rejected as too large");
  if (stretch) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = sf_hierarchy(Space(5, 3), 1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.note("stretch F_5^3: level 0 " + std::to_string(s[0].value) + " (" + to_string(s[0].status) + "), level 1 " +
           std::to_string(s[1].value) + " (" + to_string(s[1].status) + "), " + std::to_string(secs) + "s");
    if (s[1].status == SearchStatus::proved) c.expect(s[1].value == 28, "stretch sf_1(F_5^3) = 28");
  } else {
    c.note("stretch sf_1(F_5^3) skipped (pass --stretch)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  bool stretch = false, verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--stretch") == 0) stretch = true;
    if (std::strcmp(argv[i], "--verbose") == 0) verbose = true;
  }
  const std::vector<std::pair<std::string, std::function<void(Context&)>>> criteria{
      {"sf_0 values", criterion1},
      {"sf_1 values", criterion2},
      {"sf_2 values", criterion3},
      {"F_11 extremal families", criterion4},
      {"constructor properties", criterion5},
      {"exhaustive laws", criterion6},
      {"randomized laws on F_11^2", criterion7},
      {"Fourier suite", criterion8},
      {"oracle equivalence", criterion9},
      {"desk-scale limits", [stretch](Context& c) { criterion10(c, stretch); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Context c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << "  exception: " << e.what() << "\n";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %zu %s (%.1fs)\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
    if (verbose || !c.ok) std::fputs(c.detail.str().c_str(), stdout);
    std::fflush(stdout);
    if (!c.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
