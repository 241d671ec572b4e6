#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"
#include "sumfree/verify.hpp"

using namespace sumfree;
using testing::code_of;

TEST_CASE("oracle examples") {
  const Space f5(5, 1);
  const auto o = oracle_max_sum_free(f5);
  CHECK(o.value == 2);
  REQUIRE(o.witnesses.size() == 2);
  CHECK(o.witnesses[0] == GroupSet(f5, {2, 3}));
  CHECK(o.witnesses[1] == GroupSet(f5, {1, 4}));
  CHECK(o.status == SearchStatus::proved);
  const auto o11 = oracle_max_sum_free(Space(11, 1));
  CHECK(o11.value == 4);
  CHECK(o11.witnesses.size() == 5);
  CHECK(code_of([] { oracle_max_sum_free(Space(3, 3)); }) == ErrorCode::space_too_large);
}

TEST_CASE("oracle matches the literal recursion at level 0") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {7, 1}, {13, 1}, {2, 4}}) {
    const auto brute = oracle::brute_hierarchy(oracle::Grid(p, n), 0);
    const auto o = oracle_max_sum_free(Space(p, n));
    CHECK(o.value == brute.values[0]);
    std::vector<std::uint32_t> m;
    for (const auto& w : o.witnesses) m.push_back(oracle::to_mask(w));
    std::sort(m.begin(), m.end());
    CHECK(m == brute.families[0]);
  }
}

TEST_CASE("law names round trip") {
  CHECK(all_laws().size() == 14);
  for (auto law : all_laws()) CHECK(parse_law(to_string(law)) == law);
  CHECK(to_string(LawId::lem5_classification) == "lem5_classification");
  CHECK(code_of([] { parse_law("fermat"); }) == ErrorCode::invalid_argument);
  CHECK(parse_mode("exhaustive") == LawMode::exhaustive);
  CHECK(exit_code(Verdict::pass) == 0);
  CHECK(exit_code(Verdict::vacuous) == 0);
  CHECK(exit_code(Verdict::counterexample) == 2);
  CHECK(exit_code(Verdict::unproved) == 3);
}

TEST_CASE("check_law examples") {
  const auto cd = check_law(LawId::cauchy_davenport, Space(7, 1), LawMode::exhaustive, 0, 1);
  CHECK(cd.verdict == Verdict::pass);
  CHECK(cd.applicable == 127 * 127);
  const auto l6 = check_law(LawId::lem6_classification, Space(11, 1), LawMode::exhaustive, 0, 1);
  CHECK(l6.verdict == Verdict::pass);
  CHECK(l6.trials == 165);
  const auto vo = check_law(LawId::vosper, Space(11, 1), LawMode::exhaustive, 0, 1);
  CHECK(vo.verdict == Verdict::pass);
  CHECK(vo.applicable > 0);
  CHECK(check_law(LawId::kneser, Space(3, 2), LawMode::exhaustive, 0, 1).verdict == Verdict::pass);
  CHECK(check_law(LawId::bdumm, Space(5, 1), LawMode::exhaustive, 0, 1).verdict == Verdict::pass);
  CHECK(check_law(LawId::lem5_classification, Space(11, 1), LawMode::exhaustive, 0, 1).verdict == Verdict::pass);
  CHECK(check_law(LawId::lem32_noncover, Space(11, 2), LawMode::exhaustive, 0, 1).verdict == Verdict::pass);
}

TEST_CASE("check_law guards") {
  CHECK(code_of([] { check_law(LawId::vosper, Space(5, 2), LawMode::exhaustive, 0, 1); }) == ErrorCode::wrong_space);
  CHECK(code_of([] { check_law(LawId::lem5_classification, Space(7, 1), LawMode::random, 10, 1); }) ==
        ErrorCode::bad_prime);
  CHECK(code_of([] { check_law(LawId::prop24, Space(11, 2), LawMode::exhaustive, 0, 1); }) ==
        ErrorCode::exhaustive_too_large);
  CHECK(code_of([] { check_law(LawId::cauchy_davenport, Space(17, 1), LawMode::exhaustive, 0, 1); }) ==
        ErrorCode::exhaustive_too_large);
  CHECK(code_of([] { check_law(LawId::prop24, Space(13, 2), LawMode::random, 10, 1); }) == ErrorCode::wrong_space);
}

TEST_CASE("randomized laws never produce counterexamples") {
  const Space f112(11, 2);
  for (auto law : {LawId::lem42, LawId::lemABCD, LawId::prop21, LawId::prop22, LawId::prop23, LawId::prop24}) {
    CAPTURE(to_string(law));
    const auto r = check_law(law, f112, LawMode::random, 300, 7);
    CHECK(r.trials == 300);
    CHECK(r.verdict != Verdict::counterexample);
    CHECK((r.verdict == Verdict::vacuous) == (r.applicable == 0));
  }
  for (auto law : {LawId::cauchy_davenport, LawId::kneser, LawId::bdumm, LawId::vosper}) {
    const auto r = check_law(law, Space(13, 1), LawMode::random, 500, 3);
    CHECK(r.verdict != Verdict::counterexample);
  }
}

TEST_CASE("random generation is a pure function of the seed") {
  const Space f112(11, 2);
  for (auto law : {LawId::lem42, LawId::prop22, LawId::kneser}) {
    for (std::uint64_t t : {0ull, 1ull, 99ull}) {
      const auto a = random_instance(law, f112, 5, t), b = random_instance(law, f112, 5, t);
      CHECK(a == b);
    }
    CHECK(random_instance(law, f112, 5, 0) != random_instance(law, f112, 6, 0));
  }
  const auto r1 = to_json(check_law(LawId::prop23, f112, LawMode::random, 200, 9));
  const auto r2 = to_json(check_law(LawId::prop23, f112, LawMode::random, 200, 9));
  CHECK(r1.dump() == r2.dump());
}

TEST_CASE("evaluate_law on hand-made instances") {
  const Space f7(7, 1);
  const GroupSet ap1(f7, {1, 2, 3}), ap2(f7, {0, 2, 4});
  CHECK(evaluate_law(LawId::cauchy_davenport, {ap1, ap1}).applicable);
  CHECK(evaluate_law(LawId::cauchy_davenport, {ap1, ap1}).holds);
  const auto v = evaluate_law(LawId::vosper, {ap1, GroupSet(f7, {5, 6})});
  CHECK(v.applicable);
  CHECK(v.holds);
  CHECK_FALSE(evaluate_law(LawId::vosper, {ap1, ap2}).applicable);
  const GroupSet big(f7, {0, 1, 2, 3}), other(f7, {2, 3, 4, 5});
  const auto b = evaluate_law(LawId::bdumm, {big, other});
  CHECK(b.applicable);
  CHECK(b.holds);
}

TEST_CASE("sf table") {
  CHECK(check_sf_table({{11, 1, 1, 3}}).verdict == Verdict::pass);
  CHECK(check_sf_table({{2, 4, 1, 5}}).verdict == Verdict::pass);
  CHECK(check_sf_table({{3, 3, 1, 5}}).verdict == Verdict::pass);
  CHECK(check_sf_table({{5, 2, 1, 5}}).verdict == Verdict::pass);

  const auto bad = check_sf_table({{11, 1, 2, 1}});
  CHECK(bad.verdict == Verdict::counterexample);
  REQUIRE(bad.certificate);
  CHECK((*bad.certificate)["actual"] == 0);
  CHECK(replay_certificate(*bad.certificate));
  auto fixed = *bad.certificate;
  fixed["expected"] = 0;
  CHECK_FALSE(replay_certificate(fixed));

  const auto unproved = check_sf_table({{3, 3, 1, 5}}, Budget{10, true, 100});
  CHECK(unproved.verdict == Verdict::unproved);
  CHECK(exit_code(unproved.verdict) == 3);

  for (const auto& e : default_sf_table()) CHECK(e.expected <= Space(e.p, e.n).order());
}

TEST_CASE("closed forms for p = 3 agree with the solver") {
  // sf_0 = 3^(n-1), sf_1 = (3^(n-1) + 3^(n-3)) / 2 for n >= 3.
  const auto h3 = sf_hierarchy(Space(3, 3), 1);
  CHECK(h3[0].value == 9);
  CHECK(h3[1].value == (9 + 1) / 2);
  const auto h2 = sf_hierarchy(Space(3, 2), 0);
  CHECK(h2[0].value == 3);
}

TEST_CASE("closed forms for p = 2 agree with the solver") {
  // sf_0 = 2^(n-1), sf_1 = 5 * 2^(n-4) for n >= 4.
  for (std::uint32_t n : {4u, 5u}) {
    const auto h = sf_hierarchy(Space(2, n), 1);
    CHECK(h[0].value == (1u << (n - 1)));
    CHECK(h[1].value == 5u * (1u << (n - 4)));
  }
  // sf_k = 2^(n-2) + 2^(n-3-k) for n >= k + 3.
  CHECK(sf_hierarchy(Space(2, 5), 2)[2].value == 8 + 1);
}

TEST_CASE("replaying a law certificate re-evaluates the stored instance") {
  const Space f7(7, 1);
  nlohmann::json cert{{"law", "cauchy_davenport"}, {"p", 7}, {"n", 1}, {"mode", "random"}, {"seed", 1}, {"trial", 0},
                      {"instance", {GroupSet(f7, {1, 2}).to_hex(), GroupSet(f7, {3}).to_hex()}}};
  CHECK_FALSE(replay_certificate(cert));
}

TEST_CASE("certificate verification") {
  const Space f11(11, 1);
  const auto levels = sf_hierarchy(f11, 2);
  const auto cert = hierarchy_to_json(f11, levels);
  CHECK(cert["solver"] == kSolverVersion);
  CHECK(verify_certificate(cert).valid);
  CHECK(verify_certificate(to_json(f11, 1, levels[1])).valid);

  auto wrong_value = cert;
  wrong_value["levels"][1]["value"] = 4;
  CHECK_FALSE(verify_certificate(wrong_value).valid);

  auto not_free = cert;
  not_free["levels"][0]["witnesses"][0] = GroupSet(f11, {1, 2, 3, 4}).to_hex();
  CHECK_FALSE(verify_certificate(not_free).valid);

  auto covered = cert;
  covered["levels"][1]["witnesses"][0] = GroupSet(f11, {4, 5, 6}).to_hex();
  CHECK_FALSE(verify_certificate(covered).valid);

  auto unsorted = cert;
  std::swap(unsorted["levels"][1]["witnesses"][0], unsorted["levels"][1]["witnesses"][1]);
  CHECK_FALSE(verify_certificate(unsorted).valid);

  auto truncated = cert;
  truncated["levels"][0]["witnesses"] = nlohmann::json::array();
  CHECK_FALSE(verify_certificate(truncated).valid);

  auto garbage = cert;
  garbage["levels"][0]["witnesses"][0] = "zz";
  CHECK_FALSE(verify_certificate(garbage).valid);

  auto short_k = cert;
  short_k["k"] = 5;
  CHECK_FALSE(verify_certificate(short_k).valid);

  CHECK_FALSE(verify_certificate(nlohmann::json{{"p", 11}}).valid);
}

TEST_CASE("spectrum csv") {
  const auto csv = spectrum_csv(GroupSet(Space(5, 1), {1}));
  CHECK(csv.rfind("index,re,im\n0,1,0\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}
