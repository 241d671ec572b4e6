#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "support.hpp"
#include "sumfree/space.hpp"

using namespace sumfree;

using testing::code_of;

TEST_CASE("make_space validates p and n") {
  const Space s = make_space(11, 1);
  CHECK(s.p() == 11);
  CHECK(s.n() == 1);
  CHECK(s.order() == 11);
  CHECK(make_space(11, 2).order() == 121);
  CHECK(code_of([] { make_space(9, 1); }) == ErrorCode::composite_modulus);
  CHECK(code_of([] { make_space(1, 1); }) == ErrorCode::composite_modulus);
  CHECK(code_of([] { make_space(5, 0); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { make_space(11, 2, 100); }) == ErrorCode::dimension_too_large);
  CHECK(code_of([] { make_space(2, 40); }) == ErrorCode::dimension_too_large);
}

TEST_CASE("combine examples") {
  const Space f5(5, 1);
  CHECK(f5.combine(1, Element{3}, 1, Element{4}).index == 2);
  const Space f112(11, 2);
  const std::vector<Residue> x{4, 9}, y{7, 5};
  const Element sum = f112.combine(1, f112.from_coords(x), 1, f112.from_coords(y));
  CHECK(f112.coords(sum) == std::vector<Residue>{0, 3});
  const Space f11(11, 1);
  CHECK(f11.combine(10, Element{6}, 0, Element{0}).index == 5);
}

TEST_CASE("codec round trip and coordinate order") {
  for (auto [p, n] : {std::pair{2u, 5u}, {3u, 3u}, {5u, 2u}, {11u, 2u}, {7u, 3u}}) {
    const Space s(p, n);
    const oracle::Grid g(p, n);
    for (std::uint32_t i = 0; i < s.order(); ++i) {
      const auto c = s.coords(Element{i});
      CHECK(s.from_coords(c).index == i);
      CHECK(c == g.coords(i));
      for (std::uint32_t d = 0; d < n; ++d) CHECK(s.digit(Element{i}, d) == c[d]);
    }
    // slices along x_0 are contiguous
    CHECK(s.stride(0) * p == s.order());
  }
}

TEST_CASE("combine agrees with coordinate arithmetic") {
  const Space s(5, 3);
  const oracle::Grid g(5, 3);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    const std::uint32_t x = rng() % s.order(), y = rng() % s.order();
    const Residue c1 = rng() % 5, c2 = rng() % 5;
    CHECK(s.combine(c1, Element{x}, c2, Element{y}).index == g.add(g.scale(c1, x), g.scale(c2, y)));
    CHECK(s.add(Element{x}, Element{y}) == s.add(Element{y}, Element{x}));
    CHECK(s.combine(1, Element{x}, 1, Element{0}).index == x);
    CHECK(s.neg(Element{x}).index == g.neg(x));
  }
}

TEST_CASE("inverse residues") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 101u}) {
    const Space s(p, 1);
    for (Residue c = 1; c < p; ++c) CHECK((std::uint64_t{c} * s.inverse(c)) % p == 1);
  }
}

TEST_CASE("linear_forms counts and fibres") {
  CHECK(linear_forms(Space(11, 1)).size() == 1);
  CHECK(linear_forms(Space(11, 2)).size() == 12);
  CHECK(linear_forms(Space(2, 4)).size() == 15);
  CHECK(linear_forms(Space(3, 3)).size() == 13);

  for (auto [p, n] : {std::pair{3u, 3u}, {5u, 2u}, {2u, 4u}, {11u, 2u}}) {
    const Space s(p, n);
    const auto forms = linear_forms(s);
    std::set<std::vector<std::uint32_t>> partitions;
    for (const auto& f : forms) {
      // first nonzero coefficient is 1
      auto it = std::find_if(f.coeffs().begin(), f.coeffs().end(), [](Residue c) { return c != 0; });
      REQUIRE(it != f.coeffs().end());
      CHECK(*it == 1);
      std::vector<std::uint32_t> counts(p, 0), labels(s.order());
      for (std::uint32_t x = 0; x < s.order(); ++x) {
        labels[x] = f(s, Element{x});
        ++counts[labels[x]];
      }
      for (auto c : counts) CHECK(c == s.order() / p);
      partitions.insert(labels);
    }
    // distinct forms differ somewhere
    CHECK(partitions.size() == forms.size());
  }
}

TEST_CASE("automorphism enumeration") {
  CHECK(automorphisms(Space(11, 1)).size() == 10);
  CHECK(automorphisms(Space(3, 2)).size() == 48);
  CHECK(gl_order(3, 2) == 48);
  CHECK(gl_order(2, 5) == 9999360);
  CHECK(code_of([] { automorphisms(Space(2, 5), 100); }) == ErrorCode::group_too_large);

  // Brute force over all 3^4 matrices for GL(2,3).
  std::size_t invertible = 0;
  for (std::uint32_t code = 0; code < 81; ++code) {
    std::vector<Residue> m{code % 3, code / 3 % 3, code / 9 % 3, code / 27 % 3};
    if ((m[0] * m[3] + 3 * 3 - m[1] * m[2] % 3) % 3 != 0) ++invertible;
  }
  CHECK(invertible == 48);

  for (auto [p, n] : {std::pair{3u, 2u}, {2u, 3u}, {5u, 2u}}) {
    const Space s(p, n);
    const auto all = automorphisms(s);
    std::set<std::vector<Residue>> seen;
    for (const auto& phi : all) {
      seen.insert(phi.matrix());
      CHECK(determinant(p, n, phi.matrix()) != 0);
      CHECK(phi.compose(phi.inverse()).is_identity());
      CHECK(phi.inverse().compose(phi).is_identity());
    }
    CHECK(seen.size() == all.size());
    CHECK(all.size() == gl_order(p, n));
  }
}

TEST_CASE("automorphisms act linearly") {
  const Space s(5, 3);
  const oracle::Grid g(5, 3);
  AutomorphismStream stream(s, 2'000'000);
  int checked = 0;
  while (auto phi = stream.next()) {
    if (++checked > 300) break;
    for (std::uint32_t x = 0; x < s.order(); x += 7) CHECK((*phi)(s, Element{x}).index == g.mul(phi->matrix(), x));
  }
}

TEST_CASE("singular matrices are rejected") {
  const Space s(5, 2);
  CHECK(code_of([&] { LinearAuto(s, {1, 2, 2, 4}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { LinearAuto::dilation(s, 0); }) != ErrorCode::ok);
}
