#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/gdelta.hpp"
#include "oracle.hpp"

using namespace cantor;

namespace {

ClopenSet cyl(const char* p) { return ClopenSet::cylinder(Bits(p)); }

RapidGDelta single_cylinders(const std::string& name, char bit, std::size_t levels) {
  std::vector<std::vector<ClopenSet>> lv;
  for (std::size_t n = 0; n < levels; ++n) lv.push_back({ClopenSet::cylinder(Bits(std::string(n + 1, bit)))});
  return RapidGDelta::from_stages(name, lv);
}

}  // namespace

TEST_CASE("combine") {
  const RapidGDelta none = combine({});
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t s = 0; s < 4; ++s) CHECK(none.stage(j, s).is_empty());
  }

  const RapidGDelta t = single_cylinders("zeros", '0', 8);
  const RapidGDelta one = combine({t});
  for (std::size_t j = 0; j < 6; ++j) {
    for (std::size_t s = 0; s < 3; ++s) {
      CHECK(one.stage(j, s) == t.stage(j + 1, s));
      CHECK(mu_I(one.stage(j, s)) <= Dyadic::pow2_neg(static_cast<std::uint32_t>(j + 1)));
    }
  }

  const RapidGDelta u = single_cylinders("ones", '1', 8);
  const RapidGDelta two = combine({t, u});
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(two.stage(j, 0) == t.stage(j + 1, 0));
    CHECK(mu_I(two.stage(j, 1)) == mu_I(t.stage(j + 1, 1)) + mu_I(u.stage(j + 2, 1)));
    CHECK(mu_I(two.stage(j, 1)) <= Dyadic::pow2_neg(static_cast<std::uint32_t>(j)));
  }
  // the schedule bound caps the diagonal
  CHECK(combine({t, u}, "capped", 0).stage(0, 3) == t.stage(1, 3));
}

TEST_CASE("combine keeps budgets and contains its inputs") {
  oracle::Rng rng(51);
  for (int t = 0; t < 200; ++t) {
    std::vector<RapidGDelta> tests;
    for (std::size_t k = 0, m = 1 + rng() % 4; k < m; ++k) {
      tests.push_back(oracle::to_gdelta(oracle::random_test(rng, 10, 5), "t" + std::to_string(k)));
    }
    const RapidGDelta c = combine(tests);
    for (std::size_t j = 0; j < 5; ++j) {
      for (std::size_t s = 0; s < 5; ++s) {
        const ClopenSet out = c.stage(j, s);
        CHECK(budget_report(c, j, s) == mu_I(out));
        CHECK(mu_I(out) <= Dyadic::pow2_neg(static_cast<std::uint32_t>(j)));
        for (std::size_t n = 0; n <= s && n < tests.size(); ++n) CHECK(is_subset(tests[n].stage(n + j + 1, s), out));
      }
      CHECK(c.level(j).check_monotone(4));
    }
  }
}

TEST_CASE("avoids") {
  const RapidGDelta empty = RapidGDelta::empty("nothing");
  for (std::size_t s = 0; s < 4; ++s) CHECK_FALSE(avoids(Point::seeded(s), empty, 0, s).captured);

  const RapidGDelta t = RapidGDelta::from_stages("t", {{cyl("00")}, {cyl("000")}});
  const Avoidance a = avoids(Point::zeros(), t, 0, 0);
  CHECK(a.captured);
  CHECK(a.level == 0);
  CHECK(a.cylinder == Bits("00"));
  CHECK_FALSE(avoids(Point::padded(Bits("01")), t, 0, 0).captured);

  // a point captured by input k shows up in the combination once (k, k+j+1) is scheduled
  const RapidGDelta other = single_cylinders("ones", '1', 6);
  const Point x = Point::zeros();
  const RapidGDelta deep = RapidGDelta::from_stages("deep", {{}, {}, {cyl("00")}, {cyl("000")}});
  const RapidGDelta c2 = combine({other, deep});
  CHECK_FALSE(avoids(x, c2, 0, 0).captured);
  CHECK(avoids(x, c2, 0, 1).captured);
  CHECK(avoids(x, c2, 1, 1).captured);
}

TEST_CASE("budget_report") {
  const RapidGDelta empty = RapidGDelta::empty("e");
  CHECK(budget_report(empty, 3, 0) == Dyadic(0));
  for (std::size_t n = 0; n < 6; ++n) {
    const RapidGDelta t = single_cylinders("z", '0', 8);
    CHECK(budget_report(t, n, 0) == Dyadic::pow2_neg(static_cast<std::uint32_t>(n + 1)));
  }
  const RapidGDelta over = RapidGDelta::from_stages("greedy", {{cyl("")}, {cyl("0"), ClopenSet({"0", "10"})}});
  CHECK_NOTHROW(over.stage(1, 0));
  CHECK_THROWS_WITH_AS(over.stage(1, 1), doctest::Contains("greedy"), CertificateError);
  CHECK_THROWS_WITH_AS(budget_report(over, 1, 1), doctest::Contains("level 1"), CertificateError);
  CHECK_THROWS_WITH_AS(combine({over}).stage(0, 1), doctest::Contains("greedy"), CertificateError);
}

TEST_CASE("convergence and agreement tests") {
  oracle::Rng rng(52);
  for (int t = 0; t < 40; ++t) {
    const auto target = oracle::random_generators(rng, 3);
    const L1Name f = certify_rapid_cauchy(oracle::flipped_indicator_terms(rng, target, 14));
    const L1Name g = certify_rapid_cauchy(oracle::flipped_indicator_terms(rng, target, 14));
    const RapidGDelta conv = convergence_test(f);
    const RapidGDelta agree = agreement_test(f, g);
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t s = 0; s < 10; ++s) {
        CHECK(mu_I(conv.stage(k, s)) <= Dyadic::pow2_neg(static_cast<std::uint32_t>(k)));
        CHECK(mu_I(agree.stage(k, s)) <= Dyadic::pow2_neg(static_cast<std::uint32_t>(k)));
      }
    }
    // a point where the final terms disagree is captured unless the stage is still short
    for (int p = 0; p < 100; ++p) {
      const Point x = Point::eventually_periodic(Bits(oracle::random_bits(rng, rng() % 8)), Bits("01"));
      if (agree.stage(0, 12).contains(x)) continue;
      CHECK(f.term(13).value(x) == g.term(13).value(x));
    }
  }
}

TEST_CASE("diagonal_test") {
  oracle::Rng rng(53);
  const auto base = oracle::random_table(rng, 2);
  const L1Name g = L1Name::constant(oracle::to_step(base));
  std::vector<L1Name> hs;
  for (std::size_t j = 0; j < 6; ++j) {
    auto terms = oracle::perturbed_terms(rng, base, 2 * j + 3);
    hs.push_back(certify_rapid_cauchy(std::move(terms)));
  }
  const RapidGDelta d = diagonal_test(hs, g);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t s = 0; s < 5; ++s) CHECK(mu_I(d.stage(k, s)) <= Dyadic::pow2_neg(static_cast<std::uint32_t>(k)));
  }
}

TEST_CASE("honest tests leave periodic points uncaptured") {
  oracle::Rng rng(54);
  for (int t = 0; t < 100; ++t) {
    const RapidGDelta test = oracle::to_gdelta(oracle::random_test(rng, 4, 4), "honest");
    const ClopenSet level1 = test.stage(1, 3);
    bool free_point = false;
    for (std::size_t lu = 0; lu <= 4 && !free_point; ++lu) {
      for (const auto& u : oracle::strings_of_length(lu)) free_point = free_point || !level1.contains(Point::padded(Bits(u)));
    }
    CHECK(free_point);
  }
}
