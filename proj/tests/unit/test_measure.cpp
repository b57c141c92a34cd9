#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/measure.hpp"
#include "oracle.hpp"

using namespace cantor;

namespace {

Code leaf(std::initializer_list<const char*> gens) {
  std::vector<Bits> bits;
  for (const char* g : gens) bits.emplace_back(g);
  return Code::leaf(prefix_free_normalize(bits));
}

StepFunction chi(std::initializer_list<const char*> gens) { return StepFunction::indicator(leaf(gens).label()); }

std::vector<Point> periodic_points(std::size_t max_len) {
  std::vector<Point> out;
  for (std::size_t lu = 0; lu <= max_len; ++lu) {
    for (std::size_t lv = 1; lv <= max_len; ++lv) {
      for (const auto& u : oracle::strings_of_length(lu)) {
        for (const auto& v : oracle::strings_of_length(lv)) out.push_back(Point::eventually_periodic(Bits(u), Bits(v)));
      }
    }
  }
  return out;
}

bool avoids_all(const Point& x, const RapidGDelta& t, std::size_t level, std::size_t stages) {
  for (std::size_t s = 0; s < stages; ++s) {
    if (avoids(x, t, level, s).captured) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("build_decomposition") {
  const auto d0 = build_decomposition(leaf({"0"}));
  CHECK(d0.at({}).limit() == chi({"0"}));
  CHECK(d0.at({}).stationary());
  const auto d1 = build_decomposition(Code::union_of({leaf({"0"}), leaf({"1"})}));
  CHECK(d1.at({}).limit() == StepFunction::constant(Dyadic(1)));
  const Code c = Code::inter_of({leaf({"0"}), leaf({"01"})});
  const auto d2 = build_decomposition(c);
  CHECK(d2.at({}).limit() == chi({"01"}));
  CHECK(limit_integral(d2.at({})) == Dyadic::pow2_neg(2));
  CHECK(d2.size() == 3);
}

TEST_CASE("verify_decomposition") {
  const Code c = Code::union_of({leaf({"0"}), Code::inter_of({leaf({"1"}), leaf({"11", "01"})})});
  auto d = build_decomposition(c);
  CHECK(verify_decomposition(c, d).ok);
  auto broken = d;
  broken.erase(Address{1, 0});
  broken.emplace(Address{1, 0}, L1Name::constant(chi({"10"})));
  const auto check = verify_decomposition(c, broken);
  CHECK_FALSE(check.ok);
  CHECK(check.law == "leaf");
  CHECK(check.address == Address{1, 0});
  broken.erase(Address{0});
  CHECK(verify_decomposition(c, broken).law == "coverage");

  oracle::Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const Code r = oracle::random_code(rng);
    const auto a = build_decomposition(r);
    const auto b = build_decomposition(r, true);
    CHECK(verify_decomposition(r, a).ok);
    CHECK(verify_decomposition(r, b).ok);
    for (const auto& [addr, name] : a) CHECK(names_equal(name, b.at(addr)).equal);
  }
}

TEST_CASE("measure_of_code") {
  CHECK(measure_of_code(Code::leaf(ClopenSet::full())) == Dyadic(1));
  CHECK(measure_of_code(Code::inter_of({leaf({"0"}), leaf({"01"})})) == Dyadic::pow2_neg(2));
  CHECK(oracle::counted_measure(Code::inter_of({leaf({"0"}), leaf({"01"})}), 2) == Dyadic::pow2_neg(2));
  oracle::Rng rng(42);
  for (int t = 0; t < 300; ++t) {
    const Code r = oracle::random_code(rng);
    CHECK(measure_of_code(r) == oracle::counted_measure(r, oracle::max_generator_length(r)));
  }
}

TEST_CASE("assemble_bad_gdelta") {
  oracle::Rng rng(43);
  const auto points = periodic_points(5);
  for (int t = 0; t < 100; ++t) {
    oracle::CodeShape shape;
    shape.max_support = 5;
    shape.max_nodes = 20;
    const Code r = oracle::random_code(rng, shape);
    const auto d = build_decomposition(r);
    const RapidGDelta bad = assemble_bad_gdelta(r, d);
    for (std::size_t s = 0; s < 3; ++s) CHECK(bad.stage(0, s).is_empty());
    std::size_t mismatches = 0;
    for (const auto& x : points) {
      if (!avoids_all(x, bad, 0, 3)) continue;
      const EvalMap m = evaluate(r, x);
      // the address-wise values form an evaluation map
      EvalMap from_names(r, {});
      for (const auto& [addr, name] : d) {
        const PointValue v = value_at(name, x, 4, 4);
        from_names.set(subtree(r, addr).id(), std::get<Dyadic>(v) == Dyadic(1));
      }
      mismatches += from_names.root_value() != m.root_value();
      mismatches += !satisfies_clauses(r, x, from_names);
    }
    CHECK(mismatches == 0);
  }

  // a leaf name that is wrong on one small cylinder
  const Code c = Code::union_of({leaf({"0"}), leaf({"11"})});
  auto d = build_decomposition(c);
  d.erase(Address{0});
  d.emplace(Address{0}, L1Name::constant(chi({"0", "101010101010"})));
  const RapidGDelta bad = assemble_bad_gdelta(c, d);
  bool seen = false;
  for (std::size_t s = 0; s < 30 && !seen; ++s) {
    const ClopenSet stage = bad.stage(0, s);
    for (const auto& g : stage.generators()) seen = seen || g.is_prefix_of(Bits("101010101010"));
  }
  CHECK(seen);
}

TEST_CASE("decomposition_from_membership") {
  const Code single = leaf({"01"});
  const Code t1 = tilde(single, {Address{}});
  const auto d1 = decomposition_from_membership(build_decomposition(t1).at({}), single, {Address{}});
  CHECK(names_equal(d1.at({}), L1Name::constant(chi({"01"}))).equal);

  oracle::Rng rng(44);
  for (int t = 0; t < 100; ++t) {
    oracle::CodeShape shape;
    shape.max_nodes = 12;
    shape.max_support = 5;
    const Code r = oracle::random_code(rng, shape);
    std::vector<Address> h = addresses(r);
    std::shuffle(h.begin(), h.end(), rng);
    if (rng() % 2) h.push_back(h.front());
    const Code tl = tilde(r, h);
    const L1Name f = build_decomposition(tl).at({});
    const auto d = decomposition_from_membership(f, r, h);
    CHECK(verify_decomposition(r, d).ok);
    const auto direct = build_decomposition(r);
    for (const auto& [addr, name] : direct) CHECK(names_equal(name, d.at(addr)).equal);
  }

  // a name of the wrong set is refused
  const Code c = Code::union_of({leaf({"0"}), leaf({"1"})});
  const std::vector<Address> h{{}, {0}, {1}};
  CHECK_THROWS_AS(decomposition_from_membership(L1Name::constant(chi({"1"})), c, h), CertificateError);
}

TEST_CASE("char_to_regularity") {
  const RegularityApprox zero = char_to_regularity(L1Name::constant(StepFunction()));
  const RegularityApprox one = char_to_regularity(L1Name::constant(StepFunction::constant(Dyadic(1))));
  for (std::size_t n = 0; n < 5; ++n) {
    CHECK(zero.a(n).stage(0).is_full());
    CHECK(zero.c(n).stage(0).is_empty());
    CHECK(one.a(n).stage(0).is_empty());
    CHECK(one.c(n).stage(0).is_full());
  }

  oracle::Rng rng(45);
  for (int t = 0; t < 50; ++t) {
    auto terms = oracle::perturbed_terms(rng, oracle::indicator_table({"0"}, 1), 14);
    const L1Name n = certify_rapid_cauchy(std::move(terms));
    const RegularityApprox r = char_to_regularity(n);
    for (std::size_t k = 0; k + 3 <= n.last_index(); ++k) {
      const ClopenSet both = set_intersection(r.a(k).stage(0), r.c(k).stage(0));
      const auto ik = static_cast<std::int64_t>(k);
      CHECK(overlap_measure(r, k, 0) == mu_I(both));
      CHECK(mu_I(both) <= Dyadic(3).shifted(1 - ik));
      CHECK(3 * mu_I(both) <= Dyadic(9) * l1_norm(n.term(k + 3), chi({"0"})));
    }
  }
}

TEST_CASE("regularity_to_char") {
  const L1Name k = L1Name::constant(chi({"01", "1"}));
  const L1Name back = regularity_to_char(char_to_regularity(k), [](std::size_t) { return 0; }, 8);
  CHECK(names_equal(back, k).equal);

  oracle::Rng rng(46);
  for (int t = 0; t < 30; ++t) {
    const auto target = oracle::random_generators(rng, 4);
    auto terms = oracle::perturbed_terms(rng, oracle::indicator_table(target, 4), 16);
    const L1Name n = certify_rapid_cauchy(std::move(terms));
    const RegularityApprox r = char_to_regularity(n);
    const L1Name f = regularity_to_char(r, [](std::size_t) { return 0; }, 10);
    // f_n is chi(C_{n+2}) after the shift; the pairwise bound of the unshifted sequence
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        const auto a = static_cast<std::int64_t>(i + 1);
        const auto b = static_cast<std::int64_t>(j + 1);
        CHECK(l1_norm(f.term(i), f.term(j)) <= Dyadic(1).shifted(-a) + Dyadic(1).shifted(-b));
      }
    }
    CHECK(names_equal(f, L1Name::constant(StepFunction::indicator(prefix_free_normalize(
                             std::vector<Bits>(target.begin(), target.end()))))).equal);
  }

  // A and C both the whole space: no stage can pass
  const RegularityApprox degenerate{[](std::size_t) { return StagedOpenSet::constant(ClopenSet::full()); },
                                    [](std::size_t) { return StagedOpenSet::constant(ClopenSet::full()); }};
  CHECK_THROWS_AS(regularity_to_char(degenerate, [](std::size_t) { return 0; }, 4), CertificateError);
  CHECK_FALSE(find_stage(degenerate, 0, 5, std::chrono::milliseconds(200)).has_value());

  // A and C grow with the stage: the search finds the first stage with D small enough
  const RegularityApprox staged{
      [](std::size_t n) {
        return StagedOpenSet([n](std::size_t s) {
          return s >= n ? ClopenSet::cylinder(Bits("1")) : ClopenSet::cylinder(Bits("11"));
        });
      },
      [](std::size_t) { return StagedOpenSet::constant(ClopenSet::cylinder(Bits("0"))); }};
  CHECK(find_stage(staged, 2, 10, std::chrono::milliseconds(1000)) == std::optional<std::size_t>(3));
  const L1Name searched = regularity_to_char_search(staged, 4, 10, std::chrono::milliseconds(1000));
  CHECK(names_equal(searched, L1Name::constant(chi({"0"}))).equal);
}

TEST_CASE("sup_open_set") {
  const auto zero = sup_open_set([](std::size_t) { return Dyadic(0); });
  for (std::size_t s = 0; s < 6; ++s) CHECK(zero.stage(s).is_empty());

  const auto half = sup_open_set([](std::size_t) { return Dyadic::pow2_neg(1); });
  CHECK(half.check_monotone(10));
  for (std::size_t s = 0; s < 12; ++s) {
    const Dyadic m = mu_I(half.stage(s));
    CHECK(m <= Dyadic::pow2_neg(1));
    CHECK(Dyadic::pow2_neg(1) - m <= Dyadic::pow2_neg(static_cast<std::uint32_t>(s)));
  }

  const auto up = sup_open_set([](std::size_t n) { return Dyadic(1) - Dyadic::pow2_neg(static_cast<std::uint32_t>(n)); });
  CHECK(up.check_monotone(10));
  Dyadic prev;
  for (std::size_t s = 0; s < 12; ++s) {
    const Dyadic m = mu_I(up.stage(s));
    CHECK(m >= prev);
    CHECK(m < Dyadic(1));
    prev = m;
  }
  CHECK(Dyadic(1) - prev <= Dyadic::pow2_neg(9));

  // every cylinder [p0] in a stage satisfies .p1 < a_n
  const Dyadic a(BigInt(11), 4);
  const auto fixed = sup_open_set([a](std::size_t) { return a; });
  const ClopenSet stage6 = fixed.stage(6);
  for (const auto& g : stage6.generators()) {
    const std::string p = g.str().substr(0, g.size() - 1);
    CHECK(g[g.size() - 1] == false);
    CHECK(Dyadic(BigInt(std::stoull(p + "1", nullptr, 2)), static_cast<std::uint32_t>(p.size() + 1)) < a);
  }
  CHECK_THROWS_AS(sup_open_set([](std::size_t) { return Dyadic(1); }).stage(0), ValidationError);
}
