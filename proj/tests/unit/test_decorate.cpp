#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/decorate.hpp"
#include "cantor/errors.hpp"
#include "cantor/measure.hpp"
#include "oracle.hpp"

using namespace cantor;

namespace {

Code leaf(const char* p) { return Code::leaf(ClopenSet::cylinder(Bits(p)), Ordinal(1)); }

std::vector<std::size_t> indices(const Code& c) {
  std::vector<std::size_t> out;
  for (const auto& ch : c.children()) out.push_back(ch.index);
  return out;
}

bool same_tree(const Code& a, const Code& b) {
  if (a.kind() != b.kind() || a.rank() != b.rank()) return false;
  if (a.is_leaf()) return a.label() == b.label();
  if (indices(a) != indices(b)) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (!same_tree(a.children()[i].code, b.children()[i].code)) return false;
  }
  return true;
}

std::vector<Point> prefix_points(std::size_t d) {
  std::vector<Point> out;
  for (const auto& s : oracle::strings_of_length(d)) out.push_back(Point::padded(Bits(s)));
  return out;
}

}  // namespace

TEST_CASE("empty_set_code") {
  const Code one = empty_set_code(Ordinal(1));
  CHECK(one.is_leaf());
  CHECK(one.label().is_empty());

  const Code three = empty_set_code(Ordinal(3));
  CHECK(three.kind() == NodeKind::Union);
  CHECK(*three.rank() == Ordinal(3));
  CHECK(check_rank(three));
  CHECK(is_alternating(three));
  CHECK(node_count(three) == 3);
  CHECK(oracle::counted_measure(three, 0) == Dyadic(0));

  const Code w = empty_set_code(Ordinal::omega_power(1, 1));
  CHECK(check_rank(w));
  CHECK(is_alternating(w));
  CHECK(*w.rank() == Ordinal::omega_power(1, 1));
  for (const auto& ch : w.children()) {
    REQUIRE(ch.code.rank());
    CHECK(*ch.code.rank() < Ordinal::omega_power(1, 1));
    CHECK(!ch.code.rank()->is_limit());
  }
  CHECK(oracle::counted_measure(w, 0) == Dyadic(0));
  CHECK(measure_of_code(w) == Dyadic(0));

  const Code i = empty_set_code(Ordinal(4), NodeKind::Intersection);
  CHECK(i.kind() == NodeKind::Intersection);
  CHECK(check_rank(i));
  CHECK(measure_of_code(i) == Dyadic(0));
  CHECK_THROWS_AS(empty_set_code(Ordinal(0)), ValidationError);
}

TEST_CASE("decorate layout") {
  const Code l = leaf("01");
  CHECK(decorate(l, empty_generator()).id() == l.id());

  const Code u = Code::node(NodeKind::Union, {{0, leaf("0")}, {1, leaf("11")}}, Ordinal(2));
  const Code d = decorate(u, empty_generator());
  CHECK(indices(d) == std::vector<std::size_t>{0, 1, 2});
  CHECK(d.children()[0].code.label() == ClopenSet::cylinder(Bits("0")));
  CHECK(d.children()[2].code.label() == ClopenSet::cylinder(Bits("11")));
  CHECK(d.children()[1].code.label().is_empty());
  CHECK(*d.rank() == Ordinal(2));

  // intersection nodes take the complement of N_b
  const Code i = Code::node(NodeKind::Intersection, {{0, leaf("0")}, {3, leaf("00")}}, Ordinal(2));
  const Code di = decorate(i, empty_generator());
  CHECK(indices(di) == std::vector<std::size_t>{0, 1, 6});
  CHECK(di.children()[1].code.label().is_full());

  // rank 4 with budget [1, 2, 3, 4]: decoration children 1, 3, 5
  const Code deep = Code::node(NodeKind::Union,
                               {{0, Code::node(NodeKind::Intersection, {{0, leaf("1")}}, Ordinal(2))}}, Ordinal(4));
  const Code dd = decorate(deep, empty_generator());
  CHECK(indices(dd) == std::vector<std::size_t>{0, 1, 3, 5});
  CHECK(*dd.children()[2].code.rank() == Ordinal(2));
  CHECK(*dd.children()[3].code.rank() == Ordinal(3));
  CHECK(check_rank(dd));
  CHECK(is_alternating(dd));

  // an explicit budget without 2 leaves index 3 out
  const Code db = decorate(deep, empty_generator(), {Ordinal(1), Ordinal(3), Ordinal(4)});
  CHECK(indices(db) == std::vector<std::size_t>{0, 1, 3});
  CHECK(*db.children()[2].code.rank() == Ordinal(3));
}

TEST_CASE("decorate rejects bad inputs and outputs") {
  const Code unranked = Code::union_of({Code::leaf(ClopenSet::cylinder(Bits("0")))});
  CHECK_THROWS_AS(decorate(unranked, empty_generator()), ValidationError);
  const Code comp = Code::complement(leaf("0"));
  CHECK_THROWS_AS(decorate(comp, empty_generator(), {Ordinal(1)}), ValidationError);

  const DecorationGenerator liar("liar", [](const Ordinal& b, std::size_t) {
    Code c = b == Ordinal(2) ? Code::leaf(ClopenSet::empty(), Ordinal(1)) : empty_set_code(b, NodeKind::Intersection);
    return DecorationPair{c, c};
  });
  const Code u = Code::node(NodeKind::Union, {{0, leaf("0")}}, Ordinal(3));
  try {
    (void)decorate(u, liar);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("b = 2") != std::string::npos);
  }
  const DecorationGenerator union_root("union-root", [](const Ordinal& b, std::size_t) {
    Code c = empty_set_code(b, NodeKind::Union);
    return DecorationPair{c, c};
  });
  CHECK_THROWS_AS(decorate(u, union_root), ValidationError);
}

TEST_CASE("split_generator") {
  const DecorationGenerator h = split_generator({ClopenSet::cylinder(Bits("0"))});
  const DecorationPair pair = h(Ordinal(1), 0);
  CHECK(pair.p.label() == ClopenSet::cylinder(Bits("00")));
  CHECK(pair.n.label() == ClopenSet::cylinder(Bits("01")));

  // S_b = [0^{b_hat+1}] at every position b_hat
  for (std::size_t b_hat = 0; b_hat < 4; ++b_hat) {
    std::vector<ClopenSet> targets(b_hat + 1);
    targets[b_hat] = ClopenSet::cylinder(Bits::zeros(b_hat + 1));
    const Ordinal b(b_hat + 2);
    const DecorationPair q = split_generator(targets)(b, b_hat);
    validate_generator_output(q, b);
    CHECK(measure_of_code(q.p) == Dyadic::pow2_neg(static_cast<std::uint32_t>(b_hat + 2)));
    const std::size_t d = b_hat + 2;
    for (const auto& s : oracle::strings_of_length(d)) {
      const Point x = Point::padded(Bits(s));
      CHECK(member(q.p, x) == (s == std::string(b_hat + 1, '0') + "0"));
      CHECK(member(q.n, x) == (s == std::string(b_hat + 1, '0') + "1"));
    }
  }

  // the all-empty family behaves like the empty generator
  const DecorationGenerator none = split_generator({ClopenSet::empty(), ClopenSet::empty()});
  for (int k = 1; k <= 4; ++k) {
    const DecorationPair a = none(Ordinal(k), 1);
    const DecorationPair b = empty_generator()(Ordinal(k), 1);
    CHECK(same_tree(a.p, b.p));
    CHECK(same_tree(a.n, b.n));
  }

  CHECK_THROWS_AS(split_generator({ClopenSet::cylinder(Bits("0")), ClopenSet::cylinder(Bits("01"))}), ValidationError);
  CHECK_THROWS_AS(split_generator({ClopenSet::empty(), ClopenSet::cylinder(Bits(""))}), ValidationError);
  CHECK_THROWS_AS(split_generator({ClopenSet::empty(), ClopenSet::cylinder(Bits("01")), ClopenSet::cylinder(Bits("1"))}),
                  ValidationError);
}

TEST_CASE("preservation on random ranked codes") {
  oracle::Rng rng(81);
  std::size_t inside = 0;
  for (int t = 0; t < 100; ++t) {
    const Code code = oracle::random_ranked_code(rng, {6, 30, 4, false});
    const std::vector<Ordinal> budget = default_budget(*code.rank());
    std::vector<ClopenSet> targets;
    for (std::size_t k = 0; k < budget.size(); ++k) targets.push_back(ClopenSet::cylinder(Bits::zeros(k + 1) + Bits("1")));
    const DecorationGenerator split = split_generator(targets);

    for (const DecorationGenerator* h : {&split}) {
      const Code d = decorate(code, *h, budget);
      CHECK(check_rank(d));
      CHECK(*d.rank() == *code.rank());
      CHECK(is_alternating(d));
      CHECK(is_complement_free(d));
    }
    const Code e = decorate(code, empty_generator(), budget);
    CHECK(check_rank(e));
    CHECK(is_alternating(e));

    const std::size_t depth = oracle::max_generator_length(code);
    std::size_t changed = 0;
    for (const auto& s : oracle::strings_of_length(depth)) {
      changed += member(e, Point::padded(Bits(s))) != oracle::truth(code, s) ? 1 : 0;
    }
    CHECK(changed == 0);

    const std::size_t pdepth = std::min<std::size_t>(budget.size() + 2, 7);
    const PreservationReport r = check_preservation(code, split, budget, prefix_points(std::max(depth, pdepth)));
    CHECK_MESSAGE(r.ok(), (r.failures.empty() ? "" : r.failures.front()));
    CHECK(r.preserved == r.outside);
    CHECK(r.unique_maps == r.inside);
    inside += r.inside;
    // 0^omega lies in no target
    CHECK(member(decorate(code, split, budget), Point::zeros()) == member(code, Point::zeros()));
  }
  CHECK(inside > 0);
}

TEST_CASE("evaluation_map_unique") {
  const Code c = Code::node(NodeKind::Union, {{0, leaf("0")}, {1, leaf("11")}}, Ordinal(2));
  CHECK(evaluation_map_unique(c, Point::zeros()));
  CHECK(evaluation_map_unique(c, Point::padded(Bits("10"))));
  const PreservationReport r = check_preservation(c, empty_generator(), {Ordinal(1), Ordinal(2)}, prefix_points(3));
  CHECK(r.ok());
  CHECK(r.points == 8);
  CHECK(r.outside == 8);
  CHECK(r.inside == 0);
}
