#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/dsl.hpp"
#include "cantor/errors.hpp"
#include "cantor/json_io.hpp"
#include "cantor/measure.hpp"
#include "oracle.hpp"

using namespace cantor;

namespace {

ParseError parse_failure(const std::string& text) {
  try {
    (void)parse_dsl(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("parsed: " << text);
  return ParseError("", 0, 0, "");
}

bool same_tree(const Code& a, const Code& b) {
  if (a.kind() != b.kind() || a.rank() != b.rank()) return false;
  if (a.is_leaf()) return a.label() == b.label();
  if (a.children().size() != b.children().size()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (a.children()[i].index != b.children()[i].index) return false;
    if (!same_tree(a.children()[i].code, b.children()[i].code)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("dsl examples") {
  const Code u = parse_dsl("union(cyl(0),cyl(1))");
  CHECK(u.kind() == NodeKind::Union);
  REQUIRE(u.children().size() == 2);
  CHECK(u.children()[0].code.label() == ClopenSet::cylinder(Bits("0")));
  CHECK(u.children()[1].code.label() == ClopenSet::cylinder(Bits("1")));
  CHECK(measure_of_code(u) == Dyadic(1));

  const Code c = parse_dsl("compl(inter(cyl(01),full))");
  CHECK(c.kind() == NodeKind::Complement);
  const Code n = normalize_demorgan(c);
  CHECK(is_complement_free(n));
  CHECK(measure_of_code(n) == Dyadic(BigInt(3), 2));

  const ParseError e = parse_failure("union(cyl(0)");
  CHECK(e.line() == 1);
  CHECK(e.column() == 13);
  CHECK(e.expected().find("\")\"") != std::string::npos);

  CHECK(measure_of_code(parse_dsl("inter(cyl(0),cyl(01))")) == Dyadic::pow2_neg(2));
  CHECK(member(parse_dsl("cyl(010)"), Point::parse("u=:v=01")));
}

TEST_CASE("dsl details") {
  CHECK(print_dsl(parse_dsl(" union ( cyl(1 ) ,\n empty, full ) ")) == "union(cyl(1),empty,full)");
  CHECK(print_dsl(parse_dsl("cyl(01,0)")) == "cyl(0)");
  CHECK(print_dsl(parse_dsl("cyl()")) == "full");
  CHECK(print_dsl(parse_dsl("union()")) == "union()");
  CHECK(measure_of_code(parse_dsl("union()")) == Dyadic(0));
  CHECK(measure_of_code(parse_dsl("inter()")) == Dyadic(1));

  const Code big = parse_dsl("bigunion(k,0,2,reloc($k,cyl(1)))");
  const Code by_hand = Code::union_of({relocate(0, Code::leaf(ClopenSet::cylinder(Bits("1")))),
                                       relocate(1, Code::leaf(ClopenSet::cylinder(Bits("1")))),
                                       relocate(2, Code::leaf(ClopenSet::cylinder(Bits("1"))))});
  CHECK(print_dsl(big) == print_dsl(by_hand));
  CHECK(print_dsl(parse_dsl("bigunion(k,3,1,cyl(0))")) == "union()");
  CHECK(print_dsl(parse_dsl("bigunion(k,0,1,bigunion(j,0,1,reloc($j,reloc($k,cyl(0)))))")).size() > 0);

  const ParseError line2 = parse_failure("union(cyl(0),\n  cyl(2))");
  CHECK(line2.line() == 2);
  CHECK(line2.column() == 7);
  CHECK(parse_failure("reloc($k,cyl(0))").expected().find("bigunion") != std::string::npos);
  CHECK(parse_failure("cyl(0) cyl(1)").line() == 1);
  CHECK(parse_failure("").expected().find("\"cyl\"") != std::string::npos);
  CHECK(parse_failure("inter(cyl(0),)").column() == 14);
}

TEST_CASE("dsl round trip on generated expressions") {
  oracle::Rng rng(91);
  int compared = 0;
  for (int t = 0; t < 200; ++t) {
    const std::string text = oracle::random_expression(rng, 12);
    CAPTURE(text);
    const Code c = parse_dsl(text);
    const std::string canonical = print_dsl(c);
    CHECK(print_dsl(parse_dsl(canonical)) == canonical);
    const Code again = normalize_demorgan(parse_dsl(canonical));
    const std::size_t d = oracle::max_generator_length(c);
    if (d > 12) continue;
    ++compared;
    std::size_t differ = 0;
    for (const auto& s : oracle::strings_of_length(d)) {
      differ += oracle::truth(c, s) != member(again, Point::padded(Bits(s))) ? 1 : 0;
    }
    CHECK(differ == 0);
  }
  CHECK(compared >= 100);
}

TEST_CASE("json round trips") {
  oracle::Rng rng(92);
  for (int t = 0; t < 100; ++t) {
    const Code c = oracle::random_ranked_code(rng);
    const Json j = to_json(c);
    const Code back = code_from_json(Json::parse(j.dump()));
    CHECK(same_tree(c, back));
    CHECK(to_json(back) == j);

    const ClopenSet s = oracle::random_clopen(rng, 6);
    CHECK(clopen_from_json(to_json(s)) == s);

    const StepFunction f = oracle::to_step(oracle::random_table(rng, rng() % 5));
    CHECK(step_function_from_json(to_json(f)) == f);
    CHECK(dyadic_from_json(to_json(f.integral())) == f.integral());
  }

  CHECK(to_json(Dyadic(BigInt(3), 2)) == "3/2^2");
  CHECK(dyadic_from_json(Json("-5/2^3")) == Dyadic(BigInt(-5), 3));
  CHECK_THROWS_AS(dyadic_from_json(Json("5/3")), ParseError);
  CHECK_THROWS_AS(code_from_json(Json::parse(R"({"kind":"bogus"})")), ParseError);
  CHECK_THROWS_AS(clopen_from_json(Json::parse(R"(["01","2"])")), ParseError);

  std::vector<StepFunction> terms;
  for (int i = 0; i < 5; ++i) terms.push_back(StepFunction::indicator(ClopenSet::cylinder(Bits("10"))));
  const L1Name n = certify_rapid_cauchy(std::move(terms), true);
  const L1Name nb = name_from_json(to_json(n));
  CHECK(nb.size() == n.size());
  CHECK(nb.stationary());
  CHECK(names_equal(n, nb).equal);
}

TEST_CASE("test files") {
  const Json j = Json::parse(R"({"tests": [
    {"name": "a", "levels": [[["0"], ["0", "10"]], [["00"]]]},
    {"levels": [[], [["1"]]]}
  ]})");
  const auto tests = tests_from_json(j);
  REQUIRE(tests.size() == 2);
  CHECK(tests[0].name() == "a");
  CHECK(tests[1].name() == "test1");
  CHECK(tests[0].stage(0, 1) == ClopenSet({"0", "10"}));
  CHECK(tests[0].stage(0, 9) == ClopenSet({"0", "10"}));
  CHECK(tests[0].stage(1, 0) == ClopenSet::cylinder(Bits("00")));
  CHECK(tests[1].stage(0, 0).is_empty());

  const Json out = to_json(tests[0], 2, 2);
  CHECK(out["name"] == "a");
  CHECK(out["levels"][0]["stages"][1] == Json::parse(R"(["0","10"])"));
  CHECK(out["levels"][0]["budgets"][1] == "3/2^2");
  CHECK_THROWS_AS(tests_from_json(Json::parse(R"({"tests": 3})")), ParseError);
}
