// Command line front end: parse, evaluate, measure, decompose, combine tests
// and decorate codes written in the expression language, with JSON reports.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cantor/borel_code.hpp"
#include "cantor/decorate.hpp"
#include "cantor/dsl.hpp"
#include "cantor/errors.hpp"
#include "cantor/gdelta.hpp"
#include "cantor/json_io.hpp"
#include "cantor/measure.hpp"
#include "cantor/sampler.hpp"

namespace {

using cantor::Json;

constexpr const char* kSchema = "cantor-measure/1";
constexpr std::size_t kMaxListedAddresses = 256;
constexpr std::uint64_t kMaxPrintedNodes = 2000;

struct Options {
  std::string input;
  bool normalize = false;
  bool alternating = false;
  std::string rank;
  std::string point;
  std::uint64_t mc = 0;
  std::uint64_t seed = 0;
  std::size_t depth = 0;
  bool depth_set = false;
  std::size_t stages = 4;
  double tolerance = 0.01;
  std::string json_path;
  std::string generator = "empty";
  std::string budget;
};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cantor::ValidationError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_file(const std::string& path) {
  const std::string body = read_file(path);
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw cantor::ParseError(std::string("malformed JSON in '") + path + "': " + e.what(), 1, e.byte, "JSON");
  }
}

Json inputs_of(const std::string& verb, const Options& o) {
  Json in{{"input", o.input}};
  if (o.normalize) in["normalize"] = true;
  if (o.alternating) in["alternating"] = true;
  if (!o.rank.empty()) in["rank"] = o.rank;
  if (!o.point.empty()) in["point"] = o.point;
  if (o.mc > 0) {
    in["mc"] = o.mc;
    in["seed"] = o.seed;
    in["tolerance"] = o.tolerance;
  }
  if (o.depth_set) in["depth"] = o.depth;
  if (verb == "decompose" || verb == "tests-combine") in["stages"] = o.stages;
  if (verb == "decorate") {
    in["generator"] = o.generator;
    if (!o.budget.empty()) in["budget"] = o.budget;
  }
  if (verb == "tests-combine") in["file_digest"] = hex64(fnv1a(read_file(o.input)));
  in["digest"] = hex64(fnv1a(verb + "\n" + in.dump()));
  return in;
}

cantor::Code load_code(const Options& o, bool need_complement_free) {
  cantor::Code c = cantor::parse_dsl(o.input);
  if (o.normalize || (need_complement_free && !cantor::is_complement_free(c))) c = cantor::normalize_demorgan(c);
  if (o.alternating) {
    if (!cantor::is_complement_free(c)) throw cantor::ValidationError("--alternating needs --normalize first");
    c = cantor::make_alternating(c);
  }
  if (!o.rank.empty()) {
    c = cantor::assign_canonical_ranks(c);
    if (o.rank != "auto") c = c.with_rank(cantor::Ordinal::parse(o.rank));
  }
  return c;
}

/// Points 0..2^d-1 padded with zeros, the cylinder representatives at depth d.
std::vector<cantor::Point> prefix_points(std::size_t d) {
  std::vector<cantor::Point> out;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << d); ++k) out.push_back(cantor::Point::padded(cantor::Bits::from_uint(k, d)));
  return out;
}

struct Outcome {
  Json report;
  bool gate_failed = false;
};

Json describe_code(const cantor::Code& c) {
  Json out{{"dag_size", cantor::dag_size(c)},
           {"complement_free", cantor::is_complement_free(c)},
           {"alternating", cantor::is_alternating(c)}};
  const std::uint64_t nodes = cantor::node_count(c);
  out["node_count"] = nodes;
  if (nodes <= kMaxPrintedNodes) out["canonical"] = cantor::print_dsl(c);
  if (c.rank()) out["root_rank"] = c.rank()->str();
  if (cantor::is_complement_free(c)) out["support_depth"] = cantor::support_depth(c);
  return out;
}

Outcome cmd_parse(const Options& o) {
  const cantor::Code c = load_code(o, false);
  Json r = describe_code(c);
  if (!o.rank.empty()) r["rank_ok"] = cantor::check_rank(c);
  return {r};
}

Outcome cmd_eval(const Options& o) {
  if (o.point.empty()) throw cantor::ValidationError("eval needs --point");
  const cantor::Code c = load_code(o, true);
  const cantor::Point x = cantor::Point::parse(o.point);
  const cantor::EvalMap m = cantor::evaluate(c, x);
  Json values = Json::object();
  const auto all = cantor::addresses(c);
  for (std::size_t i = 0; i < all.size() && i < kMaxListedAddresses; ++i) values[cantor::address_str(all[i])] = m.at(all[i]);
  Json r{{"member", m.root_value()},
         {"point", x.describe()},
         {"clauses_ok", cantor::satisfies_clauses(c, x, m)},
         {"values", values}};
  if (all.size() > kMaxListedAddresses) r["values_truncated"] = true;
  return {r};
}

Json mc_section(const cantor::Code& c, const cantor::Dyadic& exact, const Options& o, bool& gate_failed) {
  const cantor::Estimate e = cantor::mc_integral(c, cantor::Point::seeded(o.seed), o.mc);
  const cantor::Dyadic delta = cantor::abs(e.value - exact);
  const bool within = delta.to_double() <= o.tolerance;
  gate_failed = gate_failed || !within;
  return Json{{"estimate", cantor::to_json(e)},
              {"abs_delta", cantor::to_json(delta)},
              {"abs_delta_decimal", delta.to_double()},
              {"within_tolerance", within}};
}

Outcome cmd_measure(const Options& o) {
  const cantor::Code c = load_code(o, true);
  Outcome out;
  const cantor::Dyadic m = cantor::measure_of_code(c);
  out.report = Json{{"measure", cantor::to_json(m)}, {"measure_decimal", m.to_double()},
                    {"support_depth", cantor::support_depth(c)}};
  Json assertions = Json::object();
  if (o.depth_set) {
    if (o.depth < cantor::support_depth(c)) {
      throw cantor::ValidationError("--depth must be at least the support depth " +
                                    std::to_string(cantor::support_depth(c)));
    }
    if (o.depth > 24) throw cantor::ValidationError("--depth above 24 is too large to enumerate");
    std::uint64_t hits = 0;
    for (const auto& x : prefix_points(o.depth)) hits += cantor::member(c, x) ? 1 : 0;
    const cantor::Dyadic counted(cantor::BigInt(hits), static_cast<std::uint32_t>(o.depth));
    out.report["prefix_count"] = Json{{"depth", o.depth}, {"members", hits}, {"measure", cantor::to_json(counted)}};
    assertions["prefix_count_equal"] = counted == m;
  }
  if (o.mc > 0) {
    out.report["monte_carlo"] = mc_section(c, m, o, out.gate_failed);
    assertions["mc_within_tolerance"] = out.report["monte_carlo"]["within_tolerance"];
  }
  if (!assertions.empty()) out.report["assertions"] = assertions;
  return out;
}

Outcome cmd_decompose(const Options& o) {
  const cantor::Code c = load_code(o, true);
  const auto d = cantor::build_decomposition(c);
  const auto check = cantor::verify_decomposition(c, d);
  const auto rev = cantor::build_decomposition(c, true);
  bool reversed_equal = true;
  for (const auto& [a, n] : d) reversed_equal = reversed_equal && cantor::names_equal(n, rev.at(a)).equal;
  const cantor::RapidGDelta bad = cantor::assemble_bad_gdelta(c, d);
  Json r{{"decomposition", cantor::to_json(d)},
         {"verified", check.ok},
         {"verification", check.message()},
         {"measure", cantor::to_json(*cantor::limit_integral(d.at({})))},
         {"bad_gdelta", cantor::to_json(bad, 3, o.stages)},
         {"assertions", Json{{"verified", check.ok}, {"reversed_order_equal", reversed_equal}}}};
  if (!o.point.empty()) {
    const cantor::Point x = cantor::Point::parse(o.point);
    const auto av = cantor::avoids(x, bad, 0, o.stages - 1);
    r["avoidance"] = Json{{"point", x.describe()}, {"captured", av.captured}, {"cylinder", av.cylinder.str()}};
  }
  return {r};
}

Outcome cmd_tests_combine(const Options& o) {
  const auto tests = cantor::tests_from_json(parse_json_file(o.input));
  const std::size_t levels = o.depth_set ? o.depth : 4;
  const cantor::RapidGDelta combined = cantor::combine(tests);
  Json inputs = Json::array();
  for (const auto& t : tests) inputs.push_back(cantor::to_json(t, levels + tests.size() + 1, o.stages));
  Json r{{"tests", inputs}, {"combined", cantor::to_json(combined, levels, o.stages)}};
  if (!o.point.empty()) {
    const cantor::Point x = cantor::Point::parse(o.point);
    Json av = Json::array();
    for (std::size_t j = 0; j < levels; ++j) {
      const auto a = cantor::avoids(x, combined, j, o.stages - 1);
      av.push_back(Json{{"level", j}, {"captured", a.captured}, {"cylinder", a.cylinder.str()}});
    }
    r["avoidance"] = av;
  }
  return {r};
}

cantor::DecorationGenerator load_generator(const std::string& spec) {
  if (spec == "empty") return cantor::empty_generator();
  if (spec.rfind("split:", 0) == 0) {
    const Json j = parse_json_file(spec.substr(6));
    if (!j.contains("targets") || !j["targets"].is_array()) {
      throw cantor::ParseError("split generator file needs a \"targets\" array", 1, 1, "targets");
    }
    std::vector<cantor::ClopenSet> targets;
    for (const auto& t : j["targets"]) targets.push_back(cantor::clopen_from_json(t));
    return cantor::split_generator(std::move(targets));
  }
  throw cantor::ValidationError("unknown generator '" + spec + "' (use empty or split:<file>)");
}

Outcome cmd_decorate(const Options& o) {
  Options opts = o;
  opts.normalize = true;
  opts.alternating = true;
  if (opts.rank.empty()) opts.rank = "auto";
  const cantor::Code t = load_code(opts, true);
  if (!cantor::check_rank(t)) throw cantor::ValidationError("the ranked code breaks the rank laws");
  const auto budget = o.budget.empty() ? cantor::default_budget(*t.rank()) : cantor::parse_ordinal_list(o.budget);
  const auto h = load_generator(o.generator);
  const cantor::Code dec = cantor::decorate(t, h, budget);
  Json b = Json::array();
  for (const auto& x : budget) b.push_back(x.str());
  std::vector<cantor::Point> points = prefix_points(std::min<std::size_t>(cantor::support_depth(dec), 8));
  if (!o.point.empty()) points.push_back(cantor::Point::parse(o.point));
  const auto rep = cantor::check_preservation(t, h, budget, points);
  const bool rank_ok = cantor::check_rank(dec);
  Json r{{"original", describe_code(t)},
         {"decorated", describe_code(dec)},
         {"budget", b},
         {"generator", h.name()},
         {"preservation",
          Json{{"points", rep.points},
               {"outside", rep.outside},
               {"preserved", rep.preserved},
               {"inside", rep.inside},
               {"unique_maps", rep.unique_maps},
               {"failures", rep.failures}}},
         {"assertions",
          Json{{"rank_ok", rank_ok},
               {"root_rank_preserved", dec.rank() == t.rank()},
               {"alternating", cantor::is_alternating(dec)},
               {"preservation_ok", rep.ok()}}}};
  return {r};
}

Outcome cmd_report(const Options& o) {
  Outcome out;
  const cantor::Code c = load_code(o, true);
  out.report = describe_code(c);
  const cantor::Dyadic m = cantor::measure_of_code(c);
  out.report["measure"] = cantor::to_json(m);
  const auto d = cantor::build_decomposition(c);
  const auto check = cantor::verify_decomposition(c, d);
  Json assertions{{"decomposition_verified", check.ok}};
  if (!o.point.empty()) {
    const cantor::Point x = cantor::Point::parse(o.point);
    const cantor::EvalMap map = cantor::evaluate(c, x);
    out.report["member"] = map.root_value();
    assertions["clauses_ok"] = cantor::satisfies_clauses(c, x, map);
  }
  if (o.mc > 0) {
    out.report["monte_carlo"] = mc_section(c, m, o, out.gate_failed);
    assertions["mc_within_tolerance"] = out.report["monte_carlo"]["within_tolerance"];
  }
  out.report["assertions"] = assertions;
  return out;
}

void emit(const Json& report, const Options& o) {
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!o.json_path.empty()) {
    std::ofstream f(o.json_path, std::ios::binary);
    if (!f) throw cantor::ValidationError("cannot write '" + o.json_path + "'");
    f << text;
  }
}

int error_exit(const std::string& cls, const std::string& message, int code, const Options& o) {
  std::cerr << "cantor: " << message << "\n";
  Json r{{"schema", kSchema}, {"error", Json{{"class", cls}, {"message", message}, {"exit_code", code}}}};
  try {
    emit(r, o);
  } catch (...) {
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact measure computations on Borel codes over Cantor space"};
  app.require_subcommand(1);
  Options o;

  struct Verb {
    const char* name;
    const char* help;
    Outcome (*run)(const Options&);
  };
  const Verb verbs[] = {
      {"parse", "parse an expression and print its canonical form", cmd_parse},
      {"eval", "evaluation map of a point", cmd_eval},
      {"measure", "exact measure, optionally with a Monte Carlo estimate", cmd_measure},
      {"decompose", "measure decomposition and its bad G-delta", cmd_decompose},
      {"tests-combine", "combine rapidly null tests read from a JSON file", cmd_tests_combine},
      {"decorate", "decorate a ranked alternating code", cmd_decorate},
      {"report", "summary report of a code", cmd_report},
  };
  std::vector<std::pair<CLI::App*, const Verb*>> subs;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("input", o.input, std::string(v.name) == "tests-combine" ? "JSON file of tests" : "expression")
        ->required();
    sub->add_flag("--normalize", o.normalize, "push complements to the leaves");
    sub->add_flag("--alternating", o.alternating, "fuse same-kind parent/child chains");
    sub->add_option("--rank", o.rank, "'auto' or a CNF root rank (w^2*3+w+4)");
    sub->add_option("--point", o.point, "u=<bits>:v=<bits> or seed=<int>");
    sub->add_option("--mc", o.mc, "Monte Carlo trials");
    sub->add_option("--seed", o.seed, "seed of the sampling point");
    sub->add_option("--depth", o.depth, "prefix-count depth (measure) or levels (tests-combine)")
        ->each([&](const std::string&) { o.depth_set = true; });
    sub->add_option("--stages", o.stages, "stages to materialize")->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", o.tolerance, "allowed |estimate - exact|");
    sub->add_option("--json", o.json_path, "also write the report to this path");
    sub->add_option("--generator", o.generator, "empty or split:<file>");
    sub->add_option("--budget", o.budget, "comma-separated CNF ordinals");
    subs.emplace_back(sub, &v);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (const auto& [sub, verb] : subs) {
    if (!sub->parsed()) continue;
    try {
      Outcome out = verb->run(o);
      Json report{{"schema", kSchema}, {"command", verb->name}, {"inputs", inputs_of(verb->name, o)}};
      for (auto& [k, v] : out.report.items()) report[k] = v;
      emit(report, o);
      if (out.gate_failed) {
        std::cerr << "cantor: statistical gate failed\n";
        return 5;
      }
      return 0;
    } catch (const cantor::ParseError& e) {
      return error_exit("parse", e.what(), 2, o);
    } catch (const cantor::ValidationError& e) {
      return error_exit("validation", e.what(), 3, o);
    } catch (const cantor::CertificateError& e) {
      return error_exit("certificate", e.what(), 4, o);
    } catch (const cantor::StatisticalGateError& e) {
      return error_exit("statistical", e.what(), 5, o);
    } catch (const std::exception& e) {
      return error_exit("internal", e.what(), 1, o);
    }
  }
  return 2;
}
