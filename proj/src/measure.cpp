#include "cantor/measure.hpp"

#include <algorithm>
#include <unordered_map>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

StepFunction limit_rec(const Code& c, bool reversed, std::unordered_map<const Node*, StepFunction>& memo) {
  if (auto it = memo.find(c.id()); it != memo.end()) return it->second;
  StepFunction out;
  switch (c.kind()) {
    case NodeKind::Leaf:
      out = StepFunction::indicator(c.label());
      break;
    case NodeKind::Union:
    case NodeKind::Intersection: {
      const bool is_union = c.kind() == NodeKind::Union;
      out = StepFunction::constant(Dyadic(is_union ? 0 : 1));
      std::vector<const CodeChild*> order;
      for (const auto& ch : c.children()) order.push_back(&ch);
      if (reversed) std::reverse(order.begin(), order.end());
      for (const CodeChild* ch : order) {
        const StepFunction sub = limit_rec(ch->code, reversed, memo);
        out = is_union ? pointwise_max(out, sub) : pointwise_min(out, sub);
      }
      break;
    }
    case NodeKind::Complement:
      throw ValidationError("measure decompositions need a complement-free code");
  }
  memo.emplace(c.id(), out);
  return out;
}

Address child_address(const Address& a, std::size_t index) {
  Address out = a;
  out.push_back(index);
  return out;
}

}  // namespace

StepFunction characteristic_function(const Code& c, bool reversed) {
  std::unordered_map<const Node*, StepFunction> memo;
  return limit_rec(c, reversed, memo);
}

MeasureDecomposition build_decomposition(const Code& c, bool reversed) {
  std::unordered_map<const Node*, StepFunction> memo;
  limit_rec(c, reversed, memo);
  MeasureDecomposition d;
  for (const auto& a : addresses(c)) d.emplace(a, L1Name::constant(memo.at(subtree(c, a).id())));
  return d;
}

std::string DecompositionCheck::message() const {
  if (ok) return "ok";
  std::string m = law + " law fails at address '" + address_str(address) + "'";
  if (comparison) m += ": residual " + comparison->residual.str() + " > tolerance " + comparison->tolerance.str();
  return m;
}

DecompositionCheck verify_decomposition(const Code& c, const MeasureDecomposition& d) {
  const auto all = addresses(c);
  for (const auto& a : all) {
    if (d.find(a) == d.end()) return DecompositionCheck{false, a, "coverage", std::nullopt};
  }
  // Deepest first, so a wrong name is reported where it is wrong rather than at its parent.
  for (auto pos = all.rbegin(); pos != all.rend(); ++pos) {
    const Address& a = *pos;
    const Code node = subtree(c, a);
    const L1Name& name = d.at(a);
    std::optional<L1Name> expected;
    std::string law;
    switch (node.kind()) {
      case NodeKind::Leaf:
        law = "leaf";
        expected = L1Name::constant(StepFunction::indicator(node.label()));
        break;
      case NodeKind::Union:
      case NodeKind::Intersection: {
        law = node.kind() == NodeKind::Union ? "union" : "intersection";
        std::vector<L1Name> children;
        for (const auto& ch : node.children()) {
          children.push_back(d.at(child_address(a, ch.index)));
        }
        expected = node.kind() == NodeKind::Union ? sup_name(children) : inf_name(children);
        break;
      }
      case NodeKind::Complement:
        return DecompositionCheck{false, a, "complement", std::nullopt};
    }
    NameComparison cmp = names_equal(name, *expected);
    if (!cmp.equal) return DecompositionCheck{false, a, law, std::move(cmp)};
  }
  return DecompositionCheck{};
}

Dyadic measure_of_code(const Code& c) { return characteristic_function(c).integral(); }

RapidGDelta assemble_bad_gdelta(const Code& c, const MeasureDecomposition& d) {
  std::vector<RapidGDelta> tests;
  for (const auto& a : addresses(c)) {
    const Code node = subtree(c, a);
    const L1Name& name = d.at(a);
    const std::string where = "@" + address_str(a);
    tests.push_back(convergence_test(name, "convergence" + where));
    if (node.is_leaf()) {
      tests.push_back(agreement_test(name, L1Name::constant(StepFunction::indicator(node.label())), "leaf" + where));
      continue;
    }
    std::vector<L1Name> children;
    for (const auto& ch : node.children()) children.push_back(d.at(child_address(a, ch.index)));
    if (node.kind() == NodeKind::Union) {
      tests.push_back(agreement_test(name, sup_name(children), "union" + where));
    } else if (node.kind() == NodeKind::Intersection) {
      tests.push_back(agreement_test(name, inf_name(children), "intersection" + where));
    } else {
      throw ValidationError("assemble_bad_gdelta needs a complement-free code");
    }
  }
  return combine(tests, "decomposition");
}

MeasureDecomposition decomposition_from_membership(const L1Name& f, const Code& c, const std::vector<Address>& h) {
  std::map<Address, std::size_t> first;
  for (std::size_t n = 0; n < h.size(); ++n) first.emplace(h[n], n);
  MeasureDecomposition d;
  for (const auto& a : addresses(c)) {
    auto it = first.find(a);
    if (it == first.end()) throw ValidationError("index map misses address '" + address_str(a) + "'");
    const std::size_t m = it->second;
    const Bits prefix = Bits::zeros(m) + Bits("1");
    std::vector<StepFunction> terms;
    for (std::size_t i = 0; f.sequence().has(i + m + 1) && (i + m + 1 <= f.last_index() || terms.empty()); ++i) {
      terms.push_back(f.term(i + m + 1).restrict(prefix));
    }
    if (terms.empty()) {
      throw ValidationError("membership name too short for address '" + address_str(a) + "' (needs term " +
                            std::to_string(m + 1) + ")");
    }
    d.emplace(a, certify_rapid_cauchy(std::move(terms), f.stationary()));
  }
  const DecompositionCheck check = verify_decomposition(c, d);
  if (!check.ok) throw CertificateError("recovered decomposition does not verify: " + check.message());
  return d;
}

// ---------------------------------------------------------------------------

RegularityApprox char_to_regularity(const L1Name& n) {
  auto level_set = [n](bool below) {
    return [n, below](std::size_t k) {
      const StepFunction& f = n.term(k + 3);
      ClopenSet s = f.where([below](const Dyadic& v) {
        return below ? v.compare_rational(2, 3) < 0 : v.compare_rational(1, 3) > 0;
      });
      return StagedOpenSet::constant(std::move(s));
    };
  };
  return RegularityApprox{level_set(true), level_set(false)};
}

Dyadic overlap_measure(const RegularityApprox& r, std::size_t n, std::size_t s) {
  return mu_I(set_intersection(r.a(n).stage(s), r.c(n).stage(s)));
}

Dyadic undecided_measure(const RegularityApprox& r, std::size_t n, std::size_t s) {
  return mu_I(set_complement(set_union(r.a(n).stage(s), r.c(n).stage(s))));
}

namespace {

/// Empty when stage s passes both checks at level n, else the failure text.
std::optional<std::string> stage_failure(const RegularityApprox& r, std::size_t n, std::size_t s) {
  const Dyadic budget = Dyadic::pow2_neg(static_cast<std::uint32_t>(n));
  const Dyadic d = undecided_measure(r, n, s);
  if (!(d < budget)) {
    return "mu_I(D_" + std::to_string(n) + "," + std::to_string(s) + ") = " + d.str() + " is not below 1/2^" +
           std::to_string(n);
  }
  const Dyadic o = overlap_measure(r, n, s);
  if (!(o < budget)) {
    return "mu_I(A_" + std::to_string(n) + " & C_" + std::to_string(n) + " at stage " + std::to_string(s) +
           ") = " + o.str() + " is not below 1/2^" + std::to_string(n);
  }
  return std::nullopt;
}

}  // namespace

L1Name regularity_to_char(const RegularityApprox& r, const StageOracle& s, std::size_t terms) {
  std::vector<StepFunction> f;
  for (std::size_t n = 0; n <= terms; ++n) {
    const std::size_t stage = s(n);
    if (auto fail = stage_failure(r, n + 1, stage)) throw CertificateError("stage oracle rejected: " + *fail);
    f.push_back(StepFunction::indicator(r.c(n + 1).stage(stage)));
  }
  for (std::size_t n = 0; n < f.size(); ++n) {
    for (std::size_t m = n + 1; m < f.size(); ++m) {
      const Dyadic d = l1_norm(f[n], f[m]);
      const Dyadic bound = Dyadic::pow2_neg(static_cast<std::uint32_t>(n)) + Dyadic::pow2_neg(static_cast<std::uint32_t>(m));
      if (d > bound) {
        throw CertificateError("||f_" + std::to_string(n) + " - f_" + std::to_string(m) + "||_1 = " + d.str() +
                               " exceeds " + bound.str());
      }
    }
  }
  f.erase(f.begin());
  return certify_rapid_cauchy(std::move(f));
}

std::optional<std::size_t> find_stage(const RegularityApprox& r, std::size_t n, std::size_t max_stage,
                                      std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (std::size_t s = 0; s <= max_stage; ++s) {
    if (!stage_failure(r, n + 1, s)) return s;
    if (std::chrono::steady_clock::now() > deadline) break;
  }
  return std::nullopt;
}

L1Name regularity_to_char_search(const RegularityApprox& r, std::size_t terms, std::size_t max_stage,
                                 std::chrono::milliseconds timeout) {
  std::vector<std::size_t> stages;
  for (std::size_t n = 0; n <= terms; ++n) {
    auto s = find_stage(r, n, max_stage, timeout);
    if (!s) {
      throw CertificateError("no stage up to " + std::to_string(max_stage) + " passes level " + std::to_string(n + 1) +
                             ": " + stage_failure(r, n + 1, max_stage).value_or("timed out"));
    }
    stages.push_back(*s);
  }
  return regularity_to_char(r, [&](std::size_t n) { return stages.at(n); }, terms);
}

// ---------------------------------------------------------------------------

namespace {

void sup_visit(std::string& q, BigInt value, std::size_t n, const Dyadic& a, std::vector<Bits>& out) {
  const auto len = static_cast<std::uint32_t>(q.size());
  const Dyadic dot(2 * value + 1, len + 1);
  const bool below = dot < a;
  if (below) out.emplace_back(q + "0");
  if (q.size() + 1 > n) return;
  // Below: everything under q0 is already covered, keep looking under q1.
  // Otherwise .q1r1 > .q1 >= a for every r, so only q0 can contribute.
  q.push_back(below ? '1' : '0');
  sup_visit(q, 2 * value + (below ? 1 : 0), n, a, out);
  q.pop_back();
}

}  // namespace

StagedOpenSet sup_open_set(std::function<Dyadic(std::size_t)> a) {
  return StagedOpenSet([a = std::move(a)](std::size_t n) {
    const Dyadic an = a(n);
    if (an.sign() < 0 || !(an < Dyadic(1))) throw ValidationError("sup_open_set needs 0 <= a_n < 1, got " + an.str());
    if (n > 0 && an < a(n - 1)) throw ValidationError("sup_open_set needs a nondecreasing sequence");
    std::vector<Bits> gens;
    std::string q;
    sup_visit(q, BigInt(0), n, an, gens);
    return prefix_free_normalize(gens);
  });
}

}  // namespace cantor
