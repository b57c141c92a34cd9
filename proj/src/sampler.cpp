#include "cantor/sampler.hpp"

#include <algorithm>
#include <optional>
#include <variant>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

constexpr std::uint32_t kValueBits = 64;

struct Tally {
  Dyadic sum;
  std::uint64_t captured = 0;
};

/// sample(j) returns the integrand at column j, or nothing when refused.
template <class Sample>
Tally accumulate(const Sample& sample, std::uint64_t n, bool parallel) {
  Tally total;
  if (!parallel) {
    for (std::uint64_t j = 0; j < n; ++j) {
      if (auto v = sample(j)) {
        total.sum += *v;
      } else {
        ++total.captured;
      }
    }
    return total;
  }
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel
  {
    Tally local;
#pragma omp for schedule(static)
    for (std::int64_t j = 0; j < count; ++j) {
      if (auto v = sample(static_cast<std::uint64_t>(j))) {
        local.sum += *v;
      } else {
        ++local.captured;
      }
    }
#pragma omp critical(cantor_sampler_merge)
    {
      total.sum += local.sum;
      total.captured += local.captured;
    }
  }
  return total;
}

Estimate finish(Tally t, std::uint64_t n, const Point& r, std::string target) {
  if (n == 0) throw ValidationError("Monte Carlo estimates need at least one trial");
  Estimate e;
  e.trials = n;
  e.captured = t.captured;
  e.point = r.describe();
  e.target = std::move(target);
  const std::uint64_t used = n - t.captured;
  e.value = used == 0 ? Dyadic(0) : Dyadic::divide_rounded(t.sum, used, kValueBits);
  e.sum = std::move(t.sum);
  return e;
}

/// Exact count of members, summed as integers before becoming a dyadic.
template <class Test>
Tally count_hits(const Test& test, std::uint64_t n, bool parallel) {
  std::uint64_t hits = 0;
  if (parallel) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for reduction(+ : hits) schedule(static)
    for (std::int64_t j = 0; j < count; ++j) hits += test(static_cast<std::uint64_t>(j)) ? 1 : 0;
  } else {
    for (std::uint64_t j = 0; j < n; ++j) hits += test(j) ? 1 : 0;
  }
  Tally t;
  t.sum = Dyadic(BigInt(hits), 0);
  return t;
}

Estimate step_estimate(const StepFunction& f, const Point& r, std::uint64_t n, bool parallel) {
  auto sample = [&](std::uint64_t j) -> std::optional<Dyadic> { return f.value(column(r, j)); };
  return finish(accumulate(sample, n, parallel), n, r, "step function");
}

Estimate name_estimate(const L1Name& f, const Point& r, std::uint64_t n, std::size_t precision, bool parallel) {
  const PointEvaluator eval(f, precision, precision);
  auto sample = [&](std::uint64_t j) -> std::optional<Dyadic> {
    PointValue v = eval(column(r, j));
    if (auto* d = std::get_if<Dyadic>(&v)) return *d;
    return std::nullopt;
  };
  Estimate e = finish(accumulate(sample, n, parallel), n, r, "L1 name at precision " + std::to_string(precision));
  if (e.captured * 100 > e.trials) {
    throw StatisticalGateError(std::to_string(e.captured) + " of " + std::to_string(e.trials) +
                               " samples fell in bad sets (more than 1%); " + e.point);
  }
  return e;
}

Estimate code_estimate(const Code& c, const Point& r, std::uint64_t n, bool parallel) {
  auto test = [&](std::uint64_t j) { return member(c, column(r, j)); };
  return finish(count_hits(test, n, parallel), n, r, "code membership");
}

StepFunction sampled(const StepFunction& f, std::size_t i, const Point& r, std::uint64_t n, bool parallel) {
  if (i >= 32) throw ValidationError("sampled_average depth too large");
  if (n == 0) throw ValidationError("Monte Carlo estimates need at least one trial");
  const std::size_t cells = std::size_t{1} << i;
  std::vector<StepFunction> pieces;
  for (std::size_t k = 0; k < cells; ++k) pieces.push_back(f.restrict(Bits::from_uint(k, i)));

  std::vector<Dyadic> sums(cells);
  auto add_sample = [&](std::uint64_t j, std::vector<Dyadic>& into) {
    const Point col = column(r, j);
    for (std::size_t k = 0; k < cells; ++k) into[k] += pieces[k].value(col);
  };
  if (parallel) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel
    {
      std::vector<Dyadic> local(cells);
#pragma omp for schedule(static)
      for (std::int64_t j = 0; j < count; ++j) add_sample(static_cast<std::uint64_t>(j), local);
#pragma omp critical(cantor_sampler_merge)
      for (std::size_t k = 0; k < cells; ++k) sums[k] += local[k];
    }
  } else {
    for (std::uint64_t j = 0; j < n; ++j) add_sample(j, sums);
  }
  std::vector<Dyadic> values;
  values.reserve(cells);
  for (const auto& s : sums) values.push_back(Dyadic::divide_rounded(s, n, kValueBits));
  return StepFunction::from_table(i, values);
}

}  // namespace

Estimate mc_integral(const StepFunction& f, const Point& r, std::uint64_t n) { return step_estimate(f, r, n, true); }

Estimate mc_integral(const L1Name& f, const Point& r, std::uint64_t n, std::size_t precision) {
  return name_estimate(f, r, n, precision, true);
}

Estimate mc_integral(const Code& c, const Point& r, std::uint64_t n) { return code_estimate(c, r, n, true); }

Estimate mc_integral_serial(const StepFunction& f, const Point& r, std::uint64_t n) {
  return step_estimate(f, r, n, false);
}

Estimate mc_integral_serial(const L1Name& f, const Point& r, std::uint64_t n, std::size_t precision) {
  return name_estimate(f, r, n, precision, false);
}

Estimate mc_integral_serial(const Code& c, const Point& r, std::uint64_t n) { return code_estimate(c, r, n, false); }

StepFunction conditional_average(const StepFunction& f, std::size_t i) { return f.average_to_depth(i); }

StepFunction sampled_average(const StepFunction& f, std::size_t i, const Point& r, std::uint64_t n) {
  return sampled(f, i, r, n, true);
}

StepFunction sampled_average_serial(const StepFunction& f, std::size_t i, const Point& r, std::uint64_t n) {
  return sampled(f, i, r, n, false);
}

Estimate membership_frequency(const Code& c, const Address& sigma, const Bits& p, const Point& r, std::uint64_t n) {
  const auto all = addresses(c);
  const auto pos = std::find(all.begin(), all.end(), sigma);
  if (pos == all.end()) throw ValidationError("no node at address '" + address_str(sigma) + "'");
  const auto a = static_cast<std::uint64_t>(pos - all.begin());
  const Code sub = subtree(c, sigma);
  auto test = [&](std::uint64_t j) { return member(sub, tail_append(p, column(r, cantor_pair(a, j)))); };
  return finish(count_hits(test, n, true), n, r,
                "membership at '" + address_str(sigma) + "' below '" + p.str() + "'");
}

}  // namespace cantor
