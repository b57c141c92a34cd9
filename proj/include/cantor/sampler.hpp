#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "cantor/borel_code.hpp"
#include "cantor/l1_name.hpp"
#include "cantor/point.hpp"
#include "cantor/step_function.hpp"

namespace cantor {

/// Average of an integrand over the columns R^[0], ..., R^[N-1] of a point.
///
/// The sum is exact; value is sum / (trials - captured) rounded to 64
/// fractional bits, which is exact whenever the quotient is a dyadic of that
/// precision. Identical (point, trials, target) reproduce it bit for bit.
struct Estimate {
  Dyadic sum;
  Dyadic value;
  std::uint64_t trials = 0;
  std::uint64_t captured = 0;  // samples refused by value_at (L1 names only)
  std::string point;           // description of R, e.g. "seed=7"
  std::string target;
};

inline constexpr std::size_t kDefaultPrecision = 20;

/// OpenMP-parallel over samples; per-thread exact partial sums are merged,
/// so the result does not depend on the thread count.
Estimate mc_integral(const StepFunction& f, const Point& r, std::uint64_t n);
/// value_at at the given precision with avoidance level equal to it; more
/// than 1% captured samples throws StatisticalGateError.
Estimate mc_integral(const L1Name& f, const Point& r, std::uint64_t n, std::size_t precision = kDefaultPrecision);
/// Frequency of membership in |c|.
Estimate mc_integral(const Code& c, const Point& r, std::uint64_t n);

/// Serial references for the parallel estimators.
Estimate mc_integral_serial(const StepFunction& f, const Point& r, std::uint64_t n);
Estimate mc_integral_serial(const L1Name& f, const Point& r, std::uint64_t n,
                            std::size_t precision = kDefaultPrecision);
Estimate mc_integral_serial(const Code& c, const Point& r, std::uint64_t n);

/// h_i: on each depth-i cylinder [p] the value 2^i * integral of f over [p].
StepFunction conditional_average(const StepFunction& f, std::size_t i);

/// Depth-i step function whose value on [p] is the average of x -> f(p x)
/// over the columns of R; every p uses the same columns.
StepFunction sampled_average(const StepFunction& f, std::size_t i, const Point& r, std::uint64_t n);
StepFunction sampled_average_serial(const StepFunction& f, std::size_t i, const Point& r, std::uint64_t n);

/// Frequency over j < N of membership of p followed by column
/// cantor_pair(a, j) of R in the subtree at sigma, where a is sigma's
/// position in the breadth-first address order of c.
Estimate membership_frequency(const Code& c, const Address& sigma, const Bits& p, const Point& r, std::uint64_t n);

}  // namespace cantor
