// Wall-clock comparison of the OpenMP kernels against their serial
// references, plus exact measure against prefix counting.
// Usage: cantor_bench [repeats]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "cantor/measure.hpp"
#include "cantor/sampler.hpp"
#include "oracle.hpp"

using namespace cantor;

namespace {

double best_ms(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* what, double a, double b, bool same) {
  std::printf("%-34s %10.2f %10.2f %7.2fx  %s\n", what, a, b, a / b, same ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), repeats);
  std::printf("%-34s %10s %10s %8s\n", "kernel", "ref ms", "fast ms", "speedup");

  oracle::Rng rng(1);
  std::vector<Code> codes;
  for (int t = 0; t < 300; ++t) codes.push_back(oracle::random_code(rng));

  bool same = true;
  const double counting = best_ms(repeats, [&] {
    for (const auto& c : codes) (void)oracle::counted_measure(c, oracle::max_generator_length(c));
  });
  const double exact = best_ms(repeats, [&] {
    for (const auto& c : codes) (void)measure_of_code(c);
  });
  for (const auto& c : codes) same = same && measure_of_code(c) == oracle::counted_measure(c, oracle::max_generator_length(c));
  row("measure: counting vs exact", counting, exact, same);

  const Code big = codes.front();
  Estimate a;
  Estimate b;
  const double mc_s = best_ms(repeats, [&] { a = mc_integral_serial(big, Point::seeded(3), 400000); });
  const double mc_p = best_ms(repeats, [&] { b = mc_integral(big, Point::seeded(3), 400000); });
  row("mc_integral(code), 4e5 samples", mc_s, mc_p, a.value == b.value && a.trials == b.trials);

  const StepFunction f = oracle::to_step(oracle::random_table(rng, 10));
  const double sf_s = best_ms(repeats, [&] { a = mc_integral_serial(f, Point::seeded(4), 400000); });
  const double sf_p = best_ms(repeats, [&] { b = mc_integral(f, Point::seeded(4), 400000); });
  row("mc_integral(step), 4e5 samples", sf_s, sf_p, a.value == b.value);

  StepFunction sa;
  StepFunction sb;
  const double av_s = best_ms(repeats, [&] { sa = sampled_average_serial(f, 6, Point::seeded(5), 5000); });
  const double av_p = best_ms(repeats, [&] { sb = sampled_average(f, 6, Point::seeded(5), 5000); });
  row("sampled_average, 64 x 5000", av_s, av_p, sa == sb);

  std::vector<Point> points;
  for (int k = 0; k < 200000; ++k) points.push_back(Point::seeded(static_cast<std::uint64_t>(k)));
  std::vector<char> ma;
  std::vector<char> mb;
  const double mb_s = best_ms(repeats, [&] { ma = member_batch_serial(big, points); });
  const double mb_p = best_ms(repeats, [&] { mb = member_batch(big, points); });
  row("member_batch, 2e5 points", mb_s, mb_p, ma == mb);
  return 0;
}
