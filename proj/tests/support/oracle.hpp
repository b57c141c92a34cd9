#pragma once

// Test-only reference implementations and random generators. Nothing here
// calls the measure, evaluation or step-function algebra it is used to check;
// the library types are only used as containers.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cantor/borel_code.hpp"
#include "cantor/dyadic.hpp"
#include "cantor/gdelta.hpp"
#include "cantor/l1_name.hpp"
#include "cantor/step_function.hpp"

namespace oracle {

using cantor::Code;
using cantor::Dyadic;
using Rng = std::mt19937_64;

/// All binary strings of length d, lexicographic.
std::vector<std::string> strings_of_length(std::size_t d);

/// Longest generator of any leaf, by direct recursion.
std::size_t max_generator_length(const Code& c);

/// Truth of "every point extending s lies in |c|" for |s| >= max_generator_length(c),
/// straight from the definitions on strings.
bool truth(const Code& c, const std::string& s);

/// |{s in 2^d : truth(c, s)}| / 2^d.
Dyadic counted_measure(const Code& c, std::size_t d);

/// Dense value table of a step function, read at the padded points of depth d.
struct Table {
  std::size_t depth = 0;
  std::vector<Dyadic> values;
};
Table read_table(const cantor::StepFunction& f, std::size_t d);
Table lift(const Table& t, std::size_t d);
/// sum over cells of 2^-d |a - b|.
Dyadic table_distance(const Table& a, const Table& b);
/// Block averages to depth i.
Table block_average(const Table& t, std::size_t i);
Dyadic table_integral(const Table& t);

/// Indicator table of a list of generators at depth d, by prefix test on strings.
Table indicator_table(const std::vector<std::string>& gens, std::size_t d);

// ---- random objects ----

std::string random_bits(Rng& rng, std::size_t len);
std::vector<std::string> random_generators(Rng& rng, std::size_t max_len, std::size_t max_count = 4);
cantor::ClopenSet random_clopen(Rng& rng, std::size_t max_len);

struct CodeShape {
  std::size_t max_support = 8;
  std::size_t max_nodes = 50;
  std::size_t max_height = 5;
  bool complements = false;
};
Code random_code(Rng& rng, const CodeShape& shape = {});

/// Random normalized, alternating code with a valid rank annotation; some
/// nodes are lifted to infinite ranks below w*3.
Code random_ranked_code(Rng& rng, const CodeShape& shape = {});

/// Random table of depth d with values k/8, |k| <= 16.
Table random_table(Rng& rng, std::size_t d);
cantor::StepFunction to_step(const Table& t);

/// Terms chi_{B_i} where B_i is target with one random cylinder of depth
/// i+2+offset flipped; count terms, rapidly Cauchy by construction.
std::vector<cantor::StepFunction> flipped_indicator_terms(Rng& rng, const std::vector<std::string>& target,
                                                          std::size_t count, std::size_t offset = 0);

/// f + e_i with e_i supported on one cylinder of depth i+2 with |e_i| <= 1.
std::vector<cantor::StepFunction> perturbed_terms(Rng& rng, const Table& f, std::size_t count);

/// A family of staged tests with mu_I(level n, any stage) <= 2^-n, built
/// from explicit cylinders; levels[n][s].
struct TestFamily {
  std::vector<std::vector<std::vector<std::string>>> levels;
};
TestFamily random_test(Rng& rng, std::size_t levels, std::size_t stages);
cantor::RapidGDelta to_gdelta(const TestFamily& t, const std::string& name);

/// Random DSL text, possibly with complements, reloc and bigunion.
std::string random_expression(Rng& rng, std::size_t budget);

}  // namespace oracle
