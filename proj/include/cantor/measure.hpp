#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cantor/borel_code.hpp"
#include "cantor/gdelta.hpp"
#include "cantor/l1_name.hpp"

namespace cantor {

/// An L1 name for every subtree of a code, keyed by address.
using MeasureDecomposition = std::map<Address, L1Name>;

/// The limit of the decomposition at each distinct node: the exact
/// characteristic function of the subtree, as a step function. Children are
/// folded left to right, or right to left when `reversed`.
StepFunction characteristic_function(const Code& c, bool reversed = false);

/// Leaves get the constant name of their label's characteristic function,
/// unions and intersections the constant name of the pointwise max / min of
/// their children. Every name is stationary.
MeasureDecomposition build_decomposition(const Code& c, bool reversed = false);

struct DecompositionCheck {
  bool ok = true;
  Address address;
  std::string law;  // "coverage", "leaf", "union", "intersection", "complement"
  std::optional<NameComparison> comparison;
  std::string message() const;
};

/// Checks coverage, then the leaf, union (sup) and intersection (inf) laws at
/// every address with names_equal. Laws are checked deepest first, so the
/// reported address is the lowest one whose law fails.
DecompositionCheck verify_decomposition(const Code& c, const MeasureDecomposition& d);

/// Exact measure of a complement-free code: the integral of its characteristic function.
Dyadic measure_of_code(const Code& c);

/// Combines, over all addresses, the convergence test of each name, the
/// agreement of leaf names with their label's characteristic function, and
/// the agreement of inner names with the sup/inf name of their children.
RapidGDelta assemble_bad_gdelta(const Code& c, const MeasureDecomposition& d);

/// Reads a decomposition of c off a name f for the membership function of
/// tilde(c, h): address sigma gets i -> (x -> f_{i+m+1}(0^m 1 x)) with m the
/// least n with h[n] = sigma. The index shift keeps the rapid Cauchy
/// certificate under the 2^(m+1) blow-up of restriction. Throws
/// CertificateError when the result does not verify.
MeasureDecomposition decomposition_from_membership(const L1Name& f, const Code& c, const std::vector<Address>& h);

// ---- regularity approximations ----

using OpenSequence = std::function<StagedOpenSet(std::size_t)>;

/// A pair of open-set sequences meant to satisfy A^c subset B subset C with
/// A intersect C rapidly null.
struct RegularityApprox {
  OpenSequence a;
  OpenSequence c;
};

/// A_n = {f_{n+3} < 2/3}, C_n = {f_{n+3} > 1/3} as constant stagings. The
/// three-step index shift makes mu_I(A_n intersect C_n) <= 3 * 2^-(n+2) < 2^-n.
RegularityApprox char_to_regularity(const L1Name& n);

/// mu_I of A_n intersect C_n at stage s.
Dyadic overlap_measure(const RegularityApprox& r, std::size_t n, std::size_t s);
/// mu_I of D_{n,s}, the complement of A_{n,s} union C_{n,s}.
Dyadic undecided_measure(const RegularityApprox& r, std::size_t n, std::size_t s);

using StageOracle = std::function<std::size_t(std::size_t)>;

/// f_n = characteristic function of C_{n+1, s(n)}, for n = 0..terms, after
/// checking mu_I(D_{n+1,s(n)}) < 2^-(n+1) and mu_I(A_{n+1} intersect C_{n+1})
/// < 2^-(n+1) at that stage. The pairwise bound ||f_n - f_m|| <= 2^-n + 2^-m
/// is verified exactly, then the sequence is shifted by one to get a strict
/// certificate. Throws CertificateError with the exact measure on failure.
L1Name regularity_to_char(const RegularityApprox& r, const StageOracle& s, std::size_t terms);

/// Least stage <= max_stage passing the checks for level n+1, giving up at the deadline.
std::optional<std::size_t> find_stage(const RegularityApprox& r, std::size_t n, std::size_t max_stage,
                                      std::chrono::milliseconds timeout);

/// regularity_to_char with the stage oracle found by find_stage.
L1Name regularity_to_char_search(const RegularityApprox& r, std::size_t terms, std::size_t max_stage,
                                 std::chrono::milliseconds timeout);

/// Stage n: all [p0] with |p| <= n and .p1 < a(n), normalized. For a
/// nondecreasing a in [0,1) the union has measure sup a(n).
StagedOpenSet sup_open_set(std::function<Dyadic(std::size_t)> a);

}  // namespace cantor
