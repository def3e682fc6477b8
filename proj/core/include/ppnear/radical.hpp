#pragma once

#include "ppnear/group.hpp"
#include "ppnear/mealy.hpp"

#include <cstddef>
#include <vector>

namespace ppnear {

/// The amnesiac image: same states, start and outputs, but every transition
/// t(q, g) is replaced by t(q, 0). Output i of alpha(m) on x is output i of m
/// on (0, ..., 0, x_i, 0, ...).
[[nodiscard]] MealyMachine alpha(const MealyMachine& m);

/// equivalent(alpha(m), zero).
[[nodiscard]] bool in_ker_alpha(const MealyMachine& m);

/// Counter machine that applies f at positions i, i+j, i+2j, ... (j > 0) or
/// only at position i (j == 0), and outputs 0 everywhere else. Positions are
/// 1-based. f must be zero-preserving and i >= 1.
///
/// State count is i + 1 for j == 0 and i - 1 + j for j > 0.
[[nodiscard]] MealyMachine f_ij_machine(const FunctionTable& f, std::size_t i, std::size_t j);

/// Checks the sufficient quasiregularity condition m(1 - n) = 1.
[[nodiscard]] bool quasiregular_witness_check(const MealyMachine& n, const MealyMachine& m);

/// For a zero-symmetric delaying n with constant output c_q in state q,
/// builds m with outputs y + c_q and transitions t(q, y + c_q), so that
/// m(1 - n) = 1. Throws Errc::not_delaying / Errc::not_zero_symmetric.
[[nodiscard]] MealyMachine invert_one_minus(const MealyMachine& n);

/// Two-state delaying machine: outputs 0 until (and including) the first
/// nonzero input, then k forever.
[[nodiscard]] MealyMachine kernel_generator_c(const FiniteGroup& g, Element k);

/// With (k, F) from property_x_solve(g), f = from_function(F) and
/// c = kernel_generator_c(g, k), checks f(d + c) - f d == d.
/// Throws Errc::no_property_x or Errc::not_in_ker_alpha when the
/// preconditions fail.
[[nodiscard]] bool radical_identity_check(const FiniteGroup& g, const MealyMachine& d);

/// Output maps of an alpha-fixed machine along the zero-input orbit
/// s, tau(s), tau^2(s), ... with tau(q) = t(q, 0): an eventually periodic
/// sequence f_1, f_2, ... split into a transient prefix and a repeating cycle.
struct AmnesiacDecomposition {
    std::vector<FunctionTable> transient;
    std::vector<FunctionTable> cycle;
};

/// Throws Errc::not_amnesiac unless equivalent(alpha(m), m).
[[nodiscard]] AmnesiacDecomposition decompose_amnesiac(const MealyMachine& m);

/// Counter machine with |transient| + |cycle| states applying the maps in order.
[[nodiscard]] MealyMachine reconstruct_from_decomposition(const AmnesiacDecomposition& d);

} // namespace ppnear
