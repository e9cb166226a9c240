#pragma once

#include <cstdint>

namespace kinet::tol {

// Relative tolerance for float membership / rank decisions against exact data.
inline constexpr double lin = 1e-9;

// Equilibrium residual gate: ||f(x)|| <= eq * scale(x), scale = ||N||_F * ||K(x)||.
inline constexpr double eq = 1e-9;

// Log-coordinate infinity-norm below which two equilibria are the same point.
// Must exceed the accept-gate smear radius sqrt(eq), the offset at which a
// double root still passes the residual gate.
inline constexpr double dedupe = 1e-4;

// Iteration cap shared by the Newton solvers.
inline constexpr int newton_cap = 200;

// Default RNG seed for multistart searches; CRN_SEED / --seed override.
inline constexpr std::uint64_t default_seed = 20260819ull;

}  // namespace kinet::tol
