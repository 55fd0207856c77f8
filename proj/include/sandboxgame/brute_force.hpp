#pragma once

#include "sandboxgame/types.hpp"

namespace sandboxgame {

// Grid search over naive defender commitments: every lattice point of
// {0, step, ...}^n with sum <= 1 is scored by utility_am under the attacker's
// exact best response (defender-favoring tie break). Ties between grid points
// go to the lower enumeration index.
//
// grid_attacker additionally replaces the exact best response with the
// lattice-search response at the same step; that variant mirrors a doubly
// gridded baseline and is strictly weaker, so it is off by default and its
// result is not marked verified.
//
// Throws SolveError{GridTooLarge} when the commitment lattice (times the
// attacker lattice in grid_attacker mode) would exceed max_points.
EquilibriumSolution brute_force_spne(const WorldSetting& s, double step = 0.01,
                                     bool grid_attacker = false,
                                     long max_points = 5'000'000);
EquilibriumSolution brute_force_spne_serial(const WorldSetting& s, double step = 0.01,
                                            bool grid_attacker = false,
                                            long max_points = 5'000'000);

}  // namespace sandboxgame
