#pragma once

#include "sandboxgame/qcqp.hpp"
#include "sandboxgame/setting.hpp"
#include "sandboxgame/types.hpp"

namespace sandboxgame {

// Closed-form equilibria for the setting classes that admit them. Each solver
// checks the class precondition (ValidationError{WrongClass} otherwise) and
// certifies its output against the exact best response before marking it
// verified.

// Fully defended fleet, naive defender: commit to the existence distribution;
// the attacker is indifferent at attack probability 1/2 everywhere and the
// defender protects 3/4 of the fleet no matter the type mix.
EquilibriumSolution solve_fully_defended_naive(const WorldSetting& s);

// Fully defended fleet, per-type sandboxes: mirroring each machine's own type
// (identity matrix) achieves the same 3/4 split type by type.
EquilibriumSolution solve_fully_defended_sophisticated(const WorldSetting& s);

// Fully defended fleet when the defender must pick one sandbox type
// deterministically: emulating the most common type is optimal. The attacker
// answers with rho = 1 - 1/(2 e_max) on the emulated type (0 if e_max < 1/2)
// and attacks everything else outright.
EquilibriumSolution solve_naive_deterministic_am(const WorldSetting& s);

// Total defended share at most 1/2: mirroring the undefended mass makes
// attacking everywhere dominant for the attacker, so every defended machine
// that draws a sandbox is protected and u_am = D. D = 0 degenerates to the
// trivial all-attack outcome.
EquilibriumSolution solve_at_most_half(const WorldSetting& s);

// Exactly one defended type: enumerates the deterministic commitments (no
// sandbox ever, or always one fixed type) under exact best response and keeps
// the best. A mixed commitment can beat every deterministic one here, so the
// dispatcher cross-checks this against the numeric solver.
EquilibriumSolution solve_single_type_defended(const WorldSetting& s);

struct SolveOptions {
  bool sophisticated = false;  // only changes the fully defended route
  SolverConfig qcqp;
};

// Classifies and routes: analytic classes to their closed forms, everything
// else to the numeric solver with the best natural strategy as a safety net.
EquilibriumSolution solve(const WorldSetting& s, const SolveOptions& opts = {});

}  // namespace sandboxgame
