#pragma once

#include <cstdint>

#include "sandboxgame/types.hpp"

namespace sandboxgame {

// Where each simulated machine ended up. The first four buckets are defended
// machines, the last two undefended; together they partition the fleet.
struct SimulationTallies {
  std::uint64_t caught_in_sandbox = 0;    // attacker struck inside the sandbox
  std::uint64_t evaded_then_hid = 0;      // hid in the sandbox, then hid for real too
  std::uint64_t no_sandbox_hid = 0;       // no sandbox came up and the attacker hid
  std::uint64_t attacked_defended = 0;    // defended machine compromised
  std::uint64_t attacked_undefended = 0;  // undefended machine compromised
  std::uint64_t hid_undefended = 0;       // undefended machine left alone
};

struct SimulationResult {
  std::uint64_t n_machines = 0;
  SimulationTallies tallies;
  double empirical_u_am = 0.0;  // protected defended machines / fleet
  double empirical_u_m = 0.0;   // compromised machines / fleet
  double se_u_am = 0.0;         // binomial standard errors
  double se_u_m = 0.0;
};

// Plays the three-stage game once per machine: draw the type from the
// existence shares, install AM with the conditional defended rate, then run
// sandbox generation and the attacker's mixed decisions. Splitting into
// fixed-size shards with per-shard seeds keeps the result identical for the
// serial and parallel versions and across thread counts.
SimulationResult simulate(const WorldSetting& s, const AMStrategy& am, const MStrategy& m,
                          std::uint64_t n_machines, std::uint64_t seed);
SimulationResult simulate_serial(const WorldSetting& s, const AMStrategy& am,
                                 const MStrategy& m, std::uint64_t n_machines,
                                 std::uint64_t seed);

}  // namespace sandboxgame
