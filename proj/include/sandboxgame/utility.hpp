#pragma once

#include <vector>

#include "sandboxgame/types.hpp"

namespace sandboxgame {

// Expected fraction of all machines the attacker compromises: an undefended
// machine pays off when attacked; a defended one only when the attacker first
// hides in the sandbox and then attacks the real machine.
double utility_m(const WorldSetting& s, const AMStrategy& am, const MStrategy& m);

// Expected fraction of all machines that are defended and end up protected:
// the attacker either strikes inside the sandbox or never attacks the real
// machine at all.
double utility_am(const WorldSetting& s, const AMStrategy& am, const MStrategy& m);

// Partial derivatives of utility_m in the attack probabilities. Entry k is
// e_k - sum_m (d_k Pi[k][m] + d_m Pi[m][k]) rho_m.
std::vector<double> utility_m_gradient(const WorldSetting& s, const AMStrategy& am,
                                       const MStrategy& m);

}  // namespace sandboxgame
