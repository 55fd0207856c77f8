#include "sandboxgame/simulate.hpp"

#include <cmath>
#include <vector>

#include "sandboxgame/errors.hpp"
#include "sandboxgame/rng.hpp"

namespace sandboxgame {

namespace {

// Shard size is part of the output contract: results are reproducible across
// thread counts only because machine i always sits in shard i / kShardSize
// with that shard's own generator.
constexpr std::uint64_t kShardSize = 65536;

struct Tables {
  int n = 0;
  std::vector<double> cum_existence;        // running sums of e
  std::vector<double> defended_rate;        // d_t / e_t
  std::vector<double> row_sum;              // chance any sandbox is generated
  std::vector<std::vector<double>> cum_row; // running sums of each sandbox row
};

Tables build_tables(const WorldSetting& s, const AMStrategy& am) {
  Tables t;
  t.n = s.size();
  t.cum_existence.resize(t.n);
  t.defended_rate.resize(t.n);
  t.row_sum.resize(t.n);
  t.cum_row.assign(t.n, std::vector<double>(t.n));
  double acc = 0.0;
  for (int i = 0; i < t.n; ++i) {
    acc += s.existence()[i];
    t.cum_existence[i] = acc;
    t.defended_rate[i] = s.defended()[i] / s.existence()[i];
    double row_acc = 0.0;
    for (int g = 0; g < t.n; ++g) {
      row_acc += am.row(i)[g];
      t.cum_row[i][g] = row_acc;
    }
    t.row_sum[i] = row_acc;
  }
  return t;
}

int pick(const std::vector<double>& cum, double u) {
  const int n = static_cast<int>(cum.size());
  for (int i = 0; i < n; ++i)
    if (u < cum[i]) return i;
  return n - 1;  // guards the rounding sliver at the top of the last bucket
}

SimulationTallies run_shard(const Tables& t, const MStrategy& m, std::uint64_t machines,
                            std::uint64_t shard_seed) {
  SplitMix64 rng(shard_seed);
  SimulationTallies tally;
  for (std::uint64_t i = 0; i < machines; ++i) {
    const int type = pick(t.cum_existence, rng.next_double());
    const bool defended = rng.next_double() < t.defended_rate[type];
    if (!defended) {
      if (rng.next_double() < m.rho[type])
        ++tally.attacked_undefended;
      else
        ++tally.hid_undefended;
      continue;
    }
    const double sandbox_draw = rng.next_double();
    if (sandbox_draw < t.row_sum[type]) {
      const int shown = pick(t.cum_row[type], sandbox_draw);
      if (rng.next_double() < m.rho[shown]) {
        ++tally.caught_in_sandbox;
        continue;
      }
      if (rng.next_double() < m.rho[type])
        ++tally.attacked_defended;
      else
        ++tally.evaded_then_hid;
    } else {
      if (rng.next_double() < m.rho[type])
        ++tally.attacked_defended;
      else
        ++tally.no_sandbox_hid;
    }
  }
  return tally;
}

void accumulate(SimulationTallies& total, const SimulationTallies& part) {
  total.caught_in_sandbox += part.caught_in_sandbox;
  total.evaded_then_hid += part.evaded_then_hid;
  total.no_sandbox_hid += part.no_sandbox_hid;
  total.attacked_defended += part.attacked_defended;
  total.attacked_undefended += part.attacked_undefended;
  total.hid_undefended += part.hid_undefended;
}

double binomial_se(double p, std::uint64_t n) {
  return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

SimulationResult run(const WorldSetting& s, const AMStrategy& am, const MStrategy& m,
                     std::uint64_t n_machines, std::uint64_t seed, bool parallel) {
  if (am.size() != s.size() || m.size() != s.size())
    throw ValidationError(Errc::DimensionMismatch, "strategy size does not match setting");

  const Tables tables = build_tables(s, am);
  const std::uint64_t shards = (n_machines + kShardSize - 1) / kShardSize;

  SimulationResult result;
  result.n_machines = n_machines;

#pragma omp parallel if (parallel)
  {
    SimulationTallies local;
#pragma omp for nowait schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(shards); ++i) {
      const std::uint64_t start = static_cast<std::uint64_t>(i) * kShardSize;
      const std::uint64_t count = std::min(kShardSize, n_machines - start);
      accumulate(local, run_shard(tables, m, count,
                                  derive_seed(seed, static_cast<std::uint64_t>(i))));
    }
#pragma omp critical(sandboxgame_sim_merge)
    accumulate(result.tallies, local);
  }

  if (n_machines > 0) {
    const auto& t = result.tallies;
    const double fleet = static_cast<double>(n_machines);
    result.empirical_u_am =
        static_cast<double>(t.caught_in_sandbox + t.evaded_then_hid + t.no_sandbox_hid) /
        fleet;
    result.empirical_u_m =
        static_cast<double>(t.attacked_defended + t.attacked_undefended) / fleet;
    result.se_u_am = binomial_se(result.empirical_u_am, n_machines);
    result.se_u_m = binomial_se(result.empirical_u_m, n_machines);
  }
  return result;
}

}  // namespace

SimulationResult simulate(const WorldSetting& s, const AMStrategy& am, const MStrategy& m,
                          std::uint64_t n_machines, std::uint64_t seed) {
  return run(s, am, m, n_machines, seed, true);
}

SimulationResult simulate_serial(const WorldSetting& s, const AMStrategy& am,
                                 const MStrategy& m, std::uint64_t n_machines,
                                 std::uint64_t seed) {
  return run(s, am, m, n_machines, seed, false);
}

}  // namespace sandboxgame
