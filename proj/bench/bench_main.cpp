// Times the OpenMP kernels against their serial reference implementations and
// checks that both sides return the same answer. Run it from the build tree:
//
//   ./bench/sandboxgame_bench [--quick]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sandboxgame/best_response.hpp"
#include "sandboxgame/brute_force.hpp"
#include "sandboxgame/natural.hpp"
#include "sandboxgame/setting.hpp"
#include "sandboxgame/simulate.hpp"

using namespace sandboxgame;

namespace {

WorldSetting make_setting(int n) {
  SettingData data;
  data.existence.resize(n);
  data.defended.resize(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    data.existence[i] = static_cast<double>(i + 1);
    sum += data.existence[i];
  }
  for (int i = 0; i < n; ++i) {
    data.existence[i] /= sum;
    data.defended[i] = data.existence[i] * static_cast<double>((i % 3) + 1) / 3.0;
  }
  return validate_setting(data);
}

double time_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
  std::printf("%-22s %10.2f %12.2f %9.2fx   %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, match ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;
  const int reps = quick ? 1 : 3;

#ifdef _OPENMP
  std::printf("OpenMP: %d thread(s)\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP: not compiled in; both columns run serially\n\n");
#endif
  std::printf("%-22s %10s %12s %10s\n", "kernel", "serial ms", "parallel ms", "speedup");

  {
    const WorldSetting s = make_setting(quick ? 8 : 10);
    const AMStrategy am = natural_strategy(s, NaturalStrategy::Existence);
    BestResponse serial_out, parallel_out;
    const double t_serial = time_ms([&] { serial_out = best_response_serial(s, am); }, reps);
    const double t_parallel = time_ms([&] { parallel_out = best_response(s, am); }, reps);
    report("pattern sweep", t_serial, t_parallel,
           serial_out.u_m == parallel_out.u_m &&
               serial_out.pattern_index == parallel_out.pattern_index);
  }

  {
    const WorldSetting s = make_setting(5);
    const AMStrategy am = natural_strategy(s, NaturalStrategy::Uniform);
    const double step = quick ? 0.1 : 0.05;
    BestResponse serial_out, parallel_out;
    const double t_serial =
        time_ms([&] { serial_out = best_response_grid_serial(s, am, step); }, reps);
    const double t_parallel = time_ms([&] { parallel_out = best_response_grid(s, am, step); }, reps);
    report("attack lattice", t_serial, t_parallel,
           serial_out.u_m == parallel_out.u_m && serial_out.pattern_index == parallel_out.pattern_index);
  }

  {
    const WorldSetting s = make_setting(3);
    const AMStrategy am = natural_strategy(s, NaturalStrategy::Undefended);
    const MStrategy m{std::vector<double>(3, 0.5)};
    const std::uint64_t machines = quick ? 500'000 : 4'000'000;
    SimulationResult serial_out, parallel_out;
    const double t_serial =
        time_ms([&] { serial_out = simulate_serial(s, am, m, machines, 7); }, reps);
    const double t_parallel = time_ms([&] { parallel_out = simulate(s, am, m, machines, 7); }, reps);
    report("fleet simulation", t_serial, t_parallel,
           serial_out.tallies.attacked_defended == parallel_out.tallies.attacked_defended &&
               serial_out.empirical_u_am == parallel_out.empirical_u_am);
  }

  {
    const WorldSetting s = make_setting(2);
    const double step = quick ? 0.02 : 0.01;
    EquilibriumSolution serial_out, parallel_out;
    const double t_serial = time_ms([&] { serial_out = brute_force_spne_serial(s, step); }, reps);
    const double t_parallel = time_ms([&] { parallel_out = brute_force_spne(s, step); }, reps);
    report("commitment search", t_serial, t_parallel, serial_out.u_am == parallel_out.u_am);
  }

  return 0;
}
