#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sandboxgame/qcqp.hpp"
#include "sandboxgame/setting.hpp"
#include "sandboxgame/types.hpp"

namespace sandboxgame {

struct ExperimentConfig {
  int n_settings = 1000;
  int n_types = 2;
  std::uint64_t seed = 1;
  double brute_force_step = 0.01;
  bool run_brute_force = true;  // only feasible for small type counts
  SolverConfig qcqp;
};

struct GenerationReport {
  int generated = 0;
  long attempts = 0;
  double acceptance_rate = 0.0;
};

// Draws i.i.d. settings (existence uniform on the simplex, defended shares
// uniform fractions of existence) and keeps the hard ones: more than one
// defended type, 1/2 < D < 1, and D not within 1e-12 of either boundary.
// Writes setting_0000.json ... into out_dir. Gives up with
// SolveError{GenerationStalled} after max_attempts draws.
GenerationReport generate_dataset(const ExperimentConfig& cfg,
                                  const std::filesystem::path& out_dir,
                                  long max_attempts = 1'000'000);

// Settings from out_dir in filename order.
std::vector<WorldSetting> load_dataset(const std::filesystem::path& dir);

// One strategy's showing on one setting. Natural strategies and the grid
// baseline are scored under the attacker's exact best response (br_gap 0 by
// construction); the numeric solver reports its accepted candidate's gap.
struct StrategyOutcome {
  std::string strategy;
  bool ok = false;          // false: this strategy failed here, see flags
  double u_am = 0.0;
  double u_m = 0.0;
  double br_gap = 0.0;
  Provenance provenance = Provenance::Manual;
  std::string flags;        // semicolon-joined markers, empty if none
  std::vector<double> rho;  // attacker reply (not serialized to CSV)
};

struct ComparisonRow {
  int setting_id = 0;
  std::vector<StrategyOutcome> outcomes;

  const StrategyOutcome* find(const std::string& strategy) const;
};

// Runs every natural strategy, the numeric solver, and (optionally) the grid
// baseline on each setting. A strategy failure is recorded in its outcome and
// never aborts the sweep. Row order follows the input order; results are
// deterministic for a fixed config.
std::vector<ComparisonRow> compare_strategies(const std::vector<WorldSetting>& settings,
                                              const ExperimentConfig& cfg);

// CSV schema: setting_id,strategy,u_am,u_m,br_gap,provenance,flags. Numbers
// are written with round-trip precision so rereading reproduces the rows
// exactly; failed outcomes leave their numeric fields empty.
void write_rows_csv(const std::vector<ComparisonRow>& rows,
                    const std::filesystem::path& file);
std::vector<ComparisonRow> read_rows_csv(const std::filesystem::path& file);
std::string rows_to_csv(const std::vector<ComparisonRow>& rows);
std::vector<ComparisonRow> rows_from_csv(const std::string& text);

// Aggregates: per strategy the mean/median/std of the utility gap to the grid
// baseline and to the numeric solver, how often each lands within 0.01 of the
// baseline, and how often the existence heuristic strictly beats the solver.
// Rendered as a stable-key-order JSON document.
std::string summarize(const std::vector<ComparisonRow>& rows);

}  // namespace sandboxgame
