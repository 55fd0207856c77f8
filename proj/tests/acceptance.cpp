// Acceptance gate for the solver library: nine end-to-end criteria with
// pinned tolerances and time budgets, one PASS/FAIL line each. Exit code 0
// only when every criterion holds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracle.hpp"
#include "sandboxgame/analytic.hpp"
#include "sandboxgame/best_response.hpp"
#include "sandboxgame/brute_force.hpp"
#include "sandboxgame/experiment.hpp"
#include "sandboxgame/natural.hpp"
#include "sandboxgame/qcqp.hpp"
#include "sandboxgame/setting.hpp"
#include "sandboxgame/simulate.hpp"

using namespace sandboxgame;
namespace fs = std::filesystem;

namespace {

struct Checker {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(std::string line) { notes.push_back(std::move(line)); }
};

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

fs::path scratch_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("sandboxgame_acceptance_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// --- criterion 1: two-type golden values ------------------------------------

void golden_two_type(Checker& c) {
  const double tol = 1e-9;
  auto s = testutil::make_setting({0.4, 0.6}, {0.4, 0.6});

  // Deterministic defender emulating the common type, deterministic attacker
  // striking only the rare type.
  auto fixed = AMStrategy::naive({0.0, 1.0});
  auto strike_rare = validate_m_strategy({1.0, 0.0});
  c.require(near(utility_am(s, fixed, strike_rare), 0.6, tol),
            "deterministic pair: defender share 0.6");
  c.require(near(utility_m(s, fixed, strike_rare), 0.4, tol),
            "deterministic pair: attacker share 0.4");

  // Fleet-mirroring defender against the same deterministic attacker.
  auto mirror = natural_strategy(s, NaturalStrategy::Existence);
  c.require(near(utility_am(s, mirror, strike_rare), 0.76, tol),
            "mirroring vs deterministic attacker: defender share 0.76");

  auto naive = solve_fully_defended_naive(s);
  c.require(near(naive.u_am, 0.75, tol), "naive equilibrium value 0.75");
  c.require(near(naive.m.rho[0], 0.5, tol) && near(naive.m.rho[1], 0.5, tol),
            "naive equilibrium attack probabilities 1/2");

  auto soph = solve_fully_defended_sophisticated(s);
  c.require(near(soph.u_am, 0.75, tol), "per-type equilibrium value 0.75");
  bool identity = !soph.am.is_naive();
  for (int r = 0; r < 2 && identity; ++r)
    for (int k = 0; k < 2; ++k)
      identity = identity && soph.am.row(r)[k] == (r == k ? 1.0 : 0.0);
  c.require(identity, "per-type equilibrium commits to the identity matrix");
}

// --- criterion 2: fully defended property ------------------------------------

void fully_defended_sweep(Checker& c) {
  SplitMix64 rng(1002);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 6;
    auto s = testutil::random_fully_defended(rng, n);

    auto naive = solve_fully_defended_naive(s);
    auto soph = solve_fully_defended_sophisticated(s);
    c.require(near(naive.u_am, 0.75, 1e-9), "naive value is 0.75");
    c.require(near(soph.u_am, 0.75, 1e-9), "per-type value is 0.75");

    const double reply_naive = best_response(s, naive.am).u_m;
    const double reply_soph = best_response(s, soph.am).u_m;
    c.require(near(reply_naive, 0.25, 1e-9), "exact reply to the naive commitment is 0.25");
    c.require(near(reply_soph, 0.25, 1e-9), "exact reply to the per-type commitment is 0.25");
    worst = std::max({worst, std::abs(naive.u_am - 0.75), std::abs(reply_naive - 0.25),
                      std::abs(soph.u_am - 0.75), std::abs(reply_soph - 0.25)});
    if (!c.ok) return;
  }
  c.note(fmt("200 settings, sizes 1..6, worst deviation %.3g", worst));
}

// --- criterion 3: lightly defended property ----------------------------------

void at_most_half_sweep(Checker& c) {
  SplitMix64 rng(1003);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 6;
    auto s = testutil::random_at_most_half(rng, n);

    auto pi = natural_strategy(s, NaturalStrategy::Undefended);
    auto br = best_response(s, pi);
    for (double v : br.rho.rho) {
      c.require(near(v, 1.0, 1e-9), "attack-everywhere reply");
      worst = std::max(worst, std::abs(v - 1.0));
    }
    const double value = utility_am(s, pi, br.rho);
    c.require(near(value, s.total_defended(), 1e-9),
              "defender keeps exactly the defended share");
    worst = std::max(worst, std::abs(value - s.total_defended()));
    if (!c.ok) return;
  }
  c.note(fmt("200 settings, sizes 1..6, worst deviation %.3g", worst));
}

// --- criterion 4: three-type reference response -------------------------------

void reference_response(Checker& c) {
  auto s = load_setting(testutil::fixture("three_type_partial.json"));
  auto pi = natural_strategy(s, NaturalStrategy::Existence);
  auto br = best_response(s, pi);

  // The optimal reply is a segment: rho_C pinned at 1, the first two
  // coordinates trading off linearly with a constant attacker payoff. Any
  // representative with that payoff is acceptable.
  c.require(near(br.u_m, 512.0 / 875.0, 1e-9), "attacker payoff 512/875 on the segment");
  c.require(near(br.rho.rho[2], 1.0, 1e-8), "third coordinate pinned at 1");
  c.require(near(0.014 * br.rho.rho[0] + 0.028 * br.rho.rho[1], 0.03, 1e-8),
            "reply lies on the indifference segment");

  const double protected_share = utility_am(s, pi, br.rho) / s.total_defended();
  const double oracle_share =
      oracle::u_am(s.defended(), pi.expanded(), br.rho.rho) / s.total_defended();
  c.require(near(protected_share, oracle_share, 1e-9),
            "protected fraction matches the independent oracle");

  const double published = 0.922;
  c.require(near(protected_share, published, 0.01),
            "protected fraction within 0.01 of the published figure");
  c.note(fmt("protected fraction %.9f vs published %.3f, residual %.2e", protected_share,
             published, std::abs(protected_share - published)));
}

// --- criterion 5: lattice cross-check ----------------------------------------

void lattice_cross_check(Checker& c) {
  SplitMix64 rng(1005);
  double max_gap = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    auto s = testutil::random_setting(rng, n);
    for (int k = 0; k < 3; ++k) {
      auto am = AMStrategy::naive(sample_capped_simplex(rng, n));
      const double exact = best_response(s, am).u_m;
      const double grid = best_response_grid(s, am, 0.01).u_m;
      c.require(grid <= exact + 1e-12, "lattice never beats the exact reply");
      c.require(exact - grid <= 0.01, "exact reply within 0.01 of the lattice");
      max_gap = std::max(max_gap, exact - grid);
      if (!c.ok) return;
    }
  }
  c.note(fmt("300 commitments, max exact-minus-lattice gap %.3g", max_gap));
}

// --- criterion 6: numeric solver on closed-form classes -----------------------

void numeric_on_easy(Checker& c) {
  SplitMix64 rng(1006);
  SolverConfig cfg;  // stock configuration: 10 restarts
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 4;
    const bool fortress = t % 2 == 0;
    auto s = fortress ? testutil::random_fully_defended(rng, n)
                      : testutil::random_at_most_half(rng, n);
    const double target = fortress ? 0.75 : s.total_defended();

    auto sol = solve_am_optimal(s, cfg);
    c.require(near(sol.u_am, target, 1e-3), fmt("value within 1e-3 of %.6f", target));
    c.require(!sol.fallback, "solver did not fall back");
    worst = std::max(worst, std::abs(sol.u_am - target));
    if (!c.ok) return;
  }
  c.note(fmt("50 settings, sizes 1..4, worst deviation %.3g", worst));
}

// --- criterion 7: numeric solver vs grid baseline on hard settings ------------

void numeric_on_hard(Checker& c) {
  const fs::path dir = scratch_dir("hard");
  ExperimentConfig gen;
  gen.n_settings = 100;
  gen.n_types = 2;
  gen.seed = 2711;
  generate_dataset(gen, dir);
  auto settings = load_dataset(dir);
  c.require(settings.size() == 100u, "generated 100 hard settings");

  SolverConfig cfg;
  cfg.rng_seed = 3;

  double gap_sum = 0.0, gap_max = 0.0;
  int within = 0, existence_wins = 0;
  for (const auto& s : settings) {
    auto sol = solve_am_optimal(s, cfg);
    auto base = brute_force_spne(s, 0.01);

    const double gap = std::abs(sol.u_am - base.u_am);
    gap_sum += gap;
    gap_max = std::max(gap_max, gap);
    if (gap <= 0.01) ++within;

    if (!sol.fallback)
      c.require(sol.br_gap <= cfg.best_response_slack,
                "accepted solution leaves at most 0.01 attacker regret");

    auto mirror = best_response_favoring_am(s, natural_strategy(s, NaturalStrategy::Existence));
    if (mirror.u_am > sol.u_am) ++existence_wins;
  }
  const double mean_gap = gap_sum / static_cast<double>(settings.size());
  c.require(mean_gap <= 0.02, fmt("mean solver-to-baseline distance %.4f within 0.02",
                                  mean_gap));

  // Dataset-dependent shares are reported, not asserted: the reference corpus
  // behind the published percentages is not available.
  c.note(fmt("mean |solver - baseline| = %.5f, max = %.5f", mean_gap, gap_max));
  c.note(fmt("solver within 0.01 of baseline on %.0f%% of settings",
             100.0 * within / static_cast<double>(settings.size())));
  c.note(fmt("fleet-mirroring beats the solver on %.1f%% of settings",
             100.0 * existence_wins / static_cast<double>(settings.size())));
  fs::remove_all(dir);
}

// --- criterion 8: simulation vs closed forms ----------------------------------

void simulation_agreement(Checker& c) {
  SplitMix64 rng(1008);
  double worst_z = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 4;
    auto s = testutil::random_setting(rng, n);
    auto am = AMStrategy::naive(sample_capped_simplex(rng, n));
    std::vector<double> rho(n);
    for (auto& v : rho) v = rng.next_double();
    auto m = validate_m_strategy(rho);

    auto res = simulate(s, am, m, 100'000, derive_seed(901, t));
    const double want_am = oracle::u_am(s.defended(), am.expanded(), m.rho);
    const double want_m = oracle::u_m(s.existence(), s.defended(), am.expanded(), m.rho);

    const double err_am = std::abs(res.empirical_u_am - want_am);
    const double err_m = std::abs(res.empirical_u_m - want_m);
    c.require(err_am <= 4.0 * res.se_u_am + 1e-12, "defender share within 4 standard errors");
    c.require(err_m <= 4.0 * res.se_u_m + 1e-12, "attacker share within 4 standard errors");
    if (res.se_u_am > 0) worst_z = std::max(worst_z, err_am / res.se_u_am);
    if (res.se_u_m > 0) worst_z = std::max(worst_z, err_m / res.se_u_m);
    if (!c.ok) return;
  }
  c.note(fmt("50 runs of 100000 machines, worst standardized error %.2f sigma", worst_z));
}

// --- criterion 9: pipeline determinism ----------------------------------------

void pipeline_determinism(Checker& c) {
  ExperimentConfig cfg;
  cfg.n_settings = 12;
  cfg.n_types = 2;
  cfg.seed = 424242;
  cfg.brute_force_step = 0.01;
  cfg.qcqp.restarts = 6;
  cfg.qcqp.max_iterations = 250;
  cfg.qcqp.rng_seed = 9;

  auto run_once = [&cfg](const std::string& tag) {
    const fs::path dir = scratch_dir(tag);
    generate_dataset(cfg, dir);
    auto rows = compare_strategies(load_dataset(dir), cfg);
    std::string csv = rows_to_csv(rows);
    std::string summary = summarize(rows);
    fs::remove_all(dir);
    return std::pair{std::move(csv), std::move(summary)};
  };

  auto [csv_a, summary_a] = run_once("pipe_a");
  auto [csv_b, summary_b] = run_once("pipe_b");
  c.require(csv_a == csv_b, "comparison CSV is byte-identical across reruns");
  c.require(summary_a == summary_b, "summary document is byte-identical across reruns");
  c.require(!csv_a.empty() && csv_a.find("qcqp") != std::string::npos,
            "comparison CSV actually contains solver rows");
  c.note(fmt("CSV of %.0f bytes reproduced exactly", static_cast<double>(csv_a.size())));
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"two-type golden values for deterministic and mixed play", 1, golden_two_type},
      {"fully defended fleets protect exactly three quarters", 30, fully_defended_sweep},
      {"lightly defended fleets concede exactly the defended share", 30, at_most_half_sweep},
      {"three-type reference response family and protected fraction", 1, reference_response},
      {"exact best response dominates a fine attacker lattice", 300, lattice_cross_check},
      {"numeric solver recovers the closed-form optima", 600, numeric_on_easy},
      {"numeric solver tracks the grid baseline on hard settings", 1800, numeric_on_hard},
      {"simulation matches closed-form utilities within sampling error", 120,
       simulation_agreement},
      {"generate-compare-summarize pipeline is byte-stable", 600, pipeline_determinism},
  };

  bool all_ok = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(checker);
    } catch (const std::exception& e) {
      checker.ok = false;
      checker.notes.push_back(std::string("unexpected exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criteria[i].budget_seconds) {
      checker.ok = false;
      checker.notes.push_back(fmt("time budget exceeded: %.1fs of %.0fs allowed", seconds,
                                  criteria[i].budget_seconds));
    }

    std::printf("[%s] criterion %zu: %s (%.2fs)\n", checker.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name, seconds);
    for (const auto& line : checker.notes) std::printf("       %s\n", line.c_str());
    std::fflush(stdout);
    all_ok = all_ok && checker.ok;
  }

  std::printf("%s\n", all_ok ? "acceptance: all criteria passed"
                             : "acceptance: at least one criterion FAILED");
  return all_ok ? 0 : 1;
}
