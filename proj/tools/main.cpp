// Command-line front end for the sandbox commitment game: equilibrium solving,
// best responses, grid baselines, fleet simulation, and the dataset pipeline
// (generate -> compare -> summarize).
//
// Exit codes: 0 success, 2 invalid input, 3 solver failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sandboxgame/analytic.hpp"
#include "sandboxgame/best_response.hpp"
#include "sandboxgame/brute_force.hpp"
#include "sandboxgame/errors.hpp"
#include "sandboxgame/experiment.hpp"
#include "sandboxgame/natural.hpp"
#include "sandboxgame/qcqp.hpp"
#include "sandboxgame/setting.hpp"
#include "sandboxgame/simulate.hpp"

namespace {

using sandboxgame::AMStrategy;
using sandboxgame::Errc;
using sandboxgame::MStrategy;
using sandboxgame::ValidationError;
using sandboxgame::WorldSetting;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string vec_str(const std::vector<double>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out + "]";
}

nlohmann::json parse_json_spec(const std::string& spec) {
  std::string text = spec;
  if (!spec.empty() && spec[0] != '[' && spec[0] != '{') {
    std::ifstream in(spec);
    if (!in) throw ValidationError(Errc::UndefinedStrategy, "cannot open strategy file " + spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(Errc::UndefinedStrategy, std::string("bad strategy JSON: ") + e.what());
  }
}

// A defender spec is a natural-strategy name, an inline JSON array (vector for
// naive, matrix for per-type sandboxes), or a path to a file holding one.
AMStrategy parse_am_spec(const WorldSetting& s, const std::string& spec) {
  if (auto which = sandboxgame::parse_natural_strategy(spec))
    return sandboxgame::natural_strategy(s, *which);

  nlohmann::json doc = parse_json_spec(spec);
  if (doc.is_object()) {
    if (doc.contains("pi")) doc = doc["pi"];
    else if (doc.contains("rows")) doc = doc["rows"];
  }
  if (!doc.is_array() || doc.empty())
    throw ValidationError(Errc::UndefinedStrategy, "strategy spec is not an array: " + spec);
  if (doc[0].is_array())
    return AMStrategy::sophisticated(doc.get<std::vector<std::vector<double>>>());
  return AMStrategy::naive(doc.get<std::vector<double>>());
}

MStrategy parse_m_spec(const std::string& spec) {
  nlohmann::json doc = parse_json_spec(spec);
  if (doc.is_object() && doc.contains("rho")) doc = doc["rho"];
  if (!doc.is_array())
    throw ValidationError(Errc::UndefinedStrategy, "attack spec is not an array: " + spec);
  return sandboxgame::validate_m_strategy(doc.get<std::vector<double>>());
}

nlohmann::ordered_json strategy_json(const AMStrategy& am) {
  if (am.is_naive()) return nlohmann::ordered_json(am.naive_row());
  return nlohmann::ordered_json(am.expanded());
}

void print_solution(const WorldSetting& s, const sandboxgame::EquilibriumSolution& sol,
                    bool as_json) {
  if (as_json) {
    nlohmann::ordered_json j;
    j["class"] = sandboxgame::setting_class_name(sandboxgame::classify_setting(s));
    j["provenance"] = sandboxgame::provenance_name(sol.provenance);
    j["u_am"] = sol.u_am;
    j["u_m"] = sol.u_m;
    j["br_gap"] = sol.br_gap;
    j["verified"] = sol.verified;
    j["fallback"] = sol.fallback;
    j[sol.am.is_naive() ? "pi" : "rows"] = strategy_json(sol.am);
    j["rho"] = sol.m.rho;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "class:      " << sandboxgame::setting_class_name(sandboxgame::classify_setting(s))
            << "\n"
            << "provenance: " << sandboxgame::provenance_name(sol.provenance) << "\n"
            << "u_am:       " << fmt(sol.u_am) << "\n"
            << "u_m:        " << fmt(sol.u_m) << "\n"
            << "br_gap:     " << fmt(sol.br_gap) << (sol.verified ? "  (verified)" : "")
            << (sol.fallback ? "  [fallback]" : "") << "\n";
  if (sol.am.is_naive()) {
    std::cout << "pi:         " << vec_str(sol.am.naive_row()) << "\n";
  } else {
    std::cout << "rows:\n";
    for (const auto& row : sol.am.expanded()) std::cout << "  " << vec_str(row) << "\n";
  }
  std::cout << "rho:        " << vec_str(sol.m.rho) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgame-perfect equilibria of the sandbox commitment game"};
  app.require_subcommand(1);

  // ---- solve ----
  auto* solve_cmd = app.add_subcommand("solve", "Solve a setting for the defender optimum");
  std::string solve_setting;
  bool solve_soph = false, solve_numeric = false, solve_json = false;
  sandboxgame::SolverConfig solve_qcqp;
  solve_cmd->add_option("-s,--setting", solve_setting, "setting JSON file")->required();
  solve_cmd->add_flag("--sophisticated", solve_soph, "per-type sandbox rows when fully defended");
  solve_cmd->add_flag("--numeric", solve_numeric, "skip the closed forms, always run the numeric solver");
  solve_cmd->add_option("--restarts", solve_qcqp.restarts, "random starts per pattern");
  solve_cmd->add_option("--iterations", solve_qcqp.max_iterations, "ascent iterations per start");
  solve_cmd->add_option("--seed", solve_qcqp.rng_seed, "numeric solver RNG seed");
  solve_cmd->add_flag("--json", solve_json, "machine-readable output");
  solve_cmd->callback([&] {
    WorldSetting s = sandboxgame::load_setting(solve_setting);
    sandboxgame::SolveOptions opts;
    opts.sophisticated = solve_soph;
    opts.qcqp = solve_qcqp;
    auto sol = solve_numeric ? sandboxgame::solve_am_optimal(s, solve_qcqp)
                             : sandboxgame::solve(s, opts);
    print_solution(s, sol, solve_json);
  });

  // ---- best-response ----
  auto* br_cmd = app.add_subcommand("best-response", "Attacker's best response to a commitment");
  std::string br_setting, br_strategy;
  double br_grid = 0.0;
  bool br_json = false;
  br_cmd->add_option("-s,--setting", br_setting, "setting JSON file")->required();
  br_cmd->add_option("--strategy", br_strategy, "defender commitment (name, JSON, or file)")
      ->required();
  br_cmd->add_option("--grid", br_grid, "lattice step instead of the exact sweep");
  br_cmd->add_flag("--json", br_json, "machine-readable output");
  br_cmd->callback([&] {
    WorldSetting s = sandboxgame::load_setting(br_setting);
    AMStrategy am = parse_am_spec(s, br_strategy);
    MStrategy rho;
    double u_m, u_am;
    if (br_grid > 0.0) {
      auto resp = sandboxgame::best_response_grid(s, am, br_grid);
      rho = std::move(resp.rho);
      u_m = resp.u_m;
      u_am = sandboxgame::utility_am(s, am, rho);
    } else {
      auto resp = sandboxgame::best_response_favoring_am(s, am);
      rho = std::move(resp.rho);
      u_m = resp.u_m;
      u_am = resp.u_am;
    }
    if (br_json) {
      nlohmann::ordered_json j;
      j["rho"] = rho.rho;
      j["u_m"] = u_m;
      j["u_am"] = u_am;
      j["exact"] = br_grid <= 0.0;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "rho:  " << vec_str(rho.rho) << "\n"
                << "u_m:  " << fmt(u_m) << "\n"
                << "u_am: " << fmt(u_am) << "\n";
    }
  });

  // ---- brute-force ----
  auto* bf_cmd = app.add_subcommand("brute-force", "Grid search over naive commitments");
  std::string bf_setting;
  double bf_step = 0.01;
  long bf_max_points = 5'000'000;
  bool bf_grid_attacker = false, bf_json = false;
  bf_cmd->add_option("-s,--setting", bf_setting, "setting JSON file")->required();
  bf_cmd->add_option("--step", bf_step, "lattice step (default 0.01)");
  bf_cmd->add_flag("--grid-attacker", bf_grid_attacker, "lattice attacker too (doubly gridded)");
  bf_cmd->add_option("--max-points", bf_max_points, "lattice size cap");
  bf_cmd->add_flag("--json", bf_json, "machine-readable output");
  bf_cmd->callback([&] {
    WorldSetting s = sandboxgame::load_setting(bf_setting);
    auto sol = sandboxgame::brute_force_spne(s, bf_step, bf_grid_attacker, bf_max_points);
    print_solution(s, sol, bf_json);
  });

  // ---- simulate ----
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo playout over a simulated fleet");
  std::string sim_setting, sim_strategy, sim_attack = "best";
  std::uint64_t sim_machines = 100'000, sim_seed = 1;
  bool sim_json = false;
  sim_cmd->add_option("-s,--setting", sim_setting, "setting JSON file")->required();
  sim_cmd->add_option("--strategy", sim_strategy, "defender commitment (name, JSON, or file)")
      ->required();
  sim_cmd->add_option("--attack", sim_attack,
                      "attacker profile: JSON array, file, or 'best' for the exact response");
  sim_cmd->add_option("--machines", sim_machines, "fleet size (default 100000)");
  sim_cmd->add_option("--seed", sim_seed, "simulation seed (default 1)");
  sim_cmd->add_flag("--json", sim_json, "machine-readable output");
  sim_cmd->callback([&] {
    WorldSetting s = sandboxgame::load_setting(sim_setting);
    AMStrategy am = parse_am_spec(s, sim_strategy);
    MStrategy m = sim_attack == "best" ? sandboxgame::best_response_favoring_am(s, am).rho
                                       : parse_m_spec(sim_attack);
    auto r = sandboxgame::simulate(s, am, m, sim_machines, sim_seed);
    const double expected_am = sandboxgame::utility_am(s, am, m);
    const double expected_m = sandboxgame::utility_m(s, am, m);
    if (sim_json) {
      nlohmann::ordered_json j;
      j["machines"] = r.n_machines;
      j["rho"] = m.rho;
      j["empirical_u_am"] = r.empirical_u_am;
      j["empirical_u_m"] = r.empirical_u_m;
      j["se_u_am"] = r.se_u_am;
      j["se_u_m"] = r.se_u_m;
      j["expected_u_am"] = expected_am;
      j["expected_u_m"] = expected_m;
      j["tallies"] = {{"caught_in_sandbox", r.tallies.caught_in_sandbox},
                      {"evaded_then_hid", r.tallies.evaded_then_hid},
                      {"no_sandbox_hid", r.tallies.no_sandbox_hid},
                      {"attacked_defended", r.tallies.attacked_defended},
                      {"attacked_undefended", r.tallies.attacked_undefended},
                      {"hid_undefended", r.tallies.hid_undefended}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "machines:  " << r.n_machines << "\n"
                << "rho:       " << vec_str(m.rho) << "\n"
                << "u_am:      " << fmt(r.empirical_u_am) << " +/- " << fmt(r.se_u_am)
                << "  (expected " << fmt(expected_am) << ")\n"
                << "u_m:       " << fmt(r.empirical_u_m) << " +/- " << fmt(r.se_u_m)
                << "  (expected " << fmt(expected_m) << ")\n"
                << "caught in sandbox:   " << r.tallies.caught_in_sandbox << "\n"
                << "evaded then hid:     " << r.tallies.evaded_then_hid << "\n"
                << "no sandbox, hid:     " << r.tallies.no_sandbox_hid << "\n"
                << "attacked defended:   " << r.tallies.attacked_defended << "\n"
                << "attacked undefended: " << r.tallies.attacked_undefended << "\n"
                << "hid undefended:      " << r.tallies.hid_undefended << "\n";
    }
  });

  // ---- generate ----
  auto* gen_cmd = app.add_subcommand("generate", "Draw a dataset of hard settings");
  std::string gen_out;
  sandboxgame::ExperimentConfig gen_cfg;
  long gen_max_attempts = 1'000'000;
  gen_cmd->add_option("-o,--out", gen_out, "output directory")->required();
  gen_cmd->add_option("--count", gen_cfg.n_settings, "settings to generate (default 1000)");
  gen_cmd->add_option("--types", gen_cfg.n_types, "machine types per setting (default 2)");
  gen_cmd->add_option("--seed", gen_cfg.seed, "generator seed (default 1)");
  gen_cmd->add_option("--max-attempts", gen_max_attempts, "draw budget");
  gen_cmd->callback([&] {
    auto report = sandboxgame::generate_dataset(gen_cfg, gen_out, gen_max_attempts);
    std::cout << "generated " << report.generated << " settings in " << report.attempts
              << " draws (acceptance " << fmt(report.acceptance_rate) << ")\n";
  });

  // ---- compare ----
  auto* cmp_cmd = app.add_subcommand(
      "compare", "Score every strategy against the exact best response, per setting");
  std::string cmp_dataset, cmp_out;
  sandboxgame::ExperimentConfig cmp_cfg;
  bool cmp_no_bf = false;
  cmp_cmd->add_option("-d,--dataset", cmp_dataset, "directory of setting JSON files")->required();
  cmp_cmd->add_option("-o,--out", cmp_out, "output CSV file")->required();
  cmp_cmd->add_option("--step", cmp_cfg.brute_force_step, "baseline lattice step (default 0.01)");
  cmp_cmd->add_flag("--no-brute-force", cmp_no_bf, "skip the grid baseline");
  cmp_cmd->add_option("--restarts", cmp_cfg.qcqp.restarts, "solver random starts per pattern");
  cmp_cmd->add_option("--iterations", cmp_cfg.qcqp.max_iterations, "solver ascent iterations");
  cmp_cmd->add_option("--seed", cmp_cfg.qcqp.rng_seed, "solver RNG seed");
  cmp_cmd->callback([&] {
    cmp_cfg.run_brute_force = !cmp_no_bf;
    auto settings = sandboxgame::load_dataset(cmp_dataset);
    auto rows = sandboxgame::compare_strategies(settings, cmp_cfg);
    sandboxgame::write_rows_csv(rows, cmp_out);
    std::cout << "wrote " << rows.size() << " settings x "
              << (rows.empty() ? 0 : rows.front().outcomes.size()) << " strategies to "
              << cmp_out << "\n";
  });

  // ---- summarize ----
  auto* sum_cmd = app.add_subcommand("summarize", "Aggregate a comparison CSV");
  std::string sum_csv, sum_out;
  sum_cmd->add_option("-c,--csv", sum_csv, "comparison CSV file")->required();
  sum_cmd->add_option("-o,--out", sum_out, "write the JSON here instead of stdout");
  sum_cmd->callback([&] {
    auto rows = sandboxgame::read_rows_csv(sum_csv);
    std::string doc = sandboxgame::summarize(rows);
    if (sum_out.empty()) {
      std::cout << doc;
    } else {
      std::ofstream out(sum_out, std::ios::binary);
      if (!out) throw ValidationError(Errc::UndefinedStrategy, "cannot open " + sum_out);
      out << doc;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sandboxgame::SolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
