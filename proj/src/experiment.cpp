#include "sandboxgame/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "sandboxgame/best_response.hpp"
#include "sandboxgame/brute_force.hpp"
#include "sandboxgame/errors.hpp"
#include "sandboxgame/natural.hpp"
#include "sandboxgame/rng.hpp"

namespace sandboxgame {

namespace {

constexpr double kBoundarySlack = 1e-12;
constexpr char kCsvHeader[] = "setting_id,strategy,u_am,u_m,br_gap,provenance,flags";

const char* kSolverName = "qcqp";
const char* kBaselineName = "brute-force";

bool is_hard_draw(const WorldSetting& s) {
  int defended_types = 0;
  for (double d : s.defended())
    if (d > 0.0) ++defended_types;
  const double total = s.total_defended();
  return defended_types > 1 && total > 0.5 + kBoundarySlack && total < 1.0 - kBoundarySlack;
}

std::string setting_filename(int id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "setting_%04d.json", id);
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Provenance parse_provenance(const std::string& name) {
  for (Provenance p : {Provenance::Analytic, Provenance::Qcqp, Provenance::BruteForce,
                       Provenance::Manual})
    if (name == provenance_name(p)) return p;
  throw ValidationError(Errc::UndefinedStrategy, "unknown provenance: " + name);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

StrategyOutcome score_exact(const WorldSetting& s, std::string name, const AMStrategy& am,
                            Provenance provenance) {
  StackelbergResponse resp = best_response_favoring_am(s, am);
  StrategyOutcome out;
  out.strategy = std::move(name);
  out.ok = true;
  out.u_am = resp.u_am;
  out.u_m = resp.u_m;
  out.br_gap = 0.0;
  out.provenance = provenance;
  out.rho = std::move(resp.rho.rho);
  return out;
}

ComparisonRow compare_one(const WorldSetting& s, int id, const ExperimentConfig& cfg) {
  ComparisonRow row;
  row.setting_id = id;

  for (NaturalStrategy which : kAllNaturalStrategies) {
    StrategyOutcome out;
    out.strategy = natural_strategy_name(which);
    try {
      out = score_exact(s, out.strategy, natural_strategy(s, which), Provenance::Manual);
    } catch (const ValidationError&) {
      out.flags = "undefined-strategy";
    }
    row.outcomes.push_back(std::move(out));
  }

  {
    StrategyOutcome out;
    out.strategy = kSolverName;
    EquilibriumSolution sol = solve_am_optimal(s, cfg.qcqp);
    out.ok = true;
    out.u_am = sol.u_am;
    out.u_m = sol.u_m;
    out.br_gap = sol.br_gap;
    out.provenance = sol.provenance;
    out.rho = sol.m.rho;
    if (sol.fallback) out.flags = "fallback";
    if (!sol.verified) out.flags += out.flags.empty() ? "unverified" : ";unverified";
    row.outcomes.push_back(std::move(out));
  }

  if (cfg.run_brute_force) {
    StrategyOutcome out;
    out.strategy = kBaselineName;
    try {
      EquilibriumSolution sol = brute_force_spne(s, cfg.brute_force_step);
      out.ok = true;
      out.u_am = sol.u_am;
      out.u_m = sol.u_m;
      out.br_gap = sol.br_gap;
      out.provenance = sol.provenance;
      out.rho = sol.m.rho;
    } catch (const SolveError&) {
      out.flags = "grid-too-large";
      out.provenance = Provenance::BruteForce;
    }
    row.outcomes.push_back(std::move(out));
  }
  return row;
}

struct Stats {
  int count = 0;
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
};

Stats make_stats(std::vector<double> xs) {
  Stats st;
  st.count = static_cast<int>(xs.size());
  if (xs.empty()) return st;
  double sum = 0.0;
  for (double x : xs) sum += x;
  st.mean = sum / st.count;
  std::sort(xs.begin(), xs.end());
  st.median = st.count % 2 == 1 ? xs[st.count / 2]
                                : 0.5 * (xs[st.count / 2 - 1] + xs[st.count / 2]);
  if (st.count > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - st.mean) * (x - st.mean);
    st.stddev = std::sqrt(ss / (st.count - 1));
  }
  return st;
}

nlohmann::ordered_json stats_json(const Stats& st) {
  nlohmann::ordered_json j;
  j["count"] = st.count;
  if (st.count == 0) {
    j["mean"] = nullptr;
    j["median"] = nullptr;
    j["stddev"] = nullptr;
  } else {
    j["mean"] = st.mean;
    j["median"] = st.median;
    j["stddev"] = st.stddev;
  }
  return j;
}

}  // namespace

GenerationReport generate_dataset(const ExperimentConfig& cfg,
                                  const std::filesystem::path& out_dir, long max_attempts) {
  if (cfg.n_settings < 0 || cfg.n_types < 1)
    throw ValidationError(Errc::EmptyUniverse, "need at least one machine type");
  std::filesystem::create_directories(out_dir);

  SplitMix64 rng(derive_seed(cfg.seed, 0));
  GenerationReport report;
  while (report.generated < cfg.n_settings) {
    if (report.attempts >= max_attempts)
      throw SolveError(Errc::GenerationStalled,
                       "no accepted setting in " + std::to_string(max_attempts) + " draws");
    ++report.attempts;

    SettingData data;
    data.existence = sample_simplex(rng, cfg.n_types);
    data.defended.resize(cfg.n_types);
    for (int m = 0; m < cfg.n_types; ++m)
      data.defended[m] = rng.next_double() * data.existence[m];

    WorldSetting s = validate_setting(data);
    if (!is_hard_draw(s)) continue;
    save_setting(s, out_dir / setting_filename(report.generated));
    ++report.generated;
  }
  report.acceptance_rate =
      report.attempts == 0 ? 0.0
                           : static_cast<double>(report.generated) /
                                 static_cast<double>(report.attempts);
  return report;
}

std::vector<WorldSetting> load_dataset(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<WorldSetting> settings;
  settings.reserve(files.size());
  for (const auto& f : files) settings.push_back(load_setting(f));
  return settings;
}

const StrategyOutcome* ComparisonRow::find(const std::string& strategy) const {
  for (const auto& out : outcomes)
    if (out.strategy == strategy) return &out;
  return nullptr;
}

std::vector<ComparisonRow> compare_strategies(const std::vector<WorldSetting>& settings,
                                              const ExperimentConfig& cfg) {
  std::vector<ComparisonRow> rows(settings.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(settings.size()); ++i)
    rows[i] = compare_one(settings[i], static_cast<int>(i), cfg);
  return rows;
}

std::string rows_to_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& row : rows) {
    for (const auto& o : row.outcomes) {
      out += std::to_string(row.setting_id);
      out += ',';
      out += o.strategy;
      out += ',';
      if (o.ok) {
        out += format_double(o.u_am);
        out += ',';
        out += format_double(o.u_m);
        out += ',';
        out += format_double(o.br_gap);
      } else {
        out += ",,";
      }
      out += ',';
      out += provenance_name(o.provenance);
      out += ',';
      out += o.flags;
      out += '\n';
    }
  }
  return out;
}

std::vector<ComparisonRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split(line, ',').size() != 7)
    throw ValidationError(Errc::DimensionMismatch, "missing comparison CSV header");

  std::vector<ComparisonRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 7)
      throw ValidationError(Errc::DimensionMismatch, "malformed comparison CSV line");

    const int id = std::stoi(fields[0]);
    if (rows.empty() || rows.back().setting_id != id) {
      rows.emplace_back();
      rows.back().setting_id = id;
    }
    StrategyOutcome o;
    o.strategy = fields[1];
    o.ok = !fields[2].empty();
    if (o.ok) {
      o.u_am = std::stod(fields[2]);
      o.u_m = std::stod(fields[3]);
      o.br_gap = std::stod(fields[4]);
    }
    o.provenance = parse_provenance(fields[5]);
    o.flags = fields[6];
    rows.back().outcomes.push_back(std::move(o));
  }
  return rows;
}

void write_rows_csv(const std::vector<ComparisonRow>& rows,
                    const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw SolveError(Errc::GenerationStalled, "cannot open " + file.string());
  out << rows_to_csv(rows);
}

std::vector<ComparisonRow> read_rows_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ValidationError(Errc::DimensionMismatch, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return rows_from_csv(buf.str());
}

std::string summarize(const std::vector<ComparisonRow>& rows) {
  std::vector<std::string> names;
  for (const auto& row : rows)
    for (const auto& o : row.outcomes)
      if (std::find(names.begin(), names.end(), o.strategy) == names.end())
        names.push_back(o.strategy);

  nlohmann::ordered_json doc;
  doc["n_settings"] = rows.size();

  nlohmann::ordered_json strategies = nlohmann::ordered_json::object();
  for (const auto& name : names) {
    std::vector<double> gap_to_baseline, gap_to_solver;
    int comparable = 0, close = 0;
    for (const auto& row : rows) {
      const StrategyOutcome* self = row.find(name);
      if (!self || !self->ok) continue;
      if (const StrategyOutcome* base = row.find(kBaselineName); base && base->ok) {
        gap_to_baseline.push_back(base->u_am - self->u_am);
        ++comparable;
        if (std::abs(base->u_am - self->u_am) <= 0.01) ++close;
      }
      if (const StrategyOutcome* solver = row.find(kSolverName); solver && solver->ok)
        gap_to_solver.push_back(solver->u_am - self->u_am);
    }
    nlohmann::ordered_json entry;
    entry["gap_to_baseline"] = stats_json(make_stats(std::move(gap_to_baseline)));
    entry["gap_to_solver"] = stats_json(make_stats(std::move(gap_to_solver)));
    entry["share_within_0.01_of_baseline"] =
        comparable == 0 ? nlohmann::ordered_json(nullptr)
                        : nlohmann::ordered_json(static_cast<double>(close) / comparable);
    strategies[name] = std::move(entry);
  }
  doc["strategies"] = std::move(strategies);

  int both = 0, wins = 0;
  for (const auto& row : rows) {
    const StrategyOutcome* existence = row.find("existence");
    const StrategyOutcome* solver = row.find(kSolverName);
    if (!existence || !existence->ok || !solver || !solver->ok) continue;
    ++both;
    if (existence->u_am > solver->u_am) ++wins;
  }
  doc["existence_beats_solver"] = {
      {"count", wins},
      {"share", both == 0 ? nlohmann::ordered_json(nullptr)
                          : nlohmann::ordered_json(static_cast<double>(wins) / both)},
  };

  return doc.dump(2) + "\n";
}

}  // namespace sandboxgame
