#include "sandboxgame/setting.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sandboxgame/errors.hpp"

namespace sandboxgame {

namespace {

constexpr double kSumTolerance = 1e-6;     // accepted drift in sum(e) before rejection
constexpr double kShareSlack = 1e-9;       // accepted d_m overshoot past e_m
constexpr double kClassTolerance = 1e-12;  // classification comparisons

}  // namespace

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NegativeEntry: return "negative entry";
    case Errc::DefendedExceedsExistence: return "defended share exceeds existence share";
    case Errc::ExistenceNotNormalized: return "existence shares do not sum to 1";
    case Errc::EmptyUniverse: return "no machine types";
    case Errc::ZeroExistenceType: return "machine type with zero existence share";
    case Errc::ProbabilityOutOfRange: return "probability out of [0, 1]";
    case Errc::StrategyNotSubstochastic: return "strategy row sums past 1";
    case Errc::DimensionMismatch: return "dimension mismatch";
    case Errc::UndefinedStrategy: return "strategy undefined for this setting";
    case Errc::WrongClass: return "solver does not apply to this setting class";
    case Errc::UniverseTooLarge: return "too many machine types";
    case Errc::GridTooLarge: return "grid too large";
    case Errc::GenerationStalled: return "setting generation stalled";
  }
  return "unknown error";
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Analytic: return "analytic";
    case Provenance::Qcqp: return "qcqp";
    case Provenance::BruteForce: return "brute-force";
    case Provenance::Manual: return "manual";
  }
  return "unknown";
}

WorldSetting validate_setting(const SettingData& data) {
  const size_t n = data.existence.size();
  if (n == 0) throw ValidationError(Errc::EmptyUniverse, "existence array is empty");
  if (data.defended.size() != n)
    throw ValidationError(Errc::DimensionMismatch,
                          "existence has " + std::to_string(n) + " entries, defended has " +
                              std::to_string(data.defended.size()));
  if (!data.labels.empty() && data.labels.size() != n)
    throw ValidationError(Errc::DimensionMismatch, "types array length does not match");

  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (data.existence[i] < 0.0 || data.defended[i] < 0.0)
      throw ValidationError(Errc::NegativeEntry, "type " + std::to_string(i));
    if (data.existence[i] == 0.0)
      throw ValidationError(Errc::ZeroExistenceType,
                            "type " + std::to_string(i) + " can never be observed");
    sum += data.existence[i];
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw ValidationError(Errc::ExistenceNotNormalized, "sum is " + std::to_string(sum));

  WorldSetting s;
  s.existence_.resize(n);
  s.defended_.resize(n);
  // Renormalize both arrays by the same factor so the defended-vs-existence
  // comparison stays meaningful.
  for (size_t i = 0; i < n; ++i) {
    s.existence_[i] = data.existence[i] / sum;
    s.defended_[i] = data.defended[i] / sum;
    if (s.defended_[i] > s.existence_[i] + kShareSlack)
      throw ValidationError(Errc::DefendedExceedsExistence,
                            "type " + std::to_string(i) + ": " +
                                std::to_string(s.defended_[i]) + " > " +
                                std::to_string(s.existence_[i]));
    if (s.defended_[i] > s.existence_[i]) s.defended_[i] = s.existence_[i];
    s.total_defended_ += s.defended_[i];
  }

  if (data.labels.empty()) {
    s.labels_.reserve(n);
    for (size_t i = 0; i < n; ++i) s.labels_.push_back("T" + std::to_string(i));
  } else {
    s.labels_ = data.labels;
  }
  return s;
}

const char* setting_class_name(SettingClass c) {
  switch (c) {
    case SettingClass::FullyDefended: return "fully-defended";
    case SettingClass::AtMostHalf: return "at-most-half";
    case SettingClass::SingleTypeDefended: return "single-type-defended";
    case SettingClass::Hard: return "hard";
  }
  return "unknown";
}

SettingClass classify_setting(const WorldSetting& s) {
  bool fully = true;
  int defended_types = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (std::abs(s.defended()[i] - s.existence()[i]) > kClassTolerance) fully = false;
    if (s.defended()[i] > 0.0) ++defended_types;
  }
  if (fully) return SettingClass::FullyDefended;
  if (s.total_defended() <= 0.5) return SettingClass::AtMostHalf;
  if (defended_types == 1) return SettingClass::SingleTypeDefended;
  return SettingClass::Hard;
}

std::string setting_to_json(const WorldSetting& s) {
  nlohmann::ordered_json j;
  j["types"] = s.labels();
  j["existence"] = s.existence();
  j["defended"] = s.defended();
  return j.dump(2) + "\n";
}

WorldSetting setting_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(Errc::DimensionMismatch, std::string("bad JSON: ") + e.what());
  }
  SettingData data;
  try {
    if (j.contains("types")) data.labels = j["types"].get<std::vector<std::string>>();
    data.existence = j.at("existence").get<std::vector<double>>();
    data.defended = j.at("defended").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(Errc::DimensionMismatch,
                          std::string("bad setting document: ") + e.what());
  }
  return validate_setting(data);
}

WorldSetting load_setting(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in)
    throw ValidationError(Errc::DimensionMismatch, "cannot open " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return setting_from_json(buffer.str());
}

void save_setting(const WorldSetting& s, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out)
    throw SolveError(Errc::GenerationStalled, "cannot write " + file.string());
  out << setting_to_json(s);
}

// --- strategy types -------------------------------------------------------

namespace {

void check_probability_row(const std::vector<double>& row, bool substochastic) {
  double sum = 0.0;
  for (double v : row) {
    if (v < -kShareSlack || v > 1.0 + kShareSlack)
      throw ValidationError(Errc::ProbabilityOutOfRange, std::to_string(v));
    sum += v;
  }
  if (substochastic && sum > 1.0 + kShareSlack)
    throw ValidationError(Errc::StrategyNotSubstochastic, "row sums to " + std::to_string(sum));
}

void clamp_row(std::vector<double>& row) {
  for (double& v : row) v = std::min(1.0, std::max(0.0, v));
}

}  // namespace

AMStrategy AMStrategy::naive(std::vector<double> pi) {
  if (pi.empty()) throw ValidationError(Errc::EmptyUniverse, "empty strategy");
  check_probability_row(pi, true);
  clamp_row(pi);
  AMStrategy am;
  am.naive_ = true;
  am.n_ = static_cast<int>(pi.size());
  am.pi_ = std::move(pi);
  return am;
}

AMStrategy AMStrategy::sophisticated(std::vector<std::vector<double>> rows) {
  if (rows.empty()) throw ValidationError(Errc::EmptyUniverse, "empty strategy");
  const size_t n = rows.size();
  for (auto& row : rows) {
    if (row.size() != n)
      throw ValidationError(Errc::DimensionMismatch, "strategy matrix is not square");
    check_probability_row(row, true);
    clamp_row(row);
  }
  AMStrategy am;
  am.naive_ = false;
  am.n_ = static_cast<int>(n);
  am.rows_ = std::move(rows);
  return am;
}

const std::vector<double>& AMStrategy::naive_row() const {
  if (!naive_)
    throw ValidationError(Errc::WrongClass, "sophisticated strategy has no single row");
  return pi_;
}

std::vector<std::vector<double>> AMStrategy::expanded() const {
  if (!naive_) return rows_;
  return std::vector<std::vector<double>>(static_cast<size_t>(n_), pi_);
}

bool MStrategy::is_deterministic(double tol) const {
  for (double v : rho)
    if (std::min(v, 1.0 - v) > tol) return false;
  return true;
}

MStrategy validate_m_strategy(std::vector<double> rho) {
  if (rho.empty()) throw ValidationError(Errc::EmptyUniverse, "empty strategy");
  check_probability_row(rho, false);
  clamp_row(rho);
  return MStrategy{std::move(rho)};
}

}  // namespace sandboxgame
