#pragma once

#include <string>
#include <vector>

#include "sandboxgame/errors.hpp"

namespace sandboxgame {

// One kind of real machine in the fleet.
struct MachineType {
  int index = 0;
  std::string label;
};

struct SettingData {
  std::vector<std::string> labels;  // optional; defaults to T0, T1, ...
  std::vector<double> existence;    // fraction of machines per type, sums to 1
  std::vector<double> defended;     // fraction of all machines of that type with AM installed
};

// A validated world: existence shares normalized, 0 <= defended <= existence per type.
// Construct through validate_setting().
class WorldSetting {
 public:
  int size() const { return static_cast<int>(existence_.size()); }
  const std::vector<double>& existence() const { return existence_; }
  const std::vector<double>& defended() const { return defended_; }
  const std::vector<std::string>& labels() const { return labels_; }
  double total_defended() const { return total_defended_; }
  MachineType type(int i) const { return MachineType{i, labels_[i]}; }

 private:
  WorldSetting() = default;
  friend WorldSetting validate_setting(const SettingData& data);

  std::vector<std::string> labels_;
  std::vector<double> existence_;
  std::vector<double> defended_;
  double total_defended_ = 0.0;
};

// Defender commitment: either one sandbox-generation vector shared by every real
// machine type (naive) or one row per real machine type (sophisticated). Rows are
// substochastic; the slack is the chance of generating no sandbox at all.
class AMStrategy {
 public:
  AMStrategy() = default;  // empty; fill through the factories below
  static AMStrategy naive(std::vector<double> pi);
  static AMStrategy sophisticated(std::vector<std::vector<double>> rows);

  bool is_naive() const { return naive_; }
  int size() const { return n_; }

  // Sandbox distribution seen on real machines of type r.
  const std::vector<double>& row(int r) const { return naive_ ? pi_ : rows_[r]; }
  const std::vector<double>& naive_row() const;
  std::vector<std::vector<double>> expanded() const;

 private:
  bool naive_ = true;
  int n_ = 0;
  std::vector<double> pi_;
  std::vector<std::vector<double>> rows_;
};

// Attacker commitment: per-type probability of attacking when the environment
// looks like that type.
struct MStrategy {
  std::vector<double> rho;

  int size() const { return static_cast<int>(rho.size()); }
  bool is_deterministic(double tol = 0.0) const;
};

// Checks entries are probabilities (1e-9 slack, then clamped).
MStrategy validate_m_strategy(std::vector<double> rho);

enum class Provenance { Analytic, Qcqp, BruteForce, Manual };

const char* provenance_name(Provenance p);

struct EquilibriumSolution {
  AMStrategy am;
  MStrategy m;
  double u_am = 0.0;
  double u_m = 0.0;
  Provenance provenance = Provenance::Manual;
  bool verified = false;
  // Attacker regret of the accepted candidate: how much the attacker could still
  // gain by switching to an exact best response. Zero for analytic solutions.
  double br_gap = 0.0;
  // Set when a solver could not certify any candidate and fell back to the best
  // natural strategy under an exact best response.
  bool fallback = false;
};

}  // namespace sandboxgame
