#pragma once

#include <vector>

namespace ramanbeat {

/// One intermediate level j coupled to both Raman levels.
struct Level {
  double detuning_a = 0.0;  // omega_j - omega_a, rad/s
  double detuning_b = 0.0;  // omega_j - omega_b, rad/s
  double mu_a = 0.0;        // mu_ja, C m (real)
  double mu_b = 0.0;        // mu_jb, C m (real)
};

class LevelTable {
 public:
  LevelTable() = default;
  explicit LevelTable(std::vector<Level> levels);

  const std::vector<Level>& levels() const { return levels_; }
  bool empty() const { return levels_.empty(); }
  std::size_t size() const { return levels_.size(); }

 private:
  std::vector<Level> levels_;
};

/// Value and first/second frequency derivatives of a coefficient.
struct Derivs {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Raman polarizability matrix entries and the derived dispersion and
/// coupling coefficients at one frequency.
struct Polarizability {
  double alpha_aa = 0.0;  // (2/hbar) sum mu_ja^2 / (omega_ja - omega)
  double alpha_bb = 0.0;
  double alpha_ab = 0.0;
  double alpha_ba = 0.0;
  Derivs a;  // (1/2hbar^2) sum mu_ja^2 [1/(Da - w) + 1/(Da + w)]
  Derivs b;
  Derivs d;  // (1/2hbar^2) sum mu_ja mu_jb [1/(Db - w) + 1/(Da + w)]
};

/// Throws SingularityError naming the level if omega hits a one-photon
/// resonance (a vanishing denominator in any of the level sums).
Polarizability polarizability(const LevelTable& levels, double omega);

/// Only the matrix entries alpha_ik(omega).
double alpha_aa(const LevelTable& levels, double omega);
double alpha_bb(const LevelTable& levels, double omega);
double alpha_ab(const LevelTable& levels, double omega);
double alpha_ba(const LevelTable& levels, double omega);

}  // namespace ramanbeat
