#include "ramanbeat/medium/levels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ramanbeat/core/errors.hpp"
#include "ramanbeat/core/units.hpp"

namespace ramanbeat {

LevelTable::LevelTable(std::vector<Level> levels) : levels_(std::move(levels)) {
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    const Level& l = levels_[j];
    if (!std::isfinite(l.detuning_a) || !std::isfinite(l.detuning_b) || !std::isfinite(l.mu_a) ||
        !std::isfinite(l.mu_b))
      throw std::invalid_argument("level " + std::to_string(j) + " has non-finite entries");
    if (l.detuning_a == 0.0 || l.detuning_b == 0.0)
      throw std::invalid_argument("level " + std::to_string(j) + " has zero detuning");
  }
}

namespace {

using constants::hbar;

// 1/(D - w) with a resonance check; throws naming the level.
double inv(double denom, double scale, std::size_t j, double omega) {
  if (std::abs(denom) <= 1e-12 * scale) {
    std::ostringstream os;
    os << "frequency " << omega << " rad/s is resonant with level " << j;
    throw SingularityError(os.str());
  }
  return 1.0 / denom;
}

}  // namespace

Polarizability polarizability(const LevelTable& levels, double omega) {
  Polarizability p;
  const double k = 1.0 / (2.0 * hbar * hbar);
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const Level& l = levels.levels()[j];
    const double s = std::max({std::abs(l.detuning_a), std::abs(l.detuning_b), std::abs(omega)});
    const double am = inv(l.detuning_a - omega, s, j, omega);  // 1/(Da - w)
    const double ap = inv(l.detuning_a + omega, s, j, omega);  // 1/(Da + w)
    const double bm = inv(l.detuning_b - omega, s, j, omega);
    const double bp = inv(l.detuning_b + omega, s, j, omega);
    const double maa = l.mu_a * l.mu_a;
    const double mbb = l.mu_b * l.mu_b;
    const double mab = l.mu_a * l.mu_b;

    p.alpha_aa += 2.0 / hbar * maa * am;
    p.alpha_bb += 2.0 / hbar * mbb * bm;
    p.alpha_ab += 2.0 / hbar * mab * bm;
    p.alpha_ba += 2.0 / hbar * mab * am;

    // d/dw 1/(D-w) = 1/(D-w)^2, d/dw 1/(D+w) = -1/(D+w)^2
    p.a.value += k * maa * (am + ap);
    p.a.d1 += k * maa * (am * am - ap * ap);
    p.a.d2 += k * maa * 2.0 * (am * am * am + ap * ap * ap);
    p.b.value += k * mbb * (bm + bp);
    p.b.d1 += k * mbb * (bm * bm - bp * bp);
    p.b.d2 += k * mbb * 2.0 * (bm * bm * bm + bp * bp * bp);
    p.d.value += k * mab * (bm + ap);
    p.d.d1 += k * mab * (bm * bm - ap * ap);
    p.d.d2 += k * mab * 2.0 * (bm * bm * bm + ap * ap * ap);
  }
  return p;
}

double alpha_aa(const LevelTable& levels, double omega) { return polarizability(levels, omega).alpha_aa; }
double alpha_bb(const LevelTable& levels, double omega) { return polarizability(levels, omega).alpha_bb; }
double alpha_ab(const LevelTable& levels, double omega) { return polarizability(levels, omega).alpha_ab; }
double alpha_ba(const LevelTable& levels, double omega) { return polarizability(levels, omega).alpha_ba; }

}  // namespace ramanbeat
