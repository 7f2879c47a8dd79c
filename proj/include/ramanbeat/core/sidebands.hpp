#pragma once

#include <optional>
#include <vector>

#include "ramanbeat/core/field.hpp"
#include "ramanbeat/core/units.hpp"

namespace ramanbeat {

/// Complex envelopes E_q of the comb omega_q = omega0 + q*omega_m, with
/// E = (1/2) sum_q (E_q e^{-i omega_q tau} + c.c.).
///
/// Envelopes are either constant (one value per sideband) or sampled on a
/// common envelope grid.
class SidebandSet {
 public:
  /// Constant envelopes, env[q - q_min].
  SidebandSet(Frequency omega0, Frequency omega_m, int q_min, std::vector<cplx> env);
  /// Sampled envelopes, env[q - q_min][k] on grid.
  SidebandSet(Frequency omega0, Frequency omega_m, int q_min, TimeGrid grid,
              std::vector<std::vector<cplx>> env);

  Frequency omega0() const { return omega0_; }
  Frequency omega_m() const { return omega_m_; }
  int q_min() const { return q_min_; }
  int q_max() const { return q_min_ + static_cast<int>(env_.size()) - 1; }
  std::size_t count() const { return env_.size(); }
  bool contains(int q) const { return q >= q_min() && q <= q_max(); }
  double omega_q(int q) const;
  bool is_sampled() const { return grid_.has_value(); }
  const TimeGrid& grid() const;

  const std::vector<cplx>& envelope(int q) const;
  std::vector<cplx>& envelope(int q);
  /// Envelope value at sample k (k ignored for constant envelopes).
  cplx at(int q, std::size_t k = 0) const;

  /// Photon-flux-like sum over q of |E_q|^2 / omega_q (constant envelopes or one sample).
  double photon_flux(std::size_t k = 0) const;

 private:
  void validate() const;

  Frequency omega0_;
  Frequency omega_m_;
  int q_min_;
  std::optional<TimeGrid> grid_;
  std::vector<std::vector<cplx>> env_;
};

/// Splits an analytic field into sideband envelopes by partitioning its
/// spectrum into windows [omega_q - omega_m/2, omega_q + omega_m/2) (the
/// lowest window starts at zero) and demodulating each window by
/// e^{+i omega_q tau}. Envelopes are then decimated by `decimation`.
SidebandSet decompose_sidebands(const AnalyticField& field, Frequency omega0, Frequency omega_m,
                                int q_min, int q_max, std::size_t decimation = 1);

/// Sum_q E_q(tau) e^{-i omega_q tau} on the target grid; envelopes are
/// band-limited-interpolated from their own grid.
AnalyticField synthesize_sidebands(const SidebandSet& set, const TimeGrid& target);

}  // namespace ramanbeat
