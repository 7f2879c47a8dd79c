#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ramanbeat/analytic/beat.hpp"

namespace ramanbeat {

/// Cosine series G = sum c_n cos(n w eta) with c_0 = 1,
/// c_n = 2(-1)^n tanh^n(az/2), and the integrated series
/// s = eta + sum b_n sin(n w eta), b_n = c_n/(n w).
struct GSeries {
  double omega_m = 0.0;
  std::vector<double> cosine;  // c_0..c_nmax
  std::vector<double> sine;    // b_0 (= 0)..b_nmax

  double gain(double eta) const;
  double remap(double eta) const;
};

GSeries fourier_G(const BeatParameters& p, std::size_t n_max);

enum class BesselMode { FullProduct, SingleBessel, Linearized, TwoColor };

struct BesselSpectrum {
  int q_min = 0;
  std::vector<std::complex<double>> amplitude;  // E_q / input amplitude at q_min..q_max
  /// tanh(az/2) and (w0/wm) tanh^2(az/2) (validity of the single-Bessel
  /// form), az sqrt(w0/wm) (validity of the linearized form).
  double tanh_ratio = 0.0;
  double omega_ratio = 0.0;
  double linear_ratio = 0.0;
  std::vector<std::string> warnings;

  std::complex<double> at(int q) const { return amplitude.at(static_cast<std::size_t>(q - q_min)); }
};

/// Sideband amplitudes of E = Re sum_q E_q e^{-i omega_q eta} for a
/// monochromatic input of unit amplitude. For TwoColor, `stokes_input` is the
/// amplitude of the second input at omega0 - omega_m. Amplitudes are
/// referenced to the reduced time eta: a lab-frame Stokes amplitude E_s at
/// z = 0 enters as E_s e^{-i phi} relative to the pump. Throws std::domain_error
/// on an empty range. Approximate modes add warnings when a validity ratio
/// reaches 0.1.
BesselSpectrum bessel_spectrum(const BeatParameters& p, Frequency omega0, int q_min, int q_max, BesselMode mode,
                               std::complex<double> stokes_input = 0.0);

}  // namespace ramanbeat
