#include "ramanbeat/analytic/beat.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ramanbeat/core/errors.hpp"
#include "ramanbeat/core/interpolation.hpp"

namespace ramanbeat {

using constants::pi;

BeatParameters BeatParameters::from_alpha_z(double alpha_z, Frequency omega_m) {
  BeatParameters p;
  p.alpha = alpha_z;
  p.z = 1.0;
  p.omega_m = omega_m.value();
  p.validate();
  return p;
}

BeatParameters BeatParameters::from_medium(const MediumParameters& medium, const PreparedCoherence& coherence,
                                           double z) {
  BeatParameters p;
  p.alpha = coupling_alpha(medium, coherence.rho0());
  p.omega_m = medium.omega_m().value();
  p.z = z;
  p.kappa = coherence.kappa();
  const double sc = std::sin(coherence.theta()) * std::cos(coherence.theta());
  p.phi = coherence.phi0() + (sc < 0.0 ? -0.5 * pi : 0.5 * pi);
  p.validate();
  return p;
}

void BeatParameters::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be non-negative");
  if (!(omega_m > 0.0) || !std::isfinite(omega_m)) throw std::invalid_argument("omega_m must be positive");
  if (!std::isfinite(z) || !std::isfinite(alpha * z)) throw std::invalid_argument("alpha z must be finite");
  if (!std::isfinite(kappa) || !std::isfinite(phi)) throw std::invalid_argument("kappa and phi must be finite");
}

double BeatParameters::period() const { return 2.0 * pi / omega_m; }

double BeatParameters::velocity() const {
  return kappa == 0.0 ? std::numeric_limits<double>::infinity() : omega_m / kappa;
}

double BeatParameters::eta_of_tau(double tau) const { return tau - kappa * z / omega_m + phi / omega_m; }

double BeatParameters::tau_of_eta(double eta) const { return eta + kappa * z / omega_m - phi / omega_m; }

double gain_profile(double eta, const BeatParameters& p) {
  const double az = p.alpha_z();
  const double c = std::cos(0.5 * p.omega_m * eta);
  const double s = std::sin(0.5 * p.omega_m * eta);
  return 1.0 / (std::exp(az) * c * c + std::exp(-az) * s * s);
}

double time_remap(double eta, const BeatParameters& p) {
  const double tm = p.period();
  const double n = std::round(eta / tm);
  const double x = 0.5 * p.omega_m * (eta - n * tm);  // in [-pi/2, pi/2]
  return 2.0 / p.omega_m * std::atan2(std::exp(-p.alpha_z()) * std::sin(x), std::cos(x)) + n * tm;
}

Frequency instantaneous_frequency(double eta, Frequency omega0, const BeatParameters& p) {
  return Frequency::from_rad_per_s(gain_profile(eta, p) * omega0.value());
}

double susceptibility_profile(double eta, const BeatParameters& p, double kappa) {
  return 2.0 * constants::c / p.omega_m * (kappa + p.alpha * std::sin(p.omega_m * eta));
}

double coupling_alpha(const MediumParameters& params, double rho0) {
  if (!(rho0 >= 0.0 && rho0 <= 0.5)) throw std::invalid_argument("rho0 must lie in [0, 1/2]");
  return 2.0 * params.coupling_scale() * params.omega_m().value() * params.d()[0] * rho0;
}

SidebandOrders sideband_orders(const BeatParameters& p, Frequency omega0) {
  const double r = omega0.value() / p.omega_m;
  const double az = p.alpha_z();
  return {std::expm1(az) * r, -(-std::expm1(-az)) * r, r * p.alpha};
}

namespace {

SampledField remap_field(const SampledField& input, const TimeGrid& output,
                         const std::function<double(double)>& source_time,
                         const std::function<double(double)>& gain, bool zero_outside = false) {
  const TimeGrid& in = input.grid();
  const MonotoneCubic interp(in, input.samples());
  std::vector<double> e(output.size());
  const double lo = in.origin() - in.dt();
  const double hi = in.back() + in.dt();
  for (std::size_t k = 0; k < output.size(); ++k) {
    const double eta = output.time(k);
    const double s = source_time(eta);
    if (s < lo || s > hi) {
      if (zero_outside) continue;
      std::ostringstream os;
      os << "input time " << s << " s for output sample " << k << " lies outside the input grid [" << in.origin()
         << ", " << in.back() << "]";
      throw CoverageError(os.str());
    }
    e[k] = interp(s) * gain(eta);
  }
  return SampledField(output, std::move(e));
}

}  // namespace

SampledField propagate_dispersionless(const SampledField& input, const BeatParameters& p) {
  return propagate_dispersionless(input, p, input.grid());
}

SampledField propagate_dispersionless(const SampledField& input, const BeatParameters& p, const TimeGrid& output) {
  p.validate();
  return remap_field(
      input, output, [&](double eta) { return time_remap(eta, p); },
      [&](double eta) { return gain_profile(eta, p); });
}

SampledField propagate_dispersionless_lab(const SampledField& input, const BeatParameters& p) {
  return propagate_dispersionless_lab(input, p, input.grid());
}

SampledField propagate_dispersionless_lab(const SampledField& input, const BeatParameters& p, const TimeGrid& output) {
  p.validate();
  require_windowed(input);
  return remap_field(
      input, output, [&](double tau) { return time_remap(p.eta_of_tau(tau), p) - p.phi / p.omega_m; },
      [&](double tau) { return gain_profile(p.eta_of_tau(tau), p); }, true);
}

}  // namespace ramanbeat
