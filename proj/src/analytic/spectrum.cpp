#include "ramanbeat/analytic/spectrum.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ramanbeat {

double GSeries::gain(double eta) const {
  double g = 0.0;
  for (std::size_t n = 0; n < cosine.size(); ++n) g += cosine[n] * std::cos(static_cast<double>(n) * omega_m * eta);
  return g;
}

double GSeries::remap(double eta) const {
  double s = eta;
  for (std::size_t n = 1; n < sine.size(); ++n) s += sine[n] * std::sin(static_cast<double>(n) * omega_m * eta);
  return s;
}

GSeries fourier_G(const BeatParameters& p, std::size_t n_max) {
  p.validate();
  GSeries g;
  g.omega_m = p.omega_m;
  const double t = std::tanh(0.5 * p.alpha_z());
  g.cosine.assign(n_max + 1, 0.0);
  g.sine.assign(n_max + 1, 0.0);
  g.cosine[0] = 1.0;
  double tn = 1.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    tn *= -t;
    g.cosine[n] = 2.0 * tn;
    g.sine[n] = g.cosine[n] / (static_cast<double>(n) * p.omega_m);
  }
  return g;
}

namespace {

double bessel_j(int k, double x) {
  const double v = std::cyl_bessel_j(static_cast<double>(std::abs(k)), x);
  return (k < 0 && (k % 2 != 0)) ? -v : v;
}

// Sequence indexed from `offset`.
struct Seq {
  long offset = 0;
  std::vector<double> v;
};

Seq convolve(const Seq& a, const Seq& b) {
  Seq c;
  c.offset = a.offset + b.offset;
  c.v.assign(a.v.size() + b.v.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    if (a.v[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.v.size(); ++j) c.v[i + j] += a.v[i] * b.v[j];
  }
  return c;
}

// Coefficients of prod_n sum_k J_k(x_n) e^{i k n theta}; entries with
// |J_k| < 1e-14 are dropped; factors stop once x_n < 1e-12.
Seq bessel_product(double ratio, double t) {
  Seq acc{0, {1.0}};
  double tn = 1.0;
  for (int n = 1;; ++n) {
    tn *= t;
    const double x = 2.0 * ratio / n * tn;
    if (x < 1e-12 || n > 100000) break;
    int kmax = 0;
    while (std::abs(bessel_j(kmax + 1, x)) >= 1e-14 || kmax + 1 < x) ++kmax;
    Seq f;
    f.offset = -static_cast<long>(kmax) * n;
    f.v.assign(static_cast<std::size_t>(2 * kmax * n + 1), 0.0);
    for (int k = -kmax; k <= kmax; ++k) f.v[static_cast<std::size_t>((k + kmax) * n)] = bessel_j(k, x);
    acc = convolve(acc, f);
  }
  return acc;
}

}  // namespace

BesselSpectrum bessel_spectrum(const BeatParameters& p, Frequency omega0, int q_min, int q_max, BesselMode mode,
                               std::complex<double> stokes_input) {
  if (q_max < q_min) throw std::domain_error("empty sideband range");
  p.validate();
  const double az = p.alpha_z();
  const double ratio = omega0.value() / p.omega_m;
  const double t = std::tanh(0.5 * az);
  const double gz = ratio * az;

  BesselSpectrum out;
  out.q_min = q_min;
  out.tanh_ratio = t;
  out.omega_ratio = ratio * t * t;
  out.linear_ratio = az * std::sqrt(ratio);
  auto sign = [](int q) { return (q % 2 == 0) ? 1.0 : -1.0; };

  if (mode == BesselMode::FullProduct) {
    const Seq s = bessel_product(ratio, t);
    int lmax = 0;
    if (t > 0.0) lmax = static_cast<int>(std::ceil(std::log(1e-16) / std::log(t)));
    auto s_at = [&](long m) {
      const long i = m - s.offset;
      return (i < 0 || i >= static_cast<long>(s.v.size())) ? 0.0 : s.v[static_cast<std::size_t>(i)];
    };
    for (int q = q_min; q <= q_max; ++q) {
      double sum = 0.0;
      for (int l = -lmax; l <= lmax; ++l) sum += std::pow(t, std::abs(l)) * s_at(q - l);
      out.amplitude.emplace_back(sign(q) * sum);
    }
    return out;
  }

  if (mode == BesselMode::SingleBessel || mode == BesselMode::Linearized) {
    auto warn = [&](const char* what, double v) {
      if (v >= 0.1) {
        std::ostringstream os;
        os << what << " = " << v << " is not small; the approximate Bessel form may be inaccurate";
        out.warnings.push_back(os.str());
      }
    };
    warn("tanh(alpha z/2)", out.tanh_ratio);
    warn("(omega0/omega_m) tanh^2(alpha z/2)", out.omega_ratio);
    if (mode == BesselMode::Linearized) warn("alpha z sqrt(omega0/omega_m)", out.linear_ratio);
  }

  for (int q = q_min; q <= q_max; ++q) {
    switch (mode) {
      case BesselMode::SingleBessel:
        out.amplitude.emplace_back(sign(q) * bessel_j(q, 2.0 * ratio * t));
        break;
      case BesselMode::Linearized:
        out.amplitude.emplace_back(sign(q) * bessel_j(q, gz));
        break;
      case BesselMode::TwoColor:
        out.amplitude.push_back(sign(q) * bessel_j(q, gz) - sign(q) * stokes_input * bessel_j(q + 1, gz));
        break;
      case BesselMode::FullProduct:
        break;
    }
  }
  return out;
}

}  // namespace ramanbeat
