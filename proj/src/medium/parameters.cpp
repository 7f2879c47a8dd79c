#include "ramanbeat/medium/parameters.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ramanbeat {

MediumParameters::MediumParameters(double density, Frequency omega_m, Frequency reference, std::array<double, 3> a,
                                   std::array<double, 3> b, std::array<double, 3> d)
    : density_(density), omega_m_(omega_m), reference_(reference), a_(a), b_(b), d_(d) {
  validate();
}

MediumParameters::MediumParameters(double density, Frequency omega_m, Frequency reference, LevelTable levels)
    : density_(density), omega_m_(omega_m), reference_(reference), levels_(std::move(levels)) {
  validate();
  const auto p = polarizability(*levels_, reference.value());
  a_ = {p.a.value, p.a.d1, p.a.d2};
  b_ = {p.b.value, p.b.d1, p.b.d2};
  d_ = {p.d.value, p.d.d1, p.d.d2};
}

void MediumParameters::validate() const {
  if (!(density_ > 0.0) || !std::isfinite(density_)) throw std::invalid_argument("density must be positive");
  if (!(omega_m_.value() > 0.0)) throw std::invalid_argument("omega_m must be positive");
  if (!(reference_.value() > 0.0)) throw std::invalid_argument("reference frequency must be positive");
  for (const auto* arr : {&a_, &b_, &d_})
    for (double v : *arr)
      if (!std::isfinite(v)) throw std::invalid_argument("medium coefficients must be finite");
}

MediumParameters MediumParameters::solid_h2() {
  return MediumParameters(2.6e28, Frequency::from_wavenumber_cm(4149.7), Frequency::from_wavelength_nm(800.0),
                          {2.42e-7, 3.13e-24, 1.41e-39}, {2.63e-7, 3.81e-24, 1.73e-39},
                          {5.50e-8, 1.25e-24, 5.07e-40});
}

double MediumParameters::coupling_scale() const {
  return density_ * constants::hbar / (constants::epsilon0 * constants::c);
}

namespace {

Derivs taylor(const std::array<double, 3>& c, double x) {
  return {c[0] + c[1] * x + 0.5 * c[2] * x * x, c[1] + c[2] * x, c[2]};
}

}  // namespace

DispersionSample MediumParameters::at(double omega) const {
  if (levels_) {
    const auto p = polarizability(*levels_, omega);
    return {p.a, p.b, p.d};
  }
  const double w0 = reference_.value();
  const double wm = omega_m_.value();
  DispersionSample s;
  const double sa = omega < 0.0 ? -1.0 : 1.0;
  s.a = taylor(a_, std::abs(omega) - w0);
  s.a.d1 *= sa;
  s.b = taylor(b_, std::abs(omega) - w0);
  s.b.d1 *= sa;
  // d(w) = d(-w - omega_m)
  if (omega < -0.5 * wm) {
    s.d = taylor(d_, -omega - wm - w0);
    s.d.d1 = -s.d.d1;
  } else {
    s.d = taylor(d_, omega - w0);
  }
  return s;
}

MediumParameters MediumParameters::with_density(double density) const {
  MediumParameters m = *this;
  m.density_ = density;
  m.validate();
  return m;
}

MediumParameters MediumParameters::dispersionless() const {
  return MediumParameters(density_, omega_m_, reference_, {a_[0], 0.0, 0.0}, {b_[0], 0.0, 0.0}, {d_[0], 0.0, 0.0});
}

MediumParameters MediumParameters::with_reference(Frequency reference) const {
  if (levels_) return MediumParameters(density_, omega_m_, reference, *levels_);
  return MediumParameters(density_, omega_m_, reference, a_, b_, d_);
}

std::vector<std::string> MediumParameters::ordering_warnings() const {
  std::vector<std::string> out;
  const double w = reference_.value();
  auto check = [&](const char* name, const std::array<double, 3>& c) {
    const double t0 = std::abs(c[0]), t1 = w * std::abs(c[1]), t2 = w * w * std::abs(c[2]);
    if ((t1 > 0.0 && t1 >= t0) || (t2 > 0.0 && t2 >= t1)) {
      std::ostringstream os;
      os << "far-off-resonance ordering violated for " << name << ": |" << name << "0| = " << t0
         << ", w0|" << name << "1| = " << t1 << ", w0^2|" << name << "2| = " << t2;
      out.push_back(os.str());
    }
  };
  check("a", a_);
  check("b", b_);
  check("d", d_);
  return out;
}

}  // namespace ramanbeat
