#include "ramanbeat/core/sidebands.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ramanbeat {

SidebandSet::SidebandSet(Frequency omega0, Frequency omega_m, int q_min, std::vector<cplx> env)
    : omega0_(omega0), omega_m_(omega_m), q_min_(q_min) {
  env_.reserve(env.size());
  for (const cplx& v : env) env_.push_back({v});
  validate();
}

SidebandSet::SidebandSet(Frequency omega0, Frequency omega_m, int q_min, TimeGrid grid,
                         std::vector<std::vector<cplx>> env)
    : omega0_(omega0), omega_m_(omega_m), q_min_(q_min), grid_(grid), env_(std::move(env)) {
  for (const auto& e : env_)
    if (e.size() != grid.size()) throw std::invalid_argument("sideband envelope does not match its grid");
  validate();
}

void SidebandSet::validate() const {
  if (env_.empty()) throw std::invalid_argument("sideband set must contain at least one sideband");
  if (!(omega_m_.value() > 0.0)) throw std::invalid_argument("modulation frequency must be positive");
  if (!(omega_q(q_min_) > 0.0)) {
    std::ostringstream os;
    os << "sideband q = " << q_min_ << " has non-positive frequency " << omega_q(q_min_);
    throw std::invalid_argument(os.str());
  }
}

double SidebandSet::omega_q(int q) const { return omega0_.value() + q * omega_m_.value(); }

const TimeGrid& SidebandSet::grid() const {
  if (!grid_) throw std::logic_error("sideband set has constant envelopes");
  return *grid_;
}

const std::vector<cplx>& SidebandSet::envelope(int q) const {
  if (!contains(q)) throw std::out_of_range("sideband " + std::to_string(q) + " not in set");
  return env_[static_cast<std::size_t>(q - q_min_)];
}

std::vector<cplx>& SidebandSet::envelope(int q) {
  if (!contains(q)) throw std::out_of_range("sideband " + std::to_string(q) + " not in set");
  return env_[static_cast<std::size_t>(q - q_min_)];
}

cplx SidebandSet::at(int q, std::size_t k) const {
  const auto& e = envelope(q);
  return grid_ ? e.at(k) : e[0];
}

double SidebandSet::photon_flux(std::size_t k) const {
  double s = 0.0;
  for (int q = q_min(); q <= q_max(); ++q) s += std::norm(at(q, k)) / omega_q(q);
  return s;
}

SidebandSet decompose_sidebands(const AnalyticField& field, Frequency omega0, Frequency omega_m, int q_min,
                                int q_max, std::size_t decimation) {
  if (q_max < q_min) throw std::invalid_argument("empty sideband range");
  const TimeGrid& grid = field.grid();
  require_power_of_two(grid);
  const std::size_t n = grid.size();
  if (decimation == 0 || n % decimation != 0 || ((decimation & (decimation - 1)) != 0))
    throw std::invalid_argument("decimation must be a power of two dividing the grid size");
  const std::size_t nc = n / decimation;
  if (nc < 2) throw std::invalid_argument("decimation leaves fewer than two envelope samples");
  const TimeGrid coarse(grid.origin(), grid.dt() * static_cast<double>(decimation), nc);

  Fft fft(n);
  Fft fft_c(nc);
  std::vector<cplx> spec(n);
  fft.to_frequency(field.samples(), spec);

  const double wm = omega_m.value();
  std::vector<std::vector<cplx>> env;
  std::vector<cplx> band(n), shifted(n), cbins(nc), cenv(nc);
  for (int q = q_min; q <= q_max; ++q) {
    const double wq = omega0.value() + q * wm;
    const double lo = wq - 0.5 * wm;
    const double hi = wq + 0.5 * wm;
    for (std::size_t k = 0; k < n; ++k) {
      const double w = grid.omega(k);
      const bool in = (q == q_min || w >= lo) && (q == q_max || w < hi);
      band[k] = in ? spec[k] : cplx(0.0);
    }
    fft.to_time(band, shifted);
    for (std::size_t k = 0; k < n; ++k) shifted[k] *= std::polar(1.0, wq * grid.time(k));
    if (decimation == 1) {
      env.push_back(shifted);
      continue;
    }
    fft.to_frequency(shifted, band);
    // band-limited decimation: keep the nc lowest envelope frequencies
    for (std::size_t k = 0; k < nc; ++k) {
      const std::size_t src = k <= nc / 2 ? k : n - (nc - k);
      cbins[k] = band[src];
    }
    cbins[nc / 2] = 0.5 * (band[nc / 2] + band[n - nc / 2]);
    fft_c.to_time(cbins, cenv);
    for (auto& v : cenv) v /= static_cast<double>(decimation);
    env.push_back(cenv);
  }
  return SidebandSet(omega0, omega_m, q_min, coarse, std::move(env));
}

namespace {

std::vector<cplx> upsample(const std::vector<cplx>& coarse, std::size_t n) {
  const std::size_t nc = coarse.size();
  if (nc == n) return coarse;
  Fft fc(nc), ff(n);
  std::vector<cplx> cb(nc), fb(n, cplx(0.0)), out(n);
  fc.to_frequency(coarse, cb);
  for (std::size_t k = 0; k < nc / 2; ++k) fb[k] = cb[k];
  for (std::size_t k = nc / 2 + 1; k < nc; ++k) fb[n - (nc - k)] = cb[k];
  fb[nc / 2] = 0.5 * cb[nc / 2];
  fb[n - nc / 2] = 0.5 * cb[nc / 2];
  ff.to_time(fb, out);
  const double scale = static_cast<double>(n) / static_cast<double>(nc);
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace

AnalyticField synthesize_sidebands(const SidebandSet& set, const TimeGrid& target) {
  std::vector<cplx> out(target.size(), cplx(0.0));
  if (set.is_sampled()) {
    const TimeGrid& g = set.grid();
    const double tol = 1e-9 * target.dt();
    if (std::abs(g.origin() - target.origin()) > tol || std::abs(g.window() - target.window()) > tol * target.size() ||
        target.size() % g.size() != 0)
      throw std::invalid_argument("target grid is not a refinement of the envelope grid");
  }
  for (int q = set.q_min(); q <= set.q_max(); ++q) {
    const double wq = set.omega_q(q);
    if (set.is_sampled()) {
      const auto env = upsample(set.envelope(q), target.size());
      for (std::size_t k = 0; k < target.size(); ++k) out[k] += env[k] * std::polar(1.0, -wq * target.time(k));
    } else {
      const cplx e = set.at(q);
      for (std::size_t k = 0; k < target.size(); ++k) out[k] += e * std::polar(1.0, -wq * target.time(k));
    }
  }
  return AnalyticField(target, std::move(out));
}

}  // namespace ramanbeat
