#include "conevortex/asympt.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "conevortex/errors.hpp"
#include "conevortex/geometry.hpp"

namespace conevortex::asympt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_short(const ScatterConfig& c) {
  c.validate();
  if (!(c.k * c.r_c >= kMinKrc)) {
    throw DomainError("short-wavelength forms need k·r_c >= 50, got " + std::to_string(c.k * c.r_c));
  }
}

bool semifluxon(const ScatterConfig& c) {
  const double two_f = 2.0 * c.effective_flux();
  return two_f == std::round(two_f);
}

}  // namespace

cdouble fc_short(const ScatterConfig& config, double phi) {
  check_short(config);
  const geometry::ConeGeometry geom{config.eta};
  geometry::scattering_angle(geom);
  const auto ls = geometry::l_range(geom, phi, 0.0, geometry::LRange::Shortwave);
  const double f = config.effective_flux();
  const double kr = config.k * config.r_c;
  const double base = geometry::normalize_angle(phi) - kPi;
  cdouble acc = 0.0;
  for (long l : ls) {
    const double th = base + kTwoPi * static_cast<double>(l);
    const double c = std::cos(0.5 * (1.0 - config.eta) * th);
    if (c < 0.0) throw DegenerateGeometry("image term with a negative square-root argument at phi=" + std::to_string(phi));
    acc += std::polar(std::sqrt(c), f * th - 2.0 * kr * c);
  }
  const cdouble phase = std::polar(1.0, 2.0 * config.k * (config.r_c - config.xi_c));
  return -phase * (1.0 - config.eta) * std::sqrt(0.5 * config.r_c) * acc;
}

double dsigma_short_outside(const ScatterConfig& config, double phi) {
  const double e = 1.0 - config.eta;
  return 0.5 * config.r_c * e * e * std::cos(0.5 * e * (geometry::normalize_angle(phi) - kPi));
}

double dsigma_short_inside_mean(const ScatterConfig& config, double phi) {
  const double e = 1.0 - config.eta;
  const double p = geometry::centered_angle(phi);
  return config.r_c * e * e * std::cos(0.5 * e * p) * std::sin(0.5 * config.eta * kPi);
}

double dsigma_short_inside(const ScatterConfig& config, double phi) {
  const double e = 1.0 - config.eta;
  const double p = geometry::centered_angle(phi);
  const double sh = std::sin(0.5 * config.eta * kPi);
  const double sp = std::sin(0.5 * e * p);
  const double root = std::sqrt(std::max(0.0, sh * sh - sp * sp));
  const double kr = config.k * config.r_c;
  const double fringe =
      std::cos(kTwoPi * config.effective_flux() + 4.0 * kr * sp * std::cos(0.5 * config.eta * kPi));
  return config.r_c * e * e * (std::cos(0.5 * e * p) * sh + root * fringe);
}

double dsigma_short_semifluxon(const ScatterConfig& config, double phi) {
  if (!semifluxon(config)) throw DomainError("semifluxon form needs 2·F to be an integer");
  const long n = std::lround(2.0 * config.effective_flux());
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double e = 1.0 - config.eta;
  const double p = geometry::centered_angle(phi);
  const double sh = std::sin(0.5 * config.eta * kPi);
  const double sp = std::sin(0.5 * e * p);
  const double root = std::sqrt(std::max(0.0, sh * sh - sp * sp));
  const double kr = config.k * config.r_c;
  const double fringe = std::cos(4.0 * kr * sp * std::cos(0.5 * config.eta * kPi));
  return config.r_c * e * e * (std::cos(0.5 * e * p) * sh + sign * root * fringe);
}

double dsigma_short_forward(const ScatterConfig& config) {
  const double e = 1.0 - config.eta;
  const double c = std::cos(kPi * config.effective_flux());
  return 2.0 * config.r_c * e * e * std::sin(0.5 * config.eta * kPi) * c * c;
}

double dsigma_short(const ScatterConfig& config, double phi, std::string* formula) {
  check_short(config);
  const geometry::ConeGeometry geom{config.eta};
  const bool closed_band = config.eta > 0.0 && config.eta < 0.5;
  if (!closed_band) {
    if (formula) *formula = "image-sum";
    return std::norm(fc_short(config, phi));
  }
  // Validates the direction against the window boundary.
  geometry::l_range(geom, phi, 0.0, geometry::LRange::Shortwave);
  if (geometry::inside_region(geom, phi)) {
    if (semifluxon(config)) {
      if (formula) *formula = "double-image-semifluxon";
      return dsigma_short_semifluxon(config, phi);
    }
    if (formula) *formula = "double-image";
    return dsigma_short_inside(config, phi);
  }
  if (formula) *formula = "single-image";
  return dsigma_short_outside(config, phi);
}

ShortWaveResult dsigma_short(const ScatterConfig& config, const std::vector<double>& phi_grid) {
  check_short(config);
  const geometry::ConeGeometry geom{config.eta};
  geometry::scattering_angle(geom);
  ShortWaveResult out;
  out.phi = phi_grid;
  const std::size_t n = phi_grid.size();
  out.dsigma.assign(n, std::numeric_limits<double>::quiet_NaN());
  out.l_list.assign(n, {});
  out.valid.assign(n, false);
  out.formula.assign(n, "");
  out.reason.assign(n, "");
  for (std::size_t j = 0; j < n; ++j) {
    try {
      out.l_list[j] = geometry::l_range(geom, phi_grid[j], 0.0, geometry::LRange::Shortwave);
      out.dsigma[j] = dsigma_short(config, phi_grid[j], &out.formula[j]);
      out.valid[j] = true;
    } catch (const DegenerateGeometry&) {
      out.reason[j] = "region-boundary";
    }
  }
  return out;
}

double sigma_tot_short(const ScatterConfig& config) {
  check_short(config);
  return 2.0 * config.r_c * (1.0 - config.eta);
}

double classical_shell(double r_c, double phi) {
  if (!(r_c >= 0.0)) throw DomainError("r_c must be non-negative");
  if (!(phi > 0.0 && phi < kTwoPi)) {
    throw DegenerateGeometry("classical shell cross section is defined for 0 < phi < 2pi");
  }
  return 0.5 * r_c * std::sin(0.5 * phi);
}

double cosmic_string_eta(double r_h, double l_pl) { return 4.0 * l_pl * l_pl / (r_h * r_h); }

ForwardLimit cosmic_string_forward(double r_h, double l_pl, Parity parity, bool half_spin) {
  if (!(r_h > 0.0) || !(l_pl > 0.0)) throw DomainError("r_H and l_Pl must be positive");
  ForwardLimit out;
  out.regime_warning = l_pl >= 0.01 * r_h;
  if (parity == Parity::Even) {
    out.value = 4.0 * kPi * l_pl * l_pl / r_h;
  } else if (half_spin) {
    out.value = 16.0 * kPi * kPi * kPi * std::pow(l_pl, 6) / std::pow(r_h, 5);
  } else {
    out.value = 0.0;
  }
  return out;
}

}  // namespace conevortex::asympt
