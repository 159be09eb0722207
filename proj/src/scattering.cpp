#include "conevortex/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "conevortex/errors.hpp"
#include "conevortex/geometry.hpp"
#include "conevortex/kernels.hpp"
#include "conevortex/specfun.hpp"

namespace conevortex::scattering {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cdouble kI{0.0, 1.0};

// |sin(u/2)| below this marks a singular direction of f0.
constexpr double kPoleGuard = 1e-15;

// Consecutive below-threshold modes required on each side of the sum.
constexpr int kTailRun = 8;
constexpr int kBlock = 16;

struct FluxSplit {
  long whole = 0;     // N = floor(F)
  double frac = 0.0;  // δ = F − N ∈ [0, 1)
};

FluxSplit split_flux(double f) {
  FluxSplit s;
  const double fl = std::floor(f);
  s.whole = static_cast<long>(fl);
  s.frac = f - fl;
  return s;
}

double mode_order(double frac, double eta, long m) {
  return std::abs(static_cast<double>(m) - frac) / (1.0 - eta);
}

bool f0_vanishes(const ScatterConfig& c, const FluxSplit& s) { return c.eta == 0.0 && s.frac == 0.0; }

// (−1)^N e^{iNφ}
cdouble flux_phase(long whole, double phi) {
  const double sign = (whole % 2 == 0) ? 1.0 : -1.0;
  return sign * std::polar(1.0, static_cast<double>(whole) * phi);
}

// f0 without the factor (−1)^N e^{iNφ}.
cdouble f0_reduced(const ScatterConfig& c, const FluxSplit& s, double phi) {
  if (f0_vanishes(c, s)) return 0.0;
  const double q = c.excess();
  const double up = 0.5 * (phi + q * kPi);
  const double dn = 0.5 * (phi - q * kPi);
  const double su = std::sin(up);
  const double sd = std::sin(dn);
  if (std::abs(su) < kPoleGuard) {
    throw PoleSignal("f0 diverges at phi=" + std::to_string(phi), geometry::normalize_angle(-q * kPi));
  }
  if (std::abs(sd) < kPoleGuard) {
    throw PoleSignal("f0 diverges at phi=" + std::to_string(phi), geometry::normalize_angle(q * kPi));
  }
  const double theta = s.frac * (1.0 + q) * kPi;
  const cdouble a = std::polar(1.0, -theta) * (std::cos(up) / su + kI);
  const cdouble b = std::polar(1.0, theta) * (std::cos(dn) / sd + kI);
  const cdouble pref = -std::polar(1.0, 0.25 * kPi) / (2.0 * std::sqrt(kTwoPi * c.k));
  return pref * (a - b);
}

// −e^{−iπ/4}√(2/(πk)); the core amplitude without e^{2ik(r_c−ξ_c)} and the flux phase.
cdouble core_prefactor(double k) { return -std::polar(std::sqrt(2.0 / (kPi * k)), -0.25 * kPi); }

cdouble dirichlet_coefficient(double frac, double eta, double x, long m) {
  const double order = mode_order(frac, eta, m);
  const cdouble ratio = specfun::jh_ratio(order, x);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::polar(1.0, -order * kPi) * ratio;
}

// Walks the modes outward from m0 on both sides until each side has kTailRun
// consecutive terms below tail_tol·(largest term seen).
ModeSum collect_modes(const ScatterConfig& c, const std::function<cdouble(long)>& term) {
  const FluxSplit s = split_flux(c.effective_flux());
  const long m0 = std::lround(s.frac);
  const long cap = c.mode_cap();
  const double tol = c.truncation.tail_tol;

  std::vector<cdouble> up;  // m0, m0+1, …
  std::vector<cdouble> dn;  // m0−1, m0−2, …
  double max_term = 0.0;
  long iterations = 0;

  auto tail_ok = [&](const std::vector<cdouble>& side) {
    if (static_cast<int>(side.size()) < kTailRun) return false;
    for (std::size_t i = side.size() - kTailRun; i < side.size(); ++i) {
      if (std::abs(side[i]) > tol * max_term) return false;
    }
    return true;
  };
  auto extend = [&](std::vector<cdouble>& side, long start, long step) {
    while (!tail_ok(side)) {
      if (static_cast<long>(side.size()) > cap) {
        const double last = side.empty() ? 0.0 : std::abs(side.back());
        throw ConvergenceError("partial-wave sum reached n_cap=" + std::to_string(cap) +
                                   " before the tail criterion; last term " + std::to_string(last),
                               {last, max_term});
      }
      const long first = start + step * static_cast<long>(side.size());
      const auto block = kernels::mode_block_parallel(term, first, step, kBlock);
      for (const cdouble& v : block) {
        side.push_back(v);
        max_term = std::max(max_term, std::abs(v));
      }
      ++iterations;
    }
  };
  // The largest term can show up late on one side; repeat until both tails
  // satisfy the final threshold.
  for (int pass = 0; pass < 4; ++pass) {
    extend(up, m0, 1);
    extend(dn, m0 - 1, -1);
    if (tail_ok(up) && tail_ok(dn)) break;
  }

  // Trim trailing entries that are not needed for the run of kTailRun.
  auto trim = [&](std::vector<cdouble>& side) {
    std::size_t keep = side.size();
    while (keep > static_cast<std::size_t>(kTailRun)) {
      bool ok = true;
      for (std::size_t i = keep - 1 - kTailRun; i < keep - 1; ++i) {
        if (std::abs(side[i]) > tol * max_term) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      --keep;
    }
    side.resize(keep);
  };
  trim(up);
  trim(dn);

  ModeSum out;
  out.m_lo = m0 - static_cast<long>(dn.size());
  out.coeff.reserve(up.size() + dn.size());
  for (auto it = dn.rbegin(); it != dn.rend(); ++it) out.coeff.push_back(*it);
  for (const cdouble& v : up) out.coeff.push_back(v);
  out.max_term = max_term;
  out.iterations = iterations;
  out.first_neglected = std::max(std::abs(term(out.m_hi() + 1)), std::abs(term(out.m_lo - 1)));
  return out;
}

double pole_distance(const ScatterConfig& c, double phi) {
  double d = std::numeric_limits<double>::infinity();
  for (double s : singular_directions(c)) d = std::min(d, 2.0 * std::abs(std::sin(0.5 * (phi - s))));
  return d;
}

// Σ_{j<count} z^{|n_j|} e^{i n_j θ} sin(π α_{n_j}), n_j = n_start + j·dir, with
// α linear in n over the run. Geometric factors are advanced by multiplication
// and reseeded every 256 terms.
cdouble abel_run(long n_start, long count, int dir, double theta, double z, double alpha_start,
                 double alpha_step) {
  cdouble acc = 0.0;
  constexpr long kReseed = 256;
  const cdouble rot = std::polar(z, dir * theta);
  const cdouble arot = std::polar(1.0, kPi * alpha_step);
  cdouble g = 0.0;
  cdouble a = 0.0;
  for (long j = 0; j < count; ++j) {
    if (j % kReseed == 0) {
      const double n = static_cast<double>(n_start + j * dir);
      g = std::polar(std::pow(z, std::abs(n)), n * theta);
      a = std::polar(1.0, kPi * (alpha_start + alpha_step * static_cast<double>(j)));
    }
    acc += g * a.imag();
    g *= rot;
    a *= arot;
  }
  return acc;
}

// Abel sum of Σ_n e^{inθ} sin(α_n π) at a fixed z, for a flux F. The range
// |n| <= m is cut at n = 0 and n = ceil(F) so that |n| is monotone and α_n
// linear on every piece.
cdouble abel_sum(double eta, double f, double theta, double z) {
  const double inv = 1.0 / (1.0 - eta);
  const long m = static_cast<long>(std::ceil(std::log(1e-18) / std::log(z)));
  const long split = static_cast<long>(std::ceil(f));
  std::vector<long> cuts{-m, m + 1};
  for (long c : {0L, split}) {
    if (c > -m && c <= m) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto order = [&](long n) {
    return n >= split ? (static_cast<double>(n) - f) * inv : (f - static_cast<double>(n)) * inv;
  };
  cdouble acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const long a = cuts[i];
    const long b = cuts[i + 1] - 1;
    const double slope = a >= split ? inv : -inv;
    if (a >= 0) {
      acc += abel_run(a, b - a + 1, 1, theta, z, order(a), slope);
    } else {
      acc += abel_run(b, b - a + 1, -1, theta, z, order(b), -slope);
    }
  }
  return acc;
}

// Neville's scheme for the value at 0 of the polynomial through (x_i, y_i).
std::vector<cdouble> neville_diagonal(const std::vector<double>& x, const std::vector<cdouble>& y) {
  std::vector<cdouble> p = y;
  std::vector<cdouble> diag{p[0]};
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double xi = x[i];
      const double xj = x[i + level];
      p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
    }
    diag.push_back(p[0]);
  }
  return diag;
}

}  // namespace

int spin_sign(Spin spin) noexcept {
  switch (spin) {
    case Spin::Zero: return 0;
    case Spin::PlusHalf: return 1;
    case Spin::MinusHalf: return -1;
  }
  return 0;
}

const char* to_string(Spin spin) noexcept {
  switch (spin) {
    case Spin::Zero: return "0";
    case Spin::PlusHalf: return "+1/2";
    case Spin::MinusHalf: return "-1/2";
  }
  return "?";
}

const char* to_string(Component component) noexcept {
  switch (component) {
    case Component::Total: return "total";
    case Component::ZeroThickness: return "f0";
    case Component::Core: return "fc";
  }
  return "?";
}

void ScatterConfig::validate() const {
  if (!std::isfinite(eta) || !(eta < 1.0)) throw DomainError("eta must satisfy eta < 1, got " + std::to_string(eta));
  if (!std::isfinite(flux_ratio)) throw DomainError("flux_ratio must be finite");
  if (std::abs(flux_ratio) > 1e6) throw DomainError("flux_ratio magnitude above 1e6 is not supported");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be positive, got " + std::to_string(k));
  if (!(r_c >= 0.0) || !std::isfinite(r_c)) throw DomainError("r_c must be non-negative");
  if (!(xi_c >= 0.0) || !std::isfinite(xi_c)) throw DomainError("xi_c must be non-negative");
  const PartialWaveSettings& t = truncation;
  if (!(t.tail_tol > 0.0) || !(t.tail_tol <= 1e-10)) throw DomainError("tail_tol must lie in (0, 1e-10]");
  if (t.n_cap != 0) {
    const double need = 4.0 * k * r_c / (1.0 - eta) + 64.0;
    if (static_cast<double>(t.n_cap) < need) {
      throw DomainError("n_cap must be at least 4·k·r_c/(1−eta) + 64 = " + std::to_string(need));
    }
  }
  if (!t.abel_epsilons.empty()) {
    if (t.abel_epsilons.size() < 2) throw DomainError("abel_epsilons needs at least two entries");
    for (std::size_t i = 0; i < t.abel_epsilons.size(); ++i) {
      const double e = t.abel_epsilons[i];
      if (!(e > 0.0 && e < 1.0)) throw DomainError("abel_epsilons entries must lie in (0, 1)");
      if (i > 0 && !(e < t.abel_epsilons[i - 1])) throw DomainError("abel_epsilons must be strictly decreasing");
    }
  }
  if (k * r_c > specfun::kMaxArgument) throw DomainError("k·r_c above 5000 is outside the Bessel kernel range");
}

double ScatterConfig::effective_flux() const { return flux_ratio - 0.5 * spin_sign(spin) * eta; }

long ScatterConfig::mode_cap() const {
  if (truncation.n_cap > 0) return truncation.n_cap;
  const double stretch = std::max(1.0 - eta, 1.0 / (1.0 - eta));
  return static_cast<long>(std::ceil(4.0 * stretch * k * r_c)) + 64;
}

double alpha(const ScatterConfig& config, long n) {
  config.validate();
  const FluxSplit s = split_flux(config.effective_flux());
  return mode_order(s.frac, config.eta, n - s.whole);
}

std::vector<double> singular_directions(const ScatterConfig& config) {
  const double w = config.excess() * kPi;
  return {geometry::normalize_angle(w), geometry::normalize_angle(-w)};
}

cdouble f0_closed(const ScatterConfig& config, double phi) {
  config.validate();
  const FluxSplit s = split_flux(config.effective_flux());
  return flux_phase(s.whole, phi) * f0_reduced(config, s, phi);
}

cdouble f0_series_abel(const ScatterConfig& config, double phi) {
  config.validate();
  const double f = config.effective_flux();
  const FluxSplit s = split_flux(f);
  if (f0_vanishes(config, s)) return 0.0;
  const double d = pole_distance(config, phi);
  if (d < kPoleGuard) {
    throw PoleSignal("f0 series diverges at phi=" + std::to_string(phi), geometry::normalize_angle(phi));
  }
  std::vector<double> eps = config.truncation.abel_epsilons;
  if (eps.empty()) {
    double e0 = std::min(0.1, 0.25 * d);
    for (int i = 0; i < 8; ++i) eps.push_back(e0 * std::ldexp(1.0, -i));
  }
  const double theta = phi - kPi;
  std::vector<cdouble> sums;
  sums.reserve(eps.size());
  for (double e : eps) sums.push_back(abel_sum(config.eta, f, theta, 1.0 - e));
  const auto diag = neville_diagonal(eps, sums);
  const cdouble best = diag.back();
  const cdouble prev = diag[diag.size() - 2];
  // Zeros of f0 are judged against the natural amplitude scale.
  const double floor = 1e-3 / std::sqrt(2.0 * kPi * config.k);
  if (std::abs(best - prev) > 1e-6 * std::max(std::abs(best), floor)) {
    std::vector<double> hist;
    for (const cdouble& v : diag) hist.push_back(std::abs(v));
    throw ConvergenceError("Abel extrapolation did not settle at phi=" + std::to_string(phi), hist);
  }
  const cdouble pref = -std::polar(1.0, 0.25 * kPi) / std::sqrt(kTwoPi * config.k);
  return pref * best;
}

CoreBoundaryData dirichlet_core() {
  return [](long) { return CoreValue{0.0, 1.0}; };
}

cdouble wronskian_ratio(double order, double k, double r_c, CoreValue core, long mode) {
  if (core.value == 0.0 && core.derivative == 0.0) {
    throw DomainError("core boundary data for mode " + std::to_string(mode) + " is identically zero");
  }
  const double x = k * r_c;
  const specfun::BesselJY jy = specfun::bessel_jy(order, x);
  const double sr = std::sqrt(r_c);
  auto w = [&](const specfun::ScaledPair& p) {
    return core.value * (sr * k * p.derivative + p.value / (2.0 * sr)) - core.derivative * sr * p.value;
  };
  const double wj = w(jy.j);
  const double wy = w(jy.y);
  if (!std::isfinite(wj) || !std::isfinite(wy) || (wj == 0.0 && wy == 0.0)) {
    throw ResonanceError("vanishing Wronskian denominator for mode " + std::to_string(mode), mode);
  }
  if (wj == 0.0) return 0.0;
  int ej = 0;
  int ey = 0;
  const double mj = std::frexp(wj, &ej);
  const double my = std::frexp(wy, &ey);
  // t = W_Y/W_J = (my/mj)·2^e; the ratio is 1/(1 + i t).
  const long e = (jy.y.exp2 + ey) - (jy.j.exp2 + ej);
  if (wy == 0.0) return 1.0;
  if (e <= 0) {
    const double t = std::ldexp(my / mj, static_cast<int>(std::max(e, -2000L)));
    return cdouble(1.0, -t) / (1.0 + t * t);
  }
  const double sm = std::ldexp(mj / my, static_cast<int>(std::max(-e, -2000L)));
  return cdouble(sm * sm, -sm) / (1.0 + sm * sm);
}

ModeSum dirichlet_modes(const ScatterConfig& config) {
  config.validate();
  if (!(config.r_c > 0.0)) throw DomainError("the core amplitude needs r_c > 0");
  const FluxSplit s = split_flux(config.effective_flux());
  const double x = config.k * config.r_c;
  const double eta = config.eta;
  return collect_modes(config, [=](long m) { return dirichlet_coefficient(s.frac, eta, x, m); });
}

ModeSum wronskian_modes(const ScatterConfig& config, const CoreBoundaryData& core) {
  config.validate();
  if (!(config.r_c > 0.0)) throw DomainError("the core amplitude needs r_c > 0");
  if (!core) throw DomainError("core boundary data is empty");
  const FluxSplit s = split_flux(config.effective_flux());
  const double k = config.k;
  const double rc = config.r_c;
  const double eta = config.eta;
  return collect_modes(config, [=, &core](long m) {
    const double order = mode_order(s.frac, eta, m);
    const long n = m + s.whole;
    const cdouble ratio = wronskian_ratio(order, k, rc, core(n), n);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * std::polar(1.0, -order * kPi) * ratio;
  });
}

cdouble mode_series(const ModeSum& modes, double phi) {
  return kernels::mode_series_serial(modes.coeff, modes.m_lo, {phi}).front();
}

namespace {

cdouble core_amplitude(const ScatterConfig& c, const ModeSum& modes, double phi) {
  const FluxSplit s = split_flux(c.effective_flux());
  const cdouble phase = std::polar(1.0, 2.0 * c.k * (c.r_c - c.xi_c));
  return flux_phase(s.whole, phi) * phase * core_prefactor(c.k) * mode_series(modes, phi);
}

cdouble total_from_modes(const ScatterConfig& c, const ModeSum* modes, double phi) {
  const FluxSplit s = split_flux(c.effective_flux());
  cdouble inner = f0_reduced(c, s, phi);
  if (modes) inner += core_prefactor(c.k) * mode_series(*modes, phi);
  const cdouble phase = std::polar(1.0, 2.0 * c.k * (c.r_c - c.xi_c));
  return flux_phase(s.whole, phi) * phase * inner;
}

}  // namespace

cdouble fc_dirichlet(const ScatterConfig& config, double phi) {
  const ModeSum modes = dirichlet_modes(config);
  return core_amplitude(config, modes, phi);
}

cdouble fc_wronskian(const ScatterConfig& config, const CoreBoundaryData& core, double phi) {
  const ModeSum modes = wronskian_modes(config, core);
  return core_amplitude(config, modes, phi);
}

cdouble total_amplitude(const ScatterConfig& config, double phi) {
  config.validate();
  if (config.r_c > 0.0) {
    const ModeSum modes = dirichlet_modes(config);
    return total_from_modes(config, &modes, phi);
  }
  return total_from_modes(config, nullptr, phi);
}

cdouble total_amplitude(const ScatterConfig& config, const CoreBoundaryData& core, double phi) {
  config.validate();
  if (config.r_c > 0.0) {
    const ModeSum modes = wronskian_modes(config, core);
    return total_from_modes(config, &modes, phi);
  }
  return total_from_modes(config, nullptr, phi);
}

double dsigma_exact(const ScatterConfig& config, double phi) {
  config.validate();
  const FluxSplit s = split_flux(config.effective_flux());
  cdouble inner = f0_reduced(config, s, phi);
  if (config.r_c > 0.0) inner += core_prefactor(config.k) * mode_series(dirichlet_modes(config), phi);
  return std::norm(inner);
}

Amplitude amplitude_on_grid(const ScatterConfig& config, const std::vector<double>& phi_grid,
                            Component component) {
  config.validate();
  const FluxSplit s = split_flux(config.effective_flux());
  Amplitude out;
  out.phi = phi_grid;
  out.regime = "exact";
  const std::size_t n = phi_grid.size();
  out.values.assign(n, 0.0);
  out.dsigma.assign(n, 0.0);
  out.reason.assign(n, "");

  std::vector<cdouble> core(n, 0.0);
  if (component != Component::ZeroThickness && config.r_c > 0.0) {
    out.modes = dirichlet_modes(config);
    const auto sums = kernels::mode_series_parallel(out.modes.coeff, out.modes.m_lo, phi_grid);
    const cdouble pref = core_prefactor(config.k);
    for (std::size_t j = 0; j < n; ++j) core[j] = pref * sums[j];
  }
  const cdouble phase = std::polar(1.0, 2.0 * config.k * (config.r_c - config.xi_c));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t j = 0; j < n; ++j) {
    cdouble inner = core[j];
    if (component != Component::Core) {
      try {
        inner += f0_reduced(config, s, phi_grid[j]);
      } catch (const PoleSignal&) {
        out.values[j] = {nan, nan};
        out.dsigma[j] = nan;
        out.reason[j] = "pole";
        continue;
      }
    }
    out.values[j] = flux_phase(s.whole, phi_grid[j]) * phase * inner;
    out.dsigma[j] = std::norm(inner);
  }
  return out;
}

double dsigma_long(const ScatterConfig& config, double phi) {
  config.validate();
  const FluxSplit s = split_flux(config.effective_flux());
  if (f0_vanishes(config, s)) return 0.0;
  const double q = config.excess();
  const double sp = std::sin(0.5 * (phi + q * kPi));
  const double sm = std::sin(0.5 * (phi - q * kPi));
  if (std::abs(sp) < kPoleGuard) {
    throw PoleSignal("cross section diverges at phi=" + std::to_string(phi), geometry::normalize_angle(-q * kPi));
  }
  if (std::abs(sm) < kPoleGuard) {
    throw PoleSignal("cross section diverges at phi=" + std::to_string(phi), geometry::normalize_angle(q * kPi));
  }
  // [2F − (2N+1)η]π/(1−η) = 2Nπ + (2δ − η)π/(1−η)
  const double c = std::cos((2.0 * s.frac - config.eta) * kPi / (1.0 - config.eta));
  return (0.5 / (sp * sp) + 0.5 / (sm * sm) - c / (sp * sm)) / (4.0 * kPi * config.k);
}

CrossSection dsigma_long(const ScatterConfig& config, const std::vector<double>& phi_grid) {
  CrossSection out;
  out.phi = phi_grid;
  out.regime = "long-wavelength";
  out.formula = "|f0|^2 pole-pair form";
  out.dsigma.resize(phi_grid.size());
  out.reason.assign(phi_grid.size(), "");
  for (std::size_t j = 0; j < phi_grid.size(); ++j) {
    try {
      out.dsigma[j] = dsigma_long(config, phi_grid[j]);
    } catch (const PoleSignal&) {
      out.dsigma[j] = std::numeric_limits<double>::quiet_NaN();
      out.reason[j] = "pole";
    }
  }
  return out;
}

double dsigma_semifluxon(const ScatterConfig& config, double phi) {
  config.validate();
  const double two_f = 2.0 * config.effective_flux();
  if (two_f != std::round(two_f)) {
    throw DomainError("semifluxon form needs an integer or half-integer effective flux");
  }
  const bool even = std::fmod(std::abs(std::round(two_f)), 2.0) == 0.0;
  const double q = config.excess();
  if (config.eta == 0.0 && even) return 0.0;
  const double sh = std::sin(0.5 * q * kPi);
  const double sp = std::sin(0.5 * phi);
  const double den = sh * sh - sp * sp;
  if (std::abs(den) < kPoleGuard) {
    throw PoleSignal("cross section diverges at phi=" + std::to_string(phi), geometry::normalize_angle(phi));
  }
  if (even) {
    const double s2 = std::sin(q * kPi);
    return s2 * s2 / (den * den) / (8.0 * kPi * config.k);
  }
  const double ch = std::cos(0.5 * q * kPi);
  return sp * sp * ch * ch / (den * den) / (2.0 * kPi * config.k);
}

cdouble incident_wave(const ScatterConfig& config, double r, double phi, double phi_prime) {
  config.validate();
  if (!(r > 0.0)) throw DomainError("incident wave needs r > 0");
  const geometry::ConeGeometry geom{config.eta};
  const auto ls = geometry::l_range(geom, phi, phi_prime, geometry::LRange::Incident);
  const double f = config.effective_flux();
  const double base = geometry::normalize_angle(phi) - geometry::normalize_angle(phi_prime) - kPi;
  cdouble acc = 0.0;
  for (long l : ls) {
    const double th = base + kTwoPi * static_cast<double>(l);
    acc += std::polar(1.0, -config.k * r * std::cos((1.0 - config.eta) * th) + f * th);
  }
  return acc / kTwoPi;
}

namespace {

TotalCrossSection integrate_core(const ScatterConfig& c, const ModeSum& modes) {
  using boost::math::quadrature::gauss_kronrod;
  const cdouble pref = core_prefactor(c.k);
  auto integrand = [&](double phi) { return std::norm(pref * mode_series(modes, phi)); };
  const long span = std::max(std::abs(modes.m_lo), std::abs(modes.m_hi()));
  const int panels = static_cast<int>(std::max(16L, span / 4 + 8));
  TotalCrossSection out;
  const double h = kTwoPi / panels;
  for (int p = 0; p < panels; ++p) {
    double err = 0.0;
    out.value += gauss_kronrod<double, 61>::integrate(integrand, p * h, (p + 1) * h, 8, 1e-12, &err);
    out.error_estimate += err;
  }
  return out;
}

}  // namespace

TotalCrossSection sigma_tot_numeric(const ScatterConfig& config) {
  config.validate();
  if (!(config.r_c > 0.0)) {
    throw DivergenceSignal("total cross section is infinite for a zero-thickness vortex");
  }
  const FluxSplit s = split_flux(config.effective_flux());
  if (!f0_vanishes(config, s)) {
    const auto dirs = singular_directions(config);
    throw DivergenceSignal("|f|^2 has non-integrable poles at phi=" + std::to_string(dirs[0]) + " and " +
                           std::to_string(dirs[1]));
  }
  return integrate_core(config, dirichlet_modes(config));
}

TotalCrossSection sigma_tot_core(const ScatterConfig& config) {
  config.validate();
  return integrate_core(config, dirichlet_modes(config));
}

double sigma_tot_core_parseval(const ScatterConfig& config) {
  const ModeSum modes = dirichlet_modes(config);
  double acc = 0.0;
  for (const cdouble& c : modes.coeff) acc += std::norm(c);
  return 4.0 / config.k * acc;
}

}  // namespace conevortex::scattering
