#pragma once

// Scattering of a charged particle by a magnetic vortex of finite thickness
// on a cone: the zero-thickness amplitude f0, the core amplitude f_c as a
// partial-wave sum, and the cross sections built from them.
//
// Every amplitude depends on the flux only through N = floor(F) and
// δ = F − N. N enters as the common factor (−1)^N e^{iNφ}, which is kept
// out of |f|² so that a flux shift by one quantum leaves cross sections
// bit-for-bit unchanged whenever δ is.

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace conevortex::scattering {

using cdouble = std::complex<double>;

enum class Spin { Zero, PlusHalf, MinusHalf };

int spin_sign(Spin spin) noexcept;
const char* to_string(Spin spin) noexcept;

struct PartialWaveSettings {
  double tail_tol = 1e-12;
  /// Hard cap on |n − n0|; 0 selects ceil(4·max(1−η, 1/(1−η))·k·r_c) + 64.
  long n_cap = 0;
  /// Abel regularization parameters in (0, 1), strictly decreasing. Empty
  /// selects a direction-dependent sequence.
  std::vector<double> abel_epsilons;
};

struct ScatterConfig {
  double eta = 0.0;
  double flux_ratio = 0.0;
  Spin spin = Spin::Zero;
  double k = 1.0;
  double r_c = 0.0;
  double xi_c = 0.0;
  PartialWaveSettings truncation;

  void validate() const;
  /// Flux ratio seen by the partial waves: Φ/Φ0 − spin_sign·η/2.
  double effective_flux() const;
  double excess() const { return eta / (1.0 - eta); }
  long mode_cap() const;
};

/// Order of the radial Bessel functions of mode n, |n − F_eff|/(1−η).
double alpha(const ScatterConfig& config, long n);

/// The two directions where f0 diverges, in [0, 2π). Equal when η = 0.
std::vector<double> singular_directions(const ScatterConfig& config);

/// Closed form of the zero-thickness amplitude. Throws PoleSignal on a
/// singular direction. Identically zero for η = 0 at integer flux.
cdouble f0_closed(const ScatterConfig& config, double phi);

/// The divergent mode series of f0, Abel-summed at a sequence of ε and
/// Richardson-extrapolated to ε → 0. Independent of f0_closed.
cdouble f0_series_abel(const ScatterConfig& config, double phi);

/// Radial data (value, d/dr) at ξ_c of the regular interior solution √ξ·κ_n.
struct CoreValue {
  double value = 0.0;
  double derivative = 0.0;
};

using CoreBoundaryData = std::function<CoreValue(long mode)>;

/// (0, 1) for every mode: a wave function vanishing on the core edge.
CoreBoundaryData dirichlet_core();

/// A truncated partial-wave sum Σ c_m e^{imφ}, m = n − N, with the truncation
/// diagnostics. The prefactor −e^{−iπ/4}√(2/(πk)) is not included.
struct ModeSum {
  long m_lo = 0;
  std::vector<cdouble> coeff;  // c_{m_lo}, c_{m_lo+1}, …
  double max_term = 0.0;
  double first_neglected = 0.0;  // largest |c| of the two modes just past the ends
  long iterations = 0;

  long m_hi() const { return m_lo + static_cast<long>(coeff.size()) - 1; }
};

ModeSum dirichlet_modes(const ScatterConfig& config);
ModeSum wronskian_modes(const ScatterConfig& config, const CoreBoundaryData& core);

/// Per-mode ratio W[u, √r J]/W[u, √r H] at r = r_c for interior data (u, u').
/// Throws ResonanceError when the denominator vanishes.
cdouble wronskian_ratio(double order, double k, double r_c, CoreValue core, long mode);

/// Σ c_m e^{imφ} for one direction.
cdouble mode_series(const ModeSum& modes, double phi);

/// Physical amplitudes.
cdouble fc_dirichlet(const ScatterConfig& config, double phi);
cdouble fc_wronskian(const ScatterConfig& config, const CoreBoundaryData& core, double phi);
cdouble total_amplitude(const ScatterConfig& config, double phi);
cdouble total_amplitude(const ScatterConfig& config, const CoreBoundaryData& core, double phi);

/// Grid versions. Entries on singular directions are NaN and listed in `masked`.
struct Amplitude {
  std::vector<double> phi;
  std::vector<cdouble> values;
  std::vector<double> dsigma;
  std::vector<std::string> reason;  // empty string for regular samples
  std::string regime;
  ModeSum modes;  // empty for zero-thickness runs
};

enum class Component { Total, ZeroThickness, Core };

const char* to_string(Component component) noexcept;

Amplitude amplitude_on_grid(const ScatterConfig& config, const std::vector<double>& phi_grid,
                            Component component = Component::Total);

/// |f|² with the factors that drop out of the modulus left out, so flux
/// periodicity, spin equivalence and ξ_c independence hold exactly.
double dsigma_exact(const ScatterConfig& config, double phi);

struct CrossSection {
  std::vector<double> phi;
  std::vector<double> dsigma;
  std::vector<std::string> reason;
  std::string regime;
  std::string formula;
};

/// Long-wavelength cross section |f0|² written as a sum of two pole terms
/// and their interference.
double dsigma_long(const ScatterConfig& config, double phi);
CrossSection dsigma_long(const ScatterConfig& config, const std::vector<double>& phi_grid);

/// The same cross section specialized to F_eff = n/2. Throws DomainError
/// when 2·F_eff is not an integer.
double dsigma_semifluxon(const ScatterConfig& config, double phi);

/// The O(1) part of the scattering solution at (r, φ) for incidence along φ′.
cdouble incident_wave(const ScatterConfig& config, double r, double phi, double phi_prime);

struct TotalCrossSection {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// ∫|f|² dφ by adaptive Gauss-Kronrod quadrature. Throws DivergenceSignal
/// for r_c = 0 and whenever f0 has poles on the circle.
TotalCrossSection sigma_tot_numeric(const ScatterConfig& config);

/// ∫|f_c|² dφ by the same quadrature. Always finite for r_c > 0.
TotalCrossSection sigma_tot_core(const ScatterConfig& config);

/// The same integral from the mode coefficients, (4/k)Σ|c_m|².
double sigma_tot_core_parseval(const ScatterConfig& config);

}  // namespace conevortex::scattering
