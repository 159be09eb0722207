#pragma once

// Radial profiles of the Abelian-Higgs vortex: Higgs modulus τ_H(r) and gauge
// profile τ_A(r), with A_φ = (n/e_H)·τ_A². Code units ħ = c = 1.

#include <vector>

namespace conevortex::vortex {

struct VortexParams {
  double m_H = 1.0;
  double m_A = 1.0;
  double sigma = 1.0;
  int winding = 1;
  double e_H = 1.0;

  /// e_H follows from m_A = e_H·σ.
  static VortexParams from_masses(double m_H, double m_A, double sigma, int winding);

  void validate() const;
  double kappa() const { return m_H / m_A; }
  /// Quartic coupling from m_H² = (λ/2)σ².
  double lambda() const { return 2.0 * (m_H / sigma) * (m_H / sigma); }
};

/// Radial grid r = c·(e^s − 1) on uniform s, c = 1/max(m_H, m_A).
struct GridSpec {
  double r_max = 0.0;   // 0 selects 25·max(1/m_H, 1/m_A)
  int intervals = 4000;  // must be even

  double resolved_r_max(const VortexParams& params) const;
};

struct SolverSettings {
  double tol = 1e-9;
  int max_iterations = 100;
  /// Largest ratio between successive κ values on the continuation path.
  double kappa_step = 1.25;
};

struct VortexProfiles {
  std::vector<double> grid;
  std::vector<double> tau_H;
  std::vector<double> tau_A;
  std::vector<double> tau_A_sq;
  bool converged = false;
  double residual_norm = 0.0;
  /// Residuals of the Newton iterations at the target κ.
  std::vector<double> residual_history;
  int continuation_steps = 0;  // Newton solves, the self-dual start included
  double scale = 1.0;  // c
  double step = 0.0;   // h
};

struct VortexObservables {
  double mu = 0.0;
  double mu_error = 0.0;
  double flux = 0.0;
  double r_H = 0.0;
  double r_A = 0.0;
  double r_c = 0.0;
  double I_H = 0.0;
  double I_A = 0.0;
  double eta = 0.0;
};

/// Damped Newton with continuation in κ from the self-dual point κ = 1 at
/// fixed m_A. Throws ConvergenceError with the residual history on failure.
VortexProfiles solve_profiles(const VortexParams& params, const GridSpec& grid = {},
                              const SolverSettings& settings = {});

/// Max-norm residual of the discrete field equations, divided by max(m)².
double residual_norm(const VortexParams& params, const VortexProfiles& profiles);

/// Residual of the field equations evaluated on an arbitrary increasing grid
/// by centred differences of the supplied samples (interior points only).
double residual_on_samples(const VortexParams& params, const std::vector<double>& r,
                           const std::vector<double>& tau_h, const std::vector<double>& tau_a);

/// μ, flux, core radii and η = 4Gμ.
VortexObservables observables(const VortexParams& params, const VortexProfiles& profiles, double G = 0.0);

/// T00(r) on the grid from the divergence form of the energy density.
std::vector<double> stress_energy_profile(const VortexParams& params, const VortexProfiles& profiles);

/// T00(r) from the manifestly positive sum-of-squares form.
std::vector<double> stress_energy_squares(const VortexParams& params, const VortexProfiles& profiles);

/// 2π∫T00 r dr.
double integrate_energy(const VortexProfiles& profiles, const std::vector<double>& t00);

/// B³(r) = (n/e_H)·(τ_A²)'/r on the grid.
std::vector<double> field_strength(const VortexParams& params, const VortexProfiles& profiles);

}  // namespace conevortex::vortex
