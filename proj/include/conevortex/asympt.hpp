#pragma once

// Short-wavelength (k·r_c >> 1) closed forms: the image sum for the core
// amplitude, the resulting cross sections, the classical shell and the
// small-η forward limits for a cosmic string.

#include <string>
#include <vector>

#include "conevortex/scattering.hpp"

namespace conevortex::asympt {

using scattering::cdouble;
using scattering::ScatterConfig;

inline constexpr double kMinKrc = 50.0;

/// Image sum over the admissible l for incidence along φ′ = 0.
cdouble fc_short(const ScatterConfig& config, double phi);

struct ShortWaveResult {
  std::vector<double> phi;
  std::vector<double> dsigma;
  std::vector<std::vector<long>> l_list;
  std::vector<bool> valid;
  std::vector<std::string> formula;  // which closed form produced the sample
  std::vector<std::string> reason;   // why an invalid sample was masked
};

/// Cross section per direction. For 0 < η < 1/2 the flux-independent form is
/// used outside the double-image window and the interference form inside it;
/// the semifluxon variant when 2F is an integer. Other η use |fc_short|².
double dsigma_short(const ScatterConfig& config, double phi, std::string* formula = nullptr);
ShortWaveResult dsigma_short(const ScatterConfig& config, const std::vector<double>& phi_grid);

/// Outside-window form ½r_c(1−η)²cos[½(1−η)(φ−π)].
double dsigma_short_outside(const ScatterConfig& config, double phi);
/// Inside-window interference form; φ taken in (−π, π].
double dsigma_short_inside(const ScatterConfig& config, double phi);
/// Flux-independent part of the inside form, r_c(1−η)²cos(½(1−η)φ)sin(½ηπ).
double dsigma_short_inside_mean(const ScatterConfig& config, double phi);
/// Inside form for F = n/2 with the ± sign of the parity of n.
double dsigma_short_semifluxon(const ScatterConfig& config, double phi);
/// Value at φ = 0: 2r_c(1−η)²sin(½ηπ)cos²(πF).
double dsigma_short_forward(const ScatterConfig& config);

/// 2r_c(1−η), flux independent.
double sigma_tot_short(const ScatterConfig& config);

/// ½r_c·sin(φ/2) for 0 < φ < 2π.
double classical_shell(double r_c, double phi);

enum class Parity { Even, Odd };

struct ForwardLimit {
  double value = 0.0;
  bool regime_warning = false;  // l_Pl >= r_H/100
};

/// Forward cross section of a type-I cosmic string at small η = 4l_Pl²/r_H²,
/// spin 0 or 1/2 (`half_spin`).
ForwardLimit cosmic_string_forward(double r_h, double l_pl, Parity parity, bool half_spin);

/// Deficit parameter of the string in the small-η estimate, 4l_Pl²/r_H².
double cosmic_string_eta(double r_h, double l_pl);

}  // namespace conevortex::asympt
