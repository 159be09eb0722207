#pragma once

// Bessel functions J_ν, Y_ν of real order ν >= 0 and real argument x > 0.
//
// All routines share one evaluation: Temme's series for Y_μ, |μ| <= 1/2, when
// x < 2, Steed's continued fractions CF1/CF2 when x >= 2, joined to the
// requested order by the stable recurrences (downward for J, upward for Y).
// The recurrences carry a separate base-2 exponent, so values far outside the
// double range (J_ν(x) for ν >> x) are still available in scaled form. That
// is what jh_ratio relies on.

#include <complex>

namespace conevortex::specfun {

struct SpecFunAccuracy {
  double rel_tol = 1e-16;
  int max_terms = 10000;

  void validate() const;
};

inline constexpr double kMaxOrder = 5000.0;
inline constexpr double kMaxArgument = 5000.0;

/// A function value and its derivative sharing one binary exponent:
/// F = value·2^exp2, F' = derivative·2^exp2.
struct ScaledPair {
  double value = 0.0;
  double derivative = 0.0;
  long exp2 = 0;

  double unscaled_value() const;
  double unscaled_derivative() const;
  /// log|F|; -inf for an exact zero.
  double log_abs() const;
};

struct BesselJY {
  ScaledPair j;
  ScaledPair y;
};

/// J_ν, J'_ν, Y_ν, Y'_ν in scaled form. Throws DomainError for ν < 0 or
/// x <= 0, RangeError outside the supported box ν, x <= 5000.
BesselJY bessel_jy(double nu, double x, const SpecFunAccuracy& acc = {});

/// J_ν(x). Values below the double range underflow to zero.
double bessel_j(double nu, double x, const SpecFunAccuracy& acc = {});

/// Y_ν(x). Values beyond the double range (x -> 0, ν >> x) raise RangeError.
double bessel_y(double nu, double x, const SpecFunAccuracy& acc = {});

/// J_ν(x) / H^(1)_ν(x) = 1 / (1 + i·Y_ν/J_ν), evaluated from the scaled pair
/// so that the super-exponentially small ratios of ν >> x survive. |result| <= 1.
std::complex<double> jh_ratio(double nu, double x, const SpecFunAccuracy& acc = {});

/// log|J_ν(x)/H^(1)_ν(x)|, finite even where jh_ratio underflows.
double log_abs_jh_ratio(double nu, double x, const SpecFunAccuracy& acc = {});

/// jh_ratio computed from an already evaluated pair.
std::complex<double> jh_ratio(const BesselJY& jy);
double log_abs_jh_ratio(const BesselJY& jy);

}  // namespace conevortex::specfun
