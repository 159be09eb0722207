#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace support {

inline constexpr double kPi = std::numbers::pi;

inline double rel_err(double got, double want, double floor = 0.0) {
  const double den = std::max(std::abs(want), floor);
  if (den == 0.0) return std::abs(got);
  return std::abs(got - want) / den;
}

inline double rel_err(std::complex<double> got, std::complex<double> want, double floor = 0.0) {
  const double den = std::max(std::abs(want), floor);
  if (den == 0.0) return std::abs(got);
  return std::abs(got - want) / den;
}

// splitmix64; deterministic draws for the property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  long integer(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  // Dyadic rational in [lo, hi) with `bits` fractional bits; exact in binary.
  double dyadic(double lo, double hi, int bits) {
    const double scale = std::ldexp(1.0, bits);
    return std::floor(uniform(lo, hi) * scale) / scale;
  }

 private:
  std::uint64_t s_;
};

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = (i == n - 1) ? b : a + (b - a) * i / (n - 1);
  return out;
}

inline std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> out = linspace(std::log(a), std::log(b), n);
  for (double& v : out) v = std::exp(v);
  return out;
}

// J_ν(x) from the ascending series, summed in long double.
inline long double series_j(long double nu, long double x, int terms = 40) {
  const long double h = x / 2;
  long double term = std::pow(h, nu) / std::tgamma(nu + 1);
  long double sum = term;
  for (int k = 1; k < terms; ++k) {
    term *= -h * h / (k * (k + nu));
    sum += term;
  }
  return sum;
}

// Y_ν(x) for non-integer ν by the reflection formula on two series values.
inline long double series_y(long double nu, long double x, int terms = 40) {
  const long double pi = std::numbers::pi_v<long double>;
  const long double jp = series_j(nu, x, terms);
  long double h = x / 2;
  long double term = std::pow(h, -nu) / std::tgamma(1 - nu);
  long double jm = term;
  for (int k = 1; k < terms; ++k) {
    term *= -h * h / (k * (k - nu));
    jm += term;
  }
  return (jp * std::cos(nu * pi) - jm) / std::sin(nu * pi);
}

// Half-integer orders from the spherical Bessel recurrences, long double.
inline void half_integer_jy(int l, long double x, long double& j, long double& y) {
  const long double pre = std::sqrt(2 / (std::numbers::pi_v<long double> * x));
  long double j0 = std::sin(x), j1 = std::sin(x) / x - std::cos(x);
  long double y0 = -std::cos(x), y1 = -std::cos(x) / x - std::sin(x);
  if (l == 0) {
    j = pre * j0;
    y = pre * y0;
    return;
  }
  for (int k = 1; k < l; ++k) {
    const long double j2 = (2 * k + 1) / x * j1 - j0;
    const long double y2 = (2 * k + 1) / x * y1 - y0;
    j0 = j1;
    j1 = j2;
    y0 = y1;
    y1 = y2;
  }
  j = pre * j1;
  y = pre * y1;
}

}  // namespace support
