#include "conevortex/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "conevortex/errors.hpp"

namespace conevortex::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFpMin = 1e-300;
// Recurrence values are renormalized whenever they exceed 2^kRescaleBits.
constexpr int kRescaleBits = 600;
const double kRescaleHi = std::ldexp(1.0, kRescaleBits);
const double kRescaleLo = std::ldexp(1.0, -kRescaleBits);

// Taylor coefficients of 1/Γ(z) about z = 0: 1/Γ(z) = Σ_{k>=1} c_k z^k.
constexpr double kRecipGamma[] = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
};

struct TemmeGammas {
  double gam1;   // (1/Γ(1-μ) - 1/Γ(1+μ)) / (2μ)
  double gam2;   // (1/Γ(1-μ) + 1/Γ(1+μ)) / 2
  double gampl;  // 1/Γ(1+μ)
  double gammi;  // 1/Γ(1-μ)
};

// |μ| <= 1/2. The even/odd split of the 1/Γ series gives gam1 without the
// cancellation of the defining difference quotient.
TemmeGammas temme_gammas(double mu) {
  constexpr int n = sizeof(kRecipGamma) / sizeof(kRecipGamma[0]);
  const double mu2 = mu * mu;
  double g1 = 0.0;
  double g2 = 0.0;
  // 1/Γ(1+z) = Σ_{j>=0} c_{j+1} z^j, c_{j+1} = kRecipGamma[j].
  for (int j = n - 1; j >= 0; --j) {
    if (j % 2 == 0) {
      g2 = g2 * mu2 + kRecipGamma[j];
    } else {
      g1 = g1 * mu2 + kRecipGamma[j];
    }
  }
  TemmeGammas g{};
  g.gam1 = -g1;
  g.gam2 = g2;
  g.gampl = g.gam2 - mu * g.gam1;
  g.gammi = g.gam2 + mu * g.gam1;
  return g;
}

void check_arguments(double nu, double x) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    std::ostringstream os;
    os << "Bessel order must be finite and >= 0 (got " << nu << ")";
    throw DomainError(os.str());
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "Bessel argument must be finite and > 0 (got " << x << ")";
    throw DomainError(os.str());
  }
  if (nu > kMaxOrder || x > kMaxArgument) {
    std::ostringstream os;
    os << "(nu, x) = (" << nu << ", " << x << ") outside supported box nu, x <= " << kMaxOrder;
    throw RangeError(os.str());
  }
}

void normalize(ScaledPair& p) {
  const double m = std::max(std::abs(p.value), std::abs(p.derivative));
  if (m == 0.0 || !std::isfinite(m)) return;
  int e = 0;
  std::frexp(m, &e);
  p.value = std::ldexp(p.value, -e);
  p.derivative = std::ldexp(p.derivative, -e);
  p.exp2 += e;
}

double to_double(double mantissa, long exp2) {
  if (mantissa == 0.0) return 0.0;
  if (exp2 > 4000) return std::copysign(std::numeric_limits<double>::infinity(), mantissa);
  if (exp2 < -4000) return std::copysign(0.0, mantissa);
  return std::ldexp(mantissa, static_cast<int>(exp2));
}


// Hankel's large-argument expansion for J_μ, Y_μ. Accurate to rounding for
// x >= kXHankel and μ < 2; the smallest term is O(e^{-2x}).
constexpr double kXHankel = 25.0;

void hankel_jy(double mu, double x, double sx, double cx, double eps, double& j, double& y) {
  const double m = 4.0 * mu * mu;
  double p = 1.0;
  double q = 0.0;
  double t = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = t * (m - odd * odd) / (8.0 * k * x);
    if (k > 1 && std::abs(next) > std::abs(t)) break;  // past the smallest term
    t = next;
    if (k % 2 == 1) {
      q += (k % 4 == 1) ? t : -t;
    } else {
      p += (k % 4 == 2) ? -t : t;
    }
    if (std::abs(t) <= eps * 0.25) break;
  }
  const double beta = (0.5 * mu + 0.25) * kPi;
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  const double cchi = cx * cb + sx * sb;
  const double schi = sx * cb - cx * sb;
  const double amp = std::sqrt(2.0 / (kPi * x));
  j = amp * (p * cchi - q * schi);
  y = amp * (p * schi + q * cchi);
}

}  // namespace

void SpecFunAccuracy::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1e-6)) {
    throw DomainError("SpecFunAccuracy.rel_tol must lie in (0, 1e-6)");
  }
  if (max_terms < 50) {
    throw DomainError("SpecFunAccuracy.max_terms must be >= 50");
  }
}

double ScaledPair::unscaled_value() const { return to_double(value, exp2); }
double ScaledPair::unscaled_derivative() const { return to_double(derivative, exp2); }

double ScaledPair::log_abs() const {
  if (value == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(value)) + static_cast<double>(exp2) * std::numbers::ln2;
}

BesselJY bessel_jy_large_x(double nu, double x, double eps, const SpecFunAccuracy& acc);

BesselJY bessel_jy(double nu, double x, const SpecFunAccuracy& acc) {
  check_arguments(nu, x);
  acc.validate();
  const double eps = std::max(acc.rel_tol, std::numeric_limits<double>::epsilon() / 2);
  if (x >= kXHankel) return bessel_jy_large_x(nu, x, eps, acc);

  constexpr double kXMin = 2.0;
  const long nl = x < kXMin ? static_cast<long>(nu + 0.5)
                            : std::max(0L, static_cast<long>(nu - x + 1.5));
  const double mu = nu - static_cast<double>(nl);
  const double mu2 = mu * mu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  const double w = xi2 / kPi;  // Wronskian 2/(πx)

  // CF1: f_ν = J'_ν/J_ν by modified Lentz. Needs O(x) terms once x > ν.
  const long cf1_cap = acc.max_terms + static_cast<long>(4.0 * x);
  int isign = 1;
  double h = nu * xi;
  if (h < kFpMin) h = kFpMin;
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  bool cf1_converged = false;
  for (long i = 1; i <= cf1_cap; ++i) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = b - 1.0 / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::abs(del - 1.0) <= eps) {
      cf1_converged = true;
      break;
    }
  }
  if (!cf1_converged) {
    throw ConvergenceError("Bessel CF1 did not converge at nu=" + std::to_string(nu) +
                           ", x=" + std::to_string(x));
  }

  // Downward recurrence of the unnormalized J from ν to μ. Grows for ν > x,
  // so the running pair is renormalized and the exponent kept in jscale.
  double rjl = isign;
  double rjpl = h * rjl;
  const double rjl1 = rjl;
  const double rjp1 = rjpl;
  long jscale = 0;
  double fact = nu * xi;
  for (long l = nl; l >= 1; --l) {
    const double rjtemp = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * rjtemp - rjl;
    rjl = rjtemp;
    if (std::abs(rjl) > kRescaleHi || std::abs(rjpl) > kRescaleHi) {
      rjl *= kRescaleLo;
      rjpl *= kRescaleLo;
      jscale += kRescaleBits;
    }
  }
  if (rjl == 0.0) rjl = eps;
  const double f = rjpl / rjl;

  double rjmu = 0.0;
  double rymu = 0.0;
  double rymup = 0.0;
  double ry1 = 0.0;
  if (x < kXMin) {
    // Temme's series for Y_μ and Y_{μ+1}.
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fct = std::abs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
    double dd = -std::log(x2);
    double e = mu * dd;
    const double fact2 = std::abs(e) < eps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = 2.0 / kPi * fct * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * dd);
    e = std::exp(e);
    double p = e / (g.gampl * kPi);
    double q = 1.0 / (e * kPi * g.gammi);
    const double pimu2 = 0.5 * pimu;
    const double fact3 = std::abs(pimu2) < eps ? 1.0 : std::sin(pimu2) / pimu2;
    const double r = kPi * pimu2 * fact3 * fact3;
    double cc = 1.0;
    dd = -x2 * x2;
    double sum = ff + r * q;
    double sum1 = p;
    bool converged = false;
    for (int i = 1; i <= acc.max_terms; ++i) {
      const double di = i;
      ff = (di * ff + p + q) / (di * di - mu2);
      cc *= dd / di;
      p /= di - mu;
      q /= di + mu;
      const double del = cc * (ff + r * q);
      sum += del;
      const double del1 = cc * p - di * del;
      sum1 += del1;
      if (std::abs(del) < (1.0 + std::abs(sum)) * eps) {
        converged = true;
        break;
      }
    }
    if (!converged) throw ConvergenceError("Temme series for Y_mu did not converge");
    rymu = -sum;
    ry1 = -sum1 * xi2;
    rymup = mu * xi * rymu - ry1;
    rjmu = w / (rymup - f * rymu);
  } else {
    // Steed's CF2: p + iq = (J'_μ + iY'_μ)/(J_μ + iY_μ).
    double a = 0.25 - mu2;
    double p = -0.5 * xi;
    double q = 1.0;
    const double br = 2.0 * x;
    double bi = 2.0;
    double fct = a * xi / (p * p + q * q);
    double cr = br + q * fct;
    double ci = bi + p * fct;
    double den = br * br + bi * bi;
    double dr = br / den;
    double di = -bi / den;
    double dlr = cr * dr - ci * di;
    double dli = cr * di + ci * dr;
    double temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    bool converged = false;
    for (int i = 2; i <= acc.max_terms; ++i) {
      a += 2.0 * (i - 1);
      bi += 2.0;
      dr = a * dr + br;
      di = a * di + bi;
      if (std::abs(dr) + std::abs(di) < kFpMin) dr = kFpMin;
      fct = a / (cr * cr + ci * ci);
      cr = br + cr * fct;
      ci = bi - ci * fct;
      if (std::abs(cr) + std::abs(ci) < kFpMin) cr = kFpMin;
      den = dr * dr + di * di;
      dr /= den;
      di = -di / den;
      dlr = cr * dr - ci * di;
      dli = cr * di + ci * dr;
      temp = p * dlr - q * dli;
      q = p * dli + q * dlr;
      p = temp;
      if (std::abs(dlr - 1.0) + std::abs(dli) <= eps) {
        converged = true;
        break;
      }
    }
    if (!converged) throw ConvergenceError("Steed CF2 did not converge");
    const double gam = (p - f) / q;
    rjmu = std::sqrt(w / ((p - f) * gam + q));
    rjmu = std::copysign(rjmu, rjl);
    rymu = rjmu * gam;
    rymup = rymu * (p + q / gam);
    ry1 = mu * xi * rymu - rymup;
  }

  BesselJY out;
  // J_ν = rjl1 · rjmu / (rjl · 2^jscale)
  const double jfact = rjmu / rjl;
  out.j.value = rjl1 * jfact;
  out.j.derivative = rjp1 * jfact;
  out.j.exp2 = -jscale;
  normalize(out.j);

  // Upward recurrence for Y from μ to ν.
  long yscale = 0;
  for (long i = 1; i <= nl; ++i) {
    const double rytemp = (mu + static_cast<double>(i)) * xi2 * ry1 - rymu;
    rymu = ry1;
    ry1 = rytemp;
    if (std::abs(ry1) > kRescaleHi) {
      ry1 *= kRescaleLo;
      rymu *= kRescaleLo;
      yscale += kRescaleBits;
    }
  }
  out.y.value = rymu;
  out.y.derivative = nu * xi * rymu - ry1;
  out.y.exp2 = yscale;
  if (nl > 0) {
    // Renormalize J at ν itself so the recurrences' rounding does not show up
    // in the Wronskian.
    out.j.value = w / (out.y.derivative - h * out.y.value);
    out.j.derivative = h * out.j.value;
    out.j.exp2 = -yscale;
    normalize(out.j);
  }
  normalize(out.y);
  return out;
}

// Y_ν by upward recurrence from the Hankel values at the fractional order.
// J_ν the same way while ν <= x, where the recurrence is neutral; above x it
// comes from CF1 at ν and the Wronskian with Y_ν.
BesselJY bessel_jy_large_x(double nu, double x, double eps, const SpecFunAccuracy& acc) {
  const long nl = static_cast<long>(nu);
  const double mu = nu - static_cast<double>(nl);
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  const double sx = std::sin(x);
  const double cx = std::cos(x);
  double j0 = 0.0, y0 = 0.0, j1 = 0.0, y1 = 0.0;
  hankel_jy(mu, x, sx, cx, eps, j0, y0);
  hankel_jy(mu + 1.0, x, sx, cx, eps, j1, y1);

  const bool j_upward = nu <= x;
  long yscale = 0;
  for (long i = 1; i <= nl; ++i) {
    const double fac = (mu + static_cast<double>(i)) * xi2;
    const double yt = fac * y1 - y0;
    y0 = y1;
    y1 = yt;
    if (j_upward) {
      const double jt = fac * j1 - j0;
      j0 = j1;
      j1 = jt;
    }
    if (std::abs(y1) > kRescaleHi) {
      y1 *= kRescaleLo;
      y0 *= kRescaleLo;
      yscale += kRescaleBits;
    }
  }
  BesselJY out;
  out.y.value = y0;
  out.y.derivative = nu * xi * y0 - y1;
  out.y.exp2 = yscale;
  if (j_upward) {
    out.j.value = j0;
    out.j.derivative = nu * xi * j0 - j1;
    out.j.exp2 = 0;
  } else {
    const long cap = acc.max_terms + static_cast<long>(4.0 * x);
    double h = std::max(nu * xi, kFpMin);
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    bool converged = false;
    for (long i = 1; i <= cap; ++i) {
      b += xi2;
      d = b - d;
      if (std::abs(d) < kFpMin) d = kFpMin;
      c = b - 1.0 / c;
      if (std::abs(c) < kFpMin) c = kFpMin;
      d = 1.0 / d;
      const double del = c * d;
      h *= del;
      if (std::abs(del - 1.0) <= eps) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw ConvergenceError("Bessel CF1 did not converge at nu=" + std::to_string(nu) +
                             ", x=" + std::to_string(x));
    }
    out.j.value = xi2 / kPi / (out.y.derivative - h * out.y.value);
    out.j.derivative = h * out.j.value;
    out.j.exp2 = -yscale;
  }
  normalize(out.j);
  normalize(out.y);
  return out;
}

double bessel_j(double nu, double x, const SpecFunAccuracy& acc) {
  return bessel_jy(nu, x, acc).j.unscaled_value();
}

double bessel_y(double nu, double x, const SpecFunAccuracy& acc) {
  const double y = bessel_jy(nu, x, acc).y.unscaled_value();
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os << "Y_nu(x) overflows the double range at nu=" << nu << ", x=" << x;
    throw RangeError(os.str());
  }
  return y;
}

std::complex<double> jh_ratio(const BesselJY& jy) {
  // ratio = 1/(1 + i t), t = Y/J.
  if (jy.j.value == 0.0) return {0.0, 0.0};
  const double tm = jy.y.value / jy.j.value;
  const long te = jy.y.exp2 - jy.j.exp2;
  const double log2_abs_t = std::log2(std::abs(tm)) + static_cast<double>(te);
  if (log2_abs_t <= 0.0) {
    const double t = to_double(tm, te);
    const double den = 1.0 + t * t;
    return {1.0 / den, -t / den};
  }
  // |t| > 1: with s = 1/t, ratio = s/(s + i) = (s² - i s)/(1 + s²).
  const double s = to_double(1.0 / tm, -te);
  const double den = 1.0 + s * s;
  return {s * s / den, -s / den};
}

double log_abs_jh_ratio(const BesselJY& jy) {
  if (jy.j.value == 0.0) return -std::numeric_limits<double>::infinity();
  const double log_abs_t = jy.y.log_abs() - jy.j.log_abs();
  // |ratio| = (1 + t²)^{-1/2}
  if (log_abs_t > 20.0) return -log_abs_t - 0.5 * std::log1p(std::exp(-2.0 * log_abs_t));
  return -0.5 * std::log1p(std::exp(2.0 * log_abs_t));
}

std::complex<double> jh_ratio(double nu, double x, const SpecFunAccuracy& acc) {
  return jh_ratio(bessel_jy(nu, x, acc));
}

double log_abs_jh_ratio(double nu, double x, const SpecFunAccuracy& acc) {
  return log_abs_jh_ratio(bessel_jy(nu, x, acc));
}

}  // namespace conevortex::specfun
