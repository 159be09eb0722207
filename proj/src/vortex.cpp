#include "conevortex/vortex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "conevortex/errors.hpp"

namespace conevortex::vortex {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<double, 4>;  // row major

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}
Vec2 mul(const Mat2& a, const Vec2& v) { return {a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]}; }
Mat2 sub(const Mat2& a, const Mat2& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}; }
Vec2 sub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
Mat2 inverse(const Mat2& a) {
  const double det = a[0] * a[3] - a[1] * a[2];
  if (det == 0.0 || !std::isfinite(det)) throw ConvergenceError("singular Jacobian block in the profile solver");
  return {a[3] / det, -a[1] / det, -a[2] / det, a[0] / det};
}

// Geometry of the stretched grid, nodes j = 0..n-1 at s = (j+1)h.
struct Grid {
  double c = 1.0;
  double h = 0.0;
  int n = 0;
  std::vector<double> r, rs, wm, wp, vm, vp;

  Grid(double scale, double r_max, int intervals) : c(scale), n(intervals) {
    h = std::log1p(r_max / c) / intervals;
    r.resize(n);
    rs.resize(n);
    wm.resize(n);
    wp.resize(n);
    vm.resize(n);
    vp.resize(n);
    for (int j = 0; j < n; ++j) {
      const double s = (j + 1) * h;
      r[j] = c * std::expm1(s);
      rs[j] = c * std::exp(s);
      for (int side = 0; side < 2; ++side) {
        const double sm = s + (side == 0 ? -0.5 : 0.5) * h;
        const double rr = c * std::expm1(sm);
        const double rrs = c * std::exp(sm);
        (side == 0 ? wm : wp)[j] = rr / rrs;
        (side == 0 ? vm : vp)[j] = 1.0 / (rr * rrs);
      }
    }
  }
};

struct Masses {
  double mh = 1.0;
  double ma = 1.0;
  double n = 1.0;
};

struct System {
  std::vector<Vec2> res;
  std::vector<Mat2> lower, diag, upper;
};

double higgs_tail_rate(const Masses& m) { return std::min(m.mh, 2.0 * m.ma); }

double higgs_laplacian(const Grid& g, const std::vector<double>& t, int j) {
  return (g.wp[j] * (t[j + 1] - t[j]) - g.wm[j] * (t[j] - t[j - 1])) / (g.r[j] * g.rs[j] * g.h * g.h);
}

double gauge_operator(const Grid& g, const std::vector<double>& a, int j) {
  return g.r[j] / (g.rs[j] * g.h * g.h) * (g.vp[j] * (a[j + 1] - a[j]) - g.vm[j] * (a[j] - a[j - 1]));
}

// Residual rows and Jacobian blocks. Interior rows are the field equations;
// row 0 enforces the power laws τ ∝ r^{|n|}, τ_A² ∝ r²; the last row the
// exponential tails.
void assemble(const Grid& g, const Masses& m, const std::vector<double>& t, const std::vector<double>& a,
              System& sys, bool jacobian) {
  const int n = g.n;
  sys.res.assign(n, {0.0, 0.0});
  if (jacobian) {
    sys.lower.assign(n, {0, 0, 0, 0});
    sys.diag.assign(n, {0, 0, 0, 0});
    sys.upper.assign(n, {0, 0, 0, 0});
  }
  const double nn = m.n * m.n;
  const double aw = std::abs(m.n);
  {
    const double rho = g.r[0] / g.r[1];
    const double ph = std::pow(rho, aw);
    const double pa = rho * rho;
    sys.res[0] = {t[0] - ph * t[1], a[0] - pa * a[1]};
    if (jacobian) {
      sys.diag[0] = {1, 0, 0, 1};
      sys.upper[0] = {-ph, 0, 0, -pa};
    }
  }
  for (int j = 1; j < n - 1; ++j) {
    const double r = g.r[j];
    const double hh = g.h * g.h;
    const double ch = 1.0 / (r * g.rs[j] * hh);
    const double ca = r / (g.rs[j] * hh);
    const double om = 1.0 - a[j];
    const double rh = higgs_laplacian(g, t, j) + 0.5 * m.mh * m.mh * (1.0 - t[j] * t[j]) * t[j] -
                      nn * om * om * t[j] / (r * r);
    const double ra = gauge_operator(g, a, j) + m.ma * m.ma * t[j] * t[j] * om;
    sys.res[j] = {rh, ra};
    if (jacobian) {
      sys.lower[j] = {ch * g.wm[j], 0, 0, ca * g.vm[j]};
      sys.upper[j] = {ch * g.wp[j], 0, 0, ca * g.vp[j]};
      sys.diag[j] = {-ch * (g.wp[j] + g.wm[j]) + 0.5 * m.mh * m.mh * (1.0 - 3.0 * t[j] * t[j]) - nn * om * om / (r * r),
                     2.0 * nn * om * t[j] / (r * r), 2.0 * m.ma * m.ma * t[j] * om,
                     -ca * (g.vp[j] + g.vm[j]) - m.ma * m.ma * t[j] * t[j]};
    }
  }
  {
    const int j = n - 1;
    const double dr = g.r[j] - g.r[j - 1];
    const double gh = std::sqrt(g.r[j - 1] / g.r[j]) * std::exp(-higgs_tail_rate(m) * dr);
    const double ga = std::sqrt(g.r[j] / g.r[j - 1]) * std::exp(-m.ma * dr);
    sys.res[j] = {(1.0 - t[j]) - gh * (1.0 - t[j - 1]), (1.0 - a[j]) - ga * (1.0 - a[j - 1])};
    if (jacobian) {
      sys.lower[j] = {gh, 0, 0, ga};
      sys.diag[j] = {-1, 0, 0, -1};
    }
  }
}

double max_norm(const System& sys, double scale) {
  double out = 0.0;
  const int n = static_cast<int>(sys.res.size());
  for (int j = 0; j < n; ++j) {
    const double w = (j == 0 || j == n - 1) ? 1.0 : scale;
    out = std::max({out, std::abs(sys.res[j][0]) * w, std::abs(sys.res[j][1]) * w});
  }
  return out;
}

// Block Thomas solve of J·dx = −res.
std::vector<Vec2> block_solve(const System& sys) {
  const int n = static_cast<int>(sys.res.size());
  std::vector<Mat2> cp(n);
  std::vector<Vec2> dp(n);
  Mat2 inv = inverse(sys.diag[0]);
  cp[0] = mul(inv, sys.upper[0]);
  dp[0] = mul(inv, Vec2{-sys.res[0][0], -sys.res[0][1]});
  for (int j = 1; j < n; ++j) {
    const Mat2 m = sub(sys.diag[j], mul(sys.lower[j], cp[j - 1]));
    inv = inverse(m);
    cp[j] = mul(inv, sys.upper[j]);
    dp[j] = mul(inv, sub(Vec2{-sys.res[j][0], -sys.res[j][1]}, mul(sys.lower[j], dp[j - 1])));
  }
  std::vector<Vec2> x(n);
  x[n - 1] = dp[n - 1];
  for (int j = n - 2; j >= 0; --j) x[j] = sub(dp[j], mul(cp[j], x[j + 1]));
  return x;
}

struct NewtonResult {
  bool converged = false;
  double residual = 0.0;
  std::vector<double> history;
};

NewtonResult newton(const Grid& g, const Masses& m, std::vector<double>& t, std::vector<double>& a,
                    const SolverSettings& settings) {
  const double scale = 1.0 / std::pow(std::max(m.mh, m.ma), 2);
  System sys;
  assemble(g, m, t, a, sys, true);
  NewtonResult out;
  out.residual = max_norm(sys, scale);
  out.history.push_back(out.residual);
  std::vector<double> tt(t.size());
  std::vector<double> at(a.size());
  System trial;
  for (int it = 0; it < settings.max_iterations; ++it) {
    if (out.residual < settings.tol) {
      out.converged = true;
      return out;
    }
    const std::vector<Vec2> dx = block_solve(sys);
    double lambda = 1.0;
    bool accepted = false;
    double trial_norm = out.residual;
    for (int ls = 0; ls < 30; ++ls) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        tt[j] = t[j] + lambda * dx[j][0];
        at[j] = a[j] + lambda * dx[j][1];
      }
      assemble(g, m, tt, at, trial, false);
      trial_norm = max_norm(trial, scale);
      if (std::isfinite(trial_norm) && trial_norm < out.residual) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
    t.swap(tt);
    a.swap(at);
    out.residual = trial_norm;
    out.history.push_back(out.residual);
    assemble(g, m, t, a, sys, true);
  }
  out.converged = out.residual < settings.tol;
  return out;
}

// Centred first derivative d/dr on the stretched grid with the origin value
// `origin` at s = 0.
std::vector<double> radial_derivative(const VortexProfiles& p, const std::vector<double>& u, double origin) {
  const int n = static_cast<int>(u.size());
  std::vector<double> d(n);
  const double h = p.step;
  for (int j = 0; j < n; ++j) {
    const double rs = p.scale * std::exp((j + 1) * h);
    double us;
    if (j == 0) {
      us = (u[1] - origin) / (2.0 * h);
    } else if (j == n - 1) {
      us = (3.0 * u[j] - 4.0 * u[j - 1] + u[j - 2]) / (2.0 * h);
    } else {
      us = (u[j + 1] - u[j - 1]) / (2.0 * h);
    }
    d[j] = us / rs;
  }
  return d;
}

// Trapezoid in s of f(r)·dr/ds, with f = 0 at the origin; returns the value
// on the full grid and the estimate from every second node.
std::pair<double, double> trapezoid_pair(const VortexProfiles& p, const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  const double h = p.step;
  auto g = [&](int idx) {  // idx 0 is the origin, idx j+1 is node j
    if (idx == 0) return 0.0;
    return f[idx - 1] * p.scale * std::exp(idx * h);
  };
  double fine = 0.0;
  for (int i = 0; i < n; ++i) fine += 0.5 * (g(i) + g(i + 1));
  fine *= h;
  double coarse = 0.0;
  for (int i = 0; i + 2 <= n; i += 2) coarse += 0.5 * (g(i) + g(i + 2));
  coarse *= 2.0 * h;
  return {fine, coarse};
}

Masses masses_of(const VortexParams& p) {
  return {p.m_H, p.m_A, static_cast<double>(p.winding)};
}

}  // namespace

VortexParams VortexParams::from_masses(double m_H, double m_A, double sigma, int winding) {
  VortexParams p;
  p.m_H = m_H;
  p.m_A = m_A;
  p.sigma = sigma;
  p.winding = winding;
  p.e_H = m_A / sigma;
  p.validate();
  return p;
}

void VortexParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive");
  };
  positive(m_H, "m_H");
  positive(m_A, "m_A");
  positive(sigma, "sigma");
  positive(e_H, "e_H");
  if (winding == 0) throw DomainError("winding must be nonzero");
  if (std::abs(winding) > 50) throw DomainError("winding above 50 is not supported");
  if (std::abs(m_A - e_H * sigma) > 1e-10 * m_A) {
    throw DomainError("inconsistent parameters: m_A must equal e_H*sigma");
  }
}

double GridSpec::resolved_r_max(const VortexParams& p) const {
  if (r_max > 0.0) return r_max;
  return 25.0 * std::max(1.0 / p.m_H, 1.0 / p.m_A);
}

VortexProfiles solve_profiles(const VortexParams& params, const GridSpec& grid_spec,
                              const SolverSettings& settings) {
  params.validate();
  const double longest = std::max(1.0 / params.m_H, 1.0 / params.m_A);
  const double r_max = grid_spec.resolved_r_max(params);
  if (!(r_max >= 12.0 * longest)) throw DomainError("grid must reach r_max >= 12·max(1/m_H, 1/m_A)");
  if (grid_spec.intervals < 64 || grid_spec.intervals % 2 != 0) {
    throw DomainError("grid needs an even number of intervals, at least 64");
  }
  if (!(settings.tol > 0.0) || settings.tol > 1e-8) throw DomainError("solver tolerance must lie in (0, 1e-8]");
  if (!(settings.kappa_step > 1.0)) throw DomainError("kappa_step must exceed 1");

  const Grid g(1.0 / std::max(params.m_H, params.m_A), r_max, grid_spec.intervals);
  const int n = g.n;
  const double aw = std::abs(params.winding);
  std::vector<double> t(n), a(n);
  for (int j = 0; j < n; ++j) {
    t[j] = std::pow(std::tanh(0.5 * params.m_A * g.r[j]), aw);
    a[j] = std::pow(std::tanh(0.5 * params.m_A * g.r[j]), 2.0);
  }

  const double kappa = params.kappa();
  const double log_target = std::log(kappa);
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(log_target) / std::log(settings.kappa_step))));
  Masses m = masses_of(params);

  VortexProfiles out;
  double done = 0.0;  // fraction of the way along log κ
  double df = 1.0 / steps;
  NewtonResult last;
  int solves = 0;
  // Self-dual start, then geometric steps in κ; a failed step is halved.
  m.mh = params.m_A;
  last = newton(g, m, t, a, settings);
  ++solves;
  if (!last.converged) {
    throw ConvergenceError("profile solver did not converge at the self-dual point", last.history);
  }
  while (done < 1.0 && kappa != 1.0) {
    const double next = std::min(1.0, done + df);
    std::vector<double> t_try = t;
    std::vector<double> a_try = a;
    Masses mt = m;
    mt.mh = params.m_A * std::exp(log_target * next);
    if (next == 1.0) mt.mh = params.m_H;
    NewtonResult r = newton(g, mt, t_try, a_try, settings);
    ++solves;
    if (r.converged) {
      t.swap(t_try);
      a.swap(a_try);
      done = next;
      last = r;
    } else {
      df *= 0.5;
      if (df < 1e-4) throw ConvergenceError("continuation in kappa stalled", r.history);
    }
  }

  out.grid = g.r;
  out.tau_H = t;
  out.tau_A_sq = a;
  out.tau_A.resize(n);
  for (int j = 0; j < n; ++j) out.tau_A[j] = std::sqrt(std::max(0.0, a[j]));
  out.converged = last.converged;
  out.residual_norm = last.residual;
  out.residual_history = last.history;
  out.continuation_steps = solves;
  out.scale = g.c;
  out.step = g.h;
  return out;
}

double residual_norm(const VortexParams& params, const VortexProfiles& profiles) {
  const Grid g(profiles.scale, profiles.grid.back(), static_cast<int>(profiles.grid.size()));
  System sys;
  assemble(g, masses_of(params), profiles.tau_H, profiles.tau_A_sq, sys, false);
  return max_norm(sys, 1.0 / std::pow(std::max(params.m_H, params.m_A), 2));
}

double residual_on_samples(const VortexParams& params, const std::vector<double>& r,
                           const std::vector<double>& th, const std::vector<double>& ta) {
  const std::size_t n = r.size();
  if (n < 3 || th.size() != n || ta.size() != n) throw DomainError("residual needs matching samples");
  const double nn = static_cast<double>(params.winding) * params.winding;
  double out = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double rm = 0.5 * (r[i] + r[i - 1]);
    const double rp = 0.5 * (r[i] + r[i + 1]);
    const double dm = r[i] - r[i - 1];
    const double dp = r[i + 1] - r[i];
    const double span = 0.5 * (r[i + 1] - r[i - 1]);
    const double am = ta[i - 1] * ta[i - 1];
    const double a0 = ta[i] * ta[i];
    const double ap = ta[i + 1] * ta[i + 1];
    const double lh = (rp * (th[i + 1] - th[i]) / dp - rm * (th[i] - th[i - 1]) / dm) / span / r[i];
    const double la = r[i] * ((ap - a0) / dp / rp - (a0 - am) / dm / rm) / span;
    const double om = 1.0 - a0;
    const double rh = lh + 0.5 * params.m_H * params.m_H * (1.0 - th[i] * th[i]) * th[i] - nn * om * om * th[i] / (r[i] * r[i]);
    const double ra = la + params.m_A * params.m_A * th[i] * th[i] * om;
    out = std::max({out, std::abs(rh), std::abs(ra)});
  }
  return out / std::pow(std::max(params.m_H, params.m_A), 2);
}

std::vector<double> field_strength(const VortexParams& params, const VortexProfiles& p) {
  const auto da = radial_derivative(p, p.tau_A_sq, 0.0);
  std::vector<double> b(da.size());
  for (std::size_t j = 0; j < da.size(); ++j) b[j] = params.winding / params.e_H * da[j] / p.grid[j];
  return b;
}

std::vector<double> stress_energy_profile(const VortexParams& params, const VortexProfiles& p) {
  params.validate();
  if (!p.converged) throw DomainError("stress-energy needs converged profiles");
  const Grid g(p.scale, p.grid.back(), static_cast<int>(p.grid.size()));
  const int n = g.n;
  const auto dt = radial_derivative(p, p.tau_H, 0.0);
  const auto da = radial_derivative(p, p.tau_A_sq, 0.0);
  const double nn = static_cast<double>(params.winding) * params.winding;
  const double mh2 = params.m_H * params.m_H;
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    const double r = g.r[j];
    const double t = p.tau_H[j];
    const double om = 1.0 - p.tau_A_sq[j];
    double lap;
    if (j == 0 || j == n - 1) {
      lap = -0.5 * mh2 * (1.0 - t * t) * t + nn * om * om * t / (r * r);
    } else {
      lap = higgs_laplacian(g, p.tau_H, j);
    }
    const double t2 = t * t;
    out[j] = 0.5 * params.sigma * params.sigma *
             (dt[j] * dt[j] + t * lap + 0.25 * mh2 * (1.0 - t2 * t2) +
              nn * da[j] * da[j] / (params.m_A * params.m_A * r * r));
  }
  return out;
}

std::vector<double> stress_energy_squares(const VortexParams& params, const VortexProfiles& p) {
  params.validate();
  const auto dt = radial_derivative(p, p.tau_H, 0.0);
  const auto da = radial_derivative(p, p.tau_A_sq, 0.0);
  const double nn = static_cast<double>(params.winding) * params.winding;
  const double mh2 = params.m_H * params.m_H;
  std::vector<double> out(p.grid.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double r = p.grid[j];
    const double t = p.tau_H[j];
    const double om = 1.0 - p.tau_A_sq[j];
    const double u = 1.0 - t * t;
    out[j] = 0.5 * params.sigma * params.sigma *
             (dt[j] * dt[j] + 0.25 * mh2 * u * u +
              nn / (r * r) * (da[j] * da[j] / (params.m_A * params.m_A) + t * t * om * om));
  }
  return out;
}

double integrate_energy(const VortexProfiles& p, const std::vector<double>& t00) {
  std::vector<double> f(t00.size());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = 2.0 * kPi * p.grid[j] * t00[j];
  return trapezoid_pair(p, f).first;
}

VortexObservables observables(const VortexParams& params, const VortexProfiles& p, double G) {
  params.validate();
  if (!p.converged) throw DomainError("observables need converged profiles");
  if (!(G >= 0.0) || !std::isfinite(G)) throw DomainError("G must be non-negative");
  const int n = static_cast<int>(p.grid.size());
  const auto da = radial_derivative(p, p.tau_A_sq, 0.0);
  const double nn = static_cast<double>(params.winding) * params.winding;
  std::vector<double> fh(n), fa(n), fb(n);
  for (int j = 0; j < n; ++j) {
    const double r = p.grid[j];
    const double t2 = p.tau_H[j] * p.tau_H[j];
    fh[j] = 0.25 * params.m_H * params.m_H * r * (1.0 - t2 * t2);
    fa[j] = nn / (params.m_A * params.m_A) * da[j] * da[j] / r;
    fb[j] = da[j];
  }
  const auto ih = trapezoid_pair(p, fh);
  const auto ia = trapezoid_pair(p, fa);
  const auto ib = trapezoid_pair(p, fb);

  VortexObservables out;
  out.I_H = ih.first;
  out.I_A = ia.first;
  const double pref = kPi * params.sigma * params.sigma;
  out.mu = pref * (out.I_H + out.I_A);
  out.mu_error = pref * (std::abs(ih.first - ih.second) + std::abs(ia.first - ia.second)) / 3.0;
  if (out.mu_error > 1e-3 * std::abs(out.mu)) {
    throw ConvergenceError("energy quadrature error " + std::to_string(out.mu_error) + " exceeds 1e-3·mu; refine the grid",
                           {out.mu, out.mu_error});
  }
  out.flux = 2.0 * kPi * params.winding / params.e_H * ib.first;
  out.r_H = 1.0 / params.m_H;
  out.r_A = 1.0 / params.m_A;
  out.r_c = std::max(out.r_H, out.r_A);
  out.eta = 4.0 * G * out.mu;
  if (!(out.eta < 1.0)) throw RangeError("deficit parameter 4·G·mu = " + std::to_string(out.eta) + " is not below 1");
  return out;
}

}  // namespace conevortex::vortex
