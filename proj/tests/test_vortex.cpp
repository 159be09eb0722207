#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "conevortex/errors.hpp"
#include "conevortex/vortex.hpp"
#include "support.hpp"

using namespace conevortex;
using namespace conevortex::vortex;
using support::kPi;
using support::rel_err;

namespace {

// d ln τ / d ln r between the first two nodes beyond r0.
double log_slope(const std::vector<double>& r, const std::vector<double>& tau, double r0) {
  const auto it = std::lower_bound(r.begin(), r.end(), r0);
  const std::size_t j = static_cast<std::size_t>(it - r.begin());
  return std::log(tau[j + 1] / tau[j]) / std::log(r[j + 1] / r[j]);
}

}  // namespace

TEST_CASE("profile checks across couplings and windings") {
  for (int n : {1, 2}) {
    for (double kappa : {0.5, 1.0, 2.0}) {
      CAPTURE(n);
      CAPTURE(kappa);
      const VortexParams p = VortexParams::from_masses(kappa, 1.0, 1.0, n);
      const VortexProfiles v = solve_profiles(p);
      CHECK(v.converged);
      CHECK(v.residual_norm < 1e-8);
      CHECK(residual_norm(p, v) < 1e-8);

      const double r0 = 0.01 / std::max(p.m_H, p.m_A);
      CHECK(std::abs(log_slope(v.grid, v.tau_H, r0) - n) < 0.02 * n);
      CHECK(std::abs(log_slope(v.grid, v.tau_A, r0) - 1.0) < 0.02);

      const VortexObservables o = observables(p, v);
      CHECK(rel_err(o.flux, 2 * kPi * n / p.e_H) < 1e-3);
      const double e_div = integrate_energy(v, stress_energy_profile(p, v));
      const double e_sq = integrate_energy(v, stress_energy_squares(p, v));
      CHECK(rel_err(e_div, o.mu) < 5e-3);
      CHECK(rel_err(e_sq, o.mu) < 5e-3);

      const VortexProfiles coarse = solve_profiles(p, GridSpec{0.0, 2000});
      CHECK(rel_err(observables(p, coarse).mu, o.mu) < 2e-3);

      CHECK(v.tau_H.back() == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(v.tau_A.back() == doctest::Approx(1.0).epsilon(1e-6));
      for (std::size_t j = 1; j < v.grid.size(); ++j) {
        CHECK(v.tau_H[j] >= v.tau_H[j - 1] - 1e-12);
        CHECK(v.tau_A_sq[j] == doctest::Approx(v.tau_A[j] * v.tau_A[j]).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("self-dual energy") {
  for (int n : {1, 2, 3}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      const VortexParams p = VortexParams::from_masses(1.3, 1.3, sigma, n);
      const VortexObservables o = observables(p, solve_profiles(p));
      CAPTURE(n);
      CHECK(rel_err(o.mu, kPi * sigma * sigma * n) < 5e-4);
      CHECK(o.mu_error < 1e-3 * o.mu);
    }
  }
}

TEST_CASE("energy grows with the Higgs mass") {
  double prev = 0.0;
  for (double kappa : {0.5, 1.0, 2.0, 4.0}) {
    const VortexParams p = VortexParams::from_masses(kappa, 1.0, 1.0, 1);
    const double mu = observables(p, solve_profiles(p)).mu;
    CHECK(mu > prev);
    prev = mu;
  }
}

TEST_CASE("core radii and deficit") {
  const VortexParams p = VortexParams::from_masses(2.0, 1.0, 1.0, 1);
  const VortexProfiles v = solve_profiles(p);
  const VortexObservables o = observables(p, v, 0.01);
  CHECK(o.r_H > 0.0);
  CHECK(o.r_A > 0.0);
  CHECK(o.r_c == std::max(o.r_H, o.r_A));
  CHECK(o.eta == doctest::Approx(4 * 0.01 * o.mu).epsilon(1e-14));
  CHECK(observables(p, v).eta == 0.0);
  CHECK_THROWS_AS(observables(p, v, 1.0 / (4 * o.mu)), RangeError);
  const VortexParams wide = VortexParams::from_masses(2.0, 0.5, 1.0, 1);
  const VortexObservables ow = observables(wide, solve_profiles(wide));
  CHECK(ow.r_A > o.r_A);
}

TEST_CASE("field strength and energy density") {
  const VortexParams p = VortexParams::from_masses(1.0, 1.0, 1.0, 1);
  const VortexProfiles v = solve_profiles(p);
  const auto b = field_strength(p, v);
  // total flux from B on the grid
  double flux = 0.0;
  for (std::size_t j = 1; j < v.grid.size(); ++j) {
    const double r0 = v.grid[j - 1], r1 = v.grid[j];
    flux += kPi * (b[j - 1] * r0 + b[j] * r1) * (r1 - r0);
  }
  CHECK(rel_err(flux, 2 * kPi / p.e_H) < 1e-3);
  CHECK(b.front() > 0.0);
  CHECK(std::abs(b.back()) < 1e-8);
  const auto t_div = stress_energy_profile(p, v);
  const auto t_sq = stress_energy_squares(p, v);
  for (std::size_t j = 0; j < v.grid.size(); j += 97) {
    CHECK(t_sq[j] >= 0.0);
    CHECK(std::abs(t_div[j] - t_sq[j]) < 1e-3 * (t_sq.front() + 1e-12));
  }
}

TEST_CASE("residual on the returned samples") {
  const VortexParams p = VortexParams::from_masses(2.0, 1.0, 1.0, 2);
  const VortexProfiles fine = solve_profiles(p);
  const VortexProfiles coarse = solve_profiles(p, GridSpec{0.0, 1000});
  const double rf = residual_on_samples(p, fine.grid, fine.tau_H, fine.tau_A);
  const double rc = residual_on_samples(p, coarse.grid, coarse.tau_H, coarse.tau_A);
  CHECK(rf < 1e-4);
  CHECK(rf < rc);
  std::vector<double> off = fine.tau_H;
  off[off.size() / 3] += 1e-3;
  CHECK(residual_on_samples(p, fine.grid, off, fine.tau_A) > 10 * rf);
}

TEST_CASE("continuation from the self-dual point") {
  const VortexParams p = VortexParams::from_masses(8.0, 1.0, 1.0, 1);
  SolverSettings s;
  s.kappa_step = 1.5;
  const VortexProfiles v = solve_profiles(p, {}, s);
  CHECK(v.converged);
  CHECK(v.continuation_steps >= static_cast<int>(std::ceil(std::log(8.0) / std::log(1.5))));
  CHECK(!v.residual_history.empty());
  const VortexProfiles self = solve_profiles(VortexParams::from_masses(1.0, 1.0, 1.0, 1));
  CHECK(self.continuation_steps == 1);
}

TEST_CASE("solver failure reports the residual history") {
  const VortexParams p = VortexParams::from_masses(2.0, 1.0, 1.0, 1);
  SolverSettings s;
  s.max_iterations = 1;
  try {
    solve_profiles(p, {}, s);
    FAIL("no convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(!e.history().empty());
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(VortexParams::from_masses(-1.0, 1.0, 1.0, 1).validate(), DomainError);
  CHECK_THROWS_AS(VortexParams::from_masses(1.0, 0.0, 1.0, 1).validate(), DomainError);
  CHECK_THROWS_AS(VortexParams::from_masses(1.0, 1.0, 1.0, 0).validate(), DomainError);
  VortexParams bad = VortexParams::from_masses(1.0, 1.0, 1.0, 1);
  bad.e_H = 2.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  const VortexParams p = VortexParams::from_masses(1.0, 2.0, 0.5, -1);
  CHECK(p.e_H == 4.0);
  CHECK(p.lambda() == doctest::Approx(8.0));
  CHECK(GridSpec{}.resolved_r_max(p) == doctest::Approx(25.0));
  CHECK_THROWS_AS(solve_profiles(p, GridSpec{0.0, 2001}), DomainError);
  CHECK_THROWS_AS(solve_profiles(p, GridSpec{2.0, 2000}), DomainError);
  SolverSettings s;
  s.tol = 1e-3;
  CHECK_THROWS_AS(solve_profiles(p, {}, s), DomainError);
  const VortexProfiles v = solve_profiles(p);
  CHECK(rel_err(observables(p, v).flux, -2 * kPi / p.e_H) < 1e-3);
}
