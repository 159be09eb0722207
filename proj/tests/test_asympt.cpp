#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conevortex/asympt.hpp"
#include "conevortex/errors.hpp"
#include "conevortex/geometry.hpp"
#include "support.hpp"

using namespace conevortex;
using namespace conevortex::asympt;
using support::kPi;
using support::rel_err;

namespace {

ScatterConfig make(double eta, double flux, double r_c, double k = 1.0) {
  ScatterConfig c;
  c.eta = eta;
  c.flux_ratio = flux;
  c.r_c = r_c;
  c.k = k;
  return c;
}

// Midpoint rule over (a, b).
template <class F>
double midpoint(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
  return s * h;
}

}  // namespace

TEST_CASE("flat cone keeps a single image") {
  const ScatterConfig c = make(0.0, 0.3, 120.0);
  for (double phi : support::linspace(0.05, 2 * kPi - 0.05, 50)) {
    CHECK(rel_err(std::norm(fc_short(c, phi)), 60.0 * std::sin(phi / 2)) < 1e-12);
    CHECK(rel_err(classical_shell(120.0, phi), 60.0 * std::sin(phi / 2)) < 1e-15);
  }
  const ShortWaveResult r = dsigma_short(c, std::vector<double>{1.0, 4.0});
  CHECK(r.l_list[0].size() == 1);
  CHECK(r.valid[1]);
  CHECK(r.formula[0] == "image-sum");
}

TEST_CASE("double-image window carries the flux") {
  const double q = 1.0 / 3.0;
  ScatterConfig a = make(0.25, 0.0, 100.0);
  ScatterConfig b = make(0.25, 0.3, 100.0);
  const ShortWaveResult in = dsigma_short(a, std::vector<double>{0.2});
  CHECK(in.l_list[0].size() == 2);
  CHECK(in.formula[0] == "double-image-semifluxon");
  CHECK(dsigma_short(b, std::vector<double>{0.2}).formula[0] == "double-image");
  CHECK(std::norm(fc_short(a, 0.2)) != doctest::Approx(std::norm(fc_short(b, 0.2))));
  for (double phi : {q * kPi + 0.3, kPi, 2 * kPi - q * kPi - 0.3}) {
    CHECK(dsigma_short(a, std::vector<double>{phi}).l_list[0].size() == 1);
    CHECK(std::norm(fc_short(a, phi)) == doctest::Approx(std::norm(fc_short(b, phi))).epsilon(1e-13));
    CHECK(rel_err(dsigma_short(b, phi), dsigma_short_outside(b, phi)) < 1e-15);
    CHECK(rel_err(std::norm(fc_short(b, phi)), dsigma_short_outside(b, phi)) < 1e-12);
  }
  const ShortWaveResult edge = dsigma_short(a, std::vector<double>{q * kPi, 1.0});
  CHECK(!edge.valid[0]);
  CHECK(edge.reason[0] == "region-boundary");
  CHECK(std::isnan(edge.dsigma[0]));
  CHECK(edge.valid[1]);
}

TEST_CASE("image sum squared reproduces the interference form") {
  support::Gen gen(9);
  for (int i = 0; i < 200; ++i) {
    const double eta = gen.uniform(0.05, 0.45);
    const ScatterConfig c = make(eta, gen.uniform(-1.0, 1.0), gen.uniform(50.0, 400.0));
    const double w = eta / (1 - eta) * kPi;
    const double phi = gen.uniform(-w, w) * 0.999;
    CAPTURE(eta);
    CAPTURE(phi);
    const double inside = dsigma_short_inside(c, phi);
    CHECK(std::abs(std::norm(fc_short(c, phi)) - inside) < 1e-10 * c.r_c);
  }
}

TEST_CASE("forward value") {
  for (double flux : {0.0, 0.2, 0.5, 0.9}) {
    const ScatterConfig c = make(0.25, flux, 100.0);
    const double want = 2 * 100.0 * 0.5625 * std::sin(kPi / 8) * std::pow(std::cos(kPi * flux), 2);
    CHECK(std::abs(dsigma_short_forward(c) - want) <= 1e-13 * 100.0);
    CHECK(std::abs(dsigma_short(c, 0.0) - want) <= 1e-12 * 100.0);
  }
  CHECK(dsigma_short_forward(make(0.25, 0.0, 1.0)) == doctest::Approx(2 * 0.5625 * std::sin(kPi / 8)).epsilon(1e-15));
  CHECK(std::abs(dsigma_short(make(0.25, 0.5, 100.0), 0.0)) < 1e-12);
}

TEST_CASE("semifluxon sign rule") {
  for (int n = -3; n <= 4; ++n) {
    const ScatterConfig c = make(0.25, 0.5 * n, 150.0);
    for (double phi : support::linspace(-0.9, 0.9, 19)) {
      CHECK(std::abs(dsigma_short_semifluxon(c, phi) - dsigma_short_inside(c, phi)) < 1e-10 * c.r_c);
    }
  }
  CHECK_THROWS_AS(dsigma_short_semifluxon(make(0.25, 0.3, 100.0), 0.1), DomainError);
}

TEST_CASE("half-quantum shift flips the fringe") {
  support::Gen gen(31);
  for (int i = 0; i < 200; ++i) {
    const double flux = gen.uniform(-2.0, 2.0);
    const ScatterConfig a = make(0.25, flux, 200.0);
    const ScatterConfig b = make(0.25, flux + 0.5, 200.0);
    const double phi = gen.uniform(-1.0, 1.0);
    const double sum = dsigma_short_inside(a, phi) + dsigma_short_inside(b, phi);
    CHECK(std::abs(sum - 2 * dsigma_short_inside_mean(a, phi)) < 1e-10 * a.r_c);
  }
}

TEST_CASE("window integrals recover the total cross section") {
  for (double kr : {100.0, 400.0}) {
    for (double flux : {0.0, 0.3}) {
      const ScatterConfig c = make(0.25, flux, kr);
      const double w = kPi / 3;
      const double outside = midpoint([&](double p) { return dsigma_short_outside(c, p); }, w, 2 * kPi - w, 4000);
      const double inside = midpoint([&](double p) { return dsigma_short_inside(c, p); }, -w, w, 40000);
      CAPTURE(kr);
      CHECK(rel_err(outside + inside, sigma_tot_short(c)) < 3 * std::pow(kr, -1.0 / 3.0));
    }
  }
  CHECK(sigma_tot_short(make(0.0, 0.0, 100.0)) == doctest::Approx(200.0));
  CHECK(sigma_tot_short(make(0.25, 0.7, 100.0)) == doctest::Approx(150.0));
  CHECK(sigma_tot_short(make(-1.0, 0.0, 100.0)) == doctest::Approx(400.0));
  const double shell = midpoint([](double p) { return classical_shell(1.0, p); }, 0.0, 2 * kPi, 2000);
  CHECK(rel_err(shell, 2.0) < 1e-6);
}

TEST_CASE("other bands use the image sum") {
  for (double eta : {-1.0, 0.55, 0.7}) {
    const ScatterConfig c = make(eta, 0.2, 80.0);
    const geometry::ConeGeometry g{eta};
    const auto grid = support::linspace(0.03, 6.2, 40);
    const ShortWaveResult r = dsigma_short(c, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (!r.valid[j]) continue;
      CHECK(r.formula[j] == "image-sum");
      CHECK(r.dsigma[j] >= 0.0);
      const bool in = geometry::inside_region(g, grid[j]);
      const auto mc = geometry::mode_count_table(g);
      CHECK(static_cast<int>(r.l_list[j].size()) == (in ? mc.inside : mc.outside));
    }
  }
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(fc_short(make(0.25, 0.0, 10.0), 1.0), DomainError);
  CHECK_THROWS_AS(dsigma_short(make(0.25, 0.0, 49.0), std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(sigma_tot_short(make(0.25, 0.0, 20.0)), DomainError);
  CHECK_NOTHROW(sigma_tot_short(make(0.25, 0.0, 25.0, 2.0)));
  CHECK_THROWS_AS(classical_shell(1.0, 0.0), DegenerateGeometry);
  CHECK_THROWS_AS(classical_shell(1.0, 2 * kPi), DegenerateGeometry);
  CHECK(classical_shell(2.0, kPi) == 1.0);
  CHECK(classical_shell(2.0, 1e-12) < 1e-11);
  CHECK_THROWS_AS(dsigma_short(make(0.5, 0.0, 100.0), std::vector<double>{1.0}), DegenerateGeometry);
  CHECK_THROWS_AS(dsigma_short(make(0.5, 0.0, 100.0), 1.0), DegenerateGeometry);
}

TEST_CASE("cosmic string forward limits") {
  const double r_h = 2.0;
  const double l = 1e-3;
  CHECK(cosmic_string_eta(r_h, l) == doctest::Approx(1e-6));
  const ForwardLimit even = cosmic_string_forward(r_h, l, Parity::Even, false);
  CHECK(even.value == doctest::Approx(4 * kPi * l * l / r_h).epsilon(1e-15));
  CHECK(!even.regime_warning);
  CHECK(cosmic_string_forward(r_h, l, Parity::Even, true).value == even.value);
  CHECK(cosmic_string_forward(r_h, l, Parity::Odd, false).value == 0.0);
  const double odd_half = cosmic_string_forward(r_h, l, Parity::Odd, true).value;
  CHECK(odd_half == doctest::Approx(16 * std::pow(kPi, 3) * std::pow(l, 6) / std::pow(r_h, 5)).epsilon(1e-14));
  CHECK(cosmic_string_forward(1.0, 0.02, Parity::Even, false).regime_warning);
  CHECK_THROWS_AS(cosmic_string_forward(0.0, 1.0, Parity::Even, false), DomainError);
}

TEST_CASE("cosmic string limits follow from the forward value at small deficit") {
  for (double l : {1e-3, 3e-3, 1e-2}) {
    const double r_h = 1.0;
    const double eta = cosmic_string_eta(r_h, l);
    for (int n : {2, 3}) {
      for (bool half : {false, true}) {
        ScatterConfig c = make(eta, 0.5 * n, r_h);
        if (half) c.spin = scattering::Spin::PlusHalf;
        const double exact = dsigma_short_forward(c);
        const Parity p = n % 2 == 0 ? Parity::Even : Parity::Odd;
        const double lim = cosmic_string_forward(r_h, l, p, half).value;
        CAPTURE(l);
        CAPTURE(n);
        CAPTURE(half);
        if (lim == 0.0) {
          CHECK(exact < 1e-30);
        } else {
          CHECK(rel_err(exact, lim) < 3 * eta);
        }
      }
    }
  }
}
