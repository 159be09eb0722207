#include "conevortex/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "conevortex/errors.hpp"

namespace conevortex::geometry {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool near_integer(double u) {
  return std::abs(u - std::round(u)) <= kGuard * std::max(1.0, std::abs(u));
}

}  // namespace

void ConeGeometry::validate() const {
  if (!std::isfinite(eta) || !(eta < 1.0)) {
    throw DomainError("eta must be a finite number below 1, got " + std::to_string(eta));
  }
}

const char* to_string(Region region) noexcept {
  switch (region) {
    case Region::Shadow: return "shadow";
    case Region::DoubleImage: return "double-image";
    case Region::Flat: return "flat";
  }
  return "unknown";
}

double normalize_angle(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double centered_angle(double phi) {
  double r = normalize_angle(phi);
  if (r > kPi) r -= kTwoPi;
  return r;
}

RegionKind scattering_angle(const ConeGeometry& geom) {
  geom.validate();
  if (geom.eta == 0.0) return {Region::Flat, 0.0};
  const double q = geom.excess();
  if (q < 0.0) return {Region::Shadow, -q * kPi};
  if (near_integer(q)) {
    throw DegenerateGeometry("eta=" + std::to_string(geom.eta) +
                             " lies on a band edge between shadow and double-image regimes");
  }
  const double m = std::floor(q);
  const bool even = std::fmod(m, 2.0) == 0.0;
  if (even) return {Region::DoubleImage, (q - m) * kPi};
  return {Region::Shadow, (m + 1.0 - q) * kPi};
}

std::vector<long> l_range(const ConeGeometry& geom, double phi, double phi_prime, LRange which) {
  geom.validate();
  const double q = geom.excess();
  const double p = normalize_angle(phi);
  const double pp = which == LRange::Shortwave ? 0.0 : normalize_angle(phi_prime);
  const double base = (pp - p) / kTwoPi;
  const double lo = base - 0.5 * q;
  const double hi = base + 1.0 + 0.5 * q;
  if (near_integer(lo) || near_integer(hi)) {
    throw DegenerateGeometry("direction phi=" + std::to_string(phi) +
                             " puts an image index on the interval boundary");
  }
  std::vector<long> out;
  for (long l = static_cast<long>(std::floor(lo)) + 1; static_cast<double>(l) < hi; ++l) {
    out.push_back(l);
  }
  return out;
}

ModeCounts mode_count_table(const ConeGeometry& geom) {
  ModeCounts out;
  out.region = scattering_angle(geom);
  const double q = geom.excess();
  if (out.region.kind == Region::Flat) {
    out.inside = 1;
    out.outside = 1;
    return out;
  }
  if (q < 0.0) {
    out.inside = 0;
    out.outside = 1;
    return out;
  }
  out.inside = 2 * static_cast<int>(std::ceil(0.5 * q));
  const double w = 1.0 + q;
  const int fl = static_cast<int>(std::floor(w));
  const int cl = static_cast<int>(std::ceil(w));
  out.outside = out.inside == fl ? cl : fl;
  return out;
}

bool inside_region(const ConeGeometry& geom, double phi, double phi_prime) {
  const RegionKind region = scattering_angle(geom);
  if (region.kind == Region::Flat) return false;
  const double d = std::abs(centered_angle(phi - phi_prime));
  if (std::abs(d - region.omega) <= kGuard * kPi) {
    throw DegenerateGeometry("direction phi=" + std::to_string(phi) + " lies on the region boundary");
  }
  return d < region.omega;
}

std::vector<Polyline> trajectories(const ConeGeometry& geom, const std::vector<double>& impact_params,
                                   double extent, int samples) {
  geom.validate();
  if (geom.eta != 0.0) scattering_angle(geom);
  if (!(extent > 0.0) || !std::isfinite(extent)) throw DomainError("trajectory extent must be positive");
  if (samples < 3) throw DomainError("trajectories need at least 3 samples");
  const double stretch = std::sqrt(1.0 - geom.eta);
  const double q = geom.excess();

  std::vector<Polyline> out;
  out.reserve(impact_params.size());
  for (double b : impact_params) {
    if (!(b != 0.0) || !std::isfinite(b)) throw DomainError("impact parameters must be nonzero");
    const double bt = std::abs(b) * stretch;  // distance of the line in the unrolled plane
    const double alpha = std::asinh(extent / bt);
    const double side = b > 0.0 ? 1.0 : -1.0;
    Polyline line;
    line.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
      const double t = -1.0 + 2.0 * i / (samples - 1);
      const double s = extent * std::sinh(alpha * t) / std::sinh(alpha);
      const double psi = std::atan2(bt, s);  // polar angle in the unrolled plane, (0, π)
      const double rt = std::hypot(s, bt);
      const double phi = kPi - (kPi - psi) * (1.0 + q);
      const double r = rt * stretch;
      line.push_back({r * std::cos(phi), side * r * std::sin(phi)});
    }
    out.push_back(std::move(line));
  }
  return out;
}

double measured_deflection(const Polyline& line) {
  if (line.size() < 4) throw DomainError("polyline too short to measure a deflection");
  const Point& a0 = line[0];
  const Point& a1 = line[1];
  const Point& b0 = line[line.size() - 2];
  const Point& b1 = line[line.size() - 1];
  const double in = std::atan2(a1.x2 - a0.x2, a1.x1 - a0.x1);
  const double outd = std::atan2(b1.x2 - b0.x2, b1.x1 - b0.x1);
  return centered_angle(outd - in);
}

}  // namespace conevortex::geometry
