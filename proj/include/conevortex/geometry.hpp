#pragma once

// Classical kinematics on a cone with deficit parameter η: the deflection
// angle, shadow / double-image regions and the image-index bookkeeping of
// the distorted incident wave.

#include <vector>

namespace conevortex::geometry {

/// Relative width of the guard band used for band edges and interval endpoints.
inline constexpr double kGuard = 1e-12;

struct ConeGeometry {
  double eta = 0.0;

  void validate() const;
  /// η/(1−η); the angular excess of the unrolled cone in units of π.
  double excess() const { return eta / (1.0 - eta); }
};

enum class Region { Shadow, DoubleImage, Flat };

const char* to_string(Region region) noexcept;

struct RegionKind {
  Region kind = Region::Flat;
  double omega = 0.0;  // radians, in [0, π]
};

/// Throws DegenerateGeometry on band edges η = (m)/(m+1), m >= 1.
RegionKind scattering_angle(const ConeGeometry& geom);

/// Angle mapped to [0, 2π).
double normalize_angle(double phi);

/// Angle mapped to (−π, π].
double centered_angle(double phi);

enum class LRange { Incident, Shortwave };

/// Integers l strictly inside ((φ′−φ)/2π − q/2, (φ′−φ)/2π + 1 + q/2), q = η/(1−η).
/// The shortwave variant fixes φ′ = 0. An endpoint that lands on an integer
/// throws DegenerateGeometry.
std::vector<long> l_range(const ConeGeometry& geom, double phi, double phi_prime, LRange which);

struct ModeCounts {
  RegionKind region;
  int inside = 0;   // n_l for |φ−φ′| < ω
  int outside = 0;  // n_l elsewhere
};

ModeCounts mode_count_table(const ConeGeometry& geom);

/// True when the direction lies in the shadow / double-image window
/// |φ−φ′| < ω. Throws DegenerateGeometry on the window boundary.
bool inside_region(const ConeGeometry& geom, double phi, double phi_prime = 0.0);

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

using Polyline = std::vector<Point>;

/// Straight lines of the unrolled cone mapped back to (x¹, x²). The particle
/// enters from x¹ = −∞ moving along +x¹ with x² → b, and reaches a distance of
/// roughly `extent` on each side. Samples cluster near closest approach.
std::vector<Polyline> trajectories(const ConeGeometry& geom, const std::vector<double>& impact_params,
                                   double extent, int samples = 801);

/// Signed change of direction between the first and the last chord, in (−π, π].
double measured_deflection(const Polyline& line);

}  // namespace conevortex::geometry
