#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "kpqgp/field.hpp"

/// Linearized relativistic acoustics on a uniform background:
///   d_t^2 dp = cs^2 lap dp,   (eps0 + p0) d_t v = -grad dp,   d eps = dp / cs^2
namespace kpqgp::acoustics {

struct AcousticState {
  double eps0 = 0.0;  ///< [fm^-4]
  double p0 = 0.0;    ///< [fm^-4]
  double cs = 0.0;
  ScalarField3D delta_p;  ///< [fm^-4]

  double enthalpy() const { return eps0 + p0; }
  /// Throws DomainError unless eps0 + p0 > 0 and 0 < cs < 1.
  void validate() const;
  /// False when max|dp| exceeds 10% of |p0| (linearization suspect).
  bool small_perturbation() const;
};

/// p = eps/3 - 4B/3.
double mit_bag_pressure(double eps, double bag);
/// eps >= B, the region where the relation applies.
bool mit_bag_physical(double eps, double bag);

/// d eps = dp / cs^2.
ScalarField3D energy_perturbation(const ScalarField3D& delta_p, double cs);

enum class AcousticScheme { Spectral, Leapfrog };

struct AcousticConfig {
  double dt = 0.05;
  double t_end = 1.0;
  std::size_t snapshot_stride = 1;
  AcousticScheme scheme = AcousticScheme::Spectral;
};

struct AcousticSnapshot {
  double t;
  ScalarField3D delta_p;
  ScalarField3D dt_delta_p;
};

struct AcousticResult {
  std::vector<AcousticSnapshot> snapshots;
  std::vector<double> energy;  ///< one per snapshot
};

/// Leapfrog requires dt cs k_max <= 2 (ContractError otherwise). The spectral
/// scheme evaluates the exact normal-mode solution at every snapshot time.
AcousticResult acoustic_wave_solve_1d(const AcousticState& state,
                                      const ScalarField3D& delta_p0,
                                      const ScalarField3D& dt_delta_p0,
                                      const AcousticConfig& cfg);

/// Integral of (d_t dp)^2 / cs^2 + (d_x dp)^2 over the periodic line,
/// evaluated through Parseval.
double acoustic_energy(const ScalarField3D& delta_p,
                       const ScalarField3D& dt_delta_p, double cs);

/// Velocity at every snapshot. The start value follows from continuity,
/// v = -(1 / (w cs^2)) dx^-1 d_t dp with the zero-mean antiderivative; later
/// values add -(1/w) times the time integral of d_x dp (Hermite rule).
/// Throws ContractError with fewer than two snapshots.
std::vector<ScalarField3D> velocity_from_pressure(const AcousticState& state,
                                                  const AcousticResult& history);

/// dp = amplitude cos(k.x - cs |k| t + phase), v = khat dp / (w cs).
struct PlaneWave {
  double amplitude = 0.0;
  std::array<double, 3> k{1.0, 0.0, 0.0};
  double phase = 0.0;

  double pressure(const AcousticState& s, std::array<double, 3> x, double t) const;
  std::array<double, 3> velocity(const AcousticState& s, std::array<double, 3> x,
                                 double t) const;
};

}  // namespace kpqgp::acoustics
