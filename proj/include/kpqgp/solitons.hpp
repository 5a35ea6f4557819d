#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "kpqgp/eos.hpp"
#include "kpqgp/field.hpp"
#include "kpqgp/kp_model.hpp"

/// Closed-form sech^2 solitons of the cylindrical and cartesian KP
/// equations, their existence regions and first-order velocity fields.
namespace kpqgp::solitons {

/// sech^2(x), exactly zero once |x| exceeds the overflow guard.
double sech2(double x);

/// Direction constants (a, b) with a^2 + b^2 = 1, the coordinate constant d
/// (always equal to a) and the speed parameter u. Phase:
///   a r + b z - (u + a cs phi^2 / 2) t
struct SolitonCyl {
  double a = 0.6;
  double b = 0.8;
  double d = 0.6;
  double u = 0.73;

  /// b = sqrt(1 - a^2), d = a.
  static SolitonCyl from_direction(double a, double u);
  /// Throws DomainError unless a > 0 and |a^2 + b^2 - 1| <= 1e-12;
  /// ContractError when d != a.
  void validate() const;
};

/// Direction constants with A^2 + B^2 + C^2 = 1 and speed parameter U.
/// Phase: A x + B y + C z - U t.
struct SolitonCart {
  double A_dir = 0.6;
  double B_dir = 0.6244997998398398;  // sqrt(0.39)
  double C_dir = 0.5;
  double U = 0.66;

  /// B = sqrt(1 - A^2 - C^2).
  static SolitonCart from_direction(double A_dir, double U, double C_dir = 0.5);
  void validate() const;
};

/// h1 [fm^-2] and h2 [fm^-2] of the (xi, tau) KdV soliton.
struct HConstants {
  double h1;
  double h2;
  double amplitude() const { return h1 / h2; }
};

/// a cs + b^2 cs / (2a): drift of the (xi, tau) KdV equation.
double cyl_threshold_speed(const WaveEquationSpec& spec, const SolitonCyl& sol);

/// Throws DispersionlessError when beta = 0.
HConstants h_constants(const WaveEquationSpec& spec, const SolitonCyl& sol);

/// Precomputed evaluator of the cylindrical soliton rho1(r, phi, z, t).
class CkpSoliton {
 public:
  /// Throws NonexistentSolitonError when h1 <= 0.
  CkpSoliton(const SolitonCyl& sol, const WaveEquationSpec& spec);
  /// Requires t > 0 (ContractError otherwise).
  double operator()(double r, double phi, double z, double t) const;
  double amplitude() const { return amplitude_; }
  /// Phase velocity u + a cs phi^2 / 2 along the phase normal.
  double phase_speed(double phi) const;
  /// Radius of the crest: [(u + a cs phi^2/2) t - b z] / a.
  double crest_radius(double phi, double z, double t) const;
  const HConstants& h() const { return h_; }

 private:
  SolitonCyl sol_;
  double cs_;
  HConstants h_;
  double amplitude_;
  double width_;  // sqrt(h1)/2
};

/// w = A cs + B^2 cs/2 + C^2 cs/2.
double cart_offset_speed(const WaveEquationSpec& spec, const SolitonCart& sol);

/// Speed with which the cartesian profile actually satisfies the KP
/// equation: U + cs (B^2 + C^2)(1/A - 1)/2. Equals U only when A = 1.
double cart_consistent_speed(const WaveEquationSpec& spec,
                             const SolitonCart& sol);

/// Precomputed evaluator of the cartesian soliton rho1(x, y, z, t).
class KpSoliton {
 public:
  /// Throws NonexistentSolitonError when U <= w, DispersionlessError when
  /// beta = 0.
  KpSoliton(const SolitonCart& sol, const WaveEquationSpec& spec);
  double operator()(double x, double y, double z, double t) const;
  /// Profile as a function of the phase A x + B y + C z - U t.
  double profile(double phase) const;
  double amplitude() const { return amplitude_; }
  /// sqrt((U - w) / (4 A^3 beta)) [fm^-1].
  double width_parameter() const { return width_; }
  double offset_speed() const { return w_; }
  const SolitonCart& parameters() const { return sol_; }

 private:
  SolitonCart sol_;
  double w_;
  double amplitude_;
  double width_;
};

double ckp_solution(const SolitonCyl& sol, const WaveEquationSpec& spec,
                    double r, double phi, double z, double t);
double kp_solution(const SolitonCart& sol, const WaveEquationSpec& spec,
                   double x, double y, double z, double t);

struct Existence {
  bool admissible;
  double margin_speed;  ///< u minus its lower bound; must be > 0
  double amplitude;     ///< normalized amplitude; must be < 1
};

/// b^2 = 1 - a^2. Throws DomainError unless 0 < a <= 1.
Existence existence_cyl(const eos::MediumCoefficients& medium, double a,
                        double u);
/// B^2 = 1 - A^2 - C^2. Throws DomainError unless A > 0 and A^2 + C^2 <= 1.
Existence existence_cart(const eos::MediumCoefficients& medium, double A_dir,
                         double U, double C_dir = 0.5);

enum class Geometry { Cylindrical, Cartesian };

struct ScanCell {
  double a, u;
  bool admissible;
  /// Within half a grid step in u of one of the boundary curves.
  bool near_boundary;
  double margin_speed, amplitude;
};

struct BoundaryPoint {
  double a;
  double u_lower;  ///< margin_speed == 0
  double u_upper;  ///< amplitude == 1
};

struct RegionScan {
  Geometry geometry;
  std::vector<ScanCell> cells;  ///< a-major, u-minor
  std::vector<BoundaryPoint> curves;
};

struct Range {
  double lo, hi;
  std::size_t n;
  double at(std::size_t i) const {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(n - 1);
  }
};

/// Lower and upper admissible speeds for a direction constant.
BoundaryPoint existence_bounds(const eos::MediumCoefficients& medium,
                               Geometry geometry, double a,
                               double C_dir = 0.5);

/// Direction constants with no real direction vector (a outside (0, 1], or
/// A^2 + C^2 > 1) give inadmissible cells with NaN margins and NaN curves.
RegionScan existence_region_scan(const eos::MediumCoefficients& medium,
                                 Geometry geometry, Range a_range,
                                 Range u_range, double C_dir = 0.5,
                                 unsigned threads = 1);

enum class VelocityGeometry { Cartesian, Cylindrical };

/// First-order velocities from the first-order density perturbation sampled
/// on a periodic grid whose axes are (longitudinal, transverse 1,
/// transverse 2): (X, Y, Z) or (R, Phi, Z) in stretched coordinates.
struct VelocityFields {
  ScalarField3D longitudinal;
  ScalarField3D transverse1;
  ScalarField3D transverse2;
};

/// v_long = rho1; d v_t / d(long) = d rho1 / d(t) with the longitudinal
/// antiderivative taken spectrally (zero-mean convention). The cylindrical
/// azimuthal component carries the extra 1/T factor and needs T > 0.
/// Throws ContractError if the transverse gradient has a nonzero mean along
/// the longitudinal axis.
VelocityFields velocity_fields(const ScalarField3D& rho1,
                               VelocityGeometry geometry,
                               double stretched_time = 1.0);

}  // namespace kpqgp::solitons
