#include "kpqgp/solitons.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kpqgp/errors.hpp"
#include "kpqgp/parallel.hpp"
#include "kpqgp/spectral.hpp"

namespace kpqgp::solitons {

namespace {

constexpr double kUnitNormTolerance = 1e-12;

void require_dispersive(const WaveEquationSpec& spec, const char* who) {
  if (!(spec.beta > 0.0))
    throw DispersionlessError(std::string(who) +
                              ": beta must be > 0 (soliton undefined without "
                              "dispersion)");
}

}  // namespace

double sech2(double x) {
  const double ax = std::abs(x);
  if (ax > 350.0) return 0.0;
  const double e = std::exp(-2.0 * ax);
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

SolitonCyl SolitonCyl::from_direction(double a, double u) {
  if (!(a > 0.0 && a <= 1.0))
    throw DomainError("SolitonCyl: need 0 < a <= 1");
  SolitonCyl s{a, std::sqrt(1.0 - a * a), a, u};
  s.validate();
  return s;
}

void SolitonCyl::validate() const {
  if (!(a > 0.0)) throw DomainError("SolitonCyl: a must be > 0");
  if (std::abs(a * a + b * b - 1.0) > kUnitNormTolerance)
    throw DomainError("SolitonCyl: a^2 + b^2 must equal 1");
  if (d != a) throw ContractError("SolitonCyl: d must equal a");
}

SolitonCart SolitonCart::from_direction(double A_dir, double U, double C_dir) {
  if (!(A_dir > 0.0)) throw DomainError("SolitonCart: A must be > 0");
  const double b2 = 1.0 - A_dir * A_dir - C_dir * C_dir;
  if (b2 < 0.0)
    throw DomainError("SolitonCart: A^2 + C^2 > 1 makes B imaginary");
  SolitonCart s{A_dir, std::sqrt(b2), C_dir, U};
  s.validate();
  return s;
}

void SolitonCart::validate() const {
  if (!(A_dir > 0.0)) throw DomainError("SolitonCart: A must be > 0");
  if (std::abs(A_dir * A_dir + B_dir * B_dir + C_dir * C_dir - 1.0) >
      kUnitNormTolerance)
    throw DomainError("SolitonCart: A^2 + B^2 + C^2 must equal 1");
}

double cyl_threshold_speed(const WaveEquationSpec& spec, const SolitonCyl& sol) {
  return sol.a * spec.cs + sol.b * sol.b * spec.cs / (2.0 * sol.a);
}

HConstants h_constants(const WaveEquationSpec& spec, const SolitonCyl& sol) {
  sol.validate();
  require_dispersive(spec, "h_constants");
  const double a3 = sol.a * sol.a * sol.a;
  return {(sol.u - cyl_threshold_speed(spec, sol)) / (a3 * spec.beta),
          spec.alpha / (3.0 * sol.a * sol.a * spec.beta)};
}

CkpSoliton::CkpSoliton(const SolitonCyl& sol, const WaveEquationSpec& spec)
    : sol_(sol), cs_(spec.cs), h_(h_constants(spec, sol)) {
  if (!(h_.h1 > 0.0))
    throw NonexistentSolitonError(
        "ckp soliton: h1 <= 0, need u > a cs + b^2 cs / 2a");
  amplitude_ = h_.amplitude();
  width_ = 0.5 * std::sqrt(h_.h1);
}

double CkpSoliton::phase_speed(double phi) const {
  return sol_.u + sol_.a * cs_ * phi * phi / 2.0;
}

double CkpSoliton::crest_radius(double phi, double z, double t) const {
  return (phase_speed(phi) * t - sol_.b * z) / sol_.a;
}

double CkpSoliton::operator()(double r, double phi, double z, double t) const {
  if (!(t > 0.0)) throw ContractError("ckp soliton: requires t > 0");
  const double phase = sol_.a * r + sol_.b * z - phase_speed(phi) * t;
  return amplitude_ * sech2(width_ * phase);
}

double cart_offset_speed(const WaveEquationSpec& spec, const SolitonCart& sol) {
  return sol.A_dir * spec.cs + sol.B_dir * sol.B_dir * spec.cs / 2.0 +
         sol.C_dir * sol.C_dir * spec.cs / 2.0;
}

double cart_consistent_speed(const WaveEquationSpec& spec,
                             const SolitonCart& sol) {
  const double perp2 = sol.B_dir * sol.B_dir + sol.C_dir * sol.C_dir;
  return sol.U + spec.cs * perp2 * (1.0 / sol.A_dir - 1.0) / 2.0;
}

KpSoliton::KpSoliton(const SolitonCart& sol, const WaveEquationSpec& spec)
    : sol_(sol) {
  sol.validate();
  require_dispersive(spec, "kp soliton");
  w_ = cart_offset_speed(spec, sol);
  const double excess = sol.U - w_;
  if (!(excess > 0.0))
    throw NonexistentSolitonError("kp soliton: need U > w");
  amplitude_ = 3.0 * excess / (sol.A_dir * spec.alpha);
  width_ = std::sqrt(excess / (4.0 * std::pow(sol.A_dir, 3) * spec.beta));
}

double KpSoliton::profile(double phase) const {
  return amplitude_ * sech2(width_ * phase);
}

double KpSoliton::operator()(double x, double y, double z, double t) const {
  return profile(sol_.A_dir * x + sol_.B_dir * y + sol_.C_dir * z - sol_.U * t);
}

double ckp_solution(const SolitonCyl& sol, const WaveEquationSpec& spec,
                    double r, double phi, double z, double t) {
  return CkpSoliton(sol, spec)(r, phi, z, t);
}

double kp_solution(const SolitonCart& sol, const WaveEquationSpec& spec,
                   double x, double y, double z, double t) {
  return KpSoliton(sol, spec)(x, y, z, t);
}

BoundaryPoint existence_bounds(const eos::MediumCoefficients& medium,
                               Geometry geometry, double a, double C_dir) {
  if (!(a > 0.0)) throw DomainError("existence: direction constant must be > 0");
  const double cs = medium.cs;
  double lower = 0.0;
  if (geometry == Geometry::Cylindrical) {
    if (a > 1.0) throw DomainError("existence_cyl: need a <= 1");
    lower = a * cs + (1.0 - a * a) * cs / (2.0 * a);
  } else {
    if (a * a + C_dir * C_dir > 1.0)
      throw DomainError("existence_cart: A^2 + C^2 > 1 makes B imaginary");
    const double b2 = 1.0 - a * a - C_dir * C_dir;
    lower = a * cs + b2 * cs / 2.0 + C_dir * C_dir * cs / 2.0;
  }
  return {a, lower, lower + a * medium.alpha / 3.0};
}

namespace {

Existence classify(const eos::MediumCoefficients& medium, const BoundaryPoint& b,
                   double u) {
  const double margin = u - b.u_lower;
  const double amplitude = 3.0 * margin / (b.a * medium.alpha);
  return {margin > 0.0 && amplitude < 1.0, margin, amplitude};
}

}  // namespace

Existence existence_cyl(const eos::MediumCoefficients& medium, double a,
                        double u) {
  return classify(medium, existence_bounds(medium, Geometry::Cylindrical, a), u);
}

Existence existence_cart(const eos::MediumCoefficients& medium, double A_dir,
                         double U, double C_dir) {
  return classify(medium,
                  existence_bounds(medium, Geometry::Cartesian, A_dir, C_dir),
                  U);
}

namespace {

bool direction_allowed(Geometry geometry, double a, double C_dir) {
  if (!(a > 0.0)) return false;
  return geometry == Geometry::Cylindrical ? a <= 1.0 : a * a + C_dir * C_dir <= 1.0;
}

}  // namespace

RegionScan existence_region_scan(const eos::MediumCoefficients& medium,
                                 Geometry geometry, Range a_range,
                                 Range u_range, double C_dir,
                                 unsigned threads) {
  if (a_range.n == 0 || u_range.n == 0)
    throw ContractError("existence_region_scan: grid sizes must be positive");
  RegionScan scan;
  scan.geometry = geometry;
  scan.curves.resize(a_range.n);
  scan.cells.resize(a_range.n * u_range.n);
  const double du =
      u_range.n > 1 ? (u_range.hi - u_range.lo) / double(u_range.n - 1) : 0.0;

  parallel_for(a_range.n, threads, [&](std::size_t i) {
    const double a = a_range.at(i);
    if (!direction_allowed(geometry, a, C_dir)) {
      // No real direction vector: nothing is admissible, no curves.
      scan.curves[i] = {a, NAN, NAN};
      for (std::size_t j = 0; j < u_range.n; ++j)
        scan.cells[i * u_range.n + j] = {a, u_range.at(j), false, false, NAN, NAN};
      return;
    }
    const auto bounds = existence_bounds(medium, geometry, a, C_dir);
    scan.curves[i] = bounds;
    for (std::size_t j = 0; j < u_range.n; ++j) {
      const double u = u_range.at(j);
      const auto e = classify(medium, bounds, u);
      const bool near = std::abs(u - bounds.u_lower) < 0.5 * du ||
                        std::abs(u - bounds.u_upper) < 0.5 * du;
      scan.cells[i * u_range.n + j] = {a, u, e.admissible, near,
                                       e.margin_speed, e.amplitude};
    }
  });
  return scan;
}

VelocityFields velocity_fields(const ScalarField3D& rho1,
                               VelocityGeometry geometry,
                               double stretched_time) {
  rho1.require_periodic("velocity_fields");
  if (geometry == VelocityGeometry::Cylindrical && !(stretched_time > 0.0))
    throw ContractError("velocity_fields: cylindrical recovery needs T > 0");

  SpectralGrid grid(rho1);
  std::vector<Complex> base(grid.spectral_size());
  grid.forward(rho1.values, base);
  double scale = 0.0;
  for (const auto& c : base) scale = std::max(scale, std::abs(c));
  const double kmax = std::max({grid.max_kx(), std::sqrt(grid.max_k_perp2()), 1.0});
  const double tol = 1e-10 * scale * kmax + 1e-300;

  auto recover = [&](Axis axis, double factor) {
    std::vector<Complex> work(base.size());
    for (std::size_t k = 0; k < rho1.nz; ++k)
      for (std::size_t j = 0; j < rho1.ny; ++j)
        for (std::size_t i = 0; i < grid.nkx(); ++i) {
          const auto s = grid.spectral_index(i, j, k);
          const bool nyq = axis == Axis::Y ? grid.nyquist_y(j) : grid.nyquist_z(k);
          const double kt = axis == Axis::Y ? grid.ky(j) : grid.kz(k);
          if (nyq || kt == 0.0 || grid.nyquist_x(i)) {
            work[s] = 0.0;
            continue;
          }
          if (i == 0) {
            if (std::abs(kt * base[s]) > tol)
              throw ContractError(
                  "velocity_fields: transverse gradient has nonzero mean along "
                  "the longitudinal axis (line j=" + std::to_string(j) +
                  ", k=" + std::to_string(k) + ")");
            work[s] = 0.0;
            continue;
          }
          // (i kt) / (i kx)
          work[s] = base[s] * (factor * kt / grid.kx(i));
        }
    ScalarField3D out = rho1;
    grid.inverse(work, out.values);
    return out;
  };

  VelocityFields v{rho1, rho1, rho1};
  v.longitudinal.role = "v_long";
  const double azimuthal =
      geometry == VelocityGeometry::Cylindrical ? 1.0 / stretched_time : 1.0;
  v.transverse1 = recover(Axis::Y, azimuthal);
  v.transverse2 = recover(Axis::Z, 1.0);
  v.transverse1.role = "v_t1";
  v.transverse2.role = "v_t2";
  return v;
}

}  // namespace kpqgp::solitons
