#pragma once

#include <string>
#include <string_view>

#include "kpqgp/eos.hpp"

/// Coefficients of the wave equations obtained from the reductive
/// perturbation expansion, all written in physical (r, phi, z, t) or
/// (x, y, z, t) space, which is free of the stretching length.
///
/// Cartesian KP, the reference form:
///   d/dx { rho_t + cs rho_x + alpha rho rho_x + beta rho_xxx }
///     + (cs/2) (rho_yy + rho_zz) = 0
/// Cylindrical cKP adds rho/(2t) inside the braces and replaces rho_yy by
/// rho_phiphi / (cs^2 t^2). KdV drops the transverse terms; the breaking-wave
/// equations also drop dispersion.
namespace kpqgp {

enum class WaveKind {
  KpCart,
  CkpCyl,
  Kdv,
  BreakingWaveMit,
  BreakingWaveFull,
  KpCartNr,
  CkpCylNr,
};

std::string_view to_string(WaveKind kind);
/// Accepts kp, ckp, kdv, breaking-mit, breaking-full, kp-nr, ckp-nr.
WaveKind parse_wave_kind(std::string_view name);

struct WaveEquationSpec {
  WaveKind kind = WaveKind::Kdv;
  double cs = 0.0;     ///< linear drift speed
  double alpha = 0.0;  ///< coefficient of rho rho_x
  double beta = 0.0;   ///< coefficient of rho_xxx [fm^2]
  double transverse_coeff = 0.0;  ///< cs/2, zero for 1-D kinds

  bool has_transverse() const {
    return kind == WaveKind::KpCart || kind == WaveKind::CkpCyl ||
           kind == WaveKind::KpCartNr || kind == WaveKind::CkpCylNr;
  }
  bool cylindrical() const {
    return kind == WaveKind::CkpCyl || kind == WaveKind::CkpCylNr;
  }
};

/// [3/2 (1 - cs^2) - pi^(2/3) rho0^(4/3) / (3A)], the nonlinear bracket after
/// eliminating the gluon term through A.
double nonlinear_bracket(const eos::EosParameters& p);
/// The same bracket before the substitution, as it first appears:
/// (2 - cs^2)/2 - G (2 cs^2 - 1)/(2A) - (pi^(2/3) rho0^(4/3) / A)(cs^2 - 1/6)
/// with G = 27 g^2 rho0^2 / (8 m_G^2).
double nonlinear_bracket_unsimplified(const eos::EosParameters& p);

/// alpha = bracket * cs. Cross-checks both bracket forms to 1e-12 and throws
/// std::logic_error if they disagree.
double alpha_relativistic(const eos::EosParameters& p);
double beta_relativistic(const eos::EosParameters& p);
double effective_mass(const eos::EosParameters& p);

/// [3/2 - pi^(2/3) rho0^(1/3) / (3 M cs^2)] cs
double alpha_nonrelativistic(const eos::EosParameters& p);
/// 9 g^2 rho0 / (8 M m_G^4 cs)
double beta_nonrelativistic(const eos::EosParameters& p);

WaveEquationSpec build_wave_spec(const eos::EosParameters& p, WaveKind kind);

/// Order-of-magnitude bookkeeping of the expansion in sigma.
struct RpmScales {
  double sigma;
  double amplitude;   ///< ~ sigma^2
  double wavelength;  ///< ~ 1/sigma
  double distance;    ///< ~ 1/sigma^3
  /// amplitude << wavelength << distance with at least a decade between
  /// neighbours. False near sigma -> 1 where the ordering degenerates.
  bool well_separated;
};

/// Throws DomainError unless 0 < sigma < 1.
RpmScales rpm_scale_estimates(double sigma);

}  // namespace kpqgp
