#include "kpqgp/kp_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kpqgp/errors.hpp"

namespace kpqgp {

using eos::EosParameters;

std::string_view to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::KpCart: return "kp";
    case WaveKind::CkpCyl: return "ckp";
    case WaveKind::Kdv: return "kdv";
    case WaveKind::BreakingWaveMit: return "breaking-mit";
    case WaveKind::BreakingWaveFull: return "breaking-full";
    case WaveKind::KpCartNr: return "kp-nr";
    case WaveKind::CkpCylNr: return "ckp-nr";
  }
  throw UsageError("unknown wave kind");
}

WaveKind parse_wave_kind(std::string_view name) {
  for (auto k : {WaveKind::KpCart, WaveKind::CkpCyl, WaveKind::Kdv,
                 WaveKind::BreakingWaveMit, WaveKind::BreakingWaveFull,
                 WaveKind::KpCartNr, WaveKind::CkpCylNr})
    if (to_string(k) == name) return k;
  throw UsageError("unknown wave equation kind '" + std::string(name) + "'");
}

double nonlinear_bracket(const EosParameters& p) {
  const double A = eos::constant_A(p);
  const double cs2 = eos::speed_of_sound(p).cs2;
  return 1.5 * (1.0 - cs2) - eos::quark_term(p) / (3.0 * A);
}

double nonlinear_bracket_unsimplified(const EosParameters& p) {
  const double A = eos::constant_A(p);
  const double cs2 = eos::speed_of_sound(p).cs2;
  const double gl = eos::gluon_term(p), qk = eos::quark_term(p);
  return (2.0 - cs2) / 2.0 - gl * (2.0 * cs2 - 1.0) / (2.0 * A) -
         qk / A * (cs2 - 1.0 / 6.0);
}

double alpha_relativistic(const EosParameters& p) {
  const double simplified = nonlinear_bracket(p);
  const double raw = nonlinear_bracket_unsimplified(p);
  if (std::abs(simplified - raw) > 1e-12 * std::max(1.0, std::abs(raw)))
    throw std::logic_error("alpha_relativistic: bracket forms disagree");
  return simplified * eos::speed_of_sound(p).cs;
}

double beta_relativistic(const EosParameters& p) {
  const double cs = eos::speed_of_sound(p).cs;
  const double m4 = std::pow(p.m_G, 4);
  return 9.0 * p.g * p.g * p.rho0 * p.rho0 * cs /
         (8.0 * m4 * eos::constant_A(p));
}

double effective_mass(const EosParameters& p) {
  const double cs2 = eos::speed_of_sound(p).cs2;
  return 27.0 * p.g * p.g * p.rho0 / (8.0 * p.m_G * p.m_G * cs2) +
         kPiTwoThirds * std::cbrt(p.rho0) / cs2;
}

double alpha_nonrelativistic(const EosParameters& p) {
  const auto s = eos::speed_of_sound(p);
  const double M = effective_mass(p);
  return (1.5 - kPiTwoThirds * std::cbrt(p.rho0) / (3.0 * M * s.cs2)) * s.cs;
}

double beta_nonrelativistic(const EosParameters& p) {
  const double cs = eos::speed_of_sound(p).cs;
  const double M = effective_mass(p);
  return 9.0 * p.g * p.g * p.rho0 / (8.0 * M * std::pow(p.m_G, 4) * cs);
}

WaveEquationSpec build_wave_spec(const EosParameters& p, WaveKind kind) {
  p.validate();
  WaveEquationSpec s;
  s.kind = kind;
  const double cs = eos::speed_of_sound(p).cs;
  switch (kind) {
    case WaveKind::KpCart:
    case WaveKind::CkpCyl:
    case WaveKind::Kdv:
      s.cs = cs;
      s.alpha = alpha_relativistic(p);
      s.beta = beta_relativistic(p);
      break;
    case WaveKind::BreakingWaveMit:
      // m_G -> infinity: A = pi^(2/3) rho0^(4/3), cs^2 = 1/3.
      s.cs = 1.0 / std::sqrt(3.0);
      s.alpha = 2.0 / 3.0 * s.cs;
      s.beta = 0.0;
      break;
    case WaveKind::BreakingWaveFull:
      s.cs = cs;
      s.alpha = nonlinear_bracket_unsimplified(p) * cs;
      s.beta = 0.0;
      break;
    case WaveKind::KpCartNr:
    case WaveKind::CkpCylNr:
      s.cs = cs;
      s.alpha = alpha_nonrelativistic(p);
      s.beta = beta_nonrelativistic(p);
      break;
  }
  s.transverse_coeff = s.has_transverse() ? s.cs / 2.0 : 0.0;
  return s;
}

RpmScales rpm_scale_estimates(double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw DomainError("rpm_scale_estimates: need 0 < sigma < 1");
  RpmScales s;
  s.sigma = sigma;
  s.amplitude = sigma * sigma;
  s.wavelength = 1.0 / sigma;
  s.distance = 1.0 / (sigma * sigma * sigma);
  s.well_separated = s.wavelength >= 10.0 * s.amplitude &&
                     s.distance >= 10.0 * s.wavelength;
  return s;
}

}  // namespace kpqgp
