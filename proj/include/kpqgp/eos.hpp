#pragma once

#include <string>
#include <vector>

#include "kpqgp/field.hpp"
#include "kpqgp/units.hpp"

/// Zero-temperature equation of state of the strongly interacting quark
/// gluon plasma: hard-gluon mean field (coupling g, dynamical mass m_G) plus a
/// degenerate massless quark gas and a bag constant.
namespace kpqgp::eos {

struct EosParameters {
  double g = 1.15;                            ///< hard-gluon coupling
  double m_G = to_inverse_fm(MeV{460}).value; ///< gluon mass [fm^-1]
  double bag = 0.0;                           ///< bag constant [fm^-4]
  int gamma_Q = 6;                            ///< quark degeneracy
  double rho0 = 1.0;                          ///< background density [fm^-3]

  static EosParameters make(double g, MeV gluon_mass, double bag,
                            double rho0, int gamma_Q = 6);
  double gluon_mass_mev() const { return to_mev(InverseFm{m_G}).value; }

  /// Throws DomainError on g < 0, m_G <= 0, rho0 <= 0, gamma_Q < 1.
  void validate() const;

  bool operator==(const EosParameters&) const = default;
};

/// rho0 = 1 fm^-3, g = 1.15, m_G = 460 MeV, B = 0.
EosParameters reference_parameters();

/// Everything the wave equations need from the medium.
struct MediumCoefficients {
  double A = 0.0;      ///< [fm^-4]
  double cs = 0.0;     ///< units of c
  double cs2 = 0.0;
  double alpha = 0.0;  ///< nonlinear coefficient
  double beta = 0.0;   ///< dispersion coefficient [fm^2]
  double M_eff = 0.0;  ///< effective baryon mass [fm^-1]
};

double fermi_momentum(double rho_B, int gamma_Q);
/// gamma_Q k_F^3 / (6 pi^2).
double density_from_fermi_momentum(double k_F, int gamma_Q);

double energy_density_uniform(const EosParameters& p, double rho_B);
double pressure_uniform(const EosParameters& p, double rho_B);

/// Full gradient expansions with spectral Laplacians. The input holds
/// rho_B [fm^-3] on a periodic grid with spacings in fm.
ScalarField3D energy_density_field(const EosParameters& p,
                                   const ScalarField3D& rho);
ScalarField3D pressure_field(const EosParameters& p, const ScalarField3D& rho);

/// 27 g^2 rho0^2 / (8 m_G^2), the gluon part of A.
double gluon_term(const EosParameters& p);
/// pi^(2/3) rho0^(4/3), the quark part of A.
double quark_term(const EosParameters& p);

double constant_A(const EosParameters& p);

struct SoundSpeed {
  double cs;
  double cs2;
};
SoundSpeed speed_of_sound(const EosParameters& p);

/// sqrt(dp/deps) by central differences of the uniform EOS at rho0 with
/// relative density step h. Throws DomainError if eps is not increasing.
double cs_from_derivative(const EosParameters& p, double rho0, double h);

MediumCoefficients medium_coefficients(const EosParameters& p);

struct EosTableRow {
  double rho_B, k_F, eps, p, cs2;
};
/// cs2 column is the analytic local dp/deps of the uniform EOS; 1/3 at rho = 0.
std::vector<EosTableRow> eos_table(const EosParameters& p,
                                   const std::vector<double>& densities);

}  // namespace kpqgp::eos
