#include "kpqgp/eos.hpp"

#include <cmath>
#include <string>

#include "kpqgp/errors.hpp"
#include "kpqgp/kp_model.hpp"
#include "kpqgp/spectral.hpp"

namespace kpqgp::eos {

namespace {

void require_gamma6(const EosParameters& p, const char* who) {
  if (p.gamma_Q != 6)
    throw ContractError(std::string(who) +
                        ": closed forms in pi^(2/3) rho^(4/3) need gamma_Q = 6");
}

/// gamma_Q k_F^4 / (8 pi^2): the quark pressure, one third of the quark
/// energy density.
double quark_pressure(double k_F, int gamma_Q) {
  const double k2 = k_F * k_F;
  return static_cast<double>(gamma_Q) / (2.0 * kPi * kPi) * k2 * k2 / 4.0;
}

double coupling(const EosParameters& p) { return p.g * p.g; }

/// Spectral derivative bundle of one density field.
struct DerivativeSet {
  ScalarField3D lap;           // lap rho
  ScalarField3D bilap;         // lap lap rho
  std::array<ScalarField3D, 3> grad;      // grad rho
  std::array<ScalarField3D, 3> grad_lap;  // grad lap rho
};

DerivativeSet derivatives(const ScalarField3D& rho) {
  SpectralGrid grid(rho);
  std::vector<Complex> base(grid.spectral_size()), work(grid.spectral_size());
  grid.forward(rho.values, base);

  DerivativeSet d{rho, rho, {rho, rho, rho}, {rho, rho, rho}};
  auto k2_at = [&](std::size_t i, std::size_t j, std::size_t k) {
    return grid.kx(i) * grid.kx(i) + grid.ky(j) * grid.ky(j) +
           grid.kz(k) * grid.kz(k);
  };
  auto apply = [&](auto&& symbol, ScalarField3D& out) {
    for (std::size_t k = 0; k < rho.nz; ++k)
      for (std::size_t j = 0; j < rho.ny; ++j)
        for (std::size_t i = 0; i < grid.nkx(); ++i) {
          const auto s = grid.spectral_index(i, j, k);
          work[s] = base[s] * symbol(i, j, k);
        }
    grid.inverse(work, out.values);
  };
  apply([&](auto i, auto j, auto k) { return Complex(-k2_at(i, j, k)); },
        d.lap);
  apply([&](auto i, auto j, auto k) {
          const double k2 = k2_at(i, j, k);
          return Complex(k2 * k2);
        },
        d.bilap);
  for (int a = 0; a < 3; ++a) {
    auto component = [&, a](std::size_t i, std::size_t j, std::size_t k) {
      switch (a) {
        case 0: return grid.nyquist_x(i) ? 0.0 : grid.kx(i);
        case 1: return grid.nyquist_y(j) ? 0.0 : grid.ky(j);
        default: return grid.nyquist_z(k) ? 0.0 : grid.kz(k);
      }
    };
    apply([&](auto i, auto j, auto k) {
            return Complex(0.0, component(i, j, k));
          },
          d.grad[a]);
    apply([&](auto i, auto j, auto k) {
            return Complex(0.0, -component(i, j, k) * k2_at(i, j, k));
          },
          d.grad_lap[a]);
  }
  return d;
}

void require_nonnegative(const ScalarField3D& rho, const char* who) {
  for (double v : rho.values)
    if (v < 0.0)
      throw DomainError(std::string(who) + ": negative baryon density");
}

}  // namespace

EosParameters EosParameters::make(double g, MeV gluon_mass, double bag,
                                  double rho0, int gamma_Q) {
  EosParameters p;
  p.g = g;
  p.m_G = to_inverse_fm(gluon_mass).value;
  p.bag = bag;
  p.rho0 = rho0;
  p.gamma_Q = gamma_Q;
  p.validate();
  return p;
}

void EosParameters::validate() const {
  if (!(g >= 0.0)) throw DomainError("EosParameters: g must be >= 0");
  if (!(m_G > 0.0)) throw DomainError("EosParameters: m_G must be > 0");
  if (!(rho0 > 0.0)) throw DomainError("EosParameters: rho0 must be > 0");
  if (gamma_Q < 1) throw DomainError("EosParameters: gamma_Q must be >= 1");
  if (!std::isfinite(bag)) throw DomainError("EosParameters: bag not finite");
}

EosParameters reference_parameters() {
  return EosParameters::make(1.15, MeV{460.0}, 0.0, 1.0, 6);
}

double fermi_momentum(double rho_B, int gamma_Q) {
  if (rho_B < 0.0) throw DomainError("fermi_momentum: rho_B must be >= 0");
  if (gamma_Q < 1) throw DomainError("fermi_momentum: gamma_Q must be >= 1");
  return std::cbrt(6.0 * kPi * kPi * rho_B / static_cast<double>(gamma_Q));
}

double density_from_fermi_momentum(double k_F, int gamma_Q) {
  return static_cast<double>(gamma_Q) * k_F * k_F * k_F / (6.0 * kPi * kPi);
}

double energy_density_uniform(const EosParameters& p, double rho_B) {
  const double kf = fermi_momentum(rho_B, p.gamma_Q);
  const double gluon = 27.0 * coupling(p) / (16.0 * p.m_G * p.m_G);
  return gluon * rho_B * rho_B + p.bag + 3.0 * quark_pressure(kf, p.gamma_Q);
}

double pressure_uniform(const EosParameters& p, double rho_B) {
  const double kf = fermi_momentum(rho_B, p.gamma_Q);
  const double gluon = 27.0 * coupling(p) / (16.0 * p.m_G * p.m_G);
  return gluon * rho_B * rho_B - p.bag + quark_pressure(kf, p.gamma_Q);
}

ScalarField3D energy_density_field(const EosParameters& p,
                                   const ScalarField3D& rho) {
  rho.require_periodic("energy_density_field");
  require_nonnegative(rho, "energy_density_field");
  const auto d = derivatives(rho);
  const double g2 = coupling(p);
  const double m2 = p.m_G * p.m_G;
  const double c2 = 27.0 * g2 / (16.0 * m2);
  const double c4 = c2 / m2, c6 = c4 / m2, c8 = c6 / m2;

  ScalarField3D out = rho;
  out.role = "eps";
  for (std::size_t n = 0; n < rho.size(); ++n) {
    const double r = rho.values[n];
    const double l1 = d.lap.values[n], l2 = d.bilap.values[n];
    out.values[n] = c2 * r * r + c4 * r * l1 + c6 * r * l2 + c8 * l1 * l2 +
                    p.bag +
                    3.0 * quark_pressure(fermi_momentum(r, p.gamma_Q), p.gamma_Q);
  }
  return out;
}

ScalarField3D pressure_field(const EosParameters& p, const ScalarField3D& rho) {
  rho.require_periodic("pressure_field");
  require_nonnegative(rho, "pressure_field");
  const auto d = derivatives(rho);
  const double g2 = coupling(p);
  const double m2 = p.m_G * p.m_G, m4 = m2 * m2, m6 = m4 * m2, m8 = m4 * m4;

  ScalarField3D out = rho;
  out.role = "p";
  for (std::size_t n = 0; n < rho.size(); ++n) {
    const double r = rho.values[n];
    const double l1 = d.lap.values[n], l2 = d.bilap.values[n];
    double grad2 = 0.0, gradlap2 = 0.0, grad_gradlap = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double gr = d.grad[a].values[n], gl = d.grad_lap[a].values[n];
      grad2 += gr * gr;
      gradlap2 += gl * gl;
      grad_gradlap += gr * gl;
    }
    out.values[n] = 27.0 * g2 / (16.0 * m2) * r * r
                  + 9.0 * g2 / (4.0 * m4) * r * l1
                  - 9.0 * g2 / (8.0 * m6) * r * l2
                  - 9.0 * g2 / (16.0 * m4) * grad2
                  + 9.0 * g2 / (16.0 * m6) * l1 * l1
                  - 9.0 * g2 / (8.0 * m8) * l1 * l2
                  - 9.0 * g2 / (16.0 * m8) * gradlap2
                  - 9.0 * g2 / (8.0 * m6) * grad_gradlap
                  - p.bag
                  + quark_pressure(fermi_momentum(r, p.gamma_Q), p.gamma_Q);
  }
  return out;
}

double gluon_term(const EosParameters& p) {
  return 27.0 * coupling(p) * p.rho0 * p.rho0 / (8.0 * p.m_G * p.m_G);
}

double quark_term(const EosParameters& p) {
  return kPiTwoThirds * std::pow(p.rho0, 4.0 / 3.0);
}

double constant_A(const EosParameters& p) {
  p.validate();
  require_gamma6(p, "constant_A");
  return gluon_term(p) + quark_term(p);
}

SoundSpeed speed_of_sound(const EosParameters& p) {
  p.validate();
  require_gamma6(p, "speed_of_sound");
  const double gl = gluon_term(p), qk = quark_term(p);
  const double cs2 = (gl + qk) / (gl + 3.0 * qk);
  return {std::sqrt(cs2), cs2};
}

double cs_from_derivative(const EosParameters& p, double rho0, double h) {
  if (!(h > 0.0 && h < 0.1))
    throw ContractError("cs_from_derivative: need 0 < h < 0.1");
  if (!(rho0 > 0.0)) throw DomainError("cs_from_derivative: rho0 must be > 0");
  const double lo = rho0 * (1.0 - h), hi = rho0 * (1.0 + h);
  const double de = energy_density_uniform(p, hi) - energy_density_uniform(p, lo);
  const double dp = pressure_uniform(p, hi) - pressure_uniform(p, lo);
  if (!(de > 0.0))
    throw DomainError(
        "cs_from_derivative: energy density not increasing near rho0");
  const double cs2 = dp / de;
  if (!(cs2 >= 0.0))
    throw DomainError("cs_from_derivative: negative dp/deps near rho0");
  return std::sqrt(cs2);
}

MediumCoefficients medium_coefficients(const EosParameters& p) {
  const auto s = speed_of_sound(p);
  MediumCoefficients m;
  m.A = constant_A(p);
  m.cs = s.cs;
  m.cs2 = s.cs2;
  m.alpha = alpha_relativistic(p);
  m.beta = beta_relativistic(p);
  m.M_eff = effective_mass(p);
  return m;
}

std::vector<EosTableRow> eos_table(const EosParameters& p,
                                   const std::vector<double>& densities) {
  p.validate();
  std::vector<EosTableRow> rows;
  rows.reserve(densities.size());
  const double gluon = 27.0 * coupling(p) / (16.0 * p.m_G * p.m_G);
  for (double rho : densities) {
    const double kf = fermi_momentum(rho, p.gamma_Q);
    // d(k_F^4)/d rho = (4/3) k_F^4 / rho, so the quark parts of dp/drho and
    // deps/drho are (4/3) P_q / rho and 4 P_q / rho.
    double cs2 = 1.0 / 3.0;
    if (rho > 0.0) {
      const double pq = quark_pressure(kf, p.gamma_Q);
      const double dp = 2.0 * gluon * rho + (4.0 / 3.0) * pq / rho;
      const double de = 2.0 * gluon * rho + 4.0 * pq / rho;
      cs2 = dp / de;
    }
    rows.push_back({rho, kf, energy_density_uniform(p, rho),
                    pressure_uniform(p, rho), cs2});
  }
  return rows;
}

}  // namespace kpqgp::eos
