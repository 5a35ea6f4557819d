#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "kpqgp/kp_model.hpp"
#include "kpqgp/solitons.hpp"

/// Finite-difference substitution of a closed-form field into the cartesian
/// or cylindrical KP operator, with an observed convergence order.
namespace kpqgp::residual {

/// rho(c1, c2, c3, t) with (c1, c2, c3) = (x, y, z) or (r, phi, z).
using Solution = std::function<double(double, double, double, double)>;

/// Cartesian:   rho_xt + cs rho_xx + alpha (rho_x^2 + rho rho_xx) + beta rho_xxxx
///              + (cs/2)(rho_yy + rho_zz)
/// Cylindrical: rho_rt + cs rho_rr + alpha (rho_r^2 + rho rho_rr) + beta rho_rrrr
///              + rho_r / 2t + rho_phiphi / (2 cs t^2) + (cs/2) rho_zz
double operator_value(const WaveEquationSpec& spec, const Solution& rho,
                      std::array<double, 4> point, std::array<double, 4> steps);

/// Axis-aligned box of probe points in (c1, c2, c3, t).
struct ProbeBox {
  std::array<double, 4> lo{};
  std::array<double, 4> hi{};
  std::array<std::size_t, 4> counts{1, 1, 1, 1};
  std::vector<std::array<double, 4>> points() const;
};

struct ResidualRow {
  double step_scale;   ///< multiplier applied to base_steps
  double max_residual;
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
  std::vector<double> orders;   ///< log2 of successive residual ratios
  bool monotone = true;
  bool passed = false;          ///< all orders in [min_order, max_order]
  std::string message;
};

struct ResidualOptions {
  std::array<double, 4> base_steps{0.1, 0.1, 0.1, 0.1};
  std::size_t halvings = 3;
  double min_order = 3.7;
  double max_order = 4.3;
};

/// Max |operator| over the probe points at base_steps / 2^n for n = 0..halvings.
/// Cylindrical probes need t > 0 (ContractError otherwise).
ResidualReport residual_check(const Solution& rho, const WaveEquationSpec& spec,
                              const ProbeBox& box,
                              const ResidualOptions& options = {});

/// Probe boxes straddling the soliton crest at time t: around z = 2 fm and
/// phi = 0 for the cylindrical solution, around y = 10 fm, z = 1 fm for the
/// cartesian one.
ProbeBox crest_probe_cyl(const solitons::SolitonCyl& sol, double t);
ProbeBox crest_probe_cart(const solitons::SolitonCart& sol, double t);

/// Step ladder for the cartesian crest: base steps 0.08 fm. The
/// reference-parameter profile is narrower than the cylindrical one, and steps
/// below ~0.01 fm hit rounding in the phase at |x| ~ 50 fm.
ResidualOptions crest_options_cart();

}  // namespace kpqgp::residual
