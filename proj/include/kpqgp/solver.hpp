#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpqgp/eos.hpp"
#include "kpqgp/field.hpp"
#include "kpqgp/kp_model.hpp"
#include "kpqgp/solitons.hpp"

/// Pseudo-spectral time integration of the KdV, breaking-wave and cartesian
/// KP equations on periodic boxes, in evolution form
///   rho_t = -cs rho_x - alpha rho rho_x - beta rho_xxx
///           - (cs/2) dx^-1 (rho_yy + rho_zz)
/// The linear part is diagonal in Fourier space; the quadratic term is
/// evaluated in physical space and optionally dealiased by the 2/3 rule.
namespace kpqgp::solver {

enum class Integrator { Rk4, EtdRk4 };

std::string_view to_string(Integrator integrator);
Integrator parse_integrator(std::string_view name);

/// Stability constants: dt * rate <= C. For RK4 the rate is
/// cs k_max + beta k_max^3 + (cs/2) k_perp,max^2 / k_x,min + |alpha| max|rho| k_max;
/// ETD-RK4 integrates the linear part exactly and only the nonlinear rate
/// |alpha| max|rho| k_max counts.
inline constexpr double kStabilityRk4 = 2.5;
inline constexpr double kStabilityEtdRk4 = 2.5;

struct SolverConfig {
  double dt = 0.01;        ///< requested step [fm]; shortened to divide the run
  double t_start = 0.0;    ///< time label of the initial field [fm]
  double t_end = 1.0;      ///< [fm]
  bool dealias = true;
  Integrator integrator = Integrator::Rk4;
  std::size_t snapshot_stride = 100;  ///< steps between stored snapshots
  double blowup_factor = 1e3;         ///< max|rho| growth that aborts a run
  /// Breaking-wave runs stop once max|rho_x| exceeds this multiple of its
  /// initial value.
  double breaking_gradient_factor = 20.0;
};

struct Diagnostics {
  double t;
  double mass;      ///< sum rho dV
  double l2;        ///< sqrt(sum rho^2 dV)
  double peak;      ///< interpolated maximum along the peak's x line
  double peak_x;    ///< interpolated x of the maximum
  double peak_y;
  double peak_z;
  double max_abs_gradient_x;
};

struct Snapshot {
  double t;
  ScalarField3D field;
};

enum class RunStatus { Completed, BlowUp, Breaking };
std::string_view to_string(RunStatus status);

struct EvolutionResult {
  std::vector<Snapshot> snapshots;      ///< strictly increasing t
  std::vector<Diagnostics> diagnostics; ///< one per snapshot
  RunStatus status = RunStatus::Completed;
  std::string message;
  std::optional<double> breaking_time;
  std::size_t steps = 0;
  double dt = 0.0;  ///< step actually used
};

/// Largest stable step for the given field and equation.
double stable_time_step(const WaveEquationSpec& spec,
                        const ScalarField3D& initial, Integrator integrator);

/// 1-D KdV (or any 1-D spec without transverse terms).
EvolutionResult kdv_integrate(const WaveEquationSpec& spec,
                              const ScalarField3D& initial,
                              const SolverConfig& cfg);

/// Dispersionless 1-D evolution; stops at the gradient catastrophe.
EvolutionResult breaking_wave_integrate(const WaveEquationSpec& spec,
                                        const ScalarField3D& initial,
                                        const SolverConfig& cfg);

/// Cartesian KP on a 2-D or 3-D periodic box. Every transverse line must have
/// zero mean along x; otherwise ContractError names the first offending line.
EvolutionResult kp_integrate(const WaveEquationSpec& spec,
                             const ScalarField3D& initial,
                             const SolverConfig& cfg);

/// 1-D KdV spec in the (xi, tau) frame of the cylindrical soliton:
/// drift a cs + b^2 cs / 2a, nonlinearity a alpha, dispersion a^3 beta.
/// Throws ContractError when d != a.
WaveEquationSpec kdv_xi_tau_transform(const solitons::SolitonCyl& sol,
                                      const eos::MediumCoefficients& medium);

/// Periodic line-soliton initial data for kp_integrate. The cartesian
/// soliton depends on y and z only through B y + C z, so the run uses the
/// unit transverse coordinate eta = (B y + C z) / q with q = sqrt(B^2 + C^2),
/// a 2-D (x, eta) box and lengths with A lx = q leta so the crest line closes
/// on the torus. Each x line has its mean removed; that offset c0 lowers
/// the x speed by alpha c0.
struct KpLineSetup {
  ScalarField3D initial;      ///< nx x ny samples over (x, eta), mean removed
  double mean_offset;         ///< c0, subtracted from every sample
  double phase_period;        ///< A lx
  double speed_x;             ///< U / A - alpha c0
  double consistent_speed_x;  ///< V / A - alpha c0, V from cart_consistent_speed
};
KpLineSetup kp_line_soliton_setup(const solitons::SolitonCart& sol,
                                  const WaveEquationSpec& spec, std::size_t nx,
                                  std::size_t ny, double lx, double t0);

/// Peak position along x on line (j, k) for every snapshot, unwrapped across
/// the periodic boundary.
struct PeakTrack {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> value;
};
PeakTrack track_peak_x(const EvolutionResult& result, std::size_t j = 0,
                       std::size_t k = 0);
/// Least-squares slope of x(t).
double fit_speed(const PeakTrack& track);

/// Field translated by `shift` along x (spectral interpolation).
ScalarField3D shift_x(const ScalarField3D& f, double shift);

/// ||a - b||_2 / ||b||_2 over all samples.
double relative_l2(const ScalarField3D& a, const ScalarField3D& b);

}  // namespace kpqgp::solver
