#include "kpqgp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kpqgp/errors.hpp"
#include "kpqgp/spectral.hpp"
#include "kpqgp/units.hpp"

namespace kpqgp::solver {

std::string_view to_string(Integrator integrator) {
  return integrator == Integrator::Rk4 ? "rk4" : "etdrk4";
}

Integrator parse_integrator(std::string_view name) {
  if (name == "rk4") return Integrator::Rk4;
  if (name == "etdrk4" || name == "etd-rk4") return Integrator::EtdRk4;
  throw UsageError("unknown integrator '" + std::string(name) + "'");
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::BlowUp: return "blowup";
    case RunStatus::Breaking: return "breaking";
  }
  return "unknown";
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

/// Diagonal linear operator plus quadratic flux on one spectral grid.
class Evolver {
 public:
  Evolver(const WaveEquationSpec& spec, const ScalarField3D& like, bool dealias)
      : grid_(like), alpha_(spec.alpha) {
    const std::size_t ns = grid_.spectral_size();
    linear_.resize(ns);
    flux_.resize(ns);
    dx_symbol_.resize(ns);
    const Complex I(0.0, 1.0);
    for (std::size_t k = 0; k < grid_.nz(); ++k)
      for (std::size_t j = 0; j < grid_.ny(); ++j)
        for (std::size_t i = 0; i < grid_.nkx(); ++i) {
          const auto s = grid_.spectral_index(i, j, k);
          const double kx = grid_.nyquist_x(i) ? 0.0 : grid_.kx(i);
          const double kperp2 =
              grid_.ky(j) * grid_.ky(j) + grid_.kz(k) * grid_.kz(k);
          // omega = cs kx - beta kx^3 + (cs/2) kperp^2 / kx; the kx = 0
          // transverse forcing is projected out.
          double omega = spec.cs * kx - spec.beta * kx * kx * kx;
          if (kx != 0.0) omega += spec.transverse_coeff * kperp2 / kx;
          linear_[s] = -I * omega;
          dx_symbol_[s] = I * kx;
          const bool keep = !dealias || grid_.keep_two_thirds(i, j, k);
          flux_[s] = keep ? -alpha_ * I * kx : Complex(0.0);
        }
    physical_.resize(grid_.real_size());
    square_.resize(grid_.real_size());
    spec_work_.resize(ns);
  }

  SpectralGrid& grid() { return grid_; }
  const std::vector<Complex>& linear() const { return linear_; }

  void to_physical(const std::vector<Complex>& v, std::vector<double>& out) {
    grid_.inverse(v, out);
  }

  /// out = -alpha d/dx (rho^2 / 2); leaves rho in physical_.
  void nonlinear(const std::vector<Complex>& v, std::vector<Complex>& out) {
    grid_.inverse(v, physical_);
    if (alpha_ == 0.0) {
      std::fill(out.begin(), out.end(), Complex(0.0));
      return;
    }
    for (std::size_t n = 0; n < physical_.size(); ++n)
      square_[n] = 0.5 * physical_[n] * physical_[n];
    grid_.forward(square_, out);
    for (std::size_t s = 0; s < out.size(); ++s) out[s] *= flux_[s];
  }

  const std::vector<double>& last_physical() const { return physical_; }

  double max_abs_dx(const std::vector<Complex>& v) {
    for (std::size_t s = 0; s < v.size(); ++s) spec_work_[s] = v[s] * dx_symbol_[s];
    grid_.inverse(spec_work_, square_);
    return max_abs(square_);
  }

 private:
  SpectralGrid grid_;
  double alpha_;
  std::vector<Complex> linear_, flux_, dx_symbol_, spec_work_;
  std::vector<double> physical_, square_;
};

class Stepper {
 public:
  Stepper(Evolver& ev, Integrator integrator, double dt)
      : ev_(ev), integrator_(integrator), dt_(dt) {
    const std::size_t ns = ev.linear().size();
    for (auto* b : {&k1_, &k2_, &k3_, &k4_, &tmp_, &na_, &nb_, &nc_})
      b->resize(ns);
    if (integrator == Integrator::EtdRk4) prepare_etd();
  }

  /// Advances v by one step. Returns max|rho| of the state at the start of
  /// the step, read off the first nonlinear evaluation.
  double step(std::vector<Complex>& v) {
    return integrator_ == Integrator::Rk4 ? rk4(v) : etdrk4(v);
  }

 private:
  double rk4(std::vector<Complex>& v) {
    const auto& L = ev_.linear();
    const std::size_t ns = v.size();
    auto rhs = [&](const std::vector<Complex>& u, std::vector<Complex>& out) {
      ev_.nonlinear(u, out);
      for (std::size_t s = 0; s < ns; ++s) out[s] += L[s] * u[s];
    };
    rhs(v, k1_);
    const double start_max = max_abs(ev_.last_physical());
    if (!all_finite(ev_.last_physical())) return NAN;
    for (std::size_t s = 0; s < ns; ++s) tmp_[s] = v[s] + 0.5 * dt_ * k1_[s];
    rhs(tmp_, k2_);
    for (std::size_t s = 0; s < ns; ++s) tmp_[s] = v[s] + 0.5 * dt_ * k2_[s];
    rhs(tmp_, k3_);
    for (std::size_t s = 0; s < ns; ++s) tmp_[s] = v[s] + dt_ * k3_[s];
    rhs(tmp_, k4_);
    for (std::size_t s = 0; s < ns; ++s)
      v[s] += dt_ / 6.0 * (k1_[s] + 2.0 * k2_[s] + 2.0 * k3_[s] + k4_[s]);
    return start_max;
  }

  // Cox-Matthews ETD-RK4 with coefficients from contour integrals.
  void prepare_etd() {
    const auto& L = ev_.linear();
    const std::size_t ns = L.size();
    e_.resize(ns); e2_.resize(ns); q_.resize(ns);
    f1_.resize(ns); f2_.resize(ns); f3_.resize(ns);
    constexpr int kContour = 64;
    for (std::size_t s = 0; s < ns; ++s) {
      const Complex lh = L[s] * dt_;
      e_[s] = std::exp(lh);
      e2_[s] = std::exp(lh / 2.0);
      Complex q(0.0), a(0.0), b(0.0), c(0.0);
      for (int m = 0; m < kContour; ++m) {
        const double theta = 2.0 * kPi * (m + 0.5) / kContour;
        const Complex z = lh + Complex(std::cos(theta), std::sin(theta));
        const Complex ez = std::exp(z), ez2 = std::exp(z / 2.0);
        const Complex z3 = z * z * z;
        q += (ez2 - 1.0) / z;
        a += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
        b += (2.0 + z + ez * (z - 2.0)) / z3;
        c += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
      }
      q_[s] = dt_ * q / double(kContour);
      f1_[s] = dt_ * a / double(kContour);
      f2_[s] = dt_ * b / double(kContour);
      f3_[s] = dt_ * c / double(kContour);
    }
  }

  double etdrk4(std::vector<Complex>& v) {
    const std::size_t ns = v.size();
    ev_.nonlinear(v, k1_);  // N(v)
    const double start_max = max_abs(ev_.last_physical());
    if (!all_finite(ev_.last_physical())) return NAN;
    for (std::size_t s = 0; s < ns; ++s) k2_[s] = e2_[s] * v[s] + q_[s] * k1_[s];  // a
    ev_.nonlinear(k2_, na_);
    for (std::size_t s = 0; s < ns; ++s) k3_[s] = e2_[s] * v[s] + q_[s] * na_[s];  // b
    ev_.nonlinear(k3_, nb_);
    for (std::size_t s = 0; s < ns; ++s)
      k4_[s] = e2_[s] * k2_[s] + q_[s] * (2.0 * nb_[s] - k1_[s]);  // c
    ev_.nonlinear(k4_, nc_);
    for (std::size_t s = 0; s < ns; ++s)
      v[s] = e_[s] * v[s] + k1_[s] * f1_[s] + 2.0 * (na_[s] + nb_[s]) * f2_[s] +
             nc_[s] * f3_[s];
    return start_max;
  }

  Evolver& ev_;
  Integrator integrator_;
  double dt_;
  std::vector<Complex> k1_, k2_, k3_, k4_, tmp_, na_, nb_, nc_;
  std::vector<Complex> e_, e2_, q_, f1_, f2_, f3_;
};

Diagnostics diagnose(double t, const ScalarField3D& f, double max_grad) {
  Diagnostics d{};
  d.t = t;
  const double dv = f.cell_volume();
  double mass = 0.0, sq = 0.0;
  for (double x : f.values) {
    mass += x;
    sq += x * x;
  }
  d.mass = mass * dv;
  d.l2 = std::sqrt(sq * dv);
  const auto it = std::max_element(f.values.begin(), f.values.end());
  const auto n = static_cast<std::size_t>(it - f.values.begin());
  const std::size_t j = (n / f.nx) % f.ny, k = n / (f.nx * f.ny);
  const std::span<const double> line(f.values.data() + f.index(0, j, k), f.nx);
  const auto pk = refine_peak(line, f.dx);
  d.peak = pk.value;
  d.peak_x = pk.position;
  d.peak_y = static_cast<double>(j) * f.dy;
  d.peak_z = static_cast<double>(k) * f.dz;
  d.max_abs_gradient_x = max_grad;
  return d;
}

double stability_rate(const WaveEquationSpec& spec, const SpectralGrid& grid,
                      double max_rho, Integrator integrator) {
  const double kmax = grid.max_kx();
  const double nonlinear = std::abs(spec.alpha) * max_rho * kmax;
  if (integrator == Integrator::EtdRk4) return nonlinear;
  double rate = std::abs(spec.cs) * kmax + std::abs(spec.beta) * kmax * kmax * kmax;
  if (spec.has_transverse() && grid.nkx() > 1)
    rate += std::abs(spec.transverse_coeff) * grid.max_k_perp2() / grid.kx(1);
  return rate + nonlinear;
}

enum class Mode { Dispersive, Breaking };

EvolutionResult evolve(const WaveEquationSpec& spec, const ScalarField3D& initial,
                       const SolverConfig& cfg, Mode mode) {
  initial.require_periodic("solver");
  if (!(cfg.dt > 0.0)) throw ContractError("solver: dt must be > 0");
  if (!(cfg.t_end > cfg.t_start))
    throw ContractError("solver: t_end must exceed t_start");
  if (cfg.snapshot_stride == 0)
    throw ContractError("solver: snapshot stride must be >= 1");

  Evolver ev(spec, initial, cfg.dealias);
  const double span = cfg.t_end - cfg.t_start;
  const auto n_steps = static_cast<std::size_t>(std::ceil(span / cfg.dt - 1e-9));
  const double dt = span / static_cast<double>(n_steps);

  const double max_rho0 = max_abs(initial.values);
  const double rate = stability_rate(spec, ev.grid(), max_rho0, cfg.integrator);
  const double limit = cfg.integrator == Integrator::Rk4 ? kStabilityRk4
                                                         : kStabilityEtdRk4;
  if (dt * rate > limit)
    throw ContractError("solver: time step " + std::to_string(dt) +
                        " violates the stability bound dt <= " +
                        std::to_string(limit / rate) + " (" +
                        std::string(to_string(cfg.integrator)) + ")");

  std::vector<Complex> v(ev.grid().spectral_size());
  ev.grid().forward(initial.values, v);
  std::vector<Complex> previous = v;
  std::vector<Complex> last_good = v;  // latest state known to be finite and bounded
  double t_good = cfg.t_start;

  EvolutionResult result;
  result.dt = dt;
  ScalarField3D field = initial;
  // A flat state has no slope to steepen; the floor keeps rounding noise in
  // its gradient from counting as a catastrophe.
  const double grad0 = std::max(ev.max_abs_dx(v), 1e-8 * max_rho0 * ev.grid().max_kx());
  const double blowup_limit = cfg.blowup_factor * std::max(max_rho0, 1e-300);

  auto record = [&](double t, const std::vector<Complex>& state) {
    ev.to_physical(state, field.values);
    result.snapshots.push_back({t, field});
    result.diagnostics.push_back(diagnose(t, field, ev.max_abs_dx(state)));
  };
  record(cfg.t_start, v);

  Stepper stepper(ev, cfg.integrator, dt);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    previous = v;
    const double start_max = stepper.step(v);
    const double t = cfg.t_start + dt * static_cast<double>(n);
    const double t_prev = t - dt;
    if (!(start_max <= blowup_limit)) {
      // The state entering this step is already bad; report the one before.
      result.status = RunStatus::BlowUp;
      result.message = "non-finite or runaway amplitude detected at t=" +
                       std::to_string(t_prev);
      result.steps = n - 1;
      if (result.snapshots.back().t < t_good - 0.5 * dt) record(t_good, last_good);
      return result;
    }
    last_good.swap(previous);
    t_good = t_prev;
    if (mode == Mode::Breaking) {
      const double grad = ev.max_abs_dx(v);
      if (!std::isfinite(grad) || grad > cfg.breaking_gradient_factor * grad0) {
        result.status = RunStatus::Breaking;
        result.breaking_time = t;
        result.message = "gradient catastrophe: max|rho_x| exceeded " +
                         std::to_string(cfg.breaking_gradient_factor) +
                         "x its initial value";
        result.steps = n;
        record(t, v);
        return result;
      }
    }
    if (n % cfg.snapshot_stride == 0 || n == n_steps) {
      ev.to_physical(v, field.values);
      if (!all_finite(field.values) || max_abs(field.values) > blowup_limit) {
        result.status = RunStatus::BlowUp;
        result.message = "non-finite or runaway amplitude detected at t=" +
                         std::to_string(t);
        result.steps = n;
        if (result.snapshots.back().t < t_good - 0.5 * dt) record(t_good, last_good);
        return result;
      }
      record(t, v);
    }
  }
  result.steps = n_steps;
  return result;
}

void require_line(const ScalarField3D& f, const char* who) {
  if (f.ny != 1 || f.nz != 1)
    throw ContractError(std::string(who) + ": expects a 1-D field (ny = nz = 1)");
}

}  // namespace

double stable_time_step(const WaveEquationSpec& spec,
                        const ScalarField3D& initial, Integrator integrator) {
  SpectralGrid grid(initial);
  const double rate = stability_rate(spec, grid, max_abs(initial.values), integrator);
  const double limit = integrator == Integrator::Rk4 ? kStabilityRk4 : kStabilityEtdRk4;
  return rate > 0.0 ? limit / rate : std::numeric_limits<double>::infinity();
}

EvolutionResult kdv_integrate(const WaveEquationSpec& spec,
                              const ScalarField3D& initial,
                              const SolverConfig& cfg) {
  if (spec.has_transverse())
    throw ContractError("kdv_integrate: spec has transverse terms; use kp_integrate");
  require_line(initial, "kdv_integrate");
  return evolve(spec, initial, cfg, Mode::Dispersive);
}

EvolutionResult breaking_wave_integrate(const WaveEquationSpec& spec,
                                        const ScalarField3D& initial,
                                        const SolverConfig& cfg) {
  if (spec.has_transverse() || spec.beta != 0.0)
    throw ContractError("breaking_wave_integrate: needs a 1-D spec with beta = 0");
  require_line(initial, "breaking_wave_integrate");
  return evolve(spec, initial, cfg, Mode::Breaking);
}

EvolutionResult kp_integrate(const WaveEquationSpec& spec,
                             const ScalarField3D& initial,
                             const SolverConfig& cfg) {
  if (spec.cylindrical())
    throw ContractError(
        "kp_integrate: the cylindrical equation is singular at t = 0 and is "
        "checked by residuals only");
  if (!spec.has_transverse())
    throw ContractError("kp_integrate: needs a cartesian KP spec");
  initial.validate();
  const double scale = std::max(max_abs(initial.values), 1e-300);
  for (std::size_t k = 0; k < initial.nz; ++k)
    for (std::size_t j = 0; j < initial.ny; ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < initial.nx; ++i) sum += initial(i, j, k);
      const double mean = sum / static_cast<double>(initial.nx);
      if (std::abs(mean) > 1e-12 * scale)
        throw ContractError("kp_integrate: transverse line (j=" +
                            std::to_string(j) + ", k=" + std::to_string(k) +
                            ") has nonzero x-mean " + std::to_string(mean) +
                            "; dx^-1 needs zero-mean lines");
    }
  return evolve(spec, initial, cfg, Mode::Dispersive);
}

WaveEquationSpec kdv_xi_tau_transform(const solitons::SolitonCyl& sol,
                                      const eos::MediumCoefficients& medium) {
  if (sol.d != sol.a)
    throw ContractError("kdv_xi_tau_transform: requires d == a");
  WaveEquationSpec s;
  s.kind = WaveKind::Kdv;
  s.cs = sol.a * medium.cs + sol.b * sol.b * medium.cs / (2.0 * sol.a);
  s.alpha = sol.a * medium.alpha;
  s.beta = sol.a * sol.a * sol.a * medium.beta;
  s.transverse_coeff = 0.0;
  return s;
}

KpLineSetup kp_line_soliton_setup(const solitons::SolitonCart& sol,
                                  const WaveEquationSpec& spec, std::size_t nx,
                                  std::size_t ny, double lx, double t0) {
  const solitons::KpSoliton soliton(sol, spec);
  const double q = std::sqrt(sol.B_dir * sol.B_dir + sol.C_dir * sol.C_dir);
  if (!(q > 0.0))
    throw ContractError("kp_line_soliton_setup: needs transverse tilt (B, C not both 0)");
  const double period = sol.A_dir * lx;
  const double leta = period / q;
  ScalarField3D f(nx, ny, 1, lx / double(nx), leta / double(ny), 1.0);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = f.dx * double(i), eta = f.dy * double(j);
      double phase = sol.A_dir * x + q * eta - sol.U * t0;
      phase -= period * std::round(phase / period);
      // Nearest images on both sides; sech^2 tails are far below rounding.
      f(i, j) = soliton.profile(phase) + soliton.profile(phase - period) +
                soliton.profile(phase + period);
    }
  double c0 = 0.0;
  for (double v : f.values) c0 += v;
  c0 /= double(f.size());
  for (std::size_t j = 0; j < ny; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < nx; ++i) mean += f(i, j);
    mean /= double(nx);
    for (std::size_t i = 0; i < nx; ++i) f(i, j) -= mean;
  }
  const double v_consistent = solitons::cart_consistent_speed(spec, sol);
  return {f, c0, period, sol.U / sol.A_dir - spec.alpha * c0,
          v_consistent / sol.A_dir - spec.alpha * c0};
}

PeakTrack track_peak_x(const EvolutionResult& result, std::size_t j,
                       std::size_t k) {
  PeakTrack track;
  double offset = 0.0, last = 0.0;
  for (std::size_t n = 0; n < result.snapshots.size(); ++n) {
    const auto& f = result.snapshots[n].field;
    if (j >= f.ny || k >= f.nz) throw ContractError("track_peak_x: line out of range");
    const std::span<const double> line(f.values.data() + f.index(0, j, k), f.nx);
    const auto pk = refine_peak(line, f.dx);
    const double length = f.length_x();
    if (n > 0) {
      double jump = pk.position - last;
      if (jump > 0.5 * length) offset -= length;
      if (jump < -0.5 * length) offset += length;
    }
    last = pk.position;
    track.t.push_back(result.snapshots[n].t);
    track.x.push_back(pk.position + offset);
    track.value.push_back(pk.value);
  }
  return track;
}

double fit_speed(const PeakTrack& track) {
  const std::size_t n = track.t.size();
  if (n < 2) throw ContractError("fit_speed: need at least two snapshots");
  const double tm = std::accumulate(track.t.begin(), track.t.end(), 0.0) / double(n);
  const double xm = std::accumulate(track.x.begin(), track.x.end(), 0.0) / double(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (track.t[i] - tm) * (track.x[i] - xm);
    den += (track.t[i] - tm) * (track.t[i] - tm);
  }
  return num / den;
}

ScalarField3D shift_x(const ScalarField3D& f, double shift) {
  f.require_periodic("shift_x");
  SpectralGrid grid(f);
  std::vector<Complex> spec(grid.spectral_size());
  grid.forward(f.values, spec);
  for (std::size_t k = 0; k < f.nz; ++k)
    for (std::size_t j = 0; j < f.ny; ++j)
      for (std::size_t i = 0; i < grid.nkx(); ++i) {
        auto& c = spec[grid.spectral_index(i, j, k)];
        if (grid.nyquist_x(i)) {
          c *= std::cos(grid.kx(i) * shift);
          continue;
        }
        c *= std::exp(Complex(0.0, -grid.kx(i) * shift));
      }
  ScalarField3D out = f;
  grid.inverse(spec, out.values);
  return out;
}

double relative_l2(const ScalarField3D& a, const ScalarField3D& b) {
  if (a.size() != b.size()) throw ContractError("relative_l2: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    num += (a.values[n] - b.values[n]) * (a.values[n] - b.values[n]);
    den += b.values[n] * b.values[n];
  }
  return std::sqrt(num / den);
}

}  // namespace kpqgp::solver
