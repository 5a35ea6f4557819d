#include "kpqgp/acoustics.hpp"

#include <algorithm>
#include <cmath>

#include "kpqgp/errors.hpp"
#include "kpqgp/spectral.hpp"

namespace kpqgp::acoustics {

void AcousticState::validate() const {
  if (!(eps0 + p0 > 0.0))
    throw DomainError("acoustics: enthalpy eps0 + p0 must be > 0");
  if (!(cs > 0.0 && cs < 1.0))
    throw DomainError("acoustics: need 0 < cs < 1");
}

bool AcousticState::small_perturbation() const {
  double m = 0.0;
  for (double v : delta_p.values) m = std::max(m, std::abs(v));
  return m <= 0.1 * std::abs(p0);
}

double mit_bag_pressure(double eps, double bag) {
  return eps / 3.0 - 4.0 * bag / 3.0;
}

bool mit_bag_physical(double eps, double bag) { return eps >= bag; }

ScalarField3D energy_perturbation(const ScalarField3D& delta_p, double cs) {
  if (!(cs > 0.0)) throw DomainError("energy_perturbation: cs must be > 0");
  ScalarField3D out = delta_p;
  out.role = "delta_eps";
  for (double& v : out.values) v /= cs * cs;
  return out;
}

namespace {

void require_line(const ScalarField3D& f, const char* who) {
  f.require_periodic(who);
  if (f.ny != 1 || f.nz != 1)
    throw ContractError(std::string(who) + ": expects a 1-D field");
}

}  // namespace

double acoustic_energy(const ScalarField3D& delta_p,
                       const ScalarField3D& dt_delta_p, double cs) {
  require_line(delta_p, "acoustic_energy");
  if (!delta_p.same_grid(dt_delta_p))
    throw ContractError("acoustic_energy: grids differ");
  SpectralGrid grid(delta_p);
  std::vector<Complex> p(grid.spectral_size()), q(grid.spectral_size());
  grid.forward(delta_p.values, p);
  grid.forward(dt_delta_p.values, q);
  const double n = static_cast<double>(delta_p.nx);
  double e = 0.0;
  for (std::size_t i = 0; i < grid.nkx(); ++i) {
    // Half-spectrum weights: interior modes appear twice in the full sum.
    const double w = (i == 0 || grid.nyquist_x(i)) ? 1.0 : 2.0;
    const double k = grid.kx(i);
    e += w * (std::norm(q[i]) / (cs * cs) + k * k * std::norm(p[i]));
  }
  return e * delta_p.dx / n;
}

AcousticResult acoustic_wave_solve_1d(const AcousticState& state,
                                      const ScalarField3D& delta_p0,
                                      const ScalarField3D& dt_delta_p0,
                                      const AcousticConfig& cfg) {
  state.validate();
  require_line(delta_p0, "acoustic_wave_solve_1d");
  if (!delta_p0.same_grid(dt_delta_p0))
    throw ContractError("acoustic_wave_solve_1d: initial fields on different grids");
  if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0) || cfg.snapshot_stride == 0)
    throw ContractError("acoustic_wave_solve_1d: need dt > 0, t_end > 0, stride >= 1");

  const double cs = state.cs;
  SpectralGrid grid(delta_p0);
  const std::size_t ns = grid.spectral_size();
  const auto n_steps =
      static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  const double dt = cfg.t_end / static_cast<double>(n_steps);

  if (cfg.scheme == AcousticScheme::Leapfrog && dt * cs * grid.max_kx() > 2.0)
    throw ContractError("acoustic_wave_solve_1d: CFL violated, dt cs k_max = " +
                        std::to_string(dt * cs * grid.max_kx()) + " > 2");

  std::vector<Complex> p0(ns), q0(ns), p(ns), q(ns);
  grid.forward(delta_p0.values, p0);
  grid.forward(dt_delta_p0.values, q0);

  AcousticResult result;
  ScalarField3D fp = delta_p0, fq = dt_delta_p0;
  fp.role = "delta_p";
  fq.role = "dt_delta_p";
  auto store = [&](double t, const std::vector<Complex>& ps,
                   const std::vector<Complex>& qs) {
    grid.inverse(ps, fp.values);
    grid.inverse(qs, fq.values);
    result.snapshots.push_back({t, fp, fq});
    result.energy.push_back(acoustic_energy(fp, fq, cs));
  };

  if (cfg.scheme == AcousticScheme::Spectral) {
    for (std::size_t n = 0; n <= n_steps; ++n) {
      if (n % cfg.snapshot_stride != 0 && n != n_steps) continue;
      const double t = dt * static_cast<double>(n);
      for (std::size_t i = 0; i < ns; ++i) {
        const double w = cs * grid.kx(i);
        const double c = std::cos(w * t), s = std::sin(w * t);
        const double sinc = w == 0.0 ? t : s / w;
        p[i] = p0[i] * c + q0[i] * sinc;
        q[i] = -p0[i] * w * s + q0[i] * c;
      }
      store(t, p, q);
    }
    return result;
  }

  // Leapfrog on spectral coefficients: p'' = -(cs k)^2 p.
  std::vector<Complex> prev = p0, cur(ns), next(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    const double w2 = std::pow(cs * grid.kx(i), 2);
    cur[i] = p0[i] + dt * q0[i] - 0.5 * dt * dt * w2 * p0[i];
  }
  store(0.0, p0, q0);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    for (std::size_t i = 0; i < ns; ++i) {
      const double w2 = std::pow(cs * grid.kx(i), 2);
      next[i] = 2.0 * cur[i] - prev[i] - dt * dt * w2 * cur[i];
    }
    if (n % cfg.snapshot_stride == 0 || n == n_steps) {
      for (std::size_t i = 0; i < ns; ++i) q[i] = (next[i] - prev[i]) / (2.0 * dt);
      store(dt * static_cast<double>(n), cur, q);
    }
    prev.swap(cur);
    cur.swap(next);
  }
  return result;
}

std::vector<ScalarField3D> velocity_from_pressure(const AcousticState& state,
                                                  const AcousticResult& history) {
  state.validate();
  if (history.snapshots.size() < 2)
    throw ContractError("velocity_from_pressure: needs at least two snapshots");
  const auto& first = history.snapshots.front().delta_p;
  require_line(first, "velocity_from_pressure");
  SpectralGrid grid(first);
  const std::size_t ns = grid.spectral_size();
  const double w = state.enthalpy();
  const Complex I(0.0, 1.0);

  // Spectral velocity, accumulated mode by mode.
  std::vector<Complex> v(ns), p(ns), q(ns), g_prev(ns), gd_prev(ns);
  auto gradients = [&](const AcousticSnapshot& s, std::vector<Complex>& g,
                       std::vector<Complex>& gd) {
    grid.forward(s.delta_p.values, p);
    grid.forward(s.dt_delta_p.values, q);
    for (std::size_t i = 0; i < ns; ++i) {
      const double k = grid.nyquist_x(i) ? 0.0 : grid.kx(i);
      g[i] = I * k * p[i];
      gd[i] = I * k * q[i];
    }
  };

  const auto& s0 = history.snapshots.front();
  grid.forward(s0.dt_delta_p.values, q);
  for (std::size_t i = 0; i < ns; ++i) {
    const double k = grid.kx(i);
    v[i] = (i == 0 || grid.nyquist_x(i))
               ? Complex(0.0)
               : -q[i] / (I * k * state.cs * state.cs * w);
  }
  gradients(s0, g_prev, gd_prev);

  std::vector<ScalarField3D> out;
  ScalarField3D field = first;
  field.role = "v";
  grid.inverse(v, field.values);
  out.push_back(field);

  std::vector<Complex> g(ns), gd(ns);
  for (std::size_t n = 1; n < history.snapshots.size(); ++n) {
    const auto& s = history.snapshots[n];
    const double h = s.t - history.snapshots[n - 1].t;
    gradients(s, g, gd);
    for (std::size_t i = 0; i < ns; ++i) {
      const Complex integral =
          0.5 * h * (g_prev[i] + g[i]) + h * h / 12.0 * (gd_prev[i] - gd[i]);
      v[i] -= integral / w;
    }
    grid.inverse(v, field.values);
    out.push_back(field);
    g_prev.swap(g);
    gd_prev.swap(gd);
  }
  return out;
}

double PlaneWave::pressure(const AcousticState& s, std::array<double, 3> x,
                           double t) const {
  const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  return amplitude *
         std::cos(k[0] * x[0] + k[1] * x[1] + k[2] * x[2] - s.cs * kn * t + phase);
}

std::array<double, 3> PlaneWave::velocity(const AcousticState& s,
                                          std::array<double, 3> x, double t) const {
  s.validate();
  const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  if (kn == 0.0) return {0.0, 0.0, 0.0};
  const double dp = pressure(s, x, t) / (s.enthalpy() * s.cs * kn);
  return {k[0] * dp, k[1] * dp, k[2] * dp};
}

}  // namespace kpqgp::acoustics
