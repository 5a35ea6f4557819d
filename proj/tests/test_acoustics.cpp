#include <gtest/gtest.h>

#include <cmath>

#include "kpqgp/acoustics.hpp"
#include "kpqgp/eos.hpp"
#include "kpqgp/errors.hpp"
#include "kpqgp/spectral.hpp"

using namespace kpqgp;
using namespace kpqgp::acoustics;

namespace {

const double pi = 3.14159265358979323846;

AcousticState mit_state() {
  const auto p = eos::EosParameters::make(0.0, MeV{460}, 0.0, 1.0);
  AcousticState s;
  s.eps0 = eos::energy_density_uniform(p, 1.0);
  s.p0 = eos::pressure_uniform(p, 1.0);
  s.cs = 1.0 / std::sqrt(3.0);
  return s;
}

struct Pulse {
  ScalarField3D p, dtp;
};

// Zero-mean Gaussian right-mover: dt dp = -cs dx dp.
Pulse gaussian(double L, std::size_t n, double x0, double sigma, double amp, double cs) {
  Pulse out{ScalarField3D::line(n, L / n), ScalarField3D::line(n, L / n)};
  double mean = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = out.p.dx * i - x0;
    out.p(i) = amp * std::exp(-x * x / (2 * sigma * sigma));
    out.dtp(i) = cs * amp * x / (sigma * sigma) * std::exp(-x * x / (2 * sigma * sigma));
    mean += out.p(i);
  }
  mean /= n;
  for (double& v : out.p.values) v -= mean;
  return out;
}

double peak_position(const ScalarField3D& f) {
  return refine_peak(std::span<const double>(f.values), f.dx).position;
}

}  // namespace

TEST(MitBag, Relation) {
  EXPECT_EQ(mit_bag_pressure(4 * 0.3, 0.3), 0.0);
  EXPECT_NEAR(mit_bag_pressure(2.7, 0.0), 0.9, 1e-15);
  EXPECT_TRUE(mit_bag_physical(1.0, 0.5));
  EXPECT_FALSE(mit_bag_physical(0.4, 0.5));
  // Slope 1/3 equals cs^2 of the g = 0 EOS.
  const double slope = (mit_bag_pressure(2.0, 0.1) - mit_bag_pressure(1.0, 0.1)) / 1.0;
  EXPECT_NEAR(slope, eos::speed_of_sound(eos::EosParameters::make(0, MeV{460}, 0.1, 1)).cs2,
              1e-15);
}

TEST(MitBag, ConsistentWithUniformEos) {
  for (double bag : {0.0, 0.2, 0.5})
    for (double rho : {0.1, 0.5, 1.0, 3.0}) {
      const auto p = eos::EosParameters::make(0.0, MeV{460}, bag, 1.0);
      EXPECT_NEAR(eos::pressure_uniform(p, rho),
                  mit_bag_pressure(eos::energy_density_uniform(p, rho), bag), 1e-12);
    }
}

TEST(AcousticStateTest, Validation) {
  auto s = mit_state();
  EXPECT_NO_THROW(s.validate());
  s.delta_p = ScalarField3D::line(8, 1.0, 0.01 * s.p0);
  EXPECT_TRUE(s.small_perturbation());
  s.delta_p = ScalarField3D::line(8, 1.0, 0.5 * s.p0);
  EXPECT_FALSE(s.small_perturbation());
  auto bad = mit_state();
  bad.eps0 = -bad.p0;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = mit_state();
  bad.cs = 1.0;
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(AcousticStateTest, EnergyPerturbation) {
  auto f = ScalarField3D::line(4, 1.0, 0.02);
  const auto e = energy_perturbation(f, 0.5);
  for (double v : e.values) EXPECT_NEAR(v, 0.08, 1e-16);
}

TEST(AcousticSolve, ZeroStaysZero) {
  const auto s = mit_state();
  const auto z = ScalarField3D::line(64, 0.5);
  for (auto scheme : {AcousticScheme::Spectral, AcousticScheme::Leapfrog}) {
    AcousticConfig cfg;
    cfg.scheme = scheme;
    cfg.t_end = 3;
    const auto r = acoustic_wave_solve_1d(s, z, z, cfg);
    for (const auto& snap : r.snapshots)
      for (double v : snap.delta_p.values) EXPECT_EQ(v, 0.0);
  }
}

TEST(AcousticSolve, RightMoverTranslatesAtCs) {
  const auto s = mit_state();
  const double L = 100, sigma = 2.0;
  const auto pulse = gaussian(L, 512, 20, sigma, 0.01 * s.p0, s.cs);
  const double cell = L / 512;
  for (auto scheme : {AcousticScheme::Spectral, AcousticScheme::Leapfrog}) {
    AcousticConfig cfg;
    cfg.scheme = scheme;
    cfg.dt = 0.02;
    cfg.t_end = 60;
    cfg.snapshot_stride = 250;
    const auto r = acoustic_wave_solve_1d(s, pulse.p, pulse.dtp, cfg);
    ASSERT_GT(r.snapshots.size(), 5u);
    for (const auto& snap : r.snapshots) {
      double expected = std::fmod(20 + s.cs * snap.t, L);
      double err = std::abs(peak_position(snap.delta_p) - expected);
      err = std::min(err, L - err);
      EXPECT_LT(err, cell) << "t=" << snap.t;
    }
  }
}

TEST(AcousticSolve, StandingModeFrequency) {
  const auto s = mit_state();
  const double L = 10, k = 2 * pi * 3 / L, amp = 1e-3;
  auto p = ScalarField3D::line(64, L / 64);
  for (std::size_t i = 0; i < p.nx; ++i) p(i) = amp * std::sin(k * p.dx * i);
  const auto zero = ScalarField3D::line(64, L / 64);
  AcousticConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 20;
  cfg.snapshot_stride = 100;
  const auto r = acoustic_wave_solve_1d(s, p, zero, cfg);
  const double omega = s.cs * k;
  for (const auto& snap : r.snapshots)
    for (std::size_t i = 0; i < p.nx; ++i)
      EXPECT_NEAR(snap.delta_p(i), p(i) * std::cos(omega * snap.t), 1e-6 * amp);
  // Quarter-period zero crossing pins omega.
  const auto& last = r.snapshots.back();
  const std::size_t i = 2;
  const double phase = std::acos(last.delta_p(i) / p(i));
  EXPECT_NEAR(std::cos(phase), std::cos(omega * last.t), 1e-9);
}

TEST(AcousticSolve, EnergyConserved) {
  const auto s = mit_state();
  const auto pulse = gaussian(100, 256, 30, 3.0, 0.01 * s.p0, s.cs);
  AcousticConfig cfg;
  cfg.dt = 0.05;
  cfg.t_end = 50;
  cfg.snapshot_stride = 100;  // 1000 steps
  const auto r = acoustic_wave_solve_1d(s, pulse.p, pulse.dtp, cfg);
  const double e0 = r.energy.front();
  EXPECT_GT(e0, 0.0);
  EXPECT_NEAR(e0, acoustic_energy(pulse.p, pulse.dtp, s.cs), 1e-15 * e0);
  for (double e : r.energy) EXPECT_LT(std::abs(e - e0), 1e-8 * e0);
  cfg.scheme = AcousticScheme::Leapfrog;
  cfg.dt = 0.01;
  const auto q = acoustic_wave_solve_1d(s, pulse.p, pulse.dtp, cfg);
  for (double e : q.energy) EXPECT_LT(std::abs(e - e0), 1e-3 * e0);
}

TEST(AcousticSolve, EnergyMatchesDirectQuadrature) {
  const double L = 8, k = 2 * pi / L, cs = 0.5;
  auto p = ScalarField3D::line(32, L / 32), q = ScalarField3D::line(32, L / 32);
  for (std::size_t i = 0; i < p.nx; ++i) {
    p(i) = std::sin(k * p.dx * i);
    q(i) = 0.3 * std::cos(2 * k * p.dx * i);
  }
  // int sin'^2 = k^2 L/2, int q^2 = 0.09 L/2.
  const double expected = 0.09 * L / 2 / (cs * cs) + k * k * L / 2;
  EXPECT_NEAR(acoustic_energy(p, q, cs), expected, 1e-12);
}

TEST(AcousticSolve, LeapfrogCflEnforced) {
  const auto s = mit_state();
  const auto z = ScalarField3D::line(256, 0.1);
  AcousticConfig cfg;
  cfg.scheme = AcousticScheme::Leapfrog;
  cfg.dt = 0.5;
  EXPECT_THROW(acoustic_wave_solve_1d(s, z, z, cfg), ContractError);
}

TEST(Velocity, ConstantPressureGivesZero) {
  const auto s = mit_state();
  const auto c = ScalarField3D::line(32, 0.5, 0.01);
  const auto z = ScalarField3D::line(32, 0.5);
  AcousticConfig cfg;
  cfg.t_end = 1;
  cfg.dt = 0.1;
  const auto r = acoustic_wave_solve_1d(s, c, z, cfg);
  for (const auto& v : velocity_from_pressure(s, r))
    for (double x : v.values) EXPECT_EQ(x, 0.0);
}

TEST(Velocity, StandingModeQuadrature) {
  const auto s = mit_state();
  const double L = 10, k = 2 * pi / L, amp = 1e-3, w = s.enthalpy();
  auto p = ScalarField3D::line(64, L / 64);
  for (std::size_t i = 0; i < p.nx; ++i) p(i) = amp * std::sin(k * p.dx * i);
  AcousticConfig cfg;
  cfg.dt = 0.05;
  cfg.t_end = 20;
  cfg.snapshot_stride = 1;
  const auto r = acoustic_wave_solve_1d(s, p, ScalarField3D::line(64, L / 64), cfg);
  const auto v = velocity_from_pressure(s, r);
  const double omega = s.cs * k;
  // v_t = -(1/w) dp_x  =>  v = -(amp k / (w omega)) cos(kx) sin(omega t).
  const double vamp = amp * k / (w * omega);
  for (std::size_t n = 0; n < v.size(); ++n)
    for (std::size_t i = 0; i < p.nx; ++i)
      EXPECT_NEAR(v[n](i), -vamp * std::cos(k * p.dx * i) * std::sin(omega * r.snapshots[n].t),
                  1e-4 * vamp);
}

TEST(Velocity, RightMoverImpedance) {
  const auto s = mit_state();
  const auto pulse = gaussian(100, 512, 30, 3.0, 0.01 * s.p0, s.cs);
  AcousticConfig cfg;
  cfg.dt = 0.05;
  cfg.t_end = 30;
  cfg.snapshot_stride = 2;
  const auto r = acoustic_wave_solve_1d(s, pulse.p, pulse.dtp, cfg);
  const auto v = velocity_from_pressure(s, r);
  const double scale = 0.01 * s.p0 / (s.enthalpy() * s.cs);
  for (std::size_t n = 0; n < v.size(); ++n)
    for (std::size_t i = 0; i < v[n].nx; ++i)
      EXPECT_NEAR(v[n](i), r.snapshots[n].delta_p(i) / (s.enthalpy() * s.cs), 1e-4 * scale);
}

TEST(Velocity, NeedsHistory) {
  const auto s = mit_state();
  AcousticResult one;
  one.snapshots.push_back({0.0, ScalarField3D::line(8, 1), ScalarField3D::line(8, 1)});
  EXPECT_THROW(velocity_from_pressure(s, one), ContractError);
}

TEST(PlaneWaveTest, ImpedanceAndWaveEquation) {
  const auto s = mit_state();
  PlaneWave pw{0.02, {0.3, -0.4, 1.2}, 0.7};
  const std::array<double, 3> x{1.0, 2.0, -0.5};
  const double t = 3.3, kn = std::sqrt(0.09 + 0.16 + 1.44);
  const auto v = pw.velocity(s, x, t);
  const double p = pw.pressure(s, x, t);
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(v[a], pw.k[a] / kn * p / (s.enthalpy() * s.cs), 1e-16);
  // d_t^2 p = cs^2 lap p via central differences.
  const double h = 1e-3;
  const double ptt = (pw.pressure(s, x, t + h) - 2 * p + pw.pressure(s, x, t - h)) / (h * h);
  double lap = 0;
  for (int a = 0; a < 3; ++a) {
    auto xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    lap += (pw.pressure(s, xp, t) - 2 * p + pw.pressure(s, xm, t)) / (h * h);
  }
  EXPECT_NEAR(ptt, s.cs * s.cs * lap, 1e-6);
}
