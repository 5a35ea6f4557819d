#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kpqgp/eos.hpp"
#include "kpqgp/errors.hpp"
#include "kpqgp/kp_model.hpp"

using namespace kpqgp;
using eos::EosParameters;

namespace {

const double pi = 3.14159265358979323846;
const double pi23 = std::cbrt(pi * pi);

EosParameters random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> g(0.0, 3.0), m(200.0, 2000.0), r(0.2, 5.0);
  return EosParameters::make(g(rng), MeV{m(rng)}, 0.0, r(rng));
}

}  // namespace

TEST(Alpha, MitLimit) {
  const auto p = EosParameters::make(0.0, MeV{460}, 0, 1);
  EXPECT_NEAR(alpha_relativistic(p), 2.0 / (3.0 * std::sqrt(3.0)), 1e-14);
  EXPECT_NEAR(alpha_relativistic(p), 0.38490, 1e-5);
}

TEST(Alpha, ReferencePointHandChain) {
  const auto p = eos::reference_parameters();
  // A, cs2 rebuilt here from the uniform EOS pieces.
  const double m = 460.0 / 197.326980;
  const double A = 27 * 1.15 * 1.15 / (8 * m * m) + pi23;
  EXPECT_NEAR(eos::constant_A(p), A, 1e-12);
  const double cs = eos::speed_of_sound(p).cs;
  const double hand = (1.5 * (1 - cs * cs) - pi23 / (3 * A)) * cs;
  EXPECT_NEAR(alpha_relativistic(p), hand, 1e-14);
  EXPECT_NEAR(alpha_relativistic(p), 0.41291, 1e-4);
}

TEST(Alpha, ContinuousAndPositiveOnGrid) {
  double prev = 0;
  for (double g = 0; g <= 3.0001; g += 0.1)
    for (double m = 300; m <= 1000; m += 50)
      for (double r = 0.5; r <= 3.0001; r += 0.25) {
        const double a = alpha_relativistic(EosParameters::make(g, MeV{m}, 0, r));
        EXPECT_GT(a, 0.0);
        EXPECT_TRUE(std::isfinite(a));
      }
  // Fine steps in g change alpha by a small amount.
  for (double g = 0; g <= 3.0; g += 0.001) {
    const double a = alpha_relativistic(EosParameters::make(g, MeV{460}, 0, 1));
    if (g > 0) EXPECT_LT(std::abs(a - prev), 1e-3);
    prev = a;
  }
}

TEST(Alpha, SimplificationIdentityRandom) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 1000; ++n) {
    const auto p = random_params(rng);
    EXPECT_NEAR(nonlinear_bracket(p), nonlinear_bracket_unsimplified(p), 1e-12);
  }
}

TEST(Beta, Examples) {
  EXPECT_EQ(beta_relativistic(EosParameters::make(0, MeV{460}, 0, 1)), 0.0);
  EXPECT_EQ(beta_relativistic(EosParameters::make(0, MeV{460}, 0, 2)), 0.0);
  const auto p = eos::reference_parameters();
  const double m = 460.0 / 197.326980;
  const double hand = 9 * 1.15 * 1.15 * eos::speed_of_sound(p).cs /
                      (8 * std::pow(m, 4) * eos::constant_A(p));
  EXPECT_NEAR(beta_relativistic(p), hand, 1e-15);
  EXPECT_NEAR(beta_relativistic(p), 0.010859, 1e-6);
}

TEST(EffectiveMass, Examples) {
  const auto p = eos::reference_parameters();
  const double M = effective_mass(p);
  const auto s = eos::speed_of_sound(p);
  EXPECT_NEAR(M * p.rho0 * s.cs2, eos::constant_A(p), 1e-12 * eos::constant_A(p));
  EXPECT_NEAR(M, 2.96637 / 0.40880, 1e-3);
  EXPECT_NEAR(M * 197.326980, 1432, 1.0);
  EXPECT_NEAR(effective_mass(EosParameters::make(0, MeV{460}, 0, 1)), 3 * pi23, 1e-13);
}

TEST(EffectiveMass, IdentityRandom) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 500; ++n) {
    const auto p = random_params(rng);
    const double lhs = effective_mass(p) * p.rho0 * eos::speed_of_sound(p).cs2;
    EXPECT_NEAR(lhs, eos::constant_A(p), 1e-12 * eos::constant_A(p));
  }
}

TEST(WaveSpec, KdvEqualsKpWithoutTransverse) {
  const auto p = eos::reference_parameters();
  const auto kp = build_wave_spec(p, WaveKind::KpCart);
  const auto kdv = build_wave_spec(p, WaveKind::Kdv);
  EXPECT_EQ(kp.cs, kdv.cs);
  EXPECT_EQ(kp.alpha, kdv.alpha);
  EXPECT_EQ(kp.beta, kdv.beta);
  EXPECT_EQ(kp.transverse_coeff, kp.cs / 2);
  EXPECT_EQ(kdv.transverse_coeff, 0.0);
  EXPECT_FALSE(kdv.has_transverse());
  const auto ckp = build_wave_spec(p, WaveKind::CkpCyl);
  EXPECT_TRUE(ckp.cylindrical());
  EXPECT_EQ(ckp.alpha, kp.alpha);
}

TEST(WaveSpec, BreakingWaveMit) {
  for (double g : {0.0, 1.15}) {
    const auto s = build_wave_spec(EosParameters::make(g, MeV{460}, 0, 1),
                                   WaveKind::BreakingWaveMit);
    EXPECT_NEAR(s.cs, 1 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(s.alpha, 2 * s.cs / 3, 1e-15);
    EXPECT_EQ(s.beta, 0.0);
  }
}

TEST(WaveSpec, BreakingWaveFullUsesUnsimplifiedBracket) {
  const auto p = eos::reference_parameters();
  const auto s = build_wave_spec(p, WaveKind::BreakingWaveFull);
  EXPECT_EQ(s.beta, 0.0);
  EXPECT_NEAR(s.alpha, nonlinear_bracket_unsimplified(p) * s.cs, 1e-15);
  EXPECT_NEAR(s.alpha, alpha_relativistic(p), 1e-12);
}

// cs2 -> 0 inside the bracket and A -> M rho0 cs2.
TEST(WaveSpec, NonRelativisticReductionRandom) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 1000; ++n) {
    const auto p = random_params(rng);
    const auto s = eos::speed_of_sound(p);
    const double M = effective_mass(p);
    const double A_sub = M * p.rho0 * s.cs2;
    const double bracket = 1.5 - pi23 * std::pow(p.rho0, 4.0 / 3.0) / (3 * A_sub);
    const double alpha_sub = bracket * s.cs;
    const double beta_sub = 9 * p.g * p.g * p.rho0 * p.rho0 * s.cs /
                            (8 * std::pow(p.m_G, 4) * A_sub);
    const auto nr = build_wave_spec(p, WaveKind::KpCartNr);
    EXPECT_NEAR(nr.alpha, alpha_sub, 1e-12);
    EXPECT_NEAR(nr.beta, beta_sub, 1e-12);
    EXPECT_NEAR(alpha_nonrelativistic(p), alpha_sub, 1e-12);
    EXPECT_NEAR(beta_nonrelativistic(p), beta_sub, 1e-12);
    EXPECT_TRUE(build_wave_spec(p, WaveKind::CkpCylNr).cylindrical());
  }
}

TEST(WaveSpec, ParseKinds) {
  EXPECT_EQ(parse_wave_kind("kp"), WaveKind::KpCart);
  EXPECT_EQ(parse_wave_kind("ckp"), WaveKind::CkpCyl);
  EXPECT_EQ(parse_wave_kind("kdv"), WaveKind::Kdv);
  EXPECT_EQ(parse_wave_kind("breaking-mit"), WaveKind::BreakingWaveMit);
  EXPECT_EQ(parse_wave_kind("ckp-nr"), WaveKind::CkpCylNr);
  for (auto k : {WaveKind::KpCart, WaveKind::CkpCyl, WaveKind::Kdv, WaveKind::BreakingWaveMit,
                 WaveKind::BreakingWaveFull, WaveKind::KpCartNr, WaveKind::CkpCylNr})
    EXPECT_EQ(parse_wave_kind(to_string(k)), k);
  EXPECT_THROW(parse_wave_kind("burgers"), UsageError);
}

TEST(RpmScales, PowerLaws) {
  const auto a = rpm_scale_estimates(0.1);
  EXPECT_NEAR(a.amplitude, 0.01, 1e-15);
  EXPECT_NEAR(a.wavelength, 10, 1e-12);
  EXPECT_NEAR(a.distance, 1000, 1e-9);
  EXPECT_TRUE(a.well_separated);
  const auto b = rpm_scale_estimates(0.01);
  EXPECT_NEAR(b.amplitude, 1e-4, 1e-18);
  EXPECT_NEAR(b.wavelength, 100, 1e-10);
  EXPECT_NEAR(b.distance, 1e6, 1e-6);
  const auto c = rpm_scale_estimates(0.999);
  EXPECT_NEAR(c.amplitude, 1, 0.01);
  EXPECT_NEAR(c.distance, 1, 0.01);
  EXPECT_FALSE(c.well_separated);
  EXPECT_THROW(rpm_scale_estimates(1.0), DomainError);
  EXPECT_THROW(rpm_scale_estimates(0.0), DomainError);
}
