#include <gtest/gtest.h>

#include <cmath>

#include "kpqgp/eos.hpp"
#include "kpqgp/errors.hpp"
#include "kpqgp/kp_model.hpp"
#include "kpqgp/solitons.hpp"

using namespace kpqgp;
using namespace kpqgp::solitons;

namespace {

const double pi = 3.14159265358979323846;

struct Reference {
  eos::EosParameters p = eos::reference_parameters();
  eos::MediumCoefficients m = eos::medium_coefficients(p);
  WaveEquationSpec ckp = build_wave_spec(p, WaveKind::CkpCyl);
  WaveEquationSpec kp = build_wave_spec(p, WaveKind::KpCart);
};

double hand_sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

}  // namespace

TEST(Sech2, ValuesAndOverflowGuard) {
  EXPECT_EQ(sech2(0.0), 1.0);
  EXPECT_NEAR(sech2(1.3), hand_sech2(1.3), 1e-15);
  EXPECT_NEAR(sech2(-20.0), hand_sech2(20.0), 1e-25);
  EXPECT_EQ(sech2(400.0), 0.0);
  EXPECT_EQ(sech2(-1e308), 0.0);
}

TEST(Directions, Validation) {
  const auto s = SolitonCyl::from_direction(0.6, 0.73);
  EXPECT_NEAR(s.b, 0.8, 1e-15);
  EXPECT_EQ(s.d, 0.6);
  SolitonCyl bad = s;
  bad.d = 0.5;
  EXPECT_THROW(bad.validate(), ContractError);
  bad = s;
  bad.b = 0.7;
  EXPECT_THROW(bad.validate(), DomainError);
  EXPECT_THROW(SolitonCyl::from_direction(-0.6, 0.73), DomainError);
  const auto c = SolitonCart::from_direction(0.6, 0.66);
  EXPECT_NEAR(c.B_dir, std::sqrt(0.39), 1e-15);
  EXPECT_THROW(SolitonCart::from_direction(0.87, 0.66), DomainError);
}

TEST(HConstants, ReferenceParametersHandChain) {
  const Reference P;
  const double a = 0.6, b = 0.8, u = 0.73;
  const double margin = u - a * P.m.cs - b * b * P.m.cs / (2 * a);
  EXPECT_NEAR(a * P.m.cs, 0.38362, 1e-5);
  EXPECT_NEAR(b * b * P.m.cs / (2 * a), 0.34100, 1e-5);
  EXPECT_NEAR(margin, 0.00537, 2e-5);
  const auto h = h_constants(P.ckp, SolitonCyl::from_direction(a, u));
  EXPECT_NEAR(h.h1, margin / (a * a * a * P.m.beta), 1e-12);
  EXPECT_NEAR(h.h2, P.m.alpha / (3 * a * a * P.m.beta), 1e-10);
  EXPECT_NEAR(h.amplitude(), 3 * margin / (a * P.m.alpha), 1e-13);
  EXPECT_NEAR(h.h1, 2.290, 0.01);
  EXPECT_NEAR(h.amplitude(), 0.0650, 1e-3);
}

TEST(HConstants, ThresholdAndKdvReduction) {
  const Reference P;
  SolitonCyl s = SolitonCyl::from_direction(0.6, 0.0);
  s.u = cyl_threshold_speed(P.ckp, s);
  EXPECT_NEAR(s.u, 0.72463, 2e-5);
  EXPECT_NEAR(h_constants(P.ckp, s).h1, 0.0, 1e-12);
  EXPECT_THROW(CkpSoliton(s, P.ckp), NonexistentSolitonError);
  const auto k = SolitonCyl::from_direction(1.0, 0.7);
  EXPECT_NEAR(h_constants(P.ckp, k).h1, (0.7 - P.m.cs) / P.m.beta, 1e-12);
  auto mit = P.ckp;
  mit.beta = 0;
  EXPECT_THROW(h_constants(mit, k), DispersionlessError);
}

TEST(CkpSolution, CrestAndBounds) {
  const Reference P;
  const auto s = SolitonCyl::from_direction(0.6, 0.73);
  const CkpSoliton sol(s, P.ckp);
  for (double z : {0.0, 10.0, 30.0})
    for (double phi : {0.0, 0.5})
      for (double t : {10.0, 18.0, 28.0}) {
        const double r = sol.crest_radius(phi, z, t);
        EXPECT_NEAR(sol(r, phi, z, t), sol.amplitude(), 1e-15);
        EXPECT_EQ(ckp_solution(s, P.ckp, r + 3, phi, z, t), sol(r + 3, phi, z, t));
        EXPECT_LT(sol(r + 3, phi, z, t), sol.amplitude());
        EXPECT_GT(sol(r + 3, phi, z, t), 0.0);
      }
  EXPECT_THROW(sol(1, 0, 0, 0.0), ContractError);
  EXPECT_THROW(sol(1, 0, 0, -1.0), ContractError);
}

TEST(CkpSolution, Figure2Trends) {
  const Reference P;
  const CkpSoliton sol(SolitonCyl::from_direction(0.6, 0.73), P.ckp);
  // Crest moves outward in t and sits at smaller r for larger z.
  EXPECT_NEAR(sol.crest_radius(0, 0, 18), 0.73 * 18 / 0.6, 1e-12);
  EXPECT_NEAR(sol.crest_radius(0, 30, 28), (0.73 * 28 - 0.8 * 30) / 0.6, 1e-12);
  for (double z = 0; z <= 30; z += 5) {
    EXPECT_GT(sol.crest_radius(0, z, 28), sol.crest_radius(0, z, 18));
    EXPECT_LT(sol.crest_radius(0, z + 1, 18), sol.crest_radius(0, z, 18));
  }
  double prev = -1;
  for (double deg = 20; deg <= 150; deg += 5) {
    const double phi = deg * pi / 180;
    const double speed = (sol.crest_radius(phi, 1, 22) - sol.crest_radius(phi, 1, 10)) / 12;
    EXPECT_NEAR(speed, (0.73 + 0.6 * P.m.cs * phi * phi / 2) / 0.6, 1e-12);
    EXPECT_GT(sol.phase_speed(phi), prev);
    prev = sol.phase_speed(phi);
  }
}

TEST(CartSpeeds, OffsetAndConsistentSpeed) {
  const Reference P;
  const SolitonCart s;
  EXPECT_NEAR(cart_offset_speed(P.kp, s), 0.92 * P.m.cs, 1e-15);
  EXPECT_NEAR(cart_offset_speed(P.kp, s), 0.58822, 1e-5);
  const double bc = s.B_dir * s.B_dir + s.C_dir * s.C_dir;
  EXPECT_NEAR(cart_consistent_speed(P.kp, s), 0.66 + P.m.cs * bc * (1 / 0.6 - 1) / 2, 1e-15);
  SolitonCart line{1.0, 0.0, 0.0, 0.7};
  EXPECT_EQ(cart_consistent_speed(P.kp, line), 0.7);
}

TEST(KpSolution, ReferenceAmplitude) {
  const Reference P;
  const SolitonCart s;
  const KpSoliton sol(s, P.kp);
  const double w = 0.92 * P.m.cs;
  EXPECT_NEAR(0.66 - w, 0.07178, 1e-5);
  EXPECT_NEAR(sol.amplitude(), 3 * (0.66 - w) / (0.6 * P.m.alpha), 1e-13);
  EXPECT_NEAR(sol.amplitude(), 0.8694, 1e-3);
  EXPECT_NEAR(sol.width_parameter(), std::sqrt((0.66 - w) / (4 * 0.216 * P.m.beta)), 1e-13);
  // Zero-phase plane.
  const double x = 0.66 * 40 / 0.6 - (s.B_dir * 3 + 0.5 * 2) / 0.6;
  EXPECT_NEAR(kp_solution(s, P.kp, x, 3, 2, 40), sol.amplitude(), 1e-12);
}

TEST(KpSolution, Existence) {
  const Reference P;
  SolitonCart s;
  s.U = cart_offset_speed(P.kp, s);
  EXPECT_THROW(KpSoliton(s, P.kp), NonexistentSolitonError);
  auto flat = P.kp;
  flat.beta = 0;
  EXPECT_THROW(KpSoliton(SolitonCart{}, flat), DispersionlessError);
}

TEST(KpSolution, TranslationAlongX) {
  const Reference P;
  const SolitonCart s{1.0, 0.0, 0.0, 0.7};
  for (double dt : {0.5, 3.0, 17.0})
    for (double x : {-3.0, 0.0, 2.5})
      EXPECT_NEAR(kp_solution(s, P.kp, x + 0.7 * dt, 0, 0, 10 + dt),
                  kp_solution(s, P.kp, x, 0, 0, 10), 1e-14);
}

TEST(KpSolution, KdvReduction) {
  const Reference P;
  const double U = 0.7, cs = P.m.cs, al = P.m.alpha, be = P.m.beta;
  const SolitonCart s{1.0, 0.0, 0.0, U};
  for (double x = -20; x <= 20; x += 0.7) {
    const double kdv = 3 * (U - cs) / al * hand_sech2(std::sqrt((U - cs) / (4 * be)) * (x - U * 5));
    EXPECT_NEAR(kp_solution(s, P.kp, x, 0, 0, 5), kdv, 1e-12);
  }
}

TEST(Existence, Cylindrical) {
  const Reference P;
  const auto e = existence_cyl(P.m, 0.6, 0.73);
  EXPECT_TRUE(e.admissible);
  EXPECT_NEAR(e.margin_speed, 0.0054, 1e-3);
  EXPECT_NEAR(e.amplitude, 0.065, 1e-3);
  EXPECT_FALSE(existence_cyl(P.m, 0.6, 0.7).admissible);
  const double top = 0.6 * P.m.cs + 0.64 * P.m.cs / 1.2 + 0.6 * P.m.alpha / 3;
  const auto edge = existence_cyl(P.m, 0.6, top);
  EXPECT_NEAR(edge.amplitude, 1.0, 1e-12);
  EXPECT_FALSE(existence_cyl(P.m, 0.6, top + 1e-9).admissible);
  EXPECT_THROW(existence_cyl(P.m, 0.0, 0.73), DomainError);
  EXPECT_THROW(existence_cyl(P.m, 1.1, 0.73), DomainError);
}

TEST(Existence, Cartesian) {
  const Reference P;
  const auto e = existence_cart(P.m, 0.6, 0.66);
  EXPECT_TRUE(e.admissible);
  EXPECT_NEAR(e.margin_speed, 0.072, 1e-3);
  EXPECT_NEAR(e.amplitude, 0.869, 1e-3);
  const double w = existence_bounds(P.m, Geometry::Cartesian, 0.6).u_lower;
  EXPECT_NEAR(w, 0.92 * P.m.cs, 1e-15);
  const auto at_w = existence_cart(P.m, 0.6, w);
  EXPECT_EQ(at_w.margin_speed, 0.0);
  EXPECT_FALSE(at_w.admissible);
  EXPECT_THROW(existence_cart(P.m, 0.87, 0.66), DomainError);
  EXPECT_THROW(existence_cart(P.m, 0.0, 0.66), DomainError);
}

TEST(RegionScan, BandStructure) {
  const Reference P;
  const auto scan = existence_region_scan(P.m, Geometry::Cylindrical, {0.3, 1.0, 36},
                                          {0.55, 1.0, 46});
  ASSERT_EQ(scan.cells.size(), 36u * 46u);
  ASSERT_EQ(scan.curves.size(), 36u);
  for (const auto& b : scan.curves)
    EXPECT_NEAR(b.u_upper - b.u_lower, b.a * P.m.alpha / 3, 1e-12);
  std::size_t admissible = 0;
  for (const auto& c : scan.cells) {
    const auto e = existence_cyl(P.m, c.a, c.u);
    EXPECT_EQ(c.admissible, e.admissible);
    if (c.admissible) {
      EXPECT_LT(c.amplitude, 1.0);
      EXPECT_GT(c.margin_speed, 0.0);
      ++admissible;
    }
  }
  EXPECT_GT(admissible, 0u);
  const auto b = existence_bounds(P.m, Geometry::Cylindrical, 0.6);
  EXPECT_LT(b.u_lower, 0.73);
  EXPECT_GT(b.u_upper, 0.73);
  const auto c = existence_bounds(P.m, Geometry::Cartesian, 0.6);
  EXPECT_LT(c.u_lower, 0.66);
  EXPECT_GT(c.u_upper, 0.66);
  EXPECT_NEAR(c.u_lower, 0.92 * P.m.cs, 1e-14);
}

TEST(RegionScan, ThreadCountInvariant) {
  const Reference P;
  const auto one = existence_region_scan(P.m, Geometry::Cartesian, {0.3, 0.86, 29},
                                         {0.4, 1.0, 31}, 0.5, 1);
  const auto many = existence_region_scan(P.m, Geometry::Cartesian, {0.3, 0.86, 29},
                                          {0.4, 1.0, 31}, 0.5, 7);
  ASSERT_EQ(one.cells.size(), many.cells.size());
  for (std::size_t n = 0; n < one.cells.size(); ++n) {
    EXPECT_EQ(one.cells[n].a, many.cells[n].a);
    EXPECT_EQ(one.cells[n].u, many.cells[n].u);
    EXPECT_EQ(one.cells[n].admissible, many.cells[n].admissible);
    EXPECT_EQ(one.cells[n].near_boundary, many.cells[n].near_boundary);
    EXPECT_EQ(one.cells[n].margin_speed, many.cells[n].margin_speed);
  }
}

TEST(RegionScan, NearBoundaryFlag) {
  const Reference P;
  const auto scan = existence_region_scan(P.m, Geometry::Cylindrical, {0.6, 0.6, 1},
                                          {0.55, 1.0, 451});
  const double du = 0.45 / 450;
  const auto b = existence_bounds(P.m, Geometry::Cylindrical, 0.6);
  for (const auto& c : scan.cells) {
    const bool near = std::abs(c.u - b.u_lower) < du / 2 || std::abs(c.u - b.u_upper) < du / 2;
    EXPECT_EQ(c.near_boundary, near) << c.u;
  }
}

TEST(VelocityFields, SingleMode) {
  const double L = 2 * pi * 4, kx = 2 * pi * 2 / L, ky = 2 * pi * 3 / L, d = 0.01;
  ScalarField3D f(32, 32, 1, L / 32, L / 32, 1.0);
  for (std::size_t j = 0; j < f.ny; ++j)
    for (std::size_t i = 0; i < f.nx; ++i)
      f(i, j) = d * std::cos(kx * f.dx * i + ky * f.dy * j);
  const auto v = velocity_fields(f, VelocityGeometry::Cartesian);
  EXPECT_EQ(v.longitudinal.values, f.values);
  for (std::size_t n = 0; n < f.size(); ++n) {
    EXPECT_NEAR(v.transverse1.values[n], f.values[n] * ky / kx, 1e-14);
    EXPECT_EQ(v.transverse2.values[n], 0.0);
  }
  const auto c = velocity_fields(f, VelocityGeometry::Cylindrical, 4.0);
  for (std::size_t n = 0; n < f.size(); ++n)
    EXPECT_NEAR(c.transverse1.values[n], f.values[n] * ky / kx / 4.0, 1e-14);
  EXPECT_THROW(velocity_fields(f, VelocityGeometry::Cylindrical, 0.0), ContractError);
}

TEST(VelocityFields, TransverseIndependentFieldAndMeanViolation) {
  const double L = 10;
  ScalarField3D f(16, 8, 4, L / 16, 1, 1);
  for (std::size_t k = 0; k < f.nz; ++k)
    for (std::size_t j = 0; j < f.ny; ++j)
      for (std::size_t i = 0; i < f.nx; ++i) f(i, j, k) = std::sin(2 * pi * f.dx * i / L);
  const auto v = velocity_fields(f, VelocityGeometry::Cartesian);
  for (double x : v.transverse1.values) EXPECT_NEAR(x, 0, 1e-15);
  for (double x : v.transverse2.values) EXPECT_NEAR(x, 0, 1e-15);
  // A y-only mode has a transverse gradient with nonzero x mean.
  for (std::size_t j = 0; j < f.ny; ++j)
    for (std::size_t i = 0; i < f.nx; ++i) f(i, j, 0) += std::cos(2 * pi * j / 8.0);
  EXPECT_THROW(velocity_fields(f, VelocityGeometry::Cartesian), ContractError);
}

TEST(RegionScan, CartesianDirectionsBeyondDomainAreInadmissible) {
  const Reference P;
  const auto scan = existence_region_scan(P.m, Geometry::Cartesian, {0.3, 1.0, 8},
                                          {0.4, 1.0, 5});
  for (const auto& c : scan.cells) {
    if (c.a * c.a + 0.25 > 1.0) {
      EXPECT_FALSE(c.admissible);
      EXPECT_TRUE(std::isnan(c.margin_speed));
    }
  }
  EXPECT_TRUE(std::isnan(scan.curves.back().u_lower));
  EXPECT_FALSE(std::isnan(scan.curves.front().u_lower));
}
