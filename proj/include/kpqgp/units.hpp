#pragma once

#include <numbers>

/// Natural units (hbar = c = 1) with lengths in fm. Energies entering at the
/// boundary in MeV are converted with the single constant below.
namespace kpqgp {

/// hbar * c in MeV fm.
inline constexpr double kHbarC = 197.326980;

inline constexpr double kPi = std::numbers::pi;

/// pi^(2/3), the prefactor of rho^(4/3) in the gamma_Q = 6 quark terms.
inline const double kPiTwoThirds = 2.1450293971110255;

struct MeV {
  double value;
};

struct InverseFm {
  double value;
};

constexpr InverseFm to_inverse_fm(MeV e) { return {e.value / kHbarC}; }
constexpr MeV to_mev(InverseFm k) { return {k.value * kHbarC}; }

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }

}  // namespace kpqgp
