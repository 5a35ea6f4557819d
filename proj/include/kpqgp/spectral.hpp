#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "kpqgp/field.hpp"

namespace kpqgp {

using Complex = std::complex<double>;

/// Real-to-complex 3-D transform pair on an (nx, ny, nz) grid. The spectral
/// layout halves the x axis: index kx + (nx/2+1) * (j + ny * k).
/// Plans are built with FFTW_ESTIMATE so results do not depend on timing.
/// An instance owns scratch buffers and must not be shared across threads.
class Fft3D {
 public:
  Fft3D(std::size_t nx, std::size_t ny, std::size_t nz);
  ~Fft3D();
  Fft3D(Fft3D&&) noexcept;
  Fft3D& operator=(Fft3D&&) noexcept;
  Fft3D(const Fft3D&) = delete;
  Fft3D& operator=(const Fft3D&) = delete;

  std::size_t real_size() const { return nx_ * ny_ * nz_; }
  std::size_t spectral_size() const { return (nx_ / 2 + 1) * ny_ * nz_; }

  void forward(std::span<const double> in, std::span<Complex> out);
  /// Normalized inverse: inverse(forward(f)) == f.
  void inverse(std::span<const Complex> in, std::span<double> out);

 private:
  struct Plans;
  std::size_t nx_, ny_, nz_;
  std::unique_ptr<Plans> plans_;
};

/// Wavenumbers and transform for a periodic box.
class SpectralGrid {
 public:
  SpectralGrid(std::size_t nx, std::size_t ny, std::size_t nz, double lx,
               double ly, double lz);
  explicit SpectralGrid(const ScalarField3D& like);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t nz() const { return nz_; }
  std::size_t nkx() const { return nx_ / 2 + 1; }
  std::size_t real_size() const { return fft_.real_size(); }
  std::size_t spectral_size() const { return fft_.spectral_size(); }
  std::size_t spectral_index(std::size_t i, std::size_t j,
                             std::size_t k) const {
    return i + nkx() * (j + ny_ * k);
  }

  double kx(std::size_t i) const { return kx_[i]; }
  double ky(std::size_t j) const { return ky_[j]; }
  double kz(std::size_t k) const { return kz_[k]; }
  /// True on a Nyquist plane of an even-length axis; odd derivatives vanish
  /// there.
  bool nyquist_x(std::size_t i) const { return nx_ % 2 == 0 && i == nx_ / 2; }
  bool nyquist_y(std::size_t j) const { return ny_ % 2 == 0 && j == ny_ / 2 && ny_ > 1; }
  bool nyquist_z(std::size_t k) const { return nz_ % 2 == 0 && k == nz_ / 2 && nz_ > 1; }

  double max_kx() const { return kx_.back(); }
  double max_k_perp2() const;
  /// Modes kept by the two-thirds rule.
  bool keep_two_thirds(std::size_t i, std::size_t j, std::size_t k) const;

  void forward(std::span<const double> in, std::span<Complex> out) {
    fft_.forward(in, out);
  }
  void inverse(std::span<const Complex> in, std::span<double> out) {
    fft_.inverse(in, out);
  }

 private:
  std::size_t nx_, ny_, nz_;
  std::vector<double> kx_, ky_, kz_;
  Fft3D fft_;
};

enum class Axis { X = 0, Y = 1, Z = 2 };

/// d^order f / d axis^order of a periodic field.
ScalarField3D spectral_derivative(const ScalarField3D& f, Axis axis, int order);
ScalarField3D spectral_laplacian(const ScalarField3D& f);
std::array<ScalarField3D, 3> spectral_gradient(const ScalarField3D& f);

/// Location and height of the maximum of the trigonometric interpolant of a
/// periodic line of samples, refined below the grid spacing.
struct PeakEstimate {
  double position;  ///< in [0, n * dx)
  double value;
};
PeakEstimate refine_peak(std::span<const double> samples, double dx);

}  // namespace kpqgp
