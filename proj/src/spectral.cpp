#include "kpqgp/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "kpqgp/units.hpp"

namespace kpqgp {

namespace {

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<double> signed_wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n, 0.0);
  if (n == 1) return k;
  const double base = 2.0 * kPi / length;
  for (std::size_t j = 0; j < n; ++j) {
    const long m = j <= n / 2 ? static_cast<long>(j)
                              : static_cast<long>(j) - static_cast<long>(n);
    k[j] = base * static_cast<double>(m);
  }
  return k;
}

}  // namespace

struct Fft3D::Plans {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  std::size_t n_real = 0, n_spec = 0;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    if (real) fftw_free(real);
    if (spec) fftw_free(spec);
  }
};

Fft3D::Fft3D(std::size_t nx, std::size_t ny, std::size_t nz)
    : nx_(nx), ny_(ny), nz_(nz), plans_(std::make_unique<Plans>()) {
  if (nx == 0 || ny == 0 || nz == 0)
    throw ContractError("Fft3D: grid sizes must be positive");
  plans_->n_real = real_size();
  plans_->n_spec = spectral_size();
  std::lock_guard lock(planner_mutex());
  plans_->real = fftw_alloc_real(plans_->n_real);
  plans_->spec = fftw_alloc_complex(plans_->n_spec);
  const int dims[3] = {static_cast<int>(nz), static_cast<int>(ny),
                       static_cast<int>(nx)};
  plans_->fwd = fftw_plan_dft_r2c(3, dims, plans_->real, plans_->spec,
                                  FFTW_ESTIMATE);
  plans_->inv = fftw_plan_dft_c2r(3, dims, plans_->spec, plans_->real,
                                  FFTW_ESTIMATE);
}

Fft3D::~Fft3D() = default;
Fft3D::Fft3D(Fft3D&&) noexcept = default;
Fft3D& Fft3D::operator=(Fft3D&&) noexcept = default;

void Fft3D::forward(std::span<const double> in, std::span<Complex> out) {
  if (in.size() != plans_->n_real || out.size() != plans_->n_spec)
    throw ContractError("Fft3D::forward: buffer size mismatch");
  std::copy(in.begin(), in.end(), plans_->real);
  fftw_execute(plans_->fwd);
  auto* s = reinterpret_cast<const Complex*>(plans_->spec);
  std::copy(s, s + plans_->n_spec, out.begin());
}

void Fft3D::inverse(std::span<const Complex> in, std::span<double> out) {
  if (out.size() != plans_->n_real || in.size() != plans_->n_spec)
    throw ContractError("Fft3D::inverse: buffer size mismatch");
  auto* s = reinterpret_cast<Complex*>(plans_->spec);
  std::copy(in.begin(), in.end(), s);
  fftw_execute(plans_->inv);
  const double scale = 1.0 / static_cast<double>(plans_->n_real);
  for (std::size_t i = 0; i < plans_->n_real; ++i)
    out[i] = plans_->real[i] * scale;
}

SpectralGrid::SpectralGrid(std::size_t nx, std::size_t ny, std::size_t nz,
                           double lx, double ly, double lz)
    : nx_(nx), ny_(ny), nz_(nz), fft_(nx, ny, nz) {
  kx_.resize(nx / 2 + 1);
  for (std::size_t i = 0; i < kx_.size(); ++i)
    kx_[i] = nx > 1 ? 2.0 * kPi * static_cast<double>(i) / lx : 0.0;
  ky_ = signed_wavenumbers(ny, ly);
  kz_ = signed_wavenumbers(nz, lz);
}

SpectralGrid::SpectralGrid(const ScalarField3D& like)
    : SpectralGrid(like.nx, like.ny, like.nz, like.length_x(),
                   like.length_y(), like.length_z()) {}

double SpectralGrid::max_k_perp2() const {
  double my = 0.0, mz = 0.0;
  for (double k : ky_) my = std::max(my, k * k);
  for (double k : kz_) mz = std::max(mz, k * k);
  return my + mz;
}

bool SpectralGrid::keep_two_thirds(std::size_t i, std::size_t j,
                                   std::size_t k) const {
  auto inside = [](double idx, std::size_t n) {
    return n == 1 || 3.0 * std::abs(idx) < static_cast<double>(n);
  };
  const double jj = j <= ny_ / 2 ? double(j) : double(j) - double(ny_);
  const double kk = k <= nz_ / 2 ? double(k) : double(k) - double(nz_);
  return inside(double(i), nx_) && inside(jj, ny_) && inside(kk, nz_);
}

ScalarField3D spectral_derivative(const ScalarField3D& f, Axis axis,
                                  int order) {
  f.require_periodic("spectral_derivative");
  if (order < 0) throw ContractError("spectral_derivative: negative order");
  SpectralGrid grid(f);
  std::vector<Complex> spec(grid.spectral_size());
  grid.forward(f.values, spec);
  const Complex ik_unit(0.0, 1.0);
  for (std::size_t k = 0; k < f.nz; ++k)
    for (std::size_t j = 0; j < f.ny; ++j)
      for (std::size_t i = 0; i < grid.nkx(); ++i) {
        double kv = 0.0;
        bool nyq = false;
        switch (axis) {
          case Axis::X: kv = grid.kx(i); nyq = grid.nyquist_x(i); break;
          case Axis::Y: kv = grid.ky(j); nyq = grid.nyquist_y(j); break;
          case Axis::Z: kv = grid.kz(k); nyq = grid.nyquist_z(k); break;
        }
        auto& c = spec[grid.spectral_index(i, j, k)];
        if (order % 2 == 1 && nyq) {
          c = 0.0;
          continue;
        }
        c *= std::pow(ik_unit * kv, order);
      }
  ScalarField3D out = f;
  grid.inverse(spec, out.values);
  return out;
}

ScalarField3D spectral_laplacian(const ScalarField3D& f) {
  f.require_periodic("spectral_laplacian");
  SpectralGrid grid(f);
  std::vector<Complex> spec(grid.spectral_size());
  grid.forward(f.values, spec);
  for (std::size_t k = 0; k < f.nz; ++k)
    for (std::size_t j = 0; j < f.ny; ++j)
      for (std::size_t i = 0; i < grid.nkx(); ++i) {
        const double k2 = grid.kx(i) * grid.kx(i) + grid.ky(j) * grid.ky(j) +
                          grid.kz(k) * grid.kz(k);
        spec[grid.spectral_index(i, j, k)] *= -k2;
      }
  ScalarField3D out = f;
  grid.inverse(spec, out.values);
  return out;
}

std::array<ScalarField3D, 3> spectral_gradient(const ScalarField3D& f) {
  return {spectral_derivative(f, Axis::X, 1), spectral_derivative(f, Axis::Y, 1),
          spectral_derivative(f, Axis::Z, 1)};
}

PeakEstimate refine_peak(std::span<const double> samples, double dx) {
  const std::size_t n = samples.size();
  if (n == 0) throw ContractError("refine_peak: empty line");
  const auto it = std::max_element(samples.begin(), samples.end());
  const auto i0 = static_cast<std::size_t>(it - samples.begin());
  if (n < 4) return {dx * static_cast<double>(i0), *it};

  Fft3D fft(n, 1, 1);
  std::vector<Complex> c(n / 2 + 1);
  fft.forward(samples, c);
  const double length = dx * static_cast<double>(n);
  const double k0 = 2.0 * kPi / length;
  const double inv_n = 1.0 / static_cast<double>(n);
  auto interp = [&](double x) {
    double s = c[0].real();
    for (std::size_t m = 1; m < c.size(); ++m) {
      const double w = (n % 2 == 0 && m == n / 2) ? 1.0 : 2.0;
      const double ph = k0 * static_cast<double>(m) * x;
      s += w * (c[m].real() * std::cos(ph) - c[m].imag() * std::sin(ph));
    }
    return s * inv_n;
  };

  // Golden-section search on the bracket around the best sample.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = dx * (static_cast<double>(i0) - 1.0);
  double hi = dx * (static_cast<double>(i0) + 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = interp(x1), f2 = interp(x2);
  for (int it_count = 0; it_count < 80 && hi - lo > 1e-13 * dx; ++it_count) {
    if (f1 > f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - g * (hi - lo); f1 = interp(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + g * (hi - lo); f2 = interp(x2);
    }
  }
  double x = 0.5 * (lo + hi);
  double v = interp(x);
  if (v < *it) {
    x = dx * static_cast<double>(i0);
    v = *it;
  }
  x = std::fmod(x, length);
  if (x < 0.0) x += length;
  return {x, v};
}

}  // namespace kpqgp
