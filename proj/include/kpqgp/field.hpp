#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kpqgp/errors.hpp"

namespace kpqgp {

/// Uniform-grid samples of a scalar on a box. Index (i, j, k) maps to
/// i + nx * (j + ny * k), so x is the contiguous axis. One- and
/// two-dimensional fields use ny = 1 and/or nz = 1.
struct ScalarField3D {
  std::size_t nx = 1, ny = 1, nz = 1;
  double dx = 1.0, dy = 1.0, dz = 1.0;
  bool periodic = true;
  std::string role = "rho1";
  std::vector<double> values;

  ScalarField3D() = default;
  ScalarField3D(std::size_t nx_, std::size_t ny_, std::size_t nz_, double dx_,
                double dy_, double dz_, double fill = 0.0)
      : nx(nx_), ny(ny_), nz(nz_), dx(dx_), dy(dy_), dz(dz_),
        values(nx_ * ny_ * nz_, fill) {
    validate();
  }

  static ScalarField3D line(std::size_t n, double spacing, double fill = 0.0) {
    return ScalarField3D(n, 1, 1, spacing, 1.0, 1.0, fill);
  }

  std::size_t size() const { return values.size(); }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return i + nx * (j + ny * k);
  }
  double& operator()(std::size_t i, std::size_t j = 0, std::size_t k = 0) {
    return values[index(i, j, k)];
  }
  double operator()(std::size_t i, std::size_t j = 0, std::size_t k = 0) const {
    return values[index(i, j, k)];
  }

  double length_x() const { return dx * static_cast<double>(nx); }
  double length_y() const { return dy * static_cast<double>(ny); }
  double length_z() const { return dz * static_cast<double>(nz); }
  double cell_volume() const {
    return dx * (ny > 1 ? dy : 1.0) * (nz > 1 ? dz : 1.0);
  }

  bool same_grid(const ScalarField3D& o) const {
    return nx == o.nx && ny == o.ny && nz == o.nz && dx == o.dx &&
           dy == o.dy && dz == o.dz;
  }

  void validate() const {
    if (nx == 0 || ny == 0 || nz == 0)
      throw ContractError("field: grid sizes must be positive");
    if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0))
      throw ContractError("field: spacings must be positive");
    if (values.size() != nx * ny * nz)
      throw ContractError("field: nx*ny*nz != number of samples");
  }

  void require_periodic(const char* who) const {
    validate();
    if (!periodic)
      throw ContractError(std::string(who) +
                          ": spectral derivatives need a periodic field");
  }
};

}  // namespace kpqgp
