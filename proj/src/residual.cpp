#include "kpqgp/residual.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kpqgp/errors.hpp"

namespace kpqgp::residual {

namespace {

// Fourth-order central stencils written on differences so that a constant
// field gives exactly zero.
double diff1(double fm2, double fm1, double fp1, double fp2) {
  return (8.0 * (fp1 - fm1) - (fp2 - fm2)) / 12.0;
}
double diff2(double fm2, double fm1, double f0, double fp1, double fp2) {
  return (16.0 * ((fp1 - f0) + (fm1 - f0)) - ((fp2 - f0) + (fm2 - f0))) / 12.0;
}
double diff4(const std::array<double, 7>& f) {
  auto sym = [&](int m) { return (f[3 + m] - f[3]) + (f[3 - m] - f[3]); };
  return (-sym(3) + 12.0 * sym(2) - 39.0 * sym(1)) / 6.0;
}

}  // namespace

double operator_value(const WaveEquationSpec& spec, const Solution& rho,
                      std::array<double, 4> p, std::array<double, 4> h) {
  const bool cyl = spec.cylindrical();
  if (cyl && !(p[3] > 0.0))
    throw ContractError("residual: cylindrical operator needs t > 0");

  auto at = [&](int axis, int off) {
    auto q = p;
    q[axis] += off * h[axis];
    return rho(q[0], q[1], q[2], q[3]);
  };
  auto d1 = [&](int axis) {
    return diff1(at(axis, -2), at(axis, -1), at(axis, 1), at(axis, 2)) / h[axis];
  };
  auto d2 = [&](int axis) {
    return diff2(at(axis, -2), at(axis, -1), at(axis, 0), at(axis, 1), at(axis, 2)) /
           (h[axis] * h[axis]);
  };
  std::array<double, 7> line{};
  for (int m = -3; m <= 3; ++m) line[m + 3] = at(0, m);
  const double d4 = diff4(line) / std::pow(h[0], 4);
  // d/dx at t offsets -2..2, then d/dt of those.
  std::array<double, 5> dx_at{};
  for (int n = -2; n <= 2; ++n) {
    if (n == 0) continue;
    auto shifted = [&](int m) {
      auto q = p;
      q[0] += m * h[0];
      q[3] += n * h[3];
      return rho(q[0], q[1], q[2], q[3]);
    };
    dx_at[n + 2] = diff1(shifted(-2), shifted(-1), shifted(1), shifted(2));
  }
  const double d1t = diff1(dx_at[0], dx_at[1], dx_at[3], dx_at[4]) / (h[0] * h[3]);

  const double r0 = rho(p[0], p[1], p[2], p[3]);
  const double rx = d1(0), rxx = d2(0);
  double value = d1t + spec.cs * rxx + spec.alpha * (rx * rx + r0 * rxx) +
                 spec.beta * d4 + spec.transverse_coeff * d2(2);
  if (cyl) {
    const double t = p[3];
    value += rx / (2.0 * t) + d2(1) / (2.0 * spec.cs * t * t);
  } else {
    value += spec.transverse_coeff * d2(1);
  }
  return value;
}

std::vector<std::array<double, 4>> ProbeBox::points() const {
  for (auto c : counts)
    if (c == 0) throw ContractError("residual: probe counts must be positive");
  std::vector<std::array<double, 4>> out;
  auto coord = [&](int axis, std::size_t i) {
    return counts[axis] == 1
               ? lo[axis]
               : lo[axis] + (hi[axis] - lo[axis]) * double(i) / double(counts[axis] - 1);
  };
  for (std::size_t a = 0; a < counts[0]; ++a)
    for (std::size_t b = 0; b < counts[1]; ++b)
      for (std::size_t c = 0; c < counts[2]; ++c)
        for (std::size_t d = 0; d < counts[3]; ++d)
          out.push_back({coord(0, a), coord(1, b), coord(2, c), coord(3, d)});
  return out;
}

ResidualReport residual_check(const Solution& rho, const WaveEquationSpec& spec,
                              const ProbeBox& box, const ResidualOptions& options) {
  for (double s : options.base_steps)
    if (!(s > 0.0)) throw ContractError("residual: steps must be positive");
  if (options.halvings == 0)
    throw ContractError("residual: need at least one halving");
  const auto points = box.points();
  if (spec.cylindrical())
    for (const auto& p : points)
      if (!(p[3] - 3.0 * options.base_steps[3] > 0.0))
        throw ContractError("residual: cylindrical probe box must stay at t > 0");

  ResidualReport report;
  double scale = 1.0;
  for (std::size_t n = 0; n <= options.halvings; ++n, scale *= 0.5) {
    std::array<double, 4> h;
    for (int a = 0; a < 4; ++a) h[a] = options.base_steps[a] * scale;
    double worst = 0.0;
    for (const auto& p : points)
      worst = std::max(worst, std::abs(operator_value(spec, rho, p, h)));
    report.rows.push_back({scale, worst});
  }

  report.passed = true;
  for (std::size_t n = 1; n < report.rows.size(); ++n) {
    const double prev = report.rows[n - 1].max_residual;
    const double cur = report.rows[n].max_residual;
    if (!(cur < prev)) report.monotone = false;
    const double order = (cur > 0.0 && prev > 0.0) ? std::log2(prev / cur) : 0.0;
    report.orders.push_back(order);
    if (!(order >= options.min_order && order <= options.max_order))
      report.passed = false;
  }
  const bool exact_zero = std::all_of(report.rows.begin(), report.rows.end(),
                                      [](const ResidualRow& r) { return r.max_residual == 0.0; });
  if (exact_zero) {
    report.passed = true;
    report.message = "residual identically zero";
    return report;
  }
  if (!report.monotone) report.passed = false;

  char buf[160];
  report.message = report.passed ? "converged" : "FAILED: ";
  if (!report.monotone) report.message += "non-monotone convergence; ";
  report.message += "\nstep_scale,max_residual,order\n";
  for (std::size_t n = 0; n < report.rows.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%s\n", report.rows[n].step_scale,
                  report.rows[n].max_residual,
                  n == 0 ? "" : std::to_string(report.orders[n - 1]).c_str());
    report.message += buf;
  }
  return report;
}

ProbeBox crest_probe_cyl(const solitons::SolitonCyl& sol, double t) {
  const double z = 2.0;
  const double r = (sol.u * t - sol.b * z) / sol.a;
  ProbeBox box;
  box.lo = {r - 6.0, -0.2, z - 1.0, t - 0.5};
  box.hi = {r + 6.0, 0.2, z + 1.0, t + 0.5};
  box.counts = {25, 3, 3, 3};
  return box;
}

ProbeBox crest_probe_cart(const solitons::SolitonCart& sol, double t) {
  const double y = 10.0, z = 1.0;
  const double x = (sol.U * t - sol.B_dir * y - sol.C_dir * z) / sol.A_dir;
  ProbeBox box;
  box.lo = {x - 4.0, y - 1.0, z - 0.5, t - 0.5};
  box.hi = {x + 4.0, y + 1.0, z + 0.5, t + 0.5};
  box.counts = {33, 3, 3, 3};
  return box;
}

ResidualOptions crest_options_cart() {
  ResidualOptions o;
  o.base_steps = {0.08, 0.08, 0.08, 0.08};
  return o;
}

}  // namespace kpqgp::residual
