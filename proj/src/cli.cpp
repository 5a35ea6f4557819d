#include "kpqgp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <span>
#include <tuple>

#include "kpqgp/acoustics.hpp"
#include "kpqgp/eos.hpp"
#include "kpqgp/errors.hpp"
#include "kpqgp/kp_model.hpp"
#include "kpqgp/parallel.hpp"
#include "kpqgp/residual.hpp"
#include "kpqgp/solitons.hpp"
#include "kpqgp/solver.hpp"
#include "kpqgp/spectral.hpp"
#include "kpqgp/units.hpp"

namespace kpqgp::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using config::RunConfig;

namespace {

/// A check the command ran to completion but whose outcome is negative.
class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  const RunConfig& cfg;
  fs::path dir;
  std::string hash;
  std::ostream& out;
  json manifest;

  Context(const RunConfig& c, fs::path d, std::ostream& o, std::string_view command)
      : cfg(c), dir(std::move(d)), hash(config::hash(c)), out(o) {
    json echo = json::object();
    for (const auto& k : config::keys())
      if (k != "run.out_dir") echo[k] = config::get(c, k);
    manifest = {{"provenance", io::provenance(hash)},
                {"command", std::string(command)},
                {"config", echo},
                {"files", json::object()}};
  }

  void table(const std::string& stem, const io::ResultTable& t) {
    io::write_text(dir / (stem + ".csv"), t.to_csv());
    manifest["files"][stem + ".csv"] = {{"columns", t.units()},
                                        {"rows", t.rows().size()}};
  }

  void finish(const std::string& stem) {
    io::write_json(dir / (stem + ".json"), manifest);
  }
};

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) throw UsageError("grid size must be >= 1");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
  return v;
}

solitons::Geometry parse_geometry(const std::string& g) {
  if (g == "cyl") return solitons::Geometry::Cylindrical;
  if (g == "cart") return solitons::Geometry::Cartesian;
  throw UsageError("soliton.geometry must be 'cyl' or 'cart', got '" + g + "'");
}

// ---------------------------------------------------------------- eos-table

void cmd_eos_table(Context& ctx) {
  const auto p = ctx.cfg.eos();
  io::ResultTable t({{"rho_B", "fm^-3"}, {"k_F", "fm^-1"}, {"eps", "fm^-4"},
                     {"p", "fm^-4"}, {"cs2", "1"}});
  for (const auto& r :
       eos::eos_table(p, linspace(ctx.cfg.rho_min, ctx.cfg.rho_max, ctx.cfg.rho_n)))
    t.add_row({r.rho_B, r.k_F, r.eps, r.p, r.cs2});
  ctx.table("eos_table", t);
  ctx.finish("eos_table");
}

// ------------------------------------------------------------- coefficients

json coefficients_json(const eos::MediumCoefficients& m) {
  return {{"A", m.A},         {"cs", m.cs},     {"cs2", m.cs2},
          {"alpha", m.alpha}, {"beta", m.beta}, {"M_eff", m.M_eff}};
}

void cmd_coefficients(Context& ctx) {
  const auto m = eos::medium_coefficients(ctx.cfg.eos());
  const json j = coefficients_json(m);
  ctx.out << j.dump(2) << "\n";
  ctx.manifest["coefficients"] = j;
  ctx.manifest["units"] = {{"A", "fm^-4"}, {"cs", "1"},     {"cs2", "1"},
                           {"alpha", "1"}, {"beta", "fm^2"}, {"M_eff", "fm^-1"}};
  ctx.finish("coefficients");
}

// ------------------------------------------------------------ soliton-eval

io::ResultTable cyl_rz(const solitons::CkpSoliton& s, double phi, double t,
                       const std::vector<double>& r, const std::vector<double>& z) {
  io::ResultTable tab({{"r", "fm"}, {"z", "fm"}, {"rho1", "1"}});
  for (double zz : z)
    for (double rr : r) tab.add_row({rr, zz, s(rr, phi, zz, t)});
  return tab;
}

io::ResultTable cyl_rphi(const solitons::CkpSoliton& s, double z, double t,
                         const std::vector<double>& r,
                         const std::vector<double>& phi_deg) {
  io::ResultTable tab({{"r", "fm"}, {"phi", "deg"}, {"rho1", "1"}});
  for (double ph : phi_deg)
    for (double rr : r) tab.add_row({rr, ph, s(rr, deg_to_rad(ph), z, t)});
  return tab;
}

io::ResultTable cart_xy(const solitons::KpSoliton& s, double z, double t,
                        const std::vector<double>& x, const std::vector<double>& y) {
  io::ResultTable tab({{"x", "fm"}, {"y", "fm"}, {"rho1", "1"}});
  for (double yy : y)
    for (double xx : x) tab.add_row({xx, yy, s(xx, yy, z, t)});
  return tab;
}

void cmd_soliton_eval(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto p = c.eos();
  const auto c1 = linspace(c.c1_min, c.c1_max, c.c1_n);
  const auto c2 = linspace(c.c2_min, c.c2_max, c.c2_n);
  if (parse_geometry(c.geometry) == solitons::Geometry::Cylindrical) {
    const solitons::CkpSoliton s(solitons::SolitonCyl::from_direction(c.a, c.u),
                                 build_wave_spec(p, WaveKind::CkpCyl));
    if (c.slice == "rz")
      ctx.table("soliton_eval", cyl_rz(s, deg_to_rad(c.phi_deg), c.t, c1, c2));
    else if (c.slice == "rphi")
      ctx.table("soliton_eval", cyl_rphi(s, c.z, c.t, c1, c2));
    else
      throw UsageError("soliton.slice for cyl must be 'rz' or 'rphi'");
    ctx.manifest["amplitude"] = s.amplitude();
  } else {
    if (c.slice != "xy") throw UsageError("soliton.slice for cart must be 'xy'");
    const solitons::KpSoliton s(solitons::SolitonCart::from_direction(c.A_dir, c.U, c.C_dir),
                                build_wave_spec(p, WaveKind::KpCart));
    ctx.table("soliton_eval", cart_xy(s, c.z, c.t, c1, c2));
    ctx.manifest["amplitude"] = s.amplitude();
    ctx.manifest["w"] = s.offset_speed();
  }
  ctx.finish("soliton_eval");
}

// ------------------------------------------------------------- region-scan

void emit_scan(Context& ctx, const std::string& stem, const solitons::RegionScan& scan) {
  io::ResultTable cells({{"a", "1"}, {"u", "1"}, {"admissible", "1"},
                         {"margin1", "1"}, {"margin2", "1"}});
  for (const auto& cell : scan.cells) {
    const double flag = cell.near_boundary ? 2.0 : (cell.admissible ? 1.0 : 0.0);
    cells.add_row({cell.a, cell.u, flag, cell.margin_speed, cell.amplitude});
  }
  io::ResultTable curves({{"a", "1"}, {"u_lower", "1"}, {"u_upper", "1"}});
  for (const auto& b : scan.curves) curves.add_row({b.a, b.u_lower, b.u_upper});
  ctx.table(stem, cells);
  ctx.table(stem + "_boundary", curves);
}

void cmd_region_scan(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto medium = eos::medium_coefficients(c.eos());
  const auto scan = solitons::existence_region_scan(
      medium, parse_geometry(c.geometry), {c.a_min, c.a_max, c.a_n},
      {c.u_min, c.u_max, c.u_n}, c.C_dir, c.threads);
  emit_scan(ctx, "region_scan", scan);
  ctx.finish("region_scan");
}

// ------------------------------------------------------------- evolutions

solver::SolverConfig solver_config(const RunConfig& c, double t_start) {
  solver::SolverConfig s;
  s.dt = c.dt;
  s.t_start = t_start;
  s.t_end = c.t_end;
  s.dealias = c.dealias;
  s.integrator = solver::parse_integrator(c.integrator);
  s.snapshot_stride = c.snapshot_stride;
  return s;
}

void emit_diagnostics(Context& ctx, const std::string& stem,
                      const solver::EvolutionResult& r) {
  io::ResultTable d({{"t", "fm"}, {"mass", "fm^d"}, {"l2", "fm^(d/2)"},
                     {"peak", "1"}, {"peak_x", "fm"}, {"max_abs_rho_x", "fm^-1"}});
  for (const auto& g : r.diagnostics)
    d.add_row({g.t, g.mass, g.l2, g.peak, g.peak_x, g.max_abs_gradient_x});
  ctx.table(stem, d);
}

json run_status(const solver::EvolutionResult& r) {
  json j = {{"status", std::string(solver::to_string(r.status))},
            {"steps", r.steps},
            {"dt", r.dt}};
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

void cmd_evolve_kdv(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto medium = eos::medium_coefficients(c.eos());
  if (!(medium.beta > 0.0))
    throw DispersionlessError("evolve-kdv: beta = 0, no soliton to propagate");
  if (!(c.amplitude > 0.0)) throw DomainError("evolve-kdv: amplitude must be > 0");
  // (xi, tau) frame of the cylindrical soliton; a = 1 is the plain KdV line.
  const double b2 = 1.0 - c.a * c.a;
  const double drift = c.a * medium.cs + b2 * medium.cs / (2.0 * c.a);
  const double u = drift + c.a * medium.alpha * c.amplitude / 3.0;
  const auto sol = solitons::SolitonCyl::from_direction(c.a, u);
  const auto spec = solver::kdv_xi_tau_transform(sol, medium);
  const double kappa = std::sqrt(c.amplitude * spec.alpha / (12.0 * spec.beta));

  auto f = ScalarField3D::line(c.nx, c.lx / double(c.nx));
  const double x0 = 0.25 * c.lx;
  for (std::size_t i = 0; i < c.nx; ++i) {
    const double x = f.dx * double(i) - x0;
    f(i) = c.amplitude * (solitons::sech2(kappa * x) + solitons::sech2(kappa * (x - c.lx)) +
                          solitons::sech2(kappa * (x + c.lx)));
  }
  const auto r = solver::kdv_integrate(spec, f, solver_config(c, 0.0));
  emit_diagnostics(ctx, "evolve_kdv_diagnostics", r);
  for (std::size_t n = 0; n < r.snapshots.size(); ++n) {
    io::ResultTable s({{"x", "fm"}, {"rho1", "1"}});
    const auto& fld = r.snapshots[n].field;
    for (std::size_t i = 0; i < fld.nx; ++i) s.add_row({fld.dx * double(i), fld(i)});
    char stem[64];
    std::snprintf(stem, sizeof stem, "evolve_kdv_snapshot_%03zu", n);
    ctx.table(stem, s);
  }
  const auto track = solver::track_peak_x(r);
  const double m0 = r.diagnostics.front().mass, m1 = r.diagnostics.back().mass;
  ctx.manifest["run"] = run_status(r);
  ctx.manifest["spec"] = {{"drift", spec.cs}, {"alpha", spec.alpha}, {"beta", spec.beta}};
  ctx.manifest["expected_speed"] = u;
  ctx.manifest["measured_peak_speed"] = solver::fit_speed(track);
  ctx.manifest["peak_ratio"] = track.value.back() / c.amplitude;
  ctx.manifest["mass_drift"] = std::abs(m1 - m0) / std::abs(m0);
  ctx.finish("evolve_kdv");
  if (r.status == solver::RunStatus::BlowUp) throw VerificationFailed(r.message);
}

void cmd_evolve_kp(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto spec = build_wave_spec(c.eos(), WaveKind::KpCart);
  const auto sol = solitons::SolitonCart::from_direction(c.A_dir, c.U, c.C_dir);
  const auto setup = solver::kp_line_soliton_setup(sol, spec, c.nx, c.ny, c.lx, c.t_start);
  const auto r = solver::kp_integrate(spec, setup.initial, solver_config(c, c.t_start));
  emit_diagnostics(ctx, "evolve_kp_diagnostics", r);
  for (std::size_t n = 0; n < r.snapshots.size(); ++n) {
    io::ResultTable s({{"x", "fm"}, {"eta", "fm"}, {"rho1", "1"}});
    const auto& fld = r.snapshots[n].field;
    for (std::size_t j = 0; j < fld.ny; ++j)
      for (std::size_t i = 0; i < fld.nx; ++i)
        s.add_row({fld.dx * double(i), fld.dy * double(j), fld(i, j)});
    char stem[64];
    std::snprintf(stem, sizeof stem, "evolve_kp_snapshot_%03zu", n);
    ctx.table(stem, s);
  }
  const auto track = solver::track_peak_x(r);
  const double shift = track.x.back() - track.x.front();
  const double shape = solver::relative_l2(r.snapshots.back().field,
                                           solver::shift_x(setup.initial, shift));
  ctx.manifest["run"] = run_status(r);
  ctx.manifest["mean_offset"] = setup.mean_offset;
  ctx.manifest["expected_speed_x"] = setup.speed_x;
  ctx.manifest["consistent_speed_x"] = setup.consistent_speed_x;
  ctx.manifest["measured_speed_x"] = solver::fit_speed(track);
  ctx.manifest["shape_l2_error"] = shape;
  ctx.finish("evolve_kp");
  if (r.status == solver::RunStatus::BlowUp) throw VerificationFailed(r.message);
}

// --------------------------------------------------------- verify-residual

void cmd_verify_residual(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto p = c.eos();
  residual::ResidualReport report;
  if (parse_geometry(c.geometry) == solitons::Geometry::Cylindrical) {
    const auto sol = solitons::SolitonCyl::from_direction(c.a, c.u);
    const auto spec = build_wave_spec(p, WaveKind::CkpCyl);
    const solitons::CkpSoliton s(sol, spec);
    report = residual::residual_check(
        [&](double r, double phi, double z, double t) { return s(r, phi, z, t); }, spec,
        residual::crest_probe_cyl(sol, c.t));
  } else {
    const auto sol = solitons::SolitonCart::from_direction(c.A_dir, c.U, c.C_dir);
    const auto spec = build_wave_spec(p, WaveKind::KpCart);
    const solitons::KpSoliton s(sol, spec);
    report = residual::residual_check(
        [&](double x, double y, double z, double t) { return s(x, y, z, t); }, spec,
        residual::crest_probe_cart(sol, c.t), residual::crest_options_cart());
  }
  io::ResultTable t({{"step_scale", "1"}, {"max_residual", "fm^-2"}, {"order", "1"}});
  json rows = json::array();
  for (std::size_t n = 0; n < report.rows.size(); ++n) {
    const double order = n == 0 ? NAN : report.orders[n - 1];
    t.add_row({report.rows[n].step_scale, report.rows[n].max_residual, order});
    rows.push_back({{"step_scale", report.rows[n].step_scale},
                    {"max_residual", report.rows[n].max_residual},
                    {"order", n == 0 ? json(nullptr) : json(order)}});
  }
  ctx.table("verify_residual", t);
  ctx.manifest["convergence"] = rows;
  ctx.manifest["monotone"] = report.monotone;
  ctx.manifest["passed"] = report.passed;
  ctx.finish("verify_residual");
  ctx.out << report.message;
  if (!report.passed) throw VerificationFailed("residual convergence check failed");
}

// ------------------------------------------------------------ acoustic-demo

void cmd_acoustic_demo(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto p = c.eos();
  acoustics::AcousticState st;
  st.eps0 = eos::energy_density_uniform(p, p.rho0);
  st.p0 = eos::pressure_uniform(p, p.rho0);
  st.cs = eos::speed_of_sound(p).cs;
  st.validate();

  auto dp = ScalarField3D::line(c.ac_n, c.ac_length / double(c.ac_n));
  const double x0 = 0.25 * c.ac_length, sig = c.pulse_width;
  double mean = 0.0;
  for (std::size_t i = 0; i < c.ac_n; ++i) {
    const double x = dp.dx * double(i) - x0;
    dp(i) = std::exp(-x * x / (2.0 * sig * sig));
    mean += dp(i);
  }
  mean /= double(c.ac_n);
  for (double& v : dp.values) v = c.pulse_amplitude * st.p0 * (v - mean);
  auto q = spectral_derivative(dp, Axis::X, 1);
  for (double& v : q.values) v *= -st.cs;
  st.delta_p = dp;

  const double t_end = c.crossings * sig / st.cs;
  acoustics::AcousticConfig ac;
  ac.dt = 0.25 * dp.dx / st.cs;
  ac.t_end = t_end;
  const auto res = acoustics::acoustic_wave_solve_1d(st, dp, q, ac);
  const auto v = acoustics::velocity_from_pressure(st, res);

  const std::size_t n_out = std::max<std::size_t>(c.ac_snapshots, 1);
  const std::size_t total = res.snapshots.size() - 1;
  double offset = 0.0, last = x0, worst_cells = 0.0;
  std::vector<double> ts, xs;
  for (std::size_t n = 0; n <= total; ++n) {
    const auto& s = res.snapshots[n];
    const auto pk = refine_peak(std::span<const double>(s.delta_p.values), dp.dx);
    double jump = pk.position - last;
    if (jump < -0.5 * c.ac_length) offset += c.ac_length;
    if (jump > 0.5 * c.ac_length) offset -= c.ac_length;
    last = pk.position;
    const double x = pk.position + offset;
    ts.push_back(s.t);
    xs.push_back(x);
    worst_cells = std::max(worst_cells, std::abs(x - (x0 + st.cs * s.t)) / dp.dx);
  }
  for (std::size_t m = 0; m <= n_out; ++m) {
    const std::size_t n = total * m / n_out;
    io::ResultTable tab({{"x", "fm"}, {"delta_p", "fm^-4"}, {"v", "1"}});
    for (std::size_t i = 0; i < dp.nx; ++i)
      tab.add_row({dp.dx * double(i), res.snapshots[n].delta_p(i), v[n](i)});
    char stem[64];
    std::snprintf(stem, sizeof stem, "acoustic_snapshot_%03zu", m);
    ctx.table(stem, tab);
  }
  double e_drift = 0.0;
  for (double e : res.energy)
    e_drift = std::max(e_drift, std::abs(e - res.energy.front()) / res.energy.front());
  const double speed = (xs.back() - xs.front()) / (ts.back() - ts.front());
  ctx.manifest["cs"] = st.cs;
  ctx.manifest["measured_pulse_speed"] = speed;
  ctx.manifest["max_position_error_cells"] = worst_cells;
  ctx.manifest["energy_relative_drift"] = e_drift;
  ctx.manifest["linear_regime"] = st.small_perturbation();
  ctx.finish("acoustic_demo");
}

// ------------------------------------------------------------------ figures

void cmd_figure(Context& ctx, int n) {
  // Pinned: rho0 = 1 fm^-3, g = 1.15, m_G = 460 MeV.
  const auto p = eos::reference_parameters();
  const auto medium = eos::medium_coefficients(p);
  ctx.manifest["figure"] = n;
  ctx.manifest["coefficients"] = coefficients_json(medium);
  const auto r = linspace(0.0, 50.0, 201);
  switch (n) {
    case 1: {
      emit_scan(ctx, "figure1_region",
                solitons::existence_region_scan(medium, solitons::Geometry::Cylindrical,
                                                {0.2, 1.0, 81}, {0.5, 1.0, 101}));
      break;
    }
    case 2: {
      // a = 0.6, b = 0.8, u = 0.73; phi = 0 over z in [0, 30] at t = 18, 28,
      // then z = 1 over phi in [20, 150] deg at t = 10, 22.
      const solitons::CkpSoliton s(solitons::SolitonCyl::from_direction(0.6, 0.73),
                                   build_wave_spec(p, WaveKind::CkpCyl));
      const auto z = linspace(0.0, 30.0, 61);
      const auto phi = linspace(20.0, 150.0, 131);
      ctx.table("figure2a_t18", cyl_rz(s, 0.0, 18.0, r, z));
      ctx.table("figure2b_t28", cyl_rz(s, 0.0, 28.0, r, z));
      ctx.table("figure2c_t10", cyl_rphi(s, 1.0, 10.0, r, phi));
      ctx.table("figure2d_t22", cyl_rphi(s, 1.0, 22.0, r, phi));
      break;
    }
    case 3: {
      emit_scan(ctx, "figure3_region",
                solitons::existence_region_scan(medium, solitons::Geometry::Cartesian,
                                                {0.1, std::sqrt(0.75), 78},
                                                {0.5, 1.0, 101}, 0.5));
      break;
    }
    case 4: {
      // A = 0.6, B = sqrt(0.39), C = 0.5, U = 0.66 at z = 1.
      const solitons::KpSoliton s(solitons::SolitonCart::from_direction(0.6, 0.66, 0.5),
                                  build_wave_spec(p, WaveKind::KpCart));
      const auto x = linspace(-50.0, 150.0, 401);
      const auto y = linspace(0.0, 50.0, 101);
      for (double t : {30.0, 60.0, 90.0, 120.0}) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "figure4_t%03d", int(t));
        ctx.table(stem, cart_xy(s, 1.0, t, x, y));
      }
      break;
    }
    default:
      throw UsageError("figure number must be 1, 2, 3 or 4");
  }
  ctx.finish("figure" + std::to_string(n));
}

// -------------------------------------------------------------------- sweep

std::vector<double> sweep_values(const std::string& list, double fallback) {
  auto v = config::parse_list(list);
  if (v.empty()) v.push_back(fallback);
  for (double x : v)
    if (!std::isfinite(x)) throw UsageError("sweep: non-finite value in list");
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void cmd_sweep(Context& ctx) {
  const auto t = sweep(ctx.cfg);
  ctx.table("sweep", t);
  ctx.finish("sweep");
}

}  // namespace

io::ResultTable sweep(const RunConfig& c) {
  using Cell = std::array<double, 5>;  // g, m_G, rho0, a, u
  const std::array<std::vector<double>, 5> lists = {
      sweep_values(c.sweep_g, c.g), sweep_values(c.sweep_m_G_mev, c.m_G_mev),
      sweep_values(c.sweep_rho0, c.rho0), sweep_values(c.sweep_a, c.a),
      sweep_values(c.sweep_u, c.u)};
  std::vector<Cell> cells;
  if (c.sweep_mode == "grid") {
    double total = 1.0;
    for (const auto& l : lists) total *= double(l.size());
    if (total > double(c.max_cells))
      throw ContractError("sweep: " + std::to_string(std::llround(total)) +
                          " cells exceed sweep.max_cells = " + std::to_string(c.max_cells));
    for (double g : lists[0])
      for (double m : lists[1])
        for (double r : lists[2])
          for (double a : lists[3])
            for (double u : lists[4]) cells.push_back({g, m, r, a, u});
  } else if (c.sweep_mode == "random") {
    if (c.sweep_samples > c.max_cells)
      throw ContractError("sweep: sweep.samples exceeds sweep.max_cells");
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t s = 0; s < c.sweep_samples; ++s) {
      Cell cell;
      for (int k = 0; k < 5; ++k) {
        const double lo = lists[k].front(), hi = lists[k].back();
        const double w = unit(rng);
        cell[k] = lo + (hi - lo) * w;
      }
      cells.push_back(cell);
    }
    std::sort(cells.begin(), cells.end());
  } else {
    throw UsageError("sweep.mode must be 'grid' or 'random'");
  }

  std::vector<std::vector<double>> rows(cells.size());
  parallel_for(cells.size(), c.threads, [&](std::size_t i) {
    const auto& cell = cells[i];
    const auto p = eos::EosParameters::make(cell[0], MeV{cell[1]}, c.bag, cell[2], c.gamma_Q);
    const auto m = eos::medium_coefficients(p);
    const auto e = solitons::existence_cyl(m, cell[3], cell[4]);
    rows[i] = {cell[0], cell[1], cell[2], cell[3], cell[4], m.A, m.cs, m.cs2,
               m.alpha, m.beta, m.M_eff, e.admissible ? 1.0 : 0.0,
               e.margin_speed, e.amplitude};
  });
  io::ResultTable t({{"g", "1"}, {"m_G", "MeV"}, {"rho0", "fm^-3"}, {"a", "1"},
                     {"u", "1"}, {"A", "fm^-4"}, {"cs", "1"}, {"cs2", "1"},
                     {"alpha", "1"}, {"beta", "fm^2"}, {"M_eff", "fm^-1"},
                     {"admissible", "1"}, {"margin1", "1"}, {"margin2", "1"}});
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cold quark-gluon plasma EOS, KP-family coefficients, solitons and solvers"};
  app.name(args.empty() ? "kpqgp" : args.front());
  std::string config_path, out_flag;
  std::vector<std::string> overrides;
  int figure_n = 0;
  app.add_option("-c,--config", config_path, "run configuration file (key = value)");
  app.add_option("-s,--set", overrides, "override, e.g. physics.g=0")->take_all();
  app.add_option("-o,--out", out_flag, "output directory (beats $" + std::string(kOutDirEnv) + ")");
  app.require_subcommand(1);
  app.fallthrough();

  using Command = void (*)(Context&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"eos-table", "EOS table rho_B,k_F,eps,p,cs2", cmd_eos_table},
      {"coefficients", "JSON of A, cs, cs2, alpha, beta, M_eff", cmd_coefficients},
      {"soliton-eval", "analytic soliton on a 2-D slice", cmd_soliton_eval},
      {"region-scan", "soliton existence region and boundary curves", cmd_region_scan},
      {"evolve-kdv", "integrate the KdV soliton", cmd_evolve_kdv},
      {"evolve-kp", "integrate the cartesian KP line soliton", cmd_evolve_kp},
      {"verify-residual", "finite-difference residual of an analytic soliton", cmd_verify_residual},
      {"acoustic-demo", "linear acoustic pulse and its velocity field", cmd_acoustic_demo},
      {"sweep", "coefficients and existence over parameter lists", cmd_sweep},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help, fn] : commands) subs.push_back(app.add_subcommand(name, help));
  auto* figure = app.add_subcommand("figure", "data behind figure 1, 2, 3 or 4");
  figure->add_option("n", figure_n, "figure number")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("kpqgp");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : config::parse_file(config_path);
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects section.key=value, got '" + o + "'");
      config::set(cfg, o.substr(0, eq), o.substr(eq + 1));
    }
    if (const char* env = std::getenv(kOutDirEnv); env && *env) cfg.out_dir = env;
    if (!out_flag.empty()) cfg.out_dir = out_flag;

    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      Context ctx(cfg, cfg.out_dir, out, std::get<0>(commands[i]));
      std::get<2>(commands[i])(ctx);
      return kOk;
    }
    if (figure->parsed()) {
      if (figure_n < 1 || figure_n > 4) throw UsageError("figure number must be 1, 2, 3 or 4");
      Context ctx(cfg, cfg.out_dir, out, "figure");
      cmd_figure(ctx, figure_n);
      return kOk;
    }
    throw UsageError("no subcommand");
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainFailure;
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << "\n";
    return kDomainFailure;
  } catch (const std::invalid_argument& e) {  // UsageError, ContractError
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace kpqgp::cli
