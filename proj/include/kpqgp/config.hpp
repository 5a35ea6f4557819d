#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kpqgp/eos.hpp"

/// Run configuration in a flat `key = value` format with `[section]`
/// headers. Every key belongs to a section; unknown keys are rejected.
namespace kpqgp::config {

struct RunConfig {
  // [physics]
  double g = 1.15;
  double m_G_mev = 460.0;
  double bag = 0.0;          ///< [fm^-4]
  double rho0 = 1.0;         ///< [fm^-3]
  int gamma_Q = 6;
  std::string kind = "kp";

  // [eos]  density grid of eos-table
  double rho_min = 0.0, rho_max = 3.0;
  std::size_t rho_n = 31;

  // [soliton]
  std::string geometry = "cyl";  ///< cyl | cart
  std::string slice = "rz";      ///< rz | rphi (cyl), xy (cart)
  double a = 0.6, u = 0.73;
  double A_dir = 0.6, C_dir = 0.5, U = 0.66;
  double t = 18.0;        ///< [fm]
  double phi_deg = 0.0;   ///< fixed angle of rz slices
  double z = 1.0;         ///< fixed z of rphi and xy slices [fm]
  double c1_min = 0.0, c1_max = 50.0;
  std::size_t c1_n = 101;
  double c2_min = 0.0, c2_max = 30.0;
  std::size_t c2_n = 61;

  // [scan]
  double a_min = 0.3, a_max = 1.0;
  std::size_t a_n = 71;
  double u_min = 0.55, u_max = 1.0;
  std::size_t u_n = 91;

  // [solver]
  std::string integrator = "rk4";
  double dt = 0.01, t_end = 50.0;
  bool dealias = true;
  std::size_t snapshot_stride = 1000;
  std::size_t nx = 512, ny = 128;
  double lx = 200.0;
  double amplitude = 0.05;   ///< evolve-kdv soliton amplitude
  double t_start = 30.0;     ///< evolve-kp initial time [fm]

  // [acoustic]
  double pulse_width = 1.0;      ///< Gaussian sigma [fm]
  double pulse_amplitude = 1e-3; ///< relative to p0
  double ac_length = 100.0;
  std::size_t ac_n = 512;
  double crossings = 100.0;      ///< distance travelled in pulse widths
  std::size_t ac_snapshots = 10;

  // [sweep]  comma-separated value lists; empty means the scalar value
  std::string sweep_g, sweep_m_G_mev, sweep_rho0, sweep_a, sweep_u;
  std::string sweep_mode = "grid";  ///< grid | random
  std::size_t sweep_samples = 100;
  std::size_t max_cells = 1000000;

  // [run]
  std::string out_dir = "kpqgp_out";
  std::uint64_t seed = 12345;
  unsigned threads = 1;

  bool operator==(const RunConfig&) const = default;

  eos::EosParameters eos() const;
};

/// Throws UsageError naming the line on malformed input or unknown keys.
RunConfig parse(std::string_view text);
RunConfig parse_file(const std::string& path);
std::string serialize(const RunConfig& cfg);
/// Applies one `section.key=value` override.
void set(RunConfig& cfg, std::string_view dotted_key, std::string_view value);
std::string get(const RunConfig& cfg, std::string_view dotted_key);
std::vector<std::string> keys();
/// FNV-1a of serialize(cfg) with run.out_dir blanked, as 16 hex digits.
/// Where results are written does not change them.
std::string hash(const RunConfig& cfg);

/// Parses "1, 2.5, 3" into numbers.
std::vector<double> parse_list(std::string_view text);

}  // namespace kpqgp::config
