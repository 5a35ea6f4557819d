#include <algorithm>
#include "kpqgp/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "kpqgp/errors.hpp"
#include "kpqgp/table.hpp"

namespace kpqgp::config {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw UsageError("config: '" + std::string(key) + "' expects a number, got '" + s + "'");
  return out;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw UsageError("config: '" + std::string(key) +
                     "' expects a non-negative integer, got '" + s + "'");
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Entry {
  std::string key;  // section.name
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, std::string_view)> set;
};

template <class T>
Entry field(std::string key, T RunConfig::*member) {
  Entry e;
  e.key = key;
  if constexpr (std::is_same_v<T, double>) {
    e.get = [member](const RunConfig& c) { return num(c.*member); };
    e.set = [member, key](RunConfig& c, std::string_view v) { c.*member = to_double(key, v); };
  } else if constexpr (std::is_same_v<T, bool>) {
    e.get = [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); };
    e.set = [member, key](RunConfig& c, std::string_view v) {
      const auto s = trim(v);
      if (s == "true" || s == "1") c.*member = true;
      else if (s == "false" || s == "0") c.*member = false;
      else throw UsageError("config: '" + key + "' expects true/false, got '" + s + "'");
    };
  } else if constexpr (std::is_same_v<T, std::string>) {
    e.get = [member](const RunConfig& c) { return c.*member; };
    e.set = [member, key](RunConfig& c, std::string_view v) {
      auto s = trim(v);
      if (s.find_first_of("#\n") != std::string::npos)
        throw UsageError("config: '" + key + "' may not contain '#' or newlines");
      c.*member = std::move(s);
    };
  } else if constexpr (std::is_same_v<T, int>) {
    e.get = [member](const RunConfig& c) { return std::to_string(c.*member); };
    e.set = [member, key](RunConfig& c, std::string_view v) {
      const double d = to_double(key, v);
      if (d != static_cast<int>(d)) throw UsageError("config: '" + key + "' expects an integer");
      c.*member = static_cast<int>(d);
    };
  } else {
    e.get = [member](const RunConfig& c) { return std::to_string(c.*member); };
    e.set = [member, key](RunConfig& c, std::string_view v) {
      c.*member = static_cast<T>(to_unsigned(key, v));
    };
  }
  return e;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      field("physics.g", &RunConfig::g),
      field("physics.m_G_mev", &RunConfig::m_G_mev),
      field("physics.bag", &RunConfig::bag),
      field("physics.rho0", &RunConfig::rho0),
      field("physics.gamma_Q", &RunConfig::gamma_Q),
      field("physics.kind", &RunConfig::kind),
      field("eos.rho_min", &RunConfig::rho_min),
      field("eos.rho_max", &RunConfig::rho_max),
      field("eos.rho_n", &RunConfig::rho_n),
      field("soliton.geometry", &RunConfig::geometry),
      field("soliton.slice", &RunConfig::slice),
      field("soliton.a", &RunConfig::a),
      field("soliton.u", &RunConfig::u),
      field("soliton.A_dir", &RunConfig::A_dir),
      field("soliton.C_dir", &RunConfig::C_dir),
      field("soliton.U", &RunConfig::U),
      field("soliton.t", &RunConfig::t),
      field("soliton.phi_deg", &RunConfig::phi_deg),
      field("soliton.z", &RunConfig::z),
      field("soliton.c1_min", &RunConfig::c1_min),
      field("soliton.c1_max", &RunConfig::c1_max),
      field("soliton.c1_n", &RunConfig::c1_n),
      field("soliton.c2_min", &RunConfig::c2_min),
      field("soliton.c2_max", &RunConfig::c2_max),
      field("soliton.c2_n", &RunConfig::c2_n),
      field("scan.a_min", &RunConfig::a_min),
      field("scan.a_max", &RunConfig::a_max),
      field("scan.a_n", &RunConfig::a_n),
      field("scan.u_min", &RunConfig::u_min),
      field("scan.u_max", &RunConfig::u_max),
      field("scan.u_n", &RunConfig::u_n),
      field("solver.integrator", &RunConfig::integrator),
      field("solver.dt", &RunConfig::dt),
      field("solver.t_end", &RunConfig::t_end),
      field("solver.dealias", &RunConfig::dealias),
      field("solver.snapshot_stride", &RunConfig::snapshot_stride),
      field("solver.nx", &RunConfig::nx),
      field("solver.ny", &RunConfig::ny),
      field("solver.lx", &RunConfig::lx),
      field("solver.amplitude", &RunConfig::amplitude),
      field("solver.t_start", &RunConfig::t_start),
      field("acoustic.pulse_width", &RunConfig::pulse_width),
      field("acoustic.pulse_amplitude", &RunConfig::pulse_amplitude),
      field("acoustic.length", &RunConfig::ac_length),
      field("acoustic.n", &RunConfig::ac_n),
      field("acoustic.crossings", &RunConfig::crossings),
      field("acoustic.snapshots", &RunConfig::ac_snapshots),
      field("sweep.g", &RunConfig::sweep_g),
      field("sweep.m_G_mev", &RunConfig::sweep_m_G_mev),
      field("sweep.rho0", &RunConfig::sweep_rho0),
      field("sweep.a", &RunConfig::sweep_a),
      field("sweep.u", &RunConfig::sweep_u),
      field("sweep.mode", &RunConfig::sweep_mode),
      field("sweep.samples", &RunConfig::sweep_samples),
      field("sweep.max_cells", &RunConfig::max_cells),
      field("run.out_dir", &RunConfig::out_dir),
      field("run.seed", &RunConfig::seed),
      field("run.threads", &RunConfig::threads),
  };
  return entries;
}

const Entry& lookup(std::string_view key) {
  for (const auto& e : registry())
    if (e.key == key) return e;
  throw UsageError("config: unknown key '" + std::string(key) + "'");
}

}  // namespace

eos::EosParameters RunConfig::eos() const {
  return eos::EosParameters::make(g, MeV{m_G_mev}, bag, rho0, gamma_Q);
}

void set(RunConfig& cfg, std::string_view dotted_key, std::string_view value) {
  lookup(trim(dotted_key)).set(cfg, value);
}

std::string get(const RunConfig& cfg, std::string_view dotted_key) {
  return lookup(dotted_key).get(cfg);
}

std::vector<std::string> keys() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.key);
  return out;
}

RunConfig parse(std::string_view text) {
  RunConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto hash_pos = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash_pos));
    if (line.empty()) continue;
    const auto where = " (line " + std::to_string(line_no) + ")";
    if (line.front() == '[') {
      if (line.back() != ']') throw UsageError("config: malformed section header" + where);
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      const bool known = std::any_of(registry().begin(), registry().end(), [&](const auto& e) {
        return e.key.compare(0, section.size() + 1, section + ".") == 0;
      });
      if (!known) throw UsageError("config: unknown section [" + section + "]" + where);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config: expected 'key = value'" + where);
    if (section.empty()) throw UsageError("config: key outside any [section]" + where);
    const std::string key = section + "." + trim(std::string_view(line).substr(0, eq));
    try {
      set(cfg, key, std::string_view(line).substr(eq + 1));
    } catch (const UsageError& e) {
      throw UsageError(std::string(e.what()) + where);
    }
  }
  return cfg;
}

RunConfig parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string serialize(const RunConfig& cfg) {
  std::string out, section;
  for (const auto& e : registry()) {
    const auto dot = e.key.find('.');
    const std::string s = e.key.substr(0, dot);
    if (s != section) {
      if (!section.empty()) out += '\n';
      out += "[" + s + "]\n";
      section = s;
    }
    out += e.key.substr(dot + 1) + " = " + e.get(cfg) + "\n";
  }
  return out;
}

std::string hash(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.out_dir.clear();
  return io::hex64(io::fnv1a(serialize(c)));
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  const std::string s(text);
  if (trim(s).empty()) return out;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(to_double("list", std::string_view(s).substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

}  // namespace kpqgp::config
