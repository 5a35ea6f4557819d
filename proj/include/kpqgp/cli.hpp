#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kpqgp/config.hpp"
#include "kpqgp/table.hpp"

namespace kpqgp::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;  ///< physics-domain error or failed check
inline constexpr int kUsage = 2;

/// Output directory override, taking precedence over run.out_dir.
inline constexpr const char* kOutDirEnv = "KPQGP_OUT_DIR";

/// Entry point of the `kpqgp` executable. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// Cartesian product of the sweep lists in lexicographic order of
/// (g, m_G_mev, rho0, a, u), or `sweep.samples` seeded random draws from
/// the box spanned by each list, sorted the same way.
/// Throws ContractError when the cell count exceeds sweep.max_cells.
io::ResultTable sweep(const config::RunConfig& cfg);

}  // namespace kpqgp::cli
