#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

/// Rectangular numeric tables with unit tags, CSV/JSON writers and the
/// provenance block attached to every output file.
namespace kpqgp::io {

inline constexpr std::string_view kToolVersion = "1.0.0";
/// Outputs carry a fixed timestamp so identical runs are byte-identical.
inline constexpr std::string_view kTimestamp = "1970-01-01T00:00:00Z";

struct Column {
  std::string name;
  std::string unit;  ///< "1" for dimensionless
};

class ResultTable {
 public:
  explicit ResultTable(std::vector<Column> columns);
  /// Throws ContractError unless the row has one value per column.
  void add_row(std::vector<double> row);
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::string to_csv() const;
  nlohmann::json units() const;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<double>> rows_;
};

/// printf("%.12g").
std::string format_number(double v);

std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t v);

/// {"tool", "version", "timestamp", "config_hash"}.
nlohmann::json provenance(std::string_view config_hash);

/// Writes text, creating parent directories. Throws std::runtime_error on
/// I/O failure.
void write_text(const std::filesystem::path& path, std::string_view text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace kpqgp::io
