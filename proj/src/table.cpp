#include "kpqgp/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "kpqgp/errors.hpp"

namespace kpqgp::io {

ResultTable::ResultTable(std::vector<Column> columns) : columns_(std::move(columns)) {
  for (const auto& c : columns_)
    if (c.unit.empty())
      throw ContractError("ResultTable: column '" + c.name + "' has no unit");
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns_.size())
    throw ContractError("ResultTable: row width " + std::to_string(row.size()) +
                        " != " + std::to_string(columns_.size()) + " columns");
  rows_.push_back(std::move(row));
}

std::string ResultTable::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += columns_[c].name;
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json ResultTable::units() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& c : columns_) j[c.name] = c.unit;
  return j;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

nlohmann::json provenance(std::string_view config_hash) {
  return {{"tool", "kpqgp"},
          {"version", std::string(kToolVersion)},
          {"timestamp", std::string(kTimestamp)},
          {"config_hash", std::string(config_hash)}};
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace kpqgp::io
