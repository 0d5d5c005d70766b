#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "krein/types.hpp"

namespace krein::cli {

using Cell = std::variant<double, long long, bool, std::string, Complex>;

// Record table written either as commented-header CSV or as JSON. Complex cells
// become name_re,name_im columns in CSV and {"re","im"} objects in JSON.
class Table {
public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<Cell> row);
  const std::vector<std::vector<Cell>> &rows() const { return rows_; }

  void write_csv(std::ostream &os) const;
  nlohmann::json to_json() const;

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

struct Provenance {
  std::string version;
  nlohmann::json config;
  std::uint64_t seed = 0;

  std::string config_hash() const;
};

// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view bytes);

void write_table(std::ostream &os, const Table &table, const Provenance &prov, const std::string &format);

} // namespace krein::cli
