#include "table.hpp"

#include <cstdio>
#include <stdexcept>

#include "krein/format.hpp"

namespace krein::cli {

namespace {

std::string csv_escape(const std::string &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

nlohmann::json json_number(double v)
{
  if (std::isfinite(v)) {
    return v;
  }
  return format_double(v); // JSON has no inf/nan
}

} // namespace

void Table::add(std::vector<Cell> row)
{
  if (row.size() != columns_.size()) {
    throw std::logic_error("table row width mismatch");
  }
  rows_.push_back(std::move(row));
}

void Table::write_csv(std::ostream &os) const
{
  // Complex-ness of a column is taken from the first row.
  std::vector<bool> complex_col(columns_.size(), false);
  if (!rows_.empty()) {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      complex_col[c] = std::holds_alternative<Complex>(rows_.front()[c]);
    }
  }
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c > 0) {
      os << ',';
    }
    if (complex_col[c]) {
      os << columns_[c] << "_re," << columns_[c] << "_im";
    } else {
      os << columns_[c];
    }
  }
  os << '\n';
  for (const auto &row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) {
        os << ',';
      }
      std::visit(
          [&](const auto &v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              os << format_double(v);
            } else if constexpr (std::is_same_v<T, long long>) {
              os << v;
            } else if constexpr (std::is_same_v<T, bool>) {
              os << (v ? "true" : "false");
            } else if constexpr (std::is_same_v<T, std::string>) {
              os << csv_escape(v);
            } else {
              os << format_double(v.real()) << ',' << format_double(v.imag());
            }
          },
          row[c]);
    }
    os << '\n';
  }
}

nlohmann::json Table::to_json() const
{
  nlohmann::json records = nlohmann::json::array();
  for (const auto &row : rows_) {
    nlohmann::json rec = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      rec[columns_[c]] = std::visit(
          [](const auto &v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              return json_number(v);
            } else if constexpr (std::is_same_v<T, Complex>) {
              return {{"re", json_number(v.real())}, {"im", json_number(v.imag())}};
            } else {
              return v;
            }
          },
          row[c]);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::uint64_t fnv1a(std::string_view bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string Provenance::config_hash() const
{
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

void write_table(std::ostream &os, const Table &table, const Provenance &prov, const std::string &format)
{
  if (format == "json") {
    nlohmann::json doc;
    doc["tool"] = "krein " + prov.version;
    doc["config"] = prov.config;
    doc["config_hash"] = prov.config_hash();
    doc["seed"] = prov.seed;
    doc["records"] = table.to_json();
    os << doc.dump(2) << '\n';
    return;
  }
  os << "# tool: krein " << prov.version << '\n';
  os << "# config: " << prov.config.dump() << '\n';
  os << "# config_hash: " << prov.config_hash() << '\n';
  os << "# seed: " << prov.seed << '\n';
  table.write_csv(os);
}

} // namespace krein::cli
