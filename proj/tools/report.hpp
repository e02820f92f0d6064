#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace phl::cli {

inline constexpr const char* kSchema = "padic-hecke-lab/1";

enum class Format { Json, Csv, Text };

/// Tabular result of one command. Rows are sorted lexicographically by the
/// `keys` columns before emission.
struct Report {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::string> keys;
  std::vector<std::vector<nlohmann::json>> rows;
  nlohmann::json extra = nlohmann::json::object();  // command-specific top-level fields
  std::optional<bool> pass;                          // verdict of a checker, absent for plain tables
  std::vector<std::string> witness;

  void add_row(std::vector<nlohmann::json> row);
  void sort_rows();
  bool operator==(const Report&) const = default;
};

std::string emit_report(const Report& r, Format f);
nlohmann::json to_json(const Report& r);
/// Inverse of to_json; throws phl::Error(Parse) on schema mismatch.
Report report_from_json(const nlohmann::json& j);

}  // namespace phl::cli
