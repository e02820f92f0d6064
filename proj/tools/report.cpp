#include "report.hpp"

#include <algorithm>
#include <sstream>

#include "phl/error.hpp"

namespace phl::cli {

using nlohmann::json;

void Report::add_row(std::vector<json> row) {
  if (row.size() != columns.size()) throw Error(ErrorKind::ShapeMismatch, "row width differs from the header");
  rows.push_back(std::move(row));
}

void Report::sort_rows() {
  std::vector<std::size_t> idx;
  for (const auto& k : keys) {
    auto it = std::find(columns.begin(), columns.end(), k);
    if (it == columns.end()) throw Error(ErrorKind::InvalidParams, "sort key is not a column: " + k);
    idx.push_back(static_cast<std::size_t>(it - columns.begin()));
  }
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    for (auto i : idx) {
      if (a[i] < b[i]) return true;
      if (b[i] < a[i]) return false;
    }
    return false;
  });
}

json to_json(const Report& r) {
  json j = json::object();
  j["schema"] = kSchema;
  j["command"] = r.command;
  j["params"] = r.params;
  j["columns"] = r.columns;
  j["keys"] = r.keys;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[r.columns[i]] = row[i];
    rows.push_back(o);
  }
  j["rows"] = rows;
  for (const auto& [k, v] : r.extra.items()) j[k] = v;
  if (r.pass) j["pass"] = *r.pass;
  j["witness"] = r.witness;
  return j;
}

Report report_from_json(const json& j) {
  try {
    if (j.at("schema") != kSchema) throw Error(ErrorKind::Parse, "unknown report schema");
    Report r;
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params");
    r.columns = j.at("columns").get<std::vector<std::string>>();
    r.keys = j.at("keys").get<std::vector<std::string>>();
    for (const auto& o : j.at("rows")) {
      std::vector<json> row;
      for (const auto& c : r.columns) row.push_back(o.at(c));
      r.rows.push_back(std::move(row));
    }
    static const std::vector<std::string> fixed = {"schema", "command", "params", "columns",
                                                   "keys",   "rows",    "pass",   "witness"};
    for (const auto& [k, v] : j.items())
      if (std::find(fixed.begin(), fixed.end(), k) == fixed.end()) r.extra[k] = v;
    if (j.contains("pass")) r.pass = j.at("pass").get<bool>();
    r.witness = j.at("witness").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed report: ") + e.what());
  }
}

namespace {

// Arrays print as tuples, strings bare, everything else as compact JSON.
std::string cell_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + cell_text(v[i]);
    return s + ")";
  }
  if (v.is_null()) return "-";
  return v.dump();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string emit_text(const Report& r) {
  std::ostringstream os;
  os << "# " << r.command;
  for (const auto& [k, v] : r.params.items()) os << ' ' << k << '=' << cell_text(v);
  os << '\n';
  std::vector<std::vector<std::string>> cells;
  cells.push_back(r.columns);
  for (const auto& row : r.rows) {
    std::vector<std::string> line;
    for (const auto& v : row) line.push_back(cell_text(v));
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(r.columns.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  for (const auto& line : cells) {
    std::string s;
    for (std::size_t i = 0; i < line.size(); ++i) {
      s += line[i];
      if (i + 1 < line.size()) s += std::string(width[i] - line[i].size() + 2, ' ');
    }
    os << s << '\n';
  }
  for (const auto& [k, v] : r.extra.items()) os << k << ": " << cell_text(v) << '\n';
  for (const auto& w : r.witness) os << "witness: " << w << '\n';
  if (r.pass) os << "verdict: " << (*r.pass ? "pass" : "FAIL") << '\n';
  return os.str();
}

}  // namespace

std::string emit_report(const Report& r, Format f) {
  switch (f) {
    case Format::Json:
      return to_json(r).dump(2) + "\n";
    case Format::Csv: {
      std::ostringstream os;
      for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << csv_cell(r.columns[i]);
      os << '\n';
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(cell_text(row[i]));
        os << '\n';
      }
      return os.str();
    }
    case Format::Text:
      return emit_text(r);
  }
  return {};
}

}  // namespace phl::cli
