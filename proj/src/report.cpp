#include "qfa/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "qfa/rational.hpp"

namespace qfa {

std::string emit_table(const Report& r) {
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  for (const auto& [k, v] : r.meta) out << k << " = " << v << "\n";
  if (r.columns.empty()) return out.str();
  std::vector<size_t> width;
  width.reserve(r.columns.size());
  for (const auto& c : r.columns) width.push_back(c.size());
  for (const auto& row : r.rows)
    for (size_t i = 0; i < row.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < width.size(); ++i) {
      std::string cell = i < cells.size() ? cells[i] : "";
      out << cell << std::string(width[i] - cell.size(), ' ');
      out << (i + 1 < width.size() ? "  " : "");
    }
    out << "\n";
  };
  line(r.columns);
  size_t total = 0;
  for (size_t w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << "\n";
  for (const auto& row : r.rows) line(row);
  return out.str();
}

std::string emit_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.meta) j["meta"][k] = v;
  j["columns"] = r.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) j["rows"].push_back(row);
  return j.dump(2) + "\n";
}

Report parse_report_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad report json: ") + e.what());
  }
  Report r;
  try {
    r.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("meta").items())
      r.meta[k] = v.get<std::string>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows"))
      r.rows.push_back(row.get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad report shape: ") + e.what());
  }
  return r;
}

}  // namespace qfa
