#pragma once

#include <map>
#include <string>
#include <vector>

namespace qfa {

/// Flat tabular result of one CLI run: metadata plus stringly-typed rows.
/// All fields are ordered containers so emission is deterministic.
struct Report {
  std::string command;
  std::map<std::string, std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const Report& o) const {
    return command == o.command && meta == o.meta && columns == o.columns &&
           rows == o.rows;
  }
};

/// Fixed-column, locale-independent text table.
std::string emit_table(const Report& r);

/// Deterministic JSON; parse(emit(r)) == r and emission is byte-stable.
std::string emit_json(const Report& r);

/// Throws ParseError on malformed documents.
Report parse_report_json(const std::string& text);

}  // namespace qfa
