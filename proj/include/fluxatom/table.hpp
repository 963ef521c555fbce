#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fluxatom/errors.hpp"

namespace fluxatom {

// Deterministic scientific formatting used by every serializer (15 digits
// after the point), so identical inputs give byte-identical output files.
std::string format_sci(double x);

struct Cell {
  double num = 0.0;
  std::string text;
  bool is_text = false;

  Cell(double v) : num(v) {}
  Cell(int v) : num(v) {}
  Cell(const char* s) : text(s), is_text(true) {}
  Cell(std::string s) : text(std::move(s)), is_text(true) {}
};

class ResultTable {
 public:
  ResultTable(std::vector<std::string> columns, std::vector<std::string> units);

  void add_row(std::vector<Cell> row);
  void set_meta(const std::string& key, const std::string& value);
  void set_summary(const std::string& key, Cell value);

  std::size_t n_rows() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return cols_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, Cell>>& summary() const { return summary_; }

  std::string to_csv() const;
  std::string to_json() const;

 private:
  std::vector<std::string> cols_;
  std::vector<std::string> units_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::pair<std::string, Cell>> summary_;
};

}  // namespace fluxatom
