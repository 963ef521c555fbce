#include "fluxatom/table.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace fluxatom {

std::string format_sci(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15e", x);
  return buf;
}

ResultTable::ResultTable(std::vector<std::string> columns, std::vector<std::string> units)
    : cols_(std::move(columns)), units_(std::move(units)) {
  if (cols_.empty() || cols_.size() != units_.size())
    fail(Errc::DimensionMismatch, "table needs one unit label per column");
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != cols_.size())
    fail(Errc::DimensionMismatch, "row width does not match header");
  rows_.push_back(std::move(row));
}

void ResultTable::set_meta(const std::string& key, const std::string& value) {
  for (auto& kv : meta_)
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  meta_.emplace_back(key, value);
}

void ResultTable::set_summary(const std::string& key, Cell value) {
  for (auto& kv : summary_)
    if (kv.first == key) {
      kv.second = std::move(value);
      return;
    }
  summary_.emplace_back(key, std::move(value));
}

std::string ResultTable::to_csv() const {
  std::string out;
  for (const auto& kv : meta_) out += "# " + kv.first + ": " + kv.second + "\n";
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    out += cols_[c];
    out += (c + 1 < cols_.size()) ? ',' : '\n';
  }
  for (std::size_t c = 0; c < units_.size(); ++c) {
    out += units_[c];
    out += (c + 1 < units_.size()) ? ',' : '\n';
  }
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += row[c].is_text ? row[c].text : format_sci(row[c].num);
      out += (c + 1 < row.size()) ? ',' : '\n';
    }
  }
  for (const auto& kv : summary_) {
    out += "# " + kv.first + " = ";
    out += kv.second.is_text ? kv.second.text : format_sci(kv.second.num);
    out += '\n';
  }
  return out;
}

std::string ResultTable::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& kv : meta_) meta[kv.first] = kv.second;
  j["meta"] = std::move(meta);
  j["columns"] = cols_;
  j["units"] = units_;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    nlohmann::ordered_json col = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
      if (row[c].is_text)
        col.push_back(row[c].text);
      else
        col.push_back(row[c].num);
    }
    data[cols_[c]] = std::move(col);
  }
  j["data"] = std::move(data);
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& kv : summary_) {
    if (kv.second.is_text)
      summary[kv.first] = kv.second.text;
    else
      summary[kv.first] = kv.second.num;
  }
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

}  // namespace fluxatom
