#include "qgband/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

namespace qgband {

OutputFormat format_from_name(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format \"" + name +
                              "\" (expected csv or json)");
}

std::string format_number(double v) {
  if (!std::isfinite(v))
    throw std::runtime_error("refusing to emit a non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  std::string s(buf);
  for (char& c : s)
    if (c == ',') c = '.';  // locale-proof the decimal separator
  return s;
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const std::string* s = std::get_if<std::string>(&c)) return *s;
  const auto& v = std::get<std::vector<double>>(c);
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_number(v[i]);
  }
  return out;
}

nlohmann::json json_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d))
      throw std::runtime_error("refusing to emit a non-finite number");
    return *d;
  }
  if (const long long* i = std::get_if<long long>(&c)) return *i;
  if (const std::string* s = std::get_if<std::string>(&c)) return *s;
  return std::get<std::vector<double>>(c);
}

}  // namespace

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size())
      throw std::runtime_error("table row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size())
      throw std::runtime_error("table row width does not match header");
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      obj[t.header[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

std::string render(const Table& t, OutputFormat f) {
  return f == OutputFormat::Csv ? render_csv(t) : render_json(t);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace qgband
