#ifndef QGBAND_EMIT_HPP
#define QGBAND_EMIT_HPP

#include <string>
#include <variant>
#include <vector>

namespace qgband {

enum class OutputFormat { Csv, Json };

OutputFormat format_from_name(const std::string& name);

// One output table: a header row plus typed cells.  Numeric cells render
// with 15 significant digits and a '.' decimal separator regardless of
// locale; list cells render semicolon-joined in CSV and as arrays in JSON.
using Cell = std::variant<double, long long, std::string, std::vector<double>>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v);  // %.15g, locale-proof

std::string render_csv(const Table& t);
std::string render_json(const Table& t);
std::string render(const Table& t, OutputFormat f);

// Writes text to `path`, or to stdout when path is empty.  Binary mode, so
// emitted bytes are exactly the rendered string.
void write_output(const std::string& text, const std::string& path);

}  // namespace qgband

#endif
