// records.hpp
// Flat key -> value output records and their CSV / JSON serialization.
// Numbers are written with 15 significant digits ("%.15g"); CSV uses a header
// row, comma delimiter, '.' decimal point and LF line endings; JSON output is
// an array of flat objects.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lglab {

using FieldValue = std::variant<double, std::int64_t, std::string, bool>;

class OutputRecord {
 public:
  OutputRecord& set(std::string key, FieldValue value);
  const std::vector<std::pair<std::string, FieldValue>>& fields() const { return fields_; }
  const FieldValue* find(const std::string& key) const;

 private:
  std::vector<std::pair<std::string, FieldValue>> fields_;
};

/// 15 significant digits, shortest of fixed / scientific ("%.15g").
std::string format_number(double v);
std::string format_value(const FieldValue& v);

/// Header taken from the first record; every record must have the same keys.
void write_csv(std::ostream& out, const std::vector<OutputRecord>& records);
void write_json(std::ostream& out, const std::vector<OutputRecord>& records);
/// A single record as one JSON object.
void write_json_object(std::ostream& out, const OutputRecord& record);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

/// Reads what write_csv produces (RFC 4180 quoting accepted).
CsvTable read_csv(std::istream& in);

}  // namespace lglab
