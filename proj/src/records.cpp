#include "lglab/records.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace lglab {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

nlohmann::ordered_json to_json(const FieldValue& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          // Re-parse the 15-digit text so JSON and CSV carry the same value.
          return std::stod(format_number(x));
        } else {
          return x;
        }
      },
      v);
}

std::vector<std::string> split_csv_line(std::istream& in, bool& ok) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  ok = any;
  if (any) fields.push_back(std::move(field));
  return fields;
}

}  // namespace

OutputRecord& OutputRecord::set(std::string key, FieldValue value) {
  for (auto& [k, v] : fields_) {
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  }
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}

const FieldValue* OutputRecord::find(const std::string& key) const {
  for (const auto& [k, v] : fields_)
    if (k == key) return &v;
  return nullptr;
}

std::string format_number(double v) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.15g", v);
  std::string s(buf, static_cast<std::size_t>(n));
  if (s == "-0") s = "0";
  return s;
}

std::string format_value(const FieldValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(x);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return x;
        }
      },
      v);
}

void write_csv(std::ostream& out, const std::vector<OutputRecord>& records) {
  if (records.empty()) return;
  const auto& first = records.front().fields();
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(first[i].first);
  }
  out << '\n';
  for (const auto& rec : records) {
    const auto& f = rec.fields();
    if (f.size() != first.size()) throw std::invalid_argument("write_csv: ragged records");
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i].first != first[i].first) throw std::invalid_argument("write_csv: key mismatch");
      if (i) out << ',';
      out << csv_escape(format_value(f[i].second));
    }
    out << '\n';
  }
}

void write_json_object(std::ostream& out, const OutputRecord& record) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [k, v] : record.fields()) obj[k] = to_json(v);
  out << obj.dump(2) << '\n';
}

void write_json(std::ostream& out, const std::vector<OutputRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& rec : records) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [k, v] : rec.fields()) obj[k] = to_json(v);
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range("CsvTable: no column " + name);
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const std::string& s = rows.at(row).at(column(name));
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("CsvTable: not a number: " + s);
  }
  return v;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  bool ok = false;
  t.header = split_csv_line(in, ok);
  if (!ok) return t;
  while (true) {
    auto row = split_csv_line(in, ok);
    if (!ok) break;
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != t.header.size()) throw std::invalid_argument("read_csv: ragged row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace lglab
