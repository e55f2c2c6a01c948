#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "expfun/cli.hpp"

namespace expfun::cli {

namespace {

std::string scalar_text(const Report& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void flatten(const Report& v, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    if (v.empty()) out.emplace_back(prefix, "");
    for (const auto& [key, child] : v.items()) {
      flatten(child, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (v.is_array()) {
    if (v.empty()) out.emplace_back(prefix, "");
    for (std::size_t i = 0; i < v.size(); ++i) {
      flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out.emplace_back(prefix, scalar_text(v));
  }
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Report& report, bool tabular) {
  std::ostringstream os;
  if (tabular && report.contains("rows")) {
    std::vector<std::string> columns;
    for (const auto& row : report["rows"]) {
      for (const auto& [key, value] : row.items()) {
        if (std::find(columns.begin(), columns.end(), key) == columns.end()) {
          columns.push_back(key);
        }
      }
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      os << (c ? "," : "") << csv_field(columns[c]);
    }
    os << "\r\n";
    for (const auto& row : report["rows"]) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        const std::string text = row.contains(columns[c]) ? scalar_text(row[columns[c]]) : "";
        os << (c ? "," : "") << csv_field(text);
      }
      os << "\r\n";
    }
    return os.str();
  }
  std::vector<std::pair<std::string, std::string>> fields;
  flatten(report, "", fields);
  os << "key,value\r\n";
  for (const auto& [key, value] : fields) os << csv_field(key) << ',' << csv_field(value) << "\r\n";
  return os.str();
}

std::string to_json(const Report& report) { return report.dump(2) + "\n"; }

}  // namespace expfun::cli
