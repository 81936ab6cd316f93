#include "zm/record.hpp"

#include "zm/common.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>

namespace zm {

ExperimentRecord& ExperimentRecord::set(std::string name, Field value) {
  for (auto& [k, v] : fields_) {
    if (k == name) {
      v = std::move(value);
      return *this;
    }
  }
  fields_.emplace_back(std::move(name), std::move(value));
  return *this;
}

const Field* ExperimentRecord::find(std::string_view name) const {
  for (const auto& [k, v] : fields_)
    if (k == name) return &v;
  return nullptr;
}

double ExperimentRecord::number(std::string_view name) const {
  const Field* f = find(name);
  require(f != nullptr, "record has no column '" + std::string(name) + "'");
  if (const auto* d = std::get_if<double>(f)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(f)) return static_cast<double>(*i);
  throw ValidationError("column '" + std::string(name) + "' is not numeric");
}

std::vector<std::string> ExperimentRecord::columns() const {
  std::vector<std::string> out;
  out.reserve(fields_.size());
  for (const auto& f : fields_) out.push_back(f.first);
  return out;
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ValidationError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_cell(const Field& f) {
  if (const auto* d = std::get_if<double>(&f)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&f)) return std::to_string(*i);
  const auto& s = std::get<std::string>(f);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string json_value(const Field& f) {
  if (const auto* d = std::get_if<double>(&f)) return std::isfinite(*d) ? format_double(*d) : "null";
  if (const auto* i = std::get_if<std::int64_t>(&f)) return std::to_string(*i);
  return nlohmann::json(std::get<std::string>(f)).dump();
}

}  // namespace

void emit(std::span<const ExperimentRecord> records, OutputFormat format, std::ostream& out,
          std::span<const std::string> columns) {
  std::vector<std::string> cols(columns.begin(), columns.end());
  if (cols.empty() && !records.empty()) cols = records.front().columns();

  auto cell = [&](const ExperimentRecord& r, const std::string& c) -> const Field& {
    const Field* f = r.find(c);
    require(f != nullptr, "record is missing column '" + c + "'");
    return *f;
  };

  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : records) {
      for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_cell(cell(r, cols[i]));
      out << '\n';
    }
    return;
  }
  out << '[';
  for (std::size_t j = 0; j < records.size(); ++j) {
    out << (j ? ",\n " : "\n ") << '{';
    for (std::size_t i = 0; i < cols.size(); ++i)
      out << (i ? ", " : "") << nlohmann::json(cols[i]).dump() << ": " << json_value(cell(records[j], cols[i]));
    out << '}';
  }
  out << (records.empty() ? "]\n" : "\n]\n");
}

void emit(std::span<const ExperimentRecord> records, OutputFormat format, const std::filesystem::path& path,
          std::span<const std::string> columns) {
  if (path == "-") {
    emit(records, format, std::cout, columns);
    std::cout.flush();
    return;
  }
  std::ofstream f(path);
  if (!f) throw ComputationError("cannot open '" + path.string() + "' for writing");
  emit(records, format, f, columns);
  f.flush();
  if (!f) throw ComputationError("write failed for '" + path.string() + "'");
}

}  // namespace zm
