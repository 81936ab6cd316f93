#pragma once
// Flat result rows for parameter sweeps and their CSV / JSON serialization.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace zm {

using Field = std::variant<double, std::int64_t, std::string>;

/// Ordered (column, value) pairs; insertion order is the column order.
class ExperimentRecord {
 public:
  ExperimentRecord& set(std::string name, Field value);
  ExperimentRecord& set(std::string name, double value) { return set(std::move(name), Field(value)); }
  ExperimentRecord& set(std::string name, std::int64_t value) { return set(std::move(name), Field(value)); }
  ExperimentRecord& set(std::string name, int value) { return set(std::move(name), Field(std::int64_t{value})); }
  ExperimentRecord& set(std::string name, std::string value) { return set(std::move(name), Field(std::move(value))); }
  ExperimentRecord& set(std::string name, const char* value) { return set(std::move(name), Field(std::string(value))); }

  const std::vector<std::pair<std::string, Field>>& fields() const { return fields_; }
  const Field* find(std::string_view name) const;
  /// Numeric field as double; throws ValidationError if absent or textual.
  double number(std::string_view name) const;
  std::vector<std::string> columns() const;

 private:
  std::vector<std::pair<std::string, Field>> fields_;
};

enum class OutputFormat { csv, json };

OutputFormat parse_output_format(std::string_view name);

/// Doubles are written with 17 significant digits. If `columns` is empty the
/// first record's columns are used; every record must carry those columns.
void emit(std::span<const ExperimentRecord> records, OutputFormat format, std::ostream& out,
          std::span<const std::string> columns = {});
/// "-" writes to stdout. I/O failures raise ComputationError naming the path.
void emit(std::span<const ExperimentRecord> records, OutputFormat format, const std::filesystem::path& path,
          std::span<const std::string> columns = {});

std::string format_double(double v);

}  // namespace zm
