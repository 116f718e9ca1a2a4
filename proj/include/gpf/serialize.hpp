#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gpf/arith.hpp"
#include "gpf/machinery.hpp"
#include "gpf/search.hpp"
#include "gpf/sunits.hpp"

namespace gpf {

inline constexpr int kSchemaVersion = 1;

/// Integers are kept as decimal text so values beyond 64 bits survive.
struct IntegerCell {
  std::string decimal;
};
using Cell = std::variant<std::monostate, IntegerCell, double, bool, std::string>;

Cell integer_cell(const BigInt& n);
Cell integer_cell(std::uint64_t n);
Cell rational_cell(const ExactRational& q);  // "num/den" text

/// A homogeneous record list ready for CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

Table to_table(const std::vector<TripleHit>& hits, const PlaceSet& s);
Table to_table(const std::vector<GpfRecord>& records);
Table to_table(const std::vector<GcdScanRecord>& records);
Table to_table(const std::vector<SUnit>& units, const PlaceSet& s);
Table to_table(const std::vector<Check>& checks);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

/// Optional "# parameters: {...}" line, header row, then one line per record.
std::string to_csv(const Table& table, const nlohmann::ordered_json* parameters = nullptr);

/// {"schema_version", "parameters", "records", ...extra}.
nlohmann::ordered_json to_json(const Table& table, const nlohmann::ordered_json& parameters,
                               const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

}  // namespace gpf
