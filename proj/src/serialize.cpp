#include "gpf/serialize.hpp"

#include <cstdio>
#include <cstdlib>

namespace gpf {

Cell integer_cell(const BigInt& n) { return IntegerCell{n.get_str()}; }
Cell integer_cell(std::uint64_t n) { return IntegerCell{std::to_string(n)}; }
Cell rational_cell(const ExactRational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() + "/1" : q.get_str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

namespace {

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const IntegerCell& i) const { return i.decimal; }
    std::string operator()(double d) const { return format_real(d); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(const IntegerCell& i) const {
      const BigInt n(i.decimal);
      if (n >= 0 && n.fits_ulong_p()) return static_cast<std::uint64_t>(n.get_ui());
      if (n < 0 && n.fits_slong_p()) return static_cast<std::int64_t>(n.get_si());
      return i.decimal;
    }
    nlohmann::ordered_json operator()(double d) const { return std::strtod(format_real(d).c_str(), nullptr); }
    nlohmann::ordered_json operator()(bool b) const { return b; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

Cell optional_int(const std::optional<std::uint64_t>& x) {
  if (!x) return std::monostate{};
  return integer_cell(*x);
}

}  // namespace

Table to_table(const std::vector<TripleHit>& hits, const PlaceSet& s) {
  Table t{{"a", "b", "c", "u", "v", "u_factorization", "v_factorization"}, {}};
  for (const auto& h : hits) {
    t.rows.push_back({integer_cell(h.triple.a()), integer_cell(h.triple.b()), integer_cell(h.triple.c()),
                      integer_cell(h.u.value), integer_cell(h.v.value),
                      format_factorization(h.u.factorization(s)),
                      format_factorization(h.v.factorization(s))});
  }
  return t;
}

Table to_table(const std::vector<GpfRecord>& records) {
  Table t{{"a", "mode", "best_b", "best_c", "product", "gpf", "resolved"}, {}};
  for (const auto& r : records) {
    t.rows.push_back({integer_cell(r.a), to_string(r.mode), integer_cell(r.best_b), integer_cell(r.best_c),
                      integer_cell(r.product), integer_cell(r.gpf), r.resolved});
  }
  return t;
}

Table to_table(const std::vector<GcdScanRecord>& records) {
  Table t{{"u", "v", "g", "exponent", "independent", "p", "q", "t"}, {}};
  for (const auto& r : records) {
    std::optional<std::uint64_t> p, q;
    if (r.relation) {
      p = r.relation->p;
      q = r.relation->q;
    }
    t.rows.push_back({integer_cell(r.u), integer_cell(r.v), integer_cell(r.g), r.exponent, r.independent,
                      optional_int(p), optional_int(q), optional_int(r.base)});
  }
  return t;
}

Table to_table(const std::vector<SUnit>& units, const PlaceSet& s) {
  Table t{{"value", "factorization"}, {}};
  for (const auto& u : units) t.rows.push_back({integer_cell(u.value), format_factorization(u.factorization(s))});
  return t;
}

Table to_table(const std::vector<Check>& checks) {
  Table t{{"check", "kind", "status", "value"}, {}};
  for (const auto& c : checks) {
    const std::string status = c.hard ? (c.passed ? "PASS" : "FAIL") : "INFO";
    t.rows.push_back({c.name, std::string(c.hard ? "exact" : "measured"), status, c.value});
  }
  return t;
}

std::string to_csv(const Table& table, const nlohmann::ordered_json* parameters) {
  std::string out;
  if (parameters) out += "# parameters: " + parameters->dump() + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(table.columns[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cell_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json to_json(const Table& table, const nlohmann::ordered_json& parameters,
                               const nlohmann::ordered_json& extra) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["parameters"] = parameters;
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[table.columns[i]] = cell_json(row[i]);
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  for (const auto& [key, value] : extra.items()) doc[key] = value;
  return doc;
}

}  // namespace gpf
