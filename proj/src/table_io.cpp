#include "tailidx/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace tailidx {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  // %g honours LC_NUMERIC; the library never calls setlocale, so this is the "C" locale.
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string csv_cell(const json& c) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_boolean()) return c.get<bool>() ? "true" : "false";
  if (c.is_number_integer() || c.is_number_unsigned()) return c.dump();
  if (c.is_number_float()) return format_number(c.get<double>());
  if (c.is_null()) return "nan";
  return c.dump();
}

json json_cell(const json& c) {
  if (!c.is_number_float()) return c;
  const double v = c.get<double>();
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_number(v).c_str(), nullptr);
}

}  // namespace

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& t, const json& extra) {
  json doc = extra;
  doc["columns"] = t.columns;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) r[t.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

Table summary_table(const Scenario& s, const std::vector<SummaryRow>& rows) {
  Table t;
  t.columns = {"scenario_name", "estimator", "alpha", "k", "bias", "mse", "n_converged", "replications", "seed"};
  for (const auto& r : rows) {
    t.rows.push_back({s.name, std::string(estimator_name(r.estimator)), r.alpha, r.k, r.bias, r.mse, r.n_converged,
                      s.replications, s.base_seed});
  }
  return t;
}

}  // namespace tailidx
