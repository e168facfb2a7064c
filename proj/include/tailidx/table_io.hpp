#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tailidx/sim_harness.hpp"

namespace tailidx {

/// Locale-independent "%.12g"; non-finite values print as nan, inf, -inf.
std::string format_number(double v);

/// Rectangular table whose cells are JSON scalars (numbers, strings, booleans).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

void write_csv(std::ostream& out, const Table& t);
/// {"columns": [...], "rows": [{col: value, ...}, ...]} plus any extra top-level members.
/// Non-finite numbers become null.
void write_json(std::ostream& out, const Table& t, const nlohmann::json& extra = nlohmann::json::object());

/// scenario_name, estimator, alpha, k, bias, mse, n_converged, replications, seed
Table summary_table(const Scenario& s, const std::vector<SummaryRow>& rows);

}  // namespace tailidx
