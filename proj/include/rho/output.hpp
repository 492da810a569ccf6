#pragma once

// Rendering of tables and query results as JSON, CSV (RFC 4180) or markdown.
// Exact values are never converted to floating point on the way out.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "rho/bigrational.hpp"
#include "rho/montecarlo.hpp"
#include "rho/quantum.hpp"

namespace rho {

enum class Format { json, csv, markdown };

Format parse_format(std::string_view name);

/// Polynomial in N with exact coefficients; coeffs[d] multiplies N^d.
struct PolyInN {
  std::vector<BigRational> coeffs;

  BigRational evaluate(const BigRational& N) const;
  int degree() const;
  /// "1/12 N^4 - 1/12 N^2"; "0" for the zero polynomial.
  std::string to_string() const;
  friend bool operator==(const PolyInN&, const PolyInN&) = default;
};

/// Exact Newton interpolation through (x_k, y_k); x_k distinct.
PolyInN interpolate(const std::vector<BigRational>& xs, const std::vector<BigRational>& ys);

using Cell = std::variant<std::string, ScaledRational, PolyInN>;

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& cell);

nlohmann::json exact_json(const ScaledRational& value);
nlohmann::json poly_json(const PolyInN& poly);
nlohmann::json report_json(const EstimateReport& report);
nlohmann::json ks_json(const KsReport& report);
nlohmann::json table_json(const Table& table);

std::string csv_escape(std::string_view field);

std::string render(const Table& table, Format format);

/// A query result: one exact value plus optional extras and an MC report.
struct QueryResult {
  std::string query;
  ScaledRational exact_value;
  std::optional<ScaledRational> unnormalized;
  std::optional<EstimateReport> mc_report;
};

std::string render(const QueryResult& result, Format format);

}  // namespace rho
