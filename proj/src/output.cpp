#include "rho/output.hpp"

#include <sstream>

namespace rho {

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "markdown" || name == "md") return Format::markdown;
  throw ArgumentError("unknown format '" + std::string(name) + "' (json|csv|markdown)");
}

// --- PolyInN --------------------------------------------------------------

BigRational PolyInN::evaluate(const BigRational& N) const {
  BigRational acc = 0;
  for (std::size_t d = coeffs.size(); d-- > 0;) acc = acc * N + coeffs[d];
  return acc;
}

int PolyInN::degree() const {
  for (std::size_t d = coeffs.size(); d-- > 0;)
    if (coeffs[d] != 0) return static_cast<int>(d);
  return -1;
}

std::string PolyInN::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const BigRational& c = coeffs[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    const BigRational mag = c < 0 ? BigRational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (d == 0) {
      os << rho::to_string(mag);
      continue;
    }
    if (mag != 1) os << rho::to_string(mag) << " ";
    os << "N";
    if (d > 1) os << "^" << d;
  }
  return first ? "0" : os.str();
}

PolyInN interpolate(const std::vector<BigRational>& xs, const std::vector<BigRational>& ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw ArgumentError("interpolate: need matching non-empty point lists");
  const std::size_t n = xs.size();
  // Divided differences, then expand the Newton form into monomials.
  std::vector<BigRational> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t k = n - 1; k >= level; --k) {
      const BigRational dx = xs[k] - xs[k - level];
      if (dx == 0) throw ArgumentError("interpolate: nodes must be distinct");
      dd[k] = (dd[k] - dd[k - 1]) / dx;
    }
  std::vector<BigRational> poly(n, BigRational(0));
  for (std::size_t k = n; k-- > 0;) {
    // poly = poly * (N - x_k) + dd[k]
    std::vector<BigRational> next(n, BigRational(0));
    for (std::size_t d = 0; d + 1 < n; ++d) {
      next[d + 1] += poly[d];
      next[d] -= poly[d] * xs[k];
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  return PolyInN{std::move(poly)};
}

// --- cells and JSON -------------------------------------------------------

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) return v;
        else return v.to_string();
      },
      cell);
}

nlohmann::json exact_json(const ScaledRational& value) {
  return {{"numerator", numerator(value.rational).str()},
          {"denominator", denominator(value.rational).str()},
          {"twopi_exponent", value.twopi_exponent}};
}

nlohmann::json poly_json(const PolyInN& poly) {
  nlohmann::json terms = nlohmann::json::array();
  for (int d = poly.degree(); d >= 0; --d) {
    const BigRational& c = poly.coeffs[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    nlohmann::json t = exact_json(ScaledRational(c));
    t["power_of_N"] = d;
    terms.push_back(std::move(t));
  }
  return {{"polynomial_in", "N"}, {"text", poly.to_string()}, {"terms", std::move(terms)}};
}

namespace {

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, ScaledRational>) return exact_json(v);
        else return poly_json(v);
      },
      cell);
}

}  // namespace

nlohmann::json report_json(const EstimateReport& r) {
  return {{"label", r.label},
          {"estimate", complex_json(r.estimate)},
          {"std_error", r.std_error},
          {"exact_value", complex_json(r.exact_value)},
          {"z_score", r.z_score},
          {"sample_count", r.sample_count},
          {"seed", r.seed}};
}

nlohmann::json ks_json(const KsReport& r) {
  return {{"label", r.label},
          {"statistic", r.statistic},
          {"p_value", r.p_value},
          {"sample_count", r.sample_count},
          {"seed", r.seed}};
}

nlohmann::json table_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& cell : row) r.push_back(cell_json(cell));
    rows.push_back(std::move(r));
  }
  return {{"table", table.title}, {"columns", table.columns}, {"rows", std::move(rows)}};
}

std::string csv_escape(std::string_view field) {
  const bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!quote) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

std::string md_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string render(const Table& table, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::json:
      os << table_json(table).dump(2) << "\n";
      break;
    case Format::csv:
      // RFC 4180 line breaks are CRLF.
      for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << csv_escape(table.columns[c]);
      os << "\r\n";
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_escape(cell_text(row[c]));
        os << "\r\n";
      }
      break;
    case Format::markdown:
      if (!table.title.empty()) os << "**" << table.title << "**\n\n";
      os << "|";
      for (const auto& col : table.columns) os << " " << md_escape(col) << " |";
      os << "\n|";
      for (std::size_t c = 0; c < table.columns.size(); ++c) os << "---|";
      os << "\n";
      for (const auto& row : table.rows) {
        os << "|";
        for (const auto& cell : row) os << " " << md_escape(cell_text(cell)) << " |";
        os << "\n";
      }
      break;
  }
  return os.str();
}

std::string render(const QueryResult& result, Format format) {
  if (format == Format::json) {
    nlohmann::json j = {{"query", result.query}, {"exact_value", exact_json(result.exact_value)}};
    if (result.unnormalized) j["unnormalized_value"] = exact_json(*result.unnormalized);
    if (result.mc_report) j["mc_report"] = report_json(*result.mc_report);
    return j.dump(2) + "\n";
  }
  Table t;
  t.title = result.query;
  t.columns = {"quantity", "value"};
  t.rows.push_back({std::string("exact"), result.exact_value});
  if (result.unnormalized) t.rows.push_back({std::string("unnormalized"), *result.unnormalized});
  if (const auto& mc = result.mc_report) {
    auto num = [](double x) {
      std::ostringstream os;
      os.precision(10);
      os << x;
      return os.str();
    };
    auto complex_text = [&](Complex z) {
      if (z.imag() == 0.0) return num(z.real());
      return num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "i";
    };
    t.rows.push_back({std::string("mc_estimate"), complex_text(mc->estimate)});
    t.rows.push_back({std::string("mc_std_error"), num(mc->std_error)});
    t.rows.push_back({std::string("mc_z_score"), num(mc->z_score)});
    t.rows.push_back({std::string("mc_samples"), std::to_string(mc->sample_count)});
    t.rows.push_back({std::string("mc_seed"), std::to_string(mc->seed)});
  }
  return render(t, format);
}

}  // namespace rho
