// rho-moments: tables, exact moment queries and the verify suites.
//
// Exit codes: 0 success / all checks pass, 1 a verify check failed,
// 2 usage, parse, argument or resource-limit error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rho/classical.hpp"
#include "rho/montecarlo.hpp"
#include "rho/output.hpp"
#include "rho/parallel.hpp"
#include "rho/quantum.hpp"
#include "rho/tables.hpp"
#include "rho/verify.hpp"

namespace {

constexpr int kTableCap = 10;
constexpr int kPermutationCap = 8;

struct McRequest {
  std::vector<std::string> raw;  // {samples, seed}

  bool requested() const { return !raw.empty(); }
  std::int64_t samples() const { return std::stoll(raw.at(0)); }
  std::uint64_t seed() const { return std::stoull(raw.at(1)); }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(text);
  while (std::getline(in, field, sep))
    if (!field.empty()) out.push_back(field);
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& field : split(text, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != field.size()) throw rho::ParseError(what + ": '" + field + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw rho::ParseError(what + ": empty list");
  return out;
}

std::vector<std::pair<int, int>> parse_entries(const std::string& text) {
  std::vector<std::pair<int, int>> pairs;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    const auto ij = parse_int_list(token, "--entries");
    if (ij.size() != 2) throw rho::ParseError("--entries: '" + token + "' is not an i,j pair");
    pairs.emplace_back(ij[0], ij[1]);
  }
  if (pairs.empty()) throw rho::ParseError("--entries: no index pairs");
  return pairs;
}

int effective_cap(std::optional<int> flag, int fallback) {
  if (!flag) return fallback;
  if (*flag > fallback)
    std::cerr << "warning: --cap-k " << *flag << " exceeds the default " << fallback
              << "; work grows factorially in K\n";
  return *flag;
}

void require_under_cap(int K, int cap) {
  if (K > cap)
    throw rho::ResourceLimitError("K = " + std::to_string(K) + " exceeds the cap of " +
                                  std::to_string(cap) + " (raise with --cap-k)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact moments of random density matrices and of the probability simplex"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "markdown";
  std::optional<int> threads;
  std::optional<int> cap_k;
  app.add_option("--format", format_name, "json, csv or markdown")
      ->check(CLI::IsMember({"json", "csv", "markdown", "md"}));
  app.add_option("--threads", threads, "worker threads (default: RHO_MOMENTS_THREADS, then all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap-k", cap_k, "raise the K cap (tables 10, permutation sums 8)")
      ->check(CLI::PositiveNumber);

  // tables
  auto* tables = app.add_subcommand("tables", "character, dimension and dim-weighted tables");
  std::string which;
  int table_k = 0;
  std::optional<int> table_n;
  tables->add_option("which", which, "sym-chars | unitary-chars | dims | dim-char-sum")
      ->required()
      ->check(CLI::IsMember({"sym-chars", "unitary-chars", "dims", "dim-char-sum"}));
  tables->add_option("--k", table_k, "number of boxes K")->required()->check(CLI::NonNegativeNumber);
  tables->add_option("--n", table_n, "fix N (dim-char-sum) or the largest N listed (dims)")
      ->check(CLI::PositiveNumber);

  // simplex
  auto* simplex = app.add_subcommand("simplex", "simplex or Dirichlet moment");
  std::string nu_text, lambda_text = "1", f_coeffs_text;
  bool dirichlet = false;
  std::optional<int> f_power;
  McRequest simplex_mc;
  simplex->add_option("--nu", nu_text, "exponents, comma separated")->required();
  simplex->add_option("--lambda", lambda_text, "scale as p or p/q");
  simplex->add_flag("--dirichlet", dirichlet, "integrate over sum x < lambda instead");
  auto* f_power_opt =
      simplex->add_option("--f-power", f_power, "f(t) = t^m (Dirichlet)")->check(CLI::NonNegativeNumber);
  simplex->add_option("--f-coeffs", f_coeffs_text, "f(t) = c0 + c1 t + ... (Dirichlet)")->excludes(f_power_opt);
  simplex->add_option("--mc", simplex_mc.raw, "Monte Carlo check: <samples> <seed>")->expected(2);

  // qmoment
  auto* qmoment = app.add_subcommand("qmoment", "entry moment of an N x N density matrix");
  int q_n = 0;
  std::string entries_text;
  McRequest q_mc;
  qmoment->add_option("--n", q_n, "matrix size N")->required()->check(CLI::PositiveNumber);
  qmoment->add_option("--entries", entries_text, "1-based pairs, e.g. \"1,1 1,2\"")->required();
  qmoment->add_option("--mc", q_mc.raw, "Monte Carlo check: <samples> <seed>")->expected(2);

  // verify
  auto* verify = app.add_subcommand("verify", "run the self-check suites");
  std::string suite_text = "all";
  rho::VerifyOptions verify_options;
  verify->add_option("--suite", suite_text, "classical | quantum | sampler | all")
      ->check(CLI::IsMember({"classical", "quantum", "sampler", "all"}));
  verify->add_option("--samples", verify_options.samples, "Monte Carlo samples per check")
      ->check(CLI::Range(std::int64_t{100}, std::int64_t{1} << 40));
  verify->add_option("--seed", verify_options.seed, "base seed");
  verify->add_flag("--perturb-class-order", verify_options.perturb_class_order,
                   "negative control: offset every class order by one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const rho::Format format = rho::parse_format(format_name);
    rho::set_thread_count(rho::resolve_thread_count(threads));

    for (const auto* mc : {&simplex_mc, &q_mc})
      if (mc->requested() && (mc->samples() < 1))
        throw rho::ArgumentError("--mc: samples must be positive");

    if (tables->parsed()) {
      const int cap = effective_cap(cap_k, kTableCap);
      require_under_cap(table_k, cap);
      if (which != "dim-char-sum" && table_k < 1) throw rho::ArgumentError("tables " + which + " needs --k >= 1");
      rho::Table t;
      if (which == "sym-chars") t = rho::sym_char_table(table_k);
      else if (which == "unitary-chars") t = rho::unitary_char_table(table_k);
      else if (which == "dims") t = rho::dims_table(table_k, table_n.value_or(8));
      else t = rho::dim_char_sum_table(table_k, table_n);
      std::cout << rho::render(t, format);
      return 0;
    }

    if (simplex->parsed()) {
      const std::vector<int> nu = parse_int_list(nu_text, "--nu");
      const rho::BigRational lambda = rho::parse_rational(lambda_text);
      rho::QueryResult result;
      if (dirichlet) {
        rho::DirichletSpec spec{nu, lambda, {1}};
        if (f_power) spec = rho::DirichletSpec::monomial(nu, lambda, *f_power);
        if (!f_coeffs_text.empty()) {
          spec.f_coeffs.clear();
          for (const auto& c : split(f_coeffs_text, ',')) spec.f_coeffs.push_back(rho::parse_rational(c));
        }
        result.query = "dirichlet nu=" + nu_text + " lambda=" + lambda_text;
        result.exact_value = rho::ScaledRational(rho::dirichlet_moment(spec));
        if (simplex_mc.requested())
          result.mc_report = rho::estimate_dirichlet_moment(spec, simplex_mc.samples(), simplex_mc.seed());
      } else {
        if (f_power || !f_coeffs_text.empty())
          throw rho::ArgumentError("--f-power and --f-coeffs need --dirichlet");
        const rho::SimplexMomentSpec spec{nu, lambda};
        result.query = "simplex nu=" + nu_text + " lambda=" + lambda_text;
        result.exact_value = rho::ScaledRational(rho::simplex_moment(spec));
        if (simplex_mc.requested())
          result.mc_report = rho::estimate_simplex_moment(spec, simplex_mc.samples(), simplex_mc.seed());
      }
      std::cout << rho::render(result, format);
      return 0;
    }

    if (qmoment->parsed()) {
      const rho::EntryMomentSpec spec{q_n, parse_entries(entries_text)};
      spec.validate();
      const rho::MomentOptions options{.cap_k = effective_cap(cap_k, kPermutationCap), .parallel = true};
      rho::QueryResult result;
      result.query = spec.label();
      result.exact_value = rho::ScaledRational(rho::entry_moment(spec, options));
      result.unnormalized = rho::entry_moment_unnormalized(spec, options);
      if (q_mc.requested()) result.mc_report = rho::estimate_entry_moment(spec, q_mc.samples(), q_mc.seed());
      std::cout << rho::render(result, format);
      return 0;
    }

    if (verify->parsed()) {
      const auto checks = rho::run_suite(rho::parse_suite(suite_text), verify_options);
      std::cout << rho::render(checks, format);
      return rho::all_passed(checks) ? 0 : 1;
    }
  } catch (const rho::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {  // ArgumentError, ParseError
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: number out of range: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
