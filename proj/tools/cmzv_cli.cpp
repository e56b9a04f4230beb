// Command-line front end over the C API.

#include "cmzv/cmzv.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNotConverged = 3 };

enum class Format { Table, Json, Csv };

struct Config {
  double tol = 0.0;
  int depth_cap = 6;
  std::size_t step_budget = 10000;
  std::string format = "table";
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string bounds;

  Format fmt() const {
    if (format == "json") return Format::Json;
    if (format == "csv") return Format::Csv;
    return Format::Table;
  }
};

using ContextPtr = std::unique_ptr<cmzv_context, decltype(&cmzv_context_free)>;

int exit_for(cmzv_status s) {
  switch (s) {
  case CMZV_OK: return kOk;
  case CMZV_NOT_CONVERGED: return kNotConverged;
  case CMZV_INVALID_INPUT:
  case CMZV_DOMAIN:
  case CMZV_ENCODING:
  case CMZV_DIVERGENT:
  case CMZV_CAPACITY: return kUsage;
  default: return kVerifyFailed;
  }
}

int report_error(cmzv_context* ctx, cmzv_status s) {
  std::cerr << "error (" << cmzv_status_name(s) << "): " << cmzv_last_error(ctx) << '\n';
  return exit_for(s);
}

// Takes ownership of a library string.
Json take_json(char* s) {
  std::unique_ptr<char, decltype(&cmzv_string_free)> guard(s, cmzv_string_free);
  return Json::parse(s);
}

std::vector<int> parse_composition(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CLI::ValidationError("composition", "bad part '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("composition", "empty composition");
  return out;
}

// "p/1" prints as "p".
std::string show_fraction(const std::string& q) {
  if (q.size() > 2 && q.compare(q.size() - 2, 2, "/1") == 0) return q.substr(0, q.size() - 2);
  return q;
}

std::string show_word_sum(const Json& sum) {
  if (sum.empty()) return "0";
  std::string out;
  for (const auto& [word, coeff] : sum.items()) {
    std::string c = show_fraction(coeff.get<std::string>());
    const bool negative = !c.empty() && c.front() == '-';
    if (negative) c.erase(0, 1);
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    if (word.empty()) {
      out += c;
    } else {
      if (c != "1") out += c + "*";
      out += word;
    }
  }
  return out;
}

std::string show_hyperplane(const Json& h) {
  std::string out;
  const auto& coeffs = h.at("coeffs");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += " + ";
    const int m = coeffs[i].get<int>();
    if (m != 1) out += std::to_string(m);
    out += "s" + std::to_string(i + 1);
  }
  return out + " = " + std::to_string(h.at("constant").get<int>());
}

std::string num(double v) {
  std::ostringstream out;
  out << std::setprecision(15) << v;
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json numeric_json(const cmzv_numeric_result& r) {
  return {{"value", r.value},
          {"error_estimate", r.error_estimate},
          {"evaluations", r.evaluations},
          {"converged", r.converged != 0}};
}

void print_numeric(const Json& j, Format f) {
  switch (f) {
  case Format::Json: std::cout << j.dump(2) << '\n'; break;
  case Format::Csv:
    std::cout << "value,error_estimate,evaluations,converged\n"
              << num(j["value"]) << ',' << num(j["error_estimate"]) << ',' << j["evaluations"] << ','
              << j["converged"] << '\n';
    break;
  case Format::Table:
    std::cout << "value           " << num(j["value"]) << '\n'
              << "error_estimate  " << num(j["error_estimate"]) << '\n'
              << "evaluations     " << j["evaluations"] << '\n'
              << "converged       " << (j["converged"].get<bool>() ? "yes" : "no") << '\n';
    break;
  }
}

int cmd_eval(cmzv_context* ctx, const Config& cfg, const std::string& comp) {
  const auto parts = parse_composition(comp);
  cmzv_numeric_result r{};
  const auto s = cmzv_eval(ctx, parts.data(), parts.size(), cfg.bounds.empty() ? nullptr : cfg.bounds.c_str(), &r);
  if (s != CMZV_OK && s != CMZV_NOT_CONVERGED) return report_error(ctx, s);
  print_numeric(numeric_json(r), cfg.fmt());
  if (s == CMZV_NOT_CONVERGED) return report_error(ctx, s);
  return kOk;
}

int cmd_reduce(cmzv_context* ctx, const Config& cfg, const std::string& comp) {
  const auto parts = parse_composition(comp);
  char* out = nullptr;
  const auto s = cmzv_reduce(ctx, parts.data(), parts.size(), &out);
  if (!out) return report_error(ctx, s);
  const Json j = take_json(out);
  const double tol = cfg.tol > 0 ? cfg.tol : 1e-8;
  const bool ok = j["findings"].empty() && j["residual"].get<double>() <= tol;
  switch (cfg.fmt()) {
  case Format::Json: std::cout << j.dump(2) << '\n'; break;
  case Format::Csv:
    std::cout << "composition,constant,value,residual\n"
              << csv_field(comp) << ',' << csv_field(j["display"]) << ',' << num(j["numeric"]["value"]) << ','
              << num(j["residual"]) << '\n';
    break;
  case Format::Table:
    std::cout << "constant  " << j["display"].get<std::string>() << '\n'
              << "value     " << num(j["numeric"]["value"]) << '\n'
              << "direct    " << num(j["direct"]["value"]) << '\n'
              << "residual  " << num(j["residual"]) << '\n'
              << "steps     " << j["steps"] << '\n';
    for (const auto& f : j["findings"]) std::cout << "finding   " << f.get<std::string>() << '\n';
    break;
  }
  if (s != CMZV_OK) return report_error(ctx, s);
  if (!ok) {
    std::cerr << "reduction check failed (residual above " << tol << " or findings present)\n";
    return kVerifyFailed;
  }
  return kOk;
}

int cmd_shuffle(cmzv_context* ctx, const Config& cfg, const std::string& w1, const std::string& w2) {
  char* out = nullptr;
  const auto s = cmzv_shuffle(ctx, w1.c_str(), w2.c_str(), &out);
  if (s != CMZV_OK) return report_error(ctx, s);
  const Json j = take_json(out);
  switch (cfg.fmt()) {
  case Format::Json: std::cout << j.dump(2) << '\n'; break;
  case Format::Csv:
    std::cout << "word,coeff\n";
    for (const auto& [w, c] : j.items()) std::cout << w << ',' << c.get<std::string>() << '\n';
    break;
  case Format::Table: std::cout << show_word_sum(j) << '\n'; break;
  }
  return kOk;
}

int cmd_sumformula(cmzv_context* ctx, const Config& cfg, int r, int k) {
  char* out = nullptr;
  const auto s = cmzv_sumformula(ctx, r, k, &out);
  if (!out) return report_error(ctx, s);
  const Json j = take_json(out);
  switch (cfg.fmt()) {
  case Format::Json: std::cout << j.dump(2) << '\n'; break;
  case Format::Csv:
    std::cout << "r,k,rhs,lhs,discrepancy,pass\n"
              << r << ',' << k << ',' << j["rhs"].get<std::string>() << ',' << num(j["lhs"]["value"]) << ','
              << num(j["discrepancy"]) << ',' << j["pass"] << '\n';
    break;
  case Format::Table:
    std::cout << "r, k         " << r << ", " << k << '\n'
              << "terms        " << j["terms"].size() << '\n'
              << "rhs (exact)  " << show_fraction(j["rhs"]) << '\n'
              << "lhs          " << num(j["lhs"]["value"]) << '\n'
              << "discrepancy  " << num(j["discrepancy"]) << '\n'
              << "result       " << (j["pass"].get<bool>() ? "pass" : "FAIL") << '\n';
    break;
  }
  if (s != CMZV_OK) return report_error(ctx, s);
  return j["pass"].get<bool>() ? kOk : kVerifyFailed;
}

int cmd_poles(cmzv_context* ctx, const Config& cfg, int r, int k_max) {
  char* out = nullptr;
  const auto s = cmzv_poles(ctx, r, k_max, &out);
  if (s != CMZV_OK) return report_error(ctx, s);
  const Json j = take_json(out);
  switch (cfg.fmt()) {
  case Format::Json: std::cout << j.dump(2) << '\n'; break;
  case Format::Csv:
    std::cout << "coeffs,constant\n";
    for (const auto& h : j) {
      std::string coeffs;
      for (const auto& m : h["coeffs"]) coeffs += (coeffs.empty() ? "" : " ") + std::to_string(m.get<int>());
      std::cout << coeffs << ',' << h["constant"] << '\n';
    }
    break;
  case Format::Table:
    for (const auto& h : j) std::cout << show_hyperplane(h) << '\n';
    std::cout << j.size() << " hyperplanes\n";
    break;
  }
  return kOk;
}

int cmd_verify(cmzv_context* ctx, const Config& cfg, const std::string& suite, int max_weight, bool corrupt) {
  char* out = nullptr;
  std::size_t failures = 0;
  const auto s = cmzv_verify(ctx, suite.c_str(), max_weight, corrupt ? 1 : 0, &failures, &out);
  if (s != CMZV_OK) return report_error(ctx, s);
  const Json j = take_json(out);
  switch (cfg.fmt()) {
  case Format::Json: std::cout << j.dump(2) << '\n'; break;
  case Format::Csv:
    std::cout << "suite,name,pass,lhs,rhs,discrepancy,tolerance,detail\n";
    for (const auto& c : j["checks"]) {
      std::cout << c["suite"].get<std::string>() << ',' << csv_field(c["name"]) << ','
                << (c["pass"].get<bool>() ? "pass" : "fail") << ',' << num(c["lhs"]) << ',' << num(c["rhs"])
                << ',' << num(c["discrepancy"]) << ',' << num(c["tolerance"]) << ',' << csv_field(c["detail"])
                << '\n';
    }
    break;
  case Format::Table:
    for (const auto& c : j["checks"]) {
      std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << std::left << std::setw(11)
                << c["suite"].get<std::string>() << std::setw(34) << c["name"].get<std::string>()
                << " diff " << std::setw(12) << num(c["discrepancy"]);
      const auto detail = c["detail"].get<std::string>();
      if (!detail.empty()) std::cout << "  " << detail;
      std::cout << '\n';
    }
    std::cout << j["checks"].size() << " checks, " << failures << " failed\n";
    break;
  }
  return failures == 0 ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conical multiple zeta values: evaluation, reduction and identity checks"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--tol", cfg.tol, "absolute tolerance (default depends on depth)")
      ->envname("CMZV_TOL")
      ->check(CLI::PositiveNumber);
  app.add_option("--depth-cap", cfg.depth_cap, "largest depth handled numerically")
      ->envname("CMZV_DEPTH_CAP")
      ->check(CLI::Range(1, 64));
  app.add_option("--step-budget", cfg.step_budget, "rewrite step budget for reduce")
      ->envname("CMZV_STEP_BUDGET")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")
      ->envname("CMZV_FORMAT")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--jobs", cfg.jobs, "worker threads for verify")->envname("CMZV_JOBS")->check(CLI::Range(1, 1024));
  app.add_option("--seed", cfg.seed, "seed for randomized checks")->envname("CMZV_SEED");
  app.add_option("--bounds", cfg.bounds, "lower bounds m1,...,mr for eval (rationals)")->envname("CMZV_BOUNDS");

  std::string comp, w1, w2, suite = "all";
  int r = 0, k = 0, max_weight = 0;
  bool corrupt = false;

  auto* eval = app.add_subcommand("eval", "numeric value of a composition, e.g. 1,2");
  eval->add_option("composition", comp)->required();
  auto* reduce = app.add_subcommand("reduce", "reduce a composition to logs and basis values");
  reduce->add_option("composition", comp)->required();
  auto* shuffle = app.add_subcommand("shuffle", "shuffle product of two words over {x,y}");
  shuffle->add_option("w1", w1)->required();
  shuffle->add_option("w2", w2)->required();
  auto* sumformula = app.add_subcommand("sumformula", "check the weighted sum formula at depth r, weight k");
  sumformula->add_option("r", r)->required();
  sumformula->add_option("k", k)->required();
  auto* poles = app.add_subcommand("poles", "candidate pole hyperplanes");
  poles->add_option("r", r)->required();
  poles->add_option("k_max", k)->required();
  auto* verify = app.add_subcommand("verify", "run a verification suite (or all)");
  verify->add_option("suite", suite, "suite name or 'all'");
  verify->add_option("--max-weight", max_weight, "largest weight to enumerate")->check(CLI::NonNegativeNumber);
  verify->add_flag("--corrupt-constant", corrupt, "perturb log 2 to self-test the harness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  ContextPtr ctx(cmzv_context_new(), cmzv_context_free);
  if (!ctx) {
    std::cerr << "error: cannot allocate context\n";
    return kVerifyFailed;
  }
  cmzv_status s = CMZV_OK;
  if ((s = cmzv_set_tolerance(ctx.get(), cfg.tol)) != CMZV_OK ||
      (s = cmzv_set_depth_cap(ctx.get(), cfg.depth_cap)) != CMZV_OK ||
      (s = cmzv_set_step_budget(ctx.get(), cfg.step_budget)) != CMZV_OK ||
      (s = cmzv_set_jobs(ctx.get(), cfg.jobs)) != CMZV_OK || (s = cmzv_set_seed(ctx.get(), cfg.seed)) != CMZV_OK)
    return report_error(ctx.get(), s);

  try {
    if (*eval) return cmd_eval(ctx.get(), cfg, comp);
    if (*reduce) return cmd_reduce(ctx.get(), cfg, comp);
    if (*shuffle) return cmd_shuffle(ctx.get(), cfg, w1, w2);
    if (*sumformula) return cmd_sumformula(ctx.get(), cfg, r, k);
    if (*poles) return cmd_poles(ctx.get(), cfg, r, k);
    if (*verify) return cmd_verify(ctx.get(), cfg, suite, max_weight, corrupt);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}
