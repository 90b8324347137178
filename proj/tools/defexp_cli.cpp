// Command-line front end for the deformed-exponential toolkit.  Talks to the
// library exclusively through the C API.
//
// Exit codes: 0 success, 1 domain/convergence failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "defexp/defexp.h"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitComputeError = 1;
constexpr int kExitUsage = 2;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void usage_error(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  std::exit(kExitUsage);
}

[[noreturn]] void compute_error() {
  std::fprintf(stderr, "error: %s\n", defexp_last_error());
  std::exit(kExitComputeError);
}

void check_status(defexp_status s) {
  if (s != DEFEXP_OK) compute_error();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

enum class Format { text, csv, json };

Format parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  usage_error("unknown format '" + name + "' (expected text, csv or json)");
}

// ---------------------------------------------------------------------------
// Scalar function table shared by `eval` and `table`
// ---------------------------------------------------------------------------

struct FnSpec {
  std::vector<std::string> params;  // flag names in call order
  defexp_status (*invoke)(const double* a, double* out);
};

const std::map<std::string, FnSpec>& function_table() {
  static const std::map<std::string, FnSpec> table = {
      {"e_sub",
       {{"x", "y", "h"},
        [](const double* a, double* out) { return defexp_e_sub(a[0], a[1], a[2], out); }}},
      {"e_sup",
       {{"x", "y", "h"},
        [](const double* a, double* out) { return defexp_e_sup(a[0], a[1], a[2], out); }}},
      {"tsallis",
       {{"x", "q"},
        [](const double* a, double* out) { return defexp_tsallis_q_exp(a[0], a[1], out); }}},
      {"kaniadakis",
       {{"x", "kappa"},
        [](const double* a, double* out) { return defexp_kaniadakis_exp(a[0], a[1], out); }}},
      {"quantum_group",
       {{"y", "p"},
        [](const double* a, double* out) { return defexp_quantum_group_exp(a[0], a[1], out); }}},
      {"brace_sub",
       {{"x", "h"},
        [](const double* a, double* out) { return defexp_brace_sub(a[0], a[1], out); }}},
      {"brace_sup",
       {{"x", "h"},
        [](const double* a, double* out) { return defexp_brace_sup(a[0], a[1], out); }}},
      {"oplus_sub",
       {{"x", "y", "h"},
        [](const double* a, double* out) { return defexp_oplus_sub(a[0], a[1], a[2], out); }}},
      {"ominus_sub",
       {{"x", "y", "h"},
        [](const double* a, double* out) { return defexp_ominus_sub(a[0], a[1], a[2], out); }}},
      {"neg_sub",
       {{"x", "h"},
        [](const double* a, double* out) { return defexp_neg_sub(a[0], a[1], out); }}},
      {"oplus_sup",
       {{"x", "y", "h"},
        [](const double* a, double* out) { return defexp_oplus_sup(a[0], a[1], a[2], out); }}},
      {"ominus_sup",
       {{"x", "y", "h"},
        [](const double* a, double* out) { return defexp_ominus_sup(a[0], a[1], a[2], out); }}},
      {"sub_to_sup_shift",
       {{"x", "h"},
        [](const double* a, double* out) { return defexp_sub_to_sup_shift(a[0], a[1], out); }}},
  };
  return table;
}

std::string known_function_names() {
  std::string names;
  for (const auto& [name, spec] : function_table()) {
    if (!names.empty()) names += ", ";
    names += name;
  }
  return names;
}

const FnSpec& lookup_function(const std::string& name) {
  const auto it = function_table().find(name);
  if (it == function_table().end()) {
    usage_error("unknown function '" + name + "'; known functions: " +
                known_function_names());
  }
  return it->second;
}

// Values supplied via --x/--y/--h/--q/--kappa/--p.
struct ArgValues {
  std::map<std::string, std::optional<double>> vals = {
      {"x", std::nullopt}, {"y", std::nullopt},     {"h", std::nullopt},
      {"q", std::nullopt}, {"kappa", std::nullopt}, {"p", std::nullopt},
  };

  void add_flags(CLI::App* cmd) {
    for (auto& [name, slot] : vals) {
      cmd->add_option("--" + name, slot, name + " argument");
    }
  }

  // Strict arity: exactly the parameters of `spec` must be present, and no
  // stray ones.
  std::vector<double> collect(const std::string& fn_name, const FnSpec& spec,
                              const std::vector<std::string>& swept = {}) const {
    std::vector<double> out;
    for (const std::string& p : spec.params) {
      const bool is_swept =
          std::find(swept.begin(), swept.end(), p) != swept.end();
      if (is_swept) {
        out.push_back(0.0);  // placeholder, filled per row
        continue;
      }
      const auto& slot = vals.at(p);
      if (!slot.has_value()) {
        usage_error(fn_name + " requires --" + p);
      }
      out.push_back(*slot);
    }
    for (const auto& [name, slot] : vals) {
      const bool wanted = std::find(spec.params.begin(), spec.params.end(),
                                    name) != spec.params.end();
      if (slot.has_value() && !wanted) {
        usage_error(fn_name + " does not take --" + name);
      }
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

void run_eval(const std::string& fn_name, const ArgValues& args,
              Format format) {
  const FnSpec& spec = lookup_function(fn_name);
  const std::vector<double> a = args.collect(fn_name, spec);
  double value = 0.0;
  check_status(spec.invoke(a.data(), &value));

  switch (format) {
    case Format::text:
      std::printf("%s\n", fmt17(value).c_str());
      break;
    case Format::csv:
      std::printf("function,value\n%s,%s\n", fn_name.c_str(),
                  fmt17(value).c_str());
      break;
    case Format::json: {
      ordered_json doc;
      doc["function"] = fn_name;
      ordered_json jargs;
      for (std::size_t i = 0; i < spec.params.size(); ++i) {
        jargs[spec.params[i]] = a[i];
      }
      doc["arguments"] = jargs;
      doc["value"] = value;
      std::printf("%s\n", doc.dump(2).c_str());
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

struct Range {
  double lo = 0.0, hi = 0.0, step = 0.0;

  std::vector<double> points() const {
    // Inclusive endpoints with slack for the usual decimal-step rounding.
    const double span = (hi - lo) / step;
    const int n = static_cast<int>(std::floor(span + 1e-9));
    std::vector<double> pts;
    pts.reserve(n + 1);
    for (int i = 0; i <= n; ++i) pts.push_back(lo + i * step);
    return pts;
  }
};

Range parse_range(const std::string& text) {
  Range r;
  char trailing = 0;
  const int got = std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &r.lo, &r.hi,
                              &r.step, &trailing);
  if (got != 3) {
    usage_error("malformed range '" + text + "' (expected LO:HI:STEP)");
  }
  if (!(r.lo <= r.hi)) {
    usage_error("malformed range '" + text + "': lo must be <= hi");
  }
  if (!(r.step > 0.0)) {
    usage_error("malformed range '" + text + "': step must be > 0");
  }
  return r;
}

void run_table(const std::string& fn_name, const ArgValues& args,
               const std::optional<std::string>& x_range,
               const std::optional<std::string>& y_range, Format format) {
  const FnSpec& spec = lookup_function(fn_name);

  std::vector<std::string> swept;
  std::vector<Range> ranges;
  if (x_range) {
    swept.push_back("x");
    ranges.push_back(parse_range(*x_range));
  }
  if (y_range) {
    swept.push_back("y");
    ranges.push_back(parse_range(*y_range));
  }
  if (swept.empty()) {
    usage_error("table requires --x-range and/or --y-range");
  }
  for (const std::string& s : swept) {
    if (std::find(spec.params.begin(), spec.params.end(), s) ==
        spec.params.end()) {
      usage_error(fn_name + " has no '" + s + "' argument to sweep");
    }
  }

  std::vector<double> base = args.collect(fn_name, spec, swept);
  std::vector<std::size_t> swept_slots;
  for (const std::string& s : swept) {
    for (std::size_t i = 0; i < spec.params.size(); ++i) {
      if (spec.params[i] == s) swept_slots.push_back(i);
    }
  }

  struct Row {
    std::vector<double> coords;
    bool in_domain;
    double value;
  };
  std::vector<Row> rows;

  const std::vector<double> xs = ranges[0].points();
  const std::vector<double> ys =
      ranges.size() > 1 ? ranges[1].points() : std::vector<double>{0.0};
  for (double xv : xs) {
    for (double yv : ys) {
      std::vector<double> a = base;
      a[swept_slots[0]] = xv;
      std::vector<double> coords = {xv};
      if (ranges.size() > 1) {
        a[swept_slots[1]] = yv;
        coords.push_back(yv);
      }
      double value = 0.0;
      const defexp_status s = spec.invoke(a.data(), &value);
      if (s == DEFEXP_OK) {
        rows.push_back({coords, true, value});
      } else if (s == DEFEXP_ERR_DOMAIN) {
        // Out-of-domain grid points are reported, never dropped.
        rows.push_back({coords, false, 0.0});
      } else {
        compute_error();
      }
    }
  }

  std::vector<std::string> headers = swept;
  headers.push_back("value");

  switch (format) {
    case Format::text: {
      for (std::size_t i = 0; i < headers.size(); ++i) {
        std::printf("%s%s", i ? "\t" : "", headers[i].c_str());
      }
      std::printf("\n");
      for (const Row& row : rows) {
        for (double c : row.coords) std::printf("%s\t", fmt17(c).c_str());
        std::printf("%s\n",
                    row.in_domain ? fmt17(row.value).c_str() : "DOMAIN");
      }
      break;
    }
    case Format::csv: {
      for (std::size_t i = 0; i < headers.size(); ++i) {
        std::printf("%s%s", i ? "," : "", headers[i].c_str());
      }
      std::printf("\n");
      for (const Row& row : rows) {
        for (double c : row.coords) std::printf("%s,", fmt17(c).c_str());
        std::printf("%s\n",
                    row.in_domain ? fmt17(row.value).c_str() : "DOMAIN");
      }
      break;
    }
    case Format::json: {
      ordered_json doc;
      doc["function"] = fn_name;
      ordered_json jrows = ordered_json::array();
      for (const Row& row : rows) {
        ordered_json jr;
        for (std::size_t i = 0; i < swept.size(); ++i) {
          jr[swept[i]] = row.coords[i];
        }
        if (row.in_domain) {
          jr["value"] = row.value;
        } else {
          jr["value"] = "DOMAIN";
        }
        jrows.push_back(jr);
      }
      doc["rows"] = jrows;
      std::printf("%s\n", doc.dump(2).c_str());
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

void run_expand(const std::string& which_name, const ArgValues& args,
                int max_terms, double tol, Format format) {
  defexp_expansion which;
  if (which_name == "sub") {
    which = DEFEXP_EXPANSION_SUB;
  } else if (which_name == "sub_neg") {
    which = DEFEXP_EXPANSION_SUB_NEG;
  } else if (which_name == "sup") {
    which = DEFEXP_EXPANSION_SUP;
  } else {
    usage_error("unknown expansion '" + which_name +
                "' (expected sub, sub_neg or sup)");
  }

  const auto need = [&](const char* p) {
    const auto& slot = args.vals.at(p);
    if (!slot.has_value()) usage_error(std::string("expand requires --") + p);
    return *slot;
  };
  const double x = need("x");
  const double y = need("y");
  const double h = need("h");

  defexp_series_result r{};
  check_status(defexp_expand(which, x, y, h, max_terms, tol, &r));

  // Closed-form reference for the discrepancy column.
  double reference = 0.0;
  defexp_status s;
  if (which == DEFEXP_EXPANSION_SUB) {
    s = defexp_e_sub(x, y, h, &reference);
  } else if (which == DEFEXP_EXPANSION_SUB_NEG) {
    s = defexp_e_sub(x, y, -h, &reference);
  } else {
    s = defexp_e_sup(x, y, h, &reference);
  }
  check_status(s);
  const double discrepancy = std::fabs(r.value - reference);

  switch (format) {
    case Format::text:
      std::printf("value               = %s\n", fmt17(r.value).c_str());
      std::printf("terms_used          = %d\n", r.terms_used);
      std::printf("terminated_exactly  = %s\n",
                  r.terminated_exactly ? "true" : "false");
      std::printf("tail_estimate       = %s\n",
                  fmt17(r.tail_estimate).c_str());
      std::printf("reference           = %s\n", fmt17(reference).c_str());
      std::printf("discrepancy         = %s\n", fmt17(discrepancy).c_str());
      break;
    case Format::csv:
      std::printf(
          "value,terms_used,terminated_exactly,tail_estimate,reference,"
          "discrepancy\n");
      std::printf("%s,%d,%s,%s,%s,%s\n", fmt17(r.value).c_str(), r.terms_used,
                  r.terminated_exactly ? "true" : "false",
                  fmt17(r.tail_estimate).c_str(), fmt17(reference).c_str(),
                  fmt17(discrepancy).c_str());
      break;
    case Format::json: {
      ordered_json doc;
      doc["expansion"] = which_name;
      doc["arguments"] = {{"x", x}, {"y", y}, {"h", h}};
      doc["value"] = r.value;
      doc["terms_used"] = r.terms_used;
      doc["terminated_exactly"] = static_cast<bool>(r.terminated_exactly);
      doc["tail_estimate"] = r.tail_estimate;
      doc["reference"] = reference;
      doc["discrepancy"] = discrepancy;
      std::printf("%s\n", doc.dump(2).c_str());
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

[[noreturn]] void unknown_pattern_error(const std::string& pattern) {
  std::fprintf(stderr, "error: pattern '%s' matches no identity; registry:\n",
               pattern.c_str());
  const int n = defexp_identity_count();
  for (int i = 0; i < n; ++i) {
    std::fprintf(stderr, "  %s\n", defexp_identity_id(i));
  }
  std::exit(kExitUsage);
}

int run_verify(const std::string& pattern, std::uint64_t seed, Format format) {
  defexp_verifier_t* v = defexp_verifier_create();
  if (v == nullptr) compute_error();
  defexp_verifier_set_seed(v, seed);

  defexp_reports_t* reports = nullptr;
  const defexp_status s =
      defexp_verifier_run(v, pattern.empty() ? nullptr : pattern.c_str(),
                          &reports);
  if (s == DEFEXP_ERR_UNKNOWN_IDENTITY) {
    defexp_verifier_destroy(v);
    unknown_pattern_error(pattern);
  }
  if (s != DEFEXP_OK) {
    defexp_verifier_destroy(v);
    compute_error();
  }

  const int n = defexp_reports_count(reports);
  const bool ok = defexp_reports_all_passed(reports) != 0;

  switch (format) {
    case Format::text: {
      int passed = 0;
      for (int i = 0; i < n; ++i) {
        const bool p = defexp_reports_passed(reports, i) != 0;
        passed += p ? 1 : 0;
        std::printf("%-32s  samples %6lld  skipped %5lld  err %.3e  tol %.1e  %s\n",
                    defexp_reports_id(reports, i),
                    defexp_reports_samples(reports, i),
                    defexp_reports_skipped(reports, i),
                    defexp_reports_max_scaled_err(reports, i),
                    defexp_reports_tolerance(reports, i),
                    p ? "PASS" : "FAIL");
        if (!p) {
          std::printf("    worst point: %s\n",
                      defexp_reports_worst_point(reports, i));
        }
      }
      std::printf("%d/%d identities passed (seed %llu)\n", passed, n,
                  static_cast<unsigned long long>(seed));
      break;
    }
    case Format::csv: {
      std::printf(
          "identity_id,samples,skipped,max_abs_err,max_rel_err,"
          "max_scaled_err,tolerance,passed,worst_point,grid\n");
      for (int i = 0; i < n; ++i) {
        std::printf("%s,%lld,%lld,%s,%s,%s,%s,%s,%s,%s\n",
                    defexp_reports_id(reports, i),
                    defexp_reports_samples(reports, i),
                    defexp_reports_skipped(reports, i),
                    fmt17(defexp_reports_max_abs_err(reports, i)).c_str(),
                    fmt17(defexp_reports_max_rel_err(reports, i)).c_str(),
                    fmt17(defexp_reports_max_scaled_err(reports, i)).c_str(),
                    fmt17(defexp_reports_tolerance(reports, i)).c_str(),
                    defexp_reports_passed(reports, i) ? "true" : "false",
                    csv_quote(defexp_reports_worst_point(reports, i)).c_str(),
                    csv_quote(defexp_reports_grid(reports, i)).c_str());
      }
      break;
    }
    case Format::json: {
      ordered_json arr = ordered_json::array();
      for (int i = 0; i < n; ++i) {
        ordered_json jr;
        jr["identity_id"] = defexp_reports_id(reports, i);
        jr["grid_spec"] = defexp_reports_grid(reports, i);
        jr["samples"] = defexp_reports_samples(reports, i);
        jr["skipped"] = defexp_reports_skipped(reports, i);
        jr["max_abs_err"] = defexp_reports_max_abs_err(reports, i);
        jr["max_rel_err"] = defexp_reports_max_rel_err(reports, i);
        jr["max_scaled_err"] = defexp_reports_max_scaled_err(reports, i);
        jr["tolerance"] = defexp_reports_tolerance(reports, i);
        jr["passed"] = defexp_reports_passed(reports, i) != 0;
        jr["worst_point"] = defexp_reports_worst_point(reports, i);
        arr.push_back(jr);
      }
      std::printf("%s\n", arr.dump(2).c_str());
      break;
    }
  }

  defexp_reports_destroy(reports);
  defexp_verifier_destroy(v);
  return ok ? kExitOk : kExitComputeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deformed exponential toolkit"};
  app.require_subcommand(1);
  // --h is a data flag here, so help lives on --help alone.
  app.set_help_flag("--help", "print help and exit");

  std::string format_name = "text";

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate one function");
  eval_cmd->set_help_flag("--help", "print help and exit");
  std::string eval_fn;
  eval_cmd->add_option("function", eval_fn, "function name")->required();
  ArgValues eval_args;
  eval_args.add_flags(eval_cmd);
  eval_cmd->add_option("--format", format_name, "text|csv|json");

  // table
  auto* table_cmd = app.add_subcommand("table", "tabulate over a grid");
  table_cmd->set_help_flag("--help", "print help and exit");
  std::string table_fn;
  table_cmd->add_option("function", table_fn, "function name")->required();
  ArgValues table_args;
  table_args.add_flags(table_cmd);
  std::optional<std::string> x_range, y_range;
  table_cmd->add_option("--x-range", x_range, "LO:HI:STEP sweep for x");
  table_cmd->add_option("--y-range", y_range, "LO:HI:STEP sweep for y");
  table_cmd->add_option("--format", format_name, "text|csv|json");

  // expand
  auto* expand_cmd =
      app.add_subcommand("expand", "truncated series expansion");
  expand_cmd->set_help_flag("--help", "print help and exit");
  std::string expand_which;
  expand_cmd->add_option("which", expand_which, "sub|sub_neg|sup")->required();
  ArgValues expand_args;
  expand_args.add_flags(expand_cmd);
  int max_terms = 0;   // 0 selects the library default (500)
  double tol = 0.0;    // 0 selects the library default (1e-13)
  expand_cmd->add_option("--max-terms", max_terms, "term budget (default 500)");
  expand_cmd->add_option("--tol", tol, "stopping tolerance (default 1e-13)");
  expand_cmd->add_option("--format", format_name, "text|csv|json");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "run the identity-verification registry");
  verify_cmd->set_help_flag("--help", "print help and exit");
  std::string only_pattern;
  std::uint64_t seed = 42;
  verify_cmd->add_option("--only", only_pattern,
                         "glob pattern selecting identities");
  verify_cmd->add_option("--seed", seed, "sampling seed (default 42)");
  verify_cmd->add_option("--format", format_name, "text|csv|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const Format format = parse_format(format_name);

  if (eval_cmd->parsed()) {
    run_eval(eval_fn, eval_args, format);
    return kExitOk;
  }
  if (table_cmd->parsed()) {
    run_table(table_fn, table_args, x_range, y_range, format);
    return kExitOk;
  }
  if (expand_cmd->parsed()) {
    run_expand(expand_which, expand_args, max_terms, tol, format);
    return kExitOk;
  }
  if (verify_cmd->parsed()) {
    return run_verify(only_pattern, seed, format);
  }
  usage_error("no subcommand given");
}
