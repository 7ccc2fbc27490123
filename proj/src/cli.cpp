#include "chernforge/cli.hpp"

#include "chernforge/chern.hpp"
#include "chernforge/config.hpp"
#include "chernforge/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace chernforge {

namespace {

using nlohmann::ordered_json;

struct ClassReport {
  int index = 0;
  DiffChar value;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
ordered_json table_json(const std::map<IndexMask, T>& table) {
  ordered_json j = ordered_json::object();
  for (const auto& [I, v] : table) j[subtorus_label(I)] = to_string(Rational(v));
  return j;
}

std::string table_text(const std::map<IndexMask, Rational>& table) {
  if (table.empty()) return "(none)";
  std::string s;
  for (const auto& [I, v] : table) s += (s.empty() ? "" : " ") + subtorus_label(I) + "=" + to_string(v);
  return s;
}

void write_classes(std::ostream& os, const std::string& command, int n, const std::vector<ClassReport>& classes,
                   OutputFormat format) {
  switch (format) {
    case OutputFormat::text:
      for (const auto& c : classes) {
        os << command << " " << c.index << " (degree " << c.value.degree() << " on T^" << n << ")\n";
        os << "  curvature: " << to_pretty(R_map(c.value)) << "\n";
        os << "  periods:   " << table_text(curvature_periods(c.value)) << "\n";
        os << "  holonomy:  " << table_text(holonomy_table(c.value)) << "\n";
      }
      break;
    case OutputFormat::json: {
      ordered_json j;
      j["command"] = command;
      j["dimension"] = n;
      j["classes"] = ordered_json::array();
      for (const auto& c : classes) {
        ordered_json e;
        e["index"] = c.index;
        e["degree"] = c.value.degree();
        e["curvature"] = to_pretty(R_map(c.value));
        e["curvature_terms"] = to_text(R_map(c.value));
        e["periods"] = table_json(curvature_periods(c.value));
        e["holonomy"] = table_json(holonomy_table(c.value));
        j["classes"].push_back(std::move(e));
      }
      os << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv:
      os << "command,index,degree,kind,subtorus,value\n";
      for (const auto& c : classes) {
        std::string prefix = command + "," + std::to_string(c.index) + "," + std::to_string(c.value.degree()) + ",";
        os << prefix << "curvature,," << csv_field(to_pretty(R_map(c.value))) << "\n";
        for (const auto& [I, v] : curvature_periods(c.value))
          os << prefix << "period," << csv_field(subtorus_label(I)) << "," << to_string(v) << "\n";
        for (const auto& [I, v] : holonomy_table(c.value))
          os << prefix << "holonomy," << csv_field(subtorus_label(I)) << "," << to_string(v) << "\n";
      }
      break;
  }
}

void write_suite(std::ostream& os, const SuiteReport& r, OutputFormat format) {
  switch (format) {
    case OutputFormat::text:
      os << "suite " << r.suite << " seed " << r.seed << " cases " << r.cases << "\n";
      os << "passed " << r.passed << " failed " << r.failed << "\n";
      os << "verdict " << (r.ok() ? "pass" : "fail") << "\n";
      if (r.first_failure) {
        os << "first counterexample (case " << r.first_failure->index << "): " << r.first_failure->detail << "\n";
        if (!r.first_failure->instance.empty()) os << r.first_failure->instance;
      }
      break;
    case OutputFormat::json: {
      ordered_json j;
      j["suite"] = r.suite;
      j["seed"] = r.seed;
      j["cases"] = r.cases;
      j["passed"] = r.passed;
      j["failed"] = r.failed;
      j["verdict"] = r.ok() ? "pass" : "fail";
      if (r.first_failure)
        j["counterexample"] = {{"index", r.first_failure->index},
                               {"detail", r.first_failure->detail},
                               {"instance", r.first_failure->instance}};
      else
        j["counterexample"] = nullptr;
      os << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv:
      os << "suite,seed,cases,passed,failed,verdict,counterexample_index,counterexample_detail\n";
      os << r.suite << "," << r.seed << "," << r.cases << "," << r.passed << "," << r.failed << ","
         << (r.ok() ? "pass" : "fail") << ",";
      if (r.first_failure) os << r.first_failure->index << "," << csv_field(r.first_failure->detail);
      else os << ",";
      os << "\n";
      break;
  }
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int degree_from_env() {
  const char* env = std::getenv("CHERNFORGE_DEGREE");
  if (!env || !*env) return 8;
  std::string_view s(env);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1 || v > 15)
    throw UsageError("CHERNFORGE_DEGREE must be an integer in [1, 15]");
  return v;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact differential Chern classes on flat tori", "chernforge"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, suite, out_path, format_name;
  std::optional<std::uint64_t> seed;
  std::optional<int> cases, degree;
  app.add_option("--config", config_path, "Configuration file");
  app.add_option("--suite", suite, "Verification suite");
  app.add_option("--seed", seed, "Random seed for generated cases");
  app.add_option("--cases", cases, "Number of generated cases")->check(CLI::NonNegativeNumber);
  app.add_option("--degree", degree, "Truncation degree for polynomial suites")->check(CLI::Range(1, 15));
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", out_path, "Write the report to this file");
  auto* chern_cmd = app.add_subcommand("chern", "Differential Chern classes of a cycle");
  auto* odd_cmd = app.add_subcommand("odd", "Odd differential Chern classes of an odd cycle");
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  (void)odd_cmd;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    std::optional<Config> config;
    if (!config_path.empty()) config = load_config(config_path);

    OutputFormat format = OutputFormat::text;
    if (!format_name.empty()) format = *parse_output_format(format_name);
    else if (config && config->format) format = *config->format;

    std::ostringstream report;
    int code = kExitOk;
    if (verify_cmd->parsed()) {
      if (suite.empty()) throw UsageError("verify requires --suite");
      if (!is_suite(suite)) throw UsageError("unknown suite '" + suite + "'");
      SuiteOptions options;
      options.seed = seed ? *seed : (config && config->seed ? *config->seed : 42);
      options.cases = cases ? *cases : (config && config->cases ? *config->cases : 100);
      options.degree = degree ? *degree : (config && config->degree ? *config->degree : degree_from_env());
      SuiteReport r = run_suite(suite, options);
      write_suite(report, r, format);
      code = r.ok() ? kExitOk : kExitSuiteFailure;
    } else {
      if (!config) throw UsageError("--config is required");
      const int n = config->dimension;
      std::vector<ClassReport> classes;
      if (chern_cmd->parsed()) {
        KCycle w = config->cycle();
        std::vector<int> indices = config->chern;
        if (indices.empty())
          for (int i = 1; 2 * i <= n; ++i) indices.push_back(i);
        if (indices.empty()) throw PreconditionError("no Chern index with 2i <= " + std::to_string(n));
        for (int i : indices) classes.push_back(ClassReport{i, chern_hat(w, i)});
        write_classes(report, "chern", n, classes, format);
      } else {
        if (config->odd.empty()) throw UsageError("config has no 'odd' block");
        OddKCycle x = config->odd_cycle();
        std::vector<int> indices = config->odd_chern;
        if (indices.empty()) indices.push_back(1);
        for (int i : indices) classes.push_back(ClassReport{i, chern_hat_odd(x, i)});
        write_classes(report, "odd", n, classes, format);
      }
    }

    if (out_path.empty()) {
      out << report.str();
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw UsageError("cannot write '" + out_path + "'");
      file << report.str();
    }
    return code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const DefectError& e) {
    err << "internal defect: " << e.what() << "\n";
    return kExitSuiteFailure;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace chernforge
