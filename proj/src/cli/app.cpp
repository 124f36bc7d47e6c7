#include "regtor/cli/app.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "regtor/cli/config.hpp"

namespace regtor::cli {

namespace {

struct VerifyArgs {
  std::string config;
  std::vector<std::string> checks;
  std::optional<unsigned> s_max;
  std::optional<unsigned> degree_max;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string format;
  std::string out;
  bool timings = false;
};

struct ReportArgs {
  std::string in;
  std::string format = "text";
};

int verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_config(args.config);
    if (!args.checks.empty()) config.checks = resolve_checks(args.checks);
    if (args.s_max) config.s_max = *args.s_max;
    if (args.degree_max) config.degree_max = *args.degree_max;
    if (args.seed) config.seed = *args.seed;
    if (!args.format.empty()) config.format = args.format == "text" ? OutputFormat::kText : OutputFormat::kJson;
    if (!args.out.empty()) config.output = args.out;
    // Overrides go through the same validation as the file.
    config = parse_config(render_config(config));
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  const auto ctx = build_context(config);
  const auto cert = suite::run_all(ctx, run_options(config, args.threads, args.timings), config.checks);
  const std::string body =
      config.format == OutputFormat::kJson ? cert.to_json().dump(2) + "\n" : cert.to_text();

  if (config.output == "-") {
    out << body;
  } else {
    if (!config.output.empty()) {
      std::ofstream file(config.output, std::ios::binary);
      file << body;
      if (!file) {
        err << "cannot write certificate to '" << config.output << "'\n";
        return kExitUsage;
      }
    }
    out << cert.to_text();
  }
  return cert.passed() ? kExitPass : kExitFail;
}

int report(const ReportArgs& args, std::ostream& out, std::ostream& err) {
  std::ifstream in(args.in, std::ios::binary);
  if (!in) {
    err << "cannot read certificate '" << args.in << "'\n";
    return kExitUsage;
  }
  Json cert;
  try {
    cert = Json::parse(in);
    if (args.format == "json") {
      out << cert.dump(2) << "\n";
    } else {
      out << suite::render_text(cert);
    }
  } catch (const Json::exception& e) {
    err << "malformed certificate '" << args.in << "': " << e.what() << "\n";
    return kExitUsage;
  }
  return cert.value("overall", std::string()) == "PASS" ? kExitPass : kExitFail;
}

int list_checks(std::ostream& out) {
  for (auto id : suite::all_checks()) {
    const std::string name = suite::to_string(id);
    out << name << std::string(18 - std::min<std::size_t>(name.size(), 17), ' ') << suite::claim(id);
    const auto& pre = suite::prerequisites(id);
    if (!pre.empty()) {
      out << " [requires";
      for (auto p : pre) out << " " << suite::to_string(p);
      out << "]";
    }
    out << "\n";
  }
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verifies Koszul and Tor computations for regular sequences and writes certificates.", "regtor"};
  app.require_subcommand(1);

  VerifyArgs v;
  auto* verify_cmd = app.add_subcommand("verify", "Run checks on an instance and write a certificate");
  verify_cmd->add_option("--config", v.config, "Instance config (key-value or JSON)")->required();
  verify_cmd->add_option("--check", v.checks, "Check id to run, repeatable; 'all' for every check");
  verify_cmd->add_option("--s-max", v.s_max, "Largest filtration stage s");
  verify_cmd->add_option("--degree-max", v.degree_max, "Largest internal degree D");
  verify_cmd->add_option("--seed", v.seed, "Seed for randomized checks");
  verify_cmd->add_option("--threads", v.threads, "Worker threads, 0 for all cores")->capture_default_str();
  verify_cmd->add_option("--format", v.format, "Certificate format")->check(CLI::IsMember({"json", "text"}));
  verify_cmd->add_option("--out", v.out, "Certificate path, '-' for standard output");
  verify_cmd->add_flag("--timings", v.timings, "Record wall time per check (breaks byte identity)");

  ReportArgs r;
  auto* report_cmd = app.add_subcommand("report", "Print a saved certificate");
  report_cmd->add_option("certificate", r.in, "Certificate JSON file")->required();
  report_cmd->add_option("--format", r.format, "Output format")->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  auto* list_cmd = app.add_subcommand("list-checks", "List check ids, claims and prerequisites");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (verify_cmd->parsed()) return verify(v, out, err);
  if (report_cmd->parsed()) return report(r, out, err);
  if (list_cmd->parsed()) return list_checks(out);
  return kExitUsage;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace regtor::cli
