// ddverify: batch runner over the model catalog.
//
// Exit status: 0 all pass, 1 some tolerance failure (report still written),
// 2 usage error, 3 model or data inconsistency.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "ddverify/errors.hpp"
#include "ddverify/models.hpp"
#include "ddverify/runner.hpp"

namespace {

int run_command(const std::string& check, const std::string& model, const ddv::VerifyOptions& opts,
                const std::string& format, const std::string& out, const std::string& fixtures, int jobs,
                bool timing) {
  const ddv::ReportFormat fmt = ddv::parse_format(format);
  const auto reports = ddv::run_many(check, model, opts, fixtures, jobs);
  if (out.empty() || out == "-") {
    ddv::emit_reports(reports, fmt, std::cout, timing);
  } else {
    ddv::emit_reports(reports, fmt, out, timing);
  }
  for (const auto& r : reports) {
    if (!r.pass) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification engine for the simplicial de Rham Dixmier-Douady cocycle"};
  app.require_subcommand(1);

  std::string check = "all";
  std::string model = "all";
  std::string format = "json";
  std::string out;
  std::string fixtures;
  ddv::VerifyOptions opts;
  int jobs = 1;
  bool timing = false;

  auto* run = app.add_subcommand("run", "Run checks and emit a report");
  run->add_option("--check", check, "Check name or 'all'");
  run->add_option("--model", model, "Model name or 'all'");
  run->add_option("--samples", opts.samples, "Samples per identity")->check(CLI::PositiveNumber);
  run->add_option("--tol", opts.tol, "Residual tolerance")->check(CLI::NonNegativeNumber);
  run->add_option("--seed", opts.seed, "Sampling seed");
  run->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  run->add_option("--out", out, "Output path (stdout when omitted)");
  run->add_option("--threads", opts.threads, "Threads per sampled identity")->check(CLI::PositiveNumber);
  run->add_option("--jobs", jobs, "(check, model) pairs run in parallel")->check(CLI::PositiveNumber);
  run->add_option("--fixtures", fixtures, "Directory with <model>.ext group tables");
  run->add_flag("--timing", timing, "Include wall time in the report");

  auto* list = app.add_subcommand("list", "List check and model names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      std::cout << "checks:";
      for (const auto& c : ddv::check_names()) std::cout << ' ' << c;
      std::cout << "\nmodels:";
      for (const auto& m : ddv::model_names()) std::cout << ' ' << m;
      std::cout << '\n';
      return 0;
    }
    return run_command(check, model, opts, format, out, fixtures, jobs, timing);
  } catch (const ddv::UsageError& e) {
    std::cerr << "ddverify: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ddverify: " << e.what() << '\n';
    return 3;
  }
}
