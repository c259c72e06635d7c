#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ddverify/report.hpp"

namespace ddv {

/// Check names accepted by run(), in a fixed order.
const std::vector<std::string>& check_names();

/// Whether `check` is defined for `model`; both names must exist (UsageError otherwise).
bool applicable(const std::string& check, const std::string& model);

/// Runs one (check, model) pair. Unknown or inapplicable names raise UsageError;
/// finite models read their tables from `fixture_dir` when it is non-empty.
VerificationReport run(const std::string& check, const std::string& model, const VerifyOptions& opts,
                       const std::string& fixture_dir = {});

/// Expands "all" on either axis to every applicable pair and runs them in
/// sorted (check, model) order. `jobs` > 1 fans pairs out over worker threads;
/// the result order does not depend on it.
std::vector<VerificationReport> run_many(const std::string& check, const std::string& model,
                                         const VerifyOptions& opts, const std::string& fixture_dir = {},
                                         int jobs = 1);

enum class ReportFormat { Json, Csv, Text };

ReportFormat parse_format(const std::string& name);

/// Fixed field order, floats at 17 significant digits. Wall time is written only
/// when `timing` is set, so default output is byte-stable.
void emit_reports(const std::vector<VerificationReport>& reports, ReportFormat format, std::ostream& out,
                  bool timing = false);

/// As emit_reports, to a file; I/O failures raise Error naming the path.
void emit_reports(const std::vector<VerificationReport>& reports, ReportFormat format, const std::string& path,
                  bool timing = false);

}  // namespace ddv
