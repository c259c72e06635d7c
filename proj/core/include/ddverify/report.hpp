#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ddverify/sampling.hpp"

namespace ddv {

/// Residual statistics of one identity.
struct IdentityResult {
  std::string name;
  int samples = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tol = 0.0;
  bool pass = true;
  std::string detail;
};

/// Residual statistics of a whole check; pass <=> max_residual <= tol.
struct VerificationReport {
  std::string check;
  std::string model;
  int samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool exact = false;  // exhaustive/exact check: tolerance and sample count do not apply
  double max_residual = 0.0;
  double mean_residual = 0.0;
  bool pass = true;
  double wall_time_ms = 0.0;
  std::vector<IdentityResult> breakdown;

  const IdentityResult* find(const std::string& name) const;
};

IdentityResult summarize(std::string name, std::span<const double> residuals, double tol);

/// Overall statistics from the breakdown: max of maxima, sample-weighted mean.
VerificationReport assemble_report(std::string check, std::string model, const VerifyOptions& opts,
                                   std::vector<IdentityResult> breakdown, bool exact = false);

}  // namespace ddv
