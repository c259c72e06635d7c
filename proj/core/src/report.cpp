#include "ddverify/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ddv {

const IdentityResult* VerificationReport::find(const std::string& name) const {
  for (const auto& r : breakdown) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

IdentityResult summarize(std::string name, std::span<const double> residuals, double tol) {
  IdentityResult r;
  r.name = std::move(name);
  r.samples = static_cast<int>(residuals.size());
  r.tol = tol;
  double sum = 0.0;
  for (double x : residuals) {
    const double a = std::abs(x);
    if (std::isnan(a)) {
      r.max_residual = std::numeric_limits<double>::quiet_NaN();
    } else if (!std::isnan(r.max_residual)) {
      r.max_residual = std::max(r.max_residual, a);
    }
    sum += a;
  }
  r.mean_residual = residuals.empty() ? 0.0 : sum / static_cast<double>(residuals.size());
  r.pass = r.max_residual <= tol;
  return r;
}

VerificationReport assemble_report(std::string check, std::string model, const VerifyOptions& opts,
                                   std::vector<IdentityResult> breakdown, bool exact) {
  VerificationReport rep;
  rep.check = std::move(check);
  rep.model = std::move(model);
  rep.samples = exact ? 0 : opts.samples;
  rep.seed = opts.seed;
  rep.tol = exact ? 0.0 : opts.tol;
  rep.exact = exact;
  double weighted = 0.0;
  long total = 0;
  for (const auto& b : breakdown) {
    if (std::isnan(b.max_residual)) {
      rep.max_residual = std::numeric_limits<double>::quiet_NaN();
    } else if (!std::isnan(rep.max_residual)) {
      rep.max_residual = std::max(rep.max_residual, b.max_residual);
    }
    weighted += b.mean_residual * b.samples;
    total += b.samples;
  }
  rep.mean_residual = total > 0 ? weighted / static_cast<double>(total) : 0.0;
  rep.pass = rep.max_residual <= rep.tol;
  rep.breakdown = std::move(breakdown);
  return rep;
}

}  // namespace ddv
