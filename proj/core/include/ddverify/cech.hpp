#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ddverify/extension.hpp"

namespace ddv {

/// An open set U_a = {margin > 0} of the base.
struct CoverSet {
  std::string label;
  std::function<double(std::span<const double> m)> margin;
};

struct CoveredBase {
  SpacePtr M;
  std::vector<CoverSet> cover;

  int size() const { return static_cast<int>(cover.size()); }
  /// Rejection-samples a point of M whose margin in every listed set is at least `min_margin`.
  Point sample_intersection(std::span<const int> sets, Rng& rng, double min_margin = 0.2) const;
  bool contains(std::span<const int> sets, std::span<const double> m, double min_margin = 0.0) const;
};

/// Transition functions and their lifts, indexed by ordered pairs (a, b).
struct BundleData {
  int count = 0;
  std::vector<AmbientMap> transitions;  // a * count + b: M -> G
  std::vector<AmbientMap> lifts;        // a * count + b: M -> Ghat

  const AmbientMap& g(int a, int b) const { return transitions.at(static_cast<std::size_t>(a * count + b)); }
  const AmbientMap& ghat(int a, int b) const { return lifts.at(static_cast<std::size_t>(a * count + b)); }
};

struct CoboundaryBundle {
  std::string name;
  CoveredBase base;
  CentralExtensionModel model;
  BundleData data;
};

/// Phase of c_abc = ghat_bc ghat_ac^{-1} ghat_ab at an ambient point of M (Dual along a tangent).
Dual cech_phase(const CoboundaryBundle& bundle, int a, int b, int c, std::span<const Dual> m);

/// C_{2,1}(a, b) = g_ab^* c1(theta) on M.
FormField cech_c21(const CoboundaryBundle& bundle, const FormField& theta, int a, int b);
/// C_{1,2}(a, b, c) = -kappa (g_ab, g_bc)^* shat^*(delta theta) on M.
FormField cech_c12(const CoboundaryBundle& bundle, const FormField& theta, int a, int b, int c);

/// Both proof identities of the Cech-de Rham comparison, the cocycle
/// condition on quadruple overlaps, and gauge covariance under a lift change.
VerificationReport verify_thm31(const CoboundaryBundle& bundle, const FormField& theta, const VerifyOptions& opts);

/// Copy of the bundle with ghat_ab (and ghat_ba consistently) multiplied by e^{i u}.
CoboundaryBundle regauge_lift(const CoboundaryBundle& bundle, int a, int b,
                              std::function<Dual(std::span<const Dual> m)> u);

}  // namespace ddv
