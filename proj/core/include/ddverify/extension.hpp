#pragma once

#include <array>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "ddverify/simplicial.hpp"

namespace ddv {

/// Real normalization of -1/(2 pi i): c1 = kappa d(eta^* theta).
inline constexpr double kKappa = -1.0 / (2.0 * std::numbers::pi);

/// Global sign of the d(arg c) term in the section pullback of delta theta.
/// Pinned by gauge patch-independence (see pin_phase_sign).
inline constexpr double kPhaseSign = -1.0;

/// Global sign s in DD(theta0) - DD(theta1) = s D(kappa alpha).
inline constexpr double kConnectionSign = -1.0;

/// A local section eta: V -> Ghat over the set {margin > 0} of G.
struct SectionPatch {
  std::string label;
  std::function<double(std::span<const double> g)> margin;
  AmbientMap section;  // ambient of g -> ambient of Ghat
};

using PhaseMap = std::function<Dual(std::span<const Dual> kernel_element)>;

/// 1 -> U(1) -> Ghat -> G -> 1 with a cover of G by local sections.
struct CentralExtensionModel {
  std::string name;
  GroupPtr base;   // G
  GroupPtr total;  // Ghat
  AmbientMap projection;  // rho: Ghat -> G
  // (angle, ghat...) -> ghat acted on by e^{i angle}
  AmbientMap circle_action;
  std::vector<SectionPatch> cover;
  // Angle of an element of ker rho; throws ModelInconsistency off the kernel.
  PhaseMap kernel_phase;
  // Default connection (placeholder until a model sets it).
  FormField theta = FormField::zero(euclidean_space(0), 1);

  SimplicialPtr ng;
  SimplicialPtr nbar;

  bool discrete() const { return base->space->dimension() == 0; }
};

/// Fills in the nerves; call once after the raw fields are set.
void finalize(CentralExtensionModel& model);

/// Index of the cover member with the largest margin at g. CoverageError if none.
int select_patch(const CentralExtensionModel& model, std::span<const double> g);

SmoothMap section_map(const CentralExtensionModel& model, int patch, const SpacePtr& source);
SmoothMap projection_map(const CentralExtensionModel& model);
/// Vertical generator at a point of Ghat, in that point's chart coordinates.
Eigen::VectorXd vertical_vector(const CentralExtensionModel& model, const Point& ghat);

/// Evaluates a 1-form on Ghat along the Dual curve ghat (value + tangent).
double evaluate_along(const FormField& one_form, std::span<const Dual> ghat);

/// eta_lambda^* theta on G for a fixed patch.
FormField section_pullback(const CentralExtensionModel& model, const FormField& theta, int patch,
                           const SpacePtr& on);

/// c1(theta) = kappa d(eta^* theta), patch selected per query point. Lives on
/// NG(1) unless `on` names another space with the ambient of G (e.g. N̄G(0)).
FormField chern_form(const CentralExtensionModel& model, const FormField& theta, DiffOptions opts = {},
                     SpacePtr on = nullptr);

/// Section pullback of delta theta on NG(2); `patches` fixes (lambda for g2,
/// lambda' for g1 g2, lambda'' for g1), otherwise chosen per point.
FormField shat_delta_theta(const CentralExtensionModel& model, const FormField& theta, double sign = kPhaseSign);
FormField shat_delta_theta_on_patches(const CentralExtensionModel& model, const FormField& theta,
                                      std::array<int, 3> patches, double sign = kPhaseSign);

/// Kernel element eta''(g1) eta(g2) eta'(g1 g2)^{-1} for the selected patches.
DualVec comparison_element(const CentralExtensionModel& model, std::span<const Dual> g1, std::span<const Dual> g2,
                           std::array<int, 3> patches);

/// d(arg u) = Im(conj(u) du) for a kernel element u carried with a Dual tangent.
/// Throws ModelInconsistency when u is off ker rho or not of unit modulus.
double kernel_darg(const CentralExtensionModel& model, std::span<const Dual> u);

/// (1,2) -> c1(theta), (2,1) -> -kappa shat^*(delta theta).
BigradedCochain dd_cochain(const CentralExtensionModel& model, const FormField& theta, DiffOptions opts = {});

VerificationReport verify_prop21(const CentralExtensionModel& model, const FormField& theta,
                                 const VerifyOptions& opts);
VerificationReport verify_prop22(const CentralExtensionModel& model, const FormField& theta,
                                 const VerifyOptions& opts);
VerificationReport verify_dd_cocycle(const CentralExtensionModel& model, const FormField& theta,
                                     const VerifyOptions& opts);

/// DD(theta0) - DD(theta1) against sign * D(kappa alpha), alpha = eta^*(theta0 - theta1).
VerificationReport connection_independence(const CentralExtensionModel& model, const FormField& theta0,
                                           const FormField& theta1, const VerifyOptions& opts,
                                           double sign = kConnectionSign);

/// Structural invariants of the model and connection: rho homomorphism,
/// sections, centrality, coverage, theta(vertical) = 1, circle invariance.
VerificationReport check_model(const CentralExtensionModel& model, const FormField& theta, const VerifyOptions& opts);

/// Copy of the model whose sections are multiplied by the circle-valued
/// gauge e^{i tau(g)}; tau is a fixed smooth nonconstant function.
CentralExtensionModel regauged(const CentralExtensionModel& model);

struct SignPin {
  double sign = 0.0;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
};

/// Chooses the phase sign for which shat_delta_theta is unchanged under regauging.
SignPin pin_phase_sign(const CentralExtensionModel& model, const FormField& theta, const VerifyOptions& opts);
/// Chooses the sign for which connection_independence holds.
SignPin pin_connection_sign(const CentralExtensionModel& model, const FormField& theta0, const FormField& theta1,
                            const VerifyOptions& opts);

}  // namespace ddv
