#pragma once

#include <array>

#include "ddverify/extension.hpp"

namespace ddv {

/// Sign of the d(arg cbar) term in sbar^*(deltabar theta), pinned like kPhaseSign.
inline constexpr double kCsPhaseSign = -1.0;

/// Kernel element eta'(h1 h2^{-1}) eta(h2) eta''(h1)^{-1}
/// (lambda for h2, lambda' for h1 h2^{-1}, lambda'' for h1).
DualVec sbar_comparison_element(const CentralExtensionModel& model, std::span<const Dual> h1,
                                std::span<const Dual> h2, std::array<int, 3> patches);

/// On N̄G(1): eps0bar^*(eta^* theta) + gamma^*(eta'^* theta) - eps1bar^*(eta''^* theta) + s' d(arg cbar).
FormField sbar_delta_theta(const CentralExtensionModel& model, const FormField& theta, double sign = kCsPhaseSign);
FormField sbar_delta_theta_on_patches(const CentralExtensionModel& model, const FormField& theta,
                                      std::array<int, 3> patches, double sign = kCsPhaseSign);

/// (0,2) -> -c1(theta) on N̄G(0), (1,1) -> -kappa sbar^*(deltabar theta) on N̄G(1);
/// with these signs D(CS) = gamma^*(DD) holds componentwise.
BigradedCochain cs_cochain(const CentralExtensionModel& model, const FormField& theta);

/// Edge restriction of the Chern-Simons cochain, -(0,2) component: c1(theta) on N̄G(0) = G.
FormField transgress(const CentralExtensionModel& model, const FormField& theta);

/// Both proof identities and the assembled D(CS) = gamma^*(DD).
VerificationReport verify_thm41(const CentralExtensionModel& model, const FormField& theta,
                                const VerifyOptions& opts);

/// transgress(theta) against chern_form(theta) on N̄G(0).
VerificationReport verify_thm42(const CentralExtensionModel& model, const FormField& theta,
                                const VerifyOptions& opts);

/// eps_i gamma = gamma epsbar_i on N̄G(p) at sampled points.
double gamma_commutation_residual(const CentralExtensionModel& model, int p, int samples, std::uint64_t seed);

/// Phase sign for which sbar_delta_theta is unchanged under regauging.
SignPin pin_cs_phase_sign(const CentralExtensionModel& model, const FormField& theta, const VerifyOptions& opts);

}  // namespace ddv
