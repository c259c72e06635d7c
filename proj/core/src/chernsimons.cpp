#include "ddverify/chernsimons.hpp"

#include <algorithm>
#include <memory>

#include "ddverify/errors.hpp"

namespace ddv {

namespace {

std::span<const Dual> block(std::span<const Dual> x, int k, std::size_t a) {
  return x.subspan(static_cast<std::size_t>(k) * a, a);
}

DualVec along(const Point& p, const Eigen::VectorXd& v) {
  DualVec x(p.coords.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = Dual(p.coords[i], v(static_cast<Eigen::Index>(i)));
  return x;
}

const SpacePtr& nbar_level0(const CentralExtensionModel& model) { return model.nbar->level(0); }

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return seed * 0x9E3779B97F4A7C15ULL + salt; }

FormField make_sbar(const CentralExtensionModel& model, const FormField& theta, const std::array<int, 3>* fixed,
                    double sign) {
  const SpacePtr& level = model.nbar->level(1);
  if (model.discrete() || theta.is_zero()) return FormField::zero(level, 1);
  const auto m = std::make_shared<const CentralExtensionModel>(model);
  const bool use_fixed = fixed != nullptr;
  const std::array<int, 3> patches = use_fixed ? *fixed : std::array<int, 3>{0, 0, 0};
  auto eval = [m, theta, level, use_fixed, patches, sign](const Point& p, Frame frame) {
    const auto a = static_cast<std::size_t>(m->base->ambient_dimension());
    const DualVec amb = level->ambient(p.chart, along(p, frame[0]));
    const auto h1 = block(amb, 0, a);
    const auto h2 = block(amb, 1, a);
    const DualVec h2_inv = m->base->inverse(h2);
    const DualVec gam = m->base->mul(h1, std::span<const Dual>(h2_inv));
    std::array<int, 3> lam = patches;
    if (!use_fixed) {
      lam = {select_patch(*m, values(h2)), select_patch(*m, values(gam)), select_patch(*m, values(h1))};
    }
    const auto& cov = m->cover;
    const double t0 = evaluate_along(theta, cov[static_cast<std::size_t>(lam[0])].section(h2));
    const double tg = evaluate_along(theta, cov[static_cast<std::size_t>(lam[1])].section(gam));
    const double t1 = evaluate_along(theta, cov[static_cast<std::size_t>(lam[2])].section(h1));
    const DualVec k = sbar_comparison_element(*m, h1, h2, lam);
    return t0 + tg - t1 + sign * kernel_darg(*m, k);
  };
  return FormField(level, 1, std::move(eval), "sbar*(deltabar theta)");
}

}  // namespace

DualVec sbar_comparison_element(const CentralExtensionModel& model, std::span<const Dual> h1,
                                std::span<const Dual> h2, std::array<int, 3> patches) {
  const auto& G = *model.base;
  const auto& H = *model.total;
  const DualVec h2_inv = G.inverse(h2);
  const DualVec gam = G.mul(h1, std::span<const Dual>(h2_inv));
  const DualVec a = model.cover.at(static_cast<std::size_t>(patches[0])).section(h2);
  const DualVec b = model.cover.at(static_cast<std::size_t>(patches[1])).section(gam);
  const DualVec c_inv = H.inverse(model.cover.at(static_cast<std::size_t>(patches[2])).section(h1));
  const DualVec ba = H.mul(std::span<const Dual>(b), std::span<const Dual>(a));
  return H.mul(std::span<const Dual>(ba), std::span<const Dual>(c_inv));
}

FormField sbar_delta_theta(const CentralExtensionModel& model, const FormField& theta, double sign) {
  return make_sbar(model, theta, nullptr, sign);
}

FormField sbar_delta_theta_on_patches(const CentralExtensionModel& model, const FormField& theta,
                                      std::array<int, 3> patches, double sign) {
  return make_sbar(model, theta, &patches, sign);
}

BigradedCochain cs_cochain(const CentralExtensionModel& model, const FormField& theta) {
  BigradedCochain cs{model.nbar, 2, {}};
  cs.set(0, 2, -1.0 * chern_form(model, theta, {}, model.nbar->level(0)));
  cs.set(1, 1, -kKappa * sbar_delta_theta(model, theta));
  return cs;
}

FormField transgress(const CentralExtensionModel& model, const FormField& theta) {
  const BigradedCochain cs = cs_cochain(model, theta);
  return -1.0 * *cs.get(0, 2);
}

VerificationReport verify_thm41(const CentralExtensionModel& model, const FormField& theta,
                                const VerifyOptions& opts) {
  const auto& nbar = *model.nbar;
  const FormField c1_edge = chern_form(model, theta, {}, nbar.level(0));
  const FormField c1 = chern_form(model, theta);
  const FormField sbar = sbar_delta_theta(model, theta);

  // (eps0bar^* + gamma^* - eps1bar^*) c1 = kappa d(sbar^* deltabar theta) on N̄G(1).
  const FormField lhs1 = pullback(nbar.face(1, 0), c1_edge) + pullback(gamma_map(nbar, *model.ng, 1), c1) -
                         pullback(nbar.face(1, 1), c1_edge);
  const FormField rhs1 = kKappa * ext_derivative(sbar);
  const auto s1 = sample_frames(*nbar.level(1), 2, opts.samples, mix(opts.seed, 41));
  const auto r1 = evaluate_samples(
      s1, [&](const FrameSample& s) { return lhs1(s.point, s.frame) - rhs1(s.point, s.frame); }, opts.threads);

  // (eps0bar^* - eps1bar^* + eps2bar^*) sbar^* deltabar theta = gamma^*(shat^* delta theta) on N̄G(2).
  const FormField lhs2 = d_prime(nbar, 1, sbar);
  const FormField rhs2 = pullback(gamma_map(nbar, *model.ng, 2), shat_delta_theta(model, theta));
  const auto s2 = sample_frames(*nbar.level(2), 1, opts.samples, mix(opts.seed, 42));
  const auto r2 = evaluate_samples(
      s2, [&](const FrameSample& s) { return lhs2(s.point, s.frame) - rhs2(s.point, s.frame); }, opts.threads);

  std::vector<IdentityResult> items;
  items.push_back(summarize("(eps0bar* + gamma* - eps1bar*) c1 = kappa d(sbar deltabar theta)", r1, opts.tol));
  items.push_back(summarize("d'(sbar deltabar theta) = gamma*(shat delta theta)", r2, opts.tol));
  const BigradedCochain dcs = total_D(cs_cochain(model, theta));
  const BigradedCochain pulled = pullback_gamma(dd_cochain(model, theta), model.nbar);
  for (auto& item : compare_cochains(dcs, pulled, opts, "D(CS) - gamma*(DD)")) items.push_back(std::move(item));
  return assemble_report("thm41", model.name, opts, std::move(items));
}

VerificationReport verify_thm42(const CentralExtensionModel& model, const FormField& theta,
                                const VerifyOptions& opts) {
  const FormField t = transgress(model, theta);
  const FormField c1 = chern_form(model, theta, {}, model.nbar->level(0));
  const auto samples = sample_frames(*model.nbar->level(0), 2, opts.samples, mix(opts.seed, 43));
  const auto res = evaluate_samples(
      samples, [&](const FrameSample& s) { return t(s.point, s.frame) - c1(s.point, s.frame); }, opts.threads);
  IdentityResult item = summarize("transgress = c1", res, opts.tol);
  item.detail = t.is_zero() && c1.is_zero() ? "both identically zero" : "pointwise";
  std::vector<IdentityResult> items{item};

  // Independent route: kappa d(theta) on Ghat pushed through the section Jacobian.
  if (!model.discrete() && !theta.is_zero()) {
    const SpacePtr& level = nbar_level0(model);
    const FormField curvature = ext_derivative(theta);
    std::vector<FormField> pulled;
    for (std::size_t k = 0; k < model.cover.size(); ++k) {
      pulled.push_back(pullback(section_map(model, static_cast<int>(k), level), curvature));
    }
    const auto r2 = evaluate_samples(
        samples,
        [&](const FrameSample& s) {
          const int k = select_patch(model, level->ambient(s.point));
          return t(s.point, s.frame) - kKappa * pulled[static_cast<std::size_t>(k)](s.point, s.frame);
        },
        opts.threads);
    IdentityResult via = summarize("transgress = kappa eta*(d theta)", r2, opts.tol);
    via.detail = "curvature differenced on Ghat";
    items.push_back(std::move(via));
  }
  return assemble_report("thm42", model.name, opts, std::move(items));
}

double gamma_commutation_residual(const CentralExtensionModel& model, int p, int samples, std::uint64_t seed) {
  const auto& nbar = *model.nbar;
  const auto& ng = *model.ng;
  const GroupPtr& g = model.base;
  const auto a = static_cast<std::size_t>(g->ambient_dimension());
  const SmoothMap top = gamma_map(nbar, ng, p);
  const SmoothMap bottom = gamma_map(nbar, ng, p - 1);
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const DualVec x = lift(nbar.level(p)->ambient(nbar.level(p)->sample(rng)));
    for (int i = 0; i <= p; ++i) {
      const auto lhs = values(ng.face(p, i).apply(top.apply(x)));
      const auto rhs = values(bottom.apply(nbar.face(p, i).apply(x)));
      for (int k = 0; k < p - 1; ++k) {
        const std::span<const double> l(lhs.data() + static_cast<std::size_t>(k) * a, a);
        const std::span<const double> r(rhs.data() + static_cast<std::size_t>(k) * a, a);
        worst = std::max(worst, g->distance(l, r));
      }
    }
  }
  return worst;
}

SignPin pin_cs_phase_sign(const CentralExtensionModel& model, const FormField& theta, const VerifyOptions& opts) {
  const CentralExtensionModel other = regauged(model);
  const auto samples = sample_frames(*model.nbar->level(1), 1, opts.samples, mix(opts.seed, 44));
  auto residual = [&](double s) {
    const FormField a = sbar_delta_theta(model, theta, s);
    const FormField b = sbar_delta_theta(other, theta, s);
    const auto res = evaluate_samples(
        samples, [&](const FrameSample& f) { return a(f.point, f.frame) - b(f.point, f.frame); }, opts.threads);
    return summarize("gauge", res, 0.0).max_residual;
  };
  SignPin pin;
  pin.residual_plus = residual(1.0);
  pin.residual_minus = residual(-1.0);
  pin.sign = pin.residual_minus <= pin.residual_plus ? -1.0 : 1.0;
  return pin;
}

}  // namespace ddv
