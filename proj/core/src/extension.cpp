#include "ddverify/extension.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ddverify/errors.hpp"

namespace ddv {

namespace {

constexpr double kKernelTol = 1e-8;

std::span<const Dual> block(std::span<const Dual> x, int k, std::size_t a) {
  return x.subspan(static_cast<std::size_t>(k) * a, a);
}

// Dual coordinates of p moving along v.
DualVec along(const Point& p, const Eigen::VectorXd& v) {
  DualVec x(p.coords.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = Dual(p.coords[i], v(static_cast<Eigen::Index>(i)));
  return x;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return seed * 0x9E3779B97F4A7C15ULL + salt; }

}  // namespace

void finalize(CentralExtensionModel& model) {
  if (!model.base || !model.total) throw ContractViolation(model.name + ": missing groups");
  if (model.cover.empty() && !model.discrete()) throw ContractViolation(model.name + ": empty cover");
  model.ng = build_NG(model.base);
  model.nbar = build_NbarG(model.base);
}

int select_patch(const CentralExtensionModel& model, std::span<const double> g) {
  int best = -1;
  double best_margin = 0.0;
  for (std::size_t k = 0; k < model.cover.size(); ++k) {
    const double m = model.cover[k].margin(g);
    if (m > best_margin) {
      best_margin = m;
      best = static_cast<int>(k);
    }
  }
  if (best < 0) throw CoverageError(model.name + ": point lies in no cover member");
  return best;
}

SmoothMap section_map(const CentralExtensionModel& model, int patch, const SpacePtr& source) {
  const auto& sec = model.cover.at(static_cast<std::size_t>(patch));
  return SmoothMap(source, model.total->space, sec.section, "eta_" + sec.label);
}

SmoothMap projection_map(const CentralExtensionModel& model) {
  return SmoothMap(model.total->space, model.base->space, model.projection, "rho");
}

Eigen::VectorXd vertical_vector(const CentralExtensionModel& model, const Point& ghat) {
  const auto& space = model.total->space;
  DualVec in{Dual(0.0, 1.0)};
  const auto amb = space->ambient(ghat);
  in.insert(in.end(), amb.begin(), amb.end());
  const auto coords = derivatives(space->chart_coords(ghat.chart, model.circle_action(in)));
  return Eigen::Map<const Eigen::VectorXd>(coords.data(), static_cast<Eigen::Index>(coords.size()));
}

double evaluate_along(const FormField& one_form, std::span<const Dual> ghat) {
  const auto& space = one_form.base();
  const Point p = space->from_ambient(values(ghat));
  const auto d = derivatives(space->chart_coords(p.chart, ghat));
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
  const Eigen::VectorXd frame[] = {v};
  return one_form(p, frame);
}

FormField section_pullback(const CentralExtensionModel& model, const FormField& theta, int patch,
                           const SpacePtr& on) {
  return pullback(section_map(model, patch, on), theta);
}

FormField chern_form(const CentralExtensionModel& model, const FormField& theta, DiffOptions opts, SpacePtr on) {
  const SpacePtr level = on ? std::move(on) : model.ng->level(1);
  if (model.discrete() || theta.is_zero()) return FormField::zero(level, 2);
  std::vector<FormField> curv;
  for (std::size_t k = 0; k < model.cover.size(); ++k) {
    curv.push_back(ext_derivative(section_pullback(model, theta, static_cast<int>(k), level), opts));
  }
  const auto m = std::make_shared<const CentralExtensionModel>(model);
  auto eval = [m, curv, level](const Point& p, Frame frame) {
    const int k = select_patch(*m, level->ambient(p));
    return kKappa * curv[static_cast<std::size_t>(k)](p, frame);
  };
  return FormField(level, 2, std::move(eval), "c1");
}

DualVec comparison_element(const CentralExtensionModel& model, std::span<const Dual> g1, std::span<const Dual> g2,
                           std::array<int, 3> patches) {
  const auto& G = *model.base;
  const auto& H = *model.total;
  const DualVec g12 = G.mul(g1, g2);
  const DualVec a = model.cover.at(static_cast<std::size_t>(patches[0])).section(g2);
  const DualVec b = model.cover.at(static_cast<std::size_t>(patches[1])).section(g12);
  const DualVec c = model.cover.at(static_cast<std::size_t>(patches[2])).section(g1);
  const DualVec b_inv = H.inverse(b);
  const DualVec ca = H.mul(std::span<const Dual>(c), std::span<const Dual>(a));
  return H.mul(std::span<const Dual>(ca), std::span<const Dual>(b_inv));
}

// d(arg u) along the Dual tangent, from the imaginary part of conj(u) du.
double kernel_darg(const CentralExtensionModel& model, std::span<const Dual> k) {
  const auto image = values(model.projection(k));
  const double off = model.base->distance(image, model.base->identity);
  if (!(off <= kKernelTol))
    throw ModelInconsistency(model.name + ": comparison phase leaves ker rho (distance " + std::to_string(off) + ")");
  const Dual phi = model.kernel_phase(k);
  const Dual re = cos(phi);
  const Dual im = sin(phi);
  const double modulus = std::hypot(re.v, im.v);
  if (std::abs(modulus - 1.0) > kKernelTol) throw ModelInconsistency(model.name + ": phase of non-unit modulus");
  return re.v * im.d - im.v * re.d;
}

namespace {

FormField make_shat(const CentralExtensionModel& model, const FormField& theta, const std::array<int, 3>* fixed,
                    double sign) {
  const SpacePtr& level = model.ng->level(2);
  if (model.discrete() || theta.is_zero()) return FormField::zero(level, 1);
  const auto m = std::make_shared<const CentralExtensionModel>(model);
  const bool use_fixed = fixed != nullptr;
  const std::array<int, 3> patches = use_fixed ? *fixed : std::array<int, 3>{0, 0, 0};
  auto eval = [m, theta, level, use_fixed, patches, sign](const Point& p, Frame frame) {
    const auto a = static_cast<std::size_t>(m->base->ambient_dimension());
    const DualVec amb = level->ambient(p.chart, along(p, frame[0]));
    const auto g1 = block(amb, 0, a);
    const auto g2 = block(amb, 1, a);
    const DualVec g12 = m->base->mul(g1, g2);
    std::array<int, 3> lam = patches;
    if (!use_fixed) {
      lam = {select_patch(*m, values(g2)), select_patch(*m, values(g12)), select_patch(*m, values(g1))};
    }
    const auto& cov = m->cover;
    const double t0 = evaluate_along(theta, cov[static_cast<std::size_t>(lam[0])].section(g2));
    const double t1 = evaluate_along(theta, cov[static_cast<std::size_t>(lam[1])].section(g12));
    const double t2 = evaluate_along(theta, cov[static_cast<std::size_t>(lam[2])].section(g1));
    const DualVec k = comparison_element(*m, g1, g2, lam);
    return t0 - t1 + t2 + sign * kernel_darg(*m, k);
  };
  return FormField(level, 1, std::move(eval), "shat*(delta theta)");
}

}  // namespace

FormField shat_delta_theta(const CentralExtensionModel& model, const FormField& theta, double sign) {
  return make_shat(model, theta, nullptr, sign);
}

FormField shat_delta_theta_on_patches(const CentralExtensionModel& model, const FormField& theta,
                                      std::array<int, 3> patches, double sign) {
  return make_shat(model, theta, &patches, sign);
}

BigradedCochain dd_cochain(const CentralExtensionModel& model, const FormField& theta, DiffOptions opts) {
  BigradedCochain c{model.ng, 3, {}};
  c.set(1, 2, chern_form(model, theta, opts));
  c.set(2, 1, -kKappa * shat_delta_theta(model, theta));
  return c;
}

VerificationReport verify_prop21(const CentralExtensionModel& model, const FormField& theta,
                                 const VerifyOptions& opts) {
  const FormField lhs = d_prime(*model.ng, 1, chern_form(model, theta));
  const FormField rhs = kKappa * ext_derivative(shat_delta_theta(model, theta));
  const auto samples = sample_frames(*model.ng->level(2), 2, opts.samples, mix(opts.seed, 21));
  const auto res = evaluate_samples(
      samples, [&](const FrameSample& s) { return lhs(s.point, s.frame) - rhs(s.point, s.frame); }, opts.threads);
  return assemble_report("prop21", model.name, opts, {summarize("d'c1 = kappa d(shat delta theta)", res, opts.tol)});
}

VerificationReport verify_prop22(const CentralExtensionModel& model, const FormField& theta,
                                 const VerifyOptions& opts) {
  const FormField alt = d_prime(*model.ng, 2, shat_delta_theta(model, theta));
  const auto samples = sample_frames(*model.ng->level(3), 1, opts.samples, mix(opts.seed, 22));
  const auto res = evaluate_samples(samples, [&](const FrameSample& s) { return alt(s.point, s.frame); }, opts.threads);
  return assemble_report("prop22", model.name, opts, {summarize("d'(shat delta theta) = 0", res, opts.tol)});
}

VerificationReport verify_dd_cocycle(const CentralExtensionModel& model, const FormField& theta,
                                     const VerifyOptions& opts) {
  return verify_cocycle(dd_cochain(model, theta), opts, "cocycle", model.name);
}

namespace {

// alpha = eta^*(theta0 - theta1) on NG(1); also reports its spread across patches.
FormField connection_difference(const CentralExtensionModel& model, const FormField& diff) {
  const SpacePtr& level = model.ng->level(1);
  if (model.discrete() || diff.is_zero()) return FormField::zero(level, 1);
  std::vector<FormField> local;
  for (std::size_t k = 0; k < model.cover.size(); ++k) {
    local.push_back(section_pullback(model, diff, static_cast<int>(k), level));
  }
  const auto m = std::make_shared<const CentralExtensionModel>(model);
  auto eval = [m, local, level](const Point& p, Frame frame) {
    const int k = select_patch(*m, level->ambient(p));
    return local[static_cast<std::size_t>(k)](p, frame);
  };
  return FormField(level, 1, std::move(eval), "alpha");
}

std::vector<IdentityResult> independence_items(const CentralExtensionModel& model, const FormField& theta0,
                                               const FormField& theta1, const VerifyOptions& opts, double sign) {
  const FormField diff = theta0 - theta1;
  const FormField alpha = connection_difference(model, diff);

  // Patch independence of alpha on overlaps.
  std::vector<FormField> local;
  for (std::size_t k = 0; k < model.cover.size(); ++k) {
    local.push_back(section_pullback(model, diff, static_cast<int>(k), model.ng->level(1)));
  }
  const auto pts = sample_frames(*model.ng->level(1), 1, opts.samples, mix(opts.seed, 23));
  const auto spread = evaluate_samples(
      pts,
      [&](const FrameSample& s) {
        const auto g = model.ng->level(1)->ambient(s.point);
        double lo = 0.0;
        double hi = 0.0;
        bool first = true;
        for (std::size_t k = 0; k < model.cover.size(); ++k) {
          if (model.cover[k].margin(g) < 0.05) continue;
          const double v = local[k](s.point, s.frame);
          lo = first ? v : std::min(lo, v);
          hi = first ? v : std::max(hi, v);
          first = false;
        }
        return hi - lo;
      },
      opts.threads);
  auto patch_item = summarize("alpha patch independence", spread, opts.tol);
  if (patch_item.max_residual > kKernelTol)
    throw ModelInconsistency(model.name + ": theta0 - theta1 is not basic (alpha spread " +
                             std::to_string(patch_item.max_residual) + ")");

  const BigradedCochain lhs = difference(dd_cochain(model, theta0), dd_cochain(model, theta1));
  BigradedCochain a{model.ng, 2, {}};
  a.set(1, 1, kKappa * alpha);
  const BigradedCochain rhs = scale(total_D(a), sign);
  auto items = compare_cochains(lhs, rhs, opts, "DD0-DD1 vs D(kappa alpha)");
  items.insert(items.begin(), patch_item);
  return items;
}

}  // namespace

VerificationReport connection_independence(const CentralExtensionModel& model, const FormField& theta0,
                                           const FormField& theta1, const VerifyOptions& opts, double sign) {
  return assemble_report("prop23", model.name, opts, independence_items(model, theta0, theta1, opts, sign));
}

SignPin pin_connection_sign(const CentralExtensionModel& model, const FormField& theta0, const FormField& theta1,
                            const VerifyOptions& opts) {
  SignPin pin;
  pin.residual_plus = connection_independence(model, theta0, theta1, opts, 1.0).max_residual;
  pin.residual_minus = connection_independence(model, theta0, theta1, opts, -1.0).max_residual;
  pin.sign = pin.residual_minus <= pin.residual_plus ? -1.0 : 1.0;
  return pin;
}

namespace {

// Smooth circle-valued gauge on G; quadratic in the ambient vector so it is
// unchanged under the sign ambiguity of quaternion representatives.
Dual gauge_angle(std::span<const Dual> g) {
  Dual tau = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i; j < g.size(); ++j) {
      tau += std::sin(1.0 + static_cast<double>(i) + 2.0 * static_cast<double>(j)) * g[i] * g[j];
    }
  }
  return 0.5 * tau;
}

}  // namespace

CentralExtensionModel regauged(const CentralExtensionModel& model) {
  CentralExtensionModel out = model;
  out.name = model.name + "/regauged";
  for (auto& patch : out.cover) {
    auto sec = patch.section;
    auto act = model.circle_action;
    patch.section = [sec, act](std::span<const Dual> g) {
      DualVec in{gauge_angle(g)};
      const DualVec s = sec(g);
      in.insert(in.end(), s.begin(), s.end());
      return act(in);
    };
  }
  return out;
}

SignPin pin_phase_sign(const CentralExtensionModel& model, const FormField& theta, const VerifyOptions& opts) {
  const CentralExtensionModel other = regauged(model);
  const auto samples = sample_frames(*model.ng->level(2), 1, opts.samples, mix(opts.seed, 24));
  auto residual = [&](double s) {
    const FormField a = shat_delta_theta(model, theta, s);
    const FormField b = shat_delta_theta(other, theta, s);
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

VerificationReport check_model(const CentralExtensionModel& model, const FormField& theta, const VerifyOptions& opts) {
  const auto& G = *model.base;
  const auto& H = *model.total;
  const int n = opts.samples;
  std::vector<double> hom, sec, central, cover, vert, invariant, kernel;
  Rng rng(mix(opts.seed, 25));
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 0; s < n; ++s) {
    const auto a = H.space->ambient(H.space->sample(rng));
    const auto b = H.space->ambient(H.space->sample(rng));
    const auto ab = H.mul(a, b);
    const auto rho = [&](const std::vector<double>& x) { return values(model.projection(lift(x))); };
    hom.push_back(G.distance(rho(ab), G.mul(rho(a), rho(b))));

    const double u = angle(rng);
    const auto act = [&](double t, const std::vector<double>& x) {
      DualVec in{Dual(t)};
      const DualVec lx = lift(x);
      in.insert(in.end(), lx.begin(), lx.end());
      return values(model.circle_action(in));
    };
    const double left = H.distance(H.mul(act(u, a), b), H.mul(a, act(u, b)));
    const double right = H.distance(act(u, ab), H.mul(a, act(u, b)));
    central.push_back(std::max(left, right));

    const auto ku = act(u, H.identity);
    const double phase = model.kernel_phase(lift(ku)).v;
    kernel.push_back(std::abs(std::remainder(phase - u, 2.0 * std::numbers::pi)));

    const auto g = G.space->ambient(G.space->sample(rng));
    double worst = 0.0;
    bool covered = false;
    for (const auto& patch : model.cover) {
      if (patch.margin(g) <= 0.0) continue;
      covered = true;
      worst = std::max(worst, G.distance(rho(values(patch.section(lift(g)))), g));
    }
    sec.push_back(worst);
    cover.push_back(covered ? 0.0 : 1.0);

    if (!theta.is_zero()) {
      const Point p = H.space->from_ambient(a);
      const Eigen::VectorXd v = vertical_vector(model, p);
      const Eigen::VectorXd fv[] = {v};
      vert.push_back(std::abs(theta(p, fv) - 1.0));

      Eigen::VectorXd w(H.space->dimension());
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = normal(rng);
      const DualVec curve = H.space->ambient(p.chart, along(p, w));
      DualVec in{Dual(u)};
      in.insert(in.end(), curve.begin(), curve.end());
      const Eigen::VectorXd fw[] = {w};
      invariant.push_back(std::abs(evaluate_along(theta, model.circle_action(in)) - theta(p, fw)));
    }
  }
  std::vector<IdentityResult> items;
  items.push_back(summarize("rho homomorphism", hom, opts.tol));
  items.push_back(summarize("rho eta = id", sec, opts.tol));
  items.push_back(summarize("centrality", central, opts.tol));
  items.push_back(summarize("cover", cover, opts.tol));
  items.push_back(summarize("kernel phase", kernel, opts.tol));
  if (!theta.is_zero()) {
    items.push_back(summarize("theta(vertical) = 1", vert, opts.tol));
    items.push_back(summarize("circle invariance of theta", invariant, opts.tol));
  }
  return assemble_report("invariants", model.name, opts, std::move(items));
}

}  // namespace ddv
