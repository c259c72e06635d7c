#include "ddverify/cech.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ddverify/errors.hpp"

namespace ddv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return seed * 0x9E3779B97F4A7C15ULL + salt; }

DualVec along(const Point& p, const Eigen::VectorXd& v) {
  DualVec x(p.coords.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = Dual(p.coords[i], v(static_cast<Eigen::Index>(i)));
  return x;
}

std::vector<FrameSample> frames_in(const CoveredBase& base, std::vector<int> sets, int degree, int count,
                                   std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<FrameSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    FrameSample f;
    f.point = base.sample_intersection(sets, rng);
    for (int k = 0; k < degree; ++k) {
      Eigen::VectorXd v(base.M->dimension());
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
      f.frame.push_back(std::move(v));
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string tag(std::initializer_list<int> idx) {
  std::string s;
  for (int i : idx) s += std::to_string(i);
  return s;
}

std::vector<double> identity2_residuals(const CoboundaryBundle& bundle, const FormField& theta,
                                        const std::vector<FrameSample>& samples, int a, int b, int c,
                                        int threads) {
  const FormField shat = shat_delta_theta(bundle.model, theta);
  const auto& level2 = bundle.model.ng->level(2);
  const auto& data = bundle.data;
  auto pair_fn = [ab = data.g(a, b), bc = data.g(b, c)](std::span<const Dual> m) {
    DualVec out = ab(m);
    const DualVec second = bc(m);
    out.insert(out.end(), second.begin(), second.end());
    return out;
  };
  const FormField pulled = pullback(SmoothMap(bundle.base.M, level2, pair_fn, "(g_ab,g_bc)"), shat);
  return evaluate_samples(
      samples,
      [&](const FrameSample& s) {
        const DualVec m = bundle.base.M->ambient(s.point.chart, along(s.point, s.frame[0]));
        const double lhs = pulled(s.point, s.frame) + cech_phase(bundle, a, b, c, m).d;
        const double rhs = evaluate_along(theta, data.ghat(b, c)(m)) - evaluate_along(theta, data.ghat(a, c)(m)) +
                           evaluate_along(theta, data.ghat(a, b)(m));
        return lhs - rhs;
      },
      threads);
}

}  // namespace

bool CoveredBase::contains(std::span<const int> sets, std::span<const double> m, double min_margin) const {
  for (int k : sets) {
    if (!(cover.at(static_cast<std::size_t>(k)).margin(m) > min_margin)) return false;
  }
  return true;
}

Point CoveredBase::sample_intersection(std::span<const int> sets, Rng& rng, double min_margin) const {
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    Point p = M->sample(rng);
    if (contains(sets, M->ambient(p), min_margin)) return p;
  }
  throw CoverageError(M->name() + ": intersection too small to sample");
}

Dual cech_phase(const CoboundaryBundle& bundle, int a, int b, int c, std::span<const Dual> m) {
  const auto& H = *bundle.model.total;
  const DualVec bc = bundle.data.ghat(b, c)(m);
  const DualVec ac_inv = H.inverse(bundle.data.ghat(a, c)(m));
  const DualVec ab = bundle.data.ghat(a, b)(m);
  const DualVec left = H.mul(std::span<const Dual>(bc), std::span<const Dual>(ac_inv));
  const DualVec k = H.mul(std::span<const Dual>(left), std::span<const Dual>(ab));
  const auto image = values(bundle.model.projection(k));
  const double off = bundle.model.base->distance(image, bundle.model.base->identity);
  if (!(off <= 1e-8))
    throw ModelInconsistency(bundle.name + ": c_" + tag({a, b, c}) + " leaves ker rho (lift inconsistency)");
  return bundle.model.kernel_phase(k);
}

FormField cech_c21(const CoboundaryBundle& bundle, const FormField& theta, int a, int b) {
  const SmoothMap g(bundle.base.M, bundle.model.ng->level(1), bundle.data.g(a, b), "g_" + tag({a, b}));
  return pullback(g, chern_form(bundle.model, theta));
}

FormField cech_c12(const CoboundaryBundle& bundle, const FormField& theta, int a, int b, int c) {
  auto pair_fn = [ab = bundle.data.g(a, b), bc = bundle.data.g(b, c)](std::span<const Dual> m) {
    DualVec out = ab(m);
    const DualVec second = bc(m);
    out.insert(out.end(), second.begin(), second.end());
    return out;
  };
  const SmoothMap pair(bundle.base.M, bundle.model.ng->level(2), pair_fn, "(g_ab,g_bc)");
  return -kKappa * pullback(pair, shat_delta_theta(bundle.model, theta));
}

CoboundaryBundle regauge_lift(const CoboundaryBundle& bundle, int a, int b,
                              std::function<Dual(std::span<const Dual> m)> u) {
  CoboundaryBundle out = bundle;
  out.name = bundle.name + "/regauged";
  const auto act = bundle.model.circle_action;
  auto twist = [act, u](AmbientMap lift, double sign) -> AmbientMap {
    return [act, u, lift, sign](std::span<const Dual> m) {
      DualVec in{sign * u(m)};
      const DualVec x = lift(m);
      in.insert(in.end(), x.begin(), x.end());
      return act(in);
    };
  };
  const int n = bundle.data.count;
  out.data.lifts[static_cast<std::size_t>(a * n + b)] = twist(bundle.data.ghat(a, b), 1.0);
  out.data.lifts[static_cast<std::size_t>(b * n + a)] = twist(bundle.data.ghat(b, a), -1.0);
  return out;
}

VerificationReport verify_thm31(const CoboundaryBundle& bundle, const FormField& theta, const VerifyOptions& opts) {
  const int n = bundle.data.count;
  std::vector<IdentityResult> items;
  std::vector<double> id1, id2, quad, gauge, id2_gauged;

  // g_ab^* c1(theta) = kappa d(ghat_ab^* theta).
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const FormField lhs = cech_c21(bundle, theta, a, b);
      const SmoothMap lift(bundle.base.M, bundle.model.total->space, bundle.data.ghat(a, b), "ghat");
      const FormField rhs = kKappa * ext_derivative(pullback(lift, theta));
      const auto samples = frames_in(bundle.base, {a, b}, 2, opts.samples, mix(opts.seed, static_cast<std::uint64_t>(10 * a + b)));
      const auto res = evaluate_samples(
          samples, [&](const FrameSample& s) { return lhs(s.point, s.frame) - rhs(s.point, s.frame); }, opts.threads);
      id1.insert(id1.end(), res.begin(), res.end());
    }
  }

  // Gauge: multiply ghat_01 by e^{iu}; c changes by the Cech coboundary of u.
  auto u = [](std::span<const Dual> m) {
    Dual s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s += (0.3 + 0.2 * static_cast<double>(i)) * m[i] * m[(i + 1) % m.size()];
    return s;
  };
  const CoboundaryBundle gauged = regauge_lift(bundle, 0, 1, u);
  auto u_pair = [&](int a, int b, std::span<const Dual> m) {
    if (a == 0 && b == 1) return u(m).v;
    if (a == 1 && b == 0) return -u(m).v;
    return 0.0;
  };

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        const auto samples = frames_in(bundle.base, {a, b, c}, 1, opts.samples,
                                       mix(opts.seed, static_cast<std::uint64_t>(100 * a + 10 * b + c)));
        auto r = identity2_residuals(bundle, theta, samples, a, b, c, opts.threads);
        id2.insert(id2.end(), r.begin(), r.end());
        if (n >= 2) {
          r = identity2_residuals(gauged, theta, samples, a, b, c, opts.threads);
          id2_gauged.insert(id2_gauged.end(), r.begin(), r.end());
          r = evaluate_samples(
              samples,
              [&](const FrameSample& s) {
                const DualVec m = lift(bundle.base.M->ambient(s.point));
                const double before = cech_phase(bundle, a, b, c, m).v;
                const double after = cech_phase(gauged, a, b, c, m).v;
                const double du = u_pair(b, c, m) - u_pair(a, c, m) + u_pair(a, b, m);
                return std::remainder(after - before - du, kTwoPi);
              },
              opts.threads);
          gauge.insert(gauge.end(), r.begin(), r.end());
        }
      }
    }
  }

  // delta c = 0 mod 2 pi on quadruple overlaps.
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        for (int d = c + 1; d < n; ++d) {
          const auto samples = frames_in(bundle.base, {a, b, c, d}, 0, opts.samples,
                                         mix(opts.seed, static_cast<std::uint64_t>(1000 * a + 100 * b + 10 * c + d)));
          const auto r = evaluate_samples(
              samples,
              [&](const FrameSample& s) {
                const DualVec m = lift(bundle.base.M->ambient(s.point));
                const double dc = cech_phase(bundle, b, c, d, m).v - cech_phase(bundle, a, c, d, m).v +
                                  cech_phase(bundle, a, b, d, m).v - cech_phase(bundle, a, b, c, m).v;
                return std::remainder(dc, kTwoPi);
              },
              opts.threads);
          quad.insert(quad.end(), r.begin(), r.end());
        }
      }
    }
  }

  items.push_back(summarize("g*c1 = kappa d(ghat*theta)", id1, opts.tol));
  items.push_back(summarize("(g,g)*shat delta theta + d arg c = cech delta(ghat*theta)", id2, opts.tol));
  items.push_back(summarize("delta c = 0 on quadruple overlaps", quad, opts.tol));
  items.push_back(summarize("gauge covariance of c", gauge, opts.tol));
  items.push_back(summarize("identity 2 after lift change", id2_gauged, opts.tol));
  return assemble_report("thm31", bundle.name, opts, std::move(items));
}

}  // namespace ddv
