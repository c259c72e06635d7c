#include "ddverify/simplicial.hpp"

#include <algorithm>
#include <cmath>

#include "ddverify/errors.hpp"

namespace ddv {

DualVec LieGroup::mul(std::span<const Dual> a, std::span<const Dual> b) const {
  DualVec ab(a.begin(), a.end());
  ab.insert(ab.end(), b.begin(), b.end());
  return multiply(ab);
}

std::vector<double> LieGroup::mul(std::span<const double> a, std::span<const double> b) const {
  const DualVec da = lift(a);
  const DualVec db = lift(b);
  return values(mul(std::span<const Dual>(da), std::span<const Dual>(db)));
}

std::vector<double> LieGroup::inv(std::span<const double> a) const {
  const DualVec da = lift(a);
  return values(inverse(da));
}

namespace {

std::span<const Dual> block(std::span<const Dual> x, int k, std::size_t a) {
  return x.subspan(static_cast<std::size_t>(k) * a, a);
}

AmbientMap ng_face(const GroupPtr& g, int p, int i) {
  const auto a = static_cast<std::size_t>(g->ambient_dimension());
  return [g, p, i, a](std::span<const Dual> x) {
    DualVec out;
    out.reserve(a * static_cast<std::size_t>(std::max(p - 1, 0)));
    for (int k = 0; k < p; ++k) {
      if (i == 0 && k == 0) continue;
      if (i == p && k == p - 1) continue;
      if (i > 0 && i < p && k == i - 1) {
        const auto prod = g->mul(block(x, k, a), block(x, k + 1, a));
        out.insert(out.end(), prod.begin(), prod.end());
        ++k;
        continue;
      }
      const auto b = block(x, k, a);
      out.insert(out.end(), b.begin(), b.end());
    }
    return out;
  };
}

AmbientMap nbar_face(const GroupPtr& g, int p, int i) {
  const auto a = static_cast<std::size_t>(g->ambient_dimension());
  return [p, i, a](std::span<const Dual> x) {
    DualVec out;
    for (int k = 0; k <= p; ++k) {
      if (k == i) continue;
      const auto b = block(x, k, a);
      out.insert(out.end(), b.begin(), b.end());
    }
    return out;
  };
}

}  // namespace

SimplicialSpace::SimplicialSpace(GroupPtr group, NerveKind kind) : group_(std::move(group)), kind_(kind) {
  if (!group_) throw ContractViolation("SimplicialSpace: null group");
  const std::string tag = kind_ == NerveKind::NG ? "NG" : "NbarG";
  for (int p = 0; p <= kMaxLevel; ++p) {
    levels_.push_back(power_space(group_->space, factor_count(p), tag + "(" + std::to_string(p) + ")"));
  }
  faces_.resize(static_cast<std::size_t>(kMaxLevel + 1));
  for (int p = 1; p <= kMaxLevel; ++p) {
    for (int i = 0; i <= p; ++i) {
      auto fn = kind_ == NerveKind::NG ? ng_face(group_, p, i) : nbar_face(group_, p, i);
      faces_[static_cast<std::size_t>(p)].emplace_back(levels_[static_cast<std::size_t>(p)],
                                                       levels_[static_cast<std::size_t>(p - 1)], std::move(fn),
                                                       "e" + std::to_string(i));
    }
  }
}

const SpacePtr& SimplicialSpace::level(int p) const {
  if (p < 0 || p > kMaxLevel) throw ContractViolation("SimplicialSpace: level " + std::to_string(p) + " out of range");
  return levels_[static_cast<std::size_t>(p)];
}

const SmoothMap& SimplicialSpace::face(int p, int i) const {
  if (p < 1 || p > kMaxLevel || i < 0 || i > p)
    throw ContractViolation("SimplicialSpace: face (" + std::to_string(p) + "," + std::to_string(i) + ") out of range");
  return faces_[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
}

SimplicialPtr build_NG(GroupPtr group) { return std::make_shared<SimplicialSpace>(std::move(group), NerveKind::NG); }

SimplicialPtr build_NbarG(GroupPtr group) {
  return std::make_shared<SimplicialSpace>(std::move(group), NerveKind::NbarG);
}

SmoothMap gamma_map(const SimplicialSpace& nbar, const SimplicialSpace& ng, int p) {
  if (nbar.kind() != NerveKind::NbarG || ng.kind() != NerveKind::NG)
    throw ContractViolation("gamma_map: expects (N̄G, NG)");
  const GroupPtr g = nbar.group();
  const auto a = static_cast<std::size_t>(g->ambient_dimension());
  auto fn = [g, p, a](std::span<const Dual> x) {
    DualVec out;
    for (int k = 0; k < p; ++k) {
      const auto inv_next = g->inverse(block(x, k + 1, a));
      const auto prod = g->mul(block(x, k, a), std::span<const Dual>(inv_next));
      out.insert(out.end(), prod.begin(), prod.end());
    }
    return out;
  };
  return SmoothMap(nbar.level(p), ng.level(p), std::move(fn), "gamma");
}

FormField d_prime(const SimplicialSpace& space, int p, const FormField& form) {
  if (form.base()->name() != space.level(p)->name())
    throw ContractViolation("d_prime: form does not live on level " + std::to_string(p));
  std::vector<double> coeffs;
  std::vector<FormField> terms;
  for (int i = 0; i <= p + 1; ++i) {
    coeffs.push_back(i % 2 == 0 ? 1.0 : -1.0);
    terms.push_back(pullback(space.face(p + 1, i), form));
  }
  return linear_combine(coeffs, terms);
}

void BigradedCochain::set(int p, int q, FormField form) {
  components.insert_or_assign(std::make_pair(p, q), std::move(form));
}

const FormField* BigradedCochain::get(int p, int q) const {
  auto it = components.find({p, q});
  return it == components.end() ? nullptr : &it->second;
}

BigradedCochain total_D(const BigradedCochain& cochain, DiffOptions opts) {
  std::map<std::pair<int, int>, std::vector<FormField>> parts;
  for (const auto& [key, form] : cochain.components) {
    const auto [p, q] = key;
    parts[{p + 1, q}].push_back(d_prime(*cochain.space, p, form));
    const double sign = p % 2 == 0 ? 1.0 : -1.0;
    parts[{p, q + 1}].push_back(sign * ext_derivative(form, opts));
  }
  BigradedCochain out{cochain.space, cochain.total_degree + 1, {}};
  for (auto& [key, forms] : parts) {
    const std::vector<double> ones(forms.size(), 1.0);
    out.set(key.first, key.second, linear_combine(ones, forms));
  }
  return out;
}

BigradedCochain pullback_gamma(const BigradedCochain& ng_cochain, const SimplicialPtr& nbar) {
  BigradedCochain out{nbar, ng_cochain.total_degree, {}};
  for (const auto& [key, form] : ng_cochain.components) {
    out.set(key.first, key.second, pullback(gamma_map(*nbar, *ng_cochain.space, key.first), form));
  }
  return out;
}

BigradedCochain scale(const BigradedCochain& c, double s) {
  BigradedCochain out{c.space, c.total_degree, {}};
  for (const auto& [key, form] : c.components) out.set(key.first, key.second, s * form);
  return out;
}

BigradedCochain difference(const BigradedCochain& a, const BigradedCochain& b) {
  BigradedCochain out{a.space, a.total_degree, {}};
  for (const auto& [key, form] : a.components) out.set(key.first, key.second, form);
  for (const auto& [key, form] : b.components) {
    if (const auto* f = out.get(key.first, key.second)) {
      out.set(key.first, key.second, *f - form);
    } else {
      out.set(key.first, key.second, -1.0 * form);
    }
  }
  return out;
}

namespace {

std::uint64_t component_seed(std::uint64_t seed, int p, int q) {
  return seed * 6364136223846793005ULL + static_cast<std::uint64_t>(p * 1009 + q * 17 + 1);
}

std::string bidegree(const std::string& prefix, int p, int q) {
  return prefix + "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

}  // namespace

VerificationReport verify_cocycle(const BigradedCochain& cochain, const VerifyOptions& opts, std::string check,
                                  std::string model) {
  const BigradedCochain d = total_D(cochain);
  std::vector<IdentityResult> items;
  for (const auto& [key, form] : d.components) {
    const auto [p, q] = key;
    const auto samples = sample_frames(*cochain.space->level(p), q, opts.samples, component_seed(opts.seed, p, q));
    const auto res = evaluate_samples(samples, [&](const FrameSample& s) { return form(s.point, s.frame); },
                                      opts.threads);
    items.push_back(summarize(bidegree("D", p, q), res, opts.tol));
  }
  return assemble_report(std::move(check), std::move(model), opts, std::move(items));
}

std::vector<IdentityResult> compare_cochains(const BigradedCochain& a, const BigradedCochain& b,
                                             const VerifyOptions& opts, const std::string& prefix) {
  std::vector<std::pair<int, int>> keys;
  for (const auto& [key, f] : a.components) keys.push_back(key);
  for (const auto& [key, f] : b.components) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<IdentityResult> items;
  for (const auto& [p, q] : keys) {
    const FormField* fa = a.get(p, q);
    const FormField* fb = b.get(p, q);
    const auto samples = sample_frames(*a.space->level(p), q, opts.samples, component_seed(opts.seed, p, q));
    const auto res = evaluate_samples(
        samples,
        [&](const FrameSample& s) {
          const double va = fa ? (*fa)(s.point, s.frame) : 0.0;
          const double vb = fb ? (*fb)(s.point, s.frame) : 0.0;
          return va - vb;
        },
        opts.threads);
    items.push_back(summarize(bidegree(prefix, p, q), res, opts.tol));
  }
  return items;
}

double simplicial_identity_residual(const SimplicialSpace& space, int p, int samples, std::uint64_t seed) {
  if (p < 2) return 0.0;
  Rng rng(seed);
  const GroupPtr g = space.group();
  const auto a = static_cast<std::size_t>(g->ambient_dimension());
  const int blocks = space.factor_count(p - 2);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Point x = space.level(p)->sample(rng);
    const DualVec amb = lift(space.level(p)->ambient(x));
    for (int j = 1; j <= p; ++j) {
      for (int i = 0; i < j; ++i) {
        const auto lhs = values(space.face(p - 1, i).apply(space.face(p, j).apply(amb)));
        const auto rhs = values(space.face(p - 1, j - 1).apply(space.face(p, i).apply(amb)));
        for (int k = 0; k < blocks; ++k) {
          const std::span<const double> l(lhs.data() + static_cast<std::size_t>(k) * a, a);
          const std::span<const double> r(rhs.data() + static_cast<std::size_t>(k) * a, a);
          worst = std::max(worst, g->distance(l, r));
        }
      }
    }
  }
  return worst;
}

}  // namespace ddv
