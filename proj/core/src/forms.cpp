#include "ddverify/forms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "ddverify/errors.hpp"
#include "ddverify/quadrature.hpp"

namespace ddv {

namespace {

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a->dimension() == b->dimension() && a->ambient_dimension() == b->ambient_dimension() &&
                    a->name() == b->name() && a->charts().size() == b->charts().size());
}

std::vector<Eigen::VectorXd> drop(Frame frame, std::size_t skip) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    if (i != skip) out.push_back(frame[i]);
  }
  return out;
}

// Indices of the next p-subset of {0..n-1} in lexicographic order.
bool next_combination(std::vector<int>& idx, int n) {
  const int p = static_cast<int>(idx.size());
  for (int i = p - 1; i >= 0; --i) {
    if (idx[static_cast<std::size_t>(i)] < n - p + i) {
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < p; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

Eigen::VectorXd gaussian_vector(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

}  // namespace

FormField::FormField(SpacePtr base, int degree, FormEval eval, std::string label)
    : base_(std::move(base)), degree_(degree), eval_(std::move(eval)), label_(std::move(label)) {
  if (!base_) throw ContractViolation("FormField: null base space");
  if (degree_ < 0) throw ContractViolation("FormField: negative degree");
  if (degree_ > base_->dimension()) eval_ = nullptr;
}

FormField FormField::zero(SpacePtr base, int degree) { return FormField(std::move(base), degree, nullptr, "0"); }

double FormField::operator()(const Point& p, Frame frame) const {
  if (frame.size() != static_cast<std::size_t>(degree_))
    throw ContractViolation(label_ + ": expected " + std::to_string(degree_) + " tangent vectors");
  if (!eval_) return 0.0;
  return eval_(p, frame);
}

FormField& FormField::with_derivative(FormField d) {
  if (d.degree() != degree_ + 1) throw ContractViolation(label_ + ": derivative has wrong degree");
  derivative_ = std::make_shared<const FormField>(std::move(d));
  return *this;
}

FormField ext_derivative(const FormField& form, DiffOptions opts) {
  const auto& base = form.base();
  const int q = form.degree();
  if (q + 1 > base->dimension() || form.is_zero()) return FormField::zero(base, q + 1);
  if (const auto* d = form.analytic_derivative()) return *d;
  const double h = opts.step;
  const bool rich = opts.richardson;
  auto eval = [form, base, h, rich](const Point& p, Frame frame) {
    double total = 0.0;
    for (std::size_t i = 0; i < frame.size(); ++i) {
      const Eigen::VectorXd& v = frame[i];
      const double reach = v.cwiseAbs().maxCoeff();
      if (base->margin(p) <= 2.0 * h * reach) {
        throw BoundaryError(base->name() + ": differencing stencil leaves chart " +
                            base->charts()[static_cast<std::size_t>(p.chart)].label);
      }
      const auto rest = drop(frame, i);
      auto at = [&](double t) {
        Point moved{p.chart, p.coords};
        for (std::size_t k = 0; k < moved.coords.size(); ++k) moved.coords[k] += t * v(static_cast<Eigen::Index>(k));
        return form(moved, rest);
      };
      const double d1 = (at(h) - at(-h)) / (2.0 * h);
      double deriv = d1;
      if (rich) {
        const double d2 = (at(h / 2) - at(-h / 2)) / h;
        deriv = (4.0 * d2 - d1) / 3.0;
      }
      total += (i % 2 == 0 ? 1.0 : -1.0) * deriv;
    }
    return total;
  };
  return FormField(base, q + 1, std::move(eval), "d(" + form.label() + ")");
}

FormField pullback(const SmoothMap& map, const FormField& form) {
  if (!same_space(map.target(), form.base()))
    throw ContractViolation("pullback: " + map.name() + " lands in " + map.target()->name() + ", form lives on " +
                            form.base()->name());
  const int q = form.degree();
  if (form.is_zero() || q > map.source()->dimension()) return FormField::zero(map.source(), q);
  auto eval = [map, form, q](const Point& p, Frame frame) {
    const Point image = map(p);
    if (q == 0) return form(image, {});
    const Eigen::MatrixXd jac = map.jacobian(p, image.chart);
    std::vector<Eigen::VectorXd> pushed;
    pushed.reserve(frame.size());
    for (const auto& v : frame) pushed.emplace_back(jac * v);
    return form(image, pushed);
  };
  return FormField(map.source(), q, std::move(eval), map.name() + "*(" + form.label() + ")");
}

FormField wedge(const FormField& a, const FormField& b) {
  if (!same_space(a.base(), b.base())) throw ContractViolation("wedge: forms live on different spaces");
  const int p = a.degree();
  const int q = b.degree();
  if (a.is_zero() || b.is_zero() || p + q > a.base()->dimension()) return FormField::zero(a.base(), p + q);
  auto eval = [a, b, p, q](const Point& pt, Frame frame) {
    const int n = p + q;
    std::vector<int> idx(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) idx[static_cast<std::size_t>(i)] = i;
    double total = 0.0;
    do {
      std::vector<Eigen::VectorXd> left;
      std::vector<Eigen::VectorXd> right;
      int inversions = 0;
      std::size_t cursor = 0;
      for (int k = 0; k < n; ++k) {
        if (cursor < idx.size() && idx[cursor] == k) {
          left.push_back(frame[static_cast<std::size_t>(k)]);
          inversions += k - static_cast<int>(cursor);
          ++cursor;
        } else {
          right.push_back(frame[static_cast<std::size_t>(k)]);
        }
      }
      const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
      total += sign * a(pt, left) * b(pt, right);
    } while (p > 0 && next_combination(idx, n));
    return total;
  };
  return FormField(a.base(), p + q, std::move(eval), "(" + a.label() + ")^(" + b.label() + ")");
}

FormField linear_combine(std::span<const double> coeffs, std::span<const FormField> forms) {
  if (coeffs.size() != forms.size() || forms.empty())
    throw ContractViolation("linear_combine: coefficient/form count mismatch");
  const int q = forms[0].degree();
  const auto base = forms[0].base();
  std::vector<double> cs;
  std::vector<FormField> fs;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].degree() != q || !same_space(forms[i].base(), base))
      throw ContractViolation("linear_combine: forms differ in degree or base");
    if (forms[i].is_zero() || coeffs[i] == 0.0) continue;
    cs.push_back(coeffs[i]);
    fs.push_back(forms[i]);
  }
  if (fs.empty()) return FormField::zero(base, q);
  std::string label;
  for (std::size_t i = 0; i < fs.size(); ++i) label += (i ? "+" : "") + std::to_string(cs[i]) + "*" + fs[i].label();
  auto eval = [cs, fs](const Point& p, Frame frame) {
    double total = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) total += cs[i] * fs[i](p, frame);
    return total;
  };
  return FormField(base, q, std::move(eval), label);
}

FormField operator+(const FormField& a, const FormField& b) {
  const double c[] = {1.0, 1.0};
  const FormField f[] = {a, b};
  return linear_combine(c, f);
}

FormField operator-(const FormField& a, const FormField& b) {
  const double c[] = {1.0, -1.0};
  const FormField f[] = {a, b};
  return linear_combine(c, f);
}

FormField operator*(double s, const FormField& a) {
  const double c[] = {s};
  const FormField f[] = {a};
  return linear_combine(c, f);
}

FormField function_form(SpacePtr space, AmbientScalar f, std::string label) {
  auto sp = space;
  auto eval = [sp, f](const Point& p, Frame) {
    const DualVec x = lift(p.coords);
    return f(sp->ambient(p.chart, x)).v;
  };
  return FormField(std::move(space), 0, std::move(eval), std::move(label));
}

FormField f_dg_form(SpacePtr space, AmbientScalar f, AmbientScalar g, std::string label) {
  auto sp = space;
  auto eval = [sp, f, g](const Point& p, Frame frame) {
    DualVec x(p.coords.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = Dual(p.coords[i], frame[0](static_cast<Eigen::Index>(i)));
    const DualVec a = sp->ambient(p.chart, x);
    return f(a).v * g(a).d;
  };
  return FormField(std::move(space), 1, std::move(eval), std::move(label));
}

FormField coordinate_form(SpacePtr space, std::vector<int> indices, std::string label) {
  const int q = static_cast<int>(indices.size());
  auto eval = [indices, q](const Point&, Frame frame) {
    Eigen::MatrixXd m(q, q);
    for (int r = 0; r < q; ++r) {
      for (int c = 0; c < q; ++c) m(r, c) = frame[static_cast<std::size_t>(c)](indices[static_cast<std::size_t>(r)]);
    }
    return m.determinant();
  };
  return FormField(std::move(space), q, std::move(eval), std::move(label));
}

IntegrationResult integrate_cube(const FormField& form, const SmoothMap& cube_map, int nodes,
                                 double convergence_tol) {
  const int q = form.degree();
  if (cube_map.source()->dimension() != q)
    throw ContractViolation("integrate_cube: cube dimension differs from form degree");
  if (q == 0) {
    const Point p{0, {}};
    const double v = form(cube_map(p), {});
    return {v, v, true};
  }
  const FormField pulled = pullback(cube_map, form);
  std::vector<Eigen::VectorXd> frame;
  for (int i = 0; i < q; ++i) frame.push_back(Eigen::VectorXd::Unit(q, i));
  auto integrate = [&](int n) {
    const GaussRule rule = gauss_legendre(n);
    std::vector<int> idx(static_cast<std::size_t>(q), 0);
    double total = 0.0;
    while (true) {
      Point p{0, std::vector<double>(static_cast<std::size_t>(q))};
      double w = 1.0;
      for (int k = 0; k < q; ++k) {
        p.coords[static_cast<std::size_t>(k)] = rule.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
        w *= rule.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
      }
      total += w * pulled(p, frame);
      int k = 0;
      while (k < q && ++idx[static_cast<std::size_t>(k)] == n) idx[static_cast<std::size_t>(k++)] = 0;
      if (k == q) break;
    }
    return total;
  };
  IntegrationResult r;
  r.value = integrate(nodes);
  r.refined_value = integrate(2 * nodes);
  r.converged = std::abs(r.value - r.refined_value) <= convergence_tol * std::max(1.0, std::abs(r.refined_value));
  return r;
}

double antisymmetry_residual(const FormField& form, int samples, std::uint64_t seed) {
  const int q = form.degree();
  if (q < 2) return 0.0;
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Point p = form.base()->sample(rng);
    std::vector<Eigen::VectorXd> frame;
    for (int i = 0; i < q; ++i) frame.push_back(gaussian_vector(form.base()->dimension(), rng));
    const double base_value = form(p, frame);
    for (int i = 0; i < q; ++i) {
      for (int j = i + 1; j < q; ++j) {
        auto swapped = frame;
        std::swap(swapped[static_cast<std::size_t>(i)], swapped[static_cast<std::size_t>(j)]);
        worst = std::max(worst, std::abs(base_value + form(p, swapped)));
      }
    }
  }
  return worst;
}

double multilinearity_residual(const FormField& form, int samples, std::uint64_t seed) {
  const int q = form.degree();
  if (q < 1) return 0.0;
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  const int n = form.base()->dimension();
  for (int s = 0; s < samples; ++s) {
    const Point p = form.base()->sample(rng);
    std::vector<Eigen::VectorXd> frame;
    for (int i = 0; i < q; ++i) frame.push_back(gaussian_vector(n, rng));
    for (int i = 0; i < q; ++i) {
      const double a = normal(rng);
      const double b = normal(rng);
      const Eigen::VectorXd u = gaussian_vector(n, rng);
      const Eigen::VectorXd w = gaussian_vector(n, rng);
      auto with = [&](const Eigen::VectorXd& v) {
        auto f = frame;
        f[static_cast<std::size_t>(i)] = v;
        return form(p, f);
      };
      worst = std::max(worst, std::abs(with(a * u + b * w) - a * with(u) - b * with(w)));
    }
  }
  return worst;
}

}  // namespace ddv
