#pragma once

// Small seeded generators for property-style tests: each property runs over
// `cases` independent draws; the case index is handed to the property so it
// can be captured in failure messages.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ddverify/forms.hpp"
#include "ddverify/manifold.hpp"

namespace gen {

struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  std::vector<double> vec(int n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  Eigen::VectorXd vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(-1.0, 1.0);
    return v;
  }

  std::vector<Eigen::VectorXd> frame(int n, int q) {
    std::vector<Eigen::VectorXd> f;
    for (int i = 0; i < q; ++i) f.push_back(vector(n));
    return f;
  }

  // Unit quaternion with w > 0.3, well inside chart 0 of SO(3).
  std::array<double, 4> quaternion() {
    for (;;) {
      std::array<double, 4> q{};
      double n2 = 0.0;
      for (auto& x : q) {
        x = uniform(-1.0, 1.0);
        n2 += x * x;
      }
      if (n2 < 1e-2 || n2 > 1.0) continue;
      const double n = std::sqrt(n2);
      for (auto& x : q) x /= n;
      if (q[0] < 0) for (auto& x : q) x = -x;
      if (q[0] > 0.3) return q;
    }
  }

  std::mt19937_64 rng;
};

/// Runs prop(g, case) for `cases` draws; the case seed is derived from `seed`.
template <class Prop>
void for_all(int cases, std::uint64_t seed, Prop prop) {
  for (int i = 0; i < cases; ++i) {
    Gen g(seed * 1000003ULL + static_cast<std::uint64_t>(i));
    prop(g, i);
  }
}

/// A polynomial of total degree <= 2 in n ambient variables with random coefficients.
struct Quadratic {
  double c0 = 0.0;
  std::vector<double> lin;
  std::vector<double> quad;  // n x n, upper triangle used

  ddv::Dual operator()(std::span<const ddv::Dual> x) const {
    const auto n = lin.size();
    ddv::Dual s = c0;
    for (std::size_t i = 0; i < n; ++i) {
      s += lin[i] * x[i];
      for (std::size_t j = i; j < n; ++j) s += quad[i * n + j] * x[i] * x[j];
    }
    return s;
  }
};

inline Quadratic quadratic(Gen& g, int n) {
  Quadratic p;
  p.c0 = g.uniform(-1.0, 1.0);
  p.lin = g.vec(n);
  p.quad = g.vec(n * n);
  return p;
}

/// Random polynomial q-form (q = 0, 1, 2) on a space with n ambient coordinates:
/// sums of f dg and of wedges of such terms.
inline ddv::FormField polynomial_form(Gen& g, const ddv::SpacePtr& space, int q, int terms = 2) {
  const int n = space->ambient_dimension();
  if (q == 0) return ddv::function_form(space, quadratic(g, n), "f");
  std::vector<ddv::FormField> parts;
  for (int t = 0; t < terms; ++t) {
    ddv::FormField one = ddv::f_dg_form(space, quadratic(g, n), quadratic(g, n), "f dg");
    if (q == 1) {
      parts.push_back(std::move(one));
    } else {
      ddv::FormField other = ddv::f_dg_form(space, quadratic(g, n), quadratic(g, n), "f dg");
      parts.push_back(ddv::wedge(one, other));
    }
  }
  const std::vector<double> ones(parts.size(), 1.0);
  return ddv::linear_combine(ones, parts);
}

/// Random polynomial map R^n -> R^m (componentwise quadratics).
inline ddv::SmoothMap polynomial_map(Gen& g, const ddv::SpacePtr& source, const ddv::SpacePtr& target) {
  std::vector<Quadratic> comps;
  for (int i = 0; i < target->ambient_dimension(); ++i) {
    Quadratic p = quadratic(g, source->ambient_dimension());
    for (auto& c : p.quad) c *= 0.3;
    comps.push_back(std::move(p));
  }
  return ddv::SmoothMap(source, target, [comps](std::span<const ddv::Dual> x) {
    ddv::DualVec y;
    for (const auto& c : comps) y.push_back(c(x));
    return y;
  });
}

}  // namespace gen
