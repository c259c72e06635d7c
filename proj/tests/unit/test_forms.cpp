#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ddverify/errors.hpp"
#include "ddverify/extension.hpp"
#include "ddverify/quadrature.hpp"
#include "ddverify/sampling.hpp"
#include "generators.hpp"

using namespace ddv;

namespace {

double max_difference(const FormField& a, const FormField& b, int samples, std::uint64_t seed) {
  const auto s = sample_frames(*a.base(), a.degree(), samples, seed);
  double worst = 0.0;
  for (const auto& f : s) worst = std::max(worst, std::abs(a(f.point, f.frame) - b(f.point, f.frame)));
  return worst;
}

double max_abs(const FormField& a, int samples, std::uint64_t seed) {
  return max_difference(a, FormField::zero(a.base(), a.degree()), samples, seed);
}

}  // namespace

TEST_CASE("gauss-legendre is exact to degree 2n-1") {
  for (int n : {1, 2, 5, 8, 16}) {
    const GaussRule r = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(std::abs(s - 1.0 / (k + 1)) < 1e-13);
    }
  }
}

TEST_CASE("integral of kappa dx^dy over the unit square") {
  const SpacePtr square = box_space({0.0, 0.0}, {1.0, 1.0});
  const FormField area = kKappa * coordinate_form(square, {0, 1});
  const IntegrationResult r = integrate_cube(area, identity_map(square));
  CHECK(r.converged);
  CHECK(std::abs(r.value - (-1.0 / (2.0 * std::numbers::pi))) < 1e-10);
}

TEST_CASE("d of d vanishes on random polynomial forms") {
  const SpacePtr r3 = euclidean_space(3);
  gen::for_all(10, 21, [&](gen::Gen& g, int i) {
    CAPTURE(i);
    for (int q : {0, 1}) {
      const FormField w = gen::polynomial_form(g, r3, q);
      CHECK(max_abs(ext_derivative(ext_derivative(w)), 20, 7) < 1e-6);
    }
  });
}

TEST_CASE("exterior derivative of f dg is df ^ dg") {
  const SpacePtr r3 = euclidean_space(3);
  gen::for_all(10, 22, [&](gen::Gen& g, int i) {
    CAPTURE(i);
    const auto f = gen::quadratic(g, 3);
    const auto h = gen::quadratic(g, 3);
    const AmbientScalar one = [](std::span<const Dual>) { return Dual(1.0); };
    const FormField w = f_dg_form(r3, f, h);
    const FormField expect = wedge(f_dg_form(r3, one, f), f_dg_form(r3, one, h));
    CHECK(max_difference(ext_derivative(w), expect, 20, 8) < 1e-8);
  });
}

TEST_CASE("naturality: d commutes with pullback") {
  const SpacePtr r2 = euclidean_space(2);
  const SpacePtr r3 = euclidean_space(3);
  gen::for_all(10, 23, [&](gen::Gen& g, int i) {
    CAPTURE(i);
    const SmoothMap f = gen::polynomial_map(g, r2, r3);
    const FormField w = gen::polynomial_form(g, r3, 1);
    CHECK(max_difference(pullback(f, ext_derivative(w)), ext_derivative(pullback(f, w)), 20, 9) < 1e-6);
  });
}

TEST_CASE("leibniz rule for the wedge product") {
  const SpacePtr r3 = euclidean_space(3);
  gen::for_all(10, 24, [&](gen::Gen& g, int i) {
    CAPTURE(i);
    const FormField a = gen::polynomial_form(g, r3, 1, 1);
    const FormField b = gen::polynomial_form(g, r3, 1, 1);
    const FormField lhs = ext_derivative(wedge(a, b));
    const FormField rhs = wedge(ext_derivative(a), b) - wedge(a, ext_derivative(b));
    CHECK(max_difference(lhs, rhs, 20, 10) < 1e-7);
  });
}

TEST_CASE("antisymmetry and multilinearity") {
  const SpacePtr r3 = euclidean_space(3);
  gen::for_all(10, 25, [&](gen::Gen& g, int i) {
    CAPTURE(i);
    const FormField w2 = gen::polynomial_form(g, r3, 2);
    const FormField w3 = wedge(w2, gen::polynomial_form(g, r3, 1, 1));
    CHECK(antisymmetry_residual(w2, 100, 3) < 1e-9);
    CHECK(antisymmetry_residual(w3, 100, 3) < 1e-9);
    CHECK(multilinearity_residual(w2, 100, 4) < 1e-9);
    CHECK(multilinearity_residual(w3, 100, 4) < 1e-9);
  });
}

TEST_CASE("stokes on the unit square pushed into R^3") {
  const SpacePtr square = box_space({0.0, 0.0}, {1.0, 1.0});
  const SpacePtr unit = box_space({0.0}, {1.0});
  const SpacePtr r3 = euclidean_space(3);
  gen::for_all(8, 26, [&](gen::Gen& g, int i) {
    CAPTURE(i);
    const SmoothMap sigma = gen::polynomial_map(g, square, r3);
    const FormField w = gen::polynomial_form(g, r3, 1);
    const double interior = integrate_cube(ext_derivative(w), sigma).value;
    // Counterclockwise boundary of the square.
    const std::array<std::function<DualVec(Dual)>, 4> edges = {
        [](Dual t) { return DualVec{t, Dual(0.0)}; }, [](Dual t) { return DualVec{Dual(1.0), t}; },
        [](Dual t) { return DualVec{1.0 - t, Dual(1.0)}; }, [](Dual t) { return DualVec{Dual(0.0), 1.0 - t}; }};
    double boundary = 0.0;
    for (const auto& e : edges) {
      const SmoothMap side(unit, r3, [&sigma, e](std::span<const Dual> t) { return sigma.apply(e(t[0])); });
      boundary += integrate_cube(w, side).value;
    }
    CHECK(std::abs(interior - boundary) < 1e-8);
  });
}

TEST_CASE("differencing near the chart edge raises BoundaryError") {
  const SpacePtr square = box_space({0.0, 0.0}, {1.0, 1.0});
  // A raw evaluator carries no analytic derivative, so d must difference.
  const FormField w(square, 1, [](const Point& p, Frame f) { return p.coords[0] * f[0](1); }, "x dy");
  const FormField dw = ext_derivative(w);
  const std::vector<Eigen::VectorXd> frame = {Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)};
  CHECK(dw(square->make_point(0, {0.5, 0.5}), frame) == doctest::Approx(1.0));
  // The box chart is padded by a quarter of its width; its edge is at -0.25.
  CHECK_THROWS_AS(dw(square->make_point(0, {-0.25 + 1e-5, 0.5}), frame), BoundaryError);
}

TEST_CASE("linear_combine of zero forms is the zero form") {
  const SpacePtr r2 = euclidean_space(2);
  const std::vector<FormField> zeros = {FormField::zero(r2, 1), FormField::zero(r2, 1)};
  const std::vector<double> c = {1.0, -2.0};
  CHECK(linear_combine(c, zeros).is_zero());
}
