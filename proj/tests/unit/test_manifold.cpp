#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ddverify/errors.hpp"
#include "ddverify/models.hpp"
#include "generators.hpp"

using namespace ddv;

TEST_CASE("chart transitions are mutually inverse") {
  CHECK(transition_roundtrip_residual(*so3_group()->space, 200, 1) < 1e-12);
  CHECK(transition_roundtrip_residual(*u2_group()->space, 200, 2) < 1e-12);
  CHECK(transition_roundtrip_residual(*circle_space(), 50, 3) < 1e-12);
  CHECK(transition_roundtrip_residual(*power_space(so3_group()->space, 2), 100, 4) < 1e-12);
}

TEST_CASE("chain rule for random polynomial maps") {
  const SpacePtr r3 = euclidean_space(3);
  const SpacePtr r2 = euclidean_space(2);
  gen::for_all(20, 11, [&](gen::Gen& g, int) {
    const SmoothMap h = gen::polynomial_map(g, r3, r2);
    const SmoothMap f = gen::polynomial_map(g, r2, r3);
    CHECK(chain_rule_residual(f, h, 10, 5) < 1e-10);
  });
}

TEST_CASE("dual and differenced jacobians agree") {
  const SpacePtr r3 = euclidean_space(3);
  gen::for_all(10, 12, [&](gen::Gen& g, int) {
    const SmoothMap f = gen::polynomial_map(g, r3, r3);
    const Point p = r3->make_point(0, g.vec(3));
    const Eigen::MatrixXd a = f.jacobian(p, JacobianMode::Dual);
    const Eigen::MatrixXd b = f.jacobian(p, JacobianMode::CentralDifference);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-7);
  });
}

TEST_CASE("so3 charts cover the group and respect the quaternion sign") {
  const SpacePtr so3 = so3_group()->space;
  gen::for_all(100, 13, [&](gen::Gen& g, int) {
    const auto q = g.quaternion();
    const std::vector<double> minus = {-q[0], -q[1], -q[2], -q[3]};
    const Point a = so3->from_ambient(q);
    const Point b = so3->from_ambient(minus);
    CHECK(a.chart == b.chart);
    CHECK(so3_group()->distance(so3->ambient(a), minus) < 1e-12);
  });
}

TEST_CASE("periodic coordinates are reduced and differences wrapped") {
  const SpacePtr s1 = circle_space();
  const Point p = s1->make_point(0, {7.0});
  CHECK(p.coords[0] == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
  CHECK(std::abs(s1->wrap_difference(0, 2.0 * std::numbers::pi - 0.1)) == doctest::Approx(0.1));
}

TEST_CASE("product points split and join") {
  const SpacePtr so3 = so3_group()->space;
  const SpacePtr p3 = power_space(so3, 3);
  CHECK(p3->dimension() == 9);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const Point x = p3->sample(rng);
    const auto parts = split_point(*p3, x);
    REQUIRE(parts.size() == 3);
    const Point y = join_points(*p3, parts);
    CHECK(y.chart == x.chart);
    for (std::size_t k = 0; k < x.coords.size(); ++k) CHECK(y.coords[k] == x.coords[k]);
  }
}

TEST_CASE("contract violations") {
  const SpacePtr r2 = euclidean_space(2, 1.0);
  CHECK_THROWS_AS(r2->make_point(3, {0.0, 0.0}), ContractViolation);
  CHECK_THROWS_AS(r2->make_point(0, {0.0}), ContractViolation);
  CHECK_THROWS_AS(r2->make_point(0, {2.0, 0.0}), ContractViolation);
}
