#include <doctest.h>

#include <cmath>

#include "ddverify/models.hpp"
#include "ddverify/simplicial.hpp"
#include "generators.hpp"

using namespace ddv;

namespace {

double max_abs(const FormField& a, int samples, std::uint64_t seed) {
  const auto s = sample_frames(*a.base(), a.degree(), samples, seed);
  double worst = 0.0;
  for (const auto& f : s) worst = std::max(worst, std::abs(a(f.point, f.frame)));
  return worst;
}

}  // namespace

TEST_CASE("face identities eps_i eps_j = eps_{j-1} eps_i") {
  for (const GroupPtr& g : {vector_group(2), so3_group(), u2_group()}) {
    CAPTURE(g->name);
    const auto ng = build_NG(g);
    const auto nbar = build_NbarG(g);
    for (int p = 2; p <= 4; ++p) {
      CAPTURE(p);
      CHECK(simplicial_identity_residual(*ng, p, 30, 1) < 1e-12);
      CHECK(simplicial_identity_residual(*nbar, p, 30, 2) < 1e-12);
    }
  }
}

TEST_CASE("nerve levels have the expected factor counts") {
  const auto ng = build_NG(so3_group());
  const auto nbar = build_NbarG(so3_group());
  CHECK(ng->level(2)->dimension() == 6);
  CHECK(nbar->level(2)->dimension() == 9);
  CHECK(ng->face(2, 0).target() == ng->level(1));
}

TEST_CASE("faces of NG on R^2: drop first, multiply, drop last") {
  const auto ng = build_NG(vector_group(2));
  const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
  const Point p = ng->level(2)->from_ambient(x);
  const auto f0 = ng->level(1)->ambient(ng->face(2, 0)(p));
  const auto f1 = ng->level(1)->ambient(ng->face(2, 1)(p));
  const auto f2 = ng->level(1)->ambient(ng->face(2, 2)(p));
  CHECK(f0 == std::vector<double>{3.0, 4.0});
  CHECK(f1 == std::vector<double>{4.0, 6.0});
  CHECK(f2 == std::vector<double>{1.0, 2.0});
}

TEST_CASE("d' d' = 0 on random forms of NG(R^2)") {
  const auto ng = build_NG(vector_group(2));
  gen::for_all(5, 31, [&](gen::Gen& g, int i) {
    CAPTURE(i);
    for (int q : {1, 2}) {
      const FormField w = gen::polynomial_form(g, ng->level(1), q);
      // Exact cancellation up to round-off on values of order 1e3.
      CHECK(max_abs(d_prime(*ng, 2, d_prime(*ng, 1, w)), 20, 3) < 1e-9);
    }
  });
}

TEST_CASE("D D = 0 on a random bigraded cochain") {
  const auto ng = build_NG(vector_group(2));
  gen::for_all(3, 32, [&](gen::Gen& g, int i) {
    CAPTURE(i);
    BigradedCochain c{ng, 2, {}};
    c.set(1, 1, gen::polynomial_form(g, ng->level(1), 1));
    c.set(2, 0, gen::polynomial_form(g, ng->level(2), 0));
    const BigradedCochain dd = total_D(total_D(c));
    for (const auto& [pq, form] : dd.components) {
      CAPTURE(pq.first);
      CAPTURE(pq.second);
      CHECK(max_abs(form, 20, 4) < 1e-6);
    }
  });
}

TEST_CASE("verify_cocycle flags a non-closed cochain") {
  const auto ng = build_NG(vector_group(2));
  BigradedCochain c{ng, 2, {}};
  c.set(1, 1, f_dg_form(
                  ng->level(1), [](std::span<const Dual> x) { return x[0]; },
                  [](std::span<const Dual> x) { return x[1]; }));
  const VerificationReport rep = verify_cocycle(c, VerifyOptions{});
  CHECK_FALSE(rep.pass);
  CHECK(rep.find("D(1,2)") != nullptr);
}

TEST_CASE("bigraded cochain bookkeeping") {
  const auto ng = build_NG(vector_group(2));
  BigradedCochain c{ng, 2, {}};
  CHECK(c.get(1, 1) == nullptr);
  c.set(1, 1, FormField::zero(ng->level(1), 1));
  CHECK(c.get(1, 1) != nullptr);
  const BigradedCochain zero = difference(c, scale(c, 1.0));
  const auto items = compare_cochains(c, zero, VerifyOptions{}, "c");
  for (const auto& it : items) CHECK(it.pass);
}

TEST_CASE("gamma pulls NG levels back to NbarG levels") {
  const GroupPtr g = so3_group();
  const auto ng = build_NG(g);
  const auto nbar = build_NbarG(g);
  const SmoothMap gamma = gamma_map(*nbar, *ng, 2);
  CHECK(gamma.source() == nbar->level(2));
  CHECK(gamma.target() == ng->level(2));
}
