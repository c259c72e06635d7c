#include <doctest.h>

#include <cmath>

#include "ddverify/chernsimons.hpp"
#include "ddverify/models.hpp"
#include "generators.hpp"

using namespace ddv;

namespace {

const CentralExtensionModel& model(const std::string& name) {
  static const CentralExtensionModel heis = build_heisenberg();
  static const CentralExtensionModel u2 = build_u2_so3();
  return name == "heisenberg" ? heis : u2;
}

const std::vector<std::string> kModels = {"heisenberg", "u2_so3"};

}  // namespace

TEST_CASE("gamma intertwines the face maps") {
  for (const auto& name : kModels) {
    CAPTURE(name);
    for (int p = 2; p <= 4; ++p) {
      CAPTURE(p);
      CHECK(gamma_commutation_residual(model(name), p, 30, 5) < 1e-12);
    }
  }
}

TEST_CASE("D(CS) = gamma*(DD) with both intermediate identities") {
  for (const auto& name : kModels) {
    CAPTURE(name);
    const auto& m = model(name);
    const VerificationReport rep = verify_thm41(m, m.theta, VerifyOptions{});
    CHECK(rep.pass);
    CHECK(rep.breakdown.size() >= 4);
    CHECK(rep.max_residual < 1e-6);
  }
}

TEST_CASE("transgression equals the Chern form to 1e-10") {
  for (const auto& name : kModels) {
    CAPTURE(name);
    const auto& m = model(name);
    VerifyOptions opts;
    opts.tol = 1e-10;
    const VerificationReport rep = verify_thm42(m, m.theta, opts);
    CHECK(rep.pass);
    CHECK(rep.breakdown.size() == 2);
  }
}

TEST_CASE("heisenberg transgression is kappa dx^dy") {
  const auto& m = model("heisenberg");
  const FormField t = transgress(m, m.theta);
  for (const auto& f : sample_frames(*m.nbar->level(0), 2, 50, 3)) {
    const auto& u = f.frame[0];
    const auto& v = f.frame[1];
    CHECK(std::abs(t(f.point, f.frame) - kKappa * (u(0) * v(1) - u(1) * v(0))) < 1e-10);
  }
}

TEST_CASE("CS phase sign is -1 on every smooth model") {
  for (const auto& name : kModels) {
    CAPTURE(name);
    const auto& m = model(name);
    const SignPin pin = pin_cs_phase_sign(m, m.theta, VerifyOptions{50});
    CHECK(pin.sign == kCsPhaseSign);
    CHECK(pin.residual_minus < 1e-10);
    CHECK(pin.residual_plus > 1e-3);
  }
}

TEST_CASE("sbar does not depend on the patch choice") {
  const auto& m = model("u2_so3");
  const FormField free = sbar_delta_theta(m, m.theta);
  const auto samples = sample_frames(*m.nbar->level(1), 1, 200, 8);
  int checked = 0;
  for (const auto& f : samples) {
    const auto amb = m.nbar->level(1)->ambient(f.point);
    const std::span<const double> h1(amb.data(), 4);
    const std::span<const double> h2(amb.data() + 4, 4);
    const auto gam = m.base->mul(h1, m.base->inv(h2));
    // Second-best patch at each argument, when it is comfortably inside.
    std::array<int, 3> lam{};
    bool ok = true;
    int k = 0;
    for (const std::span<const double> at : {h2, std::span<const double>(gam), h1}) {
      int best = -1;
      int second = -1;
      for (int c = 0; c < 4; ++c) {
        const double mc = m.cover[static_cast<std::size_t>(c)].margin(at);
        if (best < 0 || mc > m.cover[static_cast<std::size_t>(best)].margin(at)) {
          second = best;
          best = c;
        } else if (second < 0 || mc > m.cover[static_cast<std::size_t>(second)].margin(at)) {
          second = c;
        }
      }
      ok = ok && m.cover[static_cast<std::size_t>(second)].margin(at) > 0.1;
      lam[static_cast<std::size_t>(k++)] = second;
    }
    if (!ok) continue;
    const FormField fixed = sbar_delta_theta_on_patches(m, m.theta, lam);
    CHECK(std::abs(fixed(f.point, f.frame) - free(f.point, f.frame)) < 1e-10);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("mutation: a scaled CS component breaks D(CS) = gamma*(DD)") {
  const auto& m = model("u2_so3");
  BigradedCochain cs = cs_cochain(m, m.theta);
  cs.set(1, 1, 1.01 * *cs.get(1, 1));
  const auto items =
      compare_cochains(total_D(cs), pullback_gamma(dd_cochain(m, m.theta), m.nbar), VerifyOptions{}, "mutated");
  bool any_fail = false;
  for (const auto& it : items) any_fail = any_fail || !it.pass;
  CHECK(any_fail);
}
