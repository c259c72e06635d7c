// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ddverify/chernsimons.hpp"
#include "ddverify/models.hpp"
#include "ddverify/quadrature.hpp"
#include "ddverify/runner.hpp"
#include "generators.hpp"

using namespace ddv;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%.2e", what.c_str(), value);
    detail += (detail.empty() ? "" : " ") + std::string(buf);
  }
};

const IdentityResult* item_containing(const VerificationReport& r, const std::string& part) {
  for (const auto& it : r.breakdown) {
    if (it.name.find(part) != std::string::npos) return &it;
  }
  return nullptr;
}

double worst_of(const VerificationReport& r, const std::string& part) {
  double w = 0.0;
  bool found = false;
  for (const auto& it : r.breakdown) {
    if (it.name.find(part) != std::string::npos) {
      w = std::max(w, it.max_residual);
      found = true;
    }
  }
  return found ? w : INFINITY;
}

const CentralExtensionModel& smooth(const std::string& name) {
  static const CentralExtensionModel heis = build_heisenberg();
  static const CentralExtensionModel u2 = build_u2_so3();
  return name == "heisenberg" ? heis : u2;
}

const std::vector<std::string> kSmooth = {"heisenberg", "u2_so3"};

double max_diff(const FormField& a, const FormField& b, int samples, std::uint64_t seed) {
  double w = 0.0;
  for (const auto& f : sample_frames(*a.base(), a.degree(), samples, seed)) {
    w = std::max(w, std::abs(a(f.point, f.frame) - b(f.point, f.frame)));
  }
  return w;
}

Outcome criterion1() {
  Outcome o;
  for (const auto& name : kSmooth) {
    const auto r = run("prop21", name, VerifyOptions{});
    o.require(r.pass && r.samples >= 200 && r.max_residual < 1e-6, "prop21 " + name);
    o.note(name, r.max_residual);
  }
  const auto& m = smooth("heisenberg");
  const FormField c1 = chern_form(m, m.theta);
  const FormField s = shat_delta_theta(m, m.theta);
  double cross = 0.0;
  for (const auto& f : sample_frames(*m.ng->level(1), 2, 200, 42)) {
    const auto& u = f.frame[0];
    const auto& v = f.frame[1];
    cross = std::max(cross, std::abs(c1(f.point, f.frame) - kKappa * (u(0) * v(1) - u(1) * v(0))));
  }
  for (const auto& f : sample_frames(*m.ng->level(2), 1, 200, 42)) {
    const auto& x = f.point.coords;
    const auto& v = f.frame[0];
    cross = std::max(cross, std::abs(s(f.point, f.frame) - (x[3] * v(0) - x[2] * v(1))));
  }
  o.require(cross < 1e-8, "closed-form cross-check");
  o.note("closed_form", cross);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto h = run("prop22", "heisenberg", VerifyOptions{});
  const auto u = run("prop22", "u2_so3", VerifyOptions{});
  o.require(h.max_residual < 1e-9, "heisenberg < 1e-9");
  o.require(u.max_residual < 1e-6 && u.pass, "u2_so3 < 1e-6");
  o.note("heisenberg", h.max_residual);
  o.note("u2_so3", u.max_residual);
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const auto& name : kSmooth) {
    const auto r = run("cocycle", name, VerifyOptions{});
    o.require(r.pass && r.max_residual < 1e-6 && r.breakdown.size() == 3, "D(dd) " + name);
    o.note(name, r.max_residual);
    const auto& m = smooth(name);
    for (const auto& [p, q] : {std::pair{1, 2}, std::pair{2, 1}}) {
      BigradedCochain dd = dd_cochain(m, m.theta);
      dd.set(p, q, 1.01 * *dd.get(p, q));
      const bool caught = !verify_cocycle(dd, VerifyOptions{}).pass;
      o.require(caught, "mutation of (" + std::to_string(p) + "," + std::to_string(q) + ") on " + name);
    }
  }
  if (o.pass) o.detail += " mutations caught=4/4";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto r = run("prop23", "connection_pair", VerifyOptions{});
  o.require(r.pass && r.max_residual < 1e-6, "connection_pair");
  o.note("connection_pair", r.max_residual);
  std::vector<double> signs;
  for (const auto& name : kSmooth) {
    const auto& m = smooth(name);
    const ConnectionPair cp = build_connection_pair(m);
    signs.push_back(pin_connection_sign(m, cp.theta0, cp.theta1, VerifyOptions{50}).sign);
  }
  o.require(signs[0] == signs[1] && signs[0] == kConnectionSign, "sign constant across models");
  o.detail += signs[0] < 0 ? " sign=-1 on both" : " sign=+1 on both";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto r = run("thm31", "so3_coboundary", VerifyOptions{});
  const double first = worst_of(r, "g*c1 = kappa");
  const double second = std::max(worst_of(r, "cech delta(ghat*theta)"), worst_of(r, "identity 2 after"));
  const double quad = worst_of(r, "delta c = 0");
  const double gauge = worst_of(r, "gauge covariance");
  o.require(first < 1e-6 && second < 1e-6, "proof identities < 1e-6");
  o.require(quad < 1e-8, "quadruple overlaps < 1e-8");
  o.require(gauge < 1e-8, "lift gauge covariance < 1e-8");
  o.note("identities", std::max(first, second));
  o.note("delta_c", quad);
  o.note("gauge", gauge);
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (const auto& name : kSmooth) {
    const auto r = run("thm41", name, VerifyOptions{});
    o.require(r.pass && r.max_residual < 1e-6, "thm41 " + name);
    o.require(item_containing(r, "kappa d(sbar") && item_containing(r, "d'(sbar") &&
                  item_containing(r, "D(CS) - gamma*(DD)"),
              "all identities present on " + name);
    o.note(name, r.max_residual);
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  VerifyOptions opts;
  opts.tol = 1e-10;
  for (const auto& name : kSmooth) {
    const auto r = run("thm42", name, opts);
    o.require(r.pass && r.samples == 200 && r.max_residual < 1e-10, "thm42 " + name);
    o.note(name, r.max_residual);
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const char* name : {"q8_over_v4", "z4_over_z2", "split_v4"}) {
    const bool split = std::string(name) == "split_v4";
    const auto ext = build_finite_extension(name);
    const auto rv = real_vanishing(ext);
    o.require(rv.exact && rv.pass, std::string("real vanishing ") + name);
    const auto* derham = item_containing(rv, "de Rham components identically zero");
    o.require(derham && derham->pass && derham->max_residual == 0.0, std::string("de Rham zero ") + name);
    const auto c = section_cocycle(ext);
    const auto search = coboundary_by_search(c, ext.g);
    o.require(search.trivial == split, std::string(split ? "trivial " : "nontrivial ") + name);
    const RealWitness w = real_witness(c, ext.g);
    o.require(is_real_witness(w, c, ext.g), std::string("real witness ") + name);
    if (split) {
      bool zero = true;
      for (int v : search.witness) zero = zero && v == 0;
      for (const auto& v : w.b) zero = zero && v.num == 0;
      o.require(zero, "split_v4 zero witness");
    }
  }
  if (o.pass) o.detail = "q8_over_v4, z4_over_z2 nontrivial over Z2 with exact real witness; split_v4 trivial, zero witness";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const SpacePtr r3 = euclidean_space(3);
  const SpacePtr r2 = euclidean_space(2);
  const SpacePtr square = box_space({0.0, 0.0}, {1.0, 1.0});
  const SpacePtr unit = box_space({0.0}, {1.0});
  double dd = 0.0;
  double nat = 0.0;
  double stokes = 0.0;
  double alt = 0.0;
  double lin = 0.0;
  gen::for_all(5, 9, [&](gen::Gen& g, int) {
    const FormField w0 = gen::polynomial_form(g, r3, 0);
    const FormField w1 = gen::polynomial_form(g, r3, 1);
    dd = std::max(dd, max_diff(ext_derivative(ext_derivative(w0)), FormField::zero(r3, 2), 20, 1));
    dd = std::max(dd, max_diff(ext_derivative(ext_derivative(w1)), FormField::zero(r3, 3), 20, 2));
    const SmoothMap f = gen::polynomial_map(g, r2, r3);
    nat = std::max(nat, max_diff(pullback(f, ext_derivative(w1)), ext_derivative(pullback(f, w1)), 20, 3));
    const SmoothMap sigma = gen::polynomial_map(g, square, r3);
    const std::array<std::function<DualVec(Dual)>, 4> edges = {
        [](Dual t) { return DualVec{t, Dual(0.0)}; }, [](Dual t) { return DualVec{Dual(1.0), t}; },
        [](Dual t) { return DualVec{1.0 - t, Dual(1.0)}; }, [](Dual t) { return DualVec{Dual(0.0), 1.0 - t}; }};
    double boundary = 0.0;
    for (const auto& e : edges) {
      const SmoothMap side(unit, r3, [&sigma, e](std::span<const Dual> t) { return sigma.apply(e(t[0])); });
      boundary += integrate_cube(w1, side).value;
    }
    stokes = std::max(stokes, std::abs(integrate_cube(ext_derivative(w1), sigma).value - boundary));
    const FormField w3 = wedge(gen::polynomial_form(g, r3, 2), w1);
    alt = std::max(alt, antisymmetry_residual(w3, 100, 4));
    lin = std::max(lin, multilinearity_residual(w3, 100, 5));
  });
  const double area = integrate_cube(kKappa * coordinate_form(square, {0, 1}), identity_map(square)).value;
  const double gl = std::abs(area + 1.0 / (2.0 * std::numbers::pi));
  o.require(dd < 1e-6, "d.d < 1e-6");
  o.require(nat < 1e-6, "naturality < 1e-6");
  o.require(stokes < 1e-8, "stokes < 1e-8");
  o.require(alt < 1e-9 && lin < 1e-9, "antisymmetry/multilinearity < 1e-9");
  o.require(gl < 1e-10, "Gauss-Legendre area");
  o.note("dd", dd);
  o.note("naturality", nat);
  o.note("stokes", stokes);
  o.note("antisym", alt);
  o.note("multilin", lin);
  o.note("gl_area_err", gl);
  return o;
}

Outcome criterion10() {
  Outcome o;
  auto json = [](int threads, int jobs) {
    VerifyOptions opts;
    opts.threads = threads;
    std::ostringstream out;
    emit_reports(run_many("all", "all", opts, {}, jobs), ReportFormat::Json, out);
    return out.str();
  };
  const std::string a = json(1, 1);
  const std::string b = json(1, 1);
  const std::string c = json(4, 1);
  const std::string d = json(4, 4);
  o.require(a == b, "two runs");
  o.require(a == c, "1 vs 4 threads");
  o.require(a == d, "1 vs 4 threads with parallel jobs");
  if (o.pass) o.detail = std::to_string(a.size()) + " bytes identical over 2 runs, 1/4 threads, 1/4 jobs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"section pullback identity on NG(2) (heisenberg, u2_so3) + closed forms", criterion1},
      {"alternating face sum of shat delta theta vanishes on NG(3)", criterion2},
      {"total cocycle D(dd) = 0 + mutation detection", criterion3},
      {"connection independence up to D(kappa alpha), constant sign", criterion4},
      {"Cech comparison identities, delta c = 0, lift gauge covariance", criterion5},
      {"D(CS) = gamma*(DD) with both intermediate identities", criterion6},
      {"transgression equals the Chern form below 1e-10", criterion7},
      {"finite extensions: zero de Rham part, Z2 class, exact real witness", criterion8},
      {"engine floor: d.d, naturality, Stokes, alternation, quadrature", criterion9},
      {"byte-identical JSON across runs and thread counts", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
