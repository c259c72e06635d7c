#include "ddverify/models.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "ddverify/errors.hpp"

namespace ddv {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double x) { return std::remainder(x, 2.0 * kPi); }

double reduce_angle(double t) {
  double r = std::fmod(t + kPi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  return r - kPi;
}

std::array<Dual, 4> qmul(std::span<const Dual> a, std::span<const Dual> b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3], a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1], a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

std::array<int, 3> others(int k) {
  std::array<int, 3> o{};
  int j = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != k) o[static_cast<std::size_t>(j++)] = i;
  }
  return o;
}

int largest_component(std::span<const double> q) {
  int best = 0;
  for (int i = 1; i < 4; ++i) {
    if (std::abs(q[static_cast<std::size_t>(i)]) > std::abs(q[static_cast<std::size_t>(best)])) best = i;
  }
  return best;
}

// Unit quaternion from ball coordinates w in chart k.
DualVec ball_to_quaternion(int k, std::span<const Dual> w) {
  Dual r2 = 0.0;
  for (std::size_t i = 0; i < 3; ++i) r2 += w[i] * w[i];
  DualVec q(4);
  q[static_cast<std::size_t>(k)] = sqrt(1.0 - r2);
  const auto o = others(k);
  for (std::size_t i = 0; i < 3; ++i) q[static_cast<std::size_t>(o[i])] = w[i];
  return q;
}

DualVec quaternion_to_ball(int k, std::span<const Dual> q) {
  const double s = q[static_cast<std::size_t>(k)].v < 0.0 ? -1.0 : 1.0;
  DualVec w;
  for (int i : others(k)) w.push_back(s * q[static_cast<std::size_t>(i)]);
  return w;
}

double ball_margin(std::span<const double> x) { return 1.0 - std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

std::vector<double> random_quaternion(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> q(4);
  double n = 0.0;
  do {
    n = 0.0;
    for (auto& v : q) {
      v = normal(rng);
      n += v * v;
    }
  } while (n < 1e-6);
  n = std::sqrt(n);
  for (auto& v : q) v /= n;
  return q;
}

double quaternion_distance(std::span<const double> a, std::span<const double> b) {
  double minus = 0.0;
  double plus = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    minus += (a[i] - b[i]) * (a[i] - b[i]);
    plus += (a[i] + b[i]) * (a[i] + b[i]);
  }
  return std::sqrt(std::min(minus, plus));
}

std::vector<Chart> ball_charts(bool with_angle) {
  std::vector<Chart> charts;
  for (int k = 0; k < 4; ++k) {
    Chart c{k, "q" + std::to_string(k) + ">0", {-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}};
    if (with_angle) {
      c.lo.push_back(-kPi);
      c.hi.push_back(kPi);
    }
    charts.push_back(std::move(c));
  }
  return charts;
}

SpacePtr so3_space() {
  ChartedSpaceDef def;
  def.name = "SO3";
  def.dimension = 3;
  def.ambient_dimension = 4;
  def.charts = ball_charts(false);
  def.to_ambient = [](int k, std::span<const Dual> w) { return ball_to_quaternion(k, w); };
  def.from_ambient = [](int k, std::span<const Dual> q) { return quaternion_to_ball(k, q); };
  def.best_chart = [](std::span<const double> q) { return largest_component(q); };
  def.margin = [](int, std::span<const double> x) { return ball_margin(x); };
  def.sampler = [](Rng& rng) {
    const auto q = random_quaternion(rng);
    const int k = largest_component(q);
    return Point{k, values(quaternion_to_ball(k, lift(q)))};
  };
  return std::make_shared<ChartedSpace>(std::move(def));
}

SpacePtr u2_space() {
  ChartedSpaceDef def;
  def.name = "U2";
  def.dimension = 4;
  def.ambient_dimension = 5;
  def.charts = ball_charts(true);
  def.periods = {0.0, 0.0, 0.0, 2.0 * kPi};
  def.to_ambient = [](int k, std::span<const Dual> x) {
    DualVec a = ball_to_quaternion(k, x.first(3));
    a.push_back(x[3]);
    return a;
  };
  // (q, t) ~ (-q, t + pi): flipping into {q_k > 0} shifts the angle.
  def.from_ambient = [](int k, std::span<const Dual> a) {
    DualVec x = quaternion_to_ball(k, a.first(4));
    x.push_back(a[static_cast<std::size_t>(k)].v < 0.0 ? a[4] + kPi : a[4]);
    return x;
  };
  def.best_chart = [](std::span<const double> a) { return largest_component(a.first(4)); };
  def.margin = [](int, std::span<const double> x) { return ball_margin(x); };
  def.sampler = [](Rng& rng) {
    const auto q = random_quaternion(rng);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const int k = largest_component(q);
    auto x = values(quaternion_to_ball(k, lift(q)));
    x.push_back(reduce_angle(angle(rng) + (q[static_cast<std::size_t>(k)] < 0.0 ? kPi : 0.0)));
    return Point{k, std::move(x)};
  };
  return std::make_shared<ChartedSpace>(std::move(def));
}

// Ghat = U(1) x R^2 with coordinates (phi, x, y).
GroupPtr heisenberg_group() {
  auto g = std::make_shared<LieGroup>();
  g->name = "Heis";
  g->space = product_space({circle_space(), euclidean_space(2)}, "Heis");
  g->multiply = [](std::span<const Dual> ab) {
    return DualVec{ab[0] + ab[3] - ab[1] * ab[5], ab[1] + ab[4], ab[2] + ab[5]};
  };
  g->inverse = [](std::span<const Dual> a) { return DualVec{-a[0] - a[1] * a[2], -a[1], -a[2]}; };
  g->identity = {0.0, 0.0, 0.0};
  g->distance = [](std::span<const double> a, std::span<const double> b) {
    return std::abs(wrap(a[0] - b[0])) + std::abs(a[1] - b[1]) + std::abs(a[2] - b[2]);
  };
  return g;
}

// Quadratic in the quaternion, hence a function on SO(3).
Dual section_angle(int k, std::span<const Dual> q) {
  const auto i = static_cast<std::size_t>((k + 1) % 4);
  const auto j = static_cast<std::size_t>((k + 2) % 4);
  return 0.25 * (k + 1) * q[i] * q[i] + 0.2 * q[static_cast<std::size_t>(k)] * q[j];
}

FormField u2_theta(const SpacePtr& space) {
  auto eval = [space](const Point& p, Frame frame) {
    DualVec x(p.coords.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = Dual(p.coords[i], frame[0](static_cast<Eigen::Index>(i)));
    const DualVec a = space->ambient(p.chart, x);
    const Dual r01 = rotation_entry(std::span<const Dual>(a).first(4), 0, 1);
    const Dual r02 = rotation_entry(std::span<const Dual>(a).first(4), 0, 2);
    return a[4].d + r01.v * r02.d;
  };
  return FormField(space, 1, std::move(eval), "dt + R01 dR02");
}

}  // namespace

Dual rotation_entry(std::span<const Dual> q, int row, int col) {
  const Dual& w = q[0];
  const Dual& x = q[1];
  const Dual& y = q[2];
  const Dual& z = q[3];
  switch (row * 3 + col) {
    case 0: return 1.0 - 2.0 * (y * y + z * z);
    case 1: return 2.0 * (x * y - w * z);
    case 2: return 2.0 * (x * z + w * y);
    case 3: return 2.0 * (x * y + w * z);
    case 4: return 1.0 - 2.0 * (x * x + z * z);
    case 5: return 2.0 * (y * z - w * x);
    case 6: return 2.0 * (x * z - w * y);
    case 7: return 2.0 * (y * z + w * x);
    case 8: return 1.0 - 2.0 * (x * x + y * y);
    default: throw ContractViolation("rotation_entry: index out of range");
  }
}

Dual smoothstep7(Dual u) {
  if (u.v <= 0.0) return Dual(0.0);
  if (u.v >= 1.0) return Dual(1.0);
  const Dual u2 = u * u;
  const Dual u4 = u2 * u2;
  return u4 * (35.0 - 84.0 * u + 70.0 * u2 - 20.0 * u2 * u);
}

GroupPtr vector_group(int n) {
  auto g = std::make_shared<LieGroup>();
  g->name = "R" + std::to_string(n);
  g->space = euclidean_space(n);
  const auto dim = static_cast<std::size_t>(n);
  g->multiply = [dim](std::span<const Dual> ab) {
    DualVec out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = ab[i] + ab[dim + i];
    return out;
  };
  g->inverse = [](std::span<const Dual> a) {
    DualVec out;
    for (const auto& v : a) out.push_back(-v);
    return out;
  };
  g->identity.assign(dim, 0.0);
  g->distance = [](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  };
  return g;
}

GroupPtr so3_group() {
  auto g = std::make_shared<LieGroup>();
  g->name = "SO3";
  g->space = so3_space();
  g->multiply = [](std::span<const Dual> ab) {
    const auto q = qmul(ab.first(4), ab.subspan(4, 4));
    return DualVec(q.begin(), q.end());
  };
  g->inverse = [](std::span<const Dual> a) { return DualVec{a[0], -a[1], -a[2], -a[3]}; };
  g->identity = {1.0, 0.0, 0.0, 0.0};
  g->distance = quaternion_distance;
  return g;
}

GroupPtr u2_group() {
  auto g = std::make_shared<LieGroup>();
  g->name = "U2";
  g->space = u2_space();
  g->multiply = [](std::span<const Dual> ab) {
    const auto q = qmul(ab.first(4), ab.subspan(5, 4));
    DualVec out(q.begin(), q.end());
    out.push_back(ab[4] + ab[9]);
    return out;
  };
  g->inverse = [](std::span<const Dual> a) { return DualVec{a[0], -a[1], -a[2], -a[3], -a[4]}; };
  g->identity = {1.0, 0.0, 0.0, 0.0, 0.0};
  g->distance = [](std::span<const double> a, std::span<const double> b) {
    double minus = 0.0;
    double plus = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      minus += (a[i] - b[i]) * (a[i] - b[i]);
      plus += (a[i] + b[i]) * (a[i] + b[i]);
    }
    return std::min(std::sqrt(minus) + std::abs(wrap(a[4] - b[4])), std::sqrt(plus) + std::abs(wrap(a[4] - b[4] - kPi)));
  };
  return g;
}

CentralExtensionModel build_heisenberg() {
  CentralExtensionModel m;
  m.name = "heisenberg";
  m.base = vector_group(2);
  m.total = heisenberg_group();
  m.projection = [](std::span<const Dual> a) { return DualVec{a[1], a[2]}; };
  m.circle_action = [](std::span<const Dual> in) { return DualVec{in[1] + in[0], in[2], in[3]}; };
  m.cover.push_back(SectionPatch{"global", [](std::span<const double>) { return 1.0; },
                                 [](std::span<const Dual> g) { return DualVec{Dual(0.0), g[0], g[1]}; }});
  m.kernel_phase = [](std::span<const Dual> k) {
    if (std::abs(k[1].v) > 1e-8 || std::abs(k[2].v) > 1e-8)
      throw ModelInconsistency("heisenberg: element is not in the centre");
    return k[0];
  };
  m.theta = FormField(
      m.total->space, 1,
      [](const Point& p, Frame frame) { return frame[0](0) + p.coords[1] * frame[0](2); }, "dphi + x dy");
  finalize(m);
  return m;
}

CentralExtensionModel build_u2_so3() {
  CentralExtensionModel m;
  m.name = "u2_so3";
  m.base = so3_group();
  m.total = u2_group();
  m.projection = [](std::span<const Dual> a) { return DualVec(a.begin(), a.begin() + 4); };
  m.circle_action = [](std::span<const Dual> in) {
    DualVec out(in.begin() + 1, in.end());
    out[4] += in[0];
    return out;
  };
  for (int k = 0; k < 4; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    m.cover.push_back(SectionPatch{
        "q" + std::to_string(k), [kk](std::span<const double> g) { return std::abs(g[kk]); },
        [k, kk](std::span<const Dual> g) {
          const double s = g[kk].v < 0.0 ? -1.0 : 1.0;
          DualVec out;
          for (std::size_t i = 0; i < 4; ++i) out.push_back(s * g[i]);
          out.push_back(section_angle(k, g));
          return out;
        }});
  }
  m.kernel_phase = [](std::span<const Dual> k) {
    if (std::abs(k[1].v) > 1e-8 || std::abs(k[2].v) > 1e-8 || std::abs(k[3].v) > 1e-8)
      throw ModelInconsistency("u2_so3: element is not central");
    return k[0].v < 0.0 ? k[4] + kPi : k[4];
  };
  m.theta = u2_theta(m.total->space);
  finalize(m);
  return m;
}

ConnectionPair build_connection_pair(const CentralExtensionModel& model) {
  const SpacePtr& G = model.base->space;
  FormField beta = FormField::zero(G, 1);
  if (model.name == "heisenberg") {
    beta = f_dg_form(
        G, [](std::span<const Dual> g) { return g[1]; }, [](std::span<const Dual> g) { return g[0]; }, "y dx");
  } else if (model.name == "u2_so3") {
    // Supported in {q0^2 > 1/2}, inside patch 0.
    beta = f_dg_form(
        G,
        [](std::span<const Dual> q) { return smoothstep7((q[0] * q[0] - 0.5) / 0.3) * rotation_entry(q, 0, 1); },
        [](std::span<const Dual> q) { return rotation_entry(q, 1, 2); }, "chi R01 dR12");
  } else {
    throw UsageError("connection_pair: no shipped 1-form for model " + model.name);
  }
  FormField theta1 = model.theta + pullback(projection_map(model), beta);
  return ConnectionPair{model.theta, std::move(theta1), std::move(beta)};
}

CoboundaryBundle build_so3_coboundary_bundle(CobasedGroup group) {
  CoboundaryBundle b;
  const SpacePtr M = so3_group()->space;
  b.base.M = M;
  for (int a = 0; a < 4; ++a) {
    const auto aa = static_cast<std::size_t>(a);
    b.base.cover.push_back(
        CoverSet{"U" + std::to_string(a), [aa](std::span<const double> m) { return std::abs(m[aa]); }});
  }
  std::vector<AmbientMap> hhat;
  if (group == CobasedGroup::SO3) {
    b.name = "so3_coboundary";
    b.model = build_u2_so3();
    const std::array<std::array<double, 4>, 4> Q = {{{1.0, 0.0, 0.0, 0.0},
                                                     {0.6, 0.8, 0.0, 0.0},
                                                     {0.5, 0.5, -0.5, 0.5},
                                                     {0.0, 0.36, 0.48, 0.8}}};
    for (int a = 0; a < 4; ++a) {
      const auto aa = static_cast<std::size_t>(a);
      hhat.push_back([a, aa, q = Q[aa]](std::span<const Dual> m) {
        const double s = m[aa].v < 0.0 ? -1.0 : 1.0;
        DualVec signed_m;
        for (std::size_t i = 0; i < 4; ++i) signed_m.push_back(s * m[i]);
        const DualVec qa(q.begin(), q.end());
        const auto prod = qmul(signed_m, qa);
        DualVec out(prod.begin(), prod.end());
        const auto i = static_cast<std::size_t>((a + 1) % 4);
        const auto j = static_cast<std::size_t>((a + 3) % 4);
        out.push_back(0.3 * (a + 1) * m[i] * m[j] + 0.15 * m[aa] * m[aa]);
        return out;
      });
    }
  } else {
    b.name = "so3_coboundary/heisenberg";
    b.model = build_heisenberg();
    for (int a = 0; a < 4; ++a) {
      hhat.push_back([a](std::span<const Dual> m) {
        const auto aa = static_cast<std::size_t>(a);
        const Dual f = rotation_entry(m, a % 3, (a + 1) % 3) + 0.5 * a;
        const Dual k = 0.7 * rotation_entry(m, (a + 2) % 3, a % 3) - 0.2 * a;
        const Dual tau = 0.3 * (a + 1) * m[(aa + 1) % 4] * m[(aa + 2) % 4];
        return DualVec{tau, f, k};
      });
    }
  }
  const GroupPtr H = b.model.total;
  const auto proj = b.model.projection;
  b.data.count = 4;
  for (int a = 0; a < 4; ++a) {
    for (int c = 0; c < 4; ++c) {
      AmbientMap lift = [H, ha = hhat[static_cast<std::size_t>(a)], hc = hhat[static_cast<std::size_t>(c)]](
                            std::span<const Dual> m) {
        const DualVec x = ha(m);
        const DualVec y = H->inverse(hc(m));
        return H->mul(std::span<const Dual>(x), std::span<const Dual>(y));
      };
      b.data.transitions.push_back([lift, proj](std::span<const Dual> m) { return proj(lift(m)); });
      b.data.lifts.push_back(std::move(lift));
    }
  }
  return b;
}

namespace {

FiniteGroupTable table_from(int n, const std::function<int(int, int)>& mul) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = mul(a, b);
  }
  return FiniteGroupTable::from_rows(rows);
}

// Sign bit of the product of quaternion units 1, i, j, k (indices 0..3).
int unit_sign(int u, int v) {
  static constexpr int kSign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  return kSign[u][v];
}

}  // namespace

FiniteCentralExtension build_finite_extension(const std::string& name, const std::string& fixture_dir) {
  if (!fixture_dir.empty()) {
    const auto path = std::filesystem::path(fixture_dir) / (name + ".ext");
    if (!std::filesystem::exists(path)) throw UsageError("no fixture " + path.string());
    return read_extension(path.string());
  }
  const auto v4 = table_from(4, [](int a, int b) { return a ^ b; });
  if (name == "z4_over_z2") {
    return make_extension(name, table_from(4, [](int a, int b) { return (a + b) % 4; }),
                          table_from(2, [](int a, int b) { return (a + b) % 2; }), {0, 1, 0, 1}, {0, 1}, 2, 2);
  }
  if (name == "q8_over_v4") {
    auto q8 = table_from(8, [](int a, int b) {
      const int u = a >> 1, v = b >> 1;
      return 2 * (u ^ v) + ((a & 1) ^ (b & 1) ^ unit_sign(u, v));
    });
    return make_extension(name, std::move(q8), v4, {0, 0, 1, 1, 2, 2, 3, 3}, {0, 2, 4, 6}, 2, 1);
  }
  if (name == "split_v4") {
    auto g = table_from(8, [](int a, int b) { return 2 * ((a >> 1) ^ (b >> 1)) + ((a & 1) ^ (b & 1)); });
    return make_extension(name, std::move(g), v4, {0, 0, 1, 1, 2, 2, 3, 3}, {0, 2, 4, 6}, 2, 1);
  }
  throw UsageError("unknown finite extension " + name);
}

CentralExtensionModel discrete_model(const FiniteCentralExtension& ext) {
  auto finite_group = [](const FiniteGroupTable& t, const std::string& name) {
    ChartedSpaceDef def;
    def.name = name;
    def.dimension = 0;
    def.ambient_dimension = 1;
    for (int k = 0; k < t.order; ++k) def.charts.push_back(Chart{k, std::to_string(k), {}, {}});
    def.to_ambient = [](int k, std::span<const Dual>) { return DualVec{Dual(k)}; };
    def.from_ambient = [](int, std::span<const Dual>) { return DualVec{}; };
    def.best_chart = [](std::span<const double> a) { return static_cast<int>(std::lround(a[0])); };
    const int n = t.order;
    def.sampler = [n](Rng& rng) {
      std::uniform_int_distribution<int> pick(0, n - 1);
      return Point{pick(rng), {}};
    };
    auto g = std::make_shared<LieGroup>();
    g->name = name;
    g->space = std::make_shared<ChartedSpace>(std::move(def));
    g->multiply = [t](std::span<const Dual> ab) {
      return DualVec{Dual(t.mul(static_cast<int>(std::lround(ab[0].v)), static_cast<int>(std::lround(ab[1].v))))};
    };
    g->inverse = [t](std::span<const Dual> a) { return DualVec{Dual(t.inv(static_cast<int>(std::lround(a[0].v))))}; };
    g->identity = {static_cast<double>(t.identity)};
    g->distance = [](std::span<const double> a, std::span<const double> b) { return std::abs(a[0] - b[0]); };
    return GroupPtr(g);
  };
  CentralExtensionModel m;
  m.name = ext.name;
  m.base = finite_group(ext.g, ext.name + ":G");
  m.total = finite_group(ext.ghat, ext.name + ":Ghat");
  m.projection = [ext](std::span<const Dual> a) {
    return DualVec{Dual(ext.rho[static_cast<std::size_t>(std::lround(a[0].v))])};
  };
  // Only the n-th roots of unity act on a finite group.
  m.circle_action = [ext](std::span<const Dual> in) {
    const long k = std::lround(in[0].v * ext.kernel_order / (2.0 * kPi));
    int x = static_cast<int>(std::lround(in[1].v));
    const int steps = static_cast<int>(((k % ext.kernel_order) + ext.kernel_order) % ext.kernel_order);
    for (int i = 0; i < steps; ++i) x = ext.ghat.mul(x, ext.kernel_generator);
    return DualVec{Dual(x)};
  };
  m.cover.push_back(SectionPatch{"global", [](std::span<const double>) { return 1.0; },
                                 [ext](std::span<const Dual> g) {
                                   return DualVec{Dual(ext.section[static_cast<std::size_t>(std::lround(g[0].v))])};
                                 }});
  m.kernel_phase = [ext](std::span<const Dual> k) {
    return Dual(2.0 * kPi * ext.exponent_of(static_cast<int>(std::lround(k[0].v))) / ext.kernel_order);
  };
  m.theta = FormField::zero(m.total->space, 1);
  finalize(m);
  return m;
}

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = {"heisenberg", "u2_so3",   "so3_coboundary", "z4_over_z2",
                                                 "q8_over_v4", "split_v4", "connection_pair"};
  return names;
}

bool is_finite_model(const std::string& name) {
  return name == "z4_over_z2" || name == "q8_over_v4" || name == "split_v4";
}

}  // namespace ddv
