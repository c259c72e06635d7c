#include "ddverify/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "ddverify/errors.hpp"

namespace ddv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double box_margin(const Chart& c, const std::vector<double>& periods, std::span<const double> x) {
  double m = kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (periods[i] > 0.0) continue;
    m = std::min({m, x[i] - c.lo[i], c.hi[i] - x[i]});
  }
  return m;
}

double reduce_periodic(double x, double lo, double period) {
  double r = std::fmod(x - lo, period);
  if (r < 0.0) r += period;
  return lo + r;
}

}  // namespace

ChartedSpace::ChartedSpace(ChartedSpaceDef def) : def_(std::move(def)) {
  const auto dim = static_cast<std::size_t>(def_.dimension);
  if (def_.dimension < 0) throw ContractViolation(def_.name + ": negative dimension");
  if (def_.charts.empty()) throw ContractViolation(def_.name + ": no charts");
  if (def_.periods.empty()) def_.periods.assign(dim, 0.0);
  if (def_.periods.size() != dim) throw ContractViolation(def_.name + ": period list has wrong length");
  for (std::size_t k = 0; k < def_.charts.size(); ++k) {
    auto& c = def_.charts[k];
    if (c.id != static_cast<int>(k)) throw ContractViolation(def_.name + ": chart ids must be 0..n-1");
    if (c.lo.size() != dim || c.hi.size() != dim)
      throw ContractViolation(def_.name + ": chart box dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) {
      if (def_.periods[i] > 0.0) continue;
      if (!(c.lo[i] < c.hi[i])) throw ContractViolation(def_.name + ": empty chart box");
    }
  }
  if (!def_.to_ambient || !def_.from_ambient) throw ContractViolation(def_.name + ": missing ambient maps");
  if (!def_.best_chart) def_.best_chart = [](std::span<const double>) { return 0; };
}

Point ChartedSpace::make_point(int chart, std::vector<double> coords) const {
  if (chart < 0 || chart >= static_cast<int>(def_.charts.size()))
    throw ContractViolation(def_.name + ": unknown chart " + std::to_string(chart));
  if (coords.size() != static_cast<std::size_t>(def_.dimension))
    throw ContractViolation(def_.name + ": coordinate vector has wrong length");
  const auto& c = def_.charts[static_cast<std::size_t>(chart)];
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (def_.periods[i] > 0.0) coords[i] = reduce_periodic(coords[i], c.lo[i], def_.periods[i]);
  }
  if (!(margin(chart, coords) > 0.0))
    throw ContractViolation(def_.name + ": point outside chart " + c.label);
  return Point{chart, std::move(coords)};
}

DualVec ChartedSpace::ambient(int chart, std::span<const Dual> coords) const {
  return def_.to_ambient(chart, coords);
}

std::vector<double> ChartedSpace::ambient(const Point& p) const {
  const DualVec x = lift(p.coords);
  return values(def_.to_ambient(p.chart, x));
}

DualVec ChartedSpace::chart_coords(int chart, std::span<const Dual> amb) const {
  return def_.from_ambient(chart, amb);
}

int ChartedSpace::best_chart(std::span<const double> amb) const { return def_.best_chart(amb); }

Point ChartedSpace::from_ambient(std::span<const double> amb) const {
  const int k = best_chart(amb);
  const DualVec a = lift(amb);
  return make_point(k, values(def_.from_ambient(k, a)));
}

std::optional<Point> ChartedSpace::transition(const Point& p, int target_chart) const {
  const auto amb = ambient(p);
  const DualVec a = lift(amb);
  auto coords = values(def_.from_ambient(target_chart, a));
  if (!contains(target_chart, coords)) return std::nullopt;
  return make_point(target_chart, std::move(coords));
}

double ChartedSpace::margin(int chart, std::span<const double> coords) const {
  if (def_.margin) return def_.margin(chart, coords);
  return box_margin(def_.charts[static_cast<std::size_t>(chart)], def_.periods, coords);
}

double ChartedSpace::margin(const Point& p) const { return margin(p.chart, p.coords); }

double ChartedSpace::wrap_difference(int coord, double delta) const {
  const double period = def_.periods[static_cast<std::size_t>(coord)];
  if (period <= 0.0) return delta;
  delta = std::fmod(delta, period);
  if (delta > period / 2) delta -= period;
  if (delta <= -period / 2) delta += period;
  return delta;
}

Point ChartedSpace::sample(Rng& rng) const {
  if (def_.sampler) return def_.sampler(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto dim = static_cast<std::size_t>(def_.dimension);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const int k = static_cast<int>(unit(rng) * static_cast<double>(def_.charts.size())) %
                  static_cast<int>(def_.charts.size());
    const auto& c = def_.charts[static_cast<std::size_t>(k)];
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      double lo = c.lo[i];
      double hi = c.hi[i];
      if (def_.periods[i] > 0.0) {
        hi = lo + def_.periods[i];
      } else if (!def_.sample_lo.empty()) {
        lo = std::max(lo, def_.sample_lo[i]);
        hi = std::min(hi, def_.sample_hi[i]);
      }
      x[i] = lo + (hi - lo) * unit(rng);
    }
    if (margin(k, x) > 0.0) return make_point(k, std::move(x));
  }
  throw ContractViolation(def_.name + ": rejection sampling failed");
}

SpacePtr euclidean_space(int n, double half_width, double sample_half_width, std::string name) {
  ChartedSpaceDef def;
  def.name = name.empty() ? "R" + std::to_string(n) : std::move(name);
  def.dimension = n;
  def.ambient_dimension = n;
  def.charts.push_back(Chart{0, "global", std::vector<double>(static_cast<std::size_t>(n), -half_width),
                             std::vector<double>(static_cast<std::size_t>(n), half_width)});
  def.to_ambient = [](int, std::span<const Dual> x) { return DualVec(x.begin(), x.end()); };
  def.from_ambient = [](int, std::span<const Dual> a) { return DualVec(a.begin(), a.end()); };
  def.sample_lo.assign(static_cast<std::size_t>(n), -sample_half_width);
  def.sample_hi.assign(static_cast<std::size_t>(n), sample_half_width);
  return std::make_shared<ChartedSpace>(std::move(def));
}

SpacePtr box_space(std::vector<double> lo, std::vector<double> hi, std::string name) {
  ChartedSpaceDef def;
  const int n = static_cast<int>(lo.size());
  def.name = name.empty() ? "box" + std::to_string(n) : std::move(name);
  def.dimension = n;
  def.ambient_dimension = n;
  // The closed cube is needed for quadrature nodes and Stokes edges; pad the
  // open chart slightly so boundary faces are still inside it.
  std::vector<double> clo = lo;
  std::vector<double> chi = hi;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double pad = 0.25 * (hi[i] - lo[i]);
    clo[i] -= pad;
    chi[i] += pad;
  }
  def.charts.push_back(Chart{0, "box", clo, chi});
  def.to_ambient = [](int, std::span<const Dual> x) { return DualVec(x.begin(), x.end()); };
  def.from_ambient = [](int, std::span<const Dual> a) { return DualVec(a.begin(), a.end()); };
  def.sample_lo = std::move(lo);
  def.sample_hi = std::move(hi);
  return std::make_shared<ChartedSpace>(std::move(def));
}

SpacePtr circle_space() {
  ChartedSpaceDef def;
  def.name = "S1";
  def.dimension = 1;
  def.ambient_dimension = 1;
  def.charts.push_back(Chart{0, "angle", {-std::numbers::pi}, {std::numbers::pi}});
  def.periods = {2.0 * std::numbers::pi};
  def.to_ambient = [](int, std::span<const Dual> x) { return DualVec(x.begin(), x.end()); };
  def.from_ambient = [](int, std::span<const Dual> a) { return DualVec(a.begin(), a.end()); };
  return std::make_shared<ChartedSpace>(std::move(def));
}

namespace {

struct ProductLayout {
  std::vector<SpacePtr> factors;
  std::vector<int> radix;
  std::vector<std::size_t> dim_offset;
  std::vector<std::size_t> amb_offset;

  std::vector<int> decode(int code) const {
    std::vector<int> ids(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      ids[i] = code % radix[i];
      code /= radix[i];
    }
    return ids;
  }
  int encode(std::span<const int> ids) const {
    int code = 0;
    int scale = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      code += ids[i] * scale;
      scale *= radix[i];
    }
    return code;
  }
};

}  // namespace

SpacePtr product_space(std::vector<SpacePtr> factors, std::string name) {
  auto layout = std::make_shared<ProductLayout>();
  layout->factors = factors;
  int dim = 0;
  int amb = 0;
  int chart_count = 1;
  std::string joined;
  for (const auto& f : factors) {
    layout->radix.push_back(static_cast<int>(f->charts().size()));
    layout->dim_offset.push_back(static_cast<std::size_t>(dim));
    layout->amb_offset.push_back(static_cast<std::size_t>(amb));
    dim += f->dimension();
    amb += f->ambient_dimension();
    chart_count *= static_cast<int>(f->charts().size());
    joined += (joined.empty() ? "" : "x") + f->name();
  }
  layout->dim_offset.push_back(static_cast<std::size_t>(dim));
  layout->amb_offset.push_back(static_cast<std::size_t>(amb));

  ChartedSpaceDef def;
  def.name = !name.empty() ? std::move(name) : (factors.empty() ? "pt" : joined);
  def.dimension = dim;
  def.ambient_dimension = amb;
  def.factors = factors;
  for (int code = 0; code < chart_count; ++code) {
    Chart c;
    c.id = code;
    const auto ids = layout->decode(code);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& fc = factors[i]->charts()[static_cast<std::size_t>(ids[i])];
      c.label += (i ? "," : "") + fc.label;
      c.lo.insert(c.lo.end(), fc.lo.begin(), fc.lo.end());
      c.hi.insert(c.hi.end(), fc.hi.begin(), fc.hi.end());
    }
    if (factors.empty()) c.label = "pt";
    def.charts.push_back(std::move(c));
  }
  for (const auto& f : factors) {
    for (int i = 0; i < f->dimension(); ++i) def.periods.push_back(f->period(i));
  }
  def.to_ambient = [layout](int code, std::span<const Dual> x) {
    const auto ids = layout->decode(code);
    DualVec out;
    for (std::size_t i = 0; i < layout->factors.size(); ++i) {
      const auto part = x.subspan(layout->dim_offset[i], layout->dim_offset[i + 1] - layout->dim_offset[i]);
      const auto a = layout->factors[i]->ambient(ids[i], part);
      out.insert(out.end(), a.begin(), a.end());
    }
    return out;
  };
  def.from_ambient = [layout](int code, std::span<const Dual> a) {
    const auto ids = layout->decode(code);
    DualVec out;
    for (std::size_t i = 0; i < layout->factors.size(); ++i) {
      const auto part = a.subspan(layout->amb_offset[i], layout->amb_offset[i + 1] - layout->amb_offset[i]);
      const auto x = layout->factors[i]->chart_coords(ids[i], part);
      out.insert(out.end(), x.begin(), x.end());
    }
    return out;
  };
  def.best_chart = [layout](std::span<const double> a) {
    std::vector<int> ids(layout->factors.size());
    for (std::size_t i = 0; i < layout->factors.size(); ++i) {
      ids[i] = layout->factors[i]->best_chart(
          a.subspan(layout->amb_offset[i], layout->amb_offset[i + 1] - layout->amb_offset[i]));
    }
    return layout->encode(ids);
  };
  def.margin = [layout](int code, std::span<const double> x) {
    const auto ids = layout->decode(code);
    double m = kInf;
    for (std::size_t i = 0; i < layout->factors.size(); ++i) {
      const auto part = x.subspan(layout->dim_offset[i], layout->dim_offset[i + 1] - layout->dim_offset[i]);
      m = std::min(m, layout->factors[i]->margin(ids[i], part));
    }
    return m;
  };
  def.sampler = [layout](Rng& rng) {
    std::vector<int> ids;
    std::vector<double> coords;
    for (const auto& f : layout->factors) {
      Point q = f->sample(rng);
      ids.push_back(q.chart);
      coords.insert(coords.end(), q.coords.begin(), q.coords.end());
    }
    return Point{layout->encode(ids), std::move(coords)};
  };
  return std::make_shared<ChartedSpace>(std::move(def));
}

SpacePtr power_space(const SpacePtr& factor, int copies, std::string name) {
  if (copies < 0) throw ContractViolation("power_space: negative exponent");
  return product_space(std::vector<SpacePtr>(static_cast<std::size_t>(copies), factor), std::move(name));
}

std::vector<Point> split_point(const ChartedSpace& product, const Point& p) {
  std::vector<Point> parts;
  int code = p.chart;
  std::size_t offset = 0;
  for (const auto& f : product.factors()) {
    const int n = static_cast<int>(f->charts().size());
    const auto d = static_cast<std::size_t>(f->dimension());
    parts.push_back(Point{code % n, std::vector<double>(p.coords.begin() + static_cast<std::ptrdiff_t>(offset),
                                                        p.coords.begin() + static_cast<std::ptrdiff_t>(offset + d))});
    code /= n;
    offset += d;
  }
  return parts;
}

Point join_points(const ChartedSpace& product, std::span<const Point> parts) {
  if (parts.size() != product.factors().size()) throw ContractViolation("join_points: factor count mismatch");
  int code = 0;
  int scale = 1;
  std::vector<double> coords;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    code += parts[i].chart * scale;
    scale *= static_cast<int>(product.factors()[i]->charts().size());
    coords.insert(coords.end(), parts[i].coords.begin(), parts[i].coords.end());
  }
  return Point{code, std::move(coords)};
}

SmoothMap::SmoothMap(SpacePtr source, SpacePtr target, AmbientMap fn, std::string name)
    : source_(std::move(source)), target_(std::move(target)), fn_(std::move(fn)), name_(std::move(name)) {
  if (!source_ || !target_ || !fn_) throw ContractViolation("SmoothMap: incomplete definition");
}

Point SmoothMap::operator()(const Point& p) const {
  const DualVec x = lift(p.coords);
  const auto out = values(fn_(source_->ambient(p.chart, x)));
  if (out.size() != static_cast<std::size_t>(target_->ambient_dimension()))
    throw ContractViolation(name_ + ": image has wrong ambient dimension");
  return target_->from_ambient(out);
}

Eigen::MatrixXd SmoothMap::jacobian(const Point& p, JacobianMode mode) const {
  return jacobian(p, (*this)(p).chart, mode);
}

Eigen::MatrixXd SmoothMap::jacobian(const Point& p, int target_chart, JacobianMode mode) const {
  const int n = source_->dimension();
  const int m = target_->dimension();
  Eigen::MatrixXd jac(m, n);
  if (n == 0 || m == 0) return jac;
  if (mode == JacobianMode::Dual) {
    DualVec x = lift(p.coords);
    for (int j = 0; j < n; ++j) {
      x[static_cast<std::size_t>(j)].d = 1.0;
      const auto y = target_->chart_coords(target_chart, fn_(source_->ambient(p.chart, x)));
      for (int i = 0; i < m; ++i) jac(i, j) = y[static_cast<std::size_t>(i)].d;
      x[static_cast<std::size_t>(j)].d = 0.0;
    }
    return jac;
  }
  // Central differences with one Richardson level.
  constexpr double h = 1e-4;
  auto image = [&](int j, double t) {
    DualVec x = lift(p.coords);
    x[static_cast<std::size_t>(j)].v += t;
    return values(target_->chart_coords(target_chart, fn_(source_->ambient(p.chart, x))));
  };
  for (int j = 0; j < n; ++j) {
    const auto fp = image(j, h);
    const auto fm = image(j, -h);
    const auto hp = image(j, h / 2);
    const auto hm = image(j, -h / 2);
    for (int i = 0; i < m; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const double d1 = target_->wrap_difference(i, fp[ii] - fm[ii]) / (2 * h);
      const double d2 = target_->wrap_difference(i, hp[ii] - hm[ii]) / h;
      jac(i, j) = (4.0 * d2 - d1) / 3.0;
    }
  }
  return jac;
}

SmoothMap compose(const SmoothMap& f, const SmoothMap& h) {
  if (h.target()->ambient_dimension() != f.source()->ambient_dimension() ||
      h.target()->dimension() != f.source()->dimension())
    throw ContractViolation("compose: " + f.name() + " after " + h.name() + " has mismatched spaces");
  auto ff = f.ambient_map();
  auto hh = h.ambient_map();
  return SmoothMap(h.source(), f.target(), [ff, hh](std::span<const Dual> a) { return ff(hh(a)); },
                   f.name() + "o" + h.name());
}

SmoothMap identity_map(const SpacePtr& space) {
  return SmoothMap(space, space, [](std::span<const Dual> a) { return DualVec(a.begin(), a.end()); }, "id");
}

double transition_roundtrip_residual(const ChartedSpace& space, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Point p = space.sample(rng);
    for (const auto& c : space.charts()) {
      const auto q = space.transition(p, c.id);
      if (!q) continue;
      const auto back = space.transition(*q, p.chart);
      if (!back) {
        worst = kInf;
        continue;
      }
      for (std::size_t i = 0; i < p.coords.size(); ++i) {
        worst = std::max(worst, std::abs(space.wrap_difference(static_cast<int>(i), back->coords[i] - p.coords[i])));
      }
    }
  }
  return worst;
}

double chain_rule_residual(const SmoothMap& f, const SmoothMap& h, int samples, std::uint64_t seed) {
  Rng rng(seed);
  const SmoothMap fh = compose(f, h);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Point p = h.source()->sample(rng);
    const Point q = h(p);
    const Eigen::MatrixXd jh = h.jacobian(p, q.chart);
    const Point r = f(q);
    const Eigen::MatrixXd jf = f.jacobian(q, r.chart);
    const Eigen::MatrixXd jfh = fh.jacobian(p, r.chart);
    if (jfh.size() == 0) continue;
    worst = std::max(worst, (jfh - jf * jh).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace ddv
