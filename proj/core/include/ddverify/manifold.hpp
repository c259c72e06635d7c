#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ddverify/dual.hpp"

namespace ddv {

using Rng = std::mt19937_64;

/// A point of a charted space: chart id plus chart coordinates.
struct Point {
  int chart = 0;
  std::vector<double> coords;
};

/// An open coordinate box. Periodic coordinates ignore their bounds.
struct Chart {
  int id = 0;
  std::string label;
  std::vector<double> lo;
  std::vector<double> hi;
};

using AmbientMap = std::function<DualVec(std::span<const Dual>)>;

/// Everything needed to build a ChartedSpace.
///
/// Each space comes with an ambient representation (unit quaternions for
/// SO(3), plain coordinates for R^n, ...). Charts are read off the ambient
/// vector, so transition maps are `from_ambient(k', to_ambient(k, x))` and
/// smooth maps between spaces can be written once, on ambient vectors.
struct ChartedSpaceDef {
  std::string name;
  int dimension = 0;
  int ambient_dimension = 0;
  std::vector<Chart> charts;
  std::vector<double> periods;  // one per coordinate, 0 = not periodic
  std::function<DualVec(int chart, std::span<const Dual> coords)> to_ambient;
  std::function<DualVec(int chart, std::span<const Dual> ambient)> from_ambient;
  std::function<int(std::span<const double> ambient)> best_chart;
  // Positive inside the chart; roughly the distance to its boundary.
  // Defaults to the distance to the faces of the chart box.
  std::function<double(int chart, std::span<const double> coords)> margin;
  // Defaults to rejection sampling of `sample_box` (or the chart boxes).
  std::function<Point(Rng&)> sampler;
  std::vector<double> sample_lo;
  std::vector<double> sample_hi;
  // Non-empty for product spaces: the factors, in order.
  std::vector<std::shared_ptr<const class ChartedSpace>> factors;
};

class ChartedSpace {
 public:
  explicit ChartedSpace(ChartedSpaceDef def);

  const std::string& name() const { return def_.name; }
  int dimension() const { return def_.dimension; }
  int ambient_dimension() const { return def_.ambient_dimension; }
  const std::vector<Chart>& charts() const { return def_.charts; }
  double period(int coord) const { return def_.periods[static_cast<std::size_t>(coord)]; }
  bool is_product() const { return !def_.factors.empty(); }
  const std::vector<std::shared_ptr<const ChartedSpace>>& factors() const { return def_.factors; }

  /// Builds a point, reducing periodic coordinates to their fundamental domain.
  /// Throws ContractViolation for an unknown chart, wrong length, or a point
  /// outside the chart.
  Point make_point(int chart, std::vector<double> coords) const;

  std::vector<double> ambient(const Point& p) const;
  DualVec ambient(int chart, std::span<const Dual> coords) const;
  DualVec chart_coords(int chart, std::span<const Dual> ambient) const;
  int best_chart(std::span<const double> ambient) const;
  /// Point in the best chart for this ambient vector.
  Point from_ambient(std::span<const double> ambient) const;

  /// Re-expresses `p` in `target_chart`; nullopt when `p` is not in it.
  std::optional<Point> transition(const Point& p, int target_chart) const;

  double margin(const Point& p) const;
  double margin(int chart, std::span<const double> coords) const;
  bool contains(int chart, std::span<const double> coords) const { return margin(chart, coords) > 0.0; }

  Point sample(Rng& rng) const;

  /// Wraps a coordinate difference into (-period/2, period/2] for periodic coords.
  double wrap_difference(int coord, double delta) const;

 private:
  ChartedSpaceDef def_;
};

using SpacePtr = std::shared_ptr<const ChartedSpace>;

/// R^n with a single box chart. The box is the chart domain; `sample_half_width`
/// bounds the sampling region.
SpacePtr euclidean_space(int n, double half_width = 1e6, double sample_half_width = 2.0,
                         std::string name = {});

/// A box [lo, hi] as a single-chart space (unit cubes for integration).
SpacePtr box_space(std::vector<double> lo, std::vector<double> hi, std::string name = {});

/// The circle R/2piZ with one periodic angle coordinate.
SpacePtr circle_space();

/// Cartesian product; chart ids are mixed-radix codes of the factor chart ids.
SpacePtr product_space(std::vector<SpacePtr> factors, std::string name = {});
SpacePtr power_space(const SpacePtr& factor, int copies, std::string name = {});

/// Splits a product point into per-factor points (no validation of reduction).
std::vector<Point> split_point(const ChartedSpace& product, const Point& p);
Point join_points(const ChartedSpace& product, std::span<const Point> parts);

enum class JacobianMode { Dual, CentralDifference };

/// A smooth map between charted spaces, given on ambient vectors.
class SmoothMap {
 public:
  SmoothMap(SpacePtr source, SpacePtr target, AmbientMap fn, std::string name = {});

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  const std::string& name() const { return name_; }

  /// Image point, expressed in the target's best chart.
  Point operator()(const Point& p) const;
  /// Ambient image of an ambient source vector.
  DualVec apply(std::span<const Dual> ambient) const { return fn_(ambient); }

  /// target-dim x source-dim Jacobian, in the chart of `p` and the chart
  /// chosen by operator() for the image.
  Eigen::MatrixXd jacobian(const Point& p, JacobianMode mode = JacobianMode::Dual) const;
  /// Same, with the target chart fixed by the caller.
  Eigen::MatrixXd jacobian(const Point& p, int target_chart, JacobianMode mode = JacobianMode::Dual) const;

  const AmbientMap& ambient_map() const { return fn_; }

 private:
  SpacePtr source_;
  SpacePtr target_;
  AmbientMap fn_;
  std::string name_;
};

/// F after H.
SmoothMap compose(const SmoothMap& f, const SmoothMap& h);
SmoothMap identity_map(const SpacePtr& space);

/// Mutual-inverse residual of all chart transitions at sampled overlap points.
double transition_roundtrip_residual(const ChartedSpace& space, int samples, std::uint64_t seed);

/// max |J_{F∘H}(p) - J_F(H(p)) J_H(p)| over sampled p.
double chain_rule_residual(const SmoothMap& f, const SmoothMap& h, int samples, std::uint64_t seed);

}  // namespace ddv
