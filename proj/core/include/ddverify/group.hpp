#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ddverify/manifold.hpp"

namespace ddv {

/// A Lie group as a charted space plus its operations on ambient vectors.
struct LieGroup {
  std::string name;
  SpacePtr space;
  // ambient(a) ++ ambient(b) -> ambient(ab)
  AmbientMap multiply;
  AmbientMap inverse;
  std::vector<double> identity;
  // Distance of two ambient representatives (accounts for sign ambiguity etc).
  std::function<double(std::span<const double>, std::span<const double>)> distance;

  DualVec mul(std::span<const Dual> a, std::span<const Dual> b) const;
  std::vector<double> mul(std::span<const double> a, std::span<const double> b) const;
  std::vector<double> inv(std::span<const double> a) const;
  int ambient_dimension() const { return space->ambient_dimension(); }
};

using GroupPtr = std::shared_ptr<const LieGroup>;

}  // namespace ddv
