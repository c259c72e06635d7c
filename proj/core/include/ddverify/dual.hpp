#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace ddv {

// Forward-mode dual number carrying one directional derivative. Every map in
// the engine is written against Dual so Jacobians come out exact to rounding.
struct Dual {
  double v = 0.0;
  double d = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(double value, double deriv) : v(value), d(deriv) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) {
    d = (d * o.v - v * o.d) / (o.v * o.v);
    v /= o.v;
    return *this;
  }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.d}; }

inline Dual sin(const Dual& a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(const Dual& a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual exp(const Dual& a) {
  const double e = std::exp(a.v);
  return {e, e * a.d};
}
inline Dual sqrt(const Dual& a) {
  const double s = std::sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}

using DualVec = std::vector<Dual>;

inline DualVec lift(std::span<const double> x) { return DualVec(x.begin(), x.end()); }

inline std::vector<double> values(std::span<const Dual> x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto& e : x) out.push_back(e.v);
  return out;
}

inline std::vector<double> derivatives(std::span<const Dual> x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto& e : x) out.push_back(e.d);
  return out;
}

}  // namespace ddv
