#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "ddverify/manifold.hpp"

namespace ddv {

struct VerifyOptions {
  int samples = 200;
  double tol = 1e-6;
  std::uint64_t seed = 42;
  int threads = 1;
};

struct FrameSample {
  Point point;
  std::vector<Eigen::VectorXd> frame;
};

/// Seeded (point, q-frame) samples, generated sequentially so the batch does
/// not depend on evaluation order. Points with margin below `min_margin` are
/// rejected and redrawn.
std::vector<FrameSample> sample_frames(const ChartedSpace& space, int degree, int count, std::uint64_t seed,
                                       double min_margin = 1e-2);

/// Evaluates fn(0..count-1) on `threads` workers; results are stored by index,
/// so the output is identical for any thread count. The first exception (by
/// index) is rethrown.
std::vector<double> parallel_evaluate(std::size_t count, const std::function<double(std::size_t)>& fn,
                                      int threads);

std::vector<double> evaluate_samples(const std::vector<FrameSample>& samples,
                                     const std::function<double(const FrameSample&)>& fn, int threads);

}  // namespace ddv
