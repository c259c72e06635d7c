#include "ddverify/sampling.hpp"

#include <exception>
#include <random>
#include <thread>

#include "ddverify/errors.hpp"

namespace ddv {

std::vector<FrameSample> sample_frames(const ChartedSpace& space, int degree, int count, std::uint64_t seed,
                                       double min_margin) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<FrameSample> out;
  out.reserve(static_cast<std::size_t>(count));
  const int n = space.dimension();
  for (int s = 0; s < count; ++s) {
    FrameSample fs;
    int attempts = 0;
    do {
      fs.point = space.sample(rng);
      if (++attempts > 10000) throw ContractViolation(space.name() + ": cannot sample away from chart boundaries");
    } while (space.margin(fs.point) < min_margin);
    for (int i = 0; i < degree; ++i) {
      Eigen::VectorXd v(n);
      for (int k = 0; k < n; ++k) v(k) = normal(rng);
      fs.frame.push_back(std::move(v));
    }
    out.push_back(std::move(fs));
  }
  return out;
}

std::vector<double> parallel_evaluate(std::size_t count, const std::function<double(std::size_t)>& fn,
                                      int threads) {
  std::vector<double> out(count, 0.0);
  std::vector<std::exception_ptr> errors(count);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(threads), count));
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0, count);
  } else {
    std::vector<std::thread> pool;
    const std::size_t block = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * block;
      const std::size_t end = std::min(count, begin + block);
      if (begin >= end) break;
      pool.emplace_back(run, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<double> evaluate_samples(const std::vector<FrameSample>& samples,
                                     const std::function<double(const FrameSample&)>& fn, int threads) {
  return parallel_evaluate(samples.size(), [&](std::size_t i) { return fn(samples[i]); }, threads);
}

}  // namespace ddv
