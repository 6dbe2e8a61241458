#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace widecal {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat23 = Eigen::Matrix<double, 2, 3>;
using Mat2X = Eigen::Matrix<double, 2, Eigen::Dynamic>;
using Quat = Eigen::Quaterniond;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// Error taxonomy. Coarse failures throw; per-feature refinement failures are
// reported through status codes instead (see refine.hpp).
struct CalibError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : CalibError {
  using CalibError::CalibError;
};
struct ConfigError : CalibError {
  using CalibError::CalibError;
};
struct IoError : CalibError {
  using CalibError::CalibError;
};
struct SchemaError : CalibError {
  using CalibError::CalibError;
};
struct UnknownTag : CalibError {
  using CalibError::CalibError;
};
struct InsufficientPoints : CalibError {
  using CalibError::CalibError;
};
struct PoseDiverged : CalibError {
  using CalibError::CalibError;
};
struct SolverDiverged : CalibError {
  using CalibError::CalibError;
};
struct RankDeficient : CalibError {
  using CalibError::CalibError;
};

// Deterministic RNG. std::mt19937_64 gives reproducible streams, but the
// standard distributions do not, so uniform/normal draws are built from raw
// bits here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    // splitmix64
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  size_t uniform_index(size_t n) { return static_cast<size_t>(next_u64() % n); }

  // Box-Muller, one value per call (the pair's second half is cached).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * kPi * u2);
    have_cached_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

// Worker count: hardware concurrency capped by the WIDECAL_THREADS env var.
inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("WIDECAL_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
  }
  return n;
}

// Static-chunked parallel loop. fn(i) must only write state owned by index i,
// which keeps results independent of the schedule.
inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  unsigned workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex err_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace widecal
