#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace kac {

using cplx = std::complex<double>;

/// Thrown when a quadrature, interpolation or time step fails to reach its
/// accuracy target. The CLI maps it to exit code 2.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Global worker cap for parallel_for (set once by the CLI --threads flag).
int max_threads();
void set_max_threads(int n);

/// Chunked parallel map over [begin, end). Each index writes to its own
/// preallocated slot, so results are independent of the thread schedule.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& body);

/// FNV-1a, used for config hashes in run manifests.
std::uint64_t fnv1a(const std::string& bytes);

/// Deterministic stream RNG (splitmix64 core). Identical across platforms,
/// unlike the std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}
  /// Substream for sample index i, independent of draw order elsewhere.
  static Rng stream(std::uint64_t seed, std::uint64_t i) {
    return Rng(seed + 0x632be59bd9b4e019ull * (i + 1));
  }
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double normal() {  // Box-Muller, one value per call
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  cplx unit_phase() {
    double t = 6.283185307179586 * uniform();
    return {std::cos(t), std::sin(t)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace kac
