#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace surropt {

/// Seeded generator with explicit draw algorithms so that identical seeds
/// give identical streams on every platform (std::uniform_*_distribution and
/// std::shuffle are implementation-defined and would break byte-level
/// reproducibility of sampled files).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Unbiased draw in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

  /// 53-bit uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (cached spare).
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace surropt
