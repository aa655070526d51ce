#include "surropt/lhs.hpp"

#include <numeric>
#include <vector>

#include "surropt/errors.hpp"

namespace surropt {

Matrix lhs_sample(int n_samples, const Vector& lo, const Vector& hi, Rng& rng) {
  if (n_samples < 1) throw ConfigError("lhs_sample: n_samples must be >= 1");
  if (lo.size() != hi.size() || lo.size() == 0) {
    throw ConfigError("lhs_sample: bounds must be non-empty and equal length");
  }
  for (Eigen::Index d = 0; d < lo.size(); ++d) {
    if (!(lo[d] < hi[d])) {
      throw ConfigError("lhs_sample: requires lo < hi in every dimension");
    }
  }

  const auto dims = lo.size();
  Matrix samples(n_samples, dims);
  std::vector<int> strata(n_samples);
  for (Eigen::Index d = 0; d < dims; ++d) {
    std::iota(strata.begin(), strata.end(), 0);
    rng.shuffle(strata);
    const double width = (hi[d] - lo[d]) / n_samples;
    for (int i = 0; i < n_samples; ++i) {
      samples(i, d) = lo[d] + (strata[i] + rng.uniform()) * width;
    }
  }
  return samples;
}

Matrix lhs_sample(int n_samples, const Vector& lo, const Vector& hi,
                  std::uint64_t seed) {
  Rng rng(seed);
  return lhs_sample(n_samples, lo, hi, rng);
}

}  // namespace surropt
