#pragma once

#include <cstdint>

#include "surropt/rng.hpp"
#include "surropt/types.hpp"

namespace surropt {

/// Latin hypercube design: n_samples x dims matrix with exactly one point in
/// each of the n_samples equal strata per dimension. Stratum permutation and
/// within-stratum position both come from the generator, so a fixed seed
/// reproduces the design bit for bit.
Matrix lhs_sample(int n_samples, const Vector& lo, const Vector& hi, Rng& rng);
Matrix lhs_sample(int n_samples, const Vector& lo, const Vector& hi,
                  std::uint64_t seed);

}  // namespace surropt
