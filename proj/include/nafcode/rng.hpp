// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NAFCODE_RNG_HPP
#define NAFCODE_RNG_HPP

#include <cstdint>
#include <random>

#include "nafcode/common.hpp"

namespace nafcode {

/// A seeded random stream. Streams are keyed by (seed, a, b) so that a trial's
/// draws depend only on its key and never on scheduling.
class Stream {
 public:
  explicit Stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0);

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t uniform_int(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  /// Circularly-symmetric complex Gaussian with unit variance.
  cplx complex_normal();
  CMatrix complex_normal(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace nafcode

#endif  // NAFCODE_RNG_HPP
