// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include "nafcode/rng.hpp"

#include <cmath>

namespace nafcode {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(a), hi(a), lo(b), hi(b)};
  return std::mt19937_64(seq);
}

}  // namespace

Stream::Stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
    : engine_(make_engine(seed, a, b)) {}

cplx Stream::complex_normal() {
  static const double kHalf = std::sqrt(0.5);
  const double re = normal();
  const double im = normal();
  return {kHalf * re, kHalf * im};
}

CMatrix Stream::complex_normal(Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = complex_normal();
  }
  return m;
}

}  // namespace nafcode
