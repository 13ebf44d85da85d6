// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NAFCODE_DECODER_HPP
#define NAFCODE_DECODER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "nafcode/codes.hpp"

namespace nafcode::decoder {

/// Real lattice search problem: minimize |target - basis * p|^2 over integer
/// vectors p with every coordinate in [0, levels).
///
/// Coordinates come in pairs (pa, pb) per complex symbol, in symbol order, so
/// lexicographic order on p is lexicographic order on constellation indices.
struct LatticeProblem {
  RMatrix basis;   // 2 * observations x 2 * K
  RVector target;  // realified observation minus the grid offset
  int levels = 2;

  /// Complex map from symbols to the noiseless observation.
  CMatrix symbol_map;
  /// symbol_map applied to the all-corner grid point.
  CVector offset;
  codes::Constellation constellation;

  Eigen::Index dimension() const { return basis.cols(); }
};

inline constexpr std::uint64_t kDefaultExhaustiveBudget = 1'000'000;

/// Realified (interleaved re, im) copy of a complex vector.
RVector realify(const CVector& v);

/// Builds the lattice for y = sqrt(SNR) diag(I (x) He_1, ..., I (x) He_N) G s.
/// One equivalent channel per code block; He_i is 2nd x 2ns.
LatticeProblem build_lattice(const codes::CodeSpec& code, std::span<const CMatrix> channels,
                             double snr, const codes::Constellation& constellation);

/// Sets the target for a whitened observation vector.
void set_target(LatticeProblem& p, const CVector& observation);

/// Exact ML search. Falls back to exhaustive_ml when the basis is
/// numerically rank deficient.
std::vector<int> sphere_decode(const LatticeProblem& p);

/// Full enumeration in lexicographic order. Throws BudgetError when
/// levels^dimension exceeds the budget.
std::vector<int> exhaustive_ml(const LatticeProblem& p,
                               std::uint64_t budget = kDefaultExhaustiveBudget);

/// |target - basis * p|^2 evaluated directly.
double distance(const LatticeProblem& p, std::span<const int> coords);

/// Grid coordinates of the given constellation indices and back.
std::vector<int> coords_from_indices(std::span<const int> indices, int side);
std::vector<int> indices_from_coords(std::span<const int> coords, int side);

}  // namespace nafcode::decoder

#endif  // NAFCODE_DECODER_HPP
