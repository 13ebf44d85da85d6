// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NAFCODE_AUDIT_HPP
#define NAFCODE_AUDIT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "nafcode/codes.hpp"

namespace nafcode::algebra {

struct AuditMode {
  enum class Kind { Exhaustive, Sampled };
  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 20260101;

  static AuditMode exhaustive() { return {}; }
  static AuditMode sampled(std::uint64_t count, std::uint64_t seed = 20260101) {
    return {Kind::Sampled, count, seed};
  }
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

struct NvdReport {
  /// min |det(X)|^2 over the scanned nonzero differences, recovered exactly
  /// from the rounded ring determinant.
  double min_det2 = 0.0;
  /// Ring element c * det(X) at the minimum, c = CodeSpec::det_multiplier().
  RingElement min_det_ring;
  std::vector<cplx> argmin;  // symbol-difference vector at the minimum
  int min_rank = 0;
  int full_rank = 0;
  std::uint64_t evaluated = 0;
  std::uint64_t rank_deficient = 0;
  /// Largest |c*det - round(c*det)| seen; stays tiny when c*det is integral.
  double max_rounding_residual = 0.0;
};

/// Scans codeword differences. By linearity, differences of codewords are the
/// codewords of symbol differences, so every nonzero vector over the alphabet
/// is one difference.
NvdReport nvd_audit(const codes::CodeSpec& code, std::span<const cplx> difference_alphabet,
                    const AuditMode& mode,
                    std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace nafcode::algebra

#endif  // NAFCODE_AUDIT_HPP
