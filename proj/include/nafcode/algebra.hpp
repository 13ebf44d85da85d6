// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NAFCODE_ALGEBRA_HPP
#define NAFCODE_ALGEBRA_HPP

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "nafcode/common.hpp"

namespace nafcode::algebra {

/// Rings of integers of the symbol fields: Z[i] (QAM) and Z[j] (HEX),
/// j = exp(2*pi*i/3).
enum class RingId { Gaussian, Eisenstein };

/// a + b*u with u = i (Gaussian) or u = j (Eisenstein).
struct RingElement {
  long long a = 0;
  long long b = 0;
  RingId ring = RingId::Gaussian;

  cplx value() const;
  /// Field norm |a + b u|^2, computed exactly and rounded once to double.
  double norm() const;
  friend bool operator==(const RingElement&, const RingElement&) = default;
};

/// The bundled block-diagonal NVD codes.
enum class CodeId { Golden, C21, C41, Perfect4, C22 };

std::string_view to_string(CodeId id);
/// Accepts the canonical names, case-insensitively.
CodeId parse_code_id(std::string_view name);
std::span<const CodeId> all_codes();

/// Numeric description of one cyclic division algebra code.
///
/// The base field F is Q(i)(zeta) with zeta = exp(2*pi*i/zeta_order); the
/// cooperation-frame embeddings tau_j map zeta -> zeta^tau_powers[j]. The
/// cyclic extension K = F(theta) is generated by a totally real theta whose
/// conjugates under sigma are listed in theta_conjugates. gamma = zeta^gamma_power.
struct AlgebraParams {
  int zeta_order = 4;
  std::vector<int> tau_powers;          // one per diagonal block
  int gamma_power = 1;                  // gamma = zeta^gamma_power
  std::vector<double> theta_conjugates; // sigma^k(theta), k = 0..dim-1
  /// Ideal generator alpha = alpha_re(theta) + i*alpha_im(theta), polynomials
  /// in theta with integer coefficients (lowest degree first).
  std::vector<long long> alpha_re;
  std::vector<long long> alpha_im;
  /// Basis of the shaping lattice of O_K over O_F, as integer polynomials in theta.
  std::vector<std::vector<long long>> ideal_basis;
  /// Gram constant of the shaping lattice: sum_k |sigma^k(alpha nu)|^2 = ideal_norm.
  double ideal_norm = 1.0;
  int blocks = 1;  // N
  int dim = 2;     // 2 * ns

  cplx gamma() const;
  cplx theta_value() const { return theta_conjugates.front(); }
};

AlgebraParams algebra_params(CodeId id);

/// Linear map from the K information symbols to the stacked vec() of the
/// diagonal blocks (column-major inside a block, blocks in order).
struct GeneratorMatrix {
  CMatrix entries;     // algebraic-integer entries, unscaled
  double scale = 1.0;  // energy normalization

  CMatrix matrix() const { return scale * entries; }
  bool is_unitary(double tol = 1e-9) const;
};

/// exp(2*pi*i/n).
cplx cyclotomic_unit(int n);

GeneratorMatrix generator_matrix(CodeId id);

/// Nearest element of the ring; exact ties go to smaller |a|, then smaller |b|.
RingElement round_to_ring(cplx z, RingId ring);

/// Evaluates an integer polynomial (lowest degree first) at x.
double eval_poly(std::span<const long long> coeffs, double x);

}  // namespace nafcode::algebra

#endif  // NAFCODE_ALGEBRA_HPP
