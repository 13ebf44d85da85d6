// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NAFCODE_CODES_HPP
#define NAFCODE_CODES_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "nafcode/algebra.hpp"

namespace nafcode::codes {

using algebra::CodeId;
using algebra::RingId;

enum class ConstellationKind { QAM, HEX };

/// A unit-energy M-point constellation on a shifted and scaled ring grid.
///
/// Point (pa, pb), with pa, pb in [0, side), is
///   energy_scale * ((2 pa - (side - 1)) + (2 pb - (side - 1)) * u)
/// where u = i for QAM and u = j for HEX. Point index = pa * side + pb.
struct Constellation {
  ConstellationKind kind = ConstellationKind::QAM;
  int M = 4;
  int side = 2;
  double energy_scale = 1.0;
  std::vector<cplx> points;

  /// Unit generator of the second grid axis (i or j).
  cplx axis() const;
  RingId ring() const { return kind == ConstellationKind::QAM ? RingId::Gaussian : RingId::Eisenstein; }
  /// Grid coordinates -> complex point.
  cplx point(int pa, int pb) const;
  /// Unnormalized ring differences between any two points, including 0.
  std::vector<cplx> difference_alphabet() const;
  double bits_per_symbol() const;
};

/// M must be 4, 16 or 64.
Constellation make_constellation(ConstellationKind kind, int M);
ConstellationKind parse_constellation_kind(std::string_view s);

struct CodeSpec {
  CodeId id = CodeId::Golden;
  int N = 1;   // diagonal blocks = cooperation frames
  int ns = 1;  // source antennas
  algebra::GeneratorMatrix generator;
  RingId ring = RingId::Gaussian;
  int symbols_per_codeword = 4;

  int block_dim() const { return 2 * ns; }
  /// Multiplier c such that c * det(X) lies in the ring whenever the
  /// information symbols do.
  double det_multiplier() const;
  /// Channel uses per codeword: 4 N ns.
  int length() const { return 4 * N * ns; }
};

CodeSpec code_spec(CodeId id);

struct Codeword {
  std::vector<CMatrix> blocks;  // Xi_1 .. Xi_N
  CMatrix assembled() const;
};

/// Linear encoding of K complex symbols.
Codeword encode(const CodeSpec& code, std::span<const cplx> symbols);

/// Splits every block into the ns x 4ns transmit matrix
/// C_i = [Xi_i(top ns rows) | Xi_i(bottom ns rows)].
std::vector<CMatrix> split_frames(const Codeword& cw, int ns);

/// Inverse of split_frames.
Codeword join_frames(std::span<const CMatrix> frames, int ns);

/// Complex CSV writers: one matrix row per line, entries as "re,im" pairs.
void write_generator_csv(std::ostream& os, const CodeSpec& code);
void write_matrix_csv(std::ostream& os, const CMatrix& m);
CMatrix read_matrix_csv(std::istream& is);

}  // namespace nafcode::codes

#endif  // NAFCODE_CODES_HPP
