// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include "nafcode/codes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace nafcode::codes {

cplx Constellation::axis() const {
  return kind == ConstellationKind::QAM ? cplx{0.0, 1.0} : cplx{-0.5, std::numbers::sqrt3 / 2.0};
}

cplx Constellation::point(int pa, int pb) const {
  const double a = 2.0 * pa - (side - 1);
  const double b = 2.0 * pb - (side - 1);
  return energy_scale * (a + b * axis());
}

std::vector<cplx> Constellation::difference_alphabet() const {
  std::vector<cplx> out;
  const cplx u = axis();
  for (int a = -(side - 1); a <= side - 1; ++a) {
    for (int b = -(side - 1); b <= side - 1; ++b) {
      out.push_back(2.0 * a + 2.0 * b * u);
    }
  }
  return out;
}

double Constellation::bits_per_symbol() const { return std::log2(static_cast<double>(M)); }

Constellation make_constellation(ConstellationKind kind, int M) {
  if (M != 4 && M != 16 && M != 64) {
    throw InvalidArgument("unsupported constellation size " + std::to_string(M) +
                          " (expected 4, 16 or 64)");
  }
  Constellation c;
  c.kind = kind;
  c.M = M;
  c.side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(M))));
  c.energy_scale = 1.0;
  double energy = 0.0;
  for (int pa = 0; pa < c.side; ++pa) {
    for (int pb = 0; pb < c.side; ++pb) energy += std::norm(c.point(pa, pb));
  }
  c.energy_scale = 1.0 / std::sqrt(energy / M);
  for (int pa = 0; pa < c.side; ++pa) {
    for (int pb = 0; pb < c.side; ++pb) c.points.push_back(c.point(pa, pb));
  }
  return c;
}

ConstellationKind parse_constellation_kind(std::string_view s) {
  std::string key(s);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  if (key == "QAM") return ConstellationKind::QAM;
  if (key == "HEX") return ConstellationKind::HEX;
  throw InvalidArgument("unknown constellation kind '" + std::string(s) + "'");
}

double CodeSpec::det_multiplier() const {
  return std::pow(generator.scale, -static_cast<double>(N * block_dim()));
}

CodeSpec code_spec(CodeId id) {
  const auto params = algebra::algebra_params(id);
  CodeSpec spec;
  spec.id = id;
  spec.N = params.blocks;
  spec.ns = params.dim / 2;
  spec.generator = algebra::generator_matrix(id);
  spec.ring = RingId::Gaussian;
  spec.symbols_per_codeword = spec.N * params.dim * params.dim;
  return spec;
}

CMatrix Codeword::assembled() const {
  Eigen::Index total = 0;
  for (const auto& b : blocks) total += b.rows();
  CMatrix out = CMatrix::Zero(total, total);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    out.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return out;
}

Codeword encode(const CodeSpec& code, std::span<const cplx> symbols) {
  const auto k = static_cast<std::size_t>(code.symbols_per_codeword);
  if (symbols.size() != k) {
    throw InvalidArgument("encode: expected " + std::to_string(k) + " symbols, got " +
                          std::to_string(symbols.size()));
  }
  const Eigen::Map<const CVector> s(symbols.data(), static_cast<Eigen::Index>(k));
  const CVector v = code.generator.matrix() * s;
  const int n = code.block_dim();
  Codeword cw;
  for (int j = 0; j < code.N; ++j) {
    CMatrix blk(n, n);
    for (int col = 0; col < n; ++col) {
      for (int r = 0; r < n; ++r) blk(r, col) = v(j * n * n + col * n + r);
    }
    cw.blocks.push_back(std::move(blk));
  }
  return cw;
}

std::vector<CMatrix> split_frames(const Codeword& cw, int ns) {
  if (ns < 1) throw InvalidArgument("split_frames: ns must be positive");
  std::vector<CMatrix> frames;
  for (const auto& blk : cw.blocks) {
    if (blk.rows() != 2 * ns || blk.cols() != 2 * ns) {
      throw InvalidArgument("split_frames: block is " + std::to_string(blk.rows()) + "x" +
                            std::to_string(blk.cols()) + ", expected " + std::to_string(2 * ns) +
                            "x" + std::to_string(2 * ns));
    }
    CMatrix c(ns, 4 * ns);
    c.leftCols(2 * ns) = blk.topRows(ns);
    c.rightCols(2 * ns) = blk.bottomRows(ns);
    frames.push_back(std::move(c));
  }
  return frames;
}

Codeword join_frames(std::span<const CMatrix> frames, int ns) {
  Codeword cw;
  for (const auto& c : frames) {
    if (c.rows() != ns || c.cols() != 4 * ns) throw InvalidArgument("join_frames: bad frame shape");
    CMatrix blk(2 * ns, 2 * ns);
    blk.topRows(ns) = c.leftCols(2 * ns);
    blk.bottomRows(ns) = c.rightCols(2 * ns);
    cw.blocks.push_back(std::move(blk));
  }
  return cw;
}

namespace {

void write_row(std::ostream& os, const auto& row) {
  for (Eigen::Index c = 0; c < row.size(); ++c) {
    if (c) os << ',';
    os << row(c).real() << ',' << row(c).imag();
  }
  os << '\n';
}

}  // namespace

void write_generator_csv(std::ostream& os, const CodeSpec& code) {
  const auto old = os.precision(17);
  const int n = code.block_dim();
  os << "# code=" << algebra::to_string(code.id) << " N=" << code.N << " ns=" << code.ns
     << " K=" << code.symbols_per_codeword << " scale=" << code.generator.scale << '\n';
  os << "# rows: vec(Xi_1)..vec(Xi_N), column-major inside each " << n << "x" << n << " block\n";
  os << "# cols: symbol index = c*" << n * code.N << " + l*" << code.N
     << " + b (c: power of e, l: shaping basis of K/F, b: power of zeta in O_F)\n";
  const CMatrix g = code.generator.matrix();
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    if (c) os << ',';
    os << 's' << c << "_re,s" << c << "_im";
  }
  os << '\n';
  for (Eigen::Index r = 0; r < g.rows(); ++r) write_row(os, g.row(r));
  os.precision(old);
}

void write_matrix_csv(std::ostream& os, const CMatrix& m) {
  const auto old = os.precision(17);
  for (Eigen::Index r = 0; r < m.rows(); ++r) write_row(os, m.row(r));
  os.precision(old);
}

CMatrix read_matrix_csv(std::istream& is) {
  std::vector<std::vector<cplx>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (const std::exception&) {
        if (rows.empty() && vals.empty()) break;  // header line
        throw IoError("matrix csv: malformed value at line " + std::to_string(lineno));
      }
    }
    if (vals.empty()) continue;
    if (vals.size() % 2) throw IoError("matrix csv: odd value count at line " + std::to_string(lineno));
    std::vector<cplx> row;
    for (std::size_t i = 0; i < vals.size(); i += 2) row.emplace_back(vals[i], vals[i + 1]);
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError("matrix csv: ragged row at line " + std::to_string(lineno));
    }
    rows.push_back(std::move(row));
  }
  CMatrix m(static_cast<Eigen::Index>(rows.size()),
            rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

}  // namespace nafcode::codes
