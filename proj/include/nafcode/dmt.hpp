// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NAFCODE_DMT_HPP
#define NAFCODE_DMT_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace nafcode::dmt {

struct Vertex {
  double r = 0.0;
  double d = 0.0;
};

/// Piecewise-linear tradeoff curve stored by its vertices. Evaluation past
/// the last vertex returns 0.
struct DmtCurve {
  std::vector<Vertex> vertices;

  double eval(double r) const;
  /// r starts at 0 and strictly increases, d is non-increasing and convex,
  /// and the final d is 0. Throws InvalidArgument otherwise.
  void validate() const;
  /// Largest multiplexing gain, i.e. where d reaches 0.
  double max_r() const { return vertices.empty() ? 0.0 : vertices.back().r; }
};

/// Dimensions (m, n, l) of the product of an m x l and an l x n Rayleigh
/// matrix. Requires m >= l and n >= l.
class ProductChannelDims {
 public:
  ProductChannelDims(int m, int n, int l);

  int m() const { return m_; }
  int n() const { return n_; }
  int l() const { return l_; }
  int delta() const { return m_ > n_ ? m_ - n_ : n_ - m_; }
  int q() const { return m_ < n_ ? m_ : n_; }

 private:
  int m_;
  int n_;
  int l_;
};

/// Vertices (k, (m - k)(n - k)), k = 0 .. min(m, n).
DmtCurve rayleigh_dmt(int m, int n);

/// Closed form d(s) = (l - s)(q - s) - floor([(l - delta - s)^+]^2 / 2) / 2 at
/// integer s = 0 .. l.
DmtCurve product_dmt(const ProductChannelDims& dims);

/// Independent evaluation of the product-channel tradeoff as the exact
/// minimum of the eigenvalue-exponent linear program at multiplexing gain r.
double product_dmt_oracle(const ProductChannelDims& dims, double r);

/// Pointwise sum f(r) + g(scale * r) for two curves, keeping every breakpoint.
DmtCurve add_scaled(const DmtCurve& f, const DmtCurve& g, double scale);

/// Lower bound d_F(r) + min over theta of sum_i d_i(2 N theta_i r).
/// Without relay_dims every relay is (m = ns, n = nd, l = nr).
DmtCurve naf_bound(int ns, int nr, int nd, int relays,
                   std::optional<std::span<const ProductChannelDims>> relay_dims = std::nullopt);

/// Minimizes sum_i f_i(x_i) subject to sum_i x_i = x, x_i >= 0, for convex
/// non-increasing curves; returned as a curve in x.
DmtCurve infimal_convolution(std::span<const DmtCurve> curves);

struct DiversityBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool equality = false;
};

/// Bounds on the maximal diversity of the N-relay channel. The product
/// channel of each relay is (ns, nd, nr) when nr <= ns and (nr, nd, ns)
/// otherwise.
DiversityBounds max_diversity_bounds(int ns, int nr, int nd, int relays);

/// CSV with header "r,d".
void write_curve_csv(std::ostream& os, const DmtCurve& curve);
DmtCurve read_curve_csv(std::istream& is);

}  // namespace nafcode::dmt

#endif  // NAFCODE_DMT_HPP
