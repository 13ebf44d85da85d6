// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NAFCODE_SRC_SIMPLEX_HPP
#define NAFCODE_SRC_SIMPLEX_HPP

#include <vector>

namespace nafcode::detail {

/// min c'x subject to A x <= b, x >= 0. Dense two-phase tableau with
/// Bland's rule. Throws InternalError when infeasible or unbounded.
double solve_lp(const std::vector<double>& c, const std::vector<std::vector<double>>& a,
                const std::vector<double>& b, std::vector<double>* x = nullptr);

}  // namespace nafcode::detail

#endif  // NAFCODE_SRC_SIMPLEX_HPP
