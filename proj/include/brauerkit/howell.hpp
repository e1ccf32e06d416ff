#pragma once

// Linear algebra over Z/n: Howell normal form, span membership, kernels, and
// the invariant factors of a quotient of submodules of (Z/n)^d.

#include "brauerkit/arith.hpp"

#include <cstdint>
#include <vector>

namespace brauerkit {

using ModRow = std::vector<std::int64_t>;

/// Howell basis of the row span of `rows` in (Z/n)^cols: echelon form, each
/// pivot a divisor of n, entries above a pivot reduced below it, and the rows
/// with zeros in the first j columns spanning everything in the span with
/// that property. Zero rows are dropped.
std::vector<ModRow> howell_form(std::vector<ModRow> rows, std::size_t cols, std::int64_t n);

/// Membership of v in the span of a Howell basis.
bool in_span(const std::vector<ModRow>& howell, ModRow v, std::int64_t n);

/// Generators of {x in (Z/n)^cols : r . x = 0 for every row r}.
std::vector<ModRow> kernel_mod(const std::vector<ModRow>& rows, std::size_t cols, std::int64_t n);

/// Diagonal of the Smith normal form of an integer matrix, nonnegative,
/// each entry dividing the next (zeros last).
std::vector<Integer> smith_diagonal(std::vector<std::vector<Integer>> m);

/// Invariant factors (> 1, ascending, each dividing the next) of Z/B where Z
/// and B are the submodules of (Z/n)^dim spanned by the given rows and B is
/// contained in Z.
std::vector<Integer> quotient_invariant_factors(const std::vector<ModRow>& z_gens,
                                                const std::vector<ModRow>& b_gens, std::size_t dim,
                                                std::int64_t n);

}  // namespace brauerkit
