#pragma once

#include "intfac/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace intfac::detail {

using SparseRow = std::map<std::size_t, Rational>;

// Solves rows[i] . u = rhs[i] over Q by Gauss-Jordan elimination. Free
// unknowns are set to 0; nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve_linear(std::vector<SparseRow> rows, std::vector<Rational> rhs,
                                                  std::size_t unknowns);

} // namespace intfac::detail
