#include "linsolve.hpp"

namespace intfac::detail {

std::optional<std::vector<Rational>> solve_linear(std::vector<SparseRow> rows, std::vector<Rational> rhs,
                                                  std::size_t unknowns)
{
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, column)
    std::vector<bool> used(rows.size(), false);
    for (std::size_t col = 0; col < unknowns; ++col) {
        std::size_t best = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r] || !rows[r].count(col)) continue;
            if (best == rows.size() || rows[r].size() < rows[best].size()) best = r;
        }
        if (best == rows.size()) continue;
        used[best] = true;
        const Rational inv = Rational(1) / rows[best].at(col);
        for (auto& [c, v] : rows[best]) v *= inv;
        rhs[best] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == best) continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end()) continue;
            const Rational f = it->second;
            for (const auto& [c, v] : rows[best]) {
                Rational& slot = rows[r][c];
                slot -= f * v;
                if (slot == 0) rows[r].erase(c);
            }
            rhs[r] -= f * rhs[best];
        }
        pivots.emplace_back(best, col);
    }
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!used[r] && rhs[r] != 0) return std::nullopt;
    std::vector<Rational> u(unknowns, Rational(0));
    for (const auto& [r, col] : pivots) u[col] = rhs[r];
    return u;
}

} // namespace intfac::detail
