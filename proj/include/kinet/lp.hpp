#pragma once

#include <optional>
#include <vector>

#include "kinet/qmatrix.hpp"

namespace kinet {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status;
    QVec x;         // primal solution when optimal
    Rat objective;  // c'x when optimal
};

namespace detail {

// Full-tableau primal simplex step with Bland's rule. Tableau layout:
// rows 0..m-1 are [A | b], row m holds reduced costs and -objective.
// Returns false when no entering column exists (current basis optimal).
// Throws nothing; reports unboundedness through the flag.
struct SimplexTableau {
    size_t m, n;
    std::vector<Rat> t;  // (m+1) x (n+1)
    std::vector<size_t> basis;

    Rat& at(size_t i, size_t j) { return t[i * (n + 1) + j]; }
    const Rat& at(size_t i, size_t j) const { return t[i * (n + 1) + j]; }

    void pivot(size_t row, size_t col) {
        Rat inv = Rat(1) / at(row, col);
        for (size_t j = 0; j <= n; ++j) at(row, j) *= inv;
        for (size_t i = 0; i <= m; ++i) {
            if (i == row || at(i, col) == 0) continue;
            Rat f = at(i, col);
            for (size_t j = 0; j <= n; ++j) at(i, j) -= f * at(row, j);
        }
        basis[row] = col;
    }

    // Runs simplex on the allowed column set. Returns true on optimal,
    // false on unbounded.
    bool run(const std::vector<bool>& allowed) {
        for (;;) {
            size_t enter = n;
            for (size_t j = 0; j < n; ++j) {
                if (!allowed[j]) continue;
                if (at(m, j) < 0) {
                    enter = j;
                    break;  // Bland: smallest index
                }
            }
            if (enter == n) return true;
            size_t leave = m;
            for (size_t i = 0; i < m; ++i) {
                if (at(i, enter) <= 0) continue;
                if (leave == m) {
                    leave = i;
                    continue;
                }
                Rat cur = at(i, n) / at(i, enter);
                Rat best = at(leave, n) / at(leave, enter);
                if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
            }
            if (leave == m) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace detail

// Minimizes c'x subject to A x = b, x >= 0, exactly over the rationals.
// Two-phase full-tableau simplex with Bland's rule (no cycling).
inline LpResult simplex_solve(const QMat& A, const QVec& b, const QVec& c) {
    size_t m = A.rows(), n = A.cols();
    if (b.size() != m || c.size() != n) throw error("simplex_solve: dimension mismatch");

    detail::SimplexTableau tab;
    tab.m = m;
    tab.n = n + m;  // original variables + artificials
    tab.t.assign((m + 1) * (tab.n + 1), Rat(0));
    tab.basis.resize(m);

    for (size_t i = 0; i < m; ++i) {
        bool flip = b[i] < 0;
        for (size_t j = 0; j < n; ++j) tab.at(i, j) = flip ? -A(i, j) : A(i, j);
        tab.at(i, tab.n) = flip ? -b[i] : b[i];
        tab.at(i, n + i) = 1;
        tab.basis[i] = n + i;
    }
    // Phase 1 objective: sum of artificials. Reduced-cost row = -sum of rows.
    for (size_t j = 0; j <= tab.n; ++j) {
        Rat s = 0;
        for (size_t i = 0; i < m; ++i) s += tab.at(i, j);
        tab.at(m, j) = (j >= n && j < tab.n) ? Rat(0) : -s;
    }
    std::vector<bool> all(tab.n, true);
    if (!tab.run(all)) throw error("simplex phase 1 unbounded");
    if (tab.at(m, tab.n) != 0) return {LpStatus::infeasible, {}, 0};

    // Drive artificials out of the basis; rows with no real pivot are redundant.
    std::vector<bool> row_live(m, true);
    for (size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < n) continue;
        size_t col = n;
        for (size_t j = 0; j < n; ++j)
            if (tab.at(i, j) != 0) {
                col = j;
                break;
            }
        if (col == n)
            row_live[i] = false;
        else
            tab.pivot(i, col);
    }

    // Phase 2: rebuild the cost row for c over the current basis.
    std::vector<bool> real(tab.n, false);
    for (size_t j = 0; j < n; ++j) real[j] = true;
    for (size_t j = 0; j <= tab.n; ++j) tab.at(m, j) = 0;
    for (size_t j = 0; j < n; ++j) tab.at(m, j) = c[j];
    for (size_t i = 0; i < m; ++i) {
        if (!row_live[i] || tab.basis[i] >= n) continue;
        Rat f = tab.at(m, tab.basis[i]);
        if (f == 0) continue;
        for (size_t j = 0; j <= tab.n; ++j) tab.at(m, j) -= f * tab.at(i, j);
    }
    // Dead rows keep artificial basics at zero value; forbid re-entering.
    if (!tab.run(real)) return {LpStatus::unbounded, {}, 0};

    QVec x(n, Rat(0));
    for (size_t i = 0; i < m; ++i)
        if (row_live[i] && tab.basis[i] < n) x[tab.basis[i]] = tab.at(i, tab.n);
    Rat obj = 0;
    for (size_t j = 0; j < n; ++j) obj += c[j] * x[j];
    return {LpStatus::optimal, std::move(x), obj};
}

}  // namespace kinet
