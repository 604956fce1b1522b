#include "bipot/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bipot
{

namespace
{

struct Tableau
{
    std::size_t m;
    std::size_t n;  // columns excluding rhs
    std::vector<double> t;  // (m + 1) x (n + 1); row m is the objective
    std::vector<std::size_t> basis;

    double& at(std::size_t r, std::size_t c) { return t[r * (n + 1) + c]; }
    double rhs(std::size_t r) const { return t[r * (n + 1) + n]; }

    void pivot(std::size_t r, std::size_t c)
    {
        const double p = at(r, c);
        for (std::size_t j = 0; j <= n; ++j)
            at(r, j) /= p;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == r)
                continue;
            const double f = at(i, c);
            if (f == 0.0)
                continue;
            for (std::size_t j = 0; j <= n; ++j)
                at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
        }
        basis[r] = c;
    }

    // Minimizes the objective row over columns allowed[c]. Returns false if unbounded.
    bool run(const std::vector<bool>& allowed, double eps)
    {
        for (std::size_t iter = 0; iter < 100000; ++iter) {
            std::size_t enter = n;
            for (std::size_t c = 0; c < n; ++c)
                if (allowed[c] && at(m, c) < -eps) {
                    enter = c;
                    break;
                }
            if (enter == n)
                return true;
            std::size_t leave = m;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m; ++r) {
                const double a = at(r, enter);
                if (a > eps) {
                    const double ratio = rhs(r) / a;
                    if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && leave < m && basis[r] < basis[leave])) {
                        best = ratio;
                        leave = r;
                    }
                }
            }
            if (leave == m)
                return false;
            pivot(leave, enter);
        }
        throw std::runtime_error("simplex: iteration limit reached");
    }
};

}  // namespace

LpResult minimize_standard_form(const std::vector<double>& A,
                                std::size_t rows,
                                std::size_t cols,
                                const std::vector<double>& b,
                                const std::vector<double>& c,
                                double feas_tol)
{
    if (A.size() != rows * cols || b.size() != rows || c.size() != cols)
        throw std::invalid_argument("simplex: inconsistent dimensions");
    constexpr double eps = 1e-12;
    Tableau tab{rows, cols + rows, std::vector<double>((rows + 1) * (cols + rows + 1), 0.0), std::vector<std::size_t>(rows)};
    for (std::size_t r = 0; r < rows; ++r) {
        const double sign = b[r] < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < cols; ++j)
            tab.at(r, j) = sign * A[r * cols + j];
        tab.at(r, cols + r) = 1.0;
        tab.at(r, tab.n) = sign * b[r];
        tab.basis[r] = cols + r;
    }
    // Phase 1 objective: sum of artificials, expressed in non-basic columns.
    for (std::size_t j = 0; j <= tab.n; ++j) {
        double s = 0.0;
        if (j < cols || j == tab.n)
            for (std::size_t r = 0; r < rows; ++r)
                s += tab.at(r, j);
        tab.at(rows, j) = (j < cols) ? -s : (j == tab.n ? -s : 0.0);
    }
    std::vector<bool> allowed(tab.n, true);
    tab.run(allowed, eps);
    double scale = 1.0;
    for (double v : b)
        scale = std::max(scale, std::abs(v));
    if (-tab.rhs(rows) > feas_tol * scale)
        return {};

    // Drive remaining artificials out of the basis or drop their rows.
    for (std::size_t r = 0; r < tab.m;) {
        if (tab.basis[r] < cols) {
            ++r;
            continue;
        }
        std::size_t col = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (std::abs(tab.at(r, j)) > 1e-9) {
                col = j;
                break;
            }
        if (col < cols) {
            tab.pivot(r, col);
            ++r;
            continue;
        }
        // redundant row: remove it
        std::vector<double> nt;
        nt.reserve(tab.t.size());
        for (std::size_t i = 0; i <= tab.m; ++i)
            if (i != r)
                for (std::size_t j = 0; j <= tab.n; ++j)
                    nt.push_back(tab.at(i, j));
        tab.t = std::move(nt);
        tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(r));
        --tab.m;
    }

    // Phase 2 objective.
    for (std::size_t j = 0; j <= tab.n; ++j)
        tab.at(tab.m, j) = j < cols ? c[j] : 0.0;
    for (std::size_t r = 0; r < tab.m; ++r) {
        const double f = tab.at(tab.m, tab.basis[r]);
        if (f == 0.0)
            continue;
        for (std::size_t j = 0; j <= tab.n; ++j)
            tab.at(tab.m, j) -= f * tab.at(r, j);
    }
    for (std::size_t j = cols; j < tab.n; ++j)
        allowed[j] = false;
    if (!tab.run(allowed, eps))
        return {true, -std::numeric_limits<double>::infinity(), {}};

    LpResult res;
    res.feasible = true;
    res.x.assign(cols, 0.0);
    for (std::size_t r = 0; r < tab.m; ++r)
        if (tab.basis[r] < cols)
            res.x[tab.basis[r]] = tab.rhs(r);
    res.value = 0.0;
    for (std::size_t j = 0; j < cols; ++j)
        res.value += c[j] * res.x[j];
    return res;
}

}  // namespace bipot
