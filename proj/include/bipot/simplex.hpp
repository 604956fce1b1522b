#pragma once

#include <cstddef>
#include <vector>

namespace bipot
{

struct LpResult
{
    bool feasible = false;
    double value = 0.0;
    std::vector<double> x;
};

/// min c^T x subject to A x = b, x >= 0. A is row-major (rows x cols).
/// Dense two-phase simplex with Bland's rule; redundant equality rows are dropped.
LpResult minimize_standard_form(const std::vector<double>& A,
                                std::size_t rows,
                                std::size_t cols,
                                const std::vector<double>& b,
                                const std::vector<double>& c,
                                double feas_tol = 1e-9);

}  // namespace bipot
