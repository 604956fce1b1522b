#pragma once

#include "bipot/convex_function.hpp"
#include "bipot/grid.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bipot
{

/// Raised when a function is +inf on every node of the grid it is scanned on.
class EmptyDomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Default truncation box [-R, R]^n and node counts per dimension.
constexpr double default_box_radius = 8.0;
std::size_t default_nodes_per_axis(std::size_t dim);
Grid default_grid(std::size_t dim, double radius = default_box_radius);

/// Discretization modulus for a primal/dual grid pair at x: h_x h_y in one
/// dimension, h_x h_y + (sqrt(n) / 2) h_y ||x|| in n > 1 (slopes off the dual lattice).
double grid_modulus(const Grid& primal, const Grid& dual, const Vector& x);

enum class ConjugateMethod
{
    BruteForce,
    Fast,
};

/// Conjugate tabulated on a dual grid together with the flat index of a
/// maximizing primal node for every dual node (first index on ties for the
/// brute-force scan).
struct SampledConjugate
{
    Grid grid;
    std::vector<double> values;
    std::vector<std::size_t> argmax;
};

/// y -> max over primal nodes x of <x, y> - f(x), i.e. the exact conjugate of
/// f + indicator(primal box) restricted to the primal nodes. The fast method is
/// a linear-time Legendre transform (lower hull plus merge) applied axis by axis.
/// Throws EmptyDomainError when every value is +inf.
SampledConjugate conjugate_values(const Grid& primal,
                                  std::span<const double> values,
                                  const Grid& dual,
                                  ConjugateMethod method = ConjugateMethod::Fast);

SampledConjugate conjugate_sampled(const ConvexFunction& f,
                                   const Grid& primal,
                                   const Grid& dual,
                                   ConjugateMethod method = ConjugateMethod::Fast);

ConvexFunction fenchel_conjugate(const ConvexFunction& f,
                                 const Grid& primal,
                                 const Grid& dual,
                                 ConjugateMethod method = ConjugateMethod::Fast);

/// Conjugate with the default primal box for f's dimension.
ConvexFunction fenchel_conjugate(const ConvexFunction& f, const Grid& dual);

/// (f □ g)(x) = min over grid nodes x1 of f(x1) + g(x - x1), both functions
/// truncated to the grid box. On a uniform grid symmetric about 0, x - x1 is
/// matched to a node by index offset; otherwise g is evaluated at x - x1.
std::vector<double> inf_convolution_values(const ConvexFunction& f, const ConvexFunction& g, const Grid& grid);
ConvexFunction inf_convolution(const ConvexFunction& f, const ConvexFunction& g, const Grid& grid);

struct SubgradientEstimate
{
    std::size_t dim = 1;
    /// One-dimensional interval [lo, hi]; bounds may be infinite.
    double lo = 0.0;
    double hi = 0.0;
    bool empty = false;
    /// Supporting slopes (the finite interval endpoints in one dimension).
    std::vector<Vector> slopes;
    /// Largest violation of <z - x, u> <= f(z) - f(x) over the probes, per slope.
    std::vector<double> residuals;
};

/// Subgradient estimate at x. In one dimension the interval comes from
/// one-sided difference quotients (node quotients for sampled functions).
/// In higher dimension candidate slopes are built from per-coordinate intervals
/// and kept when they satisfy the subgradient inequality on the probes within tol.
/// Probes default to the sampled grid or to a stencil around x.
/// Throws std::domain_error when f(x) = +inf. tol <= 0 selects 1e-6 (1 + |f(x)|).
SubgradientEstimate subdifferential(const ConvexFunction& f,
                                    const Vector& x,
                                    double tol = 0.0,
                                    const std::optional<Grid>& probes = std::nullopt);

/// lambda f1 + (1 - lambda) f2 with 0 (+inf) = 0 at the endpoints.
ConvexFunction convex_combination(double lambda, const ConvexFunction& f1, const ConvexFunction& f2);

/// which = 1: lambda f(x / lambda); which = 2: (1 - lambda) f(x / (1 - lambda)).
/// lambda must lie in the open interval (0, 1).
ConvexFunction scaled_function(double lambda, const ConvexFunction& f, int which);

struct ConvexityReport
{
    bool convex = true;
    double worst_violation = 0.0;
    /// Flat node indices (left, middle, right) of the worst triple.
    std::optional<std::array<std::size_t, 3>> witness;
};

/// Three-point convexity test on consecutive nodes along every grid line.
/// A +inf node between two finite ones counts as an infinite violation.
ConvexityReport is_convex_on_grid(const Grid& grid, std::span<const double> values, double tol = 1e-9);
ConvexityReport is_convex_on_grid(const ConvexFunction& sampled_f, double tol = 1e-9);

/// Header row x1..xn,value then one row per node, LF line endings.
std::string to_csv(const Grid& grid, std::span<const double> values);

}  // namespace bipot
