#pragma once

#include "bipot/core_types.hpp"
#include "bipot/grid.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bipot
{

// Closed convex sets for indicator atoms. Each set lives in the coordinates
// selected by the enclosing Indicator atom.

struct SingletonSet
{
    std::vector<double> point;
};

/// Product of closed intervals; infinite bounds give half-lines or the whole line.
struct BoxSet
{
    std::vector<double> lo;
    std::vector<double> hi;
};

/// K_mu = { ||v_t|| <= mu v_n } on coordinates (n, t1, t2).
struct CoulombConeSet
{
    double mu = 0.0;
};

/// K_mu* = { mu ||v_t|| + v_n <= 0 } on coordinates (n, t1, t2).
struct DualCoulombConeSet
{
    double mu = 0.0;
};

/// Closed Euclidean ball of the given radius.
struct DiscSet
{
    double radius = 0.0;
};

struct EmptySet
{
};

using SetAtom = std::variant<SingletonSet, BoxSet, CoulombConeSet, DualCoulombConeSet, DiscSet, EmptySet>;

bool set_contains(const SetAtom& set, std::span<const double> v);

class ConvexFunction;

namespace node
{

/// <slope, v_S> + offset. Empty coords gives the constant `offset`.
struct Affine
{
    std::vector<std::size_t> coords;
    std::vector<double> slope;
    double offset = 0.0;
};

/// (1/2) v_S^T Q v_S with Q symmetric positive semidefinite, row-major.
struct Quadratic
{
    std::vector<std::size_t> coords;
    std::vector<double> matrix;
};

/// scale * ||v_S||.
struct ScaledNorm
{
    std::vector<std::size_t> coords;
    double scale = 0.0;
};

/// scale * |v_i|^exponent with exponent >= 1.
struct PowerAbs
{
    std::size_t coord = 0;
    double exponent = 2.0;
    double scale = 1.0;
};

/// scale * exp(rate * v_i).
struct Exponential
{
    std::size_t coord = 0;
    double rate = 1.0;
    double scale = 1.0;
};

struct Indicator
{
    std::vector<std::size_t> coords;
    SetAtom set;
};

struct Sum
{
    std::vector<ConvexFunction> terms;
};

struct MaxOf
{
    std::vector<ConvexFunction> terms;
};

/// factor * f(v) with factor >= 0 and 0 * (+inf) = 0.
struct Scaled;

/// lambda * f(v / lambda), lambda > 0.
struct PreScaled;

/// Values on a grid (+inf allowed), multilinear interpolation between nodes.
struct Sampled
{
    Grid grid;
    std::vector<double> values;
};

}  // namespace node

struct FunctionNode;

/// An extended-real convex function on R^n, n <= 3: a closed-form atom tree,
/// possibly with sampled leaves. Immutable; copies share the tree.
class ConvexFunction
{
public:
    ConvexFunction(std::size_t dim, FunctionNode node);

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] const FunctionNode& node() const { return *node_; }

    [[nodiscard]] bool is_sampled() const;
    /// Root sampled node; throws std::logic_error for closed forms.
    [[nodiscard]] const node::Sampled& sampled() const;

    /// Throws std::invalid_argument on dimension mismatch and std::domain_error
    /// for a sampled query outside the grid hull.
    [[nodiscard]] ExtReal operator()(const Vector& x) const;

    /// Evaluate on raw components (size must equal dim()).
    [[nodiscard]] double eval_raw(std::span<const double> x) const;

    /// True if any sampled leaf occurs in the tree.
    [[nodiscard]] bool has_sampled_leaf() const;

private:
    std::size_t dim_ = 0;
    std::shared_ptr<const FunctionNode> node_;
};

namespace node
{
struct Scaled
{
    double factor = 1.0;
    ConvexFunction inner;
};

struct PreScaled
{
    double lambda = 1.0;
    ConvexFunction inner;
};
}  // namespace node

struct FunctionNode
{
    std::variant<node::Affine,
                 node::Quadratic,
                 node::ScaledNorm,
                 node::PowerAbs,
                 node::Exponential,
                 node::Indicator,
                 node::Sum,
                 node::MaxOf,
                 node::Scaled,
                 node::PreScaled,
                 node::Sampled>
        value;
};

ExtReal evaluate(const ConvexFunction& f, const Vector& x);

/// Factories. All validate their arguments and throw std::invalid_argument.
namespace fn
{
ConvexFunction affine(std::size_t dim, std::vector<std::size_t> coords, std::vector<double> slope, double offset = 0.0);
ConvexFunction constant(std::size_t dim, double c);
ConvexFunction quadratic(std::size_t dim, std::vector<std::size_t> coords, std::vector<double> matrix);
/// x^2 / 2 in one dimension.
ConvexFunction half_square();
ConvexFunction scaled_norm(std::size_t dim, std::vector<std::size_t> coords, double scale);
/// |x| in one dimension.
ConvexFunction abs();
ConvexFunction power_abs(std::size_t dim, std::size_t coord, double exponent, double scale);
ConvexFunction exponential(std::size_t dim, std::size_t coord, double rate, double scale);
ConvexFunction indicator(std::size_t dim, std::vector<std::size_t> coords, SetAtom set);
ConvexFunction sum(std::vector<ConvexFunction> terms);
ConvexFunction max_of(std::vector<ConvexFunction> terms);
ConvexFunction scaled(double factor, ConvexFunction f);
ConvexFunction prescaled(double lambda, ConvexFunction f);
ConvexFunction sampled(Grid grid, std::vector<double> values);

/// Coordinates 0..dim-1.
std::vector<std::size_t> all_coords(std::size_t dim);
}  // namespace fn

/// Tabulate f on every grid node.
ConvexFunction sample(const ConvexFunction& f, const Grid& grid);

/// Raw node values of f on a grid (+inf for points outside dom f).
std::vector<double> sample_values(const ConvexFunction& f, const Grid& grid);

/// Coordinates the function actually depends on (all of them for sampled leaves).
std::vector<std::size_t> support(const ConvexFunction& f);

/// Exact conjugate from the closed-form table: atoms, scaled and pre-scaled
/// functions, and sums of terms with pairwise disjoint supports. Returns
/// nullopt when the table has no entry (max, exponential, sampled, overlapping sums).
std::optional<ConvexFunction> closed_form_conjugate(const ConvexFunction& f);

/// Short human-readable rendering of the tree.
std::string describe(const ConvexFunction& f);

}  // namespace bipot
