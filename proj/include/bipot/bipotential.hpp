#pragma once

#include "bipot/calculus.hpp"
#include "bipot/convex_function.hpp"
#include "bipot/grid.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bipot
{

class BipotentialSpec;

/// One summand of a closed-form bipotential.
struct BipotentialTerm
{
    enum class Kind
    {
        InX,      ///< fx(x)
        InY,      ///< fy(y)
        Pairing,  ///< coef <x, y>
        Product,  ///< fx(x) fy(y); +inf if either factor is +inf
    };
    Kind kind = Kind::InX;
    std::optional<ConvexFunction> fx;
    std::optional<ConvexFunction> fy;
    double coef = 1.0;

    static BipotentialTerm in_x(ConvexFunction f);
    static BipotentialTerm in_y(ConvexFunction g);
    static BipotentialTerm pairing(double coef = 1.0);
    static BipotentialTerm product(ConvexFunction f, ConvexFunction g);
};

namespace spec
{
/// phi(x) + phi*(y).
struct Separable
{
    ConvexFunction phi;
    ConvexFunction phi_star;
    /// "table", "explicit" or "numeric".
    std::string conjugate_source;
};
struct MaxOfTwo
{
    std::shared_ptr<const BipotentialSpec> b1;
    std::shared_ptr<const BipotentialSpec> b2;
};
struct ClosedForm
{
    std::vector<BipotentialTerm> terms;
};
/// Pointwise minimum over a finite family (the infimum construction of a cover).
struct CoverInf
{
    std::shared_ptr<const std::vector<BipotentialSpec>> members;
};
}  // namespace spec

/// An evaluable b(x, y). Immutable; copies share structure.
class BipotentialSpec
{
public:
    using Variant = std::variant<spec::Separable, spec::MaxOfTwo, spec::ClosedForm, spec::CoverInf>;

    /// Conjugate from the closed-form table; throws std::invalid_argument if there is none.
    static BipotentialSpec separable(ConvexFunction phi);
    /// Caller-supplied conjugate (must be the exact conjugate of phi).
    static BipotentialSpec separable(ConvexFunction phi, ConvexFunction phi_star);
    /// Conjugate tabulated over `primal` onto `dual`.
    static BipotentialSpec separable_numeric(ConvexFunction phi, const Grid& primal, const Grid& dual);
    static BipotentialSpec max_of_two(BipotentialSpec b1, BipotentialSpec b2);
    static BipotentialSpec closed_form(std::size_t dim_x, std::size_t dim_y, std::vector<BipotentialTerm> terms);
    static BipotentialSpec cover_inf(std::vector<BipotentialSpec> members);

    [[nodiscard]] std::size_t dim_x() const { return dim_x_; }
    [[nodiscard]] std::size_t dim_y() const { return dim_y_; }
    [[nodiscard]] const Variant& value() const { return *value_; }
    [[nodiscard]] std::string kind_name() const;

    /// True if any function in the tree has a sampled leaf.
    [[nodiscard]] bool has_sampled_part() const;

    [[nodiscard]] double eval_raw(std::span<const double> x, std::span<const double> y) const;
    [[nodiscard]] ExtReal operator()(const Vector& x, const Vector& y) const;

private:
    BipotentialSpec(std::size_t dx, std::size_t dy, Variant v);
    std::size_t dim_x_ = 0;
    std::size_t dim_y_ = 0;
    std::shared_ptr<const Variant> value_;
};

ExtReal eval_bipotential(const BipotentialSpec& b, const Vector& x, const Vector& y);

/// b tabulated on grid_x x grid_y: per-node parts are evaluated once and
/// combined per pair.
class PairTable
{
public:
    PairTable(const BipotentialSpec& b, const Grid& grid_x, const Grid& grid_y);

    [[nodiscard]] const Grid& grid_x() const { return gx_; }
    [[nodiscard]] const Grid& grid_y() const { return gy_; }
    [[nodiscard]] double b(std::size_t i, std::size_t j) const;
    [[nodiscard]] double pairing(std::size_t i, std::size_t j) const;
    /// b - <x, y>; +inf where b is +inf.
    [[nodiscard]] double gap(std::size_t i, std::size_t j) const;

    struct Node;

private:
    Grid gx_;
    Grid gy_;
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::shared_ptr<const Node> root_;
};

/// Relative tolerance used throughout: tol (1 + |<x, y>|).
inline double pair_tol(double tol, double pairing_value)
{
    return tol * (1.0 + std::abs(pairing_value));
}

struct CriticalSetReport
{
    std::vector<std::pair<std::size_t, std::size_t>> nodes;  ///< (x node, y node)
    /// For MaxOfTwo: whether M(b) equals M(b1) intersected with M(b2) on the grids.
    std::optional<bool> intersection_identity;
};

/// All grid pairs with |b(x, y) - <x, y>| <= tol (1 + |<x, y>|).
CriticalSetReport critical_set(const BipotentialSpec& b, const Grid& grid_x, const Grid& grid_y, double tol);
std::vector<std::pair<Vector, Vector>> critical_points(const CriticalSetReport& r, const Grid& grid_x, const Grid& grid_y);

struct EquivalenceFailure
{
    std::size_t x_node = 0;
    std::size_t y_node = 0;
    bool a = false;  ///< x minimizes z -> b(z, y) - <z, y> on grid_x
    bool b = false;  ///< y minimizes w -> b(x, w) - <x, w> on grid_y
    bool c = false;  ///< b(x, y) = <x, y>
};

struct AxiomReport
{
    ConvexityReport convex_in_x;  ///< worst over all y slices
    ConvexityReport convex_in_y;  ///< worst over all x slices
    std::optional<std::size_t> convex_x_witness_slice;
    std::optional<std::size_t> convex_y_witness_slice;

    ExtReal fenchel_gap_min = ExtReal::infinity();
    std::optional<std::pair<std::size_t, std::size_t>> fenchel_gap_witness;
    bool gap_ok = true;

    std::size_t equivalence_failure_count = 0;
    std::vector<EquivalenceFailure> equivalence_failures;  ///< first 100
    /// Pairs where a grid minimizer sits in a positive plateau that reaches the
    /// grid boundary, so grid minimality says nothing about the true slice.
    std::size_t boundary_inconclusive = 0;
    /// Pairs where the slice minimum is positive but below the grid modulus, so
    /// the true critical point may lie between nodes.
    std::size_t grid_snap_inconclusive = 0;
    std::size_t critical_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> critical_points;  ///< first 1000

    [[nodiscard]] bool a_ok() const { return convex_in_x.convex && convex_in_y.convex; }
    [[nodiscard]] bool b_ok() const { return gap_ok; }
    [[nodiscard]] bool c_ok() const { return equivalence_failure_count == 0; }
    [[nodiscard]] bool passed() const { return a_ok() && b_ok() && c_ok(); }
};

AxiomReport check_axioms(const BipotentialSpec& b, const Grid& grid_x, const Grid& grid_y, double tol);

enum class SliceClass
{
    Zero,
    Infinite,
    Violation,
};

struct SliceWitness
{
    std::size_t fixed_node = 0;  ///< y node for B1S, x node for B2S
    std::size_t argmin_node = 0;
    double inf_value = 0.0;
};

struct StrongSide
{
    bool holds = true;
    std::size_t zero = 0;
    std::size_t infinite = 0;
    std::size_t violations = 0;
    /// Infinite classifications that relied on inf_threshold (sampled data only).
    std::size_t threshold_infinite = 0;
    std::vector<SliceWitness> witnesses;  ///< first 100 violations
    /// inf value per fixed node (+inf when the slice is identically +inf).
    std::vector<double> inf_values;
    std::vector<SliceClass> classes;
};

struct StrongReport
{
    StrongSide b1s;  ///< for every y: inf over z of b(z, y) - <z, y>
    StrongSide b2s;  ///< for every x: inf over w of b(x, w) - <x, w>
    bool used_threshold = false;
    [[nodiscard]] bool strong() const { return b1s.holds && b2s.holds; }
};

/// inf_threshold only applies to specs with sampled parts; closed forms rely on
/// exact +inf propagation.
StrongReport check_strong(const BipotentialSpec& b, const Grid& grid_x, const Grid& grid_y, double tol, double inf_threshold = 1e6);

/// lambda grid with n >= 2 uniform points on [0, 1], endpoints exact.
std::vector<double> lambda_grid(std::size_t n = 21);

struct ConjugateIdentityResult
{
    bool holds = true;
    std::size_t checked = 0;
    /// Points skipped because the numeric conjugate is attained only on the grid boundary.
    std::size_t excluded_boundary = 0;
    double worst_diff = 0.0;
    std::optional<std::pair<double, std::size_t>> witness;  ///< (lambda, node)
    double witness_lhs = 0.0;
    double witness_rhs = 0.0;
};

struct Theorem31Options
{
    std::vector<double> lambdas = lambda_grid();
    double tol = 0.01;  ///< conjugate comparisons, absolute
    double strong_tol = 1e-6;
    /// Grids for the strong check (default: the sweep grids).
    std::optional<Grid> strong_grid_x;
    std::optional<Grid> strong_grid_y;
};

struct Theorem31Report
{
    ConjugateIdentityResult ii_prime;
    ConjugateIdentityResult ii_second;
    StrongReport strong_report;
    bool strong = false;
    bool consistent = false;
};

/// (ii') (l phi1 + (1-l) phi2)*(y) = l phi1*(y) + (1-l) phi2*(y) on grid_y within dom phi1* and dom phi2*,
/// (ii'') (l phi1* + (1-l) phi2*)*(x) = l phi1(x) + (1-l) phi2(x) on grid_x within dom phi1 and dom phi2,
/// strong from check_strong on max of the two separable bipotentials, and
/// consistent = (strong == (ii' and ii'')). Conjugates come from the closed-form
/// table when available and are tabulated numerically otherwise.
Theorem31Report check_theorem31(const ConvexFunction& phi1,
                                const ConvexFunction& phi2,
                                const Grid& grid_x,
                                const Grid& grid_y,
                                const Theorem31Options& options = {});

struct MinimaxResult
{
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double best_lambda = 0.0;
};

/// lhs = sup over grid_x within dom phi1 and dom phi2 of <z, y> - max(b1, b2)(z, y);
/// rhs = min over lambdas of (l phi1 + (1-l) phi2)*(y) - l phi1*(y) - (1-l) phi2*(y).
/// Throws std::invalid_argument when the domains do not meet on the grid or y is outside dom phi_k*.
MinimaxResult minimax_gap_identity(const ConvexFunction& phi1,
                                   const ConvexFunction& phi2,
                                   const Vector& y,
                                   const std::vector<double>& lambdas,
                                   const Grid& grid_x);

class CorollaryHypothesisError : public std::logic_error
{
public:
    CorollaryHypothesisError() : std::logic_error("corollary hypothesis unmet") {}
};

struct Interval1D
{
    double lo = 0.0;
    double hi = 0.0;
    bool empty = false;
};

/// Hausdorff distance of two closed intervals (+inf if exactly one is empty).
double hausdorff(const Interval1D& a, const Interval1D& b);

struct Corollary33Result
{
    Interval1D lhs;  ///< subdifferential of the inf-convolution of the scaled functions
    Interval1D rhs;  ///< intersection of the two subdifferentials
    double distance = 0.0;
    bool equal = false;
};

/// One-dimensional check of d(f1 □ f2)(x) = d phi1(x) ∩ d phi2(x) with
/// f1 = lambda phi1(./lambda), f2 = (1-lambda) phi2(./(1-lambda)). The inf-convolution
/// is tabulated on `grid`. `hypothesis` must be a passing check_strong report of
/// the max of the two separable bipotentials; otherwise CorollaryHypothesisError.
Corollary33Result check_corollary33(const ConvexFunction& phi1,
                                    const ConvexFunction& phi2,
                                    double lambda,
                                    const Vector& x,
                                    double tol,
                                    const Grid& grid,
                                    const StrongReport& hypothesis);

}  // namespace bipot
