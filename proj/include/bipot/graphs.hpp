#pragma once

#include "bipot/core_types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bipot
{

/// Finite sample of the graph of a multivalued operator X -> Y.
class GraphSample
{
public:
    GraphSample(std::size_t dim_x, std::size_t dim_y);
    /// Throws std::invalid_argument on dimension mismatch or duplicate pairs.
    GraphSample(std::size_t dim_x, std::size_t dim_y, std::vector<std::pair<Vector, Vector>> pairs);

    /// Appends (x, y); returns false (and does nothing) if the pair is already present.
    bool add(const Vector& x, const Vector& y);

    [[nodiscard]] std::size_t dim_x() const { return dim_x_; }
    [[nodiscard]] std::size_t dim_y() const { return dim_y_; }
    [[nodiscard]] std::size_t size() const { return pairs_.size(); }
    [[nodiscard]] const std::vector<std::pair<Vector, Vector>>& pairs() const { return pairs_; }
    [[nodiscard]] const Vector& x(std::size_t i) const { return pairs_[i].first; }
    [[nodiscard]] const Vector& y(std::size_t i) const { return pairs_[i].second; }

    friend bool operator==(const GraphSample& a, const GraphSample& b)
    {
        return a.dim_x_ == b.dim_x_ && a.dim_y_ == b.dim_y_ && a.pairs_ == b.pairs_;
    }

private:
    std::size_t dim_x_;
    std::size_t dim_y_;
    std::vector<std::pair<Vector, Vector>> pairs_;
};

/// m(x) = { y : (x, y) in M }, in sample order.
std::vector<Vector> operator_image(const GraphSample& m, const Vector& x);
/// m*(y) = { x : (x, y) in M }.
std::vector<Vector> dual_image(const GraphSample& m, const Vector& y);
/// dom(M) and im(M) without repetitions, first-occurrence order.
std::vector<Vector> graph_domain(const GraphSample& m);
std::vector<Vector> graph_image(const GraphSample& m);

GraphSample graph_transpose(const GraphSample& m);

/// Default tolerance 1e-9 (1 + max |<x_k, y_j>|) over all sample indices.
double cycle_tolerance(const GraphSample& m);

struct MonotoneVerdict
{
    bool monotone = true;
    /// Most negative <x_i - x_j, y_i - y_j> found.
    double worst = 0.0;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    double tol = 0.0;
};

/// Pair scan; the first pair (in index order) with <x_i - x_j, y_i - y_j> < -tol is the witness.
/// tol < 0 selects cycle_tolerance(m).
MonotoneVerdict is_monotone(const GraphSample& m, double tol = -1.0);

struct CycleVerdict
{
    bool cyclically_monotone = true;
    /// Largest value of <x_0 - x_m, y_m> + sum_k <x_k - x_{k-1}, y_{k-1}> over the
    /// cycles examined (-inf when the sample has fewer than two pairs).
    double max_cycle_value = 0.0;
    /// Indices x_0, ..., x_m of a maximizing cycle (consecutive entries differ).
    std::vector<std::size_t> witness_cycle;
    /// Largest m for which every cycle with m + 1 points was examined.
    std::size_t verified_m = 0;
    std::uint64_t relaxations = 0;
    double tol = 0.0;
};

/// Raised when the relaxation budget runs out; carries the verdict for the
/// cycle lengths completed so far.
class ResourceError : public std::runtime_error
{
public:
    ResourceError(const std::string& what, CycleVerdict partial);
    [[nodiscard]] const CycleVerdict& partial() const { return partial_; }

private:
    CycleVerdict partial_;
};

constexpr std::uint64_t default_cycle_budget = 10'000'000;

/// Cyclic monotonicity over all cycles with 2 .. m_max + 1 points, repeated
/// points allowed but never twice in a row. Uses max-plus products of
/// A_ij = <x_j - x_i, y_i>; the budget counts max-plus relaxations.
/// tol < 0 selects cycle_tolerance(m).
CycleVerdict is_cyclically_monotone(const GraphSample& m,
                                    std::size_t m_max,
                                    std::uint64_t budget = default_cycle_budget,
                                    double tol = -1.0);

/// Value of the cycle through the given indices.
double cycle_value(const GraphSample& m, const std::vector<std::size_t>& cycle);

/// max_j (c_j + <x, s_j>); the form of every Rockafellar reconstruction.
class MaxAffine
{
public:
    MaxAffine(std::vector<Vector> slopes, std::vector<double> intercepts);

    [[nodiscard]] std::size_t size() const { return slopes_.size(); }
    [[nodiscard]] const std::vector<Vector>& slopes() const { return slopes_; }
    [[nodiscard]] const std::vector<double>& intercepts() const { return intercepts_; }

    [[nodiscard]] ExtReal operator()(const Vector& x) const;

    /// Exact conjugate via the linear program
    /// min sum a_j (-c_j) s.t. sum a_j s_j = y, sum a_j = 1, a >= 0;
    /// +inf when y is outside the convex hull of the slopes.
    [[nodiscard]] ExtReal conjugate(const Vector& y) const;

private:
    std::vector<Vector> slopes_;
    std::vector<double> intercepts_;
};

/// phi(x) = phi0 + max over chains (x0, y_0), (x_1, y_1), ..., (x_m, y_m) in M,
/// m <= m_max, of <x - x_m, y_m> + sum_k <x_k - x_{k-1}, y_{k-1}>.
/// Throws std::invalid_argument when x0 is not in dom(M).
MaxAffine rockafellar_potential(const GraphSample& m, const Vector& x0, double phi0, std::size_t m_max);
ExtReal rockafellar_potential(const GraphSample& m, const Vector& x0, double phi0, const Vector& x, std::size_t m_max);

/// psi(y) = psi0 + max over chains of <x_m, y - y_m> + sum_k <x_{k-1}, y_k - y_{k-1}>,
/// the same construction applied to the transposed graph.
MaxAffine rockafellar_dual_potential(const GraphSample& m, const Vector& y0, double psi0, std::size_t m_max);
ExtReal rockafellar_dual_potential(const GraphSample& m, const Vector& y0, double psi0, const Vector& y, std::size_t m_max);

struct ExtensionProbe
{
    std::size_t candidate = 0;
    bool preserves = false;
    double max_cycle_value = 0.0;
};

/// For every candidate pair, whether M plus that single pair stays cyclically
/// monotone at m_max. Candidates already in M are reported as preserving.
std::vector<ExtensionProbe> probe_extensions(const GraphSample& m,
                                             const std::vector<std::pair<Vector, Vector>>& candidates,
                                             std::size_t m_max,
                                             double tol = -1.0);

}  // namespace bipot
