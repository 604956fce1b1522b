#pragma once

#include "bipot/bipotential.hpp"
#include "bipot/graphs.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bipot
{

/// A parametrized family lambda -> b_lambda over a finite sample of Lambda.
/// Parameter values may be +inf.
class CoverSpec
{
public:
    /// Throws std::invalid_argument on an empty sample, size mismatch, NaN
    /// parameters or members of different dimensions.
    CoverSpec(std::vector<double> parameter_samples,
              std::vector<BipotentialSpec> family,
              std::optional<GraphSample> target_graph = std::nullopt);

    [[nodiscard]] std::size_t size() const { return params_.size(); }
    [[nodiscard]] const std::vector<double>& parameter_samples() const { return params_; }
    [[nodiscard]] const std::vector<BipotentialSpec>& family() const { return family_; }
    [[nodiscard]] const BipotentialSpec& member(std::size_t k) const { return family_[k]; }
    [[nodiscard]] const std::optional<GraphSample>& target_graph() const { return target_; }
    [[nodiscard]] std::size_t dim_x() const { return family_.front().dim_x(); }
    [[nodiscard]] std::size_t dim_y() const { return family_.front().dim_y(); }

    /// The same cover with a different target graph.
    [[nodiscard]] CoverSpec with_target(std::optional<GraphSample> target) const;

private:
    std::vector<double> params_;
    std::vector<BipotentialSpec> family_;
    std::optional<GraphSample> target_;
};

/// Minimum of b_lambda(x, y) over the sampled parameters.
ExtReal inf_bipotential(const CoverSpec& cover, const Vector& x, const Vector& y);

/// The infimum as an evaluable spec (pointwise minimum over the family).
BipotentialSpec cover_bipotential(const CoverSpec& cover);

enum class CoverArgument
{
    InX,
    InY,
};

/// One instance of the implicit convexity inequality: with the other argument
/// fixed at `fixed`, find a sampled lambda with
/// b_lambda(alpha z1 + (1 - alpha) z2) <= alpha b_lambda1(z1) + (1 - alpha) b_lambda2(z2).
struct ImplicitConvexityTrial
{
    std::size_t lambda1 = 0;  ///< index into parameter_samples
    std::size_t lambda2 = 0;
    Vector z1;
    Vector z2;
    Vector fixed;
    double alpha = 0.5;
};

struct ImplicitConvexityOutcome
{
    ImplicitConvexityTrial trial;
    double rhs = 0.0;
    /// rhs - min over lambda of the left side; negative means no sampled witness.
    double margin = 0.0;
    std::optional<std::size_t> witness;  ///< index of the best lambda
    bool verified = false;
    bool vacuous = false;  ///< rhs = +inf
};

struct ImplicitConvexityReport
{
    std::size_t trials = 0;
    std::size_t verified = 0;
    std::size_t vacuous = 0;
    /// Trials with no witnessing lambda among the samples. These are not
    /// certified failures: a denser sample of Lambda may contain a witness.
    std::size_t unverified = 0;
    double worst_margin = 0.0;
    std::vector<ImplicitConvexityOutcome> unverified_cases;  ///< first 50
    std::vector<ImplicitConvexityOutcome> outcomes;         ///< every non-vacuous trial, capped at 1000

    [[nodiscard]] bool all_verified() const { return unverified == 0; }
};

ImplicitConvexityOutcome evaluate_implicit_trial(const CoverSpec& cover, CoverArgument which, const ImplicitConvexityTrial& trial, double tol);

/// Systematic trials supplied by the caller.
ImplicitConvexityReport check_implicit_convexity(const CoverSpec& cover,
                                                 CoverArgument which,
                                                 const std::vector<ImplicitConvexityTrial>& trials,
                                                 double tol);

/// Random trials: lambda1, lambda2 and the fixed point are drawn uniformly, and
/// z1, z2 uniformly among the grid nodes where the corresponding member is finite
/// (draws with no finite node are retried). Deterministic in `seed`.
ImplicitConvexityReport check_implicit_convexity(const CoverSpec& cover,
                                                 CoverArgument which,
                                                 std::size_t trial_count,
                                                 const Grid& grid_x,
                                                 const Grid& grid_y,
                                                 double tol,
                                                 std::uint64_t seed = 0);

using GraphMembership = std::function<bool(const Vector&, const Vector&)>;

struct CoverUnionReport
{
    /// Target pairs critical for no member.
    std::vector<std::size_t> missing;
    /// Critical grid pairs of some member that are not in the target.
    std::size_t extra_count = 0;
    std::vector<std::pair<Vector, Vector>> extra;  ///< first 100
    std::size_t critical_pairs_checked = 0;

    [[nodiscard]] bool target_in_union() const { return missing.empty(); }
    [[nodiscard]] bool union_in_target() const { return extra_count == 0; }
    [[nodiscard]] bool holds() const { return target_in_union() && union_in_target(); }
};

/// Both inclusions of M = union of M(b_lambda). Target pairs are tested by
/// evaluating each member; critical grid points of each member are tested with
/// `in_target` (default: within graph_tol of a sampled target pair in max norm).
/// Throws std::logic_error when the cover has no target graph.
CoverUnionReport check_cover_union(const CoverSpec& cover,
                                   const Grid& grid_x,
                                   const Grid& grid_y,
                                   double tol,
                                   double graph_tol = 1e-9,
                                   const GraphMembership& in_target = {});

struct ReparametrizationReport
{
    bool inf_identical = true;
    bool union_identical = true;
    std::size_t probes = 0;
    [[nodiscard]] bool identical() const { return inf_identical && union_identical; }
};

/// Cover with family'[k] = family[perm[k]] and parameters permuted alike.
/// Throws std::invalid_argument unless perm is a bijection of 0..size-1.
CoverSpec reparametrize(const CoverSpec& cover, const std::vector<std::size_t>& perm);

/// Compares inf_bipotential at the probe pairs and the union of member critical
/// sets on the grids, before and after reparametrization, for exact equality.
ReparametrizationReport check_reparametrization_invariance(const CoverSpec& cover,
                                                           const std::vector<std::size_t>& perm,
                                                           const std::vector<std::pair<Vector, Vector>>& probes,
                                                           const Grid& grid_x,
                                                           const Grid& grid_y,
                                                           double tol);

}  // namespace bipot
