#include "bipot/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace bipot
{

namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();
}

CoverSpec::CoverSpec(std::vector<double> parameter_samples, std::vector<BipotentialSpec> family, std::optional<GraphSample> target_graph)
    : params_(std::move(parameter_samples)), family_(std::move(family)), target_(std::move(target_graph))
{
    if (params_.empty())
        throw std::invalid_argument("cover: parameter sample must be non-empty");
    if (params_.size() != family_.size())
        throw std::invalid_argument("cover: one family member per parameter sample");
    for (double p : params_)
        if (std::isnan(p))
            throw std::invalid_argument("cover: NaN parameter");
    for (const auto& b : family_)
        if (b.dim_x() != family_.front().dim_x() || b.dim_y() != family_.front().dim_y())
            throw std::invalid_argument("cover: members differ in dimension");
    if (target_ && (target_->dim_x() != dim_x() || target_->dim_y() != dim_y()))
        throw std::invalid_argument("cover: target graph dimension mismatch");
}

CoverSpec CoverSpec::with_target(std::optional<GraphSample> target) const
{
    return {params_, family_, std::move(target)};
}

ExtReal inf_bipotential(const CoverSpec& cover, const Vector& x, const Vector& y)
{
    double v = inf;
    for (const auto& b : cover.family())
        v = std::min(v, b.eval_raw(x.components(), y.components()));
    return {v};
}

BipotentialSpec cover_bipotential(const CoverSpec& cover)
{
    return BipotentialSpec::cover_inf(cover.family());
}

// ---------------------------------------------------------------------------

namespace
{

double member_value(const CoverSpec& cover, std::size_t k, CoverArgument which, const Vector& z, const Vector& fixed)
{
    const auto& b = cover.member(k);
    return which == CoverArgument::InX ? b.eval_raw(z.components(), fixed.components()) : b.eval_raw(fixed.components(), z.components());
}

void record(ImplicitConvexityReport& rep, const ImplicitConvexityOutcome& o)
{
    ++rep.trials;
    if (o.vacuous) {
        ++rep.vacuous;
        ++rep.verified;
        return;
    }
    if (o.verified)
        ++rep.verified;
    else {
        ++rep.unverified;
        if (rep.unverified_cases.size() < 50)
            rep.unverified_cases.push_back(o);
    }
    if (rep.outcomes.size() < 1000)
        rep.outcomes.push_back(o);
    if (rep.trials - rep.vacuous == 1 || o.margin < rep.worst_margin)
        rep.worst_margin = o.margin;
}

}  // namespace

ImplicitConvexityOutcome evaluate_implicit_trial(const CoverSpec& cover, CoverArgument which, const ImplicitConvexityTrial& trial, double tol)
{
    if (trial.lambda1 >= cover.size() || trial.lambda2 >= cover.size())
        throw std::out_of_range("implicit convexity: parameter index out of range");
    if (!(trial.alpha >= 0.0 && trial.alpha <= 1.0))
        throw std::invalid_argument("implicit convexity: alpha must lie in [0, 1]");
    ImplicitConvexityOutcome o;
    o.trial = trial;
    const double a = trial.alpha;
    const double f1 = member_value(cover, trial.lambda1, which, trial.z1, trial.fixed);
    const double f2 = member_value(cover, trial.lambda2, which, trial.z2, trial.fixed);
    o.rhs = (a > 0.0 ? a * f1 : 0.0) + (a < 1.0 ? (1.0 - a) * f2 : 0.0);
    if (std::isinf(o.rhs)) {
        o.vacuous = true;
        o.verified = true;
        o.margin = inf;
        return o;
    }
    const Vector mix = a * trial.z1 + (1.0 - a) * trial.z2;
    double best = inf;
    for (std::size_t k = 0; k < cover.size(); ++k) {
        const double v = member_value(cover, k, which, mix, trial.fixed);
        if (v < best) {
            best = v;
            o.witness = k;
        }
    }
    o.margin = std::isinf(best) ? -inf : o.rhs - best;
    o.verified = best <= o.rhs + tol * (1.0 + std::abs(o.rhs));
    return o;
}

ImplicitConvexityReport check_implicit_convexity(const CoverSpec& cover,
                                                 CoverArgument which,
                                                 const std::vector<ImplicitConvexityTrial>& trials,
                                                 double tol)
{
    ImplicitConvexityReport rep;
    for (const auto& t : trials)
        record(rep, evaluate_implicit_trial(cover, which, t, tol));
    return rep;
}

ImplicitConvexityReport check_implicit_convexity(const CoverSpec& cover,
                                                 CoverArgument which,
                                                 std::size_t trial_count,
                                                 const Grid& grid_x,
                                                 const Grid& grid_y,
                                                 double tol,
                                                 std::uint64_t seed)
{
    const Grid& zgrid = which == CoverArgument::InX ? grid_x : grid_y;
    const Grid& fgrid = which == CoverArgument::InX ? grid_y : grid_x;
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    auto finite_nodes = [&](std::size_t k, const Vector& fixed) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < zgrid.size(); ++i)
            if (std::isfinite(member_value(cover, k, which, zgrid.node(i), fixed)))
                out.push_back(i);
        return out;
    };

    ImplicitConvexityReport rep;
    constexpr std::size_t max_attempts = 100;
    for (std::size_t t = 0; t < trial_count; ++t) {
        for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
            ImplicitConvexityTrial trial;
            trial.lambda1 = pick(cover.size());
            trial.lambda2 = pick(cover.size());
            trial.fixed = fgrid.node(pick(fgrid.size()));
            const auto n1 = finite_nodes(trial.lambda1, trial.fixed);
            const auto n2 = finite_nodes(trial.lambda2, trial.fixed);
            if (n1.empty() || n2.empty())
                continue;
            trial.z1 = zgrid.node(n1[pick(n1.size())]);
            trial.z2 = zgrid.node(n2[pick(n2.size())]);
            trial.alpha = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            record(rep, evaluate_implicit_trial(cover, which, trial, tol));
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

CoverUnionReport check_cover_union(const CoverSpec& cover,
                                   const Grid& grid_x,
                                   const Grid& grid_y,
                                   double tol,
                                   double graph_tol,
                                   const GraphMembership& in_target)
{
    if (!cover.target_graph())
        throw std::logic_error("cover union check needs a target graph");
    const GraphSample& m = *cover.target_graph();

    CoverUnionReport rep;
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double p = pairing(m.x(k), m.y(k));
        bool found = false;
        for (const auto& b : cover.family()) {
            const double v = b.eval_raw(m.x(k).components(), m.y(k).components());
            if (std::isfinite(v) && std::abs(v - p) <= pair_tol(tol, p)) {
                found = true;
                break;
            }
        }
        if (!found)
            rep.missing.push_back(k);
    }

    const GraphMembership near_sample = [&](const Vector& x, const Vector& y) {
        for (std::size_t k = 0; k < m.size(); ++k) {
            double d = 0.0;
            for (std::size_t c = 0; c < x.size(); ++c)
                d = std::max(d, std::abs(x[c] - m.x(k)[c]));
            for (std::size_t c = 0; c < y.size(); ++c)
                d = std::max(d, std::abs(y[c] - m.y(k)[c]));
            if (d <= graph_tol)
                return true;
        }
        return false;
    };
    const GraphMembership& member_of = in_target ? in_target : near_sample;

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& b : cover.family())
        for (const auto& node : critical_set(b, grid_x, grid_y, tol).nodes)
            seen.insert(node);
    rep.critical_pairs_checked = seen.size();
    for (const auto& [i, j] : seen) {
        const auto x = grid_x.node(i);
        const auto y = grid_y.node(j);
        if (!member_of(x, y)) {
            ++rep.extra_count;
            if (rep.extra.size() < 100)
                rep.extra.emplace_back(x, y);
        }
    }
    return rep;
}

CoverSpec reparametrize(const CoverSpec& cover, const std::vector<std::size_t>& perm)
{
    if (perm.size() != cover.size())
        throw std::invalid_argument("reparametrization must be a bijection of the parameter sample");
    std::vector<bool> hit(perm.size(), false);
    for (std::size_t k : perm) {
        if (k >= perm.size() || hit[k])
            throw std::invalid_argument("reparametrization must be a bijection of the parameter sample");
        hit[k] = true;
    }
    std::vector<double> params;
    std::vector<BipotentialSpec> family;
    for (std::size_t k : perm) {
        params.push_back(cover.parameter_samples()[k]);
        family.push_back(cover.member(k));
    }
    return {std::move(params), std::move(family), cover.target_graph()};
}

ReparametrizationReport check_reparametrization_invariance(const CoverSpec& cover,
                                                           const std::vector<std::size_t>& perm,
                                                           const std::vector<std::pair<Vector, Vector>>& probes,
                                                           const Grid& grid_x,
                                                           const Grid& grid_y,
                                                           double tol)
{
    const CoverSpec other = reparametrize(cover, perm);
    ReparametrizationReport rep;
    for (const auto& [x, y] : probes) {
        ++rep.probes;
        const ExtReal a = inf_bipotential(cover, x, y);
        const ExtReal b = inf_bipotential(other, x, y);
        if (!(a == b) || (a.is_finite() && std::signbit(a.value()) != std::signbit(b.value())))
            rep.inf_identical = false;
    }
    auto critical_union = [&](const CoverSpec& c) {
        std::set<std::pair<std::size_t, std::size_t>> u;
        for (const auto& b : c.family())
            for (const auto& node : critical_set(b, grid_x, grid_y, tol).nodes)
                u.insert(node);
        return u;
    };
    rep.union_identical = critical_union(cover) == critical_union(other);
    return rep;
}

}  // namespace bipot
