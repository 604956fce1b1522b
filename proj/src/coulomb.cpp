#include "bipot/coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bipot
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

void check_p(double p)
{
    if (!(p >= 0.0) || !std::isfinite(p))
        throw std::invalid_argument("Coulomb: p must be finite and >= 0");
}

void check_3d(const Vector& v, const char* what)
{
    if (v.size() != 3)
        throw std::invalid_argument(std::string("Coulomb: ") + what + " must be 3-D (n, t1, t2)");
}

bool in_k_mu(const Vector& y, double mu)
{
    return norm2(y[1], y[2]) <= mu * y[0];
}

// Shrinks (a, b) by one ulp steps until its norm is at most r.
std::array<double, 2> clamp_to_disc(double a, double b, double r)
{
    while (norm2(a, b) > r) {
        a *= 1.0 - 0x1.0p-52;
        b *= 1.0 - 0x1.0p-52;
    }
    return {a, b};
}

}  // namespace

CoulombParams::CoulombParams(double friction) : mu(friction)
{
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("Coulomb: friction coefficient must satisfy 0 < mu < inf");
}

ContactPoint ContactPoint::from_vectors(const Vector& x, const Vector& y)
{
    check_3d(x, "x");
    check_3d(y, "y");
    return {x[0], {x[1], x[2]}, y[0], {y[1], y[2]}};
}

std::string to_string(ContactKind kind)
{
    switch (kind) {
    case ContactKind::Separation: return "Separation";
    case ContactKind::Sticking: return "Sticking";
    case ContactKind::Sliding: return "Sliding";
    case ContactKind::NotInGraph: return "NotInGraph";
    }
    return "NotInGraph";
}

ContactClass classify(const ContactPoint& pt, const CoulombParams& params, double tol)
{
    const double mu = params.mu;
    const double xt = norm2(pt.xt[0], pt.xt[1]);
    const double yt = norm2(pt.yt[0], pt.yt[1]);
    ContactClass c;
    if (pt.xn < -tol && std::hypot(pt.yn, yt) <= tol) {
        c.kind = ContactKind::Separation;
        return c;
    }
    if (std::hypot(pt.xn, xt) <= tol && yt <= mu * pt.yn + tol) {
        c.kind = ContactKind::Sticking;
        return c;
    }
    if (std::abs(pt.xn) <= tol && xt > tol && pt.yn >= -tol) {
        const double d0 = pt.xt[0] / xt;
        const double d1 = pt.xt[1] / xt;
        const double r0 = pt.yt[0] - mu * pt.yn * d0;
        const double r1 = pt.yt[1] - mu * pt.yn * d1;
        if (norm2(r0, r1) <= tol) {
            c.kind = ContactKind::Sliding;
            c.slip_direction = {d0, d1};
            c.sliding_limit = std::hypot(pt.yn, yt) <= tol;
            return c;
        }
    }
    return c;
}

bool cone_membership(const Vector& v, Cone cone, const CoulombParams& params, double p)
{
    const double mu = params.mu;
    if (cone == Cone::Disc) {
        if (v.size() != 2)
            throw std::invalid_argument("Coulomb: disc membership needs a 2-D vector");
        check_p(p);
        return norm2(v[0], v[1]) <= mu * p;
    }
    check_3d(v, "cone argument");
    switch (cone) {
    case Cone::K_mu: return in_k_mu(v, mu);
    case Cone::K_mu_star: return mu * norm2(v[1], v[2]) + v[0] <= 0.0;
    case Cone::K_0: return v[1] == 0.0 && v[2] == 0.0 && v[0] >= 0.0;
    case Cone::K_0_star: return v[0] <= 0.0;
    case Cone::Disc: break;
    }
    return false;
}

ConvexFunction potential_family(double p, Potential which, const CoulombParams& params)
{
    check_p(p);
    const double mu = params.mu;
    const std::vector<std::size_t> n{0};
    const std::vector<std::size_t> t{1, 2};
    if (p == 0.0) {
        switch (which) {
        case Potential::Phi: return fn::constant(3, 0.0);
        case Potential::Psi:
            return fn::sum({fn::indicator(3, n, BoxSet{{0.0}, {inf}}), fn::indicator(3, t, SingletonSet{{0.0, 0.0}})});
        case Potential::PhiStar: return fn::indicator(3, {0, 1, 2}, SingletonSet{{0.0, 0.0, 0.0}});
        case Potential::PsiStar: return fn::indicator(3, n, BoxSet{{-inf}, {0.0}});
        }
    }
    const double r = mu * p;
    switch (which) {
    case Potential::Phi: return fn::sum({fn::affine(3, n, {p}), fn::scaled_norm(3, t, r)});
    case Potential::Psi: return fn::indicator(3, t, DiscSet{r});
    case Potential::PhiStar: return fn::sum({fn::indicator(3, n, SingletonSet{{p}}), fn::indicator(3, t, DiscSet{r})});
    case Potential::PsiStar: return fn::sum({fn::scaled_norm(3, t, r), fn::indicator(3, n, SingletonSet{{0.0}})});
    }
    throw std::invalid_argument("Coulomb: unknown potential");
}

ExtReal b_p(double p, const Vector& x, const Vector& y, const CoulombParams& params)
{
    check_3d(x, "x");
    check_3d(y, "y");
    if (p == inf)
        return ExtReal::infinity();
    check_p(p);
    if (p == 0.0) {
        if (y[0] == 0.0 && y[1] == 0.0 && y[2] == 0.0 && x[0] <= 0.0)
            return {0.0};
        return ExtReal::infinity();
    }
    const double r = params.mu * p;
    if (norm2(y[1], y[2]) > r || y[0] != p || x[0] != 0.0)
        return ExtReal::infinity();
    return {r * norm2(x[1], x[2])};
}

BipotentialSpec b_p_spec(double p, const CoulombParams& params)
{
    if (p == inf)
        return BipotentialSpec::closed_form(3, 3, {BipotentialTerm::in_x(fn::indicator(3, {0}, EmptySet{}))});
    const auto b1 = BipotentialSpec::separable(potential_family(p, Potential::Phi, params), potential_family(p, Potential::PhiStar, params));
    const auto b2 = BipotentialSpec::separable(potential_family(p, Potential::PsiStar, params), potential_family(p, Potential::Psi, params));
    return BipotentialSpec::max_of_two(b1, b2);
}

ExtReal coulomb_bipotential(const Vector& x, const Vector& y, const CoulombParams& params)
{
    check_3d(x, "x");
    check_3d(y, "y");
    if (!in_k_mu(y, params.mu) || x[0] > 0.0)
        return ExtReal::infinity();
    return {params.mu * norm2(x[1], x[2]) * y[0]};
}

BipotentialSpec coulomb_bipotential_spec(const CoulombParams& params)
{
    return BipotentialSpec::closed_form(3,
                                        3,
                                        {BipotentialTerm::product(fn::scaled_norm(3, {1, 2}, params.mu), fn::affine(3, {0}, {1.0})),
                                         BipotentialTerm::in_y(fn::indicator(3, {0, 1, 2}, CoulombConeSet{params.mu})),
                                         BipotentialTerm::in_x(fn::indicator(3, {0}, BoxSet{{-inf}, {0.0}}))});
}

std::vector<double> p_grid(double p_max, std::size_t n)
{
    if (!(p_max > 0.0) || !std::isfinite(p_max))
        throw std::invalid_argument("p grid: p_max must be finite and > 0");
    if (n == 0)
        throw std::invalid_argument("p grid: need at least one positive sample");
    std::vector<double> out{0.0};
    for (std::size_t k = 0; k < n; ++k)
        out.push_back(p_max * std::exp2((static_cast<double>(k) - static_cast<double>(n - 1)) / 8.0));
    return out;
}

CoverSpec coulomb_cover(const CoulombParams& params, const std::vector<double>& p_values, bool include_infinity, std::optional<GraphSample> target)
{
    std::vector<double> ps = p_values;
    if (include_infinity)
        ps.push_back(inf);
    std::vector<BipotentialSpec> family;
    family.reserve(ps.size());
    for (double p : ps)
        family.push_back(b_p_spec(p, params));
    return {std::move(ps), std::move(family), std::move(target)};
}

// ---------------------------------------------------------------------------

GraphSample sample_graph(const CoulombParams& params, Branch branch, const SampleDensity& density, const std::vector<double>& p_values)
{
    const double mu = params.mu;
    GraphSample m(3, 3);
    const bool all = branch == Branch::All;
    const double two_pi = 2.0 * std::numbers::pi;
    auto angle = [&](std::size_t k) { return two_pi * static_cast<double>(k) / static_cast<double>(density.angles); };

    if (all || branch == Branch::Separation) {
        const auto xt = density.separation_xt > 1 ? Grid::uniform_axis(-density.separation_extent, density.separation_extent, density.separation_xt)
                                                  : std::vector<double>{0.0};
        for (std::size_t k = 1; k <= density.separation_xn; ++k) {
            const double xn = -density.separation_extent * static_cast<double>(k) / static_cast<double>(density.separation_xn);
            for (double a : xt)
                for (double b : xt)
                    m.add(Vector{xn, a, b}, Vector{0.0, 0.0, 0.0});
        }
    }
    for (double p : p_values) {
        if (!(p > 0.0) || !std::isfinite(p))
            continue;
        const double r = mu * p;
        if ((all || branch == Branch::Sticking)) {
            if (density.include_anchor)
                m.add(Vector{0.0, 0.0, 0.0}, Vector{p, 0.0, 0.0});
            for (double frac : density.sticking_radii)
                for (std::size_t k = 0; k < density.angles; ++k) {
                    const auto yt = clamp_to_disc(frac * r * std::cos(angle(k)), frac * r * std::sin(angle(k)), r);
                    m.add(Vector{0.0, 0.0, 0.0}, Vector{p, yt[0], yt[1]});
                }
        }
        if (all || branch == Branch::Sliding) {
            for (std::size_t l = 0; l < density.slide_lambdas; ++l) {
                const double s = density.slide_lambdas == 1 ? 0.5 : static_cast<double>(l) / static_cast<double>(density.slide_lambdas - 1);
                const double lambda = density.lambda_lo * std::pow(density.lambda_hi / density.lambda_lo, s);
                for (std::size_t k = 0; k < density.angles; ++k) {
                    const auto yt = clamp_to_disc(r * std::cos(angle(k)), r * std::sin(angle(k)), r);
                    m.add(Vector{0.0, lambda * yt[0], lambda * yt[1]}, Vector{p, yt[0], yt[1]});
                }
            }
        }
    }
    return m;
}

std::string to_string(ProbeStratum s)
{
    switch (s) {
    case ProbeStratum::Separation: return "separation";
    case ProbeStratum::Sticking: return "sticking";
    case ProbeStratum::Sliding: return "sliding";
    case ProbeStratum::SlidingLimit: return "sliding_limit";
    case ProbeStratum::OpenGapLoaded: return "open_gap_loaded";
    case ProbeStratum::SlipInsideCone: return "slip_inside_cone";
    case ProbeStratum::SlipMisaligned: return "slip_misaligned";
    case ProbeStratum::Penetration: return "penetration";
    case ProbeStratum::OutsideCone: return "outside_cone";
    case ProbeStratum::StuckOutsideCone: return "stuck_outside_cone";
    case ProbeStratum::Generic: return "generic";
    }
    return "generic";
}

std::vector<Probe> stratified_probes(const CoulombParams& params, std::size_t count, std::uint64_t seed, const std::vector<double>& p_values)
{
    const double mu = params.mu;
    std::vector<double> positive;
    for (double p : p_values)
        if (p > 0.0 && std::isfinite(p))
            positive.push_back(p);
    if (positive.empty())
        positive.push_back(1.0);
    const double p_top = positive.back();

    std::mt19937_64 rng(seed);
    auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto u = [&](double a, double b) { return a + (b - a) * unit(); };
    auto pick_p = [&]() { return positive[static_cast<std::size_t>(rng() % positive.size())]; };
    auto theta = [&]() { return u(0.0, 2.0 * std::numbers::pi); };
    auto nonzero_xt = [&]() {
        const double rho = u(0.01, 2.0);
        const double th = theta();
        return std::array<double, 2>{rho * std::cos(th), rho * std::sin(th)};
    };
    auto in_disc = [&](double r, double frac_hi) {
        const double rho = r * std::sqrt(unit()) * frac_hi;
        const double th = theta();
        return clamp_to_disc(rho * std::cos(th), rho * std::sin(th), r);
    };
    auto outside_cone_y = [&](ContactPoint& c) {
        c.yn = u(-2.0, 2.0);
        const double rho = c.yn >= 0.0 ? mu * c.yn + u(0.01, 2.0) : u(0.0, 2.0);
        const double th = theta();
        c.yt = {rho * std::cos(th), rho * std::sin(th)};
        if (norm2(c.yt[0], c.yt[1]) <= mu * c.yn)
            c.yt[0] += 0.01 + mu * c.yn;
    };

    std::vector<Probe> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Probe pr;
        pr.stratum = static_cast<ProbeStratum>(k % probe_stratum_count);
        ContactPoint& c = pr.point;
        switch (pr.stratum) {
        case ProbeStratum::Separation:
            c.xn = -u(0.01, 2.0);
            c.xt = {u(-2.0, 2.0), u(-2.0, 2.0)};
            break;
        case ProbeStratum::Sticking: {
            c.yn = pick_p();
            c.yt = in_disc(mu * c.yn, 1.0);
            break;
        }
        case ProbeStratum::Sliding: {
            c.yn = pick_p();
            const double r = mu * c.yn;
            const double th = theta();
            c.yt = clamp_to_disc(r * std::cos(th), r * std::sin(th), r);
            const double lambda = std::pow(10.0, u(-3.0, 3.0));
            c.xt = {lambda * c.yt[0], lambda * c.yt[1]};
            break;
        }
        case ProbeStratum::SlidingLimit: c.xt = nonzero_xt(); break;
        case ProbeStratum::OpenGapLoaded:
            c.xn = -u(0.01, 2.0);
            c.xt = {u(-2.0, 2.0), u(-2.0, 2.0)};
            c.yn = pick_p();
            c.yt = in_disc(mu * c.yn, 1.0);
            break;
        case ProbeStratum::SlipInsideCone:
            c.xt = nonzero_xt();
            c.yn = pick_p();
            c.yt = in_disc(mu * c.yn, 0.95);
            break;
        case ProbeStratum::SlipMisaligned: {
            const double rho = u(0.01, 2.0);
            const double th = theta();
            c.xt = {rho * std::cos(th), rho * std::sin(th)};
            c.yn = pick_p();
            const double r = mu * c.yn;
            const double phi = th + u(0.1, 2.0 * std::numbers::pi - 0.1);
            c.yt = clamp_to_disc(r * std::cos(phi), r * std::sin(phi), r);
            break;
        }
        case ProbeStratum::Penetration:
            c.xn = u(0.01, 2.0);
            c.xt = {u(-2.0, 2.0), u(-2.0, 2.0)};
            c.yn = pick_p();
            c.yt = in_disc(mu * c.yn, 1.0);
            break;
        case ProbeStratum::OutsideCone:
            c.xn = -u(0.0, 2.0);
            c.xt = {u(-2.0, 2.0), u(-2.0, 2.0)};
            outside_cone_y(c);
            break;
        case ProbeStratum::StuckOutsideCone: outside_cone_y(c); break;
        case ProbeStratum::Generic:
            c.xn = u(-2.0, 2.0);
            c.xt = {u(-2.0, 2.0), u(-2.0, 2.0)};
            c.yn = u(-1.0, p_top);
            c.yt = {u(-2.0, 2.0), u(-2.0, 2.0)};
            break;
        }
        out.push_back(pr);
    }
    return out;
}

CoulombVerifyReport verify_coulomb(const CoulombParams& params,
                                   std::size_t probe_count,
                                   std::uint64_t seed,
                                   const std::vector<double>& p_values,
                                   double tol)
{
    CoulombVerifyReport rep;
    rep.mu = params.mu;
    const auto probes = stratified_probes(params, probe_count, seed, p_values);
    double p_max = 0.0;
    for (double p : p_values)
        if (std::isfinite(p))
            p_max = std::max(p_max, p);

    std::vector<BipotentialSpec> b1;
    std::vector<BipotentialSpec> b2;
    for (double p : p_values) {
        b1.push_back(BipotentialSpec::separable(potential_family(p, Potential::Phi, params), potential_family(p, Potential::PhiStar, params)));
        b2.push_back(BipotentialSpec::separable(potential_family(p, Potential::PsiStar, params), potential_family(p, Potential::Psi, params)));
    }

    for (std::size_t k = 0; k < probes.size(); ++k) {
        const auto& pr = probes[k];
        const Vector x = pr.point.x();
        const Vector y = pr.point.y();
        ++rep.probes;

        const auto cls = classify(pr.point, params, tol);
        const ExtReal b = coulomb_bipotential(x, y, params);
        const double pxy = pairing(x, y);
        const bool crit = b.is_finite() && std::abs(b.value() - pxy) <= tol * (1.0 + std::abs(pxy));
        const bool in_graph = cls.kind != ContactKind::NotInGraph;
        rep.in_graph += in_graph ? 1 : 0;
        rep.critical += crit ? 1 : 0;
        rep.sliding_limit += cls.sliding_limit ? 1 : 0;
        if (crit != in_graph)
            rep.critical_mismatches.push_back({pr, b, ExtReal(pxy), "classify " + to_string(cls.kind)});

        double m = inf;
        for (double p : p_values)
            m = std::min(m, b_p(p, x, y, params).to_double());
        bool agree = true;
        if (in_k_mu(y, params.mu)) {
            if (y[0] > p_max) {
                ++rep.cover_truncated;
            } else {
                ++rep.cover_checked;
                agree = (std::isinf(m) && b.is_infinite()) ||
                        (std::isfinite(m) && b.is_finite() && std::abs(m - b.value()) <= tol * (1.0 + std::abs(b.value())));
            }
        } else {
            ++rep.cover_outside_cone;
            agree = std::isinf(m) && b.is_infinite();
        }
        if (!agree) {
            ++rep.cover_mismatch_count;
            if (rep.cover_mismatches.size() < 100)
                rep.cover_mismatches.push_back({pr, ExtReal(m), b, "min over p grid vs b"});
        }

        // max identity at p = y_n when it is a grid value, and at one rotating grid value
        std::vector<std::size_t> idx{k % p_values.size()};
        for (std::size_t q = 0; q < p_values.size(); ++q)
            if (p_values[q] == y[0] && q != idx.front())
                idx.push_back(q);
        for (std::size_t q : idx) {
            const double p = p_values[q];
            if (!std::isfinite(p))
                continue;
            ++rep.max_identity_checked;
            const double direct = b_p(p, x, y, params).to_double();
            const double via_max = std::max(b1[q].eval_raw(x.components(), y.components()), b2[q].eval_raw(x.components(), y.components()));
            if (!(direct == via_max))
                rep.max_identity_mismatches.push_back({pr, ExtReal(direct), ExtReal(via_max), "p = " + std::to_string(p)});
        }
    }
    return rep;
}

Grid coulomb_grid_x(std::size_t nx_t)
{
    const auto t = Grid::uniform_axis(-1.0, 1.0, nx_t);
    return Grid(std::vector<std::vector<double>>{{-1.0, 0.0, 1.0}, t, t});
}

Grid coulomb_grid_y(double p, const CoulombParams& params, std::size_t ny_t)
{
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("Coulomb grid: p must be finite and > 0");
    const double r = 1.25 * params.mu * p;
    const auto t = Grid::uniform_axis(-r, r, ny_t);
    return Grid(std::vector<std::vector<double>>{{0.5 * p, p, 1.5 * p}, t, t});
}

}  // namespace bipot
