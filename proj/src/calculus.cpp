#include "bipot/calculus.hpp"

#include "bipot/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <sstream>

namespace bipot
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower hull of the finite points (xs[i], u[i]) followed by a merge over the
// sorted dual nodes. h[j] = max_i xs[i] ys[j] - u[i]; -inf when u is all +inf.
void legendre_1d(const std::vector<double>& xs,
                 const std::vector<double>& u,
                 const std::vector<double>& ys,
                 std::vector<double>& h,
                 std::vector<std::uint32_t>& arg,
                 std::vector<std::uint32_t>& hull)
{
    hull.clear();
    for (std::uint32_t i = 0; i < xs.size(); ++i) {
        if (std::isinf(u[i]))
            continue;
        while (hull.size() >= 2) {
            const std::uint32_t a = hull[hull.size() - 2];
            const std::uint32_t b = hull.back();
            const double cross = (xs[b] - xs[a]) * (u[i] - u[a]) - (u[b] - u[a]) * (xs[i] - xs[a]);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    h.assign(ys.size(), -kInf);
    arg.assign(ys.size(), 0);
    if (hull.empty())
        return;
    std::size_t k = 0;
    for (std::size_t j = 0; j < ys.size(); ++j) {
        const double y = ys[j];
        double cur = xs[hull[k]] * y - u[hull[k]];
        while (k + 1 < hull.size()) {
            const double next = xs[hull[k + 1]] * y - u[hull[k + 1]];
            if (next > cur) {
                ++k;
                cur = next;
            } else {
                break;
            }
        }
        h[j] = cur;
        arg[j] = hull[k];
    }
}

SampledConjugate conjugate_fast(const Grid& primal, std::span<const double> values, const Grid& dual)
{
    const std::size_t d = primal.dim();
    std::array<std::size_t, 3> shape{};
    for (std::size_t k = 0; k < d; ++k)
        shape[k] = primal.axis(k).size();
    std::vector<double> cur(values.begin(), values.end());
    std::vector<std::vector<std::uint32_t>> args(d);

    for (std::size_t pass = 0; pass < d; ++pass) {
        const std::size_t axis = d - 1 - pass;
        const std::size_t n = shape[axis];
        const std::size_t m = dual.axis(axis).size();
        std::size_t outer = 1;
        for (std::size_t k = 0; k < axis; ++k)
            outer *= shape[k];
        std::size_t inner = 1;
        for (std::size_t k = axis + 1; k < d; ++k)
            inner *= shape[k];
        std::vector<double> next(outer * m * inner);
        std::vector<std::uint32_t> arg(outer * m * inner);
        const bool first = pass == 0;
        parallel_for(outer * inner, [&](std::size_t begin, std::size_t end) {
            std::vector<double> u(n);
            std::vector<double> h;
            std::vector<std::uint32_t> a;
            std::vector<std::uint32_t> hull;
            hull.reserve(n);
            for (std::size_t r = begin; r < end; ++r) {
                const std::size_t o = r / inner;
                const std::size_t b = r % inner;
                bool any = false;
                for (std::size_t i = 0; i < n; ++i) {
                    const double v = cur[(o * n + i) * inner + b];
                    u[i] = first ? v : -v;
                    any = any || std::isfinite(u[i]);
                }
                if (!any) {
                    for (std::size_t j = 0; j < m; ++j) {
                        next[(o * m + j) * inner + b] = -kInf;
                        arg[(o * m + j) * inner + b] = 0;
                    }
                    continue;
                }
                legendre_1d(primal.axis(axis), u, dual.axis(axis), h, a, hull);
                for (std::size_t j = 0; j < m; ++j) {
                    next[(o * m + j) * inner + b] = h[j];
                    arg[(o * m + j) * inner + b] = a[j];
                }
            }
        });
        cur = std::move(next);
        args[axis] = std::move(arg);
        shape[axis] = m;
    }

    SampledConjugate out{dual, std::move(cur), std::vector<std::size_t>(dual.size(), 0)};
    std::array<std::size_t, 3> pshape{};
    std::array<std::size_t, 3> dshape{};
    for (std::size_t k = 0; k < d; ++k) {
        pshape[k] = primal.axis(k).size();
        dshape[k] = dual.axis(k).size();
    }
    for (std::size_t flat = 0; flat < dual.size(); ++flat) {
        const auto j = dual.unflatten(flat);
        std::array<std::size_t, 3> idx = j;
        for (std::size_t axis = 0; axis < d; ++axis) {
            // args[axis] has primal extents before `axis`, dual extents from `axis` on.
            std::size_t pos = 0;
            for (std::size_t k = 0; k < d; ++k) {
                const std::size_t ext = k < axis ? pshape[k] : dshape[k];
                pos = pos * ext + idx[k];
            }
            idx[axis] = args[axis][pos];
        }
        out.argmax[flat] = primal.flatten(idx);
    }
    return out;
}

SampledConjugate conjugate_brute(const Grid& primal, std::span<const double> values, const Grid& dual)
{
    const std::size_t d = primal.dim();
    std::vector<std::size_t> finite;
    std::vector<double> px;
    for (std::size_t i = 0; i < primal.size(); ++i) {
        if (std::isinf(values[i]))
            continue;
        finite.push_back(i);
        const auto idx = primal.unflatten(i);
        for (std::size_t k = 0; k < d; ++k)
            px.push_back(primal.axis(k)[idx[k]]);
    }
    SampledConjugate out{dual, std::vector<double>(dual.size()), std::vector<std::size_t>(dual.size())};
    parallel_for(dual.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const auto idx = dual.unflatten(j);
            std::array<double, 3> y{};
            for (std::size_t k = 0; k < d; ++k)
                y[k] = dual.axis(k)[idx[k]];
            double best = -kInf;
            std::size_t arg = 0;
            for (std::size_t t = 0; t < finite.size(); ++t) {
                const double* x = &px[t * d];
                double s = x[0] * y[0];
                for (std::size_t k = 1; k < d; ++k)
                    s += x[k] * y[k];
                const double v = s - values[finite[t]];
                if (v > best) {
                    best = v;
                    arg = finite[t];
                }
            }
            out.values[j] = best;
            out.argmax[j] = arg;
        }
    });
    return out;
}

bool centered_uniform(const Grid& g)
{
    if (!g.is_uniform())
        return false;
    for (const auto& a : g.axes()) {
        if (a.size() % 2 == 0 || a[a.size() / 2] != 0.0)
            return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != -a[a.size() - 1 - i])
                return false;
    }
    return true;
}

double quotient(double fa, double fb, double h)
{
    if (std::isinf(fb))
        return kInf;
    return (fb - fa) / h;
}

// One-sided derivative of t -> f(x + dir t e_k) at 0 for a closed-form f.
// Returns +inf when the ray leaves dom f immediately.
double one_sided(const ConvexFunction& f, std::array<double, 3> x, std::size_t dim, std::size_t k, double dir, double fx)
{
    constexpr int levels = 11;
    const double base = 1e-3 * std::max(1.0, std::abs(x[k]));
    std::array<double, levels> q{};
    const double x0 = x[k];
    for (int i = 0; i < levels; ++i) {
        const double h = std::ldexp(base, -i);
        x[k] = x0 + dir * h;
        const double v = f.eval_raw(std::span<const double>(x.data(), dim));
        q[static_cast<std::size_t>(i)] = quotient(fx, v, h);
    }
    const double last = q[levels - 1];
    if (std::isinf(last))
        return kInf;
    const double prev = q[levels - 2];
    if (std::isinf(prev))
        return last;
    return 2.0 * last - prev;
}

struct Interval
{
    double lo;
    double hi;
};

// Interval of the partial subdifferential along coordinate k.
Interval coordinate_interval(const ConvexFunction& f, const Vector& x, std::size_t k, double fx)
{
    const std::size_t d = x.size();
    std::array<double, 3> p{};
    for (std::size_t i = 0; i < d; ++i)
        p[i] = x[i];
    if (f.is_sampled()) {
        const auto& s = f.sampled();
        const auto& a = s.grid.axis(k);
        const auto it = std::lower_bound(a.begin(), a.end(), x[k]);
        const auto pos = static_cast<std::size_t>(it - a.begin());
        auto at = [&](std::size_t node) {
            p[k] = a[node];
            return f.eval_raw(std::span<const double>(p.data(), d));
        };
        if (it != a.end() && *it == x[k]) {
            const double lo = pos == 0 ? -kInf : -quotient(fx, at(pos - 1), a[pos] - a[pos - 1]);
            const double hi = pos + 1 == a.size() ? kInf : quotient(fx, at(pos + 1), a[pos + 1] - a[pos]);
            return {lo, hi};
        }
        const double fl = at(pos - 1);
        const double fr = at(pos);
        const double slope = (fr - fl) / (a[pos] - a[pos - 1]);
        return {slope, slope};
    }
    const double right = one_sided(f, p, d, k, 1.0, fx);
    const double left = one_sided(f, p, d, k, -1.0, fx);
    double hi = right;
    double lo = std::isinf(left) ? -kInf : -left;
    if (std::isfinite(lo) && std::isfinite(hi) && lo > hi) {
        const double mid = 0.5 * (lo + hi);
        lo = hi = mid;
    }
    return {lo, hi};
}

std::vector<Vector> default_probes(const Vector& x)
{
    const std::size_t d = x.size();
    std::vector<Vector> out;
    std::size_t combos = 1;
    for (std::size_t k = 0; k < d; ++k)
        combos *= 3;
    for (double r : {1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0, 4.0}) {
        for (std::size_t c = 0; c < combos; ++c) {
            std::array<double, 3> p{};
            std::size_t rem = c;
            bool zero = true;
            for (std::size_t k = 0; k < d; ++k) {
                const int step = static_cast<int>(rem % 3) - 1;
                rem /= 3;
                p[k] = x[k] + r * step;
                zero = zero && step == 0;
            }
            if (!zero)
                out.emplace_back(std::span<const double>(p.data(), d));
        }
    }
    return out;
}

double residual(const ConvexFunction& f, const Vector& x, double fx, const Vector& u, const std::vector<Vector>& probes)
{
    double worst = -kInf;
    for (const auto& z : probes) {
        double fz = 0.0;
        try {
            fz = f.eval_raw(z.components());
        } catch (const std::domain_error&) {
            continue;
        }
        if (std::isinf(fz))
            continue;
        worst = std::max(worst, pairing(z - x, u) - (fz - fx));
    }
    return std::max(worst, 0.0);
}

std::string fmt_double(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::size_t default_nodes_per_axis(std::size_t dim)
{
    switch (dim) {
    case 1:
        return 801;
    case 2:
        return 101;
    default:
        return 41;
    }
}

Grid default_grid(std::size_t dim, double radius)
{
    return Grid::uniform(dim, -radius, radius, default_nodes_per_axis(dim));
}

double grid_modulus(const Grid& primal, const Grid& dual, const Vector& x)
{
    const double hx = primal.max_step();
    const double hy = dual.max_step();
    if (primal.dim() == 1)
        return hx * hy;
    return hx * hy + 0.5 * std::sqrt(static_cast<double>(primal.dim())) * hy * x.norm();
}

SampledConjugate conjugate_values(const Grid& primal, std::span<const double> values, const Grid& dual, ConjugateMethod method)
{
    if (primal.dim() != dual.dim())
        throw std::invalid_argument("conjugate: primal and dual grids differ in dimension");
    if (values.size() != primal.size())
        throw std::invalid_argument("conjugate: one value per primal node required");
    if (std::none_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); }))
        throw EmptyDomainError("conjugate: function is +inf on the whole primal grid (empty domain)");
    return method == ConjugateMethod::Fast ? conjugate_fast(primal, values, dual) : conjugate_brute(primal, values, dual);
}

SampledConjugate conjugate_sampled(const ConvexFunction& f, const Grid& primal, const Grid& dual, ConjugateMethod method)
{
    const auto values = sample_values(f, primal);
    return conjugate_values(primal, values, dual, method);
}

ConvexFunction fenchel_conjugate(const ConvexFunction& f, const Grid& primal, const Grid& dual, ConjugateMethod method)
{
    auto c = conjugate_sampled(f, primal, dual, method);
    return fn::sampled(std::move(c.grid), std::move(c.values));
}

ConvexFunction fenchel_conjugate(const ConvexFunction& f, const Grid& dual)
{
    return fenchel_conjugate(f, default_grid(f.dim()), dual);
}

std::vector<double> inf_convolution_values(const ConvexFunction& f, const ConvexFunction& g, const Grid& grid)
{
    if (f.dim() != grid.dim() || g.dim() != grid.dim())
        throw std::invalid_argument("inf_convolution: dimension mismatch");
    const std::size_t d = grid.dim();
    const std::size_t n = grid.size();
    const auto fv = sample_values(f, grid);
    std::vector<double> out(n, kInf);

    if (centered_uniform(grid)) {
        const auto gv = sample_values(g, grid);
        parallel_for(n, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const auto xi = grid.unflatten(i);
                double best = kInf;
                for (std::size_t j = 0; j < n; ++j) {
                    if (std::isinf(fv[j]))
                        continue;
                    const auto xj = grid.unflatten(j);
                    std::array<std::size_t, 3> k{};
                    bool inside = true;
                    for (std::size_t a = 0; a < d; ++a) {
                        const std::size_t len = grid.axis(a).size();
                        const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(xi[a]) - static_cast<std::ptrdiff_t>(xj[a]) +
                                                   static_cast<std::ptrdiff_t>(len / 2);
                        if (off < 0 || off >= static_cast<std::ptrdiff_t>(len)) {
                            inside = false;
                            break;
                        }
                        k[a] = static_cast<std::size_t>(off);
                    }
                    if (!inside)
                        continue;
                    const double gk = gv[grid.flatten(k)];
                    if (std::isinf(gk))
                        continue;
                    best = std::min(best, fv[j] + gk);
                }
                out[i] = best;
            }
        });
        return out;
    }

    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto xi = grid.unflatten(i);
            double best = kInf;
            for (std::size_t j = 0; j < n; ++j) {
                if (std::isinf(fv[j]))
                    continue;
                const auto xj = grid.unflatten(j);
                std::array<double, 3> z{};
                bool inside = true;
                for (std::size_t a = 0; a < d; ++a) {
                    const auto& ax = grid.axis(a);
                    z[a] = ax[xi[a]] - ax[xj[a]];
                    if (z[a] < ax.front() || z[a] > ax.back())
                        inside = false;
                }
                if (!inside)
                    continue;
                const double gz = g.eval_raw(std::span<const double>(z.data(), d));
                if (std::isinf(gz))
                    continue;
                best = std::min(best, fv[j] + gz);
            }
            out[i] = best;
        }
    });
    return out;
}

ConvexFunction inf_convolution(const ConvexFunction& f, const ConvexFunction& g, const Grid& grid)
{
    return fn::sampled(grid, inf_convolution_values(f, g, grid));
}

SubgradientEstimate subdifferential(const ConvexFunction& f, const Vector& x, double tol, const std::optional<Grid>& probes)
{
    if (x.size() != f.dim())
        throw std::invalid_argument("subdifferential: dimension mismatch");
    const double fx = f.eval_raw(x.components());
    if (std::isinf(fx))
        throw std::domain_error("subdifferential: point outside the effective domain");
    if (tol <= 0.0)
        tol = 1e-6 * (1.0 + std::abs(fx));

    std::vector<Vector> probe_points;
    if (probes)
        probe_points = probes->nodes();
    else if (f.is_sampled())
        probe_points = f.sampled().grid.nodes();
    else
        probe_points = default_probes(x);

    const std::size_t d = x.size();
    SubgradientEstimate est;
    est.dim = d;
    std::array<Interval, 3> iv{};
    for (std::size_t k = 0; k < d; ++k)
        iv[k] = coordinate_interval(f, x, k, fx);

    if (d == 1) {
        est.lo = iv[0].lo;
        est.hi = iv[0].hi;
        est.empty = est.lo > est.hi + tol;
        for (double s : {est.lo, est.hi}) {
            if (std::isinf(s))
                continue;
            const Vector u{s};
            if (!est.slopes.empty() && est.slopes.back() == u)
                continue;
            est.slopes.push_back(u);
            est.residuals.push_back(residual(f, x, fx, u, probe_points));
        }
        return est;
    }

    std::array<std::array<double, 3>, 3> choices{};
    for (std::size_t k = 0; k < d; ++k) {
        double lo = iv[k].lo;
        double hi = iv[k].hi;
        if (std::isinf(lo) && std::isinf(hi))
            lo = hi = 0.0;
        else if (std::isinf(lo))
            lo = hi;
        else if (std::isinf(hi))
            hi = lo;
        choices[k] = {lo, 0.5 * (lo + hi), hi};
    }
    std::size_t combos = 1;
    for (std::size_t k = 0; k < d; ++k)
        combos *= 3;
    for (std::size_t c = 0; c < combos; ++c) {
        std::array<double, 3> u{};
        std::size_t rem = c;
        for (std::size_t k = 0; k < d; ++k) {
            u[k] = choices[k][rem % 3];
            rem /= 3;
        }
        const Vector uv(std::span<const double>(u.data(), d));
        if (std::find(est.slopes.begin(), est.slopes.end(), uv) != est.slopes.end())
            continue;
        const double r = residual(f, x, fx, uv, probe_points);
        if (r <= tol) {
            est.slopes.push_back(uv);
            est.residuals.push_back(r);
        }
    }
    est.empty = est.slopes.empty();
    return est;
}

ConvexFunction convex_combination(double lambda, const ConvexFunction& f1, const ConvexFunction& f2)
{
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("convex_combination: lambda must lie in [0, 1]");
    if (f1.dim() != f2.dim())
        throw std::invalid_argument("convex_combination: dimension mismatch");
    if (lambda == 1.0)
        return f1;
    if (lambda == 0.0)
        return f2;
    return fn::sum({fn::scaled(lambda, f1), fn::scaled(1.0 - lambda, f2)});
}

ConvexFunction scaled_function(double lambda, const ConvexFunction& f, int which)
{
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("scaled_function: lambda must lie in (0, 1)");
    if (which == 1)
        return fn::prescaled(lambda, f);
    if (which == 2)
        return fn::prescaled(1.0 - lambda, f);
    throw std::invalid_argument("scaled_function: which must be 1 or 2");
}

ConvexityReport is_convex_on_grid(const Grid& grid, std::span<const double> values, double tol)
{
    if (values.size() != grid.size())
        throw std::invalid_argument("is_convex_on_grid: one value per node required");
    ConvexityReport rep;
    const std::size_t d = grid.dim();
    auto record = [&](double v, bool bad, std::array<std::size_t, 3> w) {
        if (bad) {
            rep.convex = false;
            if (!rep.witness || v > rep.worst_violation) {
                rep.worst_violation = v;
                rep.witness = w;
            }
        } else if (rep.convex && v > rep.worst_violation) {
            rep.worst_violation = v;
        }
    };
    for (std::size_t axis = 0; axis < d; ++axis) {
        const auto& a = grid.axis(axis);
        const std::size_t n = a.size();
        const std::size_t stride = grid.stride(axis);
        const std::size_t lines = grid.size() / n;
        for (std::size_t line = 0; line < lines; ++line) {
            const std::size_t lo_part = line % stride;
            const std::size_t hi_part = line / stride;
            const std::size_t start = hi_part * stride * n + lo_part;
            auto at = [&](std::size_t i) { return start + i * stride; };
            std::size_t first = n;
            std::size_t last = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (std::isfinite(values[at(i)])) {
                    first = std::min(first, i);
                    last = i;
                }
            if (first == n)
                continue;
            for (std::size_t i = first; i <= last; ++i)
                if (std::isinf(values[at(i)]))
                    record(kInf, true, {at(first), at(i), at(last)});
            for (std::size_t i = first + 1; i + 1 <= last; ++i) {
                const double l = values[at(i - 1)];
                const double m = values[at(i)];
                const double r = values[at(i + 1)];
                if (std::isinf(l) || std::isinf(m) || std::isinf(r))
                    continue;
                const double w = (a[i + 1] - a[i]) / (a[i + 1] - a[i - 1]);
                const double v = m - (w * l + (1.0 - w) * r);
                const double scale = tol * (1.0 + std::abs(l) + std::abs(m) + std::abs(r));
                record(v, v > scale, {at(i - 1), at(i), at(i + 1)});
            }
        }
    }
    return rep;
}

ConvexityReport is_convex_on_grid(const ConvexFunction& sampled_f, double tol)
{
    const auto& s = sampled_f.sampled();
    return is_convex_on_grid(s.grid, s.values, tol);
}

std::string to_csv(const Grid& grid, std::span<const double> values)
{
    if (values.size() != grid.size())
        throw std::invalid_argument("to_csv: one value per node required");
    std::ostringstream os;
    for (std::size_t k = 0; k < grid.dim(); ++k)
        os << 'x' << (k + 1) << ',';
    os << "value\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.unflatten(i);
        for (std::size_t k = 0; k < grid.dim(); ++k)
            os << fmt_double(grid.axis(k)[idx[k]]) << ',';
        os << fmt_double(values[i]) << '\n';
    }
    return os.str();
}

}  // namespace bipot
