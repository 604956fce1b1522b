#include "bipot/convex_function.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bipot
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double euclid(std::span<const double> v)
{
    switch (v.size()) {
    case 0:
        return 0.0;
    case 1:
        return std::abs(v[0]);
    case 2:
        return std::hypot(v[0], v[1]);
    default:
        return std::hypot(v[0], v[1], v[2]);
    }
}

struct Gathered
{
    std::array<double, 3> data{};
    std::size_t n = 0;
    [[nodiscard]] std::span<const double> span() const { return {data.data(), n}; }
};

Gathered gather(std::span<const double> x, const std::vector<std::size_t>& coords)
{
    Gathered g;
    g.n = coords.size();
    for (std::size_t i = 0; i < coords.size(); ++i)
        g.data[i] = x[coords[i]];
    return g;
}

double interpolate(const node::Sampled& s, std::span<const double> x)
{
    const Grid& grid = s.grid;
    const std::size_t d = grid.dim();
    std::array<std::size_t, 3> base{};
    std::array<double, 3> frac{};
    for (std::size_t k = 0; k < d; ++k) {
        const auto& a = grid.axis(k);
        if (x[k] < a.front() || x[k] > a.back())
            throw std::domain_error("sampled function queried outside its grid hull");
        auto it = std::upper_bound(a.begin(), a.end(), x[k]);
        std::size_t hi = static_cast<std::size_t>(it - a.begin());
        if (hi == a.size())
            hi = a.size() - 1;
        const std::size_t lo = hi - 1;
        base[k] = lo;
        frac[k] = (x[k] - a[lo]) / (a[hi] - a[lo]);
    }
    double acc = 0.0;
    const std::size_t corners = std::size_t{1} << d;
    for (std::size_t c = 0; c < corners; ++c) {
        double w = 1.0;
        std::array<std::size_t, 3> idx{};
        for (std::size_t k = 0; k < d; ++k) {
            const bool up = (c >> k) & 1U;
            w *= up ? frac[k] : 1.0 - frac[k];
            idx[k] = base[k] + (up ? 1 : 0);
        }
        if (w == 0.0)
            continue;
        const double v = s.values[grid.flatten(idx)];
        if (std::isinf(v))
            return kInf;
        acc += w * v;
    }
    return acc;
}

double eval_node(const FunctionNode& n, std::span<const double> x);

double eval_fn(const ConvexFunction& f, std::span<const double> x)
{
    return eval_node(f.node(), x);
}

double eval_node(const FunctionNode& n, std::span<const double> x)
{
    return std::visit(
        overloaded{
            [&](const node::Affine& a) {
                double s = a.offset;
                for (std::size_t i = 0; i < a.coords.size(); ++i)
                    s += a.slope[i] * x[a.coords[i]];
                return s;
            },
            [&](const node::Quadratic& q) {
                const auto v = gather(x, q.coords);
                double s = 0.0;
                for (std::size_t i = 0; i < v.n; ++i)
                    for (std::size_t j = 0; j < v.n; ++j)
                        s += v.data[i] * q.matrix[i * v.n + j] * v.data[j];
                return 0.5 * s;
            },
            [&](const node::ScaledNorm& s) { return s.scale * euclid(gather(x, s.coords).span()); },
            [&](const node::PowerAbs& p) { return p.scale * std::pow(std::abs(x[p.coord]), p.exponent); },
            [&](const node::Exponential& e) { return e.scale * std::exp(e.rate * x[e.coord]); },
            [&](const node::Indicator& ind) {
                return set_contains(ind.set, gather(x, ind.coords).span()) ? 0.0 : kInf;
            },
            [&](const node::Sum& s) {
                double acc = 0.0;
                for (const auto& t : s.terms) {
                    const double v = eval_fn(t, x);
                    if (std::isinf(v))
                        return kInf;
                    acc += v;
                }
                return acc;
            },
            [&](const node::MaxOf& m) {
                double best = -kInf;
                for (const auto& t : m.terms) {
                    const double v = eval_fn(t, x);
                    if (std::isinf(v))
                        return kInf;
                    best = std::max(best, v);
                }
                return best;
            },
            [&](const node::Scaled& s) {
                if (s.factor == 0.0)
                    return 0.0;
                const double v = eval_fn(s.inner, x);
                return std::isinf(v) ? kInf : s.factor * v;
            },
            [&](const node::PreScaled& p) {
                std::array<double, 3> u{};
                for (std::size_t i = 0; i < x.size(); ++i)
                    u[i] = x[i] / p.lambda;
                const double v = eval_fn(p.inner, std::span<const double>(u.data(), x.size()));
                return std::isinf(v) ? kInf : p.lambda * v;
            },
            [&](const node::Sampled& s) { return interpolate(s, x); },
        },
        n.value);
}

void check_coords(std::size_t dim, const std::vector<std::size_t>& coords)
{
    if (dim == 0 || dim > Vector::max_dim)
        throw std::invalid_argument("function dimension must be 1, 2 or 3");
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] >= dim)
            throw std::invalid_argument("coordinate index out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (coords[j] == coords[i])
                throw std::invalid_argument("duplicate coordinate index");
    }
}

void check_set(const SetAtom& set, std::size_t n)
{
    std::visit(overloaded{
                   [&](const SingletonSet& s) {
                       if (s.point.size() != n)
                           throw std::invalid_argument("singleton: point size must match coordinates");
                       for (double v : s.point)
                           if (!std::isfinite(v))
                               throw std::invalid_argument("singleton: non-finite point");
                   },
                   [&](const BoxSet& b) {
                       if (b.lo.size() != n || b.hi.size() != n)
                           throw std::invalid_argument("box: bounds must match coordinates");
                       for (std::size_t i = 0; i < n; ++i)
                           if (std::isnan(b.lo[i]) || std::isnan(b.hi[i]) || b.lo[i] > b.hi[i] ||
                               b.lo[i] == kInf || b.hi[i] == -kInf)
                               throw std::invalid_argument("box: need lo <= hi");
                   },
                   [&](const CoulombConeSet& c) {
                       if (n != 3 || !(c.mu > 0))
                           throw std::invalid_argument("Coulomb cone: need 3 coordinates and mu > 0");
                   },
                   [&](const DualCoulombConeSet& c) {
                       if (n != 3 || !(c.mu > 0))
                           throw std::invalid_argument("dual Coulomb cone: need 3 coordinates and mu > 0");
                   },
                   [&](const DiscSet& d) {
                       if (!(d.radius >= 0) || !std::isfinite(d.radius) || n == 0)
                           throw std::invalid_argument("disc: need finite radius >= 0");
                   },
                   [&](const EmptySet&) {},
               },
               set);
}

ConvexFunction make(std::size_t dim, FunctionNode n)
{
    return ConvexFunction(dim, std::move(n));
}

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    for (auto i : a)
        if (std::find(b.begin(), b.end(), i) != b.end())
            return false;
    return true;
}

std::optional<ConvexFunction> conj_term(const ConvexFunction& f);

std::optional<ConvexFunction> conj_sum_disjoint(std::size_t dim, const std::vector<ConvexFunction>& terms)
{
    std::vector<std::size_t> seen;
    std::vector<ConvexFunction> parts;
    for (const auto& t : terms) {
        const auto s = support(t);
        if (!disjoint(seen, s))
            return std::nullopt;
        seen.insert(seen.end(), s.begin(), s.end());
        auto c = conj_term(t);
        if (!c)
            return std::nullopt;
        parts.push_back(std::move(*c));
    }
    if (parts.empty())
        return fn::constant(dim, 0.0);
    if (parts.size() == 1)
        return parts.front();
    return fn::sum(std::move(parts));
}

// Conjugate of v_S -> f(v) viewed as a function of y_S only (S = support(f)).
std::optional<ConvexFunction> conj_term(const ConvexFunction& f)
{
    const std::size_t dim = f.dim();
    using R = std::optional<ConvexFunction>;
    return std::visit(
        overloaded{
            [&](const node::Affine& a) -> R {
                auto c = fn::constant(dim, -a.offset);
                if (a.coords.empty())
                    return c;
                return fn::sum({fn::indicator(dim, a.coords, SingletonSet{a.slope}), c});
            },
            [&](const node::Quadratic& q) -> R {
                const auto n = static_cast<Eigen::Index>(q.coords.size());
                Eigen::MatrixXd m(n, n);
                for (Eigen::Index i = 0; i < n; ++i)
                    for (Eigen::Index j = 0; j < n; ++j)
                        m(i, j) = q.matrix[static_cast<std::size_t>(i * n + j)];
                Eigen::LLT<Eigen::MatrixXd> llt(m);
                if (llt.info() != Eigen::Success)
                    return std::nullopt;
                const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
                std::vector<double> out(static_cast<std::size_t>(n * n));
                for (Eigen::Index i = 0; i < n; ++i)
                    for (Eigen::Index j = 0; j < n; ++j)
                        out[static_cast<std::size_t>(i * n + j)] = 0.5 * (inv(i, j) + inv(j, i));
                return fn::quadratic(dim, q.coords, std::move(out));
            },
            [&](const node::ScaledNorm& s) -> R { return fn::indicator(dim, s.coords, DiscSet{s.scale}); },
            [&](const node::PowerAbs& p) -> R {
                if (p.exponent == 1.0)
                    return fn::indicator(dim, {p.coord}, BoxSet{{-p.scale}, {p.scale}});
                const double k = p.exponent;
                const double kd = k / (k - 1.0);
                const double cd = ((k - 1.0) / k) * std::pow(p.scale * k, -1.0 / (k - 1.0));
                return fn::power_abs(dim, p.coord, kd, cd);
            },
            [&](const node::Exponential&) -> R { return std::nullopt; },
            [&](const node::Indicator& ind) -> R {
                return std::visit(
                    overloaded{
                        [&](const SingletonSet& s) -> R { return fn::affine(dim, ind.coords, s.point, 0.0); },
                        [&](const BoxSet& b) -> R {
                            std::vector<ConvexFunction> parts;
                            for (std::size_t i = 0; i < ind.coords.size(); ++i) {
                                const std::size_t c = ind.coords[i];
                                const double lo = b.lo[i];
                                const double hi = b.hi[i];
                                if (std::isfinite(lo) && std::isfinite(hi))
                                    parts.push_back(fn::max_of({fn::affine(dim, {c}, {lo}), fn::affine(dim, {c}, {hi})}));
                                else if (std::isfinite(hi))
                                    parts.push_back(fn::sum({fn::affine(dim, {c}, {hi}),
                                                             fn::indicator(dim, {c}, BoxSet{{0.0}, {kInf}})}));
                                else if (std::isfinite(lo))
                                    parts.push_back(fn::sum({fn::affine(dim, {c}, {lo}),
                                                             fn::indicator(dim, {c}, BoxSet{{-kInf}, {0.0}})}));
                                else
                                    parts.push_back(fn::indicator(dim, {c}, SingletonSet{{0.0}}));
                            }
                            if (parts.size() == 1)
                                return parts.front();
                            return fn::sum(std::move(parts));
                        },
                        [&](const CoulombConeSet& c) -> R {
                            return fn::indicator(dim, ind.coords, DualCoulombConeSet{c.mu});
                        },
                        [&](const DualCoulombConeSet& c) -> R {
                            return fn::indicator(dim, ind.coords, CoulombConeSet{c.mu});
                        },
                        [&](const DiscSet& d) -> R { return fn::scaled_norm(dim, ind.coords, d.radius); },
                        [&](const EmptySet&) -> R { return std::nullopt; },
                    },
                    ind.set);
            },
            [&](const node::Sum& s) -> R { return conj_sum_disjoint(dim, s.terms); },
            [&](const node::MaxOf&) -> R { return std::nullopt; },
            [&](const node::Scaled& s) -> R {
                if (s.factor == 0.0)
                    return fn::constant(dim, 0.0);
                auto inner = conj_term(s.inner);
                if (!inner)
                    return std::nullopt;
                return fn::prescaled(s.factor, std::move(*inner));
            },
            [&](const node::PreScaled& p) -> R {
                auto inner = conj_term(p.inner);
                if (!inner)
                    return std::nullopt;
                return fn::scaled(p.lambda, std::move(*inner));
            },
            [&](const node::Sampled&) -> R { return std::nullopt; },
        },
        f.node().value);
}

void describe_into(std::ostringstream& os, const ConvexFunction& f);

void describe_coords(std::ostringstream& os, const std::vector<std::size_t>& coords)
{
    os << '[';
    for (std::size_t i = 0; i < coords.size(); ++i)
        os << (i ? "," : "") << coords[i];
    os << ']';
}

void describe_into(std::ostringstream& os, const ConvexFunction& f)
{
    std::visit(overloaded{
                   [&](const node::Affine& a) {
                       os << "affine";
                       describe_coords(os, a.coords);
                       os << "(+" << a.offset << ')';
                   },
                   [&](const node::Quadratic& q) {
                       os << "quadratic";
                       describe_coords(os, q.coords);
                   },
                   [&](const node::ScaledNorm& s) {
                       os << s.scale << "*norm";
                       describe_coords(os, s.coords);
                   },
                   [&](const node::PowerAbs& p) { os << p.scale << "*|x" << p.coord << "|^" << p.exponent; },
                   [&](const node::Exponential& e) { os << e.scale << "*exp(" << e.rate << "*x" << e.coord << ')'; },
                   [&](const node::Indicator& ind) {
                       os << "chi";
                       describe_coords(os, ind.coords);
                   },
                   [&](const node::Sum& s) {
                       os << "sum(";
                       for (std::size_t i = 0; i < s.terms.size(); ++i) {
                           if (i)
                               os << ", ";
                           describe_into(os, s.terms[i]);
                       }
                       os << ')';
                   },
                   [&](const node::MaxOf& m) {
                       os << "max(";
                       for (std::size_t i = 0; i < m.terms.size(); ++i) {
                           if (i)
                               os << ", ";
                           describe_into(os, m.terms[i]);
                       }
                       os << ')';
                   },
                   [&](const node::Scaled& s) {
                       os << s.factor << '*';
                       describe_into(os, s.inner);
                   },
                   [&](const node::PreScaled& p) {
                       os << "prescaled(" << p.lambda << ", ";
                       describe_into(os, p.inner);
                       os << ')';
                   },
                   [&](const node::Sampled& s) { os << "sampled(" << s.grid.size() << " nodes)"; },
               },
               f.node().value);
}

}  // namespace

bool set_contains(const SetAtom& set, std::span<const double> v)
{
    return std::visit(overloaded{
                          [&](const SingletonSet& s) {
                              for (std::size_t i = 0; i < v.size(); ++i)
                                  if (v[i] != s.point[i])
                                      return false;
                              return true;
                          },
                          [&](const BoxSet& b) {
                              for (std::size_t i = 0; i < v.size(); ++i)
                                  if (v[i] < b.lo[i] || v[i] > b.hi[i])
                                      return false;
                              return true;
                          },
                          [&](const CoulombConeSet& c) { return std::hypot(v[1], v[2]) <= c.mu * v[0]; },
                          [&](const DualCoulombConeSet& c) { return c.mu * std::hypot(v[1], v[2]) + v[0] <= 0.0; },
                          [&](const DiscSet& d) { return euclid(v) <= d.radius; },
                          [&](const EmptySet&) { return false; },
                      },
                      set);
}

ConvexFunction::ConvexFunction(std::size_t dim, FunctionNode node)
    : dim_(dim), node_(std::make_shared<const FunctionNode>(std::move(node)))
{
    if (dim == 0 || dim > Vector::max_dim)
        throw std::invalid_argument("ConvexFunction: dimension must be 1, 2 or 3");
}

bool ConvexFunction::is_sampled() const
{
    return std::holds_alternative<node::Sampled>(node_->value);
}

const node::Sampled& ConvexFunction::sampled() const
{
    if (!is_sampled())
        throw std::logic_error("ConvexFunction::sampled() on a closed-form function");
    return std::get<node::Sampled>(node_->value);
}

ExtReal ConvexFunction::operator()(const Vector& x) const
{
    if (x.size() != dim_)
        throw std::invalid_argument("ConvexFunction: argument dimension mismatch");
    return ExtReal(eval_raw(x.components()));
}

double ConvexFunction::eval_raw(std::span<const double> x) const
{
    return eval_node(*node_, x);
}

bool ConvexFunction::has_sampled_leaf() const
{
    return std::visit(overloaded{
                          [](const node::Sum& s) {
                              return std::any_of(s.terms.begin(), s.terms.end(),
                                                 [](const auto& t) { return t.has_sampled_leaf(); });
                          },
                          [](const node::MaxOf& s) {
                              return std::any_of(s.terms.begin(), s.terms.end(),
                                                 [](const auto& t) { return t.has_sampled_leaf(); });
                          },
                          [](const node::Scaled& s) { return s.inner.has_sampled_leaf(); },
                          [](const node::PreScaled& s) { return s.inner.has_sampled_leaf(); },
                          [](const node::Sampled&) { return true; },
                          [](const auto&) { return false; },
                      },
                      node_->value);
}

ExtReal evaluate(const ConvexFunction& f, const Vector& x)
{
    return f(x);
}

namespace fn
{

std::vector<std::size_t> all_coords(std::size_t dim)
{
    std::vector<std::size_t> c(dim);
    std::iota(c.begin(), c.end(), std::size_t{0});
    return c;
}

ConvexFunction affine(std::size_t dim, std::vector<std::size_t> coords, std::vector<double> slope, double offset)
{
    check_coords(dim, coords);
    if (slope.size() != coords.size())
        throw std::invalid_argument("affine: slope size must match coordinates");
    for (double s : slope)
        if (!std::isfinite(s))
            throw std::invalid_argument("affine: non-finite slope");
    if (!std::isfinite(offset))
        throw std::invalid_argument("affine: non-finite offset");
    return make(dim, {node::Affine{std::move(coords), std::move(slope), offset}});
}

ConvexFunction constant(std::size_t dim, double c)
{
    return affine(dim, {}, {}, c);
}

ConvexFunction quadratic(std::size_t dim, std::vector<std::size_t> coords, std::vector<double> matrix)
{
    check_coords(dim, coords);
    const std::size_t n = coords.size();
    if (n == 0 || matrix.size() != n * n)
        throw std::invalid_argument("quadratic: matrix must be |coords| x |coords|");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(matrix[i * n + j]))
                throw std::invalid_argument("quadratic: non-finite entry");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = matrix[i * n + j];
        }
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("quadratic: matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.eigenvalues().minCoeff() < -1e-12 * (1.0 + m.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("quadratic: matrix must be positive semidefinite");
    return make(dim, {node::Quadratic{std::move(coords), std::move(matrix)}});
}

ConvexFunction half_square()
{
    return quadratic(1, {0}, {1.0});
}

ConvexFunction scaled_norm(std::size_t dim, std::vector<std::size_t> coords, double scale)
{
    check_coords(dim, coords);
    if (coords.empty() || !(scale >= 0) || !std::isfinite(scale))
        throw std::invalid_argument("scaled_norm: need coordinates and finite scale >= 0");
    return make(dim, {node::ScaledNorm{std::move(coords), scale}});
}

ConvexFunction abs()
{
    return scaled_norm(1, {0}, 1.0);
}

ConvexFunction power_abs(std::size_t dim, std::size_t coord, double exponent, double scale)
{
    check_coords(dim, {coord});
    if (!(exponent >= 1.0) || !std::isfinite(exponent) || !(scale > 0) || !std::isfinite(scale))
        throw std::invalid_argument("power_abs: need exponent >= 1 and scale > 0");
    return make(dim, {node::PowerAbs{coord, exponent, scale}});
}

ConvexFunction exponential(std::size_t dim, std::size_t coord, double rate, double scale)
{
    check_coords(dim, {coord});
    if (!std::isfinite(rate) || !(scale >= 0) || !std::isfinite(scale))
        throw std::invalid_argument("exponential: need finite rate and scale >= 0");
    return make(dim, {node::Exponential{coord, rate, scale}});
}

ConvexFunction indicator(std::size_t dim, std::vector<std::size_t> coords, SetAtom set)
{
    check_coords(dim, coords);
    if (coords.empty())
        throw std::invalid_argument("indicator: needs at least one coordinate");
    check_set(set, coords.size());
    return make(dim, {node::Indicator{std::move(coords), std::move(set)}});
}

ConvexFunction sum(std::vector<ConvexFunction> terms)
{
    if (terms.empty())
        throw std::invalid_argument("sum: needs at least one term");
    const std::size_t dim = terms.front().dim();
    for (const auto& t : terms)
        if (t.dim() != dim)
            throw std::invalid_argument("sum: dimension mismatch");
    return make(dim, {node::Sum{std::move(terms)}});
}

ConvexFunction max_of(std::vector<ConvexFunction> terms)
{
    if (terms.empty())
        throw std::invalid_argument("max_of: needs at least one term");
    const std::size_t dim = terms.front().dim();
    for (const auto& t : terms)
        if (t.dim() != dim)
            throw std::invalid_argument("max_of: dimension mismatch");
    return make(dim, {node::MaxOf{std::move(terms)}});
}

ConvexFunction scaled(double factor, ConvexFunction f)
{
    if (!(factor >= 0) || !std::isfinite(factor))
        throw std::invalid_argument("scaled: factor must be finite and >= 0");
    const std::size_t dim = f.dim();
    return make(dim, {node::Scaled{factor, std::move(f)}});
}

ConvexFunction prescaled(double lambda, ConvexFunction f)
{
    if (!(lambda > 0) || !std::isfinite(lambda))
        throw std::invalid_argument("prescaled: lambda must be finite and > 0");
    const std::size_t dim = f.dim();
    return make(dim, {node::PreScaled{lambda, std::move(f)}});
}

ConvexFunction sampled(Grid grid, std::vector<double> values)
{
    if (grid.size() == 0 || values.size() != grid.size())
        throw std::invalid_argument("sampled: one value per grid node required");
    for (double v : values)
        if (std::isnan(v) || v == -kInf)
            throw std::invalid_argument("sampled: values must be finite or +inf");
    const std::size_t dim = grid.dim();
    return make(dim, {node::Sampled{std::move(grid), std::move(values)}});
}

}  // namespace fn

std::vector<double> sample_values(const ConvexFunction& f, const Grid& grid)
{
    if (grid.dim() != f.dim())
        throw std::invalid_argument("sample: grid dimension mismatch");
    std::vector<double> values(grid.size());
    std::array<double, 3> buf{};
    const std::size_t d = grid.dim();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.unflatten(i);
        for (std::size_t k = 0; k < d; ++k)
            buf[k] = grid.axis(k)[idx[k]];
        values[i] = f.eval_raw(std::span<const double>(buf.data(), d));
    }
    return values;
}

ConvexFunction sample(const ConvexFunction& f, const Grid& grid)
{
    return fn::sampled(grid, sample_values(f, grid));
}

std::vector<std::size_t> support(const ConvexFunction& f)
{
    std::vector<std::size_t> out;
    auto add = [&](const std::vector<std::size_t>& c) {
        for (auto i : c)
            if (std::find(out.begin(), out.end(), i) == out.end())
                out.push_back(i);
    };
    std::visit(overloaded{
                   [&](const node::Affine& a) { add(a.coords); },
                   [&](const node::Quadratic& q) { add(q.coords); },
                   [&](const node::ScaledNorm& s) { add(s.coords); },
                   [&](const node::PowerAbs& p) { add({p.coord}); },
                   [&](const node::Exponential& e) { add({e.coord}); },
                   [&](const node::Indicator& i) { add(i.coords); },
                   [&](const node::Sum& s) {
                       for (const auto& t : s.terms)
                           add(support(t));
                   },
                   [&](const node::MaxOf& s) {
                       for (const auto& t : s.terms)
                           add(support(t));
                   },
                   [&](const node::Scaled& s) {
                       if (s.factor != 0.0)
                           add(support(s.inner));
                   },
                   [&](const node::PreScaled& s) { add(support(s.inner)); },
                   [&](const node::Sampled&) { add(fn::all_coords(f.dim())); },
               },
               f.node().value);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<ConvexFunction> closed_form_conjugate(const ConvexFunction& f)
{
    auto core = conj_term(f);
    if (!core)
        return std::nullopt;
    const auto s = support(f);
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < f.dim(); ++i)
        if (std::find(s.begin(), s.end(), i) == s.end())
            rest.push_back(i);
    if (rest.empty())
        return core;
    return fn::sum({std::move(*core),
                    fn::indicator(f.dim(), rest, SingletonSet{std::vector<double>(rest.size(), 0.0)})});
}

std::string describe(const ConvexFunction& f)
{
    std::ostringstream os;
    os.precision(6);
    describe_into(os, f);
    return os.str();
}

}  // namespace bipot
