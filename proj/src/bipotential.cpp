#include "bipot/bipotential.hpp"

#include "bipot/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bipot
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += a[k] * b[k];
    return s;
}

double product_term(double p, double q)
{
    if (std::isinf(p) || std::isinf(q))
        return inf;
    return p * q;
}

// l a + (1 - l) b with 0 (+inf) = 0.
double mix(double l, double a, double b)
{
    double s = 0.0;
    if (l > 0.0)
        s += l * a;
    if (l < 1.0)
        s += (1.0 - l) * b;
    return s;
}

void require_dim(const ConvexFunction& f, std::size_t dim, const char* what)
{
    if (f.dim() != dim)
        throw std::invalid_argument(std::string("bipotential: dimension mismatch in ") + what);
}

}  // namespace

BipotentialTerm BipotentialTerm::in_x(ConvexFunction f)
{
    BipotentialTerm t;
    t.kind = Kind::InX;
    t.fx = std::move(f);
    return t;
}

BipotentialTerm BipotentialTerm::in_y(ConvexFunction g)
{
    BipotentialTerm t;
    t.kind = Kind::InY;
    t.fy = std::move(g);
    return t;
}

BipotentialTerm BipotentialTerm::pairing(double coef)
{
    BipotentialTerm t;
    t.kind = Kind::Pairing;
    t.coef = coef;
    return t;
}

BipotentialTerm BipotentialTerm::product(ConvexFunction f, ConvexFunction g)
{
    BipotentialTerm t;
    t.kind = Kind::Product;
    t.fx = std::move(f);
    t.fy = std::move(g);
    return t;
}

BipotentialSpec::BipotentialSpec(std::size_t dx, std::size_t dy, Variant v)
    : dim_x_(dx), dim_y_(dy), value_(std::make_shared<const Variant>(std::move(v)))
{
}

BipotentialSpec BipotentialSpec::separable(ConvexFunction phi)
{
    auto star = closed_form_conjugate(phi);
    if (!star)
        throw std::invalid_argument("bipotential: no closed-form conjugate for " + describe(phi));
    const std::size_t d = phi.dim();
    return {d, d, spec::Separable{std::move(phi), std::move(*star), "table"}};
}

BipotentialSpec BipotentialSpec::separable(ConvexFunction phi, ConvexFunction phi_star)
{
    require_dim(phi_star, phi.dim(), "separable");
    const std::size_t d = phi.dim();
    return {d, d, spec::Separable{std::move(phi), std::move(phi_star), "explicit"}};
}

BipotentialSpec BipotentialSpec::separable_numeric(ConvexFunction phi, const Grid& primal, const Grid& dual)
{
    auto star = fenchel_conjugate(phi, primal, dual);
    const std::size_t d = phi.dim();
    return {d, d, spec::Separable{std::move(phi), std::move(star), "numeric"}};
}

BipotentialSpec BipotentialSpec::max_of_two(BipotentialSpec b1, BipotentialSpec b2)
{
    if (b1.dim_x() != b2.dim_x() || b1.dim_y() != b2.dim_y())
        throw std::invalid_argument("bipotential: dimension mismatch in max_of_two");
    const std::size_t dx = b1.dim_x();
    const std::size_t dy = b1.dim_y();
    return {dx, dy, spec::MaxOfTwo{std::make_shared<const BipotentialSpec>(std::move(b1)),
                                   std::make_shared<const BipotentialSpec>(std::move(b2))}};
}

BipotentialSpec BipotentialSpec::closed_form(std::size_t dim_x, std::size_t dim_y, std::vector<BipotentialTerm> terms)
{
    if (terms.empty())
        throw std::invalid_argument("bipotential: closed form needs at least one term");
    for (const auto& t : terms) {
        switch (t.kind) {
        case BipotentialTerm::Kind::InX:
            if (!t.fx)
                throw std::invalid_argument("bipotential: x term without function");
            require_dim(*t.fx, dim_x, "x term");
            break;
        case BipotentialTerm::Kind::InY:
            if (!t.fy)
                throw std::invalid_argument("bipotential: y term without function");
            require_dim(*t.fy, dim_y, "y term");
            break;
        case BipotentialTerm::Kind::Pairing:
            if (dim_x != dim_y)
                throw std::invalid_argument("bipotential: pairing needs equal dimensions");
            if (!std::isfinite(t.coef))
                throw std::invalid_argument("bipotential: non-finite pairing coefficient");
            break;
        case BipotentialTerm::Kind::Product:
            if (!t.fx || !t.fy)
                throw std::invalid_argument("bipotential: product term needs two functions");
            require_dim(*t.fx, dim_x, "product term");
            require_dim(*t.fy, dim_y, "product term");
            break;
        }
    }
    return {dim_x, dim_y, spec::ClosedForm{std::move(terms)}};
}

BipotentialSpec BipotentialSpec::cover_inf(std::vector<BipotentialSpec> members)
{
    if (members.empty())
        throw std::invalid_argument("bipotential: empty family");
    const std::size_t dx = members.front().dim_x();
    const std::size_t dy = members.front().dim_y();
    for (const auto& m : members)
        if (m.dim_x() != dx || m.dim_y() != dy)
            throw std::invalid_argument("bipotential: dimension mismatch in family");
    return {dx, dy, spec::CoverInf{std::make_shared<const std::vector<BipotentialSpec>>(std::move(members))}};
}

std::string BipotentialSpec::kind_name() const
{
    return std::visit(overloaded{[](const spec::Separable&) { return std::string("separable"); },
                                 [](const spec::MaxOfTwo&) { return std::string("max_of_two"); },
                                 [](const spec::ClosedForm&) { return std::string("closed_form"); },
                                 [](const spec::CoverInf&) { return std::string("cover_inf"); }},
                      *value_);
}

bool BipotentialSpec::has_sampled_part() const
{
    return std::visit(overloaded{[](const spec::Separable& s) { return s.phi.has_sampled_leaf() || s.phi_star.has_sampled_leaf(); },
                                 [](const spec::MaxOfTwo& m) { return m.b1->has_sampled_part() || m.b2->has_sampled_part(); },
                                 [](const spec::ClosedForm& c) {
                                     for (const auto& t : c.terms)
                                         if ((t.fx && t.fx->has_sampled_leaf()) || (t.fy && t.fy->has_sampled_leaf()))
                                             return true;
                                     return false;
                                 },
                                 [](const spec::CoverInf& c) {
                                     for (const auto& m : *c.members)
                                         if (m.has_sampled_part())
                                             return true;
                                     return false;
                                 }},
                      *value_);
}

double BipotentialSpec::eval_raw(std::span<const double> x, std::span<const double> y) const
{
    if (x.size() != dim_x_ || y.size() != dim_y_)
        throw std::invalid_argument("bipotential: argument dimension mismatch");
    return std::visit(overloaded{[&](const spec::Separable& s) { return s.phi.eval_raw(x) + s.phi_star.eval_raw(y); },
                                 [&](const spec::MaxOfTwo& m) { return std::max(m.b1->eval_raw(x, y), m.b2->eval_raw(x, y)); },
                                 [&](const spec::ClosedForm& c) {
                                     double v = 0.0;
                                     for (const auto& t : c.terms) {
                                         switch (t.kind) {
                                         case BipotentialTerm::Kind::InX: v += t.fx->eval_raw(x); break;
                                         case BipotentialTerm::Kind::InY: v += t.fy->eval_raw(y); break;
                                         case BipotentialTerm::Kind::Pairing: v += t.coef * dot(x, y); break;
                                         case BipotentialTerm::Kind::Product:
                                             v += product_term(t.fx->eval_raw(x), t.fy->eval_raw(y));
                                             break;
                                         }
                                         if (std::isinf(v))
                                             return inf;
                                     }
                                     return v;
                                 },
                                 [&](const spec::CoverInf& c) {
                                     double v = inf;
                                     for (const auto& m : *c.members)
                                         v = std::min(v, m.eval_raw(x, y));
                                     return v;
                                 }},
                      *value_);
}

ExtReal BipotentialSpec::operator()(const Vector& x, const Vector& y) const
{
    return {eval_raw(x.components(), y.components())};
}

ExtReal eval_bipotential(const BipotentialSpec& b, const Vector& x, const Vector& y)
{
    return b(x, y);
}

// ---------------------------------------------------------------------------

struct PairTable::Node
{
    enum class Kind
    {
        Sum,
        Max,
        Min,
    };
    Kind kind = Kind::Sum;
    std::vector<double> a;  // x part, per x node
    std::vector<double> c;  // y part, per y node
    double coef = 0.0;
    std::vector<std::pair<std::vector<double>, std::vector<double>>> products;
    std::vector<Node> kids;
};

namespace
{

using TableNode = PairTable::Node;

void add_into(std::vector<double>& acc, const std::vector<double>& v)
{
    if (acc.empty()) {
        acc = v;
        return;
    }
    for (std::size_t k = 0; k < acc.size(); ++k)
        acc[k] += v[k];
}

TableNode compile(const BipotentialSpec& b, const Grid& gx, const Grid& gy)
{
    TableNode n;
    std::visit(overloaded{[&](const spec::Separable& s) {
                              n.a = sample_values(s.phi, gx);
                              n.c = sample_values(s.phi_star, gy);
                          },
                          [&](const spec::MaxOfTwo& m) {
                              n.kind = TableNode::Kind::Max;
                              n.kids.push_back(compile(*m.b1, gx, gy));
                              n.kids.push_back(compile(*m.b2, gx, gy));
                          },
                          [&](const spec::ClosedForm& c) {
                              for (const auto& t : c.terms) {
                                  switch (t.kind) {
                                  case BipotentialTerm::Kind::InX: add_into(n.a, sample_values(*t.fx, gx)); break;
                                  case BipotentialTerm::Kind::InY: add_into(n.c, sample_values(*t.fy, gy)); break;
                                  case BipotentialTerm::Kind::Pairing: n.coef += t.coef; break;
                                  case BipotentialTerm::Kind::Product:
                                      n.products.emplace_back(sample_values(*t.fx, gx), sample_values(*t.fy, gy));
                                      break;
                                  }
                              }
                          },
                          [&](const spec::CoverInf& c) {
                              n.kind = TableNode::Kind::Min;
                              for (const auto& m : *c.members)
                                  n.kids.push_back(compile(m, gx, gy));
                          }},
               b.value());
    return n;
}

double eval_node(const TableNode& n, std::size_t i, std::size_t j, double pair)
{
    switch (n.kind) {
    case TableNode::Kind::Max: {
        double v = -inf;
        for (const auto& k : n.kids) {
            v = std::max(v, eval_node(k, i, j, pair));
            if (std::isinf(v) && v > 0)
                return v;
        }
        return v;
    }
    case TableNode::Kind::Min: {
        double v = inf;
        for (const auto& k : n.kids)
            v = std::min(v, eval_node(k, i, j, pair));
        return v;
    }
    case TableNode::Kind::Sum: break;
    }
    double v = 0.0;
    if (!n.a.empty())
        v += n.a[i];
    if (!n.c.empty())
        v += n.c[j];
    if (std::isinf(v))
        return inf;
    if (n.coef != 0.0)
        v += n.coef * pair;
    for (const auto& [p, q] : n.products) {
        v += product_term(p[i], q[j]);
        if (std::isinf(v))
            return inf;
    }
    return v;
}

}  // namespace

PairTable::PairTable(const BipotentialSpec& b, const Grid& grid_x, const Grid& grid_y) : gx_(grid_x), gy_(grid_y)
{
    if (gx_.dim() != b.dim_x() || gy_.dim() != b.dim_y())
        throw std::invalid_argument("pair table: grid dimension mismatch");
    if (gx_.dim() != gy_.dim())
        throw std::invalid_argument("pair table: X and Y must have the same dimension");
    const std::size_t d = gx_.dim();
    xs_.resize(gx_.size() * d);
    ys_.resize(gy_.size() * d);
    for (std::size_t i = 0; i < gx_.size(); ++i) {
        const auto v = gx_.node(i);
        std::copy(v.components().begin(), v.components().end(), xs_.begin() + static_cast<std::ptrdiff_t>(i * d));
    }
    for (std::size_t j = 0; j < gy_.size(); ++j) {
        const auto v = gy_.node(j);
        std::copy(v.components().begin(), v.components().end(), ys_.begin() + static_cast<std::ptrdiff_t>(j * d));
    }
    root_ = std::make_shared<const Node>(compile(b, gx_, gy_));
}

double PairTable::pairing(std::size_t i, std::size_t j) const
{
    const std::size_t d = gx_.dim();
    return dot({xs_.data() + i * d, d}, {ys_.data() + j * d, d});
}

double PairTable::b(std::size_t i, std::size_t j) const
{
    return eval_node(*root_, i, j, pairing(i, j));
}

double PairTable::gap(std::size_t i, std::size_t j) const
{
    const double p = pairing(i, j);
    const double v = eval_node(*root_, i, j, p);
    return std::isinf(v) ? inf : v - p;
}

// ---------------------------------------------------------------------------

namespace
{

std::vector<bool> critical_mask(const PairTable& t, double tol)
{
    const std::size_t nx = t.grid_x().size();
    const std::size_t ny = t.grid_y().size();
    std::vector<bool> mask(nx * ny, false);
    std::vector<char> tmp(nx * ny, 0);
    parallel_for(nx, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t j = 0; j < ny; ++j) {
                const double g = t.gap(i, j);
                tmp[i * ny + j] = std::isfinite(g) && std::abs(g) <= pair_tol(tol, t.pairing(i, j)) ? 1 : 0;
            }
    });
    for (std::size_t k = 0; k < tmp.size(); ++k)
        mask[k] = tmp[k] != 0;
    return mask;
}

}  // namespace

CriticalSetReport critical_set(const BipotentialSpec& b, const Grid& grid_x, const Grid& grid_y, double tol)
{
    const PairTable t(b, grid_x, grid_y);
    const auto mask = critical_mask(t, tol);
    const std::size_t ny = grid_y.size();
    CriticalSetReport r;
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k])
            r.nodes.emplace_back(k / ny, k % ny);
    if (const auto* m = std::get_if<spec::MaxOfTwo>(&b.value())) {
        const auto m1 = critical_mask(PairTable(*m->b1, grid_x, grid_y), tol);
        const auto m2 = critical_mask(PairTable(*m->b2, grid_x, grid_y), tol);
        bool same = true;
        for (std::size_t k = 0; k < mask.size() && same; ++k)
            same = mask[k] == (m1[k] && m2[k]);
        r.intersection_identity = same;
    }
    return r;
}

std::vector<std::pair<Vector, Vector>> critical_points(const CriticalSetReport& r, const Grid& grid_x, const Grid& grid_y)
{
    std::vector<std::pair<Vector, Vector>> out;
    out.reserve(r.nodes.size());
    for (const auto& [i, j] : r.nodes)
        out.emplace_back(grid_x.node(i), grid_y.node(j));
    return out;
}

namespace
{

struct SliceStats
{
    double min = inf;
    bool boundary_plateau = false;
    ConvexityReport convexity;
};

// Slices with one argument fixed. along_x: for each y node, the x nodes vary.
std::vector<SliceStats> slice_stats(const PairTable& t, bool along_x, double tol)
{
    const Grid& fixed = along_x ? t.grid_y() : t.grid_x();
    const Grid& free = along_x ? t.grid_x() : t.grid_y();
    std::vector<SliceStats> out(fixed.size());
    parallel_for(fixed.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> vals(free.size());
        std::vector<double> gaps(free.size());
        std::vector<double> taus(free.size());
        for (std::size_t s = begin; s < end; ++s) {
            auto& st = out[s];
            for (std::size_t k = 0; k < free.size(); ++k) {
                const std::size_t i = along_x ? k : s;
                const std::size_t j = along_x ? s : k;
                const double p = t.pairing(i, j);
                vals[k] = t.b(i, j);
                gaps[k] = std::isinf(vals[k]) ? inf : vals[k] - p;
                taus[k] = pair_tol(tol, p);
                st.min = std::min(st.min, gaps[k]);
            }
            st.convexity = is_convex_on_grid(free, vals, tol);
            if (std::isfinite(st.min))
                for (std::size_t k = 0; k < free.size(); ++k)
                    if (gaps[k] <= st.min + taus[k] && free.on_boundary(k)) {
                        st.boundary_plateau = true;
                        break;
                    }
        }
    });
    return out;
}

void merge_convexity(ConvexityReport& acc, std::optional<std::size_t>& slice, const SliceStats& s, std::size_t idx)
{
    if (!s.convexity.convex)
        acc.convex = false;
    if (s.convexity.worst_violation > acc.worst_violation) {
        acc.worst_violation = s.convexity.worst_violation;
        acc.witness = s.convexity.witness;
        slice = idx;
    }
}

struct RowResult
{
    double gap_min = inf;
    std::size_t gap_arg = 0;
    bool gap_ok = true;
    std::size_t failures = 0;
    std::vector<EquivalenceFailure> first_failures;
    std::size_t inconclusive = 0;
    std::size_t snap = 0;
    std::size_t critical = 0;
    std::vector<std::size_t> first_critical;
};

}  // namespace

AxiomReport check_axioms(const BipotentialSpec& b, const Grid& grid_x, const Grid& grid_y, double tol)
{
    const PairTable t(b, grid_x, grid_y);
    const std::size_t nx = grid_x.size();
    const std::size_t ny = grid_y.size();
    const auto by_y = slice_stats(t, true, tol);
    const auto by_x = slice_stats(t, false, tol);

    AxiomReport rep;
    for (std::size_t j = 0; j < ny; ++j)
        merge_convexity(rep.convex_in_x, rep.convex_x_witness_slice, by_y[j], j);
    for (std::size_t i = 0; i < nx; ++i)
        merge_convexity(rep.convex_in_y, rep.convex_y_witness_slice, by_x[i], i);

    std::vector<double> modulus(nx);
    for (std::size_t i = 0; i < nx; ++i)
        modulus[i] = grid_modulus(grid_x, grid_y, grid_x.node(i));

    constexpr std::size_t keep_failures = 100;
    constexpr std::size_t keep_critical = 1000;
    std::vector<RowResult> rows(nx);
    parallel_for(nx, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto& row = rows[i];
            for (std::size_t j = 0; j < ny; ++j) {
                const double p = t.pairing(i, j);
                const double g = t.gap(i, j);
                const double tau = pair_tol(tol, p);
                if (g < row.gap_min) {
                    row.gap_min = g;
                    row.gap_arg = j;
                }
                if (g < -tau)
                    row.gap_ok = false;
                const bool fin = std::isfinite(g);
                const bool c = fin && std::abs(g) <= tau;
                const bool a = fin && g <= by_y[j].min + tau;
                const bool bb = fin && g <= by_x[i].min + tau;
                const double snap = modulus[i];
                // A minimizer with a positive gap only counts against (c) when the
                // slice minimum clears tolerance plus grid snap and is not a boundary plateau.
                const bool a_snap = a && !c && by_y[j].min <= tau + snap;
                const bool b_snap = bb && !c && by_x[i].min <= tau + snap;
                const bool a_bnd = a && !c && !a_snap && by_y[j].boundary_plateau;
                const bool b_bnd = bb && !c && !b_snap && by_x[i].boundary_plateau;
                const bool a_unknown = a_snap || a_bnd;
                const bool b_unknown = b_snap || b_bnd;
                const bool agree = (a_unknown || a == c) && (b_unknown || bb == c);
                if (!agree) {
                    if (row.first_failures.size() < keep_failures)
                        row.first_failures.push_back({i, j, a, bb, c});
                    ++row.failures;
                } else if (a_bnd || b_bnd) {
                    ++row.inconclusive;
                } else if (a_snap || b_snap) {
                    ++row.snap;
                }
                if (c) {
                    if (row.first_critical.size() < keep_critical)
                        row.first_critical.push_back(j);
                    ++row.critical;
                }
            }
        }
    });

    double gmin = inf;
    for (std::size_t i = 0; i < nx; ++i) {
        const auto& row = rows[i];
        if (row.gap_min < gmin) {
            gmin = row.gap_min;
            rep.fenchel_gap_witness = std::make_pair(i, row.gap_arg);
        }
        rep.gap_ok = rep.gap_ok && row.gap_ok;
        rep.equivalence_failure_count += row.failures;
        for (const auto& f : row.first_failures)
            if (rep.equivalence_failures.size() < keep_failures)
                rep.equivalence_failures.push_back(f);
        rep.boundary_inconclusive += row.inconclusive;
        rep.grid_snap_inconclusive += row.snap;
        rep.critical_count += row.critical;
        for (std::size_t j : row.first_critical)
            if (rep.critical_points.size() < keep_critical)
                rep.critical_points.emplace_back(i, j);
    }
    rep.fenchel_gap_min = ExtReal(gmin);
    return rep;
}

// ---------------------------------------------------------------------------

namespace
{

StrongSide strong_side(const PairTable& t, bool over_x, double tol, bool sampled, double threshold)
{
    const Grid& fixed = over_x ? t.grid_y() : t.grid_x();
    const Grid& free = over_x ? t.grid_x() : t.grid_y();
    StrongSide side;
    side.inf_values.assign(fixed.size(), inf);
    side.classes.assign(fixed.size(), SliceClass::Infinite);
    std::vector<std::size_t> argmins(fixed.size(), 0);
    std::vector<char> by_threshold(fixed.size(), 0);
    parallel_for(fixed.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            double best = inf;
            std::size_t arg = 0;
            for (std::size_t k = 0; k < free.size(); ++k) {
                const double g = over_x ? t.gap(k, s) : t.gap(s, k);
                if (g < best) {
                    best = g;
                    arg = k;
                }
            }
            side.inf_values[s] = best;
            argmins[s] = arg;
            if (std::isinf(best))
                continue;
            const double p = over_x ? t.pairing(arg, s) : t.pairing(s, arg);
            if (std::abs(best) <= pair_tol(tol, p))
                side.classes[s] = SliceClass::Zero;
            else if (sampled && best > threshold)
                by_threshold[s] = 1;
            else
                side.classes[s] = SliceClass::Violation;
        }
    });
    for (std::size_t s = 0; s < fixed.size(); ++s) {
        switch (side.classes[s]) {
        case SliceClass::Zero: ++side.zero; break;
        case SliceClass::Infinite:
            ++side.infinite;
            side.threshold_infinite += by_threshold[s] != 0 ? 1 : 0;
            break;
        case SliceClass::Violation:
            ++side.violations;
            if (side.witnesses.size() < 100)
                side.witnesses.push_back({s, argmins[s], side.inf_values[s]});
            break;
        }
    }
    side.holds = side.violations == 0;
    return side;
}

}  // namespace

StrongReport check_strong(const BipotentialSpec& b, const Grid& grid_x, const Grid& grid_y, double tol, double inf_threshold)
{
    const PairTable t(b, grid_x, grid_y);
    const bool sampled = b.has_sampled_part();
    StrongReport r;
    r.b1s = strong_side(t, true, tol, sampled, inf_threshold);
    r.b2s = strong_side(t, false, tol, sampled, inf_threshold);
    r.used_threshold = r.b1s.threshold_infinite + r.b2s.threshold_infinite > 0;
    return r;
}

std::vector<double> lambda_grid(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("lambda grid needs at least two points");
    return Grid::uniform_axis(0.0, 1.0, n);
}

// ---------------------------------------------------------------------------

namespace
{

// Conjugate of tabulated values plus a flag per dual node telling whether the
// maximum is reached only on the primal grid boundary.
struct BoxedConjugate
{
    std::vector<double> values;
    std::vector<char> boundary_only;
};

BoxedConjugate boxed_conjugate(const Grid& primal, const std::vector<double>& vals, const Grid& dual)
{
    BoxedConjugate out;
    out.values = conjugate_values(primal, vals, dual).values;
    out.boundary_only.assign(dual.size(), 0);
    std::vector<double> inner = vals;
    for (std::size_t k = 0; k < primal.size(); ++k)
        if (primal.on_boundary(k))
            inner[k] = inf;
    std::vector<double> inner_conj;
    try {
        inner_conj = conjugate_values(primal, inner, dual).values;
    } catch (const EmptyDomainError&) {
        inner_conj.assign(dual.size(), -inf);
    }
    for (std::size_t j = 0; j < dual.size(); ++j) {
        const double v = out.values[j];
        if (inner_conj[j] < v - 1e-12 * (1.0 + std::abs(v)))
            out.boundary_only[j] = 1;
    }
    return out;
}

// phi* on the dual grid: closed form when available, else tabulated over the primal grid.
BoxedConjugate conjugate_on(const ConvexFunction& phi, const Grid& primal, const Grid& dual)
{
    if (auto star = closed_form_conjugate(phi)) {
        BoxedConjugate out;
        out.values = sample_values(*star, dual);
        out.boundary_only.assign(dual.size(), 0);
        return out;
    }
    return boxed_conjugate(primal, sample_values(phi, primal), dual);
}

ConjugateIdentityResult identity_sweep(const std::vector<double>& lambdas,
                                       const Grid& primal,
                                       const std::vector<double>& f1,
                                       const std::vector<double>& f2,
                                       const Grid& dual,
                                       const BoxedConjugate& s1,
                                       const BoxedConjugate& s2,
                                       double tol)
{
    ConjugateIdentityResult r;
    std::vector<double> comb(primal.size());
    for (double l : lambdas) {
        for (std::size_t k = 0; k < primal.size(); ++k)
            comb[k] = mix(l, f1[k], f2[k]);
        BoxedConjugate lhs;
        try {
            lhs = boxed_conjugate(primal, comb, dual);
        } catch (const EmptyDomainError&) {
            continue;
        }
        for (std::size_t j = 0; j < dual.size(); ++j) {
            if (std::isinf(s1.values[j]) || std::isinf(s2.values[j]))
                continue;
            if (lhs.boundary_only[j] || s1.boundary_only[j] || s2.boundary_only[j]) {
                ++r.excluded_boundary;
                continue;
            }
            ++r.checked;
            const double rhs = mix(l, s1.values[j], s2.values[j]);
            const double diff = std::abs(lhs.values[j] - rhs);
            if (diff > r.worst_diff) {
                r.worst_diff = diff;
                r.witness = std::make_pair(l, j);
                r.witness_lhs = lhs.values[j];
                r.witness_rhs = rhs;
            }
        }
    }
    r.holds = r.worst_diff <= tol;
    return r;
}

BipotentialSpec separable_for(const ConvexFunction& phi, const Grid& gx, const Grid& gy)
{
    if (closed_form_conjugate(phi))
        return BipotentialSpec::separable(phi);
    return BipotentialSpec::separable_numeric(phi, gx, gy);
}

}  // namespace

Theorem31Report check_theorem31(const ConvexFunction& phi1,
                                const ConvexFunction& phi2,
                                const Grid& grid_x,
                                const Grid& grid_y,
                                const Theorem31Options& options)
{
    if (phi1.dim() != phi2.dim() || grid_x.dim() != phi1.dim() || grid_y.dim() != phi1.dim())
        throw std::invalid_argument("theorem check: dimension mismatch");
    const auto f1 = sample_values(phi1, grid_x);
    const auto f2 = sample_values(phi2, grid_x);
    const auto s1 = conjugate_on(phi1, grid_x, grid_y);
    const auto s2 = conjugate_on(phi2, grid_x, grid_y);

    Theorem31Report r;
    r.ii_prime = identity_sweep(options.lambdas, grid_x, f1, f2, grid_y, s1, s2, options.tol);

    const BoxedConjugate p1{f1, std::vector<char>(f1.size(), 0)};
    const BoxedConjugate p2{f2, std::vector<char>(f2.size(), 0)};
    r.ii_second = identity_sweep(options.lambdas, grid_y, s1.values, s2.values, grid_x, p1, p2, options.tol);

    const Grid& sx = options.strong_grid_x ? *options.strong_grid_x : grid_x;
    const Grid& sy = options.strong_grid_y ? *options.strong_grid_y : grid_y;
    const auto b = BipotentialSpec::max_of_two(separable_for(phi1, grid_x, sy), separable_for(phi2, grid_x, sy));
    r.strong_report = check_strong(b, sx, sy, options.strong_tol);
    r.strong = r.strong_report.strong();
    r.consistent = r.strong == (r.ii_prime.holds && r.ii_second.holds);
    return r;
}

namespace
{

double conjugate_at(const ConvexFunction& phi, const Grid& grid, const Vector& y)
{
    if (auto star = closed_form_conjugate(phi))
        return star->eval_raw(y.components());
    double best = -inf;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto z = grid.node(k);
        const double v = phi.eval_raw(z.components());
        if (std::isfinite(v))
            best = std::max(best, pairing(z, y) - v);
    }
    return best;
}

}  // namespace

MinimaxResult minimax_gap_identity(const ConvexFunction& phi1,
                                   const ConvexFunction& phi2,
                                   const Vector& y,
                                   const std::vector<double>& lambdas,
                                   const Grid& grid_x)
{
    if (lambdas.empty())
        throw std::invalid_argument("minimax: empty lambda grid");
    const double c1 = conjugate_at(phi1, grid_x, y);
    const double c2 = conjugate_at(phi2, grid_x, y);
    if (!std::isfinite(c1) || !std::isfinite(c2))
        throw std::invalid_argument("minimax: y outside the conjugate domains");

    const auto f1 = sample_values(phi1, grid_x);
    const auto f2 = sample_values(phi2, grid_x);
    std::vector<double> pair(grid_x.size());
    for (std::size_t k = 0; k < grid_x.size(); ++k)
        pair[k] = pairing(grid_x.node(k), y);

    MinimaxResult r;
    r.lhs = -inf;
    for (std::size_t k = 0; k < grid_x.size(); ++k)
        if (std::isfinite(f1[k]) && std::isfinite(f2[k]))
            r.lhs = std::max(r.lhs, pair[k] - std::max(f1[k] + c1, f2[k] + c2));
    if (!std::isfinite(r.lhs))
        throw std::invalid_argument("minimax: domains do not meet on the grid");

    r.rhs = inf;
    for (double l : lambdas) {
        double sup = -inf;
        for (std::size_t k = 0; k < grid_x.size(); ++k) {
            const double v = mix(l, f1[k], f2[k]);
            if (std::isfinite(v))
                sup = std::max(sup, pair[k] - v);
        }
        const double val = sup - mix(l, c1, c2);
        if (val < r.rhs) {
            r.rhs = val;
            r.best_lambda = l;
        }
    }
    r.gap = std::abs(r.lhs - r.rhs);
    return r;
}

double hausdorff(const Interval1D& a, const Interval1D& b)
{
    if (a.empty && b.empty)
        return 0.0;
    if (a.empty || b.empty)
        return inf;
    auto end_dist = [](double u, double v) { return u == v ? 0.0 : std::abs(u - v); };
    return std::max(end_dist(a.lo, b.lo), end_dist(a.hi, b.hi));
}

Corollary33Result check_corollary33(const ConvexFunction& phi1,
                                    const ConvexFunction& phi2,
                                    double lambda,
                                    const Vector& x,
                                    double tol,
                                    const Grid& grid,
                                    const StrongReport& hypothesis)
{
    if (!hypothesis.strong())
        throw CorollaryHypothesisError();
    if (phi1.dim() != 1 || phi2.dim() != 1 || grid.dim() != 1 || x.size() != 1)
        throw std::invalid_argument("corollary check is one-dimensional");
    const auto f1 = scaled_function(lambda, phi1, 1);
    const auto f2 = scaled_function(lambda, phi2, 2);
    const auto conv = inf_convolution(f1, f2, grid);

    Corollary33Result r;
    const auto lhs = subdifferential(conv, x);
    r.lhs = {lhs.lo, lhs.hi, lhs.empty};
    const auto d1 = subdifferential(phi1, x);
    const auto d2 = subdifferential(phi2, x);
    r.rhs.lo = std::max(d1.lo, d2.lo);
    r.rhs.hi = std::min(d1.hi, d2.hi);
    r.rhs.empty = d1.empty || d2.empty || r.rhs.lo > r.rhs.hi + tol;
    if (r.lhs.empty && r.rhs.empty)
        r.distance = 0.0;
    else
        r.distance = hausdorff(r.lhs, r.rhs);
    r.equal = r.distance <= tol;
    return r;
}

}  // namespace bipot
