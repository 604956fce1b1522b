#include "bipot/graphs.hpp"

#include "bipot/parallel.hpp"
#include "bipot/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bipot
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(std::size_t d)
{
    if (d == 0 || d > Vector::max_dim)
        throw std::invalid_argument("GraphSample: dimensions must be 1, 2 or 3");
}

// Row-major N x N max-plus matrix.
struct MaxPlus
{
    std::size_t n = 0;
    std::vector<double> v;
    std::vector<std::uint32_t> pred;  // intermediate node of the last edge
    double operator()(std::size_t i, std::size_t j) const { return v[i * n + j]; }
};

MaxPlus edge_matrix(const GraphSample& m)
{
    MaxPlus a;
    a.n = m.size();
    a.v.assign(a.n * a.n, -kInf);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j)
            if (i != j)
                a.v[i * a.n + j] = pairing(m.x(j) - m.x(i), m.y(i));
    return a;
}

// (P (x) A)_ij = max_l P_il + A_lj, first l on ties.
MaxPlus multiply(const MaxPlus& p, const MaxPlus& a)
{
    const std::size_t n = a.n;
    MaxPlus r;
    r.n = n;
    r.v.assign(n * n, -kInf);
    r.pred.assign(n * n, 0);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double* row = &r.v[i * n];
            std::uint32_t* pr = &r.pred[i * n];
            for (std::size_t l = 0; l < n; ++l) {
                const double pil = p.v[i * n + l];
                if (pil == -kInf)
                    continue;
                const double* al = &a.v[l * n];
                for (std::size_t j = 0; j < n; ++j) {
                    const double c = pil + al[j];
                    if (c > row[j]) {
                        row[j] = c;
                        pr[j] = static_cast<std::uint32_t>(l);
                    }
                }
            }
        }
    });
    return r;
}

// Walk i -> ... -> j with k edges, read from the stored predecessor chains.
void walk(const std::vector<MaxPlus>& powers, std::size_t k, std::size_t i, std::size_t j, std::vector<std::size_t>& out)
{
    // powers[k] holds A^k (powers[1] = A)
    std::vector<std::size_t> rev;
    std::size_t cur = j;
    for (std::size_t step = k; step >= 2; --step) {
        rev.push_back(cur);
        cur = powers[step].pred[i * powers[step].n + cur];
    }
    rev.push_back(cur);
    out.push_back(i);
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
        out.push_back(*it);
    out.pop_back();  // caller appends the closing node
}

MaxAffine build_potential(const GraphSample& m, const Vector& x0, double phi0, std::size_t m_max)
{
    const std::size_t n = m.size();
    std::vector<double> w(n, -kInf);
    bool found = false;
    for (std::size_t s = 0; s < n; ++s)
        if (m.x(s) == x0) {
            w[s] = 0.0;
            found = true;
        }
    if (!found)
        throw std::invalid_argument("rockafellar potential: base point is not in dom(M)");
    std::vector<double> best = w;
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = i == j ? 0.0 : pairing(m.x(j) - m.x(i), m.y(i));
    for (std::size_t k = 1; k <= m_max; ++k) {
        std::vector<double> next(n, -kInf);
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i] == -kInf)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                next[j] = std::max(next[j], w[i] + a[i * n + j]);
        }
        w = std::move(next);
        for (std::size_t j = 0; j < n; ++j)
            best[j] = std::max(best[j], w[j]);
    }
    std::vector<Vector> slopes;
    std::vector<double> intercepts;
    for (std::size_t j = 0; j < n; ++j) {
        if (best[j] == -kInf)
            continue;
        slopes.push_back(m.y(j));
        intercepts.push_back(phi0 + best[j] - pairing(m.x(j), m.y(j)));
    }
    return MaxAffine(std::move(slopes), std::move(intercepts));
}

}  // namespace

GraphSample::GraphSample(std::size_t dim_x, std::size_t dim_y) : dim_x_(dim_x), dim_y_(dim_y)
{
    check_dim(dim_x);
    check_dim(dim_y);
}

GraphSample::GraphSample(std::size_t dim_x, std::size_t dim_y, std::vector<std::pair<Vector, Vector>> pairs)
    : GraphSample(dim_x, dim_y)
{
    for (const auto& [x, y] : pairs)
        if (!add(x, y))
            throw std::invalid_argument("GraphSample: duplicate pair");
}

bool GraphSample::add(const Vector& x, const Vector& y)
{
    if (x.size() != dim_x_ || y.size() != dim_y_)
        throw std::invalid_argument("GraphSample: pair dimension mismatch");
    for (const auto& p : pairs_)
        if (p.first == x && p.second == y)
            return false;
    pairs_.emplace_back(x, y);
    return true;
}

std::vector<Vector> operator_image(const GraphSample& m, const Vector& x)
{
    std::vector<Vector> out;
    for (const auto& [px, py] : m.pairs())
        if (px == x)
            out.push_back(py);
    return out;
}

std::vector<Vector> dual_image(const GraphSample& m, const Vector& y)
{
    std::vector<Vector> out;
    for (const auto& [px, py] : m.pairs())
        if (py == y)
            out.push_back(px);
    return out;
}

std::vector<Vector> graph_domain(const GraphSample& m)
{
    std::vector<Vector> out;
    for (const auto& p : m.pairs())
        if (std::find(out.begin(), out.end(), p.first) == out.end())
            out.push_back(p.first);
    return out;
}

std::vector<Vector> graph_image(const GraphSample& m)
{
    std::vector<Vector> out;
    for (const auto& p : m.pairs())
        if (std::find(out.begin(), out.end(), p.second) == out.end())
            out.push_back(p.second);
    return out;
}

GraphSample graph_transpose(const GraphSample& m)
{
    GraphSample t(m.dim_y(), m.dim_x());
    for (const auto& [x, y] : m.pairs())
        t.add(y, x);
    return t;
}

double cycle_tolerance(const GraphSample& m)
{
    if (m.dim_x() != m.dim_y())
        throw std::invalid_argument("cycle tests need dim_x == dim_y");
    double s = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k)
        for (std::size_t j = 0; j < m.size(); ++j)
            s = std::max(s, std::abs(pairing(m.x(k), m.y(j))));
    return 1e-9 * (1.0 + s);
}

MonotoneVerdict is_monotone(const GraphSample& m, double tol)
{
    MonotoneVerdict v;
    v.tol = tol < 0 ? cycle_tolerance(m) : tol;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            const double s = pairing(m.x(i) - m.x(j), m.y(i) - m.y(j));
            if (s < v.worst)
                v.worst = s;
            if (s < -v.tol && !v.witness) {
                v.monotone = false;
                v.witness = std::make_pair(i, j);
            }
        }
    return v;
}

double cycle_value(const GraphSample& m, const std::vector<std::size_t>& cycle)
{
    double s = 0.0;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        const std::size_t a = cycle[k];
        const std::size_t b = cycle[(k + 1) % cycle.size()];
        s += pairing(m.x(b) - m.x(a), m.y(a));
    }
    return s;
}

ResourceError::ResourceError(const std::string& what, CycleVerdict partial)
    : std::runtime_error(what), partial_(std::move(partial))
{
}

CycleVerdict is_cyclically_monotone(const GraphSample& m, std::size_t m_max, std::uint64_t budget, double tol)
{
    if (m_max < 1)
        throw std::invalid_argument("is_cyclically_monotone: m_max must be >= 1");
    CycleVerdict v;
    v.tol = tol < 0 ? cycle_tolerance(m) : tol;
    v.max_cycle_value = -kInf;
    const std::size_t n = m.size();
    if (n < 2) {
        v.verified_m = m_max;
        return v;
    }
    const std::uint64_t n2 = static_cast<std::uint64_t>(n) * n;
    const std::uint64_t n3 = n2 * n;

    std::vector<MaxPlus> powers(2);
    powers[1] = edge_matrix(m);
    std::size_t best_len = 0;
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    std::size_t best_a = 0;

    for (std::size_t len = 2; len <= m_max + 1; ++len) {
        const std::size_t a = (len + 1) / 2;
        const std::size_t b = len - a;
        while (powers.size() <= a) {
            if (v.relaxations + n3 > budget)
                throw ResourceError("cycle budget exhausted", v);
            powers.push_back(multiply(powers.back(), powers[1]));
            v.relaxations += n3;
        }
        if (v.relaxations + n2 > budget)
            throw ResourceError("cycle budget exhausted", v);
        const MaxPlus& pa = powers[a];
        const MaxPlus& pb = powers[b];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double c = pa(i, j) + pb(j, i);
                if (c > v.max_cycle_value) {
                    v.max_cycle_value = c;
                    best_len = len;
                    best_i = i;
                    best_j = j;
                    best_a = a;
                }
            }
        v.relaxations += n2;
        v.verified_m = len - 1;
        v.cyclically_monotone = v.max_cycle_value <= v.tol;
    }
    if (best_len > 0) {
        std::vector<std::size_t> cyc;
        walk(powers, best_a, best_i, best_j, cyc);
        walk(powers, best_len - best_a, best_j, best_i, cyc);
        v.witness_cycle = std::move(cyc);
    }
    return v;
}

MaxAffine::MaxAffine(std::vector<Vector> slopes, std::vector<double> intercepts)
    : slopes_(std::move(slopes)), intercepts_(std::move(intercepts))
{
    if (slopes_.empty() || slopes_.size() != intercepts_.size())
        throw std::invalid_argument("MaxAffine: need matching non-empty slopes and intercepts");
    for (const auto& s : slopes_)
        if (s.size() != slopes_.front().size())
            throw std::invalid_argument("MaxAffine: slope dimension mismatch");
}

ExtReal MaxAffine::operator()(const Vector& x) const
{
    double best = -kInf;
    for (std::size_t j = 0; j < slopes_.size(); ++j)
        best = std::max(best, intercepts_[j] + pairing(x, slopes_[j]));
    return best;
}

ExtReal MaxAffine::conjugate(const Vector& y) const
{
    const std::size_t d = y.size();
    if (d != slopes_.front().size())
        throw std::invalid_argument("MaxAffine::conjugate: dimension mismatch");
    const std::size_t n = slopes_.size();
    const std::size_t rows = d + 1;
    std::vector<double> A(rows * n);
    std::vector<double> b(rows);
    std::vector<double> c(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < d; ++k)
            A[k * n + j] = slopes_[j][k];
        A[d * n + j] = 1.0;
        c[j] = -intercepts_[j];
    }
    for (std::size_t k = 0; k < d; ++k)
        b[k] = y[k];
    b[d] = 1.0;
    const auto r = minimize_standard_form(A, rows, n, b, c);
    if (!r.feasible)
        return ExtReal::infinity();
    return r.value;
}

MaxAffine rockafellar_potential(const GraphSample& m, const Vector& x0, double phi0, std::size_t m_max)
{
    return build_potential(m, x0, phi0, m_max);
}

ExtReal rockafellar_potential(const GraphSample& m, const Vector& x0, double phi0, const Vector& x, std::size_t m_max)
{
    return rockafellar_potential(m, x0, phi0, m_max)(x);
}

MaxAffine rockafellar_dual_potential(const GraphSample& m, const Vector& y0, double psi0, std::size_t m_max)
{
    return build_potential(graph_transpose(m), y0, psi0, m_max);
}

ExtReal rockafellar_dual_potential(const GraphSample& m, const Vector& y0, double psi0, const Vector& y, std::size_t m_max)
{
    return rockafellar_dual_potential(m, y0, psi0, m_max)(y);
}

std::vector<ExtensionProbe> probe_extensions(const GraphSample& m,
                                             const std::vector<std::pair<Vector, Vector>>& candidates,
                                             std::size_t m_max,
                                             double tol)
{
    std::vector<ExtensionProbe> out;
    out.reserve(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        GraphSample ext = m;
        ExtensionProbe p;
        p.candidate = c;
        if (!ext.add(candidates[c].first, candidates[c].second)) {
            p.preserves = true;
            out.push_back(p);
            continue;
        }
        const auto v = is_cyclically_monotone(ext, m_max, std::numeric_limits<std::uint64_t>::max(), tol);
        p.preserves = v.cyclically_monotone;
        p.max_cycle_value = v.max_cycle_value;
        out.push_back(p);
    }
    return out;
}

}  // namespace bipot
