#include "bipot/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bipot
{

Grid::Grid(std::vector<std::vector<double>> axes) : axes_(std::move(axes))
{
    if (axes_.empty() || axes_.size() > Vector::max_dim)
        throw std::invalid_argument("Grid: dimension must be 1, 2 or 3");
    for (const auto& a : axes_) {
        if (a.size() < 2)
            throw std::invalid_argument("Grid: every axis needs at least 2 nodes");
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!std::isfinite(a[i]))
                throw std::invalid_argument("Grid: non-finite node");
            if (i > 0 && !(a[i] > a[i - 1]))
                throw std::invalid_argument("Grid: axis must be strictly increasing");
        }
    }
    std::size_t s = 1;
    for (std::size_t k = axes_.size(); k-- > 0;) {
        strides_[k] = s;
        s *= axes_[k].size();
    }
    size_ = s;
}

std::vector<double> Grid::uniform_axis(double lo, double hi, std::size_t n)
{
    if (n < 2 || !(hi > lo))
        throw std::invalid_argument("Grid::uniform_axis: need n >= 2 and hi > lo");
    std::vector<double> a(n);
    const double span = hi - lo;
    for (std::size_t i = 0; i < n; ++i)
        a[i] = lo + (span * static_cast<double>(i)) / static_cast<double>(n - 1);
    a.back() = hi;
    return a;
}

Grid Grid::uniform(std::size_t dim, double lo, double hi, std::size_t n)
{
    return Grid(std::vector<std::vector<double>>(dim, uniform_axis(lo, hi, n)));
}

std::array<std::size_t, 3> Grid::unflatten(std::size_t flat) const
{
    std::array<std::size_t, 3> idx{};
    for (std::size_t k = 0; k < dim(); ++k) {
        idx[k] = flat / strides_[k];
        flat -= idx[k] * strides_[k];
    }
    return idx;
}

std::size_t Grid::flatten(const std::array<std::size_t, 3>& idx) const
{
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dim(); ++k)
        flat += idx[k] * strides_[k];
    return flat;
}

Vector Grid::node(std::size_t flat) const
{
    const auto idx = unflatten(flat);
    std::array<double, 3> c{};
    for (std::size_t k = 0; k < dim(); ++k)
        c[k] = axes_[k][idx[k]];
    return Vector(std::span<const double>(c.data(), dim()));
}

std::vector<Vector> Grid::nodes() const
{
    std::vector<Vector> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i)
        out.push_back(node(i));
    return out;
}

bool Grid::on_boundary(std::size_t flat) const
{
    const auto idx = unflatten(flat);
    for (std::size_t k = 0; k < dim(); ++k)
        if (idx[k] == 0 || idx[k] + 1 == axes_[k].size())
            return true;
    return false;
}

bool Grid::contains(const Vector& x) const
{
    if (x.size() != dim())
        return false;
    for (std::size_t k = 0; k < dim(); ++k)
        if (x[k] < axes_[k].front() || x[k] > axes_[k].back())
            return false;
    return true;
}

std::optional<std::size_t> Grid::find_node(const Vector& x) const
{
    if (x.size() != dim())
        return std::nullopt;
    std::array<std::size_t, 3> idx{};
    for (std::size_t k = 0; k < dim(); ++k) {
        const auto& a = axes_[k];
        auto it = std::lower_bound(a.begin(), a.end(), x[k]);
        if (it == a.end() || *it != x[k])
            return std::nullopt;
        idx[k] = static_cast<std::size_t>(it - a.begin());
    }
    return flatten(idx);
}

double Grid::max_step() const
{
    double h = 0.0;
    for (const auto& a : axes_)
        for (std::size_t i = 1; i < a.size(); ++i)
            h = std::max(h, a[i] - a[i - 1]);
    return h;
}

bool Grid::is_uniform() const
{
    for (const auto& a : axes_) {
        const double h = (a.back() - a.front()) / static_cast<double>(a.size() - 1);
        for (std::size_t i = 1; i < a.size(); ++i)
            if (std::abs((a[i] - a[i - 1]) - h) > 1e-9 * h)
                return false;
    }
    return true;
}

}  // namespace bipot
