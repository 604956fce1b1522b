#pragma once

#include "bipot/core_types.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace bipot
{

/// Axis-aligned product grid in R^n (n <= 3). Nodes are stored row-major:
/// the last axis varies fastest.
class Grid
{
public:
    Grid() = default;

    /// Each axis must be strictly increasing with at least 2 nodes.
    explicit Grid(std::vector<std::vector<double>> axes);

    /// n nodes on [lo, hi] in every one of `dim` axes, x_i = lo + ((hi - lo) i) / (n - 1).
    static Grid uniform(std::size_t dim, double lo, double hi, std::size_t n);

    /// Uniform axis helper with the same node formula as uniform().
    static std::vector<double> uniform_axis(double lo, double hi, std::size_t n);

    [[nodiscard]] std::size_t dim() const { return axes_.size(); }
    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] const std::vector<double>& axis(std::size_t k) const { return axes_[k]; }
    [[nodiscard]] const std::vector<std::vector<double>>& axes() const { return axes_; }
    [[nodiscard]] std::size_t stride(std::size_t k) const { return strides_[k]; }

    [[nodiscard]] Vector node(std::size_t flat) const;
    [[nodiscard]] std::vector<Vector> nodes() const;
    [[nodiscard]] std::array<std::size_t, 3> unflatten(std::size_t flat) const;
    [[nodiscard]] std::size_t flatten(const std::array<std::size_t, 3>& idx) const;

    /// True if flat node lies on the outer boundary of the grid box.
    [[nodiscard]] bool on_boundary(std::size_t flat) const;

    [[nodiscard]] bool contains(const Vector& x) const;

    /// Flat index of the node equal to x, if x is exactly a node.
    [[nodiscard]] std::optional<std::size_t> find_node(const Vector& x) const;

    /// Largest spacing over all axes.
    [[nodiscard]] double max_step() const;

    /// True when every axis is uniform up to rounding.
    [[nodiscard]] bool is_uniform() const;

    friend bool operator==(const Grid& a, const Grid& b) { return a.axes_ == b.axes_; }

private:
    std::vector<std::vector<double>> axes_;
    std::array<std::size_t, 3> strides_{};
    std::size_t size_ = 0;
};

}  // namespace bipot
