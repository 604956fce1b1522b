#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>

namespace bipot
{

/// A value of R̄ = R ∪ {+∞}. Negative infinity and NaN are unrepresentable.
class ExtReal
{
public:
    constexpr ExtReal() = default;

    /// Accepts any finite double or +inf; throws std::domain_error on -inf or NaN.
    ExtReal(double v);  // NOLINT(google-explicit-constructor)

    static constexpr ExtReal infinity()
    {
        ExtReal r;
        r.infinite_ = true;
        return r;
    }

    [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }
    [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }

    /// Finite value; throws std::domain_error for +∞.
    [[nodiscard]] double value() const;

    /// The value as a double, +∞ mapped to std::numeric_limits<double>::infinity().
    [[nodiscard]] constexpr double to_double() const
    {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    friend ExtReal operator+(ExtReal a, ExtReal b);
    /// Shift by a finite real (used for b(x,y) - <x,y>); +∞ stays +∞.
    friend ExtReal operator-(ExtReal a, double shift);
    /// Scaling by lambda >= 0 with the convention 0·(+∞) = 0.
    friend ExtReal operator*(double lambda, ExtReal a);

    friend bool operator==(const ExtReal& a, const ExtReal& b);
    friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b);

    /// |a - b| <= tol for finite values; +∞ only matches +∞.
    [[nodiscard]] bool near(const ExtReal& other, double tol) const;

    [[nodiscard]] std::string to_string() const;

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

ExtReal ext_add(ExtReal a, ExtReal b);
ExtReal ext_max(ExtReal a, ExtReal b);
ExtReal ext_min(ExtReal a, ExtReal b);

/// A point of R^n, n in {1, 2, 3}, with finite components.
class Vector
{
public:
    static constexpr std::size_t max_dim = 3;

    Vector() = default;
    Vector(std::initializer_list<double> components);
    explicit Vector(std::span<const double> components);

    static Vector zeros(std::size_t dim);

    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] double operator[](std::size_t i) const { return data_[i]; }
    void set(std::size_t i, double v);

    [[nodiscard]] std::span<const double> components() const { return {data_.data(), size_}; }

    [[nodiscard]] double norm() const;

    friend Vector operator+(const Vector& a, const Vector& b);
    friend Vector operator-(const Vector& a, const Vector& b);
    friend Vector operator*(double s, const Vector& a);
    friend bool operator==(const Vector& a, const Vector& b);

    [[nodiscard]] std::string to_string() const;

private:
    std::array<double, max_dim> data_{};
    std::size_t size_ = 0;
};

/// Duality product <x, y> = sum x_i y_i; throws std::invalid_argument on dimension mismatch.
double pairing(const Vector& x, const Vector& y);

/// Euclidean norm of a 2-vector, the norm used for every tangential quantity.
inline double norm2(double a, double b)
{
    return std::hypot(a, b);
}

}  // namespace bipot
