#include "bipot/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bipot
{

ExtReal::ExtReal(double v)
{
    if (std::isnan(v))
        throw std::domain_error("ExtReal: NaN is not an extended real");
    if (std::isinf(v)) {
        if (v < 0)
            throw std::domain_error("ExtReal: -inf is not representable");
        infinite_ = true;
        return;
    }
    value_ = v;
}

double ExtReal::value() const
{
    if (infinite_)
        throw std::domain_error("ExtReal::value() on +inf");
    return value_;
}

ExtReal operator+(ExtReal a, ExtReal b)
{
    if (a.infinite_ || b.infinite_)
        return ExtReal::infinity();
    return ExtReal(a.value_ + b.value_);
}

ExtReal operator-(ExtReal a, double shift)
{
    if (a.infinite_)
        return a;
    return ExtReal(a.value_ - shift);
}

ExtReal operator*(double lambda, ExtReal a)
{
    if (lambda < 0)
        throw std::domain_error("ExtReal: scaling by a negative factor");
    if (lambda == 0.0)
        return ExtReal(0.0);
    if (a.infinite_)
        return a;
    return ExtReal(lambda * a.value_);
}

bool operator==(const ExtReal& a, const ExtReal& b)
{
    if (a.infinite_ || b.infinite_)
        return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
}

std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b)
{
    if (a.infinite_ && b.infinite_)
        return std::partial_ordering::equivalent;
    if (a.infinite_)
        return std::partial_ordering::greater;
    if (b.infinite_)
        return std::partial_ordering::less;
    return a.value_ <=> b.value_;
}

bool ExtReal::near(const ExtReal& other, double tol) const
{
    if (infinite_ || other.infinite_)
        return infinite_ == other.infinite_;
    return std::abs(value_ - other.value_) <= tol;
}

std::string ExtReal::to_string() const
{
    if (infinite_)
        return "inf";
    std::ostringstream os;
    os.precision(17);
    os << value_;
    return os.str();
}

ExtReal ext_add(ExtReal a, ExtReal b)
{
    return a + b;
}

ExtReal ext_max(ExtReal a, ExtReal b)
{
    return (a < b) ? b : a;
}

ExtReal ext_min(ExtReal a, ExtReal b)
{
    return (b < a) ? b : a;
}

namespace
{
void check_component(double v)
{
    if (!std::isfinite(v))
        throw std::invalid_argument("Vector: components must be finite");
}
}  // namespace

Vector::Vector(std::initializer_list<double> components)
    : Vector(std::span<const double>(components.begin(), components.size()))
{
}

Vector::Vector(std::span<const double> components)
{
    if (components.empty() || components.size() > max_dim)
        throw std::invalid_argument("Vector: dimension must be 1, 2 or 3");
    size_ = components.size();
    for (std::size_t i = 0; i < size_; ++i) {
        check_component(components[i]);
        data_[i] = components[i];
    }
}

Vector Vector::zeros(std::size_t dim)
{
    if (dim == 0 || dim > max_dim)
        throw std::invalid_argument("Vector: dimension must be 1, 2 or 3");
    Vector v;
    v.size_ = dim;
    return v;
}

void Vector::set(std::size_t i, double v)
{
    if (i >= size_)
        throw std::out_of_range("Vector::set index");
    check_component(v);
    data_[i] = v;
}

double Vector::norm() const
{
    switch (size_) {
    case 1:
        return std::abs(data_[0]);
    case 2:
        return std::hypot(data_[0], data_[1]);
    default:
        return std::hypot(data_[0], data_[1], data_[2]);
    }
}

Vector operator+(const Vector& a, const Vector& b)
{
    if (a.size_ != b.size_)
        throw std::invalid_argument("Vector: dimension mismatch");
    Vector r = a;
    for (std::size_t i = 0; i < a.size_; ++i)
        r.data_[i] += b.data_[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b)
{
    if (a.size_ != b.size_)
        throw std::invalid_argument("Vector: dimension mismatch");
    Vector r = a;
    for (std::size_t i = 0; i < a.size_; ++i)
        r.data_[i] -= b.data_[i];
    return r;
}

Vector operator*(double s, const Vector& a)
{
    Vector r = a;
    for (std::size_t i = 0; i < a.size_; ++i)
        r.data_[i] *= s;
    return r;
}

bool operator==(const Vector& a, const Vector& b)
{
    return a.size_ == b.size_ && std::equal(a.data_.begin(), a.data_.begin() + a.size_, b.data_.begin());
}

std::string Vector::to_string() const
{
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < size_; ++i)
        os << (i ? ", " : "") << data_[i];
    os << ')';
    return os.str();
}

double pairing(const Vector& x, const Vector& y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("pairing: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i] * y[i];
    return s;
}

}  // namespace bipot
