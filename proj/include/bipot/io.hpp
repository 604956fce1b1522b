#pragma once

#include "bipot/bipotential.hpp"
#include "bipot/coulomb.hpp"
#include "bipot/cover.hpp"
#include "bipot/graphs.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace bipot::io
{

using json = nlohmann::ordered_json;

/// Malformed or ill-typed input. `where` is a byte offset ("byte 17") for
/// syntax errors and a JSON pointer ("/terms/1/scale") for schema errors.
class InputError : public std::runtime_error
{
public:
    InputError(std::string where, const std::string& message);
    [[nodiscard]] const std::string& where() const { return where_; }

private:
    std::string where_;
};

/// Parses text; syntax errors become InputError with the byte offset.
json parse(const std::string& text, const std::string& source = "<input>");
json read_file(const std::string& path);

/// Finite reals as numbers, +inf as "inf", -inf as "-inf".
json real_to_json(double v);
double real_from_json(const json& j, const std::string& where = "");
json ext_to_json(const ExtReal& v);
/// Rejects "-inf".
ExtReal ext_from_json(const json& j, const std::string& where = "");

json to_json(const Vector& v);
Vector vector_from_json(const json& j, const std::string& where = "");

/// Grid as its list of axes.
json to_json(const Grid& g);
Grid grid_from_json(const json& j, const std::string& where = "");

/// Tagged atom trees: {"type": "affine" | "quadratic" | "scaled_norm" | "power_abs" |
/// "exponential" | "indicator" | "sum" | "max" | "scaled" | "prescaled" | "sampled", "dim": n, ...}.
/// Sampled functions: {"type": "sampled", "grid": axes, "values": [...]} in row-major order.
json to_json(const ConvexFunction& f);
ConvexFunction function_from_json(const json& j, const std::string& where = "");

/// {"kind": "separable" | "max_of_two" | "closed_form" | "cover_inf", ...}.
/// A separable spec without "phi_star" takes its conjugate from the closed-form table.
json to_json(const BipotentialSpec& b);
BipotentialSpec bipotential_from_json(const json& j, const std::string& where = "");

/// {"dim_x", "dim_y", "pairs": [[x...], [y...]]...}.
json to_json(const GraphSample& m);
GraphSample graph_from_json(const json& j, const std::string& where = "");

/// {"lambda_samples", "members", "target"?}.
json to_json(const CoverSpec& c);
CoverSpec cover_from_json(const json& j, const std::string& where = "");

/// {"xn", "xt": [a, b], "yn", "yt": [a, b]}.
json to_json(const ContactPoint& c);
ContactPoint contact_from_json(const json& j, const std::string& where = "");

}  // namespace bipot::io
