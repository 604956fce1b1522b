#include "bipot/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace bipot::io
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

std::string at(const std::string& where, const std::string& key)
{
    return where + "/" + key;
}

std::string at(const std::string& where, std::size_t i)
{
    return where + "/" + std::to_string(i);
}

[[noreturn]] void fail(const std::string& where, const std::string& msg)
{
    throw InputError(where.empty() ? "/" : where, msg);
}

const json& field(const json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object())
        fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(where, "missing field \"" + key + "\"");
    return *it;
}

std::size_t index_from_json(const json& j, const std::string& where)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        fail(where, "expected a non-negative integer");
    return j.get<std::size_t>();
}

std::vector<std::size_t> indices_from_json(const json& j, const std::string& where)
{
    if (!j.is_array())
        fail(where, "expected an array of indices");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(index_from_json(j[i], at(where, i)));
    return out;
}

std::vector<double> reals_from_json(const json& j, const std::string& where)
{
    if (!j.is_array())
        fail(where, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(real_from_json(j[i], at(where, i)));
    return out;
}

json reals_to_json(const std::vector<double>& v)
{
    json a = json::array();
    for (double x : v)
        a.push_back(real_to_json(x));
    return a;
}

json indices_to_json(const std::vector<std::size_t>& v)
{
    json a = json::array();
    for (std::size_t x : v)
        a.push_back(x);
    return a;
}

std::string type_of(const json& j, const char* key, const std::string& where)
{
    const json& t = field(j, key, where);
    if (!t.is_string())
        fail(at(where, key), "expected a string tag");
    return t.get<std::string>();
}

// Runs a factory, turning its validation errors into located input errors.
template <class F>
auto build(const std::string& where, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

json set_to_json(const SetAtom& s)
{
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            json j;
            if constexpr (std::is_same_v<T, SingletonSet>) {
                j["type"] = "singleton";
                j["point"] = reals_to_json(v.point);
            } else if constexpr (std::is_same_v<T, BoxSet>) {
                j["type"] = "box";
                j["lo"] = reals_to_json(v.lo);
                j["hi"] = reals_to_json(v.hi);
            } else if constexpr (std::is_same_v<T, CoulombConeSet>) {
                j["type"] = "coulomb_cone";
                j["mu"] = v.mu;
            } else if constexpr (std::is_same_v<T, DualCoulombConeSet>) {
                j["type"] = "dual_coulomb_cone";
                j["mu"] = v.mu;
            } else if constexpr (std::is_same_v<T, DiscSet>) {
                j["type"] = "disc";
                j["radius"] = v.radius;
            } else {
                j["type"] = "empty";
            }
            return j;
        },
        s);
}

SetAtom set_from_json(const json& j, const std::string& where)
{
    const std::string t = type_of(j, "type", where);
    if (t == "singleton")
        return SingletonSet{reals_from_json(field(j, "point", where), at(where, "point"))};
    if (t == "box")
        return BoxSet{reals_from_json(field(j, "lo", where), at(where, "lo")), reals_from_json(field(j, "hi", where), at(where, "hi"))};
    if (t == "coulomb_cone")
        return CoulombConeSet{real_from_json(field(j, "mu", where), at(where, "mu"))};
    if (t == "dual_coulomb_cone")
        return DualCoulombConeSet{real_from_json(field(j, "mu", where), at(where, "mu"))};
    if (t == "disc")
        return DiscSet{real_from_json(field(j, "radius", where), at(where, "radius"))};
    if (t == "empty")
        return EmptySet{};
    fail(at(where, "type"), "unknown set type \"" + t + "\"");
}

std::vector<ConvexFunction> terms_from_json(const json& j, const std::string& where)
{
    if (!j.is_array())
        fail(where, "expected an array of functions");
    std::vector<ConvexFunction> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(function_from_json(j[i], at(where, i)));
    return out;
}

json term_to_json(const BipotentialTerm& t)
{
    json j;
    switch (t.kind) {
    case BipotentialTerm::Kind::InX:
        j["type"] = "in_x";
        j["f"] = to_json(*t.fx);
        break;
    case BipotentialTerm::Kind::InY:
        j["type"] = "in_y";
        j["g"] = to_json(*t.fy);
        break;
    case BipotentialTerm::Kind::Pairing:
        j["type"] = "pairing";
        j["coef"] = t.coef;
        break;
    case BipotentialTerm::Kind::Product:
        j["type"] = "product";
        j["f"] = to_json(*t.fx);
        j["g"] = to_json(*t.fy);
        break;
    }
    return j;
}

BipotentialTerm term_from_json(const json& j, const std::string& where)
{
    const std::string t = type_of(j, "type", where);
    if (t == "in_x")
        return BipotentialTerm::in_x(function_from_json(field(j, "f", where), at(where, "f")));
    if (t == "in_y")
        return BipotentialTerm::in_y(function_from_json(field(j, "g", where), at(where, "g")));
    if (t == "pairing")
        return BipotentialTerm::pairing(j.contains("coef") ? real_from_json(j["coef"], at(where, "coef")) : 1.0);
    if (t == "product")
        return BipotentialTerm::product(function_from_json(field(j, "f", where), at(where, "f")),
                                        function_from_json(field(j, "g", where), at(where, "g")));
    fail(at(where, "type"), "unknown term type \"" + t + "\"");
}

}  // namespace

InputError::InputError(std::string where, const std::string& message)
    : std::runtime_error(where + ": " + message), where_(std::move(where))
{
}

json parse(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": byte " + std::to_string(e.byte), e.what());
    }
}

json read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

json real_to_json(double v)
{
    if (v == inf)
        return "inf";
    if (v == -inf)
        return "-inf";
    return v;
}

double real_from_json(const json& j, const std::string& where)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf")
            return inf;
        if (s == "-inf")
            return -inf;
    }
    fail(where, "expected a number, \"inf\" or \"-inf\"");
}

json ext_to_json(const ExtReal& v)
{
    return real_to_json(v.to_double());
}

ExtReal ext_from_json(const json& j, const std::string& where)
{
    const double v = real_from_json(j, where);
    if (v == -inf)
        fail(where, "-inf is not an extended real");
    return {v};
}

json to_json(const Vector& v)
{
    json a = json::array();
    for (double c : v.components())
        a.push_back(c);
    return a;
}

Vector vector_from_json(const json& j, const std::string& where)
{
    const auto c = reals_from_json(j, where);
    return build(where, [&] {
        if (c.empty() || c.size() > 3)
            throw std::invalid_argument("vectors have 1 to 3 components");
        for (double v : c)
            if (!std::isfinite(v))
                throw std::invalid_argument("vector components must be finite");
        return Vector(std::span<const double>(c));
    });
}

json to_json(const Grid& g)
{
    json a = json::array();
    for (const auto& axis : g.axes())
        a.push_back(reals_to_json(axis));
    return a;
}

Grid grid_from_json(const json& j, const std::string& where)
{
    if (!j.is_array())
        fail(where, "expected a list of axes");
    std::vector<std::vector<double>> axes;
    for (std::size_t i = 0; i < j.size(); ++i)
        axes.push_back(reals_from_json(j[i], at(where, i)));
    return build(where, [&] { return Grid(std::move(axes)); });
}

json to_json(const ConvexFunction& f)
{
    return std::visit(
        [&](const auto& n) -> json {
            using T = std::decay_t<decltype(n)>;
            json j;
            if constexpr (std::is_same_v<T, node::Affine>) {
                j["type"] = "affine";
                j["dim"] = f.dim();
                j["coords"] = indices_to_json(n.coords);
                j["slope"] = reals_to_json(n.slope);
                j["offset"] = n.offset;
            } else if constexpr (std::is_same_v<T, node::Quadratic>) {
                j["type"] = "quadratic";
                j["dim"] = f.dim();
                j["coords"] = indices_to_json(n.coords);
                j["matrix"] = reals_to_json(n.matrix);
            } else if constexpr (std::is_same_v<T, node::ScaledNorm>) {
                j["type"] = "scaled_norm";
                j["dim"] = f.dim();
                j["coords"] = indices_to_json(n.coords);
                j["scale"] = n.scale;
            } else if constexpr (std::is_same_v<T, node::PowerAbs>) {
                j["type"] = "power_abs";
                j["dim"] = f.dim();
                j["coord"] = n.coord;
                j["exponent"] = n.exponent;
                j["scale"] = n.scale;
            } else if constexpr (std::is_same_v<T, node::Exponential>) {
                j["type"] = "exponential";
                j["dim"] = f.dim();
                j["coord"] = n.coord;
                j["rate"] = n.rate;
                j["scale"] = n.scale;
            } else if constexpr (std::is_same_v<T, node::Indicator>) {
                j["type"] = "indicator";
                j["dim"] = f.dim();
                j["coords"] = indices_to_json(n.coords);
                j["set"] = set_to_json(n.set);
            } else if constexpr (std::is_same_v<T, node::Sum> || std::is_same_v<T, node::MaxOf>) {
                j["type"] = std::is_same_v<T, node::Sum> ? "sum" : "max";
                j["dim"] = f.dim();
                j["terms"] = json::array();
                for (const auto& t : n.terms)
                    j["terms"].push_back(to_json(t));
            } else if constexpr (std::is_same_v<T, node::Scaled>) {
                j["type"] = "scaled";
                j["dim"] = f.dim();
                j["factor"] = n.factor;
                j["inner"] = to_json(n.inner);
            } else if constexpr (std::is_same_v<T, node::PreScaled>) {
                j["type"] = "prescaled";
                j["dim"] = f.dim();
                j["lambda"] = n.lambda;
                j["inner"] = to_json(n.inner);
            } else {
                j["type"] = "sampled";
                j["grid"] = to_json(n.grid);
                j["values"] = reals_to_json(n.values);
            }
            return j;
        },
        f.node().value);
}

ConvexFunction function_from_json(const json& j, const std::string& where)
{
    const std::string t = type_of(j, "type", where);
    auto dim = [&] { return index_from_json(field(j, "dim", where), at(where, "dim")); };
    auto coords = [&] { return indices_from_json(field(j, "coords", where), at(where, "coords")); };
    auto real = [&](const char* k) { return real_from_json(field(j, k, where), at(where, k)); };
    auto idx = [&](const char* k) { return index_from_json(field(j, k, where), at(where, k)); };

    if (t == "affine") {
        const double off = j.contains("offset") ? real("offset") : 0.0;
        return build(where, [&] { return fn::affine(dim(), coords(), reals_from_json(field(j, "slope", where), at(where, "slope")), off); });
    }
    if (t == "quadratic")
        return build(where, [&] { return fn::quadratic(dim(), coords(), reals_from_json(field(j, "matrix", where), at(where, "matrix"))); });
    if (t == "scaled_norm")
        return build(where, [&] { return fn::scaled_norm(dim(), coords(), real("scale")); });
    if (t == "power_abs")
        return build(where, [&] { return fn::power_abs(dim(), idx("coord"), real("exponent"), real("scale")); });
    if (t == "exponential")
        return build(where, [&] { return fn::exponential(dim(), idx("coord"), real("rate"), real("scale")); });
    if (t == "indicator") {
        auto set = set_from_json(field(j, "set", where), at(where, "set"));
        return build(where, [&] { return fn::indicator(dim(), coords(), set); });
    }
    if (t == "sum" || t == "max") {
        auto terms = terms_from_json(field(j, "terms", where), at(where, "terms"));
        if (j.contains("dim"))
            for (std::size_t i = 0; i < terms.size(); ++i)
                if (terms[i].dim() != dim())
                    fail(at(at(where, "terms"), i), "term dimension differs from \"dim\"");
        return build(where, [&] { return t == "sum" ? fn::sum(std::move(terms)) : fn::max_of(std::move(terms)); });
    }
    if (t == "scaled")
        return build(where, [&] { return fn::scaled(real("factor"), function_from_json(field(j, "inner", where), at(where, "inner"))); });
    if (t == "prescaled")
        return build(where, [&] { return fn::prescaled(real("lambda"), function_from_json(field(j, "inner", where), at(where, "inner"))); });
    if (t == "sampled") {
        auto g = grid_from_json(field(j, "grid", where), at(where, "grid"));
        auto v = reals_from_json(field(j, "values", where), at(where, "values"));
        return build(where, [&] { return fn::sampled(std::move(g), std::move(v)); });
    }
    fail(at(where, "type"), "unknown function type \"" + t + "\"");
}

json to_json(const BipotentialSpec& b)
{
    return std::visit(
        [&](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            json j;
            if constexpr (std::is_same_v<T, spec::Separable>) {
                j["kind"] = "separable";
                j["phi"] = to_json(v.phi);
                j["phi_star"] = to_json(v.phi_star);
                j["conjugate_source"] = v.conjugate_source;
            } else if constexpr (std::is_same_v<T, spec::MaxOfTwo>) {
                j["kind"] = "max_of_two";
                j["b1"] = to_json(*v.b1);
                j["b2"] = to_json(*v.b2);
            } else if constexpr (std::is_same_v<T, spec::ClosedForm>) {
                j["kind"] = "closed_form";
                j["dim_x"] = b.dim_x();
                j["dim_y"] = b.dim_y();
                j["terms"] = json::array();
                for (const auto& t : v.terms)
                    j["terms"].push_back(term_to_json(t));
            } else {
                j["kind"] = "cover_inf";
                j["members"] = json::array();
                for (const auto& m : *v.members)
                    j["members"].push_back(to_json(m));
            }
            return j;
        },
        b.value());
}

BipotentialSpec bipotential_from_json(const json& j, const std::string& where)
{
    const std::string k = type_of(j, "kind", where);
    if (k == "separable") {
        auto phi = function_from_json(field(j, "phi", where), at(where, "phi"));
        if (j.contains("phi_star")) {
            auto star = function_from_json(j["phi_star"], at(where, "phi_star"));
            return build(where, [&] { return BipotentialSpec::separable(std::move(phi), std::move(star)); });
        }
        return build(where, [&] { return BipotentialSpec::separable(std::move(phi)); });
    }
    if (k == "max_of_two") {
        auto b1 = bipotential_from_json(field(j, "b1", where), at(where, "b1"));
        auto b2 = bipotential_from_json(field(j, "b2", where), at(where, "b2"));
        return build(where, [&] { return BipotentialSpec::max_of_two(std::move(b1), std::move(b2)); });
    }
    if (k == "closed_form") {
        const json& terms = field(j, "terms", where);
        if (!terms.is_array())
            fail(at(where, "terms"), "expected an array of terms");
        std::vector<BipotentialTerm> out;
        for (std::size_t i = 0; i < terms.size(); ++i)
            out.push_back(term_from_json(terms[i], at(at(where, "terms"), i)));
        const auto dx = index_from_json(field(j, "dim_x", where), at(where, "dim_x"));
        const auto dy = index_from_json(field(j, "dim_y", where), at(where, "dim_y"));
        return build(where, [&] { return BipotentialSpec::closed_form(dx, dy, std::move(out)); });
    }
    if (k == "cover_inf") {
        const json& members = field(j, "members", where);
        if (!members.is_array())
            fail(at(where, "members"), "expected an array of bipotentials");
        std::vector<BipotentialSpec> out;
        for (std::size_t i = 0; i < members.size(); ++i)
            out.push_back(bipotential_from_json(members[i], at(at(where, "members"), i)));
        return build(where, [&] { return BipotentialSpec::cover_inf(std::move(out)); });
    }
    fail(at(where, "kind"), "unknown bipotential kind \"" + k + "\"");
}

json to_json(const GraphSample& m)
{
    json j;
    j["dim_x"] = m.dim_x();
    j["dim_y"] = m.dim_y();
    j["pairs"] = json::array();
    for (const auto& [x, y] : m.pairs())
        j["pairs"].push_back(json::array({to_json(x), to_json(y)}));
    return j;
}

GraphSample graph_from_json(const json& j, const std::string& where)
{
    const auto dx = index_from_json(field(j, "dim_x", where), at(where, "dim_x"));
    const auto dy = index_from_json(field(j, "dim_y", where), at(where, "dim_y"));
    const json& pairs = field(j, "pairs", where);
    if (!pairs.is_array())
        fail(at(where, "pairs"), "expected an array of [x, y] pairs");
    std::vector<std::pair<Vector, Vector>> out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto w = at(at(where, "pairs"), i);
        if (!pairs[i].is_array() || pairs[i].size() != 2)
            fail(w, "expected [x, y]");
        out.emplace_back(vector_from_json(pairs[i][0], at(w, 0)), vector_from_json(pairs[i][1], at(w, 1)));
    }
    return build(where, [&] { return GraphSample(dx, dy, std::move(out)); });
}

json to_json(const CoverSpec& c)
{
    json j;
    j["lambda_samples"] = reals_to_json(c.parameter_samples());
    j["members"] = json::array();
    for (const auto& m : c.family())
        j["members"].push_back(to_json(m));
    if (c.target_graph())
        j["target"] = to_json(*c.target_graph());
    return j;
}

CoverSpec cover_from_json(const json& j, const std::string& where)
{
    auto params = reals_from_json(field(j, "lambda_samples", where), at(where, "lambda_samples"));
    const json& members = field(j, "members", where);
    if (!members.is_array())
        fail(at(where, "members"), "expected an array of bipotentials");
    std::vector<BipotentialSpec> family;
    for (std::size_t i = 0; i < members.size(); ++i)
        family.push_back(bipotential_from_json(members[i], at(at(where, "members"), i)));
    std::optional<GraphSample> target;
    if (j.contains("target") && !j["target"].is_null())
        target = graph_from_json(j["target"], at(where, "target"));
    return build(where, [&] { return CoverSpec(std::move(params), std::move(family), std::move(target)); });
}

json to_json(const ContactPoint& c)
{
    json j;
    j["xn"] = c.xn;
    j["xt"] = json::array({c.xt[0], c.xt[1]});
    j["yn"] = c.yn;
    j["yt"] = json::array({c.yt[0], c.yt[1]});
    return j;
}

ContactPoint contact_from_json(const json& j, const std::string& where)
{
    auto pair = [&](const char* k) {
        const auto v = reals_from_json(field(j, k, where), at(where, k));
        if (v.size() != 2)
            fail(at(where, k), "expected two tangential components");
        return std::array<double, 2>{v[0], v[1]};
    };
    ContactPoint c;
    c.xn = real_from_json(field(j, "xn", where), at(where, "xn"));
    c.xt = pair("xt");
    c.yn = real_from_json(field(j, "yn", where), at(where, "yn"));
    c.yt = pair("yt");
    for (double v : {c.xn, c.xt[0], c.xt[1], c.yn, c.yt[0], c.yt[1]})
        if (!std::isfinite(v))
            fail(where, "contact point components must be finite");
    return c;
}

}  // namespace bipot::io
