#include "bipot/io.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

using namespace bipot;
using io::json;

namespace
{
const double inf = std::numeric_limits<double>::infinity();

void expect_same_function(const ConvexFunction& a, const ConvexFunction& b, const Grid& g)
{
    ASSERT_EQ(a.dim(), b.dim());
    EXPECT_EQ(sample_values(a, g), sample_values(b, g));
}
}  // namespace

TEST(Io, Reals)
{
    EXPECT_EQ(io::real_to_json(inf), "inf");
    EXPECT_EQ(io::real_to_json(-inf), "-inf");
    EXPECT_EQ(io::real_to_json(1.5), 1.5);
    EXPECT_EQ(io::real_from_json(json("inf")), inf);
    EXPECT_TRUE(io::ext_from_json(json("inf")).is_infinite());
    EXPECT_THROW(io::ext_from_json(json("-inf")), io::InputError);
    EXPECT_THROW(io::real_from_json(json("infinity")), io::InputError);
    EXPECT_EQ(io::ext_to_json(ExtReal::infinity()), "inf");
}

TEST(Io, FunctionRoundTrip)
{
    const std::vector<ConvexFunction> fs{
        fn::affine(3, {0}, {1.0}, 2.0),
        fn::quadratic(2, {0, 1}, {2.0, 0.5, 0.5, 1.0}),
        fn::scaled_norm(3, {1, 2}, 0.5),
        fn::power_abs(1, 0, 4.0, 0.25),
        fn::exponential(1, 0, -1.0, 1.0),
        fn::indicator(3, {0}, BoxSet{{-inf}, {0.0}}),
        fn::indicator(3, {0, 1, 2}, CoulombConeSet{0.5}),
        fn::indicator(3, {0, 1, 2}, DualCoulombConeSet{0.5}),
        fn::indicator(3, {1, 2}, DiscSet{0.5}),
        fn::indicator(2, {0, 1}, SingletonSet{{0.0, 1.0}}),
        fn::indicator(1, {0}, EmptySet{}),
        fn::sum({fn::abs(), fn::half_square()}),
        fn::max_of({fn::abs(), fn::half_square()}),
        fn::scaled(0.5, fn::abs()),
        fn::prescaled(0.25, fn::half_square()),
        fn::sampled(Grid::uniform(1, -1, 1, 5), {inf, 1.0, 0.0, 1.0, inf}),
    };
    for (const auto& f : fs) {
        const json j = io::to_json(f);
        const auto g = io::function_from_json(io::parse(j.dump()));
        EXPECT_EQ(io::to_json(g), j) << j.dump();
        expect_same_function(f, g, Grid::uniform(f.dim(), -1.0, 1.0, 9));
    }
}

TEST(Io, BipotentialRoundTrip)
{
    const CoulombParams mu(0.5);
    const std::vector<BipotentialSpec> bs{
        BipotentialSpec::separable(fn::half_square()),
        BipotentialSpec::max_of_two(BipotentialSpec::separable(fn::power_abs(1, 0, 4.0, 0.25)), BipotentialSpec::separable(fn::half_square())),
        coulomb_bipotential_spec(mu),
        b_p_spec(1.0, mu),
        b_p_spec(inf, mu),
        cover_bipotential(coulomb_cover(mu, {0.0, 1.0})),
    };
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const auto& b : bs) {
        const json j = io::to_json(b);
        const auto c = io::bipotential_from_json(io::parse(j.dump()));
        EXPECT_EQ(c.kind_name(), b.kind_name());
        for (int k = 0; k < 50; ++k) {
            std::vector<double> x(b.dim_x());
            std::vector<double> y(b.dim_y());
            for (auto& v : x)
                v = k % 2 ? 0.0 : u(rng);
            for (auto& v : y)
                v = u(rng);
            if (b.dim_y() == 3 && k % 3 == 0)
                y[0] = 1.0;
            EXPECT_EQ(b.eval_raw(x, y), c.eval_raw(x, y));
        }
    }
    // table conjugate when phi_star is omitted
    const auto t = io::bipotential_from_json(io::parse(R"({"kind":"separable","phi":{"type":"scaled_norm","dim":1,"coords":[0],"scale":1}})"));
    EXPECT_EQ(t(Vector{2.0}, Vector{1.0}).value(), 2.0);
    EXPECT_TRUE(t(Vector{2.0}, Vector{1.5}).is_infinite());
}

TEST(Io, GraphCoverContactRoundTrip)
{
    const CoulombParams mu(0.5);
    SampleDensity d;
    d.angles = 4;
    const auto m = sample_graph(mu, Branch::All, d, {0.0, 1.0});
    EXPECT_EQ(io::graph_from_json(io::parse(io::to_json(m).dump())), m);

    const auto c = coulomb_cover(mu, {0.0, 1.0}, true, m);
    const auto c2 = io::cover_from_json(io::parse(io::to_json(c).dump()));
    EXPECT_EQ(c2.parameter_samples(), c.parameter_samples());
    ASSERT_TRUE(c2.target_graph().has_value());
    EXPECT_EQ(*c2.target_graph(), m);

    const ContactPoint p{-0.5, {1.0, 2.0}, 0.0, {0.0, 0.25}};
    EXPECT_EQ(io::contact_from_json(io::to_json(p)), p);
    const json pj = io::to_json(p);
    EXPECT_EQ(pj.dump(), R"({"xn":-0.5,"xt":[1.0,2.0],"yn":0.0,"yt":[0.0,0.25]})");
}

TEST(Io, ErrorsCarryLocations)
{
    try {
        io::parse("{\"type\": \"affine\",", "f.json");
        FAIL();
    } catch (const io::InputError& e) {
        EXPECT_NE(e.where().find("f.json: byte"), std::string::npos);
    }
    try {
        io::function_from_json(io::parse(R"({"type":"sum","dim":1,"terms":[{"type":"scaled_norm","dim":1,"coords":[0],"scale":-1}]})"));
        FAIL();
    } catch (const io::InputError& e) {
        EXPECT_EQ(e.where(), "/terms/0");
    }
    try {
        io::function_from_json(io::parse(R"({"type":"power_abs","dim":1,"coord":0,"exponent":4})"));
        FAIL();
    } catch (const io::InputError& e) {
        EXPECT_EQ(e.where(), "/");
        EXPECT_NE(std::string(e.what()).find("scale"), std::string::npos);
    }
    EXPECT_THROW(io::function_from_json(io::parse(R"({"type":"wobble"})")), io::InputError);
    EXPECT_THROW(io::contact_from_json(io::parse(R"({"xn":0,"xt":[1],"yn":0,"yt":[0,0]})")), io::InputError);
    EXPECT_THROW(io::graph_from_json(io::parse(R"({"dim_x":1,"dim_y":1,"pairs":[[[0],[1,2]]]})")), io::InputError);
    EXPECT_THROW(io::read_file("/nonexistent/f.json"), io::InputError);
}
