#include "bipot/calculus.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace bipot;

namespace
{
const double inf = std::numeric_limits<double>::infinity();

ConvexFunction quartic()
{
    return fn::power_abs(1, 0, 4.0, 0.25);
}

ConvexFunction chi0_1d()
{
    return fn::indicator(1, {0}, SingletonSet{{0.0}});
}

ConvexFunction chi_unit_interval()
{
    return fn::indicator(1, {0}, BoxSet{{0.0}, {1.0}});
}

double eval1(const ConvexFunction& f, double x)
{
    return f.eval_raw(std::span<const double>(&x, 1));
}

double at(const SampledConjugate& c, double y)
{
    const auto idx = c.grid.find_node(Vector{y});
    return c.values.at(idx.value());
}

// Direct double loop over grid splits, independent of the library's offset logic.
double infconv_oracle(const ConvexFunction& f, const ConvexFunction& g, const std::vector<double>& nodes, double x)
{
    double best = inf;
    for (double x1 : nodes) {
        const double x2 = x - x1;
        if (x2 < nodes.front() - 1e-12 || x2 > nodes.back() + 1e-12)
            continue;
        const double v = eval1(f, x1) + eval1(g, x2);
        best = std::min(best, v);
    }
    return best;
}
}  // namespace

TEST(Conjugate, HalfSquareIsSelfDual)
{
    const Grid primal = Grid::uniform(1, -4.0, 4.0, 801);
    const auto c = conjugate_sampled(fn::half_square(), primal, primal);
    EXPECT_NEAR(at(c, 1.0), 0.5, 0.01);
}

TEST(Conjugate, SingletonGivesZero)
{
    const Grid primal = Grid::uniform(1, -4.0, 4.0, 801);
    const auto c = conjugate_sampled(chi0_1d(), primal, primal);
    for (double v : c.values)
        EXPECT_EQ(v, 0.0);
}

TEST(Conjugate, AbsTruncationArtifact)
{
    const double r = 8.0;
    const Grid primal = Grid::uniform(1, -r, r, 801);
    const Grid dual({{-2.0, 0.5, 2.0}});
    const auto c = conjugate_sampled(fn::abs(), primal, dual);
    EXPECT_NEAR(c.values[1], 0.0, 1e-9);
    EXPECT_DOUBLE_EQ(c.values[2], r * (2.0 - 1.0));
}

TEST(Conjugate, EmptyDomainThrows)
{
    const Grid primal = Grid::uniform(1, -1.0, 1.0, 11);
    const std::vector<double> values(11, inf);
    EXPECT_THROW(conjugate_values(primal, values, primal), EmptyDomainError);
}

TEST(Conjugate, FastMatchesBruteForce1D)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Grid primal = Grid::uniform(1, -3.0 + 0.1 * trial, 4.0, 301 + trial);
        const Grid dual = Grid::uniform(1, -7.0, 6.5, 257 + 3 * trial);
        std::vector<double> v(primal.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = (trial % 3 == 0 && i % 7 == 0) ? inf : u(rng) + 0.3 * primal.axis(0)[i] * primal.axis(0)[i];
        const auto fast = conjugate_values(primal, v, dual, ConjugateMethod::Fast);
        const auto brute = conjugate_values(primal, v, dual, ConjugateMethod::BruteForce);
        for (std::size_t j = 0; j < dual.size(); ++j)
            ASSERT_NEAR(fast.values[j], brute.values[j], 1e-12);
    }
}

TEST(Conjugate, FastMatchesBruteForceMultiD)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t d : {2U, 3U}) {
        const Grid primal = Grid::uniform(d, -1.0, 1.5, d == 2 ? 23 : 9);
        const Grid dual = Grid::uniform(d, -2.0, 2.0, d == 2 ? 19 : 7);
        std::vector<double> v(primal.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = (i % 5 == 1) ? inf : u(rng);
        const auto fast = conjugate_values(primal, v, dual, ConjugateMethod::Fast);
        const auto brute = conjugate_values(primal, v, dual, ConjugateMethod::BruteForce);
        for (std::size_t j = 0; j < dual.size(); ++j) {
            ASSERT_NEAR(fast.values[j], brute.values[j], 1e-12);
            const Vector x = primal.node(fast.argmax[j]);
            const Vector y = dual.node(j);
            ASSERT_NEAR(pairing(x, y) - v[fast.argmax[j]], fast.values[j], 1e-12);
        }
    }
}

TEST(Conjugate, BruteForceArgmaxIsFirstIndex)
{
    const Grid primal({{-1.0, 0.0, 1.0}});
    const std::vector<double> v{1.0, 0.0, 1.0};
    const Grid dual({{0.0, 1.0}});
    const auto c = conjugate_values(primal, v, dual, ConjugateMethod::BruteForce);
    EXPECT_EQ(c.argmax[0], 1U);
    EXPECT_EQ(c.argmax[1], 1U);
}

TEST(InfConvolution, HuberValue)
{
    const Grid g = Grid::uniform(1, -4.0, 4.0, 801);
    const auto h = inf_convolution(fn::abs(), fn::half_square(), g);
    EXPECT_NEAR(h(Vector{2.0}).value(), 1.5, 0.01);
    EXPECT_NEAR(h(Vector{2.0}).value(), infconv_oracle(fn::abs(), fn::half_square(), g.axis(0), 2.0), 1e-12);
}

TEST(InfConvolution, SingletonIsIdentity)
{
    const Grid g = Grid::uniform(1, -4.0, 4.0, 801);
    for (const auto& f : {fn::half_square(), quartic(), fn::abs(), chi_unit_interval()}) {
        const auto h = inf_convolution_values(f, chi0_1d(), g);
        const auto fv = sample_values(f, g);
        for (std::size_t i = 0; i < g.size(); ++i)
            ASSERT_EQ(h[i], fv[i]);
    }
}

TEST(InfConvolution, SingletonIsIdentityOnNonCenteredGrid)
{
    const Grid g({{-1.0, -0.3, 0.0, 0.4, 2.0}});
    const auto h = inf_convolution_values(fn::half_square(), chi0_1d(), g);
    const auto fv = sample_values(fn::half_square(), g);
    for (std::size_t i = 0; i < g.size(); ++i)
        EXPECT_EQ(h[i], fv[i]);
}

TEST(InfConvolution, IndicatorSumSet)
{
    const Grid g = Grid::uniform(1, -4.0, 4.0, 17);
    const auto h = inf_convolution(chi_unit_interval(), chi_unit_interval(), g);
    EXPECT_EQ(h(Vector{1.5}), ExtReal(0.0));
    EXPECT_TRUE(h(Vector{3.0}).is_infinite());
    EXPECT_EQ(infconv_oracle(chi_unit_interval(), chi_unit_interval(), g.axis(0), 1.5), 0.0);
    EXPECT_TRUE(std::isinf(infconv_oracle(chi_unit_interval(), chi_unit_interval(), g.axis(0), 3.0)));
}

TEST(InfConvolution, MatchesOracleOnAllNodes)
{
    const Grid g = Grid::uniform(1, -2.0, 2.0, 81);
    const auto h = inf_convolution_values(quartic(), fn::abs(), g);
    for (std::size_t i = 0; i < g.size(); ++i)
        EXPECT_NEAR(h[i], infconv_oracle(quartic(), fn::abs(), g.axis(0), g.axis(0)[i]), 1e-12);
}

TEST(InfConvolution, ConjugateOfSumBelowInfConvolution)
{
    const Grid g = Grid::uniform(1, -4.0, 4.0, 401);
    const auto f = fn::abs();
    const auto q = fn::half_square();
    const auto fs = fenchel_conjugate(f, g, g);
    const auto qs = fenchel_conjugate(q, g, g);
    std::vector<double> sum(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        sum[i] = fs.sampled().values[i] + qs.sampled().values[i];
    const auto back = conjugate_values(g, sum, g);
    const auto h = inf_convolution_values(f, q, g);
    for (std::size_t i = 0; i < g.size(); ++i)
        EXPECT_LE(back.values[i], h[i] + 1e-12);
}

TEST(Subdifferential, SmoothPoint)
{
    const auto s = subdifferential(fn::half_square(), Vector{1.0});
    EXPECT_NEAR(s.lo, 1.0, 1e-6);
    EXPECT_NEAR(s.hi, 1.0, 1e-6);
    EXPECT_FALSE(s.empty);
}

TEST(Subdifferential, AbsAtZero)
{
    const auto s = subdifferential(fn::abs(), Vector{0.0});
    EXPECT_NEAR(s.lo, -1.0, 1e-9);
    EXPECT_NEAR(s.hi, 1.0, 1e-9);
    for (double r : s.residuals)
        EXPECT_LE(r, 1e-9);
}

TEST(Subdifferential, IndicatorBoundaryGivesHalfLine)
{
    const auto s = subdifferential(chi_unit_interval(), Vector{1.0});
    EXPECT_NEAR(s.lo, 0.0, 1e-12);
    EXPECT_EQ(s.hi, inf);
}

TEST(Subdifferential, OutsideDomainThrows)
{
    EXPECT_THROW(subdifferential(chi_unit_interval(), Vector{2.0}), std::domain_error);
}

TEST(Subdifferential, ScaledInfConvolutionAtOne)
{
    const double lambda = 0.5;
    const Grid g = Grid::uniform(1, -3.0, 3.0, 1201);
    const auto h = inf_convolution(scaled_function(lambda, fn::half_square(), 1),
                                   scaled_function(lambda, quartic(), 2), g);
    const auto s = subdifferential(h, Vector{1.0});
    EXPECT_NEAR(s.lo, 1.0, 0.02);
    EXPECT_NEAR(s.hi, 1.0, 0.02);
    const auto s1 = subdifferential(fn::half_square(), Vector{1.0});
    const auto s2 = subdifferential(quartic(), Vector{1.0});
    EXPECT_NEAR(std::max(s1.lo, s2.lo), 1.0, 1e-6);
    EXPECT_NEAR(std::min(s1.hi, s2.hi), 1.0, 1e-6);
}

TEST(Subdifferential, NormAtOriginKeepsOnlyBallSlopes)
{
    const auto f = fn::scaled_norm(2, {0, 1}, 1.0);
    const auto s = subdifferential(f, Vector{0.0, 0.0});
    ASSERT_FALSE(s.slopes.empty());
    bool has_axis = false;
    for (const auto& u : s.slopes) {
        EXPECT_LE(u.norm(), 1.0 + 1e-6);
        has_axis = has_axis || u == Vector{1.0, 0.0};
    }
    EXPECT_TRUE(has_axis);
    for (const auto& u : s.slopes)
        EXPECT_NE(u, (Vector{1.0, 1.0}));
}

TEST(Subdifferential, SlopesPassSubgradientInequality)
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const auto f = fn::sum({fn::quadratic(2, {0, 1}, {2.0, 0.5, 0.5, 1.0}), fn::scaled_norm(2, {0, 1}, 0.3)});
    for (int t = 0; t < 20; ++t) {
        const Vector x{u(rng), u(rng)};
        const auto s = subdifferential(f, x);
        ASSERT_FALSE(s.slopes.empty());
        for (const auto& slope : s.slopes)
            for (int k = 0; k < 50; ++k) {
                const Vector z{u(rng), u(rng)};
                EXPECT_LE(pairing(z - x, slope), f(z).value() - f(x).value() + 1e-5);
            }
    }
}

TEST(ConvexCombination, Endpoints)
{
    const auto f = convex_combination(1.0, fn::half_square(), chi0_1d());
    EXPECT_EQ(f(Vector{2.0}), ExtReal(2.0));
    const auto g = convex_combination(0.5, fn::half_square(), quartic());
    EXPECT_DOUBLE_EQ(g(Vector{2.0}).value(), 3.0);
    EXPECT_THROW(convex_combination(1.5, fn::abs(), fn::abs()), std::invalid_argument);
}

TEST(ScaledFunction, Examples)
{
    EXPECT_DOUBLE_EQ(scaled_function(0.5, fn::half_square(), 1)(Vector{1.0}).value(), 1.0);
    EXPECT_DOUBLE_EQ(scaled_function(0.25, fn::abs(), 1)(Vector{2.0}).value(), 2.0);
    const auto c = scaled_function(0.5, chi0_1d(), 2);
    EXPECT_EQ(c(Vector{0.0}), ExtReal(0.0));
    EXPECT_TRUE(c(Vector{1.0}).is_infinite());
    EXPECT_THROW(scaled_function(0.0, fn::abs(), 1), std::invalid_argument);
    EXPECT_THROW(scaled_function(1.0, fn::abs(), 2), std::invalid_argument);
}

TEST(Convexity, Examples)
{
    const Grid g = Grid::uniform(1, -2.0, 2.0, 41);
    const auto rq = is_convex_on_grid(sample(fn::half_square(), g));
    EXPECT_TRUE(rq.convex);
    EXPECT_LE(rq.worst_violation, 1e-15);

    const auto neg = sample_values(fn::half_square(), g);
    std::vector<double> concave(neg.size());
    for (std::size_t i = 0; i < neg.size(); ++i)
        concave[i] = -2.0 * neg[i];
    const auto rn = is_convex_on_grid(g, concave);
    EXPECT_FALSE(rn.convex);
    EXPECT_TRUE(rn.witness.has_value());

    const Grid t = Grid::uniform(2, -1.0, 1.0, 41);
    EXPECT_TRUE(is_convex_on_grid(sample(fn::scaled_norm(2, {0, 1}, 0.5), t)).convex);
}

TEST(Convexity, DomainHoleDetected)
{
    const Grid g = Grid::uniform(1, 0.0, 1.0, 6);
    const std::vector<double> v{0.0, inf, inf, 0.0, 1.0, 2.0};
    const auto r = is_convex_on_grid(g, v);
    EXPECT_FALSE(r.convex);
    EXPECT_EQ(r.worst_violation, inf);
}

namespace
{
struct LibEntry
{
    ConvexFunction f;
    Grid primal;
    Grid dual;
};

std::vector<LibEntry> library()
{
    const Grid p1 = Grid::uniform(1, -2.0, 2.0, 401);
    const Grid d1 = Grid::uniform(1, -4.0, 4.0, 801);
    const Grid p2 = Grid::uniform(2, -2.0, 2.0, 61);
    const Grid d2 = Grid::uniform(2, -3.0, 3.0, 61);
    return {
        {fn::half_square(), p1, d1},
        {quartic(), p1, d1},
        {fn::abs(), p1, d1},
        {fn::sum({fn::abs(), fn::constant(1, 0.3)}), p1, d1},
        {chi_unit_interval(), p1, d1},
        {fn::prescaled(0.5, fn::half_square()), p1, d1},
        {fn::quadratic(2, {0, 1}, {1.0, 0.2, 0.2, 0.5}), p2, d2},
        {fn::scaled_norm(2, {0, 1}, 0.5), p2, d2},
        {fn::sum({fn::scaled_norm(2, {1}, 0.5), fn::indicator(2, {0}, BoxSet{{-1.0}, {0.0}})}), p2, d2},
    };
}
}  // namespace

TEST(Biconjugation, ClosedFormLibraryWithinGridModulus)
{
    for (const auto& e : library()) {
        const auto fv = sample_values(e.f, e.primal);
        const auto c = conjugate_values(e.primal, fv, e.dual);
        const auto cc = conjugate_values(e.dual, c.values, e.primal);
        std::size_t compared = 0;
        for (std::size_t i = 0; i < e.primal.size(); ++i) {
            if (std::isinf(fv[i]) || e.primal.on_boundary(i))
                continue;
            // a maximizing slope on the dual box boundary means the slope left the box
            const bool inside = !e.dual.on_boundary(cc.argmax[i]);
            if (!inside)
                continue;
            ++compared;
            ASSERT_NEAR(cc.values[i], fv[i], 2.0 * grid_modulus(e.primal, e.dual, e.primal.node(i))) << describe(e.f) << " node " << i;
        }
        EXPECT_GT(compared, 0U) << describe(e.f);
    }
}

TEST(FenchelInequality, HoldsOnAllGridPairs)
{
    for (const auto& e : library()) {
        if (e.primal.dim() != 1)
            continue;
        const auto c = closed_form_conjugate(e.f);
        ASSERT_TRUE(c);
        const auto& xs = e.primal.axis(0);
        for (std::size_t i = 0; i < xs.size(); i += 7)
            for (double y : e.dual.axis(0)) {
                const double fx = eval1(e.f, xs[i]);
                const double cy = eval1(*c, y);
                if (std::isinf(fx) || std::isinf(cy))
                    continue;
                ASSERT_GE(fx + cy - xs[i] * y, -1e-12);
            }
    }
}

TEST(Csv, HeaderAndRows)
{
    const Grid g({{0.0, 1.0}});
    const std::string csv = to_csv(g, std::vector<double>{0.5, inf});
    EXPECT_EQ(csv, "x1,value\n0,0.5\n1,inf\n");
}
