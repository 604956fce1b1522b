#include "bipot/bipotential.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

using namespace bipot;

namespace
{
const double inf = std::numeric_limits<double>::infinity();

ConvexFunction quartic()
{
    return fn::power_abs(1, 0, 4.0, 0.25);
}

// |x| (e^{-y} + 1) + x y
BipotentialSpec non_strong()
{
    const auto ey = fn::sum({fn::exponential(1, 0, -1.0, 1.0), fn::constant(1, 1.0)});
    return BipotentialSpec::closed_form(1, 1, {BipotentialTerm::product(fn::abs(), ey), BipotentialTerm::pairing(1.0)});
}

// Brute sup over a fine 1-D grid, independent of the library's conjugate code.
double brute_conjugate(const std::function<double(double)>& f, double y, double r = 8.0, std::size_t n = 160001)
{
    double best = -inf;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -r + 2.0 * r * static_cast<double>(i) / static_cast<double>(n - 1);
        best = std::max(best, x * y - f(x));
    }
    return best;
}

Grid line(double lo, double hi, std::size_t n)
{
    return Grid::uniform(1, lo, hi, n);
}
}  // namespace

TEST(Bipotential, EvaluationExamples)
{
    const auto sep = BipotentialSpec::separable(fn::half_square());
    EXPECT_DOUBLE_EQ(sep(Vector{1.0}, Vector{1.0}).value(), 1.0);
    EXPECT_EQ(non_strong()(Vector{0.0}, Vector{5.0}).value(), 0.0);
    EXPECT_NEAR(non_strong()(Vector{2.0}, Vector{0.0}).value(), 4.0, 1e-15);

    const auto m = BipotentialSpec::max_of_two(BipotentialSpec::separable(quartic()), sep);
    const double x = 1.5;
    const double y = -0.5;
    const double b1 = std::pow(x, 4) / 4 + 0.75 * std::pow(std::abs(y), 4.0 / 3.0);
    const double b2 = x * x / 2 + y * y / 2;
    EXPECT_NEAR(m(Vector{x}, Vector{y}).value(), std::max(b1, b2), 1e-12);
    EXPECT_EQ(m.kind_name(), "max_of_two");
}

TEST(Bipotential, SeparableNeedsTableEntry)
{
    EXPECT_THROW(BipotentialSpec::separable(fn::exponential(1, 0, 1.0, 1.0)), std::invalid_argument);
    const auto num = BipotentialSpec::separable_numeric(fn::exponential(1, 0, 1.0, 1.0), line(-8, 8, 801), line(0.5, 4, 36));
    EXPECT_TRUE(num.has_sampled_part());
    // e^x conjugate: y log y - y
    EXPECT_NEAR(num(Vector{0.0}, Vector{2.0}).value(), 1.0 + 2.0 * std::log(2.0) - 2.0, 1e-3);
}

TEST(Bipotential, PairTableMatchesDirectEvaluation)
{
    const Grid gx = line(-2, 2, 17);
    const Grid gy = line(-1, 3, 13);
    const std::vector<BipotentialSpec> specs = {
        BipotentialSpec::separable(fn::abs()),
        non_strong(),
        BipotentialSpec::max_of_two(BipotentialSpec::separable(quartic()), BipotentialSpec::separable(fn::half_square())),
        BipotentialSpec::cover_inf({BipotentialSpec::separable(fn::half_square()), non_strong()}),
    };
    for (const auto& b : specs) {
        const PairTable t(b, gx, gy);
        for (std::size_t i = 0; i < gx.size(); ++i)
            for (std::size_t j = 0; j < gy.size(); ++j) {
                const double direct = b(gx.node(i), gy.node(j)).to_double();
                EXPECT_EQ(t.b(i, j), direct) << b.kind_name() << " " << i << "," << j;
                EXPECT_DOUBLE_EQ(t.pairing(i, j), gx.node(i)[0] * gy.node(j)[0]);
            }
    }
}

TEST(Bipotential, ClosedFormValidation)
{
    EXPECT_THROW(BipotentialSpec::closed_form(1, 1, {}), std::invalid_argument);
    EXPECT_THROW(BipotentialSpec::closed_form(2, 1, {BipotentialTerm::pairing()}), std::invalid_argument);
    EXPECT_THROW(BipotentialSpec::closed_form(1, 1, {BipotentialTerm::in_x(fn::scaled_norm(2, {0, 1}, 1.0))}), std::invalid_argument);
    EXPECT_THROW(BipotentialSpec::cover_inf({}), std::invalid_argument);
}

TEST(Bipotential, SeparableCriticalSetIsTheGraph)
{
    const Grid g = line(-2, 2, 81);
    const auto r = critical_set(BipotentialSpec::separable(fn::half_square()), g, g, 1e-9);
    ASSERT_EQ(r.nodes.size(), g.size());
    for (const auto& [i, j] : r.nodes)
        EXPECT_EQ(i, j);
    EXPECT_FALSE(r.intersection_identity.has_value());

    // |x|: graph of the sign operator, [-1, 1] at 0
    const auto ra = critical_set(BipotentialSpec::separable(fn::abs()), g, g, 1e-9);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double x = g.node(i)[0];
            const double y = g.node(j)[0];
            const bool in_graph = (x > 0 && y == 1.0) || (x < 0 && y == -1.0) || (x == 0 && std::abs(y) <= 1.0);
            expected += in_graph ? 1 : 0;
        }
    EXPECT_EQ(ra.nodes.size(), expected);
}

TEST(Bipotential, CounterexampleCriticalSet)
{
    const Grid g = line(-2, 2, 401);
    const auto b = BipotentialSpec::max_of_two(BipotentialSpec::separable(quartic()), BipotentialSpec::separable(fn::half_square()));
    const auto r = critical_set(b, g, g, 1e-6);
    const auto pts = critical_points(r, g, g);
    ASSERT_EQ(pts.size(), 3u);
    std::set<std::pair<double, double>> got;
    for (const auto& [x, y] : pts)
        got.insert({x[0], y[0]});
    EXPECT_EQ(got, (std::set<std::pair<double, double>>{{-1.0, -1.0}, {0.0, 0.0}, {1.0, 1.0}}));
    ASSERT_TRUE(r.intersection_identity.has_value());
    EXPECT_TRUE(*r.intersection_identity);
}

TEST(Bipotential, NonStrongCriticalSetIsVerticalLine)
{
    const Grid gx = line(-2, 2, 41);
    const Grid gy = line(0, 40, 161);
    const auto r = critical_set(non_strong(), gx, gy, 1e-9);
    ASSERT_EQ(r.nodes.size(), gy.size());
    for (const auto& [i, j] : r.nodes)
        EXPECT_EQ(gx.node(i)[0], 0.0);
}

TEST(Bipotential, AxiomsSeparable)
{
    const Grid g = line(-2, 2, 81);
    for (const auto& f : {fn::half_square(), fn::abs(), quartic()}) {
        const auto rep = check_axioms(BipotentialSpec::separable(f), g, g, 1e-6);
        EXPECT_TRUE(rep.a_ok()) << describe(f);
        EXPECT_TRUE(rep.b_ok()) << describe(f);
        EXPECT_TRUE(rep.c_ok()) << describe(f) << " failures " << rep.equivalence_failure_count;
        EXPECT_GE(rep.fenchel_gap_min.value(), -1e-12);
    }
}

TEST(Bipotential, AxiomsNonStrongExample)
{
    const auto rep = check_axioms(non_strong(), line(-2, 2, 41), line(0, 40, 401), 1e-6);
    EXPECT_TRUE(rep.a_ok());
    EXPECT_TRUE(rep.b_ok());
    EXPECT_TRUE(rep.c_ok()) << rep.equivalence_failure_count;
    EXPECT_GT(rep.boundary_inconclusive, 0u);
    EXPECT_EQ(rep.critical_count, 401u);
}

TEST(Bipotential, AxiomsDetectNegativeGap)
{
    const auto b = BipotentialSpec::closed_form(
        1, 1, {BipotentialTerm::in_x(fn::half_square()), BipotentialTerm::in_y(fn::half_square()), BipotentialTerm::in_x(fn::constant(1, -10.0))});
    const Grid g = line(-2, 2, 41);
    const auto rep = check_axioms(b, g, g, 1e-6);
    EXPECT_FALSE(rep.b_ok());
    EXPECT_NEAR(rep.fenchel_gap_min.value(), -10.0, 1e-12);
    ASSERT_TRUE(rep.fenchel_gap_witness);
    EXPECT_EQ(g.node(rep.fenchel_gap_witness->first)[0], g.node(rep.fenchel_gap_witness->second)[0]);
    EXPECT_FALSE(rep.passed());
}

TEST(Bipotential, AxiomsDetectPositiveMinimizer)
{
    // gap (x - y)^2 / 2 + 1: every slice minimizer has gap 1, so (c) fails
    const auto b = BipotentialSpec::closed_form(
        1, 1, {BipotentialTerm::in_x(fn::half_square()), BipotentialTerm::in_y(fn::half_square()), BipotentialTerm::in_x(fn::constant(1, 1.0))});
    const Grid g = line(-2, 2, 41);
    const auto rep = check_axioms(b, g, g, 1e-6);
    EXPECT_TRUE(rep.a_ok());
    EXPECT_TRUE(rep.b_ok());
    EXPECT_FALSE(rep.c_ok());
    ASSERT_FALSE(rep.equivalence_failures.empty());
    const auto& f = rep.equivalence_failures.front();
    EXPECT_TRUE(f.a);
    EXPECT_FALSE(f.c);
    EXPECT_EQ(rep.critical_count, 0u);
}

TEST(Bipotential, AxiomsDetectNonConvexSlice)
{
    // x^2/2 - 3 x^2/2 is concave in x
    const auto b = BipotentialSpec::closed_form(
        1, 1, {BipotentialTerm::in_x(fn::half_square()), BipotentialTerm::in_y(fn::half_square()), BipotentialTerm::product(fn::half_square(), fn::constant(1, -3.0))});
    const Grid g = line(-1, 1, 21);
    const auto rep = check_axioms(b, g, g, 1e-6);
    EXPECT_FALSE(rep.convex_in_x.convex);
    EXPECT_TRUE(rep.convex_x_witness_slice.has_value());
}

TEST(Bipotential, StrongSeparable)
{
    const Grid g = line(-2, 2, 81);
    const auto r = check_strong(BipotentialSpec::separable(fn::half_square()), g, g, 1e-9);
    EXPECT_TRUE(r.strong());
    EXPECT_EQ(r.b1s.zero, g.size());
    EXPECT_FALSE(r.used_threshold);

    // indicator of [-1, 1]: slices outside the interval are identically +inf
    const auto ra = check_strong(BipotentialSpec::separable(fn::abs()), g, g, 1e-9);
    EXPECT_TRUE(ra.strong());
    EXPECT_EQ(ra.b1s.infinite, 40u);
}

TEST(Bipotential, StrongFailsForNonStrongExample)
{
    const Grid gx = line(-2, 2, 9);
    const Grid gy = line(0, 40, 4001);
    const auto r = check_strong(non_strong(), gx, gy, 1e-6);
    EXPECT_TRUE(r.b1s.holds);
    EXPECT_FALSE(r.b2s.holds);
    EXPECT_FALSE(r.strong());
    EXPECT_EQ(r.b2s.violations, 8u);
    ASSERT_FALSE(r.b2s.witnesses.empty());
    for (double x : {0.5, 1.0, 2.0}) {
        const auto i = gx.find_node(Vector{x});
        ASSERT_TRUE(i);
        EXPECT_NEAR(r.b2s.inf_values[*i], std::abs(x), 0.01);
        EXPECT_EQ(r.b2s.classes[*i], SliceClass::Violation);
    }
}

TEST(Bipotential, StrongThresholdOnlyForSampledData)
{
    const Grid g = line(-2, 2, 41);
    std::vector<double> vals(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
        vals[k] = std::abs(g.node(k)[0]) <= 1.0 ? 0.0 : 1e8;
    const auto b = BipotentialSpec::separable(fn::abs(), fn::sampled(g, vals));
    const auto r = check_strong(b, g, g, 1e-9);
    EXPECT_TRUE(r.strong());
    EXPECT_TRUE(r.used_threshold);
    EXPECT_EQ(r.b1s.threshold_infinite, 20u);

    // below the threshold the same values count as violations
    const auto r2 = check_strong(b, g, g, 1e-9, 1e9);
    EXPECT_FALSE(r2.strong());
}

TEST(Bipotential, StrongImpliesAxioms)
{
    const Grid g = line(-2, 2, 41);
    // covers the slopes x^3 of the quartic on [-2, 2]
    const Grid wide = line(-8, 8, 161);
    const Grid tall = line(0, 40, 401);
    struct Case
    {
        BipotentialSpec b;
        Grid gy;
    };
    const std::vector<Case> cases = {
        {BipotentialSpec::separable(fn::half_square()), g},
        {BipotentialSpec::separable(fn::abs()), g},
        {BipotentialSpec::separable(quartic()), wide},
        {BipotentialSpec::max_of_two(BipotentialSpec::separable(fn::half_square()), BipotentialSpec::separable(fn::half_square())), g},
        {BipotentialSpec::max_of_two(BipotentialSpec::separable(fn::abs()), BipotentialSpec::separable(fn::scaled(1.0, fn::abs()))), g},
        {BipotentialSpec::max_of_two(BipotentialSpec::separable(quartic()), BipotentialSpec::separable(fn::half_square())), g},
        {non_strong(), tall},
    };
    std::size_t strong_count = 0;
    for (const auto& c : cases) {
        if (!check_strong(c.b, g, c.gy, 0.01).strong())
            continue;
        ++strong_count;
        const auto rep = check_axioms(c.b, g, c.gy, 0.01);
        EXPECT_TRUE(rep.passed()) << c.b.kind_name() << " " << rep.a_ok() << rep.b_ok() << rep.c_ok();
    }
    EXPECT_EQ(strong_count, 5u);
}

TEST(Bipotential, LambdaGrid)
{
    const auto l = lambda_grid();
    ASSERT_EQ(l.size(), 21u);
    EXPECT_EQ(l.front(), 0.0);
    EXPECT_EQ(l.back(), 1.0);
    EXPECT_DOUBLE_EQ(l[10], 0.5);
    EXPECT_THROW(lambda_grid(1), std::invalid_argument);
}

TEST(MaxOfTwoStrongness, QuarticVersusSquare)
{
    const Grid g = line(-8, 8, 801);
    const auto r = check_theorem31(quartic(), fn::half_square(), g, g);
    EXPECT_FALSE(r.ii_prime.holds);
    EXPECT_FALSE(r.strong);
    EXPECT_TRUE(r.consistent);
    ASSERT_TRUE(r.ii_prime.witness.has_value());
    EXPECT_GT(r.ii_prime.checked, 0u);

    // (0.5 x^4/4 + 0.5 x^2/2)*(2) against 0.5 (3/4) 2^{4/3} + 0.5 * 2
    const double lhs = brute_conjugate([](double x) { return 0.5 * std::pow(x, 4) / 4 + 0.5 * x * x / 2; }, 2.0);
    const double rhs = 0.5 * 0.75 * std::pow(2.0, 4.0 / 3.0) + 0.5 * 2.0;
    EXPECT_LT(lhs, rhs - 0.05);
    EXPECT_GE(r.ii_prime.worst_diff, rhs - lhs - 0.01);
}

TEST(MaxOfTwoStrongness, IdenticalSquares)
{
    const Grid g = line(-8, 8, 801);
    const auto r = check_theorem31(fn::half_square(), fn::half_square(), g, g);
    EXPECT_TRUE(r.ii_prime.holds);
    EXPECT_TRUE(r.ii_second.holds);
    EXPECT_TRUE(r.strong);
    EXPECT_TRUE(r.consistent);
    EXPECT_LT(r.ii_prime.worst_diff, 1e-9);
    // slopes near the box edge need maximizers outside the box
    EXPECT_GT(r.ii_prime.excluded_boundary, 0u);
}

TEST(MaxOfTwoStrongness, NumericConjugateFallback)
{
    // e^x has no table entry; the conjugate is tabulated.
    const Grid gx = line(-8, 4, 601);
    const Grid gy = line(0.05, 3, 60);
    const auto e = fn::exponential(1, 0, 1.0, 1.0);
    // strong grids matched through y = e^x so both slice minima sit on nodes
    Theorem31Options opt;
    opt.strong_tol = 1e-3;
    const auto sx = Grid::uniform_axis(-2.0, 1.0, 31);
    std::vector<double> sy;
    for (double x : sx)
        sy.push_back(std::exp(x));
    opt.strong_grid_x = Grid(std::vector<std::vector<double>>{sx});
    opt.strong_grid_y = Grid(std::vector<std::vector<double>>{sy});
    const auto r = check_theorem31(e, e, gx, gy, opt);
    EXPECT_TRUE(r.ii_prime.holds);
    EXPECT_TRUE(r.ii_second.holds);
    EXPECT_GT(r.ii_second.excluded_boundary, 0u);
    EXPECT_TRUE(r.strong_report.used_threshold == false);
    EXPECT_TRUE(r.strong);
    EXPECT_TRUE(r.consistent);
}

TEST(Minimax, IdentityOnExamples)
{
    const Grid g = line(-8, 8, 1601);
    const auto l = lambda_grid();
    const auto same = minimax_gap_identity(fn::half_square(), fn::half_square(), Vector{1.0}, l, g);
    EXPECT_NEAR(same.lhs, 0.0, 1e-12);
    EXPECT_NEAR(same.rhs, 0.0, 1e-12);

    // (1, 1) is critical for both, so y = 1 gives 0 on both sides
    const auto at1 = minimax_gap_identity(quartic(), fn::half_square(), Vector{1.0}, l, g);
    EXPECT_NEAR(at1.lhs, 0.0, 1e-9);
    EXPECT_NEAR(at1.rhs, 0.0, 1e-9);

    const auto at2 = minimax_gap_identity(quartic(), fn::half_square(), Vector{2.0}, l, g);
    EXPECT_LT(at2.lhs, -0.05);
    EXPECT_LT(at2.gap, 0.01);
}

TEST(Minimax, RejectsOutsideConjugateDomain)
{
    const Grid g = line(-4, 4, 81);
    EXPECT_THROW(minimax_gap_identity(fn::abs(), fn::half_square(), Vector{2.0}, lambda_grid(), g), std::invalid_argument);
}

TEST(InfConvolutionSubdifferential, Examples)
{
    const Grid g = line(-3, 3, 1201);
    const Grid sg = line(-2, 2, 41);
    const auto hyp_abs = check_strong(BipotentialSpec::max_of_two(BipotentialSpec::separable(fn::abs()), BipotentialSpec::separable(fn::abs())), sg, sg, 1e-9);
    ASSERT_TRUE(hyp_abs.strong());
    const auto r = check_corollary33(fn::abs(), fn::abs(), 0.5, Vector{0.0}, 0.02, g, hyp_abs);
    EXPECT_TRUE(r.equal);
    EXPECT_NEAR(r.lhs.lo, -1.0, 1e-9);
    EXPECT_NEAR(r.lhs.hi, 1.0, 1e-9);
    EXPECT_NEAR(r.rhs.lo, -1.0, 1e-6);
    EXPECT_NEAR(r.rhs.hi, 1.0, 1e-6);

    const auto hyp_sq = check_strong(
        BipotentialSpec::max_of_two(BipotentialSpec::separable(fn::half_square()), BipotentialSpec::separable(fn::half_square())), sg, sg, 1e-9);
    const auto s = check_corollary33(fn::half_square(), fn::half_square(), 0.3, Vector{1.0}, 0.02, g, hyp_sq);
    EXPECT_TRUE(s.equal) << s.distance;
    EXPECT_NEAR(s.rhs.lo, 1.0, 1e-6);
    EXPECT_NEAR(s.rhs.hi, 1.0, 1e-6);
}

TEST(InfConvolutionSubdifferential, RefusesWithoutHypothesis)
{
    const Grid g = line(-8, 8, 801);
    const auto hyp = check_strong(BipotentialSpec::max_of_two(BipotentialSpec::separable(quartic()), BipotentialSpec::separable(fn::half_square())), g, g, 1e-6);
    ASSERT_FALSE(hyp.strong());
    try {
        (void)check_corollary33(quartic(), fn::half_square(), 0.5, Vector{1.0}, 0.02, g, hyp);
        FAIL() << "expected refusal";
    } catch (const CorollaryHypothesisError& e) {
        EXPECT_STREQ(e.what(), "corollary hypothesis unmet");
    }
}

TEST(InfConvolutionSubdifferential, Hausdorff)
{
    EXPECT_EQ(hausdorff({0, 1, false}, {0, 1, false}), 0.0);
    EXPECT_DOUBLE_EQ(hausdorff({0, 1, false}, {0.5, 1.25, false}), 0.5);
    EXPECT_EQ(hausdorff({-inf, 1, false}, {-inf, 1, false}), 0.0);
    EXPECT_EQ(hausdorff({-inf, 1, false}, {0, 1, false}), inf);
    EXPECT_EQ(hausdorff({0, 0, true}, {0, 1, false}), inf);
    EXPECT_EQ(hausdorff({0, 0, true}, {0, 0, true}), 0.0);
}
