#include "cli.hpp"

#include "bipot/calculus.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace bipot::cli
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

struct CaseResult
{
    json expected;
    json observed;
    bool pass = false;
};

struct Case
{
    std::string id;
    std::string description;
    std::function<CaseResult()> run;
};

json real(double v)
{
    return io::real_to_json(v);
}

Grid line(double lo, double hi, std::size_t n)
{
    return Grid::uniform(1, lo, hi, n);
}

BipotentialSpec non_strong()
{
    const auto ey = fn::sum({fn::exponential(1, 0, -1.0, 1.0), fn::constant(1, 1.0)});
    return BipotentialSpec::closed_form(1, 1, {BipotentialTerm::product(fn::abs(), ey), BipotentialTerm::pairing(1.0)});
}

CaseResult near(double expected, double observed, double tol)
{
    return {real(expected), real(observed), std::abs(expected - observed) <= tol};
}

CaseResult all_infinite(const std::vector<ExtReal>& values)
{
    json obs = json::array();
    bool pass = true;
    for (const auto& v : values) {
        obs.push_back(io::ext_to_json(v));
        pass = pass && v.is_infinite();
    }
    return {"inf", obs, pass};
}

std::vector<Case> build_cases(const RunConfig& c)
{
    const CoulombParams mu(0.5);
    const double p = 1.0;
    std::vector<Case> cases;

    cases.push_back({"convex_fn/scaled_norm_tangential", "0.5 ||x_t|| at x_t = (2, 0)", [] {
                         return near(1.0, evaluate(fn::scaled_norm(3, {1, 2}, 0.5), Vector{0.0, 2.0, 0.0}).value(), 1e-12);
                     }});

    cases.push_back({"calculus/combination_phi_psi_star", "0.5 phi_p + 0.5 psi_p* at (0, (2, 0)) and off x_n = 0", [=] {
                         const auto f = convex_combination(0.5, potential_family(p, Potential::Phi, mu), potential_family(p, Potential::PsiStar, mu));
                         const double v = evaluate(f, Vector{0.0, 2.0, 0.0}).value();
                         const ExtReal a = evaluate(f, Vector{0.3, 2.0, 0.0});
                         const ExtReal b = evaluate(f, Vector{-0.3, 2.0, 0.0});
                         CaseResult r;
                         r.expected = {{"at_contact", 1.0}, {"off_contact", "inf"}};
                         r.observed = {{"at_contact", v}, {"off_contact", json::array({io::ext_to_json(a), io::ext_to_json(b)})}};
                         r.pass = std::abs(v - 1.0) <= 1e-12 && a.is_infinite() && b.is_infinite();
                         return r;
                     }});

    SampleDensity dens;
    auto m_p = [=] {
        auto m = sample_graph(mu, Branch::Sticking, dens, {p});
        const auto s = sample_graph(mu, Branch::Sliding, dens, {p});
        for (const auto& [x, y] : s.pairs())
            m.add(x, y);
        return m;
    };

    cases.push_back({"graphs/M_p_cyclically_monotone", "sticking and sliding pairs of M_p, p = 1, mu = 0.5", [=] {
                         const auto m = m_p();
                         const auto v = is_cyclically_monotone(m, c.m_max);
                         return CaseResult{true, {{"pairs", m.size()}, {"cyclically_monotone", v.cyclically_monotone}, {"max_cycle_value", real(v.max_cycle_value)}}, v.cyclically_monotone};
                     }});

    cases.push_back({"graphs/rockafellar_phi", "reconstructed phi_p at (-0.3, (2, 0)) from x0 = 0, phi0 = 0", [=] {
                         const auto v = rockafellar_potential(m_p(), Vector{0.0, 0.0, 0.0}, 0.0, Vector{-0.3, 2.0, 0.0}, c.m_max);
                         return near(0.7, v.to_double(), 0.05);
                     }});

    cases.push_back({"graphs/rockafellar_psi", "reconstructed psi_p at (1, (0.4, 0)) from y0 = (1, (0, 0)), psi0 = 0", [=] {
                         const auto v = rockafellar_dual_potential(m_p(), Vector{1.0, 0.0, 0.0}, 0.0, Vector{1.0, 0.4, 0.0}, c.m_max);
                         return near(0.0, v.to_double(), 0.05);
                     }});

    cases.push_back({"bipotential/non_strong_value", "|x|(e^-y + 1) + xy at (0, 5)", [] { return near(0.0, non_strong()(Vector{0.0}, Vector{5.0}).value(), 0.0); }});

    cases.push_back({"bipotential/max_of_two_critical_set", "M(max(x^4/4 + conj, x^2/2 + conj)) on 401 x 401 over [-2, 2]^2", [] {
                         const Grid g = line(-2, 2, 401);
                         const auto b = BipotentialSpec::max_of_two(BipotentialSpec::separable(fn::power_abs(1, 0, 4.0, 0.25)), BipotentialSpec::separable(fn::half_square()));
                         const auto pts = critical_points(critical_set(b, g, g, 1e-9), g, g);
                         json obs = json::array();
                         for (const auto& [x, y] : pts)
                             obs.push_back(json::array({x[0], y[0]}));
                         bool pass = pts.size() == 3;
                         const double h = 4.0 / 400.0;
                         const double want[3] = {-1.0, 0.0, 1.0};
                         for (std::size_t k = 0; pass && k < 3; ++k)
                             pass = std::abs(pts[k].first[0] - want[k]) <= h && std::abs(pts[k].second[0] - want[k]) <= h;
                         return CaseResult{json::array({json::array({-1, -1}), json::array({0, 0}), json::array({1, 1})}), obs, pass};
                     }});

    cases.push_back({"bipotential/non_strong_critical_set", "M(b) = {0} x grid_y", [] {
                         const Grid gx = line(-2, 2, 41);
                         const Grid gy = line(0, 40, 401);
                         const auto r = critical_set(non_strong(), gx, gy, 1e-9);
                         bool pass = r.nodes.size() == gy.size();
                         for (const auto& [i, j] : r.nodes)
                             pass = pass && gx.node(i)[0] == 0.0;
                         return CaseResult{{{"count", gy.size()}, {"x", 0.0}}, {{"count", r.nodes.size()}}, pass};
                     }});

    cases.push_back({"bipotential/non_strong_axioms", "axioms (a), (b), (c) on [-2, 2] x [0, 40]", [] {
                         const auto a = check_axioms(non_strong(), line(-2, 2, 41), line(0, 40, 401), 1e-6);
                         return CaseResult{{{"a", true}, {"b", true}, {"c", true}}, {{"a", a.a_ok()}, {"b", a.b_ok()}, {"c", a.c_ok()}}, a.passed()};
                     }});

    cases.push_back({"bipotential/non_strong_b2s", "B2S infimum at x = 2 over y in [0, 40] is |x|: a violation", [] {
                         const Grid gx = line(-2, 2, 41);
                         const Grid gy = line(0, 40, 4001);
                         const auto s = check_strong(non_strong(), gx, gy, 1e-6);
                         const auto k = *gx.find_node(Vector{2.0});
                         const double v = s.b2s.inf_values[k];
                         const bool viol = s.b2s.classes[k] == SliceClass::Violation;
                         return CaseResult{{{"inf", 2.0}, {"class", "violation"}, {"strong", false}},
                                           {{"inf", real(v)}, {"class", viol ? "violation" : "other"}, {"strong", s.strong()}},
                                           viol && std::abs(v - 2.0) <= 0.01 && !s.strong()};
                     }});

    cases.push_back({"bipotential/non_strong_cli_grid", "B2S at x = 2 on the default grid [-8, 8], 801 nodes", [] {
                         const Grid g = line(-8, 8, 801);
                         const auto s = check_strong(non_strong(), g, g, 1e-6);
                         const auto k = *g.find_node(Vector{2.0});
                         const double v = s.b2s.inf_values[k];
                         return CaseResult{{{"inf", 2.0}, {"violation", true}},
                                           {{"inf", real(v)}, {"violation", s.b2s.classes[k] == SliceClass::Violation}},
                                           s.b2s.classes[k] == SliceClass::Violation && std::abs(v - 2.0) <= 0.01};
                     }});

    cases.push_back({"bipotential/coulomb_ii_prime", "(l phi_p + (1-l) psi_p*)* = l phi_p* + (1-l) psi_p, p = 1", [=] {
                         Theorem31Options opt;
                         opt.lambdas = lambda_grid(c.lambda_n);
                         opt.strong_tol = 0.02;
                         opt.strong_grid_x = coulomb_grid_x(11);
                         const auto t = Grid::uniform_axis(-0.5, 0.5, 41);
                         opt.strong_grid_y = Grid(std::vector<std::vector<double>>{{0.5, 1.0, 1.5}, t, t});
                         const auto r = check_theorem31(potential_family(p, Potential::Phi, mu), potential_family(p, Potential::PsiStar, mu), coulomb_grid_x(21), coulomb_grid_y(p, mu, 201), opt);
                         return CaseResult{{{"ii_prime", true}, {"worst_diff_at_most", 0.01}},
                                           {{"ii_prime", r.ii_prime.holds}, {"worst_diff", real(r.ii_prime.worst_diff)}, {"checked", r.ii_prime.checked}},
                                           r.ii_prime.holds && r.ii_prime.checked > 0};
                     }});

    cases.push_back({"cover/implicit_witness", "mixing p1 = 0.5 and p2 = 2 in y finds a sampled p", [=] {
                         const auto cover = coulomb_cover(mu, p_grid(c.p_max, c.p_n), true);
                         const auto& ps = cover.parameter_samples();
                         auto index_of = [&](double q) {
                             for (std::size_t k = 0; k < ps.size(); ++k)
                                 if (ps[k] == q)
                                     return k;
                             return ps.size();
                         };
                         ImplicitConvexityTrial t;
                         t.lambda1 = index_of(0.5);
                         t.lambda2 = index_of(2.0);
                         if (t.lambda1 == ps.size() || t.lambda2 == ps.size())
                             return CaseResult{"witness", "0.5 or 2 missing from the p grid", false};
                         t.z1 = Vector{0.5, 0.1, -0.05};
                         t.z2 = Vector{2.0, -0.3, 0.5};
                         t.fixed = Vector{0.0, 1.0, 0.5};
                         t.alpha = 2.0 / 3.0;
                         const auto o = evaluate_implicit_trial(cover, CoverArgument::InY, t, 1e-9);
                         json obs = {{"verified", o.verified}, {"margin", real(o.margin)}};
                         if (o.witness)
                             obs["witness_p"] = real(ps[*o.witness]);
                         return CaseResult{{{"verified", true}}, obs, o.verified && !o.vacuous};
                     }});

    cases.push_back({"cover/infinite_member_empty", "b_inf has no critical points", [=] {
                         const Grid g(std::vector<std::vector<double>>{{-1.0, 0.0}, {-1.0, 0.0, 1.0}, {-1.0, 0.0, 1.0}});
                         const Grid gy(std::vector<std::vector<double>>{{0.0, 1.0}, {-0.5, 0.0, 0.5}, {-0.5, 0.0, 0.5}});
                         const auto r = critical_set(b_p_spec(inf, mu), g, gy, 1e-9);
                         return CaseResult{0, r.nodes.size(), r.nodes.empty()};
                     }});

    cases.push_back({"cover/separation_via_b0", "inf over the cover at x = (-1, 0), y = 0 comes from b_0", [=] {
                         const auto cover = coulomb_cover(mu, p_grid(c.p_max, c.p_n), true);
                         const Vector x{-1.0, 0.0, 0.0};
                         const Vector y{0.0, 0.0, 0.0};
                         const ExtReal v = inf_bipotential(cover, x, y);
                         const bool via_b0 = b_p(0.0, x, y, mu).is_finite();
                         return CaseResult{{{"value", 0.0}, {"member", 0.0}}, {{"value", io::ext_to_json(v)}, {"b0_finite", via_b0}}, v == ExtReal(0.0) && via_b0};
                     }});

    cases.push_back({"coulomb/classify_separation", "((-1, (0.3, 0)), (0, (0, 0))) with mu = 0.5", [=] {
                         const auto k = classify(ContactPoint{-1.0, {0.3, 0.0}, 0.0, {0.0, 0.0}}, mu).kind;
                         return CaseResult{"Separation", to_string(k), k == ContactKind::Separation};
                     }});

    cases.push_back({"coulomb/phi_p", "phi_p(-0.3, (2, 0)), p = 1", [=] {
                         return near(0.7, evaluate(potential_family(p, Potential::Phi, mu), Vector{-0.3, 2.0, 0.0}).value(), 1e-12);
                     }});

    cases.push_back({"coulomb/psi_p_star_off_contact", "psi_p*(0.1, (2, 0)), p = 1", [=] {
                         return all_infinite({evaluate(potential_family(p, Potential::PsiStar, mu), Vector{0.1, 2.0, 0.0})});
                     }});

    cases.push_back({"coulomb/p_zero_potentials", "phi_0 = 0 everywhere and phi_0*(y) = 0 only at y = 0", [=] {
                         const auto phi0 = potential_family(0.0, Potential::Phi, mu);
                         const auto star0 = potential_family(0.0, Potential::PhiStar, mu);
                         bool pass = evaluate(phi0, Vector{-1.0, 2.0, 3.0}) == ExtReal(0.0) && evaluate(phi0, Vector{4.0, 0.0, -1.0}) == ExtReal(0.0);
                         pass = pass && evaluate(star0, Vector{0.0, 0.0, 0.0}) == ExtReal(0.0);
                         for (const Vector& y : {Vector{0.1, 0.0, 0.0}, Vector{0.0, -0.1, 0.0}, Vector{0.0, 0.0, 0.1}})
                             pass = pass && evaluate(star0, y).is_infinite();
                         return CaseResult{true, pass, pass};
                     }});

    cases.push_back({"coulomb/b_p_off_contact", "b_p at x = (0.1, (2, 0)), p = 1, for several y", [=] {
                         const Vector x{0.1, 2.0, 0.0};
                         return all_infinite({b_p(p, x, Vector{1.0, 0.0, 0.0}, mu), b_p(p, x, Vector{1.0, 0.5, 0.0}, mu), b_p(p, x, Vector{0.0, 0.0, 0.0}, mu)});
                     }});

    cases.push_back({"coulomb/b_0_separation", "b_0((-1, 0), 0)", [=] {
                         return near(0.0, b_p(0.0, Vector{-1.0, 0.0, 0.0}, Vector{0.0, 0.0, 0.0}, mu).to_double(), 0.0);
                     }});

    cases.push_back({"coulomb/b_penetration", "b at x = (1, (0, 0)) for several y", [=] {
                         const Vector x{1.0, 0.0, 0.0};
                         return all_infinite({coulomb_bipotential(x, Vector{1.0, 0.0, 0.0}, mu), coulomb_bipotential(x, Vector{0.0, 0.0, 0.0}, mu), coulomb_bipotential(x, Vector{2.0, 0.5, 0.5}, mu)});
                     }});

    cases.push_back({"coulomb/sample_sticking", "pairs (0, (1, y_t)) with ||y_t|| <= 0.5", [=] {
                         const auto m = sample_graph(mu, Branch::Sticking, dens, {p});
                         bool pass = m.size() > 0;
                         for (const auto& [x, y] : m.pairs())
                             pass = pass && x == Vector{0.0, 0.0, 0.0} && y[0] == 1.0 && norm2(y[1], y[2]) <= 0.5;
                         return CaseResult{true, {{"pairs", m.size()}, {"all_valid", pass}}, pass};
                     }});

    cases.push_back({"coulomb/sample_sliding", "pairs ((0, l y_t), (1, y_t)) with ||y_t|| = 0.5, l > 0", [=] {
                         const auto m = sample_graph(mu, Branch::Sliding, dens, {p});
                         bool pass = m.size() > 0;
                         for (const auto& [x, y] : m.pairs()) {
                             const double r = norm2(y[1], y[2]);
                             const double l = norm2(x[1], x[2]) / r;
                             pass = pass && x[0] == 0.0 && y[0] == 1.0 && std::abs(r - 0.5) <= 1e-12 && l > 0.0 &&
                                    std::abs(x[1] - l * y[1]) <= 1e-9 * l && std::abs(x[2] - l * y[2]) <= 1e-9 * l;
                         }
                         return CaseResult{true, {{"pairs", m.size()}, {"all_valid", pass}}, pass};
                     }});

    cases.push_back({"coulomb/sample_separation", "pairs ((x_n, x_t), 0) with x_n < 0", [=] {
                         const auto m = sample_graph(mu, Branch::Separation, dens, {p});
                         bool pass = m.size() > 0;
                         for (const auto& [x, y] : m.pairs())
                             pass = pass && x[0] < 0.0 && y == Vector{0.0, 0.0, 0.0};
                         return CaseResult{true, {{"pairs", m.size()}, {"all_valid", pass}}, pass};
                     }});

    return cases;
}

}  // namespace

Outcome run_paper_suite(const RunConfig& c)
{
    Outcome o;
    o.report["config"] = config_json(c, 0.0);
    json results = json::array();
    std::size_t passed = 0;
    std::size_t failed = 0;
    for (const auto& k : build_cases(c)) {
        json r;
        r["id"] = k.id;
        r["description"] = k.description;
        try {
            const auto res = k.run();
            r["expected"] = res.expected;
            r["observed"] = res.observed;
            r["pass"] = res.pass;
            (res.pass ? passed : failed) += 1;
        } catch (const std::exception& e) {
            r["error"] = e.what();
            r["pass"] = false;
            ++failed;
        }
        results.push_back(r);
    }
    o.report["cases"] = results;
    o.report["passed"] = passed;
    o.report["failed"] = failed;
    o.exit = failed == 0 ? Exit::ok : Exit::check_failed;

    std::string csv = "id,pass\n";
    for (const auto& r : results)
        csv += r["id"].get<std::string>() + "," + (r["pass"].get<bool>() ? "true" : "false") + "\n";
    o.csv = csv;
    return o;
}

}  // namespace bipot::cli
