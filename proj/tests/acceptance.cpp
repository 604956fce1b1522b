// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include "bipot/calculus.hpp"
#include "bipot/coulomb.hpp"
#include "bipot/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

using namespace bipot;

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

struct Verdict
{
    bool pass = false;
    std::string detail;
};

Grid line(double lo, double hi, std::size_t n)
{
    return Grid::uniform(1, lo, hi, n);
}

double dot3(const Vector& a, const Vector& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

ConvexFunction quartic()
{
    return fn::power_abs(1, 0, 4.0, 0.25);
}

BipotentialSpec non_strong()
{
    const auto ey = fn::sum({fn::exponential(1, 0, -1.0, 1.0), fn::constant(1, 1.0)});
    return BipotentialSpec::closed_form(1, 1, {BipotentialTerm::product(fn::abs(), ey), BipotentialTerm::pairing(1.0)});
}

std::vector<Probe> probes_for(double mu)
{
    return stratified_probes(CoulombParams(mu), 10000, 20240601, p_grid());
}

Verdict criterion1()
{
    std::size_t total = 0;
    std::size_t mismatches = 0;
    std::size_t in_graph = 0;
    for (double mu : {0.2, 0.5, 1.0}) {
        const CoulombParams prm(mu);
        for (const auto& pr : probes_for(mu)) {
            const Vector x = pr.point.x();
            const Vector y = pr.point.y();
            const ExtReal b = coulomb_bipotential(x, y, prm);
            const bool critical = b.is_finite() && std::abs(b.value() - dot3(x, y)) <= 1e-9;
            const bool graph = classify(pr.point, prm).kind != ContactKind::NotInGraph;
            in_graph += graph;
            mismatches += critical != graph;
            ++total;
        }
    }
    return {total >= 10000 && mismatches == 0,
            std::to_string(total) + " probes, " + std::to_string(in_graph) + " in graph, " + std::to_string(mismatches) + " mismatches"};
}

Verdict criterion2()
{
    const auto ps = p_grid();
    const double p_max = ps.back();
    std::size_t checked = 0;
    std::size_t outside = 0;
    std::size_t mismatches = 0;
    std::string first;
    for (double mu : {0.2, 0.5, 1.0}) {
        const CoulombParams prm(mu);
        for (const auto& pr : probes_for(mu)) {
            const Vector x = pr.point.x();
            const Vector y = pr.point.y();
            const bool in_cone = std::hypot(y[1], y[2]) <= mu * y[0];
            if (in_cone && y[0] > p_max)
                continue;
            double lhs = inf;
            for (double p : ps)
                lhs = std::min(lhs, b_p(p, x, y, prm).to_double());
            const double rhs = coulomb_bipotential(x, y, prm).to_double();
            bool ok;
            if (in_cone) {
                ++checked;
                ok = (std::isinf(lhs) && std::isinf(rhs)) || std::abs(lhs - rhs) <= 1e-9;
            } else {
                ++outside;
                ok = std::isinf(lhs) && std::isinf(rhs);
            }
            if (!ok && mismatches++ == 0)
                first = "mu " + fmt(mu) + " x (" + fmt(x[0]) + "," + fmt(x[1]) + "," + fmt(x[2]) + ") y (" + fmt(y[0]) + "," + fmt(y[1]) + "," +
                        fmt(y[2]) + "): min b_p " + fmt(lhs) + " vs b " + fmt(rhs);
        }
    }
    std::string d = std::to_string(checked) + " in cone, " + std::to_string(outside) + " outside, " + std::to_string(mismatches) + " mismatches";
    if (!first.empty())
        d += "; first: " + first;
    return {mismatches == 0, d};
}

Verdict criterion3()
{
    Theorem31Options o;
    o.tol = 0.01;
    const Grid g = line(-8, 8, 801);
    std::string d;
    bool pass = true;

    const auto q = check_theorem31(quartic(), fn::half_square(), g, g, o);
    pass = pass && q.consistent && !q.strong && !q.ii_prime.holds;
    d += "quartic/square strong " + std::to_string(q.strong) + " ii' " + std::to_string(q.ii_prime.holds);

    const auto s = check_theorem31(fn::half_square(), fn::half_square(), g, g, o);
    pass = pass && s.consistent && s.strong && s.ii_prime.holds;
    d += "; square/square strong " + std::to_string(s.strong) + " ii' " + std::to_string(s.ii_prime.holds);

    const CoulombParams mu(0.5);
    for (double p : {0.5, 1.0, 4.0}) {
        Theorem31Options oc = o;
        oc.strong_tol = 0.02;
        oc.strong_grid_x = coulomb_grid_x(11);
        const auto t = Grid::uniform_axis(-mu.mu * p, mu.mu * p, 41);
        oc.strong_grid_y = Grid(std::vector<std::vector<double>>{{0.5 * p, p, 1.5 * p}, t, t});
        const auto r = check_theorem31(potential_family(p, Potential::Phi, mu), potential_family(p, Potential::PsiStar, mu), coulomb_grid_x(41),
                                       coulomb_grid_y(p, mu, 801), oc);
        pass = pass && r.consistent && r.strong && r.ii_prime.holds && r.ii_second.holds && r.ii_prime.checked > 0 && r.ii_second.checked > 0;
        d += "; coulomb p=" + fmt(p) + " strong " + std::to_string(r.strong) + " ii' " + fmt(r.ii_prime.worst_diff) + " ii'' " +
             fmt(r.ii_second.worst_diff);
    }
    return {pass, d};
}

Verdict criterion4()
{
    const Grid gx = line(-2, 2, 41);
    const Grid gy = line(0, 40, 4001);
    const auto b = non_strong();
    const auto s = check_strong(b, gx, gy, 1e-6);
    bool pass = !s.strong() && !s.b2s.witnesses.empty();
    std::string d;
    for (double x : {0.5, 1.0, 2.0}) {
        const auto k = *gx.find_node(Vector{x});
        const double v = s.b2s.inf_values[k];
        pass = pass && std::abs(v - x) <= 0.01 && s.b2s.classes[k] == SliceClass::Violation;
        d += "inf at " + fmt(x) + " = " + fmt(v) + "; ";
    }
    const auto a = check_axioms(b, gx, gy, 1e-6);
    pass = pass && a.passed();
    d += "axioms " + std::to_string(a.passed()) + ", B2S witnesses " + std::to_string(s.b2s.witnesses.size());
    return {pass, d};
}

Verdict criterion5()
{
    const Grid g = line(-2, 2, 401);
    const auto b = BipotentialSpec::max_of_two(BipotentialSpec::separable(quartic()), BipotentialSpec::separable(fn::half_square()));
    const auto pts = critical_points(critical_set(b, g, g, 1e-9), g, g);
    const double h = 4.0 / 400.0;
    std::size_t matched = 0;
    std::size_t stray = 0;
    for (double t : {-1.0, 0.0, 1.0}) {
        bool found = false;
        for (const auto& [x, y] : pts)
            found = found || (std::abs(x[0] - t) <= h && std::abs(y[0] - t) <= h);
        matched += found;
    }
    for (const auto& [x, y] : pts) {
        bool near = false;
        for (double t : {-1.0, 0.0, 1.0})
            near = near || (std::abs(x[0] - t) <= h && std::abs(y[0] - t) <= h);
        stray += !near;
    }
    return {matched == 3 && stray == 0, std::to_string(pts.size()) + " critical nodes, " + std::to_string(matched) + "/3 targets, " + std::to_string(stray) + " stray"};
}

GraphSample m_p(const CoulombParams& mu, double p)
{
    SampleDensity d;
    d.include_anchor = false;
    auto m = sample_graph(mu, Branch::Sticking, d, {p});
    const auto s = sample_graph(mu, Branch::Sliding, d, {p});
    for (const auto& [x, y] : s.pairs())
        m.add(x, y);
    return m;
}

Verdict criterion6()
{
    const CoulombParams mu(0.5);
    const double p = 1.0;
    const auto m = m_p(mu, p);
    const auto phi = rockafellar_potential(m, Vector{0.0, 0.0, 0.0}, 0.0, 3);
    const auto psi = rockafellar_dual_potential(m, Vector{p, 0.25, 0.0}, 0.0, 3);
    const auto phi_exact = potential_family(p, Potential::Phi, mu);
    const auto psi_exact = potential_family(p, Potential::Psi, mu);

    double worst_phi = 0.0;
    double worst_psi = 0.0;
    bool distinct = true;
    std::size_t off_contact = 0;
    for (int k = 0; k < 20; ++k) {
        const double a = 2.0 * M_PI * k / 20.0 + 0.1;
        const double r = 0.1 * (k % 7) + 0.2;
        const double xn = 0.1 * (k % 13 - 6);
        const Vector x{xn, 2.0 * r * std::cos(a), 2.0 * r * std::sin(a)};
        worst_phi = std::max(worst_phi, std::abs(phi(x).to_double() - evaluate(phi_exact, x).value()));
        const Vector y{p, 0.45 * r * std::cos(a), 0.45 * r * std::sin(a)};
        worst_psi = std::max(worst_psi, std::abs(psi(y).to_double() - evaluate(psi_exact, y).value()));
        if (xn != 0.0) {
            ++off_contact;
            distinct = distinct && phi(x).is_finite() && psi.conjugate(x).is_infinite();
        }
    }
    return {m.size() == 200 && worst_phi <= 0.05 && worst_psi <= 0.05 && distinct && off_contact > 0,
            std::to_string(m.size()) + " pairs, |phi_rec - phi_p| <= " + fmt(worst_phi) + ", |psi_rec - psi_p| <= " + fmt(worst_psi) + ", " +
                std::to_string(off_contact) + " probes off contact distinct " + std::to_string(distinct)};
}

Verdict criterion7()
{
    const CoulombParams mu(0.5);
    const auto m = m_p(mu, 1.0);
    const auto base = is_cyclically_monotone(m, 3);

    SampleDensity d;
    const auto other = sample_graph(mu, Branch::Sticking, d, {0.5});
    const auto ext = probe_extensions(m, other.pairs(), 3);
    std::size_t kept = 0;
    for (const auto& e : ext)
        kept += e.preserves;

    const auto full = sample_graph(mu, Branch::All, d, p_grid(4.0, 9));
    const auto mono = is_monotone(full);
    const bool witnessed = !mono.monotone && mono.witness.has_value();
    return {base.cyclically_monotone && kept == ext.size() && !ext.empty() && witnessed,
            "M_1 cyclic " + std::to_string(base.cyclically_monotone) + ", " + std::to_string(kept) + "/" + std::to_string(ext.size()) +
                " extensions by M_0.5 keep it, full sample monotone " + std::to_string(mono.monotone) + " (worst " + fmt(mono.worst) + ")"};
}

Verdict criterion8()
{
    const Grid g = line(-3, 3, 1201);
    const Grid sg = line(-2, 2, 41);
    double worst = 0.0;
    std::size_t cases = 0;
    bool pass = true;
    for (const auto& f : {fn::abs(), fn::scaled_norm(1, {0}, 0.5)}) {
        const auto hyp = check_strong(BipotentialSpec::max_of_two(BipotentialSpec::separable(f), BipotentialSpec::separable(f)), sg, sg, 1e-9);
        for (double l : {0.25, 0.5, 0.75})
            for (int k = 0; k < 9; ++k) {
                const auto r = check_corollary33(f, f, l, Vector{-1.0 + 0.25 * k}, 0.02, g, hyp);
                worst = std::max(worst, r.distance);
                pass = pass && r.equal && r.distance <= 0.02;
                ++cases;
            }
    }
    return {pass && cases == 54, std::to_string(cases) + " probes, worst Hausdorff " + fmt(worst)};
}

Verdict criterion9()
{
    bool pass = true;
    std::string d;

    // biconjugation
    struct Entry
    {
        ConvexFunction f;
        Grid primal;
        Grid dual;
    };
    const Grid p1 = line(-2, 2, 401);
    const Grid d1 = line(-8, 8, 1601);
    const Grid p2 = Grid::uniform(2, -2, 2, 81);
    const Grid d2 = Grid::uniform(2, -3, 3, 81);
    const std::vector<Entry> lib{
        {fn::half_square(), p1, d1},
        {quartic(), p1, d1},
        {fn::abs(), p1, d1},
        {fn::exponential(1, 0, 1.0, 1.0), p1, d1},
        {fn::indicator(1, {0}, BoxSet{{-1.0}, {0.5}}), p1, d1},
        {fn::sum({fn::abs(), fn::half_square()}), p1, d1},
        {fn::affine(1, {0}, {0.7}, -0.2), p1, d1},
        {fn::quadratic(2, {0, 1}, {1.0, 0.3, 0.3, 0.5}), p2, d2},
        {fn::scaled_norm(2, {0, 1}, 0.5), p2, d2},
        {fn::sum({fn::scaled_norm(2, {1}, 0.5), fn::indicator(2, {0}, BoxSet{{-1.0}, {0.0}})}), p2, d2},
    };
    double worst_ratio = 0.0;
    std::size_t compared = 0;
    for (const auto& e : lib) {
        const auto fv = sample_values(e.f, e.primal);
        const auto c = conjugate_values(e.primal, fv, e.dual);
        const auto cc = conjugate_values(e.dual, c.values, e.primal);
        std::size_t here = 0;
        for (std::size_t i = 0; i < e.primal.size(); ++i) {
            if (std::isinf(fv[i]) || e.primal.on_boundary(i) || e.dual.on_boundary(cc.argmax[i]))
                continue;
            const double bound = 2.0 * grid_modulus(e.primal, e.dual, e.primal.node(i));
            worst_ratio = std::max(worst_ratio, std::abs(cc.values[i] - fv[i]) / bound);
            ++here;
        }
        pass = pass && here > 0;
        compared += here;
    }
    pass = pass && worst_ratio <= 1.0;
    d += "biconjugate error / (2 modulus) <= " + fmt(worst_ratio) + " over " + std::to_string(compared) + " nodes";

    // fast vs brute force
    double worst_fb = 0.0;
    for (int t = 0; t < 12; ++t) {
        const Grid primal = line(-3.0 + 0.2 * t, 4.0, 501 + 3 * t);
        const Grid dual = line(-5.0, 5.0 - 0.3 * t, 401 + t);
        std::vector<double> v(primal.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double x = primal.axis(0)[i];
            v[i] = (i % 17 == 5 && t % 2) ? inf : std::sin(3.0 * x + t) + 0.1 * t * x * x;
        }
        const auto a = conjugate_values(primal, v, dual, ConjugateMethod::Fast);
        const auto b = conjugate_values(primal, v, dual, ConjugateMethod::BruteForce);
        for (std::size_t j = 0; j < dual.size(); ++j)
            worst_fb = std::max(worst_fb, std::abs(a.values[j] - b.values[j]));
    }
    pass = pass && worst_fb <= 1e-12;
    d += "; fast vs brute " + fmt(worst_fb);

    // (f box g)* = f* + g*
    const Grid g = line(-4, 4, 801);
    const Grid gd = line(-3, 3, 601);
    double worst_ic = 0.0;
    double ic_bound = 0.0;
    const std::vector<std::pair<ConvexFunction, ConvexFunction>> pairs{
        {fn::abs(), fn::half_square()},
        {quartic(), fn::half_square()},
        {fn::indicator(1, {0}, BoxSet{{0.0}, {1.0}}), fn::abs()},
    };
    for (const auto& [f, h] : pairs) {
        const auto conv = inf_convolution_values(f, h, g);
        const auto lhs = conjugate_values(g, conv, gd);
        const auto fs = *closed_form_conjugate(f);
        const auto hs = *closed_form_conjugate(h);
        for (std::size_t j = 0; j < gd.size(); ++j) {
            if (g.on_boundary(lhs.argmax[j]))
                continue;
            const Vector y = gd.node(j);
            const double rhs = evaluate(fs, y).to_double() + evaluate(hs, y).to_double();
            if (std::isinf(rhs))
                continue;
            const double bound = 2.0 * grid_modulus(g, gd, y);
            ic_bound = bound;
            worst_ic = std::max(worst_ic, std::abs(lhs.values[j] - rhs));
            pass = pass && std::abs(lhs.values[j] - rhs) <= bound;
        }
    }
    d += "; inf-convolution vs conjugate sum " + fmt(worst_ic) + " (bound " + fmt(ic_bound) + ")";

    // f box chi_{0} = f
    const auto chi0 = fn::indicator(1, {0}, SingletonSet{{0.0}});
    bool exact = true;
    for (const auto& f : {fn::half_square(), quartic(), fn::abs(), fn::indicator(1, {0}, BoxSet{{-1.0}, {0.5}})}) {
        const auto h = inf_convolution_values(f, chi0, g);
        const auto fv = sample_values(f, g);
        exact = exact && h == fv;
    }
    pass = pass && exact;
    d += "; f box chi0 exact " + std::to_string(exact);
    return {pass, d};
}

std::string run_capture(const std::string& cmd, int& status)
{
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        out.append(buf, n);
    status = pclose(p);
    return out;
}

Verdict criterion10()
{
    const std::string cli = BIPOT_CLI_PATH;
    int s1 = 0;
    int s2 = 0;
    const auto a = run_capture("'" + cli + "' paper-suite --seed 7 --workers 1", s1);
    const auto b = run_capture("'" + cli + "' paper-suite --seed 7 --workers 4", s2);
    return {s1 == 0 && s2 == 0 && !a.empty() && a == b,
            std::to_string(a.size()) + " bytes, identical " + std::to_string(a == b) + ", exit " + std::to_string(s1) + "/" + std::to_string(s2)};
}

}  // namespace

int main(int argc, char** argv)
{
    struct Criterion
    {
        int id;
        double limit_s;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> all{
        {1, 5, criterion1},   {2, 5, criterion2},   {3, 30, criterion3}, {4, 5, criterion4},  {5, 10, criterion5},
        {6, 60, criterion6},  {7, 60, criterion7},  {8, 10, criterion8}, {9, 30, criterion9}, {10, 0, criterion10},
    };
    int only = argc > 1 ? std::stoi(argv[1]) : 0;
    int failures = 0;
    for (const auto& c : all) {
        if (only && c.id != only)
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.limit_s <= 0 || secs < c.limit_s;
        const bool pass = v.pass && in_time;
        failures += !pass;
        std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " (" << v.detail << "; " << fmt(secs) << " s"
                  << (in_time ? "" : ", over the time limit") << ")" << std::endl;
    }
    return failures;
}
