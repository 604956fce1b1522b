#include "cli.hpp"

#include "bipot/calculus.hpp"
#include "bipot/parallel.hpp"

#include <cmath>
#include <sstream>

namespace bipot::cli
{

namespace
{

json vec(const Vector& v)
{
    return io::to_json(v);
}

json real(double v)
{
    return io::real_to_json(v);
}

const std::string& input(const RunConfig& c, const std::string& key)
{
    auto it = c.inputs.find(key);
    if (it == c.inputs.end() || it->second.empty())
        throw io::InputError("--" + key, "required input file missing");
    return it->second;
}

ConvexFunction load_function(const RunConfig& c, const std::string& key)
{
    const auto& path = input(c, key);
    return io::function_from_json(io::read_file(path), path + "#");
}

json convexity_json(const ConvexityReport& r, const Grid& g)
{
    json j;
    j["convex"] = r.convex;
    j["worst_violation"] = real(r.worst_violation);
    if (r.witness) {
        json w = json::array();
        for (std::size_t k : *r.witness)
            w.push_back(vec(g.node(k)));
        j["witness"] = w;
    }
    return j;
}

json identity_json(const ConjugateIdentityResult& r, const Grid& dual)
{
    json j;
    j["holds"] = r.holds;
    j["checked"] = r.checked;
    j["excluded_boundary"] = r.excluded_boundary;
    j["worst_diff"] = real(r.worst_diff);
    if (r.witness) {
        j["witness"] = {{"lambda", r.witness->first}, {"point", vec(dual.node(r.witness->second))}, {"lhs", real(r.witness_lhs)}, {"rhs", real(r.witness_rhs)}};
    }
    return j;
}

json strong_side_json(const StrongSide& s, const Grid& fixed, const Grid& free)
{
    json j;
    j["holds"] = s.holds;
    j["zero"] = s.zero;
    j["infinite"] = s.infinite;
    j["violations"] = s.violations;
    j["threshold_infinite"] = s.threshold_infinite;
    json w = json::array();
    for (std::size_t k = 0; k < s.witnesses.size() && k < 20; ++k) {
        const auto& v = s.witnesses[k];
        w.push_back({{"fixed", vec(fixed.node(v.fixed_node))}, {"argmin", vec(free.node(v.argmin_node))}, {"inf", real(v.inf_value)}});
    }
    j["witnesses"] = w;
    return j;
}

json monotone_json(const MonotoneVerdict& v)
{
    json j;
    j["monotone"] = v.monotone;
    j["worst"] = real(v.worst);
    j["tol"] = v.tol;
    if (v.witness)
        j["witness"] = json::array({v.witness->first, v.witness->second});
    return j;
}

json cycle_json(const CycleVerdict& v)
{
    json j;
    j["cyclically_monotone"] = v.cyclically_monotone;
    j["max_cycle_value"] = real(v.max_cycle_value);
    j["verified_m"] = v.verified_m;
    j["relaxations"] = v.relaxations;
    j["tol"] = v.tol;
    json w = json::array();
    for (std::size_t k : v.witness_cycle)
        w.push_back(k);
    j["witness_cycle"] = w;
    return j;
}

json interval_json(const Interval1D& i)
{
    if (i.empty)
        return json{{"empty", true}};
    return json{{"lo", real(i.lo)}, {"hi", real(i.hi)}};
}

json implicit_json(const ImplicitConvexityReport& r)
{
    json j;
    j["trials"] = r.trials;
    j["verified"] = r.verified;
    j["vacuous"] = r.vacuous;
    j["unverified"] = r.unverified;
    j["worst_margin"] = real(r.worst_margin);
    json u = json::array();
    for (std::size_t k = 0; k < r.unverified_cases.size() && k < 10; ++k) {
        const auto& o = r.unverified_cases[k];
        u.push_back({{"lambda1", o.trial.lambda1},
                     {"lambda2", o.trial.lambda2},
                     {"z1", vec(o.trial.z1)},
                     {"z2", vec(o.trial.z2)},
                     {"fixed", vec(o.trial.fixed)},
                     {"alpha", o.trial.alpha},
                     {"rhs", real(o.rhs)},
                     {"margin", real(o.margin)}});
    }
    j["unverified_cases"] = u;
    return j;
}

json mismatch_json(const ProbeMismatch& m)
{
    return {{"stratum", to_string(m.probe.stratum)}, {"point", io::to_json(m.probe.point)}, {"lhs", io::ext_to_json(m.lhs)}, {"rhs", io::ext_to_json(m.rhs)}, {"detail", m.detail}};
}

Outcome start(const RunConfig& c, double tol)
{
    Outcome o;
    o.report["config"] = config_json(c, tol);
    return o;
}

}  // namespace

json config_json(const RunConfig& c, double resolved_tol)
{
    json j;
    j["subcommand"] = c.subcommand;
    if (!c.mode.empty())
        j["mode"] = c.mode;
    json in = json::object();
    for (const auto& [k, v] : c.inputs)
        in[k] = v;
    j["inputs"] = in;
    j["grid_r"] = c.grid_r;
    j["grid_n"] = c.grid_n;
    j["tol"] = resolved_tol;
    j["lambda_n"] = c.lambda_n;
    j["p_max"] = c.p_max;
    j["p_n"] = c.p_n;
    j["m_max"] = c.m_max;
    j["seed"] = c.seed;
    j["format"] = c.format;
    j["mu"] = c.mu;
    j["lambda"] = c.lambda;
    j["x"] = c.x;
    j["y"] = c.y;
    j["method"] = c.method;
    j["branch"] = c.branch;
    j["probes"] = c.probes;
    j["trials"] = c.trials;
    j["angles"] = c.angles;
    j["phi0"] = c.phi0;
    return j;
}

Vector parse_point(const std::string& text, const std::string& flag)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (tok.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw io::InputError(flag, "cannot parse \"" + tok + "\" as a number");
        }
    }
    if (v.empty() || v.size() > 3)
        throw io::InputError(flag, "expected 1 to 3 comma-separated numbers");
    for (double x : v)
        if (!std::isfinite(x))
            throw io::InputError(flag, "components must be finite");
    return Vector(std::span<const double>(v));
}

std::vector<Vector> parse_points(const std::string& text, const std::string& flag)
{
    std::vector<Vector> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';'))
        if (!tok.empty())
            out.push_back(parse_point(tok, flag));
    return out;
}

Grid grid_for(const RunConfig& c, std::size_t dim)
{
    const std::size_t n = c.grid_n ? c.grid_n : default_nodes_per_axis(dim);
    if (!(c.grid_r > 0.0) || !std::isfinite(c.grid_r))
        throw io::InputError("--grid-r", "must be finite and > 0");
    if (n < 2)
        throw io::InputError("--grid-n", "need at least 2 nodes per axis");
    return Grid::uniform(dim, -c.grid_r, c.grid_r, n);
}

std::string flatten_csv(const json& report)
{
    std::ostringstream os;
    os << "path,value\n";
    std::function<void(const json&, const std::string&)> walk = [&](const json& j, const std::string& path) {
        if (j.is_object()) {
            for (auto it = j.begin(); it != j.end(); ++it)
                walk(it.value(), path + "/" + it.key());
        } else if (j.is_array()) {
            for (std::size_t i = 0; i < j.size(); ++i)
                walk(j[i], path + "/" + std::to_string(i));
        } else {
            std::string v = j.is_string() ? j.get<std::string>() : j.dump();
            if (v.find_first_of(",\"\n") != std::string::npos) {
                std::string q = "\"";
                for (char ch : v)
                    q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                v = q + "\"";
            }
            os << path << ',' << v << '\n';
        }
    };
    walk(report, "");
    return os.str();
}

// ---------------------------------------------------------------------------

Outcome run_conjugate(const RunConfig& c)
{
    const auto f = load_function(c, "f");
    const Grid g = grid_for(c, f.dim());
    if (c.method != "fast" && c.method != "brute")
        throw io::InputError("--method", "expected fast or brute");
    Outcome o = start(c, 0.0);
    const auto s = conjugate_sampled(f, g, g, c.method == "fast" ? ConjugateMethod::Fast : ConjugateMethod::BruteForce);
    o.report["function"] = io::to_json(f);
    o.report["conjugate"] = io::to_json(fn::sampled(s.grid, s.values));
    o.csv = to_csv(s.grid, s.values);
    return o;
}

Outcome run_infconv(const RunConfig& c)
{
    const auto f = load_function(c, "f");
    const auto g = load_function(c, "g");
    if (f.dim() != g.dim())
        throw io::InputError("--g", "dimension differs from --f");
    const Grid grid = grid_for(c, f.dim());
    Outcome o = start(c, 0.0);
    const auto v = inf_convolution_values(f, g, grid);
    o.report["f"] = io::to_json(f);
    o.report["g"] = io::to_json(g);
    o.report["inf_convolution"] = io::to_json(fn::sampled(grid, v));
    o.csv = to_csv(grid, v);
    return o;
}

Outcome run_subdiff(const RunConfig& c)
{
    const auto f = load_function(c, "f");
    const auto pts = parse_points(c.x, "--x");
    if (pts.empty())
        throw io::InputError("--x", "at least one point required");
    const double tol = c.tol.value_or(0.0);
    Outcome o = start(c, tol);
    json res = json::array();
    for (const auto& x : pts) {
        if (x.size() != f.dim())
            throw io::InputError("--x", "point dimension differs from the function");
        json r;
        r["x"] = vec(x);
        const ExtReal fx = evaluate(f, x);
        r["f"] = io::ext_to_json(fx);
        if (fx.is_infinite()) {
            r["in_domain"] = false;
        } else {
            const auto e = subdifferential(f, x, tol);
            r["in_domain"] = true;
            r["empty"] = e.empty;
            if (e.dim == 1) {
                r["lo"] = real(e.lo);
                r["hi"] = real(e.hi);
            }
            json sl = json::array();
            for (const auto& s : e.slopes)
                sl.push_back(vec(s));
            r["slopes"] = sl;
            json rs = json::array();
            for (double v : e.residuals)
                rs.push_back(real(v));
            r["residuals"] = rs;
        }
        res.push_back(r);
    }
    o.report["results"] = res;
    return o;
}

Outcome run_graph_check(const RunConfig& c)
{
    const auto& path = input(c, "graph");
    const auto m = io::graph_from_json(io::read_file(path), path + "#");
    const std::string mode = c.mode.empty() ? "all" : c.mode;
    if (mode != "all" && mode != "monotone" && mode != "cyclic" && mode != "rockafellar")
        throw io::InputError("--mode", "expected monotone, cyclic, rockafellar or all");
    const double tol = c.tol.value_or(-1.0);
    Outcome o = start(c, tol < 0 ? cycle_tolerance(m) : tol);
    o.report["pairs"] = m.size();
    bool pass = true;
    if (mode == "all" || mode == "monotone") {
        const auto v = is_monotone(m, tol);
        o.report["monotone"] = monotone_json(v);
        pass = pass && v.monotone;
    }
    if (mode == "all" || mode == "cyclic") {
        const auto v = is_cyclically_monotone(m, c.m_max, default_cycle_budget, tol);
        o.report["cyclic"] = cycle_json(v);
        pass = pass && v.cyclically_monotone;
    }
    if ((mode == "all" || mode == "rockafellar") && m.size() > 0) {
        const Vector x0 = m.x(0);
        const Vector y0 = m.y(0);
        const auto phi = rockafellar_potential(m, x0, c.phi0, c.m_max);
        const auto psi = rockafellar_dual_potential(m, y0, 0.0, c.m_max);
        auto xs = c.x.empty() ? graph_domain(m) : parse_points(c.x, "--x");
        auto ys = c.y.empty() ? graph_image(m) : parse_points(c.y, "--y");
        json r;
        r["x0"] = vec(x0);
        r["phi0"] = c.phi0;
        r["y0"] = vec(y0);
        json pv = json::array();
        for (const auto& x : xs)
            pv.push_back({{"x", vec(x)}, {"phi", io::ext_to_json(phi(x))}, {"psi_star", io::ext_to_json(psi.conjugate(x))}});
        r["phi"] = pv;
        json qv = json::array();
        for (const auto& y : ys)
            qv.push_back({{"y", vec(y)}, {"psi", io::ext_to_json(psi(y))}, {"phi_star", io::ext_to_json(phi.conjugate(y))}});
        r["psi"] = qv;
        o.report["rockafellar"] = r;
    }
    o.report["pass"] = pass;
    o.exit = pass ? Exit::ok : Exit::check_failed;
    return o;
}

Outcome run_bipot_check(const RunConfig& c)
{
    const auto& path = input(c, "spec");
    const auto b = io::bipotential_from_json(io::read_file(path), path + "#");
    const std::string mode = c.mode.empty() ? "both" : c.mode;
    if (mode != "both" && mode != "axioms" && mode != "strong")
        throw io::InputError("--mode", "expected axioms, strong or both");
    const double tol = c.tol.value_or(1e-6);
    const Grid gx = grid_for(c, b.dim_x());
    const Grid gy = grid_for(c, b.dim_y());
    Outcome o = start(c, tol);
    o.report["kind"] = b.kind_name();
    bool pass = true;
    if (mode != "strong") {
        const auto a = check_axioms(b, gx, gy, tol);
        json j;
        j["passed"] = a.passed();
        j["a_convexity"] = {{"ok", a.a_ok()}, {"in_x", convexity_json(a.convex_in_x, gx)}, {"in_y", convexity_json(a.convex_in_y, gy)}};
        json bj = {{"ok", a.b_ok()}, {"gap_min", io::ext_to_json(a.fenchel_gap_min)}};
        if (a.fenchel_gap_witness)
            bj["witness"] = {{"x", vec(gx.node(a.fenchel_gap_witness->first))}, {"y", vec(gy.node(a.fenchel_gap_witness->second))}};
        j["b_fenchel"] = bj;
        json fails = json::array();
        for (std::size_t k = 0; k < a.equivalence_failures.size() && k < 20; ++k) {
            const auto& f = a.equivalence_failures[k];
            fails.push_back({{"x", vec(gx.node(f.x_node))}, {"y", vec(gy.node(f.y_node))}, {"a", f.a}, {"b", f.b}, {"c", f.c}});
        }
        j["c_equivalence"] = {{"ok", a.c_ok()},
                              {"failures", a.equivalence_failure_count},
                              {"boundary_inconclusive", a.boundary_inconclusive},
                              {"grid_snap_inconclusive", a.grid_snap_inconclusive},
                              {"first_failures", fails}};
        j["critical_count"] = a.critical_count;
        o.report["axioms"] = j;
        pass = pass && a.passed();
    }
    if (mode != "axioms") {
        const auto s = check_strong(b, gx, gy, tol);
        json j;
        j["strong"] = s.strong();
        j["used_threshold"] = s.used_threshold;
        j["b1s"] = strong_side_json(s.b1s, gy, gx);
        j["b2s"] = strong_side_json(s.b2s, gx, gy);
        o.report["strong"] = j;
        pass = pass && s.strong();
    }
    o.report["pass"] = pass;
    o.exit = pass ? Exit::ok : Exit::check_failed;
    return o;
}

Outcome run_thm31(const RunConfig& c)
{
    const auto f1 = load_function(c, "phi1");
    const auto f2 = load_function(c, "phi2");
    if (f1.dim() != f2.dim())
        throw io::InputError("--phi2", "dimension differs from --phi1");
    if (c.lambda_n < 2)
        throw io::InputError("--lambda-n", "need at least 2 lambda values");
    const Grid g = grid_for(c, f1.dim());
    Theorem31Options opt;
    opt.lambdas = lambda_grid(c.lambda_n);
    opt.tol = c.tol.value_or(0.01);
    Outcome o = start(c, opt.tol);
    const auto r = check_theorem31(f1, f2, g, g, opt);
    o.report["ii_prime"] = identity_json(r.ii_prime, g);
    o.report["ii_second"] = identity_json(r.ii_second, g);
    o.report["strong_detail"] = {{"b1s", strong_side_json(r.strong_report.b1s, g, g)}, {"b2s", strong_side_json(r.strong_report.b2s, g, g)}};
    o.report["strong"] = r.strong;
    o.report["consistent"] = r.consistent;
    o.report["verdict"] = std::string("consistent: ") + (r.consistent ? "true" : "false") + ", strong: " + (r.strong ? "true" : "false");
    o.exit = r.consistent ? Exit::ok : Exit::check_failed;
    return o;
}

Outcome run_cor33(const RunConfig& c)
{
    const auto f1 = load_function(c, "phi1");
    const auto f2 = load_function(c, "phi2");
    if (f1.dim() != 1 || f2.dim() != 1)
        throw io::InputError("--phi1", "the corollary check is one-dimensional");
    const auto xs = parse_points(c.x.empty() ? std::string("0") : c.x, "--x");
    if (!(c.lambda > 0.0 && c.lambda < 1.0))
        throw io::InputError("--lambda", "must lie in (0, 1)");
    const double tol = c.tol.value_or(0.02);
    const Grid g = grid_for(c, 1);
    Outcome o = start(c, tol);
    const auto hyp = check_strong(BipotentialSpec::max_of_two(BipotentialSpec::separable(f1), BipotentialSpec::separable(f2)), g, g, 1e-6);
    o.report["hypothesis_strong"] = hyp.strong();
    if (!hyp.strong()) {
        o.report["error"] = "corollary hypothesis unmet";
        o.report["pass"] = false;
        o.exit = Exit::check_failed;
        return o;
    }
    bool pass = true;
    json res = json::array();
    for (const auto& x : xs) {
        const auto r = check_corollary33(f1, f2, c.lambda, x, tol, g, hyp);
        res.push_back({{"x", vec(x)}, {"lhs", interval_json(r.lhs)}, {"rhs", interval_json(r.rhs)}, {"distance", real(r.distance)}, {"equal", r.equal}});
        pass = pass && r.equal;
    }
    o.report["results"] = res;
    o.report["pass"] = pass;
    o.exit = pass ? Exit::ok : Exit::check_failed;
    return o;
}

Outcome run_cover_check(const RunConfig& c)
{
    const auto& path = input(c, "cover");
    const auto cover = io::cover_from_json(io::read_file(path), path + "#");
    const std::string mode = c.mode.empty() ? "all" : c.mode;
    if (mode != "all" && mode != "union" && mode != "implicit")
        throw io::InputError("--mode", "expected union, implicit or all");
    if (mode == "union" && !cover.target_graph())
        throw io::InputError(path + "#/target", "union check needs a target graph");
    const double tol = c.tol.value_or(1e-9);
    const Grid gx = grid_for(c, cover.dim_x());
    const Grid gy = grid_for(c, cover.dim_y());
    Outcome o = start(c, tol);
    o.report["members"] = cover.size();
    bool pass = true;
    if (mode != "union") {
        o.report["implicit_in_x"] = implicit_json(check_implicit_convexity(cover, CoverArgument::InX, c.trials, gx, gy, tol, c.seed));
        o.report["implicit_in_y"] = implicit_json(check_implicit_convexity(cover, CoverArgument::InY, c.trials, gx, gy, tol, c.seed + 1));
    }
    if (mode != "implicit" && cover.target_graph()) {
        const auto u = check_cover_union(cover, gx, gy, tol);
        json j;
        j["holds"] = u.holds();
        j["target_in_union"] = u.target_in_union();
        j["union_in_target"] = u.union_in_target();
        j["missing"] = u.missing.size();
        json miss = json::array();
        for (std::size_t k = 0; k < u.missing.size() && k < 20; ++k)
            miss.push_back({{"x", vec(cover.target_graph()->x(u.missing[k]))}, {"y", vec(cover.target_graph()->y(u.missing[k]))}});
        j["first_missing"] = miss;
        j["extra"] = u.extra_count;
        json extra = json::array();
        for (std::size_t k = 0; k < u.extra.size() && k < 20; ++k)
            extra.push_back({{"x", vec(u.extra[k].first)}, {"y", vec(u.extra[k].second)}});
        j["first_extra"] = extra;
        j["critical_pairs_checked"] = u.critical_pairs_checked;
        o.report["union"] = j;
        pass = pass && u.holds();
    }
    o.report["pass"] = pass;
    o.exit = pass ? Exit::ok : Exit::check_failed;
    return o;
}

Outcome run_coulomb(const RunConfig& c)
{
    const CoulombParams params = [&] {
        try {
            return CoulombParams(c.mu);
        } catch (const std::invalid_argument& e) {
            throw io::InputError("--mu", e.what());
        }
    }();
    const auto ps = [&] {
        try {
            return p_grid(c.p_max, c.p_n);
        } catch (const std::invalid_argument& e) {
            throw io::InputError("--p-max/--p-n", e.what());
        }
    }();

    if (c.mode == "classify") {
        Outcome o = start(c, c.tol.value_or(1e-9));
        ContactPoint pt;
        auto it = c.inputs.find("point");
        if (it != c.inputs.end() && !it->second.empty()) {
            pt = io::contact_from_json(io::read_file(it->second), it->second + "#");
        } else {
            const Vector x = parse_point(c.x, "--x");
            const Vector y = parse_point(c.y, "--y");
            if (x.size() != 3 || y.size() != 3)
                throw io::InputError("--x/--y", "contact points are 3-D (n, t1, t2)");
            pt = ContactPoint::from_vectors(x, y);
        }
        const auto cls = classify(pt, params, c.tol.value_or(1e-9));
        o.report["point"] = io::to_json(pt);
        o.report["kind"] = to_string(cls.kind);
        if (cls.kind == ContactKind::Sliding)
            o.report["slip_direction"] = json::array({cls.slip_direction[0], cls.slip_direction[1]});
        o.report["sliding_limit"] = cls.sliding_limit;
        o.report["b"] = io::ext_to_json(coulomb_bipotential(pt.x(), pt.y(), params));
        o.report["pairing"] = pairing(pt.x(), pt.y());
        return o;
    }
    if (c.mode == "sample") {
        Outcome o = start(c, 0.0);
        Branch br = Branch::All;
        if (c.branch == "separation")
            br = Branch::Separation;
        else if (c.branch == "sticking")
            br = Branch::Sticking;
        else if (c.branch == "sliding")
            br = Branch::Sliding;
        else if (c.branch != "all")
            throw io::InputError("--branch", "expected separation, sticking, sliding or all");
        SampleDensity d;
        d.angles = c.angles;
        const auto m = sample_graph(params, br, d, ps);
        o.report["graph"] = io::to_json(m);
        std::ostringstream os;
        os << "x1,x2,x3,y1,y2,y3\n";
        os.precision(17);
        for (const auto& [x, y] : m.pairs())
            os << x[0] << ',' << x[1] << ',' << x[2] << ',' << y[0] << ',' << y[1] << ',' << y[2] << '\n';
        o.csv = os.str();
        return o;
    }
    if (c.mode == "verify") {
        const double tol = c.tol.value_or(1e-9);
        Outcome o = start(c, tol);
        const auto r = verify_coulomb(params, c.probes, c.seed, ps, tol);
        json crit;
        crit["probes"] = r.probes;
        crit["in_graph"] = r.in_graph;
        crit["critical"] = r.critical;
        crit["sliding_limit"] = r.sliding_limit;
        crit["mismatches"] = r.critical_mismatches.size();
        json cm = json::array();
        for (std::size_t k = 0; k < r.critical_mismatches.size() && k < 20; ++k)
            cm.push_back(mismatch_json(r.critical_mismatches[k]));
        crit["first_mismatches"] = cm;
        crit["holds"] = r.critical_ok();
        o.report["critical_set"] = crit;
        json mx;
        mx["checked"] = r.max_identity_checked;
        mx["mismatches"] = r.max_identity_mismatches.size();
        mx["holds"] = r.max_identity_ok();
        o.report["max_identity"] = mx;
        json cv;
        cv["checked"] = r.cover_checked;
        cv["outside_cone"] = r.cover_outside_cone;
        cv["truncated"] = r.cover_truncated;
        cv["mismatches"] = r.cover_mismatch_count;
        json cvm = json::array();
        for (std::size_t k = 0; k < r.cover_mismatches.size() && k < 20; ++k)
            cvm.push_back(mismatch_json(r.cover_mismatches[k]));
        cv["first_mismatches"] = cvm;
        cv["holds"] = r.cover_ok();
        o.report["cover_recovery"] = cv;
        const bool pass = r.critical_ok() && r.max_identity_ok();
        o.report["pass"] = pass;
        o.exit = pass ? Exit::ok : Exit::check_failed;
        return o;
    }
    throw io::InputError("coulomb", "expected classify, sample or verify");
}

}  // namespace bipot::cli
