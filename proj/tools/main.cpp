#include "cli.hpp"

#include "bipot/calculus.hpp"
#include "bipot/parallel.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

using namespace bipot;
using namespace bipot::cli;

namespace
{

void add_common(CLI::App* app, RunConfig& c)
{
    app->add_option("--grid-r", c.grid_r, "Half-width R of the grid box [-R, R]^n")->capture_default_str();
    app->add_option("--grid-n", c.grid_n, "Nodes per axis (0: 801 / 101 / 41 in 1-D / 2-D / 3-D)")->capture_default_str();
    app->add_option("--tol", c.tol, "Tolerance (default depends on the subcommand)");
    app->add_option("--lambda-n", c.lambda_n, "Number of lambda values on [0, 1]")->capture_default_str();
    app->add_option("--p-max", c.p_max, "Largest positive p of the Coulomb p grid")->capture_default_str();
    app->add_option("--p-n", c.p_n, "Number of positive p values")->capture_default_str();
    app->add_option("--m-max", c.m_max, "Longest cycle / chain length")->capture_default_str();
    app->add_option("--seed", c.seed, "Seed for stratified sampling")->capture_default_str();
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app->add_option("--out", c.out, "Write the report here instead of stdout");
    app->add_option("--workers", c.workers, "Worker threads (never changes results)")->check(CLI::Range(1, 256))->capture_default_str();
}

void add_input(CLI::App* app, RunConfig& c, const std::string& key, const std::string& help, bool required = true)
{
    auto* opt = app->add_option("--" + key, c.inputs[key], help);
    if (required)
        opt->required();
}

int emit(const RunConfig& c, const Outcome& o)
{
    std::string text;
    if (c.format == "csv")
        text = o.csv ? *o.csv : flatten_csv(o.report);
    else
        text = o.report.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << c.out << "\n";
            return Exit::usage_error;
        }
        f << text;
    }
    return o.exit;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Convex conjugates, bipotentials and the Coulomb friction law"};
    app.require_subcommand(1);
    RunConfig c;
    std::function<Outcome(const RunConfig&)> action;

    auto* conj = app.add_subcommand("conjugate", "Sampled Fenchel conjugate of a function");
    add_common(conj, c);
    add_input(conj, c, "f", "Function JSON");
    conj->add_option("--method", c.method, "fast or brute")->capture_default_str();
    conj->callback([&] { action = run_conjugate; });

    auto* infc = app.add_subcommand("infconv", "Inf-convolution of two functions on the grid");
    add_common(infc, c);
    add_input(infc, c, "f", "Function JSON");
    add_input(infc, c, "g", "Function JSON");
    infc->callback([&] { action = run_infconv; });

    auto* sub = app.add_subcommand("subdiff", "Subdifferential estimates");
    add_common(sub, c);
    add_input(sub, c, "f", "Function JSON");
    sub->add_option("--x", c.x, "Points, e.g. \"0\" or \"1,0;0,1\"")->required();
    sub->callback([&] { action = run_subdiff; });

    auto* gc = app.add_subcommand("graph-check", "Monotonicity, cyclic monotonicity and Rockafellar potentials");
    add_common(gc, c);
    add_input(gc, c, "graph", "GraphSample JSON");
    gc->add_option("--mode", c.mode, "monotone, cyclic, rockafellar or all");
    gc->add_option("--phi0", c.phi0, "Potential value at the first sample point")->capture_default_str();
    gc->add_option("--x", c.x, "Points where the potential is evaluated (default: the graph domain)");
    gc->add_option("--y", c.y, "Points where the dual potential is evaluated (default: the graph image)");
    gc->callback([&] { action = run_graph_check; });

    auto* bc = app.add_subcommand("bipot-check", "Bipotential axioms and strong conditions on grids");
    add_common(bc, c);
    add_input(bc, c, "spec", "BipotentialSpec JSON");
    bc->add_option("--mode", c.mode, "axioms, strong or both");
    bc->callback([&] { action = run_bipot_check; });

    auto* t31 = app.add_subcommand("thm31", "Strongness of max(b1, b2) against the conjugate identities");
    add_common(t31, c);
    add_input(t31, c, "phi1", "Function JSON");
    add_input(t31, c, "phi2", "Function JSON");
    t31->callback([&] { action = run_thm31; });

    auto* c33 = app.add_subcommand("cor33", "Subdifferential of the scaled inf-convolution");
    add_common(c33, c);
    add_input(c33, c, "phi1", "Function JSON");
    add_input(c33, c, "phi2", "Function JSON");
    c33->add_option("--lambda", c.lambda, "lambda in (0, 1)")->capture_default_str();
    c33->add_option("--x", c.x, "Probe points, e.g. \"-1;0;1\"");
    c33->callback([&] { action = run_cor33; });

    auto* cc = app.add_subcommand("cover-check", "Implicit convexity and critical-set union of a cover");
    add_common(cc, c);
    add_input(cc, c, "cover", "CoverSpec JSON");
    cc->add_option("--mode", c.mode, "union, implicit or all");
    cc->add_option("--trials", c.trials, "Random implicit convexity trials per argument")->capture_default_str();
    cc->callback([&] { action = run_cover_check; });

    auto* cl = app.add_subcommand("coulomb", "Coulomb friction law");
    cl->require_subcommand(1);
    auto* cls = cl->add_subcommand("classify", "Branch of a contact point");
    add_common(cls, c);
    add_input(cls, c, "point", "ContactPoint JSON", false);
    cls->add_option("--mu", c.mu, "Friction coefficient")->capture_default_str();
    cls->add_option("--x", c.x, "x as \"xn,xt1,xt2\"");
    cls->add_option("--y", c.y, "y as \"yn,yt1,yt2\"");
    cls->callback([&] {
        c.mode = "classify";
        action = run_coulomb;
    });
    auto* smp = cl->add_subcommand("sample", "Sample the contact law graph");
    add_common(smp, c);
    smp->add_option("--mu", c.mu, "Friction coefficient")->capture_default_str();
    smp->add_option("--branch", c.branch, "separation, sticking, sliding or all")->capture_default_str();
    smp->add_option("--angles", c.angles, "Angular samples per circle")->capture_default_str();
    smp->callback([&] {
        c.mode = "sample";
        action = run_coulomb;
    });
    auto* ver = cl->add_subcommand("verify", "Critical set, max identity and cover recovery on stratified probes");
    add_common(ver, c);
    ver->add_option("--mu", c.mu, "Friction coefficient")->capture_default_str();
    ver->add_option("--probes", c.probes, "Number of probes")->capture_default_str();
    ver->callback([&] {
        c.mode = "verify";
        action = run_coulomb;
    });

    auto* ps = app.add_subcommand("paper-suite", "Every worked example, diffed against its expected value");
    add_common(ps, c);
    ps->callback([&] { action = run_paper_suite; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::usage_error;
    }
    for (auto* s : app.get_subcommands()) {
        c.subcommand = s->get_name();
        for (auto* s2 : s->get_subcommands())
            c.subcommand += " " + s2->get_name();
    }
    for (auto it = c.inputs.begin(); it != c.inputs.end();)
        it = it->second.empty() ? c.inputs.erase(it) : std::next(it);

    try {
        set_worker_count(c.workers);
        return emit(c, action(c));
    } catch (const io::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return Exit::usage_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return Exit::usage_error;
    } catch (const EmptyDomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return Exit::usage_error;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return Exit::usage_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage_error;
    }
}
