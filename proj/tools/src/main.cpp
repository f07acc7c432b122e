#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cxh/cli/commands.hpp"
#include "cxh/error.hpp"

namespace {

using namespace cxh::cli;

void add_globals(CLI::App& app, GlobalOptions& g)
{
    app.add_option("--threads", g.threads, "Worker threads (0 = one per hardware thread)");
    app.add_option("--precision", g.precision, "Arithmetic for bound evaluations")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Precision>{{"double", Precision::double_}, {"extended", Precision::extended}}));
    app.add_option("--seed", g.seed, "Seed for every random or quasi-random choice");
    app.add_option("--out", g.out, "Output file (region) or directory (figure1)");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Complex Hoeffding bound: tables, searches, regions and checks", "cxhoeff"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    add_globals(app, g);

    GfunOptions gfun;
    auto* c_gfun = app.add_subcommand("gfun", "Table of G(d) and the envelope e^{d^2/8} - 1");
    c_gfun->add_option("--d-min", gfun.d_min, "First diameter")->capture_default_str();
    c_gfun->add_option("--d-max", gfun.d_max, "Last diameter")->capture_default_str();
    c_gfun->add_option("--steps", gfun.steps, "Number of rows")->capture_default_str();

    D0Options d0;
    auto* c_d0 = app.add_subcommand("d0", "Critical diameter where inf Re E e^Z reaches zero");
    c_d0->add_option("--tol", d0.tol, "Bracket width")->capture_default_str();
    c_d0->add_option("--budget", d0.budget, "Evaluations per inner search")->capture_default_str();

    SupremumOptions sup;
    auto* c_sup = app.add_subcommand("supremum", "sup |E e^Z - 1| over two- or three-point distributions");
    c_sup->add_option("--class", sup.cls, "2 or 3")->capture_default_str();
    c_sup->add_option("--d", sup.d, "Diameter")->capture_default_str();
    c_sup->add_option("--budget", sup.budget, "Objective evaluations")->capture_default_str();

    RegionOptions region;
    auto* c_region = app.add_subcommand("region", "Sample and trace the set of attainable E e^Z");
    c_region->add_option("--d", region.d, "Diameter")->capture_default_str();
    c_region->add_option("--class", region.cls, "2 or 3")->capture_default_str();
    c_region->add_option("--samples", region.samples, "Cloud size")->capture_default_str();
    c_region->add_option("--grid", region.grid, "Raster cells along the longer side")->capture_default_str();
    c_region->add_option("--cloud-out", region.cloud_out, "Also write the raw cloud here");

    Figure1Options fig;
    auto* c_fig = app.add_subcommand("figure1", "Boundaries for both classes and d = 2, 3, 4, 5");
    c_fig->add_option("--samples", fig.samples, "Cloud size per curve")->capture_default_str();
    c_fig->add_option("--grid", fig.grid, "Raster cells along the longer side")->capture_default_str();

    VerifyOptions ver;
    auto* c_ver = app.add_subcommand("verify", "Run the property checks");
    c_ver->add_option("--suite", ver.suite, "Suite to run")
        ->check(CLI::IsMember(verify_suites()))
        ->capture_default_str();
    c_ver->add_option("--q-report", ver.q_report, "Archive the Q comparison table (CSV) here");
    c_ver->add_option("--dist", ver.dist, "Check a distribution file (`re im prob` per line)")
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_gfun->parsed()) return run_gfun(gfun, g, std::cout);
        if (c_d0->parsed()) return run_d0(d0, g, std::cout);
        if (c_sup->parsed()) return run_supremum(sup, g, std::cout);
        if (c_region->parsed()) return run_region(region, g, std::cout);
        if (c_fig->parsed()) return run_figure1(fig, g, std::cout);
        if (c_ver->parsed()) return run_verify(ver, g, std::cout);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const cxh::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
