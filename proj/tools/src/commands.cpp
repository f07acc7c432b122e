#include "cxh/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cxh/bounds.hpp"
#include "cxh/precise.hpp"
#include "cxh/regions.hpp"
#include "cxh/search.hpp"
#include "format.hpp"

namespace cxh::cli {

namespace {

void require(bool ok, const char* message)
{
    if (!ok) throw UsageError(message);
}

const char* precision_name(Precision p)
{
    return p == Precision::extended ? "extended" : "double";
}

FamilyClass family(int cls)
{
    require(cls == 2 || cls == 3, "--class must be 2 or 3");
    return cls == 2 ? FamilyClass::two_point : FamilyClass::three_point;
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return f;
}

void write_contours(std::ostream& out, const std::vector<BoundaryCurve>& curves)
{
    out << "re,im\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        if (c > 0) out << '\n';
        for (Complex v : curves[c].vertices) out << num(v.real()) << ',' << num(v.imag()) << '\n';
    }
}

}  // namespace

int run_gfun(const GfunOptions& o, const GlobalOptions& g, std::ostream& out)
{
    require(std::isfinite(o.d_min) && o.d_min >= 0.0, "--d-min must be >= 0");
    require(std::isfinite(o.d_max) && o.d_max >= o.d_min, "--d-max must be >= --d-min");
    require(o.d_max <= 700.0, "--d-max must be <= 700");
    require(o.steps >= 1, "--steps must be >= 1");

    out << "# gfun d_min=" << num(o.d_min) << " d_max=" << num(o.d_max) << " steps=" << o.steps
        << " precision=" << precision_name(g.precision) << " seed=" << g.seed << '\n';
    out << "d,G,envelope,ratio\n";
    for (std::size_t k = 0; k < o.steps; ++k) {
        const double d = o.steps == 1 ? o.d_min
                                      : o.d_min + (o.d_max - o.d_min) * static_cast<double>(k) /
                                                      static_cast<double>(o.steps - 1);
        const double gv = g.precision == Precision::extended ? precise::g_function(d) : g_function(d);
        const double env = envelope(d);
        // G / envelope -> 1 as d -> 0 (both are d^2/8 to leading order).
        const double ratio = env > 0.0 ? gv / env : 1.0;
        out << num(d) << ',' << num(gv) << ',' << num(env) << ',' << num(ratio) << '\n';
    }
    return kExitOk;
}

int run_d0(const D0Options& o, const GlobalOptions& g, std::ostream& out)
{
    require(o.tol >= 1e-9 && std::isfinite(o.tol), "--tol must be >= 1e-9");
    require(o.tol < 1.0, "--tol must be < 1");
    require(o.budget >= 1000, "--budget must be >= 1000");
    SearchOptions opts;
    opts.budget = o.budget;
    opts.seed = g.seed;
    opts.threads = g.threads;
    const D0Result r = compute_d0(o.tol, opts);

    out << "# d0 tol=" << num(o.tol) << " budget=" << o.budget << " seed=" << g.seed << '\n';
    out << "d0 = " << fixed(r.d0, 10) << " +- " << num(o.tol) << '\n';
    out << "bracket = [" << fixed(r.lo, 12) << ", " << fixed(r.hi, 12) << "]\n";
    out << "bisection_steps = " << (r.brackets.size() - 1) << '\n';
    out << "extremal.ell = " << fixed(r.extremal.ell, 10) << '\n';
    out << "extremal.x = " << fixed(r.extremal.x, 10) << '\n';
    out << "extremal.theta = " << fixed(r.extremal.theta, 10) << '\n';
    out << "extremal.value = " << num(r.extremal_value) << '\n';
    return kExitOk;
}

int run_supremum(const SupremumOptions& o, const GlobalOptions& g, std::ostream& out)
{
    const FamilyClass cls = family(o.cls);
    require(std::isfinite(o.d) && o.d > 0.0, "--d must be > 0");
    require(o.d <= 30.0, "--d must be <= 30");
    require(o.budget >= 1000, "--budget must be >= 1000");
    SearchOptions opts;
    opts.budget = o.budget;
    opts.seed = g.seed;
    opts.threads = g.threads;
    const OptimizationResult r =
        cls == FamilyClass::two_point ? sup_abs_two_point(o.d, opts) : sup_abs_three_point(o.d, opts);

    auto vec = [](const std::vector<double>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
        return s + "]";
    };
    out << "{\n";
    out << "  \"class\": " << o.cls << ",\n";
    out << "  \"d\": " << num(o.d) << ",\n";
    out << "  \"budget\": " << o.budget << ",\n";
    out << "  \"seed\": " << g.seed << ",\n";
    out << "  \"best_value\": " << num(r.best_value) << ",\n";
    out << "  \"best_params\": " << vec(r.best_params) << ",\n";
    out << "  \"evaluations\": " << r.evaluations << ",\n";
    out << "  \"converged\": " << (r.converged ? "true" : "false") << ",\n";
    out << "  \"g_function\": " << num(g_function(o.d)) << ",\n";
    out << "  \"envelope\": " << num(envelope(o.d)) << ",\n";
    out << "  \"refinement_history\": [\n";
    for (std::size_t i = 0; i < r.refinement_history.size(); ++i) {
        const auto& h = r.refinement_history[i];
        out << "    {\"value\": " << num(h.value) << ", \"params\": " << vec(h.params) << "}"
            << (i + 1 < r.refinement_history.size() ? "," : "") << '\n';
    }
    out << "  ]\n}\n";
    return kExitOk;
}

int run_region(const RegionOptions& o, const GlobalOptions& g, std::ostream& out)
{
    const FamilyClass cls = family(o.cls);
    require(std::isfinite(o.d) && o.d > 0.0, "--d must be > 0");
    require(o.d <= 12.0, "--d must be <= 12");
    require(o.samples >= 1, "--samples must be >= 1");
    require(o.grid >= 8 && o.grid <= 16384, "--grid must be in [8, 16384]");

    SampleOptions so;
    so.seed = g.seed;
    so.threads = g.threads;
    so.keep_params = false;
    const RegionCloud cloud = sample_region(o.d, cls, o.samples, so);
    const auto curves = trace_boundary(cloud, o.grid);

    std::ostringstream header;
    header << "# region d=" << num(o.d) << " class=" << o.cls << " samples=" << o.samples << " grid=" << o.grid
           << " seed=" << g.seed << " contours=" << curves.size() << " cell=" << num(curves.front().cell_size)
           << '\n';
    if (g.out) {
        auto f = open_output(*g.out);
        f << header.str();
        write_contours(f, curves);
    } else {
        out << header.str();
        write_contours(out, curves);
    }
    if (o.cloud_out) {
        auto f = open_output(*o.cloud_out);
        f << "# cloud d=" << num(o.d) << " class=" << o.cls << " samples=" << o.samples << " seed=" << g.seed
          << '\n';
        f << "re,im\n";
        for (Complex p : cloud.points) f << num(p.real()) << ',' << num(p.imag()) << '\n';
    }
    return kExitOk;
}

int run_figure1(const Figure1Options& o, const GlobalOptions& g, std::ostream& out)
{
    require(o.samples >= 1000, "--samples must be >= 1000");
    require(o.grid >= 8 && o.grid <= 16384, "--grid must be in [8, 16384]");
    const std::filesystem::path dir = g.out.value_or(std::filesystem::path("."));
    std::filesystem::create_directories(dir);

    out << "# figure1 samples=" << o.samples << " grid=" << o.grid << " seed=" << g.seed << '\n';
    out << "file,class,d,contours,area,max_abs_p_minus_1,G,cell\n";
    for (int cls : {2, 3}) {
        for (int d : {2, 3, 4, 5}) {
            SampleOptions so;
            so.seed = g.seed;
            so.threads = g.threads;
            so.keep_params = false;
            const RegionCloud cloud = sample_region(d, family(cls), o.samples, so);
            const auto curves = trace_boundary(cloud, o.grid);
            const std::string name = "figure1_class" + std::to_string(cls) + "_d" + std::to_string(d) + ".csv";
            auto f = open_output(dir / name);
            f << "# figure1 d=" << d << " class=" << cls << " samples=" << o.samples << " grid=" << o.grid
              << " seed=" << g.seed << " contours=" << curves.size() << '\n';
            write_contours(f, curves);

            double reach = 0.0;
            for (Complex v : curves.front().vertices) reach = std::max(reach, std::abs(v - 1.0));
            out << name << ',' << cls << ',' << d << ',' << curves.size() << ',' << num(curves.front().area()) << ','
                << num(reach) << ',' << num(g_function(d)) << ',' << num(curves.front().cell_size) << '\n';
        }
    }
    return kExitOk;
}

}  // namespace cxh::cli
