// Acceptance criteria 1-11. One PASS/FAIL line each; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cxh/bounds.hpp"
#include "cxh/caratheodory.hpp"
#include "cxh/cli/commands.hpp"
#include "cxh/families.hpp"
#include "cxh/geometry.hpp"
#include "cxh/random_dist.hpp"
#include "cxh/regions.hpp"
#include "cxh/search.hpp"
#include "oracle.hpp"

namespace {

using cxh::Complex;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char* f, double a, double b, double c)
{
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::filesystem::path g_out_dir = ".";

Outcome criterion1()
{
    const auto t0 = Clock::now();
    const auto r = cxh::compute_d0(1e-7);
    const double secs = seconds_since(t0);
    Outcome o;
    o.ok = std::abs(r.d0 - 3.120491233) <= 1e-6 && std::abs(r.extremal.ell - r.d0) <= 1e-5 &&
           std::abs(r.extremal.x - 0.636527202) <= 1e-5 && std::abs(r.extremal.theta - 1.9198934984) <= 1e-5 &&
           secs <= 60.0;
    o.detail = fmt("d0 = %.10f, ell = %.10f", r.d0, r.extremal.ell) +
               fmt(", x = %.10f, theta = %.10f", r.extremal.x, r.extremal.theta) + fmt(", %.2f s", secs);
    return o;
}

Outcome criterion2()
{
    Outcome o;
    double sup_err = 0.0;
    double exp_err = 0.0;
    for (double d : {0.5, 1.0, 2.0, 3.0}) {
        const double g = cxh::g_function(d);
        sup_err = std::max(sup_err, std::abs(cxh::sup_abs_two_point(d).best_value - g));
        const Complex v = cxh::expect_exp(center(cxh::extremal_two_point(d))) - 1.0;
        exp_err = std::max(exp_err, std::abs(v - g));
        // G itself against the 100-digit oracle.
        exp_err = std::max(exp_err, std::abs(g - oracle::g(d)));
    }
    o.ok = sup_err <= 1e-6 && exp_err <= 1e-10;
    o.detail = fmt("max |sup2 - G| = %.3e, max |E e^{X_d - E X_d} - 1 - G| = %.3e", sup_err, exp_err);
    return o;
}

Outcome criterion3()
{
    std::vector<double> ratios;
    for (double d : {0.05, 0.1, 0.2}) {
        const double d2 = d * d;
        ratios.push_back(std::abs(cxh::g_function(d) - d2 / 8 - 7 * d2 * d2 / 1152) / (d2 * d2 * d2));
    }
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    Outcome o;
    o.ok = lo > 0.0 && hi / lo <= 2.0;
    o.detail = fmt("ratios %.6e %.6e %.6e", ratios[0], ratios[1], ratios[2]) + fmt(", spread %.4f", hi / lo);
    return o;
}

Outcome criterion4()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> atoms(2, 10);
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t bad = 0;
    for (int k = 0; k < 100000; ++k) {
        const double d = 10.0 * (1.0 - unit(rng));
        const auto z = cxh::random_zero_mean(rng, atoms(rng), d);
        const double diam = diameter(z);
        const double excess = std::abs(cxh::expect_exp(z) - 1.0) - cxh::envelope(diam);
        worst = std::max(worst, excess / std::max(1.0, cxh::envelope(diam)));
        if (excess > 1e-9) ++bad;
    }
    const double secs = seconds_since(t0);
    Outcome o;
    o.ok = bad == 0 && secs <= 30.0;
    o.detail = std::to_string(bad) + " violations in 10^5" + fmt(", max relative excess %.3e, %.2f s", worst, secs);
    return o;
}

Outcome criterion5()
{
    cxh::SearchOptions opts;
    opts.budget = 1000000;
    Outcome o;
    std::string detail;
    for (double d : {1.0, 2.0, 3.0}) {
        const double s = cxh::sup_abs_three_point(d, opts).best_value;
        const double diff = s - cxh::g_function(d);
        o.ok = o.ok && diff <= 1e-5;
        detail += (detail.empty() ? "" : ", ") + fmt("d=%g: sup3 - G = %.3e", d, diff);
    }
    o.detail = detail;
    return o;
}

Outcome criterion6()
{
    double m1 = std::numeric_limits<double>::infinity();
    double m2 = m1;
    double t1 = 0.0;
    double t2 = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double t = 3.0 + 27.0 * k / 999.0;
        const auto r = cxh::technical_check(t);
        if (r.tech1_margin < m1) {
            m1 = r.tech1_margin;
            t1 = t;
        }
        if (r.tech2_margin < m2) {
            m2 = r.tech2_margin;
            t2 = t;
        }
    }
    Outcome o;
    o.ok = m1 > 0.0 && m2 > 0.0;
    o.detail = fmt("min tech1 margin %.6e at t = %.4f", m1, t1) + fmt(", min tech2 margin %.6e at t = %.4f", m2, t2);
    return o;
}

Outcome criterion7()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> atoms(4, 10);
    double recon = 0.0;
    double comp_mean = 0.0;
    std::size_t big = 0;
    for (int k = 0; k < 10000; ++k) {
        const auto z = cxh::random_zero_mean(rng, atoms(rng), 0.1 + 9.9 * unit(rng));
        const auto dec = cxh::decompose(z);
        for (const auto& c : dec.components) {
            if (c.dist.size() > 3) ++big;
            comp_mean = std::max(comp_mean, std::abs(mean(c.dist)));
        }
        const auto back = cxh::reconstruct(dec);
        if (back.size() != z.size()) {
            recon = std::numeric_limits<double>::infinity();
            continue;
        }
        for (const auto& a : z.atoms()) {
            double p = -1.0;
            for (const auto& b : back.atoms()) {
                if (b.point == a.point) p = b.prob;
            }
            recon = std::max(recon, p < 0.0 ? std::numeric_limits<double>::infinity() : std::abs(p - a.prob));
        }
    }
    Outcome o;
    o.ok = recon <= 1e-9 && big == 0 && comp_mean <= 1e-9;
    o.detail = fmt("max atom error %.3e, max component |mean| %.3e", recon, comp_mean) + ", " + std::to_string(big) +
               " components above 3 atoms";
    return o;
}

Outcome criterion8()
{
    std::mt19937_64 rng(8);
    double worst = -1.0;
    for (int k = 0; k < 10000; ++k) {
        const auto d = cxh::random_distribution(rng, 1 + k % 12);
        worst = std::max(worst, enclosing_disk(d).radius - diameter(d) / std::sqrt(3.0));
    }
    double eq = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double side = 0.1 + 0.1 * k;
        const double rot = 0.0627 * k;
        const Complex shift{0.3 * k, -0.1 * k};
        const double r = side / std::sqrt(3.0);
        const std::vector<Complex> tri{shift + std::polar(r, rot), shift + std::polar(r, rot + 2 * kPi / 3),
                                       shift + std::polar(r, rot + 4 * kPi / 3)};
        const auto d = cxh::FiniteDistribution::uniform(tri);
        eq = std::max(eq, std::abs(enclosing_disk(d).radius - diameter(d) / std::sqrt(3.0)));
    }
    Outcome o;
    o.ok = worst <= 1e-12 && eq <= 1e-12;
    o.detail = fmt("max(radius - diam/sqrt3) = %.3e, equilateral |radius - diam/sqrt3| = %.3e", worst, eq);
    return o;
}

Outcome criterion9()
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> atoms(2, 10);
    double mb = -std::numeric_limits<double>::infinity();
    double cs = mb;
    for (int k = 0; k < 1000; ++k) {
        const double d = 3.0 + 5.0 * unit(rng);
        const auto z = cxh::random_zero_mean(rng, atoms(rng), d);
        const Complex ze = expect(z, [](Complex w) { return w * std::exp(w); });
        mb = std::max(mb, std::abs(ze) / cxh::ze_moment_bound(d) - 1.0);
        const double e2 = expect(z, [](Complex w) { return Complex{std::norm(w)}; }).real();
        const Complex m = cxh::expect_exp(z);
        const double var = expect(z, [m](Complex w) { return Complex{std::norm(std::exp(w) - m)}; }).real();
        cs = std::max(cs, std::abs(ze) - std::sqrt(e2 * var) * (1.0 + 1e-12));
    }
    double residual = 0.0;
    for (double d : {3.0, 5.0, 10.0}) residual = std::max(residual, cxh::integral_identity_check(d));
    Outcome o;
    o.ok = mb <= 0.0 && cs <= 0.0 && residual <= 1e-8;
    o.detail = fmt("max |E Z e^Z|/bound - 1 = %.3e, Cauchy-Schwarz excess %.3e, identity residual %.3e", mb, cs,
                   residual);
    return o;
}

std::vector<std::vector<Complex>> read_curves(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::vector<std::vector<Complex>> curves(1);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            curves.emplace_back();
            continue;
        }
        if (line[0] == '#' || line.rfind("re,", 0) == 0) continue;
        const auto comma = line.find(',');
        curves.back().push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return curves;
}

Outcome criterion10()
{
    const auto dir = g_out_dir / "figure1";
    cxh::cli::GlobalOptions g;
    g.out = dir;
    std::ostringstream summary;
    cxh::cli::run_figure1({}, g, summary);

    Outcome o;
    std::string detail;
    // Closed curves and the two-point reach.
    double worst_cells = 0.0;
    std::map<std::pair<int, int>, std::vector<Complex>> main_curve;
    std::map<std::pair<int, int>, double> cell;
    for (int cls : {2, 3}) {
        for (int d : {2, 3, 4, 5}) {
            const auto name = "figure1_class" + std::to_string(cls) + "_d" + std::to_string(d) + ".csv";
            const auto curves = read_curves(dir / name);
            bool closed = !curves.empty();
            for (const auto& c : curves) closed = closed && c.size() >= 4 && c.front() == c.back();
            o.ok = o.ok && closed;
            if (!closed) detail += name + " not closed; ";
            main_curve[{cls, d}] = curves.front();
            const auto lines = [&] {
                std::istringstream in(summary.str());
                std::string line;
                while (std::getline(in, line)) {
                    if (line.rfind(name, 0) == 0) return line;
                }
                return std::string{};
            }();
            const double c = std::stod(lines.substr(lines.rfind(',') + 1));
            cell[{cls, d}] = c;
            if (cls == 2) {
                double reach = 0.0;
                for (Complex v : curves.front()) reach = std::max(reach, std::abs(v - 1.0));
                const double cells = std::abs(reach - cxh::g_function(d)) / c;
                worst_cells = std::max(worst_cells, cells);
            }
        }
    }
    o.ok = o.ok && worst_cells <= 2.0;
    detail += fmt("two-point max |p-1| vs G: worst %.2f cells", worst_cells);

    // Nesting: each curve lies inside the next larger one, up to 2 cells.
    double nest = 0.0;
    for (int cls : {2, 3}) {
        for (int d = 2; d < 5; ++d) {
            const auto& inner = main_curve[{cls, d}];
            const auto& outer = main_curve[{cls, d + 1}];
            for (Complex v : inner) {
                if (cxh::geom::point_in_polygon(v, outer)) continue;
                nest = std::max(nest, cxh::geom::distance_to_boundary(v, outer) / cell[{cls, d + 1}]);
            }
        }
    }
    o.ok = o.ok && nest <= 2.0;
    detail += fmt(", nesting: worst excursion %.2f cells", nest);

    // Shallow indentation on the left at d = 3, three-point class.
    cxh::SampleOptions so;
    so.keep_params = false;
    const auto cloud = cxh::sample_region(3.0, cxh::FamilyClass::three_point, 1000000, so);
    const auto gap = cxh::convexity_gap(cloud, 512);
    const double span = gap.max_re - gap.min_re;
    const bool left = gap.deepest.real() - gap.min_re <= 0.01 * span;
    o.ok = o.ok && gap.gap > 0.0 && left;
    detail += fmt(", d=3 three-point gap %.3e, deepest at Re %.4f, min Re %.4f", gap.gap, gap.deepest.real(),
                  gap.min_re);
    o.detail = detail;
    return o;
}

Outcome criterion11()
{
    Outcome o;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double eig = 0.0;
    for (int k = 0; k < 10000; ++k) {
        cxh::StationaryFrame f;
        f.v = u(rng);
        f.w = u(rng);
        f.c0 = u(rng);
        f.c1 = u(rng);
        const auto r = cxh::r_matrix(f);
        eig = std::max(eig, std::abs(cxh::r_min_eigenvalue(f) - oracle::min_eigenvalue(r.xx, r.xy, r.yy)));
    }

    double fd = 0.0;
    double tol = 1e-4;
    std::size_t found = 0;
    std::uniform_real_distribution<double> v(-1.0, 1.0);
    for (int k = 0; k < 200 && found < 20; ++k) {
        const double s = 1.0 + 2.0 * (v(rng) + 1.0);
        const cxh::TriangleSupport t(s * Complex{v(rng), v(rng)}, s * Complex{v(rng), v(rng)},
                                     s * Complex{v(rng), v(rng)});
        if (std::abs(t.twice_area()) < 0.05 * t.diameter() * t.diameter()) continue;
        for (const auto& st : cxh::stationary_supports(t, cxh::Functional::real_part)) {
            const auto fit = cxh::stationary_frame(cxh::expansion_coefficients(st), cxh::Convention::real_part);
            if (fit.residual >= 1e-8) continue;
            const double step = 1e-4 * st.diameter();
            cxh::Sym2 h;
            try {
                h = cxh::hessian_fd(st, cxh::Functional::real_part, step);
            } catch (const cxh::DomainError&) {
                continue;
            }
            const auto r = cxh::r_matrix(fit.frame);
            const double err = std::max({std::abs(h.xx - r.xx), std::abs(h.xy - r.xy), std::abs(h.yy - r.yy)});
            tol = std::max(1e-4, 10 * step * step);
            fd = std::max(fd, err / tol);
            ++found;
        }
    }

    std::ostringstream first;
    std::ostringstream second;
    cxh::cli::write_q_report(first, 0);
    cxh::cli::write_q_report(second, 0);
    const std::string csv = first.str();
    std::size_t rows = 0;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#' && line.rfind("id,", 0) != 0) ++rows;
    }
    const auto path = g_out_dir / "q_report.csv";
    {
        std::ofstream f(path, std::ios::binary);
        f << csv;
    }
    const bool archived = std::filesystem::file_size(path) == csv.size();

    o.ok = eig <= 1e-12 && found > 0 && fd <= 1.0 && rows > 0 && csv == second.str() && archived;
    o.detail = fmt("eigenvalue error %.3e, fd vs R worst %.3f of tolerance", eig, fd) + " over " +
               std::to_string(found) + " supports, Q report " + std::to_string(rows) + " rows, " +
               (csv == second.str() ? "deterministic" : "NOT deterministic") + ", archived to " + path.string();
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc > 1) g_out_dir = argv[1];
    std::filesystem::create_directories(g_out_dir);

    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8,
                                                         criterion9, criterion10, criterion11};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.ok) ++failed;
        std::printf("%s criterion %zu: %s\n", o.ok ? "PASS" : "FAIL", i + 1, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
