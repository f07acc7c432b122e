#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "cxh/bounds.hpp"
#include "cxh/caratheodory.hpp"
#include "cxh/distribution_io.hpp"
#include "cxh/cli/commands.hpp"
#include "cxh/families.hpp"
#include "cxh/geometry.hpp"
#include "cxh/precise.hpp"
#include "cxh/random_dist.hpp"
#include "cxh/regions.hpp"
#include "cxh/search.hpp"
#include "format.hpp"

namespace cxh::cli {

namespace {

constexpr double kPi = std::numbers::pi;

class Report {
public:
    explicit Report(std::ostream& out) : out_(out) {}

    void check(const std::string& name, bool ok, const std::string& detail)
    {
        ++total_;
        if (ok) ++passed_;
        out_ << (ok ? "ok   " : "FAIL ") << module_ << '.' << name << "  " << detail << '\n';
    }
    void info(const std::string& text) { out_ << "  # " << text << '\n'; }
    void begin(const std::string& module)
    {
        module_ = module;
        out_ << "== " << module << '\n';
    }
    std::size_t passed() const { return passed_; }
    std::size_t total() const { return total_; }

private:
    std::ostream& out_;
    std::string module_;
    std::size_t passed_ = 0;
    std::size_t total_ = 0;
};

std::mt19937_64 rng_for(std::uint64_t seed, std::uint32_t salt)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), salt};
    return std::mt19937_64(seq);
}

std::size_t atoms_between(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

struct Context {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    Precision precision = Precision::double_;
    const VerifyOptions* options = nullptr;
};

// ---------------------------------------------------------------------------

void suite_complex_dist(Report& r, const Context& ctx)
{
    auto rng = rng_for(ctx.seed, 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr int kCases = 10000;

    double jung = -1.0;
    double contain = 0.0;
    for (int k = 0; k < kCases; ++k) {
        const auto dist = random_distribution(rng, atoms_between(rng, 1, 10));
        const Disk disk = enclosing_disk(dist);
        jung = std::max(jung, disk.radius - diameter(dist) / std::sqrt(3.0));
        for (const Atom& a : dist.atoms()) contain = std::max(contain, std::abs(a.point - disk.center) - disk.radius);
    }
    r.check("jung", jung <= 1e-12, "max(radius - diam/sqrt3) = " + sci(jung));
    r.check("disk_contains_support", contain <= 1e-12, "max excess = " + sci(contain));

    double radius = -1.0;
    for (int k = 0; k < kCases; ++k) {
        const double d = 10.0 * (1.0 - unit(rng));
        const auto dist = random_zero_mean(rng, atoms_between(rng, 2, 10), d);
        for (const Atom& a : dist.atoms()) radius = std::max(radius, (std::abs(a.point) - d) / d);
    }
    r.check("support_within_diameter", radius <= 1e-12, "max (|z| - d)/d = " + sci(radius));

    double lin = 0.0;
    double mix_err = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto a = random_distribution(rng, atoms_between(rng, 1, 6));
        const auto b = random_distribution(rng, atoms_between(rng, 1, 6));
        const double c = unit(rng);
        const Complex s{unit(rng), unit(rng)};
        const Complex t{unit(rng), unit(rng)};
        auto f1 = [](Complex z) { return std::exp(z); };
        auto f2 = [](Complex z) { return z * z; };
        const Complex lhs = expect(a, [&](Complex z) { return s * f1(z) + t * f2(z); });
        lin = std::max(lin, std::abs(lhs - (s * expect(a, f1) + t * expect(a, f2))));
        const std::array<FiniteDistribution, 2> parts{a, b};
        const std::array<double, 2> w{c, 1.0 - c};
        const Complex mixed = expect_exp(mix(parts, w));
        mix_err = std::max(mix_err, std::abs(mixed - (c * expect_exp(a) + (1.0 - c) * expect_exp(b))));
    }
    r.check("expect_linear_in_f", lin <= 1e-12, "max error = " + sci(lin));
    r.check("expect_linear_in_mixture", mix_err <= 1e-12, "max error = " + sci(mix_err));

    double jensen = 0.0;
    double imag = 0.0;
    for (int k = 0; k < kCases; ++k) {
        const auto dist = random_real_zero_mean(rng, atoms_between(rng, 2, 10), 10.0 * (1.0 - unit(rng)));
        const Complex v = expect_exp(dist);
        jensen = std::max(jensen, 1.0 - v.real());
        imag = std::max(imag, std::abs(v.imag()));
    }
    r.check("real_zero_mean_at_least_one", jensen <= 1e-15 && imag == 0.0,
            "max(1 - Re) = " + sci(jensen) + ", max |Im| = " + sci(imag));

    double affine = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto dist = random_distribution(rng, atoms_between(rng, 2, 8));
        const Complex a = std::polar(0.1 + 4.0 * unit(rng), 2.0 * kPi * unit(rng));
        const Complex b{10.0 * unit(rng) - 5.0, 10.0 * unit(rng) - 5.0};
        std::vector<Atom> moved;
        for (const Atom& at : dist.atoms()) moved.push_back({a * at.point + b, at.prob});
        const double want = std::abs(a) * diameter(dist);
        affine = std::max(affine, std::abs(diameter(FiniteDistribution(moved)) - want) / want);
    }
    r.check("diameter_affine", affine <= 1e-12, "max relative error = " + sci(affine));
}

// ---------------------------------------------------------------------------

void suite_bounds(Report& r, const Context& ctx)
{
    constexpr int kGrid = 10000;
    bool monotone = true;
    bool nonneg = true;
    double log_excess = -1.0;
    double prev = g_function(0.0);
    for (int k = 1; k <= kGrid; ++k) {
        const double d = 30.0 * k / kGrid;
        const double gv = g_function(d);
        monotone = monotone && gv >= prev;
        nonneg = nonneg && gv >= 0.0;
        log_excess = std::max(log_excess, std::log1p(gv) - d * d / 8.0);
        prev = gv;
    }
    r.check("g_monotone_nonnegative", monotone && nonneg, "10^4-point grid on [0, 30]");
    r.check("log_g_below_quadratic", log_excess <= 0.0, "max(log(1+G) - d^2/8) = " + sci(log_excess));

    const double t = kGSeriesThreshold;
    const double jump = std::abs(g_function(std::nextafter(t, 0.0)) - g_function(t));
    r.check("g_series_switch_continuous", jump <= 1e-12, "jump at 1e-3 = " + sci(jump));

    double env = -1.0;
    for (int k = 1; k <= 2000; ++k) {
        const double d = 20.0 * k / 2000;
        env = std::max(env, (g_function(d) - envelope(d)) / envelope(d));
    }
    r.check("g_below_envelope", env <= 0.0, "max (G - env)/env on (0, 20] = " + sci(env));

    double avg = -1.0;
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            const double x = i / 100.0;
            const double y = j / 100.0;
            avg = std::max(avg, x * y + std::sqrt((1.0 - x * x) * (1.0 - y * y)) - 1.0);
        }
    }
    r.check("averaging_step", avg <= 1e-12, "max(xy + sqrt((1-x^2)(1-y^2)) - 1) = " + sci(avg));

    auto rng = rng_for(ctx.seed, 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double corollary = -1.0;
    for (int k = 0; k < 1000; ++k) {
        const double alpha = 0.1 + 3.0 * unit(rng);
        const auto raw = random_distribution(rng, atoms_between(rng, 2, 8));
        const auto c = center(raw);
        double spread = 0.0;
        for (const Atom& a : c.atoms()) spread = std::max(spread, std::abs(a.point));
        std::vector<Atom> scaled;
        for (const Atom& a : c.atoms()) scaled.push_back({a.point * (alpha / spread), a.prob});
        const auto z = center(FiniteDistribution(scaled));
        corollary = std::max(corollary, std::abs(expect_exp(z) - 1.0) - centered_radius_bound(alpha));
    }
    r.check("radius_corollary", corollary <= 1e-12, "max(|E e^Z - 1| - (e^{a^2/2} - 1)) = " + sci(corollary));

    double tech1 = std::numeric_limits<double>::infinity();
    double tech2 = tech1;
    double at1 = 0.0;
    double at2 = 0.0;
    r.info("technical inequalities (margin = RHS - LHS)");
    r.info("        t      tech1_margin      tech2_margin");
    for (int k = 0; k < 1000; ++k) {
        const double tt = 3.0 + 27.0 * k / 999.0;
        const BoundReport b = technical_check(tt);
        if (b.tech1_margin < tech1) {
            tech1 = b.tech1_margin;
            at1 = tt;
        }
        if (b.tech2_margin < tech2) {
            tech2 = b.tech2_margin;
            at2 = tt;
        }
        if (k % 111 == 0 || k == 999) {
            char line[96];
            std::snprintf(line, sizeof line, "%9.4f  %16.6e  %16.6e", tt, b.tech1_margin, b.tech2_margin);
            r.info(line);
        }
    }
    r.check("tech1_margin", tech1 > 0.0, "min margin " + sci(tech1) + " at t = " + fixed(at1, 4));
    r.check("tech2_margin", tech2 > 0.0, "min margin " + sci(tech2) + " at t = " + fixed(at2, 4));

    for (double d : {3.0, 5.0, 10.0}) {
        const double res = integral_identity_check(d);
        r.check("integral_identity_d" + fixed(d, 0), res <= 1e-8, "residual = " + sci(res));
    }

    std::vector<double> ratios;
    for (double d : {0.05, 0.1, 0.2}) {
        const double d2 = d * d;
        ratios.push_back(std::abs(g_function(d) - d2 / 8.0 - 7.0 * d2 * d2 / 1152.0) / (d2 * d2 * d2));
    }
    const double spread = *std::max_element(ratios.begin(), ratios.end()) /
                          *std::min_element(ratios.begin(), ratios.end());
    r.check("series_remainder", spread <= 2.0,
            "|G - d^2/8 - 7d^4/1152|/d^6 = " + sci(ratios[0]) + ", " + sci(ratios[1]) + ", " + sci(ratios[2]));

    double attain = 0.0;
    for (double d : {0.5, 1.0, 2.0, 3.0, 5.0}) {
        attain = std::max(attain, std::abs(std::abs(expect_exp(center(extremal_two_point(d))) - 1.0) - g_function(d)));
    }
    r.check("extremal_attains_g", attain <= 1e-10, "max error over d in {0.5,1,2,3,5} = " + sci(attain));

    if (ctx.precision == Precision::extended) {
        double rel = 0.0;
        for (int k = 1; k <= 1000; ++k) {
            const double d = 30.0 * k / 1000;
            const double hi = static_cast<double>(precise::g_function(precise::Real(d)));
            rel = std::max(rel, std::abs(g_function(d) - hi) / hi);
        }
        r.check("double_vs_extended_g", rel <= 1e-13, "max relative error on (0, 30] = " + sci(rel));

        // The next term after 1/2 in P(X_d = d) is linear in d.
        const precise::Real d = precise::Real(1) / 1000;
        const precise::Real rest = precise::extremal_probability(d) - (precise::Real(1) / 2 - d / 12);
        const double scaled = static_cast<double>(rest / (d * d * d));
        r.check("extremal_probability_series", std::abs(scaled - 1.0 / 720.0) <= 1e-6,
                "(P - 1/2 + d/12)/d^3 at d=1e-3 = " + num(scaled) + " (1/720 = " + num(1.0 / 720.0) + ")");
    }
}

// ---------------------------------------------------------------------------

void suite_families(Report& r, const Context& ctx)
{
    auto rng = rng_for(ctx.seed, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double mean_err = 0.0;
    double diam_err = 0.0;
    double direct = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const TwoPointParams p{10.0 * unit(rng), unit(rng), -kPi + 2.0 * kPi * unit(rng)};
        const auto dist = two_point(p);
        mean_err = std::max(mean_err, std::abs(mean(dist)) / std::max(1.0, p.ell));
        if (dist.size() == 2) diam_err = std::max(diam_err, std::abs(diameter(dist) - p.ell) / std::max(1.0, p.ell));
        const double want = expect_exp(dist).real();
        direct = std::max(direct, std::abs(two_point_objective(p) - want) / std::max(1.0, std::abs(want)));
    }
    r.check("two_point_zero_mean", mean_err <= 1e-12, "max |mean| / max(1, ell) = " + sci(mean_err));
    r.check("two_point_diameter", diam_err <= 1e-12, "max |diam - ell| / max(1, ell) = " + sci(diam_err));
    r.check("two_point_objective_direct", direct <= 1e-13, "max relative error = " + sci(direct));

    double affine = 0.0;
    std::size_t supports = 0;
    while (supports < 1000) {
        const double s = 0.5 + 3.0 * unit(rng);
        const TriangleSupport raw(s * Complex{unit(rng) - 0.5, unit(rng) - 0.5}, s * Complex{unit(rng) - 0.5, unit(rng) - 0.5},
                                  s * Complex{unit(rng) - 0.5, unit(rng) - 0.5});
        const Complex centroid = (raw[0] + raw[1] + raw[2]) / 3.0;
        const TriangleSupport tri = raw.translated(-centroid);
        if (std::abs(tri.twice_area()) < 1e-3 * tri.diameter() * tri.diameter()) continue;
        ++supports;
        const ExpansionCoefficients c = expansion_coefficients(tri);
        for (int j = 0; j < 2; ++j) {
            double l0 = unit(rng), l1 = unit(rng);
            if (l0 + l1 > 1.0) {
                l0 = 1.0 - l0;
                l1 = 1.0 - l1;
            }
            const Complex m = l0 * tri[0] + l1 * tri[1] + (1.0 - l0 - l1) * tri[2];
            const Complex lhs = c.A * m.real() + c.B * m.imag() + c.C;
            const Complex rhs = expect_exp(triangle_dist(tri, m, BoundaryPolicy::allow));
            affine = std::max(affine, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
    }
    r.check("affine_expansion_exact", affine <= 1e-12, "max relative error = " + sci(affine));

    double eig = 0.0;
    bool negative = true;
    for (int k = 0; k < 10000; ++k) {
        StationaryFrame f;
        f.v = 4.0 * unit(rng) - 2.0;
        f.w = 4.0 * unit(rng) - 2.0;
        f.c0 = 4.0 * unit(rng) - 2.0;
        f.c1 = 4.0 * unit(rng) - 2.0;
        const Sym2 m = r_matrix(f);
        eig = std::max(eig, std::abs(r_min_eigenvalue(f) - m.min_eigenvalue()));
        if (f.c0 > 0.0) negative = negative && r_min_eigenvalue(f) < 0.0;
    }
    r.check("r_eigenvalue_closed_form", eig <= 1e-12, "max error vs symmetric eigensolve = " + sci(eig));
    r.check("r_negative_for_positive_c0", negative, "10^4 random frames");

    double hess = 0.0;
    double tol = 0.0;
    std::size_t found = 0;
    for (int k = 0; k < 60 && found < 12; ++k) {
        const double s = 1.0 + 3.0 * unit(rng);
        const TriangleSupport tri(s * Complex{unit(rng) - 0.5, unit(rng) - 0.5}, s * Complex{unit(rng) - 0.5, unit(rng) - 0.5},
                                  s * Complex{unit(rng) - 0.5, unit(rng) - 0.5});
        if (std::abs(tri.twice_area()) < 0.05 * tri.diameter() * tri.diameter()) continue;
        for (const TriangleSupport& st : stationary_supports(tri, Functional::real_part)) {
            const FrameFit fit = stationary_frame(expansion_coefficients(st), Convention::real_part);
            if (fit.residual >= 1e-8) continue;
            const double step = 1e-4 * st.diameter();
            Sym2 fd;
            try {
                fd = hessian_fd(st, Functional::real_part, step);
            } catch (const DomainError&) {
                continue;
            }
            const Sym2 rm = r_matrix(fit.frame);
            hess = std::max({hess, std::abs(fd.xx - rm.xx), std::abs(fd.xy - rm.xy), std::abs(fd.yy - rm.yy)});
            tol = std::max(1e-4, 10.0 * step * step);
            ++found;
        }
    }
    r.check("hessian_fd_matches_r", found > 0 && hess <= std::max(tol, 1e-4),
            std::to_string(found) + " stationary supports, max entry error = " + sci(hess));

    std::size_t collinear_ok = 0;
    for (int k = 0; k < 200; ++k) {
        const Complex dir = std::polar(1.0, 2.0 * kPi * unit(rng));
        const std::vector<Atom> atoms{{-(0.2 + unit(rng)) * dir, 0.2 + unit(rng)},
                                      {(unit(rng) - 0.5) * 0.3 * dir, 0.2 + unit(rng)},
                                      {(0.2 + unit(rng)) * dir, 0.2 + unit(rng)}};
        double total = 0.0;
        for (const Atom& a : atoms) total += a.prob;
        std::vector<Atom> normalized;
        for (const Atom& a : atoms) normalized.push_back({a.point, a.prob / total});
        const auto dist = center(FiniteDistribution(normalized));
        const auto dec = decompose(dist);
        bool ok = true;
        for (const auto& comp : dec.components) ok = ok && comp.dist.size() <= 2;
        if (ok) ++collinear_ok;
    }
    r.check("collinear_three_point_is_two_point_mixture", collinear_ok == 200,
            std::to_string(collinear_ok) + "/200 decompositions use only two-point pieces");

    std::ostringstream table;
    write_q_report(table, ctx.seed);
    const std::string csv = table.str();
    if (ctx.options && ctx.options->q_report) {
        std::ofstream f(*ctx.options->q_report, std::ios::binary);
        f << csv;
    }
    // Summarize: how well each candidate form matches the finite differences.
    std::istringstream in(csv);
    std::string line;
    std::size_t rows = 0;
    double shown = 0.0, expanded = 0.0, reread = 0.0, trace_claim = 0.0, det_claim = 0.0, reread_trace = 0.0,
           reread_det = 0.0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("id,", 0) == 0) continue;
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) v.push_back(std::strtod(cell.c_str(), nullptr));
        ++rows;
        shown = std::max(shown, v[13]);
        expanded = std::max(expanded, v[14]);
        reread = std::max(reread, v[15]);
        trace_claim = std::max(trace_claim, std::abs(v[18] - v[16]));
        reread_trace = std::max(reread_trace, std::abs(v[19] - v[16]));
        det_claim = std::max(det_claim, std::abs(v[22] - v[20]));
        reread_det = std::max(reread_det, std::abs(v[23] - v[20]));
    }
    r.info("Q versus finite differences at " + std::to_string(rows) + " modulus-stationary supports (max abs error):");
    r.info("  displayed entries       " + sci(shown));
    r.info("  trace claim             " + sci(trace_claim));
    r.info("  determinant claim       " + sci(det_claim));
    r.info("  direct expansion        " + sci(expanded));
    r.info("  displayed, delta->delta^2, w->w+1: entries " + sci(reread) + ", trace " + sci(reread_trace) +
           ", det " + sci(reread_det));
    r.check("q_report_generated", rows > 0, std::to_string(rows) + " rows");
}

// ---------------------------------------------------------------------------

void suite_search(Report& r, const Context& ctx)
{
    SearchOptions opts;
    opts.seed = ctx.seed;
    opts.threads = ctx.threads;

    SearchOptions small = opts;
    small.budget = 20000;
    const auto a = minimize_two_point_re(2.5, small);
    const auto b = minimize_two_point_re(2.5, small);
    bool same = a.refinement_history.size() == b.refinement_history.size() && a.best_value == b.best_value;
    for (std::size_t i = 0; same && i < a.refinement_history.size(); ++i) {
        same = a.refinement_history[i].value == b.refinement_history[i].value &&
               a.refinement_history[i].params == b.refinement_history[i].params;
    }
    r.check("seeded_determinism", same, "identical refinement history on repeat");

    double prev = std::numeric_limits<double>::infinity();
    double rise = -std::numeric_limits<double>::infinity();
    std::string values;
    for (int k = 0; k <= 6; ++k) {
        const double d = 1.0 + 0.5 * k;
        const double v = minimize_two_point_re(d, opts).best_value;
        rise = std::max(rise, v - prev);
        prev = v;
        values += (k ? ", " : "") + fixed(v, 6);
    }
    r.check("two_point_infimum_nonincreasing", rise <= 1e-12, "d = 1..4: " + values);

    const double at1 = minimize_two_point_re(1.0, opts).best_value;
    const double at4 = minimize_two_point_re(4.0, opts).best_value;
    r.check("infimum_sign_change", at1 > 0.0 && at4 < 0.0, "inf at d=1: " + fixed(at1, 6) + ", d=4: " + fixed(at4, 6));

    SearchOptions big = opts;
    big.budget = 300000;
    for (double d : {1.0, 2.0, 3.0}) {
        const double s2 = sup_abs_two_point(d, opts).best_value;
        const double s3 = sup_abs_three_point(d, big).best_value;
        r.check("three_point_vs_two_point_d" + fixed(d, 0), s3 - s2 <= 1e-5,
                "sup3 - sup2 = " + sci(s3 - s2) + ", sup2 - G = " + sci(s2 - g_function(d)));
    }

    auto rng = rng_for(ctx.seed, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double mb = -1.0;
    double cs = -1.0;
    for (int k = 0; k < 1000; ++k) {
        const double d = 3.0 + 5.0 * unit(rng);
        const auto z = random_zero_mean(rng, atoms_between(rng, 2, 10), d);
        const Complex ze = expect(z, [](Complex w) { return w * std::exp(w); });
        mb = std::max(mb, (std::abs(ze) - ze_moment_bound(d)) / ze_moment_bound(d));
        const double e2 = expect(z, [](Complex w) { return Complex{std::norm(w), 0.0}; }).real();
        const double ee2 = expect(z, [](Complex w) { return Complex{std::norm(std::exp(w)), 0.0}; }).real();
        const double var = std::max(0.0, ee2 - std::norm(expect_exp(z)));
        cs = std::max(cs, (std::abs(ze) - std::sqrt(e2 * var)) / std::max(1.0, std::abs(ze)));
    }
    r.check("ze_moment_bound", mb <= 0.0, "max (|E Z e^Z| - 3/4 d e^{d^2/8}) / bound = " + sci(mb));
    r.check("cauchy_schwarz_step", cs <= 1e-12, "max relative excess = " + sci(cs));
}

// ---------------------------------------------------------------------------

void suite_caratheodory(Report& r, const Context& ctx)
{
    auto rng = rng_for(ctx.seed, 5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr int kCases = 10000;

    double recon = 0.0;
    double transport = 0.0;
    double comp_mean = 0.0;
    double bound = -1.0;
    bool small = true;
    bool subset = true;
    bool diam = true;
    bool weights = true;
    for (int k = 0; k < kCases; ++k) {
        const auto dist = random_zero_mean(rng, atoms_between(rng, 3, 10), 0.1 + 8.0 * unit(rng));
        const auto dec = decompose(dist);
        const auto back = reconstruct(dec);

        double wsum = 0.0;
        Complex tr{0.0, 0.0};
        double tri = 0.0;
        for (const auto& c : dec.components) {
            weights = weights && c.weight >= 0.0;
            wsum += c.weight;
            small = small && c.dist.size() <= 3;
            comp_mean = std::max(comp_mean, std::abs(mean(c.dist)));
            diam = diam && diameter(c.dist) <= diameter(dist) * (1.0 + 1e-15);
            for (const Atom& a : c.dist.atoms()) {
                bool found = false;
                for (const Atom& o : dist.atoms()) found = found || o.point == a.point;
                subset = subset && found;
            }
            const Complex e = expect_exp(c.dist);
            tr += c.weight * e;
            tri += c.weight * std::abs(e - 1.0);
        }
        weights = weights && std::abs(wsum - 1.0) <= 1e-10;
        const Complex whole = expect_exp(dist);
        transport = std::max(transport, std::abs(whole - tr));
        bound = std::max(bound, std::abs(whole - 1.0) - tri);

        if (back.size() != dist.size()) {
            recon = std::numeric_limits<double>::infinity();
            continue;
        }
        for (const Atom& a : dist.atoms()) {
            double p = -1.0;
            for (const Atom& o : back.atoms()) {
                if (o.point == a.point) p = o.prob;
            }
            recon = std::max(recon, p < 0.0 ? std::numeric_limits<double>::infinity() : std::abs(p - a.prob));
        }
    }
    r.check("reconstruction", recon <= 1e-9, "max atom probability error = " + sci(recon));
    r.check("components_small_zero_mean", small && comp_mean <= 1e-9, "max component |mean| = " + sci(comp_mean));
    r.check("components_on_original_support", subset, "support subset");
    r.check("weights_convex", weights, "nonnegative, sum to 1 within 1e-10");
    r.check("expectation_transport", transport <= 1e-10, "max error = " + sci(transport));
    r.check("diameter_monotone", diam, "component diameter <= original");
    r.check("bound_transport", bound <= 1e-12, "max(|E e^Z - 1| - sum w_j |E e^Z_j - 1|) = " + sci(bound));
}

// ---------------------------------------------------------------------------

void suite_regions(Report& r, const Context& ctx)
{
    SampleOptions so;
    so.seed = ctx.seed;
    so.threads = ctx.threads;
    constexpr std::size_t kSamples = 1000000;
    constexpr std::size_t kGrid = 512;

    const RegionCloud s2 = sample_region(3.0, FamilyClass::two_point, kSamples, so);
    const RegionCloud s3 = sample_region(3.0, FamilyClass::three_point, kSamples, so);

    for (const RegionCloud* c : {&s2, &s3}) {
        const std::string tag = c->cls == FamilyClass::two_point ? "two_point" : "three_point";
        double excess = -1.0;
        for (Complex p : c->points) excess = std::max(excess, std::abs(p - 1.0) - envelope(c->d));
        r.check("inside_envelope_" + tag, excess <= 1e-9, "max(|p-1| - env) = " + sci(excess));
        const StarlikeReport st = starlike_check(*c, ctx.seed, 1000);
        r.check("starlike_" + tag, st.passed == st.checked,
                std::to_string(st.passed) + "/" + std::to_string(st.checked) + ", max value error " +
                    sci(st.max_value_error));
    }

    const auto curves2 = trace_boundary(s2, kGrid);
    double reach = 0.0;
    for (Complex v : curves2.front().vertices) reach = std::max(reach, std::abs(v - 1.0));
    const double cells = std::abs(reach - g_function(3.0)) / curves2.front().cell_size;
    r.check("two_point_reach_matches_g", cells <= 2.0, "|max|p-1| - G(3)| = " + fixed(cells, 3) + " cells");

    const OccupancyGrid g3 = rasterize(s3.points, kGrid);
    std::size_t outside = 0;
    for (Complex p : s2.points) {
        const Complex u = (p - g3.origin) / g3.cell;
        const long ci = std::lround(u.real());
        const long cj = std::lround(u.imag());
        bool near = false;
        for (long dj = -2; dj <= 2 && !near; ++dj) {
            for (long di = -2; di <= 2 && !near; ++di) {
                const long a = ci + di;
                const long b = cj + dj;
                if (a < 0 || b < 0 || a >= static_cast<long>(g3.nx) || b >= static_cast<long>(g3.ny)) continue;
                near = g3.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            }
        }
        if (!near) ++outside;
    }
    r.check("two_point_inside_three_point", outside == 0,
            std::to_string(outside) + " two-point samples farther than 2 cells from the three-point region");

    const auto h2 = geom::convex_hull(s2.points);
    const auto h3 = geom::convex_hull(s3.points);
    double hull_excess = 0.0;
    for (Complex v : h2) {
        if (!geom::point_in_polygon(v, h3)) hull_excess = std::max(hull_excess, geom::distance_to_boundary(v, h3));
    }
    r.check("hull_containment", hull_excess <= 2.0 * g3.cell, "max hull excess = " + sci(hull_excess));

    SampleOptions lean = so;
    lean.keep_params = false;
    auto min_re = [&](double d) {
        const RegionCloud c = sample_region(d, FamilyClass::three_point, 200000, lean);
        double m = std::numeric_limits<double>::infinity();
        for (Complex p : c.points) m = std::min(m, p.real());
        return m;
    };
    const double lo = min_re(3.0);
    const double hi = min_re(3.25);
    r.check("min_real_part_crosses_zero", lo > 0.0 && hi < 0.0,
            "min Re at d=3: " + fixed(lo, 6) + ", d=3.25: " + fixed(hi, 6));

    const ConvexityReport gap = convexity_gap(s3, kGrid);
    const double span = gap.max_re - gap.min_re;
    r.check("three_point_d3_indentation_on_left", gap.gap > 0.0 && gap.deepest.real() - gap.min_re <= 0.01 * span,
            "gap " + sci(gap.gap) + ", depth " + sci(gap.max_depth) + " at (" + fixed(gap.deepest.real(), 4) + ", " +
                fixed(gap.deepest.imag(), 4) + "), min Re " + fixed(gap.min_re, 4));
}

void check_custom(Report& r, const FiniteDistribution& raw)
{
    const auto z = center(raw);
    const double d = diameter(z);
    const Complex e = expect_exp(z);
    r.info("atoms " + std::to_string(z.size()) + ", diameter " + num(d) + ", E e^{Z-EZ} = " + num(e.real()) + " " +
           (e.imag() < 0 ? "- " : "+ ") + num(std::abs(e.imag())) + "i");
    r.check("envelope", std::abs(e - 1.0) <= envelope(d) + 1e-9,
            "|E e^{Z-EZ} - 1| = " + num(std::abs(e - 1.0)) + ", envelope " + num(envelope(d)));
    if (d <= 3.0) {
        r.check("below_g", std::abs(e - 1.0) <= g_function(d) + 1e-9,
                "|E e^{Z-EZ} - 1| - G(d) = " + sci(std::abs(e - 1.0) - g_function(d)));
    }
    const Disk disk = enclosing_disk(z);
    r.check("jung", disk.radius <= d / std::sqrt(3.0) + 1e-12, "radius " + num(disk.radius));
    if (z.size() >= 2) {
        const auto dec = decompose(z);
        Complex tr{0.0, 0.0};
        bool small = true;
        for (const auto& c : dec.components) {
            tr += c.weight * expect_exp(c.dist);
            small = small && c.dist.size() <= 3;
        }
        r.check("decomposition", small && std::abs(tr - e) <= 1e-10,
                std::to_string(dec.components.size()) + " components, transport error " + sci(std::abs(tr - e)));
    }
}

using Suite = std::function<void(Report&, const Context&)>;

const std::vector<std::pair<std::string, Suite>>& suites()
{
    static const std::vector<std::pair<std::string, Suite>> all{
        {"complex_dist", suite_complex_dist}, {"bounds", suite_bounds},
        {"families", suite_families},         {"search", suite_search},
        {"caratheodory", suite_caratheodory}, {"regions", suite_regions},
    };
    return all;
}

}  // namespace

const std::vector<std::string>& verify_suites()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n{"all"};
        for (const auto& s : suites()) n.push_back(s.first);
        return n;
    }();
    return names;
}

int run_verify(const VerifyOptions& o, const GlobalOptions& g, std::ostream& out)
{
    const auto& names = verify_suites();
    if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
        throw UsageError("unknown suite '" + o.suite + "'");
    }
    Context ctx;
    ctx.seed = g.seed;
    ctx.threads = g.threads;
    ctx.precision = g.precision;
    ctx.options = &o;

    out << "# verify suite=" << o.suite << " seed=" << g.seed
        << " precision=" << (g.precision == Precision::extended ? "extended" : "double") << '\n';
    Report report(out);
    if (o.dist) {
        FiniteDistribution dist = read_distribution(*o.dist);
        report.begin("custom");
        check_custom(report, dist);
    }
    for (const auto& [name, run] : suites()) {
        if (o.dist && o.suite == "all") break;
        if (o.suite != "all" && o.suite != name) continue;
        report.begin(name);
        try {
            run(report, ctx);
        } catch (const std::exception& e) {
            report.check("completed", false, std::string("exception: ") + e.what());
        }
    }
    out << "PASS " << report.passed() << '/' << report.total() << '\n';
    return report.passed() == report.total() ? kExitOk : kExitFailure;
}

}  // namespace cxh::cli
