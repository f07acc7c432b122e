#include <cmath>
#include <ostream>
#include <random>

#include "cxh/cli/commands.hpp"
#include "cxh/families.hpp"
#include "cxh/search.hpp"
#include "format.hpp"

namespace cxh::cli {

void write_q_report(std::ostream& out, std::uint64_t seed, std::size_t count)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x9e3779b9u};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    out << "# Q comparison at modulus-stationary supports; seed=" << seed << " triangles=" << count << '\n';
    out << "# fd = central-difference half-Hessian of |E e^{Z(x,y)-(x+iy)} - 1|^2 at (0,0)\n";
    out << "# shown = displayed Q; expanded = q_matrix_expanded; reread = displayed Q and claims with "
           "delta -> delta^2, w -> w+1\n";
    out << "id,residual,v,w,c0,c1,delta,fd_xx,fd_xy,fd_yy,shown_xx,shown_xy,shown_yy,"
           "shown_err,expanded_err,reread_err,fd_trace,shown_trace,trace_claim,reread_trace_claim,"
           "fd_det,shown_det,det_claim,reread_det_claim\n";

    std::size_t id = 0;
    for (std::size_t t = 0; t < count; ++t) {
        const double s = 1.0 + 1.5 * (unit(rng) + 1.0);
        const Complex z1 = s * Complex{unit(rng), unit(rng)};
        const Complex z2 = s * Complex{unit(rng), unit(rng)};
        const Complex z3 = s * Complex{unit(rng), unit(rng)};
        const double area2 = std::abs((z2 - z1).real() * (z3 - z1).imag() - (z2 - z1).imag() * (z3 - z1).real());
        if (area2 < 0.05 * s * s) continue;

        for (const TriangleSupport& support : stationary_supports(TriangleSupport(z1, z2, z3), Functional::modulus_squared)) {
            const FrameFit fit = stationary_frame(expansion_coefficients(support), Convention::modulus);
            const StationaryFrame& f = fit.frame;
            // C = 1 is a zero of the functional, where (v, w) is undetermined.
            if (f.delta < 1e-6 || fit.residual > 1e-8) continue;
            Sym2 fd;
            try {
                fd = hessian_fd(support, Functional::modulus_squared);
            } catch (const std::exception&) {
                continue;
            }
            const Sym2 shown = q_matrix(f);
            const Sym2 expanded = q_matrix_expanded(f);
            const StationaryFrame rf = squared_delta_frame(f);
            const Sym2 reread = q_matrix(rf);
            auto err = [&fd](const Sym2& m) {
                return std::max({std::abs(m.xx - fd.xx), std::abs(m.xy - fd.xy), std::abs(m.yy - fd.yy)});
            };
            out << id++ << ',' << sci(fit.residual, 2) << ',' << num(f.v) << ',' << num(f.w) << ',' << num(f.c0) << ','
                << num(f.c1) << ',' << num(f.delta) << ',' << fixed(fd.xx, 8) << ',' << fixed(fd.xy, 8) << ','
                << fixed(fd.yy, 8) << ',' << fixed(shown.xx, 8) << ',' << fixed(shown.xy, 8) << ','
                << fixed(shown.yy, 8) << ',' << sci(err(shown), 2) << ',' << sci(err(expanded), 2) << ','
                << sci(err(reread), 2) << ',' << fixed(fd.trace(), 8) << ',' << fixed(shown.trace(), 8) << ','
                << fixed(q_trace_claim(f), 8) << ',' << fixed(q_trace_claim(rf), 8) << ',' << fixed(fd.det(), 8)
                << ',' << fixed(shown.det(), 8) << ',' << fixed(q_det_claim(f), 8) << ','
                << fixed(q_det_claim(rf), 8) << '\n';
        }
    }
}

}  // namespace cxh::cli
