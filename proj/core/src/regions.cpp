#include "cxh/regions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <unordered_map>

#include <boost/random/sobol.hpp>

#include "cxh/families.hpp"
#include "cxh/geometry.hpp"
#include "cxh/parallel.hpp"
#include "cxh/search.hpp"

namespace cxh {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> rotation_for(std::uint64_t seed, std::size_t dims)
{
    std::vector<double> shift(dims, 0.0);
    if (seed == 0) return shift;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x85ebca6bu};
    std::mt19937_64 rng(seq);
    for (double& s : shift) s = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return shift;
}

// Fills out[begin, end) with Sobol points of the given dimension,
// Cranley-Patterson rotated by shift.
void sobol_block(std::size_t dims, std::size_t begin, std::size_t end, const std::vector<double>& shift,
                 const std::function<void(std::size_t, const double*)>& sink)
{
    boost::random::sobol qrng(dims);
    qrng.discard(static_cast<boost::uintmax_t>(begin) * dims);
    const double scale = 1.0 / (static_cast<double>(boost::random::sobol::max()) + 1.0);
    std::array<double, kThreePointDims> u{};
    for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t k = 0; k < dims; ++k) {
            double t = static_cast<double>(qrng()) * scale + shift[k];
            if (t >= 1.0) t -= 1.0;
            u[k] = t;
        }
        sink(i, u.data());
    }
}

// Adaptive sampling of the full-diameter two-point face (x, theta) in
// [0,1] x [-pi, pi]. Starting from a uniform lattice, the cell whose image
// is longest is halved until `count` distinct lattice points have
// been produced, so samples end up roughly evenly spaced in the image even
// where the map stretches by orders of magnitude.
void refine_two_point_face(double d, std::size_t count, const std::function<void(double, double)>& sink)
{
    if (count == 0) return;
    constexpr int kMaxLevel = 20;
    const std::uint64_t base = std::clamp<std::uint64_t>(
        static_cast<std::uint64_t>(std::sqrt(static_cast<double>(count))) - 1, 1, 32);
    const std::uint64_t M = base << kMaxLevel;

    std::unordered_map<std::uint64_t, Complex> value;
    value.reserve(count * 2);
    std::size_t produced = 0;
    auto key = [M](std::uint64_t i, std::uint64_t j) { return i * (M + 1) + j; };
    auto at = [&](std::uint64_t i, std::uint64_t j) -> Complex {
        const auto k = key(i, j);
        if (auto it = value.find(k); it != value.end()) return it->second;
        const double x = static_cast<double>(i) / static_cast<double>(M);
        const double theta = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
        const Complex v = two_point_value({d, x, theta});
        value.emplace(k, v);
        if (produced < count) {
            sink(x, theta);
            ++produced;
        }
        return v;
    };

    struct Cell {
        double size;
        std::uint64_t i, j, si, sj;
        bool split_x;
        bool operator<(const Cell& o) const
        {
            if (size != o.size) return size < o.size;
            if (i != o.i) return i > o.i;
            return j > o.j;
        }
    };
    auto make = [&](std::uint64_t i, std::uint64_t j, std::uint64_t si, std::uint64_t sj) {
        const Complex a = at(i, j);
        const Complex b = at(i + si, j);
        const Complex c = at(i, j + sj);
        const Complex e = at(i + si, j + sj);
        const double along_x = std::max(std::abs(b - a), std::abs(e - c));
        const double along_t = std::max(std::abs(c - a), std::abs(e - b));
        const bool split_x = sj == 1 || (si > 1 && along_x >= along_t);
        return Cell{std::max(along_x, along_t), i, j, si, sj, split_x};
    };

    std::priority_queue<Cell> heap;
    const std::uint64_t s0 = std::uint64_t{1} << kMaxLevel;
    for (std::uint64_t i = 0; i < base && produced < count; ++i) {
        for (std::uint64_t j = 0; j < base && produced < count; ++j) heap.push(make(i * s0, j * s0, s0, s0));
    }
    // Each split halves the cell along the direction whose image is longer.
    while (produced < count && !heap.empty()) {
        const Cell c = heap.top();
        heap.pop();
        if (c.si == 1 && c.sj == 1) continue;
        if (c.split_x) {
            const std::uint64_t h = c.si / 2;
            heap.push(make(c.i, c.j, h, c.sj));
            heap.push(make(c.i + h, c.j, h, c.sj));
        } else {
            const std::uint64_t h = c.sj / 2;
            heap.push(make(c.i, c.j, c.si, h));
            heap.push(make(c.i, c.j + h, c.si, h));
        }
    }
}

// Six-parameter triangle encoding of two_point({d, x, theta}): the two
// atoms sit on vertices 0 and 2 (opposite rays, gap pi), vertex 1 carries
// no mass and stays close enough to the origin not to affect the diameter.
std::array<double, kThreePointDims> encode_two_point(double x, double theta)
{
    double ratio = 0.0;
    double rotation = theta;
    if (x <= 0.5) {
        ratio = x / (1.0 - x);
    } else {
        ratio = (1.0 - x) / x;
        rotation += kPi;
    }
    rotation = std::fmod(rotation, 2.0 * kPi);
    if (rotation < 0.0) rotation += 2.0 * kPi;
    return {rotation, 0.5, 0.5, std::min(1.0, ratio), ratio, 1.0};
}

}  // namespace

std::size_t param_dims(FamilyClass cls) noexcept
{
    return cls == FamilyClass::two_point ? 3 : kThreePointDims;
}

RegionCloud sample_region(double d, FamilyClass cls, std::size_t n, const SampleOptions& options)
{
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw DomainError("sample_region: diameter must be positive");
    }
    if (n < 1) {
        throw DomainError("sample_region: need at least one sample");
    }
    const std::size_t dims = param_dims(cls);
    RegionCloud cloud;
    cloud.d = d;
    cloud.cls = cls;
    cloud.points.resize(n);
    if (options.keep_params) cloud.params.assign(n * dims, 0.0);

    // Sample 0: all-zero parameters (ell = 0, or scale = 0) give E e^Z = 1.
    cloud.points[0] = Complex{1.0, 0.0};

    auto emit = [&](std::size_t slot, std::span<const double> p) {
        if (cls == FamilyClass::two_point) {
            cloud.points[slot] = two_point_value({p[0], p[1], p[2]});
        } else {
            cloud.points[slot] = three_point_value(p, d);
        }
        if (options.keep_params) {
            std::copy(p.begin(), p.end(), cloud.params.begin() + static_cast<std::ptrdiff_t>(slot * dims));
        }
    };

    const std::size_t rest = n - 1;
    std::size_t two_face = 0;
    std::size_t tri_face = 0;
    if (cls == FamilyClass::two_point) {
        two_face = rest - rest / 4;
    } else {
        two_face = rest / 2;
        tri_face = rest / 4 + rest / 8;
    }
    const std::size_t inside = rest - two_face - tri_face;

    std::size_t slot = 1;
    refine_two_point_face(d, two_face, [&](double x, double theta) {
        if (cls == FamilyClass::two_point) {
            const std::array<double, 3> p{d, x, theta};
            emit(slot++, p);
        } else {
            const auto p = encode_two_point(x, theta);
            emit(slot++, p);
        }
    });

    const std::size_t face_dims = dims - 1;
    const auto face_shift = rotation_for(options.seed, face_dims);
    parallel_blocks(tri_face, options.threads, [&](std::size_t begin, std::size_t end) {
        sobol_block(face_dims, begin, end, face_shift, [&](std::size_t i, const double* u) {
            const std::array<double, kThreePointDims> p{2.0 * kPi * u[0], u[1], u[2], u[3], u[4], 1.0};
            emit(1 + two_face + i, p);
        });
    });

    const auto shift = rotation_for(options.seed ^ 0x5bd1e995ULL, dims);
    parallel_blocks(inside, options.threads, [&](std::size_t begin, std::size_t end) {
        sobol_block(dims, begin, end, shift, [&](std::size_t i, const double* u) {
            std::array<double, kThreePointDims> p{};
            if (cls == FamilyClass::two_point) {
                p = {d * u[0], u[1], -kPi + 2.0 * kPi * u[2]};
            } else {
                p = {2.0 * kPi * u[0], u[1], u[2], u[3], u[4], u[5]};
            }
            emit(1 + two_face + tri_face + i, std::span<const double>(p.data(), dims));
        });
    });
    return cloud;
}

FiniteDistribution sample_distribution(const RegionCloud& cloud, std::size_t i)
{
    if (cloud.params.empty()) {
        throw DomainError("sample_distribution: cloud was sampled without parameters");
    }
    const auto p = cloud.params_of(i);
    if (cloud.cls == FamilyClass::two_point) {
        return two_point({p[0], p[1], p[2]});
    }
    if (p[5] == 0.0) return FiniteDistribution::point_mass(Complex{0.0, 0.0});
    return three_point(p, cloud.d);
}

std::size_t OccupancyGrid::count() const
{
    return static_cast<std::size_t>(std::count(occupied.begin(), occupied.end(), 1));
}

OccupancyGrid rasterize(std::span<const Complex> points, std::size_t resolution)
{
    if (points.empty()) {
        throw DomainError("rasterize: empty point set");
    }
    if (resolution < 2) {
        throw DomainError("rasterize: resolution must be at least 2");
    }
    double min_x = points[0].real(), max_x = min_x;
    double min_y = points[0].imag(), max_y = min_y;
    for (Complex p : points) {
        min_x = std::min(min_x, p.real());
        max_x = std::max(max_x, p.real());
        min_y = std::min(min_y, p.imag());
        max_y = std::max(max_y, p.imag());
    }
    const double extent = std::max(max_x - min_x, max_y - min_y);
    if (!(extent > 0.0)) {
        throw DomainError("rasterize: all points coincide");
    }

    OccupancyGrid g;
    g.cell = extent / static_cast<double>(resolution);
    const auto cells_x = static_cast<std::size_t>(std::floor((max_x - min_x) / g.cell)) + 1;
    const auto cells_y = static_cast<std::size_t>(std::floor((max_y - min_y) / g.cell)) + 1;
    constexpr std::size_t pad = 2;
    g.nx = cells_x + 2 * pad;
    g.ny = cells_y + 2 * pad;
    g.origin = Complex{min_x - (pad - 0.5) * g.cell, min_y - (pad - 0.5) * g.cell};
    g.occupied.assign(g.nx * g.ny, 0);
    for (Complex p : points) {
        const auto i = std::min(cells_x - 1, static_cast<std::size_t>((p.real() - min_x) / g.cell));
        const auto j = std::min(cells_y - 1, static_cast<std::size_t>((p.imag() - min_y) / g.cell));
        g.occupied[(j + pad) * g.nx + (i + pad)] = 1;
    }

    // Closing with a 3x3 block: bridges gaps of up to two cells between
    // samples and never clears a cell that holds a point.
    auto sweep = [&g](const std::vector<unsigned char>& in, bool dilate) {
        std::vector<unsigned char> out(in.size(), 0);
        for (std::size_t j = 1; j + 1 < g.ny; ++j) {
            for (std::size_t i = 1; i + 1 < g.nx; ++i) {
                bool any = false;
                bool all = true;
                for (std::size_t b = j - 1; b <= j + 1; ++b) {
                    for (std::size_t a = i - 1; a <= i + 1; ++a) {
                        const bool on = in[b * g.nx + a] != 0;
                        any = any || on;
                        all = all && on;
                    }
                }
                out[j * g.nx + i] = (dilate ? any : all) ? 1 : 0;
            }
        }
        return out;
    };
    g.occupied = sweep(sweep(g.occupied, true), false);

    // Fill holes: empty cells not 8-connected to the padding ring.
    std::vector<unsigned char> outside(g.occupied.size(), 0);
    std::deque<std::size_t> queue{0};
    outside[0] = 1;
    while (!queue.empty()) {
        const std::size_t idx = queue.front();
        queue.pop_front();
        const auto i = static_cast<long>(idx % g.nx);
        const auto j = static_cast<long>(idx / g.nx);
        for (long dj = -1; dj <= 1; ++dj) {
            for (long di = -1; di <= 1; ++di) {
                const long a = i + di;
                const long b = j + dj;
                if (a < 0 || b < 0 || a >= static_cast<long>(g.nx) || b >= static_cast<long>(g.ny)) continue;
                const auto k = static_cast<std::size_t>(b) * g.nx + static_cast<std::size_t>(a);
                if (outside[k] || g.occupied[k]) continue;
                outside[k] = 1;
                queue.push_back(k);
            }
        }
    }
    for (std::size_t k = 0; k < g.occupied.size(); ++k) {
        if (!outside[k]) g.occupied[k] = 1;
    }
    return g;
}

double BoundaryCurve::area() const
{
    if (vertices.size() < 4) return 0.0;
    return geom::signed_area(std::span<const Complex>(vertices).first(vertices.size() - 1));
}

namespace {

// Edge-midpoint identifiers: 2 * cell index for the edge to the right
// neighbour, 2 * cell index + 1 for the edge to the upper neighbour.
enum Side { kBottom, kRight, kTop, kLeft };

std::vector<BoundaryCurve> march(const OccupancyGrid& g)
{
    // Oriented segments per case, occupied region on the left.
    static const std::vector<std::pair<Side, Side>> table[16] = {
        {},
        {{kBottom, kLeft}},
        {{kRight, kBottom}},
        {{kRight, kLeft}},
        {{kTop, kRight}},
        {{kBottom, kLeft}, {kTop, kRight}},
        {{kTop, kBottom}},
        {{kTop, kLeft}},
        {{kLeft, kTop}},
        {{kBottom, kTop}},
        {{kRight, kBottom}, {kLeft, kTop}},
        {{kRight, kTop}},
        {{kLeft, kRight}},
        {{kBottom, kRight}},
        {{kLeft, kBottom}},
        {},
    };

    auto edge_id = [&](std::size_t i, std::size_t j, Side s) -> std::size_t {
        switch (s) {
        case kBottom: return 2 * (j * g.nx + i);
        case kTop: return 2 * ((j + 1) * g.nx + i);
        case kLeft: return 2 * (j * g.nx + i) + 1;
        case kRight: return 2 * (j * g.nx + i + 1) + 1;
        }
        return 0;
    };
    auto edge_point = [&](std::size_t id) {
        const std::size_t cell = id / 2;
        const std::size_t i = cell % g.nx;
        const std::size_t j = cell / g.nx;
        const Complex c = g.center(i, j);
        return (id % 2 == 0) ? c + Complex{0.5 * g.cell, 0.0} : c + Complex{0.0, 0.5 * g.cell};
    };

    std::unordered_map<std::size_t, std::size_t> next;
    for (std::size_t j = 0; j + 1 < g.ny; ++j) {
        for (std::size_t i = 0; i + 1 < g.nx; ++i) {
            const unsigned idx = (g.at(i, j) ? 1u : 0u) | (g.at(i + 1, j) ? 2u : 0u) |
                                 (g.at(i + 1, j + 1) ? 4u : 0u) | (g.at(i, j + 1) ? 8u : 0u);
            for (const auto& [from, to] : table[idx]) next[edge_id(i, j, from)] = edge_id(i, j, to);
        }
    }

    // Walk loops in increasing start-id order so output is deterministic.
    std::vector<std::size_t> starts;
    starts.reserve(next.size());
    for (const auto& kv : next) starts.push_back(kv.first);
    std::sort(starts.begin(), starts.end());

    std::vector<BoundaryCurve> curves;
    std::unordered_map<std::size_t, bool> used;
    for (std::size_t s : starts) {
        if (used[s]) continue;
        BoundaryCurve c;
        c.cell_size = g.cell;
        std::size_t cur = s;
        do {
            used[cur] = true;
            c.vertices.push_back(edge_point(cur));
            cur = next.at(cur);
        } while (cur != s);
        c.vertices.push_back(c.vertices.front());
        curves.push_back(std::move(c));
    }
    std::stable_sort(curves.begin(), curves.end(),
                     [](const BoundaryCurve& a, const BoundaryCurve& b) { return a.area() > b.area(); });
    return curves;
}

}  // namespace

std::vector<BoundaryCurve> trace_boundary(std::span<const Complex> points, std::size_t grid_resolution)
{
    const OccupancyGrid g = rasterize(points, grid_resolution);
    if (g.count() < 8) {
        throw DomainError("trace_boundary: resolution too coarse (fewer than 8 occupied cells)");
    }
    return march(g);
}

std::vector<BoundaryCurve> trace_boundary(const RegionCloud& cloud, std::size_t grid_resolution)
{
    return trace_boundary(cloud.points, grid_resolution);
}

StarlikeReport starlike_check(const RegionCloud& cloud, std::uint64_t seed, std::size_t pairs)
{
    StarlikeReport report;
    if (cloud.points.empty()) return report;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x27d4eb2du};
    std::mt19937_64 rng(seq);
    const FiniteDistribution zero = FiniteDistribution::point_mass(Complex{0.0, 0.0});

    for (std::size_t k = 0; k < pairs; ++k) {
        const std::size_t i = static_cast<std::size_t>(rng() % cloud.points.size());
        double c = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (k == 0) c = 1.0;
        if (k == 1) c = 0.0;

        const FiniteDistribution z = sample_distribution(cloud, i);
        const std::array<FiniteDistribution, 2> parts{z, zero};
        const std::array<double, 2> weights{c, 1.0 - c};
        const FiniteDistribution mixed = mix(parts, weights);

        const Complex expected = 1.0 + c * (cloud.points[i] - 1.0);
        const double err = std::abs(expect_exp(mixed) - expected);
        const double excess = std::max(0.0, diameter(mixed) - cloud.d);
        report.max_value_error = std::max(report.max_value_error, err);
        report.max_diameter_excess = std::max(report.max_diameter_excess, excess);
        ++report.checked;
        if (err <= 1e-12 && excess <= 1e-12 * cloud.d) ++report.passed;
    }
    return report;
}

ConvexityReport convexity_gap(std::span<const Complex> points, std::size_t grid_resolution)
{
    const auto curves = trace_boundary(points, grid_resolution);
    ConvexityReport r;
    r.cell_size = curves.front().cell_size;
    for (const auto& c : curves) r.raster_area += c.area();

    const auto hull = geom::convex_hull(points);
    r.hull_area = hull.size() >= 3 ? geom::signed_area(hull) : 0.0;
    if (!(r.hull_area > 0.0)) {
        throw DomainError("convexity_gap: degenerate (collinear) cloud");
    }
    r.min_re = points.front().real();
    r.max_re = r.min_re;
    for (Complex p : points) {
        r.min_re = std::min(r.min_re, p.real());
        r.max_re = std::max(r.max_re, p.real());
    }

    // Sectors seen from the hull centroid, one per edge.
    const std::size_t h = hull.size();
    Complex c{0.0, 0.0};
    for (Complex v : hull) c += v;
    c /= static_cast<double>(h);
    std::vector<double> angle(h + 1);
    for (std::size_t k = 0; k < h; ++k) {
        angle[k] = std::arg(hull[k] - c);
        while (k > 0 && angle[k] < angle[k - 1]) angle[k] += 2.0 * kPi;
    }
    angle[h] = angle[0] + 2.0 * kPi;

    std::vector<std::size_t> offset(h + 1, 0);
    for (std::size_t k = 0; k < h; ++k) {
        const double len = std::abs(hull[(k + 1) % h] - hull[k]);
        offset[k + 1] = offset[k] + std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / r.cell_size)));
    }
    std::vector<double> floor(offset[h], std::numeric_limits<double>::infinity());

    for (Complex p : points) {
        double phi = std::arg(p - c);
        while (phi < angle[0]) phi += 2.0 * kPi;
        while (phi >= angle[h]) phi -= 2.0 * kPi;
        const auto it = std::upper_bound(angle.begin(), angle.end(), phi);
        const std::size_t k = std::min<std::size_t>(h - 1, static_cast<std::size_t>(it - angle.begin()) - 1);
        const Complex a = hull[k];
        const Complex e = hull[(k + 1) % h] - a;
        const double len = std::abs(e);
        const double t = geom::dot(p - a, e) / (len * len);
        const double depth = std::max(0.0, geom::cross(e, p - a) / len);
        const std::size_t nb = offset[k + 1] - offset[k];
        const auto b = static_cast<std::size_t>(std::clamp(t * static_cast<double>(nb), 0.0, static_cast<double>(nb - 1)));
        floor[offset[k] + b] = std::min(floor[offset[k] + b], depth);
    }

    double pocket_area = 0.0;
    for (std::size_t k = 0; k < h; ++k) {
        const std::size_t nb = offset[k + 1] - offset[k];
        const Complex a = hull[k];
        const Complex e = hull[(k + 1) % h] - a;
        const double width = std::abs(e) / static_cast<double>(nb);
        const Complex inward = Complex{0.0, 1.0} * e / std::abs(e);
        const double* f = &floor[offset[k]];
        for (std::size_t b = 0; b < nb; ++b) {
            double depth = f[b];
            if (b > 0) depth = std::min(depth, f[b - 1]);
            if (b + 1 < nb) depth = std::min(depth, f[b + 1]);
            if (!std::isfinite(depth)) continue;
            pocket_area += depth * width;
            if (depth > r.max_depth) {
                r.max_depth = depth;
                const double t = (static_cast<double>(b) + 0.5) / static_cast<double>(nb);
                r.deepest = a + t * e + depth * inward;
            }
        }
    }
    r.region_area = r.hull_area - pocket_area;
    r.gap = pocket_area / r.hull_area;
    return r;
}

ConvexityReport convexity_gap(const RegionCloud& cloud, std::size_t grid_resolution)
{
    return convexity_gap(cloud.points, grid_resolution);
}

}  // namespace cxh
