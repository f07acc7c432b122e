#pragma once

// Attainable values of E e^Z over the zero-mean two-point and three-point
// families with diameter at most d: point clouds, traced boundaries, and
// shape diagnostics.

#include <cstdint>
#include <vector>

#include "cxh/complex_dist.hpp"

namespace cxh {

enum class FamilyClass { two_point, three_point };

/// Number of generating parameters per sample for the class.
std::size_t param_dims(FamilyClass cls) noexcept;

struct RegionCloud {
    double d = 0.0;
    FamilyClass cls = FamilyClass::two_point;
    std::vector<Complex> points;
    /// Row-major, param_dims(cls) values per point; empty when not kept.
    /// Two-point rows are (ell, x, theta); three-point rows use the
    /// search module's six-parameter encoding.
    std::vector<double> params;

    std::span<const double> params_of(std::size_t i) const
    {
        const std::size_t k = param_dims(cls);
        return std::span<const double>(params).subspan(i * k, k);
    }
};

struct SampleOptions {
    std::uint64_t seed = 0;
    bool keep_params = true;
    unsigned threads = 1;
};

/// n values of E e^Z from Sobol sweeps of the family's parameter box.
/// Sample 0 is the degenerate distribution (value exactly 1); half of the
/// rest sit on the full-diameter face of the box, where the outer boundary
/// of the region is attained.
RegionCloud sample_region(double d, FamilyClass cls, std::size_t n, const SampleOptions& options = {});

/// Rebuilds the distribution behind sample i (needs kept params).
FiniteDistribution sample_distribution(const RegionCloud& cloud, std::size_t i);

/// Binary occupancy raster of a point set with two empty cells of padding
/// on every side. Cells are square.
struct OccupancyGrid {
    Complex origin;  // center of cell (0, 0), which is padding
    double cell = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<unsigned char> occupied;

    bool at(std::size_t i, std::size_t j) const { return occupied[j * nx + i] != 0; }
    Complex center(std::size_t i, std::size_t j) const
    {
        return origin + Complex{static_cast<double>(i) * cell, static_cast<double>(j) * cell};
    }
    std::size_t count() const;
};

/// Rasterizes points onto a grid with `resolution` cells along the longer
/// side of their bounding box, applies a one-cell morphological closing,
/// then fills enclosed holes.
OccupancyGrid rasterize(std::span<const Complex> points, std::size_t resolution);

struct BoundaryCurve {
    /// Closed: the first vertex is repeated at the end. Counterclockwise.
    std::vector<Complex> vertices;
    double cell_size = 0.0;

    double area() const;
};

/// Marching squares on the occupancy raster; contours sorted by enclosed
/// area, largest first. Throws DomainError when fewer than 8 cells are
/// occupied.
std::vector<BoundaryCurve> trace_boundary(const RegionCloud& cloud, std::size_t grid_resolution);
std::vector<BoundaryCurve> trace_boundary(std::span<const Complex> points, std::size_t grid_resolution);

struct StarlikeReport {
    std::size_t checked = 0;
    std::size_t passed = 0;
    double max_value_error = 0.0;
    double max_diameter_excess = 0.0;
};

/// Mixes sampled Z with the point mass at 0 for weights c in [0, 1] and
/// checks E e^{mix} = 1 + c (E e^Z - 1) to 1e-12 and diam(mix) <= d.
/// The first two checks use c = 1 and c = 0.
StarlikeReport starlike_check(const RegionCloud& cloud, std::uint64_t seed, std::size_t pairs = 1000);

/// Non-convexity of a point set, measured against its convex hull. Each
/// hull edge is cut into bins one raster cell wide; a bin's floor is the
/// smallest distance from the edge to a point in the bin's angular sector
/// (seen from the hull centroid), taken as the minimum over the bin and its
/// two neighbours so single empty bins do not count as pockets. With a
/// densely sampled boundary this resolves dents shallower than a cell.
struct ConvexityReport {
    /// Pocket area / hull area, where pocket area sums floor * bin width.
    double gap = 0.0;
    double hull_area = 0.0;
    /// hull_area minus the pocket area.
    double region_area = 0.0;
    /// Area enclosed by the traced raster boundary, for reference.
    double raster_area = 0.0;
    /// Deepest floor and the point on it.
    double max_depth = 0.0;
    Complex deepest{0.0, 0.0};
    double cell_size = 0.0;
    /// Real-part range of the points.
    double min_re = 0.0;
    double max_re = 0.0;
};

/// Throws DomainError for point sets whose hull is degenerate.
ConvexityReport convexity_gap(const RegionCloud& cloud, std::size_t grid_resolution);
ConvexityReport convexity_gap(std::span<const Complex> points, std::size_t grid_resolution);

}  // namespace cxh
