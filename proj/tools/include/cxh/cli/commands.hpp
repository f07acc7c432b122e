#pragma once

// Command implementations behind the cxhoeff executable. Each command
// writes its primary output to `out` and returns a process exit status.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cxh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Thrown for option values outside their documented range.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Precision { double_, extended };

struct GlobalOptions {
    unsigned threads = 0;
    Precision precision = Precision::double_;
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> out;
};

struct GfunOptions {
    double d_min = 0.0;
    double d_max = 5.0;
    std::size_t steps = 51;
};

struct D0Options {
    double tol = 1e-7;
    std::size_t budget = 200000;
};

struct SupremumOptions {
    int cls = 2;
    double d = 2.0;
    std::size_t budget = 200000;
};

struct RegionOptions {
    double d = 3.0;
    int cls = 2;
    std::size_t samples = 1000000;
    std::size_t grid = 512;
    std::optional<std::filesystem::path> cloud_out;
};

struct Figure1Options {
    std::size_t samples = 1000000;
    std::size_t grid = 512;
};

struct VerifyOptions {
    std::string suite = "all";
    /// Where to archive the Q comparison table (CSV); not written when unset.
    std::optional<std::filesystem::path> q_report;
    /// Distribution file (`re im prob` per line) checked on its own.
    std::optional<std::filesystem::path> dist;
};

int run_gfun(const GfunOptions& o, const GlobalOptions& g, std::ostream& out);
int run_d0(const D0Options& o, const GlobalOptions& g, std::ostream& out);
int run_supremum(const SupremumOptions& o, const GlobalOptions& g, std::ostream& out);
/// Boundary CSV goes to g.out when set, otherwise to `out`.
int run_region(const RegionOptions& o, const GlobalOptions& g, std::ostream& out);
/// Writes eight boundary CSVs into the directory g.out (default: current
/// directory) and a summary table to `out`.
int run_figure1(const Figure1Options& o, const GlobalOptions& g, std::ostream& out);
int run_verify(const VerifyOptions& o, const GlobalOptions& g, std::ostream& out);

/// Suite names accepted by verify, "all" included.
const std::vector<std::string>& verify_suites();

/// The Q comparison at modulus-stationary supports found from `count`
/// seeded random triangles, as CSV with a '#' header. Deterministic.
void write_q_report(std::ostream& out, std::uint64_t seed, std::size_t count = 40);

}  // namespace cxh::cli
