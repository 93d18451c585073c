#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "fresnel/bounds.hpp"
#include "fresnel/core.hpp"
#include "fresnel/oracle.hpp"

// Experiment harness behind the CLI: error sweeps against the reference
// oracles, convergence-rate tables, pointwise bound verification, erfc
// bound verification, and timing.  Every command has a pure computational
// core returning a result struct (used directly by the test drivers) and
// a run_* wrapper that serializes deterministic CSV and returns the
// process exit code: 0 = success, 1 = a configured verification failed.
// Usage and I/O problems are reported by throwing; the CLI maps them to
// exit code 2.

namespace fresnel::harness {

/// Slack added to rounding-sensitive "measured <= bound" comparisons:
/// ten units in the last place at magnitude one.  Both sides of such a
/// comparison are contaminated by ordinary double rounding, so domination
/// can only be asserted up to a few ulp.
inline constexpr double domination_slack =
    10.0 * std::numeric_limits<double>::epsilon();

/// Inclusive-endpoint equispaced grid.
struct Grid {
    double lo = 0.0;
    double hi = 1.0;
    int points = 2;
};

/// x_i = lo + i (hi - lo)/(points - 1).  Throws std::invalid_argument
/// unless lo < hi and points >= 2.
std::vector<double> make_grid(const Grid& grid);

/// Reference oracle selection for sweeps.
enum class OracleKind { quad, weideman, power_series, dual };

/// Run body(i) for i in [0, count) across hardware threads in contiguous
/// chunks.  The caller writes results by index, so output order does not
/// depend on scheduling.  The first exception thrown by any body is
/// rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Serialize with 17 significant digits (round-trip exact for double).
std::string fmt17(double v);

// ---------------------------------------------------------------- eval

struct EvalOptions {
    std::vector<double> xs;
    int N = 12;
};

/// Rows (x, Re F_N, Im F_N, C_N, S_N).  Throws std::invalid_argument
/// with message "non-finite input" if any x fails std::isfinite.
int run_eval(const EvalOptions& opt, std::ostream& out);

// --------------------------------------------------------------- sweep

struct SweepOptions {
    Grid grid{0.0, 1000.0, 40000};
    std::vector<int> n_list{12};  ///< rule sizes to measure
    std::vector<int> m_list{};    ///< model degrees to measure (optional)
    OracleKind oracle = OracleKind::dual;
    std::string mode = "both";  ///< abs | rel | both: which thresholds gate
    double max_abs = 0.0;       ///< 0 disables the absolute gate
    double max_rel = 0.0;       ///< 0 disables the relative gate
};

/// One summary row: maxima over the grid for one method instance.
/// CS columns are NaN for model rows (the model computes F only).
struct SweepRow {
    std::string method;  ///< "rule" or "model"
    int param = 0;       ///< N for rule rows, M for model rows
    double f_max_abs = 0.0, f_arg_abs = 0.0;
    double f_max_rel = 0.0, f_arg_rel = 0.0;
    double c_max_abs = 0.0, c_max_rel = 0.0;
    double s_max_abs = 0.0, s_max_rel = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double seconds = 0.0;  ///< wall-clock for the whole sweep
    bool violated = false;
};

SweepResult sweep(const SweepOptions& opt);
int run_sweep(const SweepOptions& opt, std::ostream& out);

// --------------------------------------------------------- convergence

struct ConvergenceOptions {
    Grid grid{0.0, 20.0, 2001};
    std::vector<int> n_list{1, 2, 3, 4, 5, 6, 7, 8};  ///< must be ascending
    OracleKind oracle = OracleKind::quad;
};

struct ConvergenceRow {
    int N = 0;
    double max_abs = 0.0;
    double arg_max = 0.0;
    double ratio_to_prev = 0.0;  ///< maxerr_{previous N} / maxerr_N ; NaN on first row
    double implied_rate = 0.0;   ///< ln(ratio_to_prev) / (N - previous N); NaN on first row
    bool rounding_limited = false;  ///< max_abs < 100 * 2^-52
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    bool rate_violated = false;  ///< some consecutive pair in 3..8 left [pi-1, pi+1]
};

ConvergenceResult convergence(const ConvergenceOptions& opt);
int run_convergence(const ConvergenceOptions& opt, std::ostream& out);

// -------------------------------------------------------------- bounds

struct BoundsOptions {
    Grid grid{0.0, 50.0, 2000};
    std::vector<int> n_list{1, 2, 3, 4, 5, 6, 7, 8};
    OracleKind oracle = OracleKind::quad;
};

struct BoundsRow {
    int N = 0;
    double x = 0.0;
    double measured = 0.0;   ///< |F_N(x) - oracle|
    double eta = 0.0;        ///< pointwise_bound(x, N).total
    double rel_err = 0.0;    ///< measured / |oracle|
    double rel_bound = 0.0;  ///< pointwise_relative_bound(x, N)
    bool violation = false;  ///< measured > eta + domination_slack
};

struct BoundsPerN {
    int N = 0;
    double max_measured = 0.0, arg_measured = 0.0;
    double max_eta = 0.0, arg_eta = 0.0;
    int violations = 0;
};

struct BoundsResult {
    std::vector<BoundsRow> rows;        ///< grid-major within each N
    std::vector<BoundsPerN> summary;    ///< one entry per N
    int violations = 0;
};

BoundsResult bounds_sweep(const BoundsOptions& opt);
int run_bounds(const BoundsOptions& opt, std::ostream& out);

// --------------------------------------------------------------- bench

struct BenchOptions {
    std::size_t length = 10'000'000;  ///< >= 1 (std::invalid_argument otherwise)
    int N = 12;
    int M = 36;
    int repeats = 1;
    double xmax = 1000.0;
};

struct BenchRowResult {
    std::string method;  ///< "rule" or "model"
    double mean_seconds = 0.0;
    double ns_per_point = 0.0;
    double checksum = 0.0;  ///< sum of Re+Im over the vector; defeats DCE
};

struct BenchResult {
    std::vector<BenchRowResult> rows;
};

/// Per-point work note emitted with every bench report.
inline constexpr const char* bench_op_note =
    "per point, the N-term rule costs one real exp, two sin/cos pairs and "
    "N real divisions; the degree-M model costs two complex divisions, M "
    "complex multiply-adds and one sin/cos pair";

BenchResult bench(const BenchOptions& opt);
int run_bench(const BenchOptions& opt, std::ostream& out);

// ------------------------------------------------------------ appendix

struct AppendixOptions {
    double ymax = 6.0;  ///< 0 < ymax <= 6.5
    int points = 500;
    int model_degree = 50;  ///< oracle degree for the half-plane samples
};

struct AppendixAxisRow {
    double y = 0.0;
    double magnitude = 0.0;  ///< |erfc(iy)|
    double lower = 0.0, loose = 0.0, upper = 0.0;
    double g = 0.0;  ///< G_magnitude(y)
    bool in_range = false;
};

struct AppendixRhpRow {
    double re = 0.0, im = 0.0;
    double magnitude = 0.0;  ///< |erfc(z)| via the Faddeeva model
    double lower = 0.0, loose = 0.0, upper = 0.0;
    bool in_range = false;
};

struct AppendixResult {
    std::vector<AppendixAxisRow> axis;
    std::vector<AppendixRhpRow> rhp;  ///< 10 radii x 20 rays, Re z > 0
    double min_g = 0.0;
    int violations = 0;
};

AppendixResult appendix(const AppendixOptions& opt);
int run_appendix(const AppendixOptions& opt, std::ostream& out);

}  // namespace fresnel::harness
