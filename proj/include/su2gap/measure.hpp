#ifndef SU2GAP_MEASURE_HPP
#define SU2GAP_MEASURE_HPP

#include <cstdint>
#include <vector>

#include "su2gap/dynamics.hpp"
#include "su2gap/su2.hpp"
#include "su2gap/trace_geometry.hpp"

namespace su2gap {

/**
 * Seeding and work split for Monte Carlo runs. Samples are divided into
 * `chunks` blocks, block i drawing from RandomStream(seed).split(i). Results
 * depend on (seed, chunks) only; `threads` just caps concurrency.
 */
struct MonteCarloOptions {
    std::uint64_t seed = 1;
    unsigned chunks = 16;
    unsigned threads = 1;
};

/// Counts of (x, t) on [-2,2]^2. Row index bins t, column index bins x.
struct Histogram2D {
    int bins = 0;
    std::vector<std::uint64_t> counts; ///< row-major, bins * bins
    std::uint64_t total = 0;
    double max_domain_excess = 0; ///< max of x^2 - 2 - t over samples; <= 0 when all land in the domain
    std::uint64_t seed = 0;

    static constexpr double lo = -2.0;
    static constexpr double hi = 2.0;

    double width() const { return (hi - lo) / bins; }
    double edge(int i) const { return lo + width() * i; }
    double center(int i) const { return lo + width() * (i + 0.5); }
    int bin_of(double v) const;

    std::uint64_t& at(int row, int col) { return counts[static_cast<std::size_t>(row) * bins + col]; }
    std::uint64_t at(int row, int col) const { return counts[static_cast<std::size_t>(row) * bins + col]; }

    /// Column sums: the histogram of x alone.
    std::vector<std::uint64_t> x_marginal() const;
};

/// True when the cell has no point in common with the Fricke domain.
bool cell_outside_domain(const Histogram2D& h, int row, int col);

/// Euclidean distance from (x, t) to {t = x^2 - 2} u {|x| = 2} u {t = +-2}, each restricted to [-2,2]^2.
double distance_to_domain_boundary(double x, double t);

/// Haar pairs pushed through fricke_coordinates and binned.
Histogram2D pushforward_histogram(std::uint64_t sample_count, int bins, const MonteCarloOptions& opt = {});

/// Fraction of Haar pairs whose Fricke coordinates lie within delta of the domain boundary.
double boundary_mass(std::uint64_t sample_count, double delta, const MonteCarloOptions& opt = {});

struct FiberSample {
    double t = 0;
    std::vector<Paird> pairs;
    bool degenerate = false; ///< t = -2: every pair is a conjugate of one construction
    std::uint64_t attempts = 0;
};

/**
 * Pairs with trace([a,b]) = t. Draws (x, y) uniformly on the square that
 * contains the fiber's projection, solves z^2 - xyz + (x^2 + y^2 - 2 - t) = 0,
 * keeps every root in [-2, 2], builds the pair with pair_from_traces and
 * conjugates it by an independent Haar element.
 *
 * This covers the whole fiber but is not the disintegrated Haar measure.
 * At t = -2 the result is flagged degenerate and holds conjugates of the
 * (0, 0, 0) construction.
 */
FiberSample sample_fiber(double t, std::size_t count, std::uint64_t seed);

struct TransportResult {
    double t = 0;
    Interval<double> expected{};            ///< [t^2 - 2, 2]
    Interval<double> observed{};            ///< min and max transported trace
    std::vector<std::uint64_t> histogram;   ///< over [-2, 2]
    std::vector<double> values;             ///< trace([a^2, b]) per sample
    bool degenerate = false;
};

/// Fiber samples pushed through (a, b) -> (a^2, b); records the new commutator traces.
TransportResult fiber_transport_demo(double t, std::size_t count, int bins, std::uint64_t seed);

} // namespace su2gap

#endif // SU2GAP_MEASURE_HPP
