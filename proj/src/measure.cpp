#include "su2gap/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace su2gap {

int Histogram2D::bin_of(double v) const
{
    const int i = static_cast<int>(std::floor((v - lo) / width()));
    return std::clamp(i, 0, bins - 1);
}

std::vector<std::uint64_t> Histogram2D::x_marginal() const
{
    std::vector<std::uint64_t> m(static_cast<std::size_t>(bins), 0);
    for (int r = 0; r < bins; ++r)
        for (int c = 0; c < bins; ++c)
            m[static_cast<std::size_t>(c)] += at(r, c);
    return m;
}

bool cell_outside_domain(const Histogram2D& h, int row, int col)
{
    const double x0 = h.edge(col);
    const double x1 = h.edge(col + 1);
    const double t1 = h.edge(row + 1);
    const double min_sq = (x0 <= 0.0 && x1 >= 0.0) ? 0.0 : std::min(x0 * x0, x1 * x1);
    return t1 < min_sq - 2.0;
}

namespace {

/// Real roots of u^3 + p u + q = 0.
std::vector<double> depressed_cubic_roots(double p, double q)
{
    std::vector<double> roots;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s));
    }
    else {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0));
    }
    for (double& u : roots) {
        for (int it = 0; it < 3; ++it) {
            const double f = u * u * u + p * u + q;
            const double df = 3.0 * u * u + p;
            if (df == 0.0)
                break;
            u -= f / df;
        }
    }
    return roots;
}

template <typename ChunkFn>
void run_chunks(const MonteCarloOptions& opt, ChunkFn&& fn)
{
    const unsigned chunks = std::max(1u, opt.chunks);
    const unsigned threads = std::clamp(opt.threads, 1u, chunks);
    if (threads == 1) {
        for (unsigned c = 0; c < chunks; ++c)
            fn(c);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (unsigned c = w; c < chunks; c += threads)
                fn(c);
        });
}

std::uint64_t chunk_size(std::uint64_t total, unsigned chunks, unsigned c)
{
    return total / chunks + (c < total % chunks ? 1 : 0);
}

} // namespace

double distance_to_domain_boundary(double x, double t)
{
    double best = std::min({std::abs(2.0 - t), std::abs(t + 2.0), std::abs(2.0 - x), std::abs(x + 2.0)});

    // nearest point (u, u^2 - 2) on the parabola: 2u^3 + (1 - 2(t + 2)) u - x = 0
    std::vector<double> cand = depressed_cubic_roots((1.0 - 2.0 * (t + 2.0)) / 2.0, -x / 2.0);
    cand.push_back(-2.0);
    cand.push_back(2.0);
    for (double u : cand) {
        u = std::clamp(u, -2.0, 2.0);
        const double dt = u * u - 2.0 - t;
        best = std::min(best, std::hypot(u - x, dt));
    }
    return best;
}

Histogram2D pushforward_histogram(std::uint64_t sample_count, int bins, const MonteCarloOptions& opt)
{
    if (sample_count < 1)
        throw std::invalid_argument("sample_count must be at least 1");
    if (bins < 2)
        throw std::invalid_argument("bins must be at least 2");

    const unsigned chunks = std::max(1u, opt.chunks);
    std::vector<Histogram2D> parts(chunks);
    const RandomStream root(opt.seed);
    run_chunks(opt, [&](unsigned c) {
        Histogram2D& h = parts[c];
        h.bins = bins;
        h.counts.assign(static_cast<std::size_t>(bins) * bins, 0);
        h.max_domain_excess = -std::numeric_limits<double>::infinity();
        RandomStream rng = root.split(c);
        const std::uint64_t n = chunk_size(sample_count, chunks, c);
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto fc = fricke_coordinates(haar_pair(rng));
            h.max_domain_excess = std::max(h.max_domain_excess, fc.x * fc.x - 2.0 - fc.t);
            ++h.at(h.bin_of(fc.t), h.bin_of(fc.x));
        }
        h.total = n;
    });

    Histogram2D out;
    out.bins = bins;
    out.seed = opt.seed;
    out.counts.assign(static_cast<std::size_t>(bins) * bins, 0);
    out.max_domain_excess = -std::numeric_limits<double>::infinity();
    for (const auto& h : parts) {
        for (std::size_t i = 0; i < out.counts.size(); ++i)
            out.counts[i] += h.counts[i];
        out.total += h.total;
        out.max_domain_excess = std::max(out.max_domain_excess, h.max_domain_excess);
    }
    return out;
}

double boundary_mass(std::uint64_t sample_count, double delta, const MonteCarloOptions& opt)
{
    if (sample_count < 1)
        throw std::invalid_argument("sample_count must be at least 1");
    if (!(delta > 0.0))
        throw std::invalid_argument("delta must be positive");

    const unsigned chunks = std::max(1u, opt.chunks);
    std::vector<std::uint64_t> near(chunks, 0);
    const RandomStream root(opt.seed);
    run_chunks(opt, [&](unsigned c) {
        RandomStream rng = root.split(c);
        const std::uint64_t n = chunk_size(sample_count, chunks, c);
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto fc = fricke_coordinates(haar_pair(rng));
            if (distance_to_domain_boundary(fc.x, fc.t) <= delta)
                ++near[c];
        }
    });
    std::uint64_t hits = 0;
    for (auto n : near)
        hits += n;
    return double(hits) / double(sample_count);
}

namespace {

constexpr double kDegenerateFiberTol = 1e-12;

} // namespace

FiberSample sample_fiber(double t, std::size_t count, std::uint64_t seed)
{
    if (!(t >= -2.0 && t <= 2.0))
        throw DomainError("fiber parameter t must lie in [-2, 2]");

    FiberSample out;
    out.t = t;
    out.pairs.reserve(count);
    RandomStream rng(seed);

    if (t <= -2.0 + kDegenerateFiberTol) {
        out.degenerate = true;
        const Paird base = pair_from_traces(0.0, 0.0, 0.0);
        for (std::size_t i = 0; i < count; ++i) {
            const SU2d k = haar_sample(rng);
            out.pairs.push_back({k * base.a * k.inverse(), k * base.b * k.inverse()});
        }
        out.attempts = count;
        return out;
    }

    // x^2 <= t + 2 and y^2 <= t + 2 on the fiber
    const double half = std::min(2.0, std::sqrt(t + 2.0));
    const std::uint64_t budget = 100000ULL * count + 1000000ULL;
    while (out.pairs.size() < count) {
        if (++out.attempts > budget)
            throw std::runtime_error("fiber sampling exceeded its attempt budget");
        const double x = rng.uniform(-half, half);
        const double y = rng.uniform(-half, half);
        const double disc = x * x * y * y - 4.0 * (x * x + y * y - 2.0 - t);
        if (disc < 0.0)
            continue;
        const double s = std::sqrt(disc);
        const std::array<double, 2> roots = {(x * y - s) / 2.0, (x * y + s) / 2.0};
        for (double z : roots) {
            if (std::abs(z) > 2.0 || !in_trace_region(x, y, z))
                continue;
            const Paird base = pair_from_traces(x, y, z);
            const SU2d k = haar_sample(rng);
            out.pairs.push_back({k * base.a * k.inverse(), k * base.b * k.inverse()});
            if (out.pairs.size() == count)
                break;
        }
    }
    return out;
}

TransportResult fiber_transport_demo(double t, std::size_t count, int bins, std::uint64_t seed)
{
    if (bins < 1)
        throw std::invalid_argument("bins must be at least 1");
    const FiberSample fiber = sample_fiber(t, count, seed);

    TransportResult out;
    out.t = t;
    out.degenerate = fiber.degenerate;
    out.expected = fiber_image_interval(t);
    out.observed = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    out.histogram.assign(static_cast<std::size_t>(bins), 0);
    out.values.reserve(fiber.pairs.size());
    const double width = 4.0 / bins;
    for (const Paird& p : fiber.pairs) {
        const double v = fricke_coordinates(apply_move(p, Move::SquareFirst)).t;
        out.values.push_back(v);
        out.observed.lo = std::min(out.observed.lo, v);
        out.observed.hi = std::max(out.observed.hi, v);
        const int b = std::clamp(static_cast<int>(std::floor((v + 2.0) / width)), 0, bins - 1);
        ++out.histogram[static_cast<std::size_t>(b)];
    }
    return out;
}

} // namespace su2gap
