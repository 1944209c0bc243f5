#ifndef SU2GAP_DYNAMICS_HPP
#define SU2GAP_DYNAMICS_HPP

#include <array>
#include <cmath>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "su2gap/su2.hpp"
#include "su2gap/trace_geometry.hpp"

namespace su2gap {

// ---------------------------------------------------------------------------
// Endpoint iteration t -> t^2 - 2

template <typename Scalar>
struct EscapeRecord {
    Scalar t0;
    std::vector<Scalar> orbit;                   ///< orbit[0] = t0
    std::optional<std::size_t> steps_to_negative; ///< first k with orbit[k] < 0

    bool escaped() const { return steps_to_negative.has_value(); }
};

inline constexpr std::size_t kDefaultMaxSteps = 64;

/**
 * Iterates t -> t^2 - 2 from t0 until a value is strictly negative or
 * max_steps iterations have been taken. t0 = 2 is a fixed point and never
 * escapes.
 */
template <typename Scalar>
EscapeRecord<Scalar> escape_iteration(Scalar t0, std::size_t max_steps = kDefaultMaxSteps)
{
    if (!(t0 >= Scalar(-2) && t0 <= Scalar(2)))
        throw DomainError("t0 must lie in [-2, 2]");
    if (max_steps < 1)
        throw std::invalid_argument("max_steps must be at least 1");

    EscapeRecord<Scalar> rec{t0, {t0}, std::nullopt};
    for (std::size_t k = 0;; ++k) {
        if (rec.orbit[k] < Scalar(0)) {
            rec.steps_to_negative = k;
            break;
        }
        if (k == max_steps)
            break;
        rec.orbit.push_back(trace_of_square(rec.orbit[k]));
    }
    return rec;
}

template <typename Scalar>
struct Interval {
    Scalar lo;
    Scalar hi;

    bool contains(Scalar v, Scalar tol = Scalar(0)) const { return v >= lo - tol && v <= hi + tol; }
    bool contains(const Interval& other) const { return other.lo >= lo && other.hi <= hi; }
};

/// Commutator traces reached by squaring_map on the fiber {(x, t) : x^2 <= t + 2}: [t^2 - 2, 2].
template <typename Scalar>
Interval<Scalar> fiber_image_interval(Scalar t)
{
    if (!(t >= Scalar(-2) && t <= Scalar(2)))
        throw DomainError("t must lie in [-2, 2]");
    return {trace_of_square(t), Scalar(2)};
}

/// Grid evaluation of the same interval: squaring_map on grid_points evenly spaced x across the fiber.
template <typename Scalar>
Interval<Scalar> fiber_image_numeric(Scalar t, std::size_t grid_points)
{
    if (!(t >= Scalar(-2) && t <= Scalar(2)))
        throw DomainError("t must lie in [-2, 2]");
    if (grid_points < 2)
        throw std::invalid_argument("grid_points must be at least 2");

    const Scalar half = std::min(Scalar(2), std::sqrt(std::max(Scalar(0), t + Scalar(2))));
    Interval<Scalar> out{std::numeric_limits<Scalar>::infinity(), -std::numeric_limits<Scalar>::infinity()};
    for (std::size_t i = 0; i < grid_points; ++i) {
        const Scalar x = -half + Scalar(2) * half * Scalar(i) / Scalar(grid_points - 1);
        const Scalar v = squaring_map(FrickeCoord<Scalar>{x, t}).t;
        out.lo = std::min(out.lo, v);
        out.hi = std::max(out.hi, v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Word-map moves and orbits

enum class Move : unsigned char { SquareFirst, SwapGenerators, InvertFirst, MultiplyFirstBySecond };

inline constexpr std::array<Move, 4> kAllMoves = {Move::SquareFirst, Move::SwapGenerators, Move::InvertFirst,
                                                   Move::MultiplyFirstBySecond};

/// One-letter label: S (a^2, b), W (b, a), I (a^-1, b), M (ab, b).
constexpr char move_label(Move m)
{
    switch (m) {
    case Move::SquareFirst: return 'S';
    case Move::SwapGenerators: return 'W';
    case Move::InvertFirst: return 'I';
    case Move::MultiplyFirstBySecond: return 'M';
    }
    return '?';
}

template <typename Scalar>
Pair<Scalar> apply_move(const Pair<Scalar>& p, Move m)
{
    switch (m) {
    case Move::SquareFirst: return {(p.a * p.a).normalized(), p.b};
    case Move::SwapGenerators: return {p.b, p.a};
    case Move::InvertFirst: return {p.a.inverse(), p.b};
    case Move::MultiplyFirstBySecond: return {(p.a * p.b).normalized(), p.b};
    }
    return p;
}

/// The same move acting on the words that express each component in the original generators.
inline std::pair<Word, Word> apply_move(const std::pair<Word, Word>& w, Move m)
{
    switch (m) {
    case Move::SquareFirst: return {w.first * w.first, w.second};
    case Move::SwapGenerators: return {w.second, w.first};
    case Move::InvertFirst: return {w.first.inverse(), w.second};
    case Move::MultiplyFirstBySecond: return {w.first * w.second, w.second};
    }
    return w;
}

template <typename Scalar>
struct OrbitPoint {
    Pair<Scalar> pair;
    FrickeCoord<Scalar> coord;
    std::vector<Move> path;
    std::pair<Word, Word> words; ///< pair == (evaluate_word(words.first, p), evaluate_word(words.second, p))

    std::string path_label() const
    {
        std::string s;
        for (Move m : path)
            s += move_label(m);
        return s;
    }
};

/// Rounding step for orbit deduplication.
inline constexpr double kOrbitDedupStep = 1e-6;

/**
 * Breadth-first closure of p under the four moves, to the given depth and
 * truncated at max_points. Points are deduplicated on their trace triple
 * rounded to kOrbitDedupStep; the first visit in (depth, move order) wins, so
 * the output order is deterministic.
 */
template <typename Scalar>
std::vector<OrbitPoint<Scalar>> wordmap_orbit(const Pair<Scalar>& p, std::size_t depth, std::size_t max_points)
{
    using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t>;
    auto key_of = [](const Pair<Scalar>& q) {
        const auto tr = trace_triple(q);
        auto r = [](Scalar v) { return static_cast<std::int64_t>(std::llround(double(v) / kOrbitDedupStep)); };
        return Key{r(tr.x), r(tr.y), r(tr.z)};
    };

    std::vector<OrbitPoint<Scalar>> out;
    if (max_points == 0)
        return out;
    std::set<Key> seen;
    out.push_back({p, fricke_coordinates(p), {}, {Word::generator_a(), Word::generator_b()}});
    seen.insert(key_of(p));

    std::size_t level_begin = 0;
    for (std::size_t d = 0; d < depth && out.size() < max_points; ++d) {
        const std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end && out.size() < max_points; ++i) {
            for (Move m : kAllMoves) {
                Pair<Scalar> next = apply_move(out[i].pair, m);
                if (!seen.insert(key_of(next)).second)
                    continue;
                OrbitPoint<Scalar> pt{next, fricke_coordinates(next), out[i].path, apply_move(out[i].words, m)};
                pt.path.push_back(m);
                out.push_back(std::move(pt));
                if (out.size() == max_points)
                    break;
            }
        }
        level_begin = level_end;
    }
    return out;
}

} // namespace su2gap

#endif // SU2GAP_DYNAMICS_HPP
