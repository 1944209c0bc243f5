#ifndef SU2GAP_TRACE_GEOMETRY_HPP
#define SU2GAP_TRACE_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "su2gap/su2.hpp"

namespace su2gap {

/// Input lies outside the realizable set of the requested construction.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// One-sided slack for membership tests and boundary clamping.
inline constexpr double kMembershipTol = 1e-12;

/// (trace a, trace [a,b]).
template <typename Scalar>
struct FrickeCoord {
    Scalar x;
    Scalar t;
};

/// (trace a, trace b, trace ab).
template <typename Scalar>
struct TraceTriple {
    Scalar x;
    Scalar y;
    Scalar z;
};

using FrickeCoordd = FrickeCoord<double>;
using TraceTripled = TraceTriple<double>;

// ---------------------------------------------------------------------------
// Trace identities

/// trace(a^2) as a function of trace(a).
template <typename Scalar>
constexpr Scalar trace_of_square(Scalar x)
{
    return x * x - Scalar(2);
}

/// trace([a^2, b]) as a function of trace(a) and trace([a, b]).
template <typename Scalar>
constexpr Scalar commutator_trace_of_square(Scalar x, Scalar t)
{
    return x * x * (t - Scalar(2)) + Scalar(2);
}

/// trace([a,b]) from the classical trace coordinates (Fricke-Vogt identity).
template <typename Scalar>
constexpr Scalar fricke_commutator_trace(const TraceTriple<Scalar>& tr)
{
    return tr.x * tr.x + tr.y * tr.y + tr.z * tr.z - tr.x * tr.y * tr.z - Scalar(2);
}

/**
 * The plane map induced by (a, b) -> (a^2, b) on Fricke coordinates:
 * (x, t) -> (x^2 - 2, x^2 (t - 2) + 2).
 */
template <typename Scalar>
constexpr FrickeCoord<Scalar> squaring_map(const FrickeCoord<Scalar>& c)
{
    return {trace_of_square(c.x), commutator_trace_of_square(c.x, c.t)};
}

// ---------------------------------------------------------------------------
// Realizable regions

/// {(x,t) in [-2,2]^2 : x^2 - 2 <= t}, boundary accepted within tol.
template <typename Scalar>
bool in_fricke_domain(Scalar x, Scalar t, Scalar tol = Scalar(kMembershipTol))
{
    return std::abs(x) <= Scalar(2) + tol && std::abs(t) <= Scalar(2) + tol && x * x - Scalar(2) <= t + tol;
}

template <typename Scalar>
bool in_fricke_domain(const FrickeCoord<Scalar>& c, Scalar tol = Scalar(kMembershipTol))
{
    return in_fricke_domain(c.x, c.t, tol);
}

/// {(x,y,z) in [-2,2]^3 : x^2 + y^2 + z^2 - xyz - 4 <= 0}, boundary accepted within tol.
template <typename Scalar>
bool in_trace_region(Scalar x, Scalar y, Scalar z, Scalar tol = Scalar(kMembershipTol))
{
    const Scalar lim = Scalar(2) + tol;
    if (std::abs(x) > lim || std::abs(y) > lim || std::abs(z) > lim)
        return false;
    return x * x + y * y + z * z - x * y * z - Scalar(4) <= tol;
}

template <typename Scalar>
bool in_trace_region(const TraceTriple<Scalar>& tr, Scalar tol = Scalar(kMembershipTol))
{
    return in_trace_region(tr.x, tr.y, tr.z, tol);
}

// ---------------------------------------------------------------------------
// Coordinates of a pair

/// Projection (a, b) -> (trace a, trace [a,b]).
template <typename Scalar>
FrickeCoord<Scalar> fricke_coordinates(const Pair<Scalar>& p)
{
    return {p.a.trace(), commutator(p.a, p.b).trace()};
}

template <typename Scalar>
TraceTriple<Scalar> trace_triple(const Pair<Scalar>& p)
{
    return {p.a.trace(), p.b.trace(), (p.a * p.b).trace()};
}

// ---------------------------------------------------------------------------
// Explicit constructions

namespace detail {

template <typename Scalar>
Scalar clamp_unit(Scalar v)
{
    return std::clamp(v, Scalar(0), Scalar(1));
}

template <typename Scalar>
Scalar clamp_trace(Scalar v)
{
    return std::clamp(v, Scalar(-2), Scalar(2));
}

inline std::string fmt_point(double a, double b)
{
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

} // namespace detail

/**
 * A pair with Fricke coordinates (x, t):
 *
 *   a = diag(e^{i alpha}, e^{-i alpha}),  x = 2 cos alpha,  alpha in [0, pi]
 *   b = [[sqrt(1-s), -sqrt(s)], [sqrt(s), sqrt(1-s)]],  s = (2 - t) / (4 - x^2)
 *
 * For |x| = 2 the domain forces t = 2 and the result is (sign(x) I, I).
 * Throws DomainError when (x, t) is outside the domain beyond kMembershipTol.
 */
template <typename Scalar>
Pair<Scalar> pair_from_fricke(Scalar x, Scalar t)
{
    if (!in_fricke_domain(x, t))
        throw DomainError("point " + detail::fmt_point(double(x), double(t)) + " is outside the domain x^2 - 2 <= t");
    x = detail::clamp_trace(x);
    t = detail::clamp_trace(t);

    const Scalar width = Scalar(4) - x * x;
    if (width <= Scalar(0)) {
        const Scalar sign = x > 0 ? Scalar(1) : Scalar(-1);
        return {SU2Element<Scalar>(std::complex<Scalar>(sign), std::complex<Scalar>(0)), SU2Element<Scalar>::identity()};
    }

    const Scalar alpha = std::acos(x / Scalar(2));
    const Scalar s = detail::clamp_unit((Scalar(2) - t) / width);
    const Scalar c = std::sqrt(Scalar(1) - s);
    const Scalar d = std::sqrt(s);
    return {SU2Element<Scalar>::diagonal(alpha), SU2Element<Scalar>(std::complex<Scalar>(c), std::complex<Scalar>(-d))};
}

template <typename Scalar>
Pair<Scalar> pair_from_fricke(const FrickeCoord<Scalar>& c)
{
    return pair_from_fricke(c.x, c.t);
}

/**
 * A pair with trace triple (x, y, z).
 *
 * a is diagonal with angle alpha = acos(x/2). The (1,1) entry p of b solves
 * Re p = y/2 and cos(alpha) Re p - sin(alpha) Im p = z/2; the (1,2) entry is
 * the real nonnegative sqrt(1 - |p|^2). When |x| = 2, a = sign(x) I and b is
 * the real rotation with trace y; membership then forces z = sign(x) y.
 */
template <typename Scalar>
Pair<Scalar> pair_from_traces(Scalar x, Scalar y, Scalar z)
{
    if (!in_trace_region(x, y, z))
        throw DomainError("triple (" + std::to_string(double(x)) + ", " + std::to_string(double(y)) + ", " +
                          std::to_string(double(z)) + ") is outside the realizable trace region");
    x = detail::clamp_trace(x);
    y = detail::clamp_trace(y);
    z = detail::clamp_trace(z);

    const Scalar half_y = y / Scalar(2);
    if (Scalar(4) - x * x <= Scalar(0)) {
        const Scalar sign = x > 0 ? Scalar(1) : Scalar(-1);
        const Scalar off = std::sqrt(detail::clamp_unit(Scalar(1) - half_y * half_y));
        return {SU2Element<Scalar>(std::complex<Scalar>(sign), std::complex<Scalar>(0)),
                SU2Element<Scalar>(std::complex<Scalar>(half_y), std::complex<Scalar>(-off))};
    }

    const Scalar alpha = std::acos(x / Scalar(2));
    const Scalar sin_a = std::sin(alpha);
    const Scalar cos_a = x / Scalar(2);
    Scalar re_p = half_y;
    Scalar im_p = (cos_a * re_p - z / Scalar(2)) / sin_a;
    Scalar norm2 = re_p * re_p + im_p * im_p;
    if (norm2 > Scalar(1)) {
        // boundary round-off; pull back onto the unit circle
        const Scalar r = std::sqrt(norm2);
        re_p /= r;
        im_p /= r;
        norm2 = Scalar(1);
    }
    const Scalar q = std::sqrt(Scalar(1) - norm2);
    return {SU2Element<Scalar>::diagonal(alpha), SU2Element<Scalar>(std::complex<Scalar>(re_p, im_p), std::complex<Scalar>(q))};
}

template <typename Scalar>
Pair<Scalar> pair_from_traces(const TraceTriple<Scalar>& tr)
{
    return pair_from_traces(tr.x, tr.y, tr.z);
}

} // namespace su2gap

#endif // SU2GAP_TRACE_GEOMETRY_HPP
