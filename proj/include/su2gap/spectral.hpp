#ifndef SU2GAP_SPECTRAL_HPP
#define SU2GAP_SPECTRAL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "su2gap/random.hpp"
#include "su2gap/su2.hpp"

namespace su2gap {

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Iterative eigenvalue solve ran out of budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, int level = -1) : std::runtime_error(what), level_(level) {}
    int level() const { return level_; }

private:
    int level_;
};

/// Irrep of dimension n + 1 (n-th symmetric power of the defining representation).
struct IrrepLevel {
    int n = 0;
    int dim() const { return n + 1; }
};

// ---------------------------------------------------------------------------
// Irreducible representations

/**
 * Hermitian generator 2 (a1 Jx + a2 Jy + a3 Jz) on the spin n/2 module, in
 * the orthonormal monomial basis u_k = sqrt(C(n,k)) e1^{n-k} e2^k. Here
 * (a1, a2, a3) are the imaginary quaternion parts of g, so that
 * g = exp(i theta n.sigma) maps to exp(i theta/sin(theta) * generator).
 */
template <typename Scalar>
ComplexMatrix<Scalar> irrep_generator(Scalar a1, Scalar a2, Scalar a3, int n)
{
    using C = std::complex<Scalar>;
    ComplexMatrix<Scalar> h = ComplexMatrix<Scalar>::Zero(n + 1, n + 1);
    const C raise(a1, -a2);
    for (int k = 0; k <= n; ++k) {
        h(k, k) = C(a3 * Scalar(n - 2 * k));
        if (k > 0) {
            const Scalar w = std::sqrt(Scalar(k) * Scalar(n - k + 1));
            h(k - 1, k) = raise * w;
            h(k, k - 1) = std::conj(raise) * w;
        }
    }
    return h;
}

/**
 * pi_n(g), the action of g on homogeneous degree-n polynomials in the basis
 * e_k = x^{n-k} y^k sqrt(C(n,k)). n = 1 reproduces the 2x2 matrix of g.
 *
 * Computed as the exponential of the Lie-algebra generator through a Hermitian
 * eigendecomposition, which keeps the result unitary to rounding for every n.
 * Elements with negative real part are handled through pi_n(-h) = (-1)^n pi_n(h)
 * so the rotation angle stays in [0, pi/2].
 */
template <typename Scalar>
ComplexMatrix<Scalar> irrep_matrix(const SU2Element<Scalar>& g, IrrepLevel level)
{
    using C = std::complex<Scalar>;
    const int n = level.n;
    if (n < 0)
        throw std::invalid_argument("irrep level must be nonnegative");

    SU2Element<Scalar> h = g;
    Scalar sign = 1;
    if (h.alpha().real() < 0) {
        h = -h;
        if (n % 2 == 1)
            sign = -1;
    }

    const Scalar a0 = h.alpha().real();
    const Scalar a1 = h.beta().imag();
    const Scalar a2 = h.beta().real();
    const Scalar a3 = h.alpha().imag();
    const Scalar s = std::sqrt(a1 * a1 + a2 * a2 + a3 * a3);

    if (n == 0 || s == Scalar(0))
        return ComplexMatrix<Scalar>::Identity(n + 1, n + 1) * C(sign);

    const Scalar theta = std::atan2(s, a0);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> es(irrep_generator(a1, a2, a3, n));
    const Scalar scale = theta / s;
    ComplexVector<Scalar> phases(n + 1);
    for (int k = 0; k <= n; ++k)
        phases(k) = std::polar(sign, scale * es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

template <typename Scalar>
ComplexMatrix<Scalar> irrep_matrix(const SU2Element<Scalar>& g, int n)
{
    return irrep_matrix(g, IrrepLevel{n});
}

/// (pi_n(a) + pi_n(a)^* + pi_n(b) + pi_n(b)^*) / 4. Hermitian by construction, spectrum in [-1, 1].
template <typename Scalar>
ComplexMatrix<Scalar> averaging_operator(const Pair<Scalar>& p, IrrepLevel level)
{
    if (level.n < 1)
        throw std::invalid_argument("averaging operator needs level n >= 1");
    const ComplexMatrix<Scalar> ra = irrep_matrix(p.a, level);
    const ComplexMatrix<Scalar> rb = irrep_matrix(p.b, level);
    ComplexMatrix<Scalar> sa = ra + ra.adjoint();
    ComplexMatrix<Scalar> sb = rb + rb.adjoint();
    return (sa + sb) * std::complex<Scalar>(Scalar(0.25));
}

// ---------------------------------------------------------------------------
// Power iteration

struct PowerIterationOptions {
    int max_iterations = 10000;
    double tolerance = 1e-12;
    std::uint64_t restart_seed = 0x5eedULL;
    int block_size = 4; ///< columns iterated together; 1 is plain power iteration
};

template <typename Scalar>
struct EigenEstimate {
    Scalar value;
    ComplexVector<Scalar> vector;
    int iterations;
};

namespace detail {

template <typename Scalar>
ComplexMatrix<Scalar> orthonormal_basis(const ComplexMatrix<Scalar>& x)
{
    Eigen::HouseholderQR<ComplexMatrix<Scalar>> qr(x);
    return qr.householderQ() * ComplexMatrix<Scalar>::Identity(x.rows(), x.cols());
}

/// Top Rayleigh-Ritz pair of a positive semidefinite m on the span of the orthonormal columns of q.
template <typename Scalar>
Scalar top_ritz(const ComplexMatrix<Scalar>& m, const ComplexMatrix<Scalar>& q, ComplexVector<Scalar>& vec)
{
    const ComplexMatrix<Scalar> small = q.adjoint() * m * q;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> es(small);
    const Eigen::Index last = small.rows() - 1;
    vec = q * es.eigenvectors().col(last);
    return es.eigenvalues()(last);
}

/**
 * Simultaneous power iteration with Rayleigh-Ritz on a positive semidefinite
 * matrix. Stops when the top Ritz value moves by at most tolerance (relative
 * to max(1, value)) in one step.
 */
template <typename Scalar>
bool block_power_iterate(const ComplexMatrix<Scalar>& m, const ComplexMatrix<Scalar>& start, const PowerIterationOptions& opt,
                         EigenEstimate<Scalar>& out)
{
    ComplexMatrix<Scalar> q = orthonormal_basis(start);
    ComplexVector<Scalar> vec;
    Scalar rho = top_ritz(m, q, vec);
    for (int it = 1; it <= opt.max_iterations; ++it) {
        q = orthonormal_basis(ComplexMatrix<Scalar>(m * q));
        const Scalar next = top_ritz(m, q, vec);
        const bool done = std::abs(next - rho) <= Scalar(opt.tolerance) * std::max(Scalar(1), std::abs(next));
        rho = next;
        if (done) {
            out = {rho, vec, it};
            return true;
        }
    }
    out = {rho, vec, opt.max_iterations};
    return false;
}

} // namespace detail

/**
 * Largest eigenvalue of a Hermitian matrix whose spectrum lies in
 * [-shift, infinity), by block power iteration on m + shift I. The starting
 * block is the all-ones vector followed by seeded random vectors.
 */
template <typename Scalar>
EigenEstimate<Scalar> largest_eigenvalue(const ComplexMatrix<Scalar>& m, Scalar shift, const PowerIterationOptions& opt = {})
{
    if (opt.block_size < 1)
        throw std::invalid_argument("block_size must be at least 1");
    const Eigen::Index dim = m.rows();
    ComplexMatrix<Scalar> shifted = m;
    shifted.diagonal().array() += std::complex<Scalar>(shift);

    const Eigen::Index cols = std::min<Eigen::Index>(dim, opt.block_size);
    ComplexMatrix<Scalar> start(dim, cols);
    start.col(0).setOnes();
    RandomStream rng(opt.restart_seed, static_cast<std::uint64_t>(dim));
    for (Eigen::Index c = 1; c < cols; ++c)
        for (Eigen::Index i = 0; i < dim; ++i)
            start(i, c) = std::complex<Scalar>(Scalar(rng.uniform(-1, 1)), Scalar(rng.uniform(-1, 1)));

    EigenEstimate<Scalar> est;
    if (!detail::block_power_iterate(shifted, start, opt, est))
        throw ConvergenceError("power iteration did not converge within " + std::to_string(opt.max_iterations) +
                               " iterations");
    est.value -= shift;
    return est;
}

// ---------------------------------------------------------------------------
// Gaps and defects

/// 1 - lambda_max of the averaging operator on level n.
template <typename Scalar>
Scalar level_gap(const Pair<Scalar>& p, IrrepLevel level, const PowerIterationOptions& opt = {})
{
    const ComplexMatrix<Scalar> avg = averaging_operator(p, level);
    try {
        const auto top = largest_eigenvalue<Scalar>(avg, Scalar(1), opt);
        return std::clamp(Scalar(1) - top.value, Scalar(0), Scalar(2));
    }
    catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string(e.what()) + " at level " + std::to_string(level.n), level.n);
    }
}

struct LevelGap {
    int n;
    int dim;
    double gap;
};

/**
 * Per-level gaps for n = 1..n_max and their minimum.
 *
 * The spectral gap of the pair is an infimum over every level; a truncated
 * profile is evidence about it, never a certificate.
 */
struct GapProfile {
    std::vector<LevelGap> levels;
    double min_gap = std::numeric_limits<double>::infinity();
    int argmin_level = 0;
    int n_max = 0;
};

inline constexpr int kDefaultMaxLevel = 50;

template <typename Scalar>
GapProfile gap_profile(const Pair<Scalar>& p, int n_max = kDefaultMaxLevel, const PowerIterationOptions& opt = {})
{
    if (n_max < 1)
        throw std::invalid_argument("n_max must be at least 1");
    GapProfile prof;
    prof.n_max = n_max;
    prof.levels.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const double gap = double(level_gap(p, IrrepLevel{n}, opt));
        prof.levels.push_back({n, n + 1, gap});
        if (gap < prof.min_gap) {
            prof.min_gap = gap;
            prof.argmin_level = n;
        }
    }
    return prof;
}

template <typename Scalar>
struct DefectBound {
    Scalar lhs; ///< |pi(w(a,b)) v - v|
    Scalar rhs; ///< length(w) * max over generators and inverses of |pi(s) v - v|

    bool holds(Scalar tol = Scalar(1e-10)) const { return lhs <= rhs + tol; }
};

/// Word-length bound on the displacement of v by a word in the generators.
template <typename Scalar>
DefectBound<Scalar> word_defect_check(const Pair<Scalar>& p, const Word& w, IrrepLevel level, const ComplexVector<Scalar>& v)
{
    if (v.size() != level.dim())
        throw std::invalid_argument("vector dimension does not match the irrep level");
    auto displacement = [&](const SU2Element<Scalar>& g) { return (irrep_matrix(g, level) * v - v).norm(); };

    const Scalar lhs = displacement(evaluate_word(w, p));
    const Scalar step = std::max({displacement(p.a), displacement(p.a.inverse()), displacement(p.b), displacement(p.b.inverse())});
    return {lhs, Scalar(w.length()) * step};
}

/// (I - pi(a))^*(I - pi(a)) + (I - pi(b))^*(I - pi(b)).
template <typename Scalar>
ComplexMatrix<Scalar> defect_gram(const Pair<Scalar>& p, IrrepLevel level)
{
    const auto id = ComplexMatrix<Scalar>::Identity(level.dim(), level.dim());
    const ComplexMatrix<Scalar> da = id - irrep_matrix(p.a, level);
    const ComplexMatrix<Scalar> db = id - irrep_matrix(p.b, level);
    return da.adjoint() * da + db.adjoint() * db;
}

/**
 * sqrt(lambda_min) of defect_gram, i.e. the smallest singular value of the
 * stacked matrix [I - pi(a); I - pi(b)]. Lower-bounds the minimum over unit v
 * of |pi(a)v - v| + |pi(b)v - v| and is within a factor sqrt(2) of it.
 *
 * The singular value is taken directly so that a shared fixed vector gives
 * zero to rounding, rather than to the square root of rounding.
 */
template <typename Scalar>
Scalar min_defect_level(const Pair<Scalar>& p, IrrepLevel level)
{
    if (level.n < 1)
        throw std::invalid_argument("min_defect_level needs level n >= 1");
    const int d = level.dim();
    const auto id = ComplexMatrix<Scalar>::Identity(d, d);
    ComplexMatrix<Scalar> stacked(2 * d, d);
    stacked.topRows(d) = id - irrep_matrix(p.a, level);
    stacked.bottomRows(d) = id - irrep_matrix(p.b, level);
    Eigen::JacobiSVD<ComplexMatrix<Scalar>> svd(stacked);
    return svd.singularValues()(d - 1);
}

/// The same quantity by power iteration on c I - M with c the max column sum of M.
template <typename Scalar>
Scalar min_defect_level_power(const Pair<Scalar>& p, IrrepLevel level, const PowerIterationOptions& opt = {})
{
    const ComplexMatrix<Scalar> m = defect_gram(p, level);
    const Scalar c = m.cwiseAbs().colwise().sum().maxCoeff();
    const ComplexMatrix<Scalar> flipped = ComplexMatrix<Scalar>::Identity(m.rows(), m.cols()) * std::complex<Scalar>(c) - m;
    const auto top = largest_eigenvalue<Scalar>(flipped, Scalar(0), opt);
    return std::sqrt(std::max(Scalar(0), c - top.value));
}

} // namespace su2gap

#endif // SU2GAP_SPECTRAL_HPP
