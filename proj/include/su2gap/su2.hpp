#ifndef SU2GAP_SU2_HPP
#define SU2GAP_SU2_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "su2gap/random.hpp"

namespace su2gap {

/**
 * Element of SU(2) stored as the pair (alpha, beta) of the matrix
 *
 *     [  alpha        beta      ]
 *     [ -conj(beta)   conj(alpha) ]
 *
 * with |alpha|^2 + |beta|^2 = 1.
 */
template <typename Scalar>
class SU2Element {
public:
    using RealScalar = Scalar;
    using Complex = std::complex<Scalar>;
    using Matrix2 = Eigen::Matrix<Complex, 2, 2>;

    constexpr SU2Element() : alpha_(1), beta_(0) {}
    constexpr SU2Element(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {}

    static SU2Element identity() { return {}; }

    /// diag(e^{i angle}, e^{-i angle}).
    static SU2Element diagonal(Scalar angle) { return {std::polar(Scalar(1), angle), Complex(0)}; }

    /// Real rotation [[cos, -sin], [sin, cos]].
    static SU2Element rotation(Scalar angle)
    {
        return {Complex(std::cos(angle)), Complex(-std::sin(angle))};
    }

    /// Unit quaternion w + x i + y j + z k, with i = diag(i,-i), j = [[0,1],[-1,0]], k = [[0,i],[i,0]].
    static SU2Element from_quaternion(Scalar w, Scalar x, Scalar y, Scalar z) { return {Complex(w, x), Complex(y, z)}; }

    /// Reads (alpha, beta) off the first row; no projection is applied.
    static SU2Element from_matrix(const Matrix2& m) { return {m(0, 0), m(0, 1)}; }

    const Complex& alpha() const { return alpha_; }
    const Complex& beta() const { return beta_; }

    Matrix2 matrix() const
    {
        Matrix2 m;
        m << alpha_, beta_, -std::conj(beta_), std::conj(alpha_);
        return m;
    }

    Scalar norm_squared() const { return std::norm(alpha_) + std::norm(beta_); }

    /// Projects back onto the unit sphere.
    SU2Element normalized() const
    {
        const Scalar r = std::sqrt(norm_squared());
        return {alpha_ / r, beta_ / r};
    }

    Scalar trace() const { return Scalar(2) * alpha_.real(); }

    /// Conjugate transpose, which is the group inverse.
    SU2Element inverse() const { return {std::conj(alpha_), -beta_}; }

    SU2Element operator-() const { return {-alpha_, -beta_}; }

    friend SU2Element operator*(const SU2Element& g, const SU2Element& h)
    {
        // first row of [[a1,b1],[-b1*,a1*]] [[a2,b2],[-b2*,a2*]]
        return {g.alpha_ * h.alpha_ - g.beta_ * std::conj(h.beta_),
                g.alpha_ * h.beta_ + g.beta_ * std::conj(h.alpha_)};
    }

    SU2Element& operator*=(const SU2Element& h) { return *this = *this * h; }

    template <typename NewScalar>
    SU2Element<NewScalar> cast() const
    {
        return {std::complex<NewScalar>(alpha_), std::complex<NewScalar>(beta_)};
    }

private:
    Complex alpha_;
    Complex beta_;
};

using SU2d = SU2Element<double>;

template <typename Scalar>
struct Pair {
    SU2Element<Scalar> a;
    SU2Element<Scalar> b;
};

using Paird = Pair<double>;

/// Componentwise equality on (alpha, beta).
template <typename Scalar>
bool approx_equal(const SU2Element<Scalar>& g, const SU2Element<Scalar>& h, Scalar tol = Scalar(1e-10))
{
    return std::abs(g.alpha() - h.alpha()) <= tol && std::abs(g.beta() - h.beta()) <= tol;
}

template <typename Scalar>
bool approx_equal(const Pair<Scalar>& p, const Pair<Scalar>& q, Scalar tol = Scalar(1e-10))
{
    return approx_equal(p.a, q.a, tol) && approx_equal(p.b, q.b, tol);
}

template <typename Scalar>
Scalar trace(const SU2Element<Scalar>& g)
{
    return g.trace();
}

template <typename Scalar>
SU2Element<Scalar> inverse(const SU2Element<Scalar>& g)
{
    return g.inverse();
}

template <typename Scalar>
SU2Element<Scalar> multiply(const SU2Element<Scalar>& g, const SU2Element<Scalar>& h)
{
    return g * h;
}

/// a b a^{-1} b^{-1}
template <typename Scalar>
SU2Element<Scalar> commutator(const SU2Element<Scalar>& a, const SU2Element<Scalar>& b)
{
    return a * b * a.inverse() * b.inverse();
}

/// Largest deviation from |alpha|^2 + |beta|^2 = 1.
template <typename Scalar>
Scalar unitarity_defect(const SU2Element<Scalar>& g)
{
    return std::abs(g.norm_squared() - Scalar(1));
}

/**
 * Haar-distributed element (Shoemake's subgroup algorithm: three uniforms
 * give a uniform point on the unit 3-sphere).
 */
template <typename Scalar = double>
SU2Element<Scalar> haar_sample(RandomStream& rng)
{
    constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    const Scalar u1 = Scalar(rng.uniform());
    const Scalar u2 = Scalar(rng.uniform());
    const Scalar u3 = Scalar(rng.uniform());
    const Scalar r1 = std::sqrt(Scalar(1) - u1);
    const Scalar r2 = std::sqrt(u1);
    return SU2Element<Scalar>(std::complex<Scalar>(r2 * std::cos(two_pi * u3), r1 * std::sin(two_pi * u2)),
                              std::complex<Scalar>(r1 * std::cos(two_pi * u2), r2 * std::sin(two_pi * u3)));
}

template <typename Scalar = double>
Pair<Scalar> haar_pair(RandomStream& rng)
{
    auto a = haar_sample<Scalar>(rng);
    auto b = haar_sample<Scalar>(rng);
    return {a, b};
}

// ---------------------------------------------------------------------------
// Free-group words on two generators

enum class Letter : unsigned char { A, AInv, B, BInv };

constexpr Letter inverse(Letter l)
{
    switch (l) {
    case Letter::A: return Letter::AInv;
    case Letter::AInv: return Letter::A;
    case Letter::B: return Letter::BInv;
    case Letter::BInv: return Letter::B;
    }
    return l;
}

/**
 * Freely reduced word over {A, A^-1, B, B^-1}. Every constructor reduces, so
 * no two adjacent letters cancel.
 *
 * Text form: "A", "B" for generators; "a", "b", "A^-1" or "A⁻¹" for inverses.
 * Whitespace between letters is optional.
 */
class Word {
public:
    Word() = default;
    Word(std::initializer_list<Letter> letters) { append(letters.begin(), letters.end()); }
    explicit Word(const std::vector<Letter>& letters) { append(letters.begin(), letters.end()); }

    static Word generator_a() { return Word{Letter::A}; }
    static Word generator_b() { return Word{Letter::B}; }

    /// Throws std::invalid_argument on unknown symbols.
    static Word parse(std::string_view text);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word inverse() const
    {
        Word w;
        w.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            w.letters_.push_back(su2gap::inverse(*it));
        return w;
    }

    /// Concatenation followed by free reduction.
    friend Word operator*(const Word& u, const Word& v)
    {
        Word w = u;
        w.append(v.letters_.begin(), v.letters_.end());
        return w;
    }

    bool operator==(const Word&) const = default;

    /// Compact text form, lowercase for inverses ("ABab").
    std::string str() const
    {
        std::string s;
        for (Letter l : letters_) {
            switch (l) {
            case Letter::A: s += 'A'; break;
            case Letter::AInv: s += 'a'; break;
            case Letter::B: s += 'B'; break;
            case Letter::BInv: s += 'b'; break;
            }
        }
        return s;
    }

    static bool is_reduced(const std::vector<Letter>& letters)
    {
        for (std::size_t i = 1; i < letters.size(); ++i)
            if (letters[i] == su2gap::inverse(letters[i - 1]))
                return false;
        return true;
    }

private:
    template <typename It>
    void append(It first, It last)
    {
        for (; first != last; ++first) {
            if (!letters_.empty() && letters_.back() == su2gap::inverse(*first))
                letters_.pop_back();
            else
                letters_.push_back(*first);
        }
    }

    std::vector<Letter> letters_;
};

inline Word Word::parse(std::string_view text)
{
    std::vector<Letter> out;
    std::size_t i = 0;
    auto starts_with = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == ',' || c == '*' || c == '.') {
            ++i;
            continue;
        }
        Letter l;
        switch (c) {
        case 'A': l = Letter::A; break;
        case 'a': l = Letter::AInv; break;
        case 'B': l = Letter::B; break;
        case 'b': l = Letter::BInv; break;
        default: throw std::invalid_argument("unknown letter in word: '" + std::string(text) + "'");
        }
        ++i;
        if (starts_with("^-1")) {
            i += 3;
            l = su2gap::inverse(l);
        }
        else if (starts_with("⁻¹")) {
            i += std::string_view("⁻¹").size();
            l = su2gap::inverse(l);
        }
        out.push_back(l);
    }
    return Word(out);
}

/// Uniformly random freely reduced word of exactly the given length.
inline Word random_reduced_word(std::size_t length, RandomStream& rng)
{
    std::vector<Letter> letters;
    letters.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        Letter l;
        do {
            l = static_cast<Letter>(rng.below(4));
        } while (!letters.empty() && l == inverse(letters.back()));
        letters.push_back(l);
    }
    return Word(letters);
}

/// Multiplications between renormalizations in long products.
inline constexpr std::size_t kRenormalizeEvery = 32;

template <typename Scalar>
const SU2Element<Scalar>& substitute(Letter l, const Pair<Scalar>& p, const Pair<Scalar>& inv)
{
    switch (l) {
    case Letter::A: return p.a;
    case Letter::AInv: return inv.a;
    case Letter::B: return p.b;
    case Letter::BInv: return inv.b;
    }
    return p.a;
}

/// Substitutes a for A and b for B and multiplies left to right.
template <typename Scalar>
SU2Element<Scalar> evaluate_word(const Word& w, const Pair<Scalar>& p)
{
    const Pair<Scalar> inv{p.a.inverse(), p.b.inverse()};
    SU2Element<Scalar> g;
    std::size_t since = 0;
    for (Letter l : w.letters()) {
        g *= substitute(l, p, inv);
        if (++since == kRenormalizeEvery) {
            g = g.normalized();
            since = 0;
        }
    }
    return g;
}

} // namespace su2gap

#endif // SU2GAP_SU2_HPP
