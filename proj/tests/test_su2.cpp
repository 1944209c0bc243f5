#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "su2gap/su2.hpp"

using namespace su2gap;

namespace {

const SU2d kI = SU2d::identity();
const SU2d kDiagI = SU2d::diagonal(std::numbers::pi / 2); // diag(i, -i)
const SU2d kQuarterTurn = SU2d::rotation(std::numbers::pi / 2); // [[0,-1],[1,0]]

double matrix_distance(const SU2d& g, const oracle::Mat2& m) { return (g.matrix() - m).norm(); }

} // namespace

TEST_CASE("trace of fixed elements")
{
    CHECK(trace(kI) == 2.0);
    CHECK(trace(-kI) == -2.0);
    CHECK(trace(kDiagI) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("commutator examples")
{
    RandomStream rng(7);
    const SU2d a = haar_sample(rng);
    CHECK(approx_equal(commutator(a, a), kI));
    CHECK(approx_equal(commutator(a, kI), kI));

    // direct 2x2 product
    const oracle::Mat2 expect = oracle::comm(oracle::mat(kDiagI), oracle::mat(kQuarterTurn));
    CHECK((expect + oracle::Mat2::Identity()).norm() < 1e-15);
    const SU2d c = commutator(kDiagI, kQuarterTurn);
    CHECK(approx_equal(c, -kI));
    CHECK(c.trace() == doctest::Approx(-2.0));
}

TEST_CASE("multiply and inverse agree with matrix arithmetic")
{
    RandomStream rng(11);
    for (int i = 0; i < 1000; ++i) {
        const SU2d g = haar_sample(rng);
        const SU2d h = haar_sample(rng);
        CHECK(matrix_distance(multiply(g, h), oracle::mat(g) * oracle::mat(h)) < 1e-14);
        CHECK(matrix_distance(inverse(g), oracle::mat(g).adjoint()) < 1e-15);
        CHECK(matrix_distance(g * g.inverse(), oracle::Mat2::Identity()) < 1e-14);
    }
}

TEST_CASE("haar samples satisfy the group invariants")
{
    RandomStream rng(3);
    for (int i = 0; i < 10000; ++i) {
        const SU2d g = haar_sample(rng);
        const oracle::Mat2 m = oracle::mat(g);
        REQUIRE(std::abs(m.determinant() - 1.0) < 1e-12);
        REQUIRE((m.adjoint() * m - oracle::Mat2::Identity()).norm() < 1e-12);
        REQUIRE(std::abs(g.trace()) <= 2.0);
    }
}

TEST_CASE("trace identities hold for random elements")
{
    RandomStream rng(5);
    for (int i = 0; i < 10000; ++i) {
        const SU2d g = haar_sample(rng);
        const SU2d h = haar_sample(rng);
        REQUIRE(std::abs((g * h * g.inverse()).trace() - h.trace()) < 1e-12);
        REQUIRE(std::abs(g.trace() - g.inverse().trace()) < 1e-12);
        // Cayley-Hamilton: g^2 - tr(g) g + I = 0
        const oracle::Mat2 m = oracle::mat(g);
        REQUIRE((m * m - g.trace() * m + oracle::Mat2::Identity()).norm() < 1e-12);
    }
}

TEST_CASE("haar trace mean matches the Weyl integration value")
{
    // Weyl integration: class functions integrate against (2/pi) sin^2(theta) on [0, pi].
    const double mass = oracle::simpson([](double th) { return 2 / std::numbers::pi * std::sin(th) * std::sin(th); }, 0,
                                        std::numbers::pi, 2000);
    const double weyl_mean = oracle::simpson(
        [](double th) { return 2 * std::cos(th) * 2 / std::numbers::pi * std::sin(th) * std::sin(th); }, 0, std::numbers::pi,
        2000);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(weyl_mean) < 1e-12);

    RandomStream rng(2024);
    double sum = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
        sum += haar_sample(rng).trace();
    CHECK(std::abs(sum / n - weyl_mean) < 0.02);
}

TEST_CASE("haar trace histogram passes a 50-bin chi-square against the semicircle law")
{
    RandomStream rng(99);
    std::vector<std::uint64_t> counts(50, 0);
    for (int i = 0; i < 1000000; ++i) {
        const double x = haar_sample(rng).trace();
        const int b = std::clamp(int(std::floor((x + 2) / 4 * 50)), 0, 49);
        ++counts[b];
    }
    CHECK(oracle::semicircle_chi_square(counts) < oracle::kChiSquare999Dof49);
}

TEST_CASE("random stream is reproducible and splits independently")
{
    RandomStream a(42), b(42);
    for (int i = 0; i < 100; ++i)
        CHECK(a() == b());
    RandomStream r(42);
    auto s0 = r.split(0), s1 = r.split(1), s0b = RandomStream(42).split(0);
    CHECK(s0() == s0b());
    CHECK(s0() != s1());
    CHECK(RandomStream(42)() != RandomStream(43)());
}

TEST_CASE("words are freely reduced and parse both notations")
{
    const Word w = Word::parse("A B A^-1 B⁻¹");
    CHECK(w.str() == "ABab");
    CHECK(Word::parse("ABab") == w);
    CHECK(Word::parse("AaBb").empty());
    CHECK(Word::parse("ABba").empty());
    CHECK((w * w.inverse()).empty());
    CHECK_THROWS_AS(Word::parse("AXb"), std::invalid_argument);

    RandomStream rng(1);
    for (int i = 0; i < 200; ++i) {
        const Word r = random_reduced_word(1 + rng.below(20), rng);
        CHECK(Word::is_reduced(r.letters()));
    }
}

TEST_CASE("evaluate_word basics")
{
    RandomStream rng(8);
    const Paird p = haar_pair(rng);
    CHECK(approx_equal(evaluate_word(Word{}, p), kI));
    CHECK(approx_equal(evaluate_word(Word::parse("A"), p), p.a));
    CHECK(approx_equal(evaluate_word(Word::parse("A B A^-1 B^-1"), p), commutator(p.a, p.b)));
}

TEST_CASE("evaluate_word is a homomorphism on concatenation")
{
    RandomStream rng(9);
    for (int i = 0; i < 500; ++i) {
        const Paird p = haar_pair(rng);
        const Word u = random_reduced_word(rng.below(40), rng);
        const Word v = random_reduced_word(rng.below(40), rng);
        REQUIRE(approx_equal(evaluate_word(u * v, p), evaluate_word(u, p) * evaluate_word(v, p)));
    }
}

TEST_CASE("long word evaluation stays on the group")
{
    RandomStream rng(10);
    const Paird p = haar_pair(rng);
    const Word w = random_reduced_word(5000, rng);
    CHECK(unitarity_defect(evaluate_word(w, p)) < 1e-12);
}
