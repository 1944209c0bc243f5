#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "su2gap/dynamics.hpp"

using namespace su2gap;

TEST_CASE("escape iteration examples")
{
    const auto fixed = escape_iteration(-1.0);
    REQUIRE(fixed.escaped());
    CHECK(*fixed.steps_to_negative == 0);

    // oracle: iterate by hand, 1.9 -> 1.61 -> 0.5921 -> 0.5921^2 - 2
    const auto rec = escape_iteration(1.9);
    REQUIRE(rec.escaped());
    CHECK(*rec.steps_to_negative == 3);
    REQUIRE(rec.orbit.size() == 4);
    CHECK(rec.orbit[1] == doctest::Approx(1.61).epsilon(1e-14));
    CHECK(rec.orbit[2] == doctest::Approx(0.5921).epsilon(1e-13));
    CHECK(rec.orbit[3] == doctest::Approx(-1.64941759).epsilon(1e-12));

    for (std::size_t budget : {1u, 10u, 64u, 1000u}) {
        const auto top = escape_iteration(2.0, budget);
        CHECK_FALSE(top.escaped());
        CHECK(top.orbit.size() == budget + 1);
    }

    // zero is not negative; it maps to -2 next
    const auto zero = escape_iteration(0.0);
    CHECK(*zero.steps_to_negative == 1);

    CHECK_THROWS_AS(escape_iteration(2.5), DomainError);
    CHECK_THROWS_AS(escape_iteration(0.0, 0), std::invalid_argument);
}

TEST_CASE("escape record orbit follows t -> t^2 - 2")
{
    RandomStream rng(1);
    for (int i = 0; i < 1000; ++i) {
        const auto rec = escape_iteration(rng.uniform(-2, 2));
        for (std::size_t k = 0; k + 1 < rec.orbit.size(); ++k)
            REQUIRE(std::abs(rec.orbit[k + 1] - (rec.orbit[k] * rec.orbit[k] - 2)) < 1e-12);
        if (rec.escaped()) {
            const std::size_t s = *rec.steps_to_negative;
            REQUIRE(rec.orbit[s] < 0);
            for (std::size_t k = 0; k < s; ++k)
                REQUIRE(rec.orbit[k] >= 0);
        }
    }
}

TEST_CASE("every start below 2 escapes within 25 steps")
{
    for (int k = 0; k < 4000; ++k) {
        const double t0 = -2 + k * 1e-3;
        const auto rec = escape_iteration(t0);
        REQUIRE(rec.escaped());
        REQUIRE(*rec.steps_to_negative <= 25);
    }
}

TEST_CASE("t -> t^2 - 2 doubles the angle")
{
    RandomStream rng(2);
    for (int i = 0; i < 1000; ++i) {
        double theta = rng.uniform(0, std::numbers::pi);
        double t = 2 * std::cos(theta);
        for (int step = 0; step < 5; ++step) {
            t = trace_of_square(t);
            theta = std::fmod(2 * theta, 2 * std::numbers::pi);
            // error grows by at most |d/dt| <= 4 per step
            REQUIRE(std::abs(t - 2 * std::cos(theta)) < 1e-9);
        }
    }
}

TEST_CASE("fiber image interval")
{
    auto i0 = fiber_image_interval(0.0);
    CHECK(i0.lo == -2.0);
    CHECK(i0.hi == 2.0);
    auto i2 = fiber_image_interval(2.0);
    CHECK(i2.lo == 2.0);
    CHECK(i2.hi == 2.0);
    auto im = fiber_image_interval(-1.0);
    CHECK(im.lo == -1.0);
    CHECK(im.hi == 2.0);
    CHECK_THROWS_AS(fiber_image_interval(-2.1), DomainError);
}

TEST_CASE("numeric fiber image matches the closed form")
{
    const auto a = fiber_image_numeric(0.0, 1000);
    CHECK(std::abs(a.lo + 2) < 1e-5);
    CHECK(std::abs(a.hi - 2) < 1e-5);
    const auto b = fiber_image_numeric(2.0, 50);
    CHECK(b.lo == 2.0);
    CHECK(b.hi == 2.0);
    const auto c = fiber_image_numeric(1.0, 100000);
    CHECK(std::abs(c.lo + 1) < 1e-9);
    CHECK(std::abs(c.hi - 2) < 1e-9);
    for (double t : {-2.0, -1.0, 0.0, 1.0, 1.9, 2.0}) {
        const auto exact = fiber_image_interval(t);
        for (std::size_t grid : {2u, 3u, 101u, 1001u}) {
            const auto num = fiber_image_numeric(t, grid);
            CHECK(exact.contains(num.lo, 1e-12));
            CHECK(exact.contains(num.hi, 1e-12));
        }
    }
    CHECK_THROWS_AS(fiber_image_numeric(0.0, 1), std::invalid_argument);
}

TEST_CASE("fiber images nest with |t|")
{
    RandomStream rng(3);
    for (int i = 0; i < 10000; ++i) {
        double t = rng.uniform(-2, 2), u = rng.uniform(-2, 2);
        if (std::abs(t) > std::abs(u))
            std::swap(t, u);
        REQUIRE(fiber_image_interval(t).contains(fiber_image_interval(u)));
    }
}

TEST_CASE("moves")
{
    RandomStream rng(4);
    const Paird p = haar_pair(rng);

    const Paird sq = apply_move(p, Move::SquareFirst);
    const auto lhs = fricke_coordinates(sq);
    const auto rhs = squaring_map(fricke_coordinates(p));
    CHECK(std::abs(lhs.x - rhs.x) < 1e-10);
    CHECK(std::abs(lhs.t - rhs.t) < 1e-10);

    const Paird sw = apply_move(Paird{SU2d::identity(), p.b}, Move::SwapGenerators);
    CHECK(approx_equal(sw.a, p.b));
    CHECK(approx_equal(sw.b, SU2d::identity()));

    const Paird twice = apply_move(apply_move(p, Move::InvertFirst), Move::InvertFirst);
    CHECK(approx_equal(twice, p, 1e-12));

    const Paird mul = apply_move(p, Move::MultiplyFirstBySecond);
    CHECK(approx_equal(mul.a, p.a * p.b));
    CHECK(approx_equal(mul.b, p.b));
}

TEST_CASE("square move commutes with the plane map on random pairs")
{
    RandomStream rng(5);
    for (int i = 0; i < 10000; ++i) {
        const Paird p = haar_pair(rng);
        const auto lhs = fricke_coordinates(apply_move(p, Move::SquareFirst));
        const auto rhs = squaring_map(fricke_coordinates(p));
        REQUIRE(std::abs(lhs.x - rhs.x) < 1e-10);
        REQUIRE(std::abs(lhs.t - rhs.t) < 1e-10);
    }
}

TEST_CASE("orbit basics")
{
    RandomStream rng(6);
    const Paird p = haar_pair(rng);
    const auto root = wordmap_orbit(p, 0, 100);
    REQUIRE(root.size() == 1);
    CHECK(approx_equal(root[0].pair, p));
    CHECK(root[0].path.empty());

    const Paird id{SU2d::identity(), SU2d::identity()};
    for (std::size_t depth : {1u, 3u, 6u}) {
        const auto orb = wordmap_orbit(id, depth, 1000);
        for (const auto& pt : orb)
            CHECK(approx_equal(pt.pair, id));
    }

    CHECK(wordmap_orbit(p, 5, 7).size() == 7);
    CHECK(wordmap_orbit(p, 5, 0).empty());
}

TEST_CASE("orbit points are word maps of the root pair")
{
    RandomStream rng(7);
    const Paird p = haar_pair(rng);
    const auto orb = wordmap_orbit(p, 6, 5000);
    CHECK(orb.size() > 500);
    for (const auto& pt : orb) {
        REQUIRE(pt.path.size() <= 6);
        REQUIRE(approx_equal(evaluate_word(pt.words.first, p), pt.pair.a, 1e-9));
        REQUIRE(approx_equal(evaluate_word(pt.words.second, p), pt.pair.b, 1e-9));
        const auto c = fricke_coordinates(pt.pair);
        REQUIRE(std::abs(c.x - pt.coord.x) < 1e-10);
        REQUIRE(std::abs(c.t - pt.coord.t) < 1e-10);
        REQUIRE(in_fricke_domain(pt.coord));
    }
}

TEST_CASE("orbit output order is deterministic")
{
    RandomStream r1(8), r2(8);
    const auto a = wordmap_orbit(haar_pair(r1), 5, 2000);
    const auto b = wordmap_orbit(haar_pair(r2), 5, 2000);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].path_label() == b[i].path_label());
        REQUIRE(a[i].coord.x == b[i].coord.x);
        REQUIRE(a[i].coord.t == b[i].coord.t);
    }
}

TEST_CASE("orbit covering radius shrinks with depth")
{
    RandomStream rng(9);
    const Paird p = haar_pair(rng);
    const auto full = wordmap_orbit(p, 8, 200000);

    std::vector<double> radii;
    for (std::size_t depth = 0; depth <= 8; ++depth) {
        std::vector<std::pair<double, double>> cloud;
        for (const auto& pt : full)
            if (pt.path.size() <= depth)
                cloud.emplace_back(pt.coord.x, pt.coord.t);
        radii.push_back(oracle::covering_radius(cloud, 40));
    }
    for (std::size_t d = 1; d < radii.size(); ++d)
        CHECK(radii[d] <= radii[d - 1]);
    CHECK(radii.back() < 0.5 * radii.front());
    MESSAGE("covering radius by depth: " << radii.front() << " -> " << radii.back());
}
