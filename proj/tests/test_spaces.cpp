#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "thickness/rng.hpp"
#include "thickness/space.hpp"

using namespace thickness;

namespace {

Point rand_vec(Rng& rng, int dim, double scale = 2.0) {
    Point v(dim);
    for (auto& c : v) c = scale * (rng.uniform() * 2.0 - 1.0);
    return v;
}

// independent poly-k oracle: literally sort and average the k largest
double polyk_oracle(std::span<const double> x, int k) {
    std::vector<double> a(x.begin(), x.end());
    for (auto& c : a) c = std::fabs(c);
    std::sort(a.rbegin(), a.rend());
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += a[i];
    return s / k;
}

}  // namespace

TEST_CASE("lp_seq norms on pinned values") {
    CHECK(Space::lp_seq(2, 2).norm(std::vector<double>{3, 4}) == doctest::Approx(5).epsilon(1e-14));
    CHECK(Space::lp_seq(1, 3).norm(std::vector<double>{1, -2, 3}) == doctest::Approx(6).epsilon(1e-14));
    CHECK(Space::lp_seq(P_INF, 3).norm(std::vector<double>{1, -7, 3}) == doctest::Approx(7).epsilon(1e-14));
    CHECK(Space::lp_seq(3, 2).norm(std::vector<double>{1, 1}) ==
          doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-14));
    // huge/tiny entries must not overflow the p-th powers
    CHECK(Space::lp_seq(4, 2).norm(std::vector<double>{1e200, 0}) == doctest::Approx(1e200));
    CHECK(Space::lp_seq(2, 2).norm(std::vector<double>{1e-200, 1e-200}) ==
          doctest::Approx(std::sqrt(2.0) * 1e-200));
}

TEST_CASE("lp_step norm carries the 1/n weight") {
    CHECK(Space::lp_step(1, 2).norm(std::vector<double>{1, 3}) == doctest::Approx(2).epsilon(1e-14));
    CHECK(Space::lp_step(2, 4).norm(std::vector<double>{2, 0, 0, 0}) ==
          doctest::Approx(1).epsilon(1e-14));
    // constant function has norm |c| for every p
    CHECK(Space::lp_step(3.5, 8).norm(std::vector<double>(8, 2.0)) ==
          doctest::Approx(2).epsilon(1e-13));
}

TEST_CASE("p_sum combines factor norms") {
    const Space s = Space::p_sum(2, {Space::lp_seq(1, 2), Space::lp_seq(1, 2)});
    CHECK(s.dim() == 4);
    CHECK(s.norm(std::vector<double>{1, 0, 0, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(s.norm(std::vector<double>{1, -1, 0, 0}) == doctest::Approx(2).epsilon(1e-14));

    const Space m = Space::p_sum(P_INF, {Space::lp_seq(2, 2), Space::lp_seq(1, 1)});
    CHECK(m.norm(std::vector<double>{3, 4, 2}) == doctest::Approx(5).epsilon(1e-14));

    const Space nested = Space::p_sum(1, {s, Space::lp_seq(P_INF, 2)});
    CHECK(nested.norm(std::vector<double>{1, 0, 0, 1, 5, -7}) ==
          doctest::Approx(std::sqrt(2.0) + 7).epsilon(1e-14));
}

TEST_CASE("poly_k averages the k largest magnitudes") {
    CHECK(Space::poly_k(2, 4).norm(std::vector<double>{3, 1, 0, -2}) ==
          doctest::Approx(2.5).epsilon(1e-14));
    CHECK(Space::poly_k(1, 4).norm(std::vector<double>{3, 1, 0, -2}) ==
          doctest::Approx(3).epsilon(1e-14));
    CHECK(Space::poly_k(4, 4).norm(std::vector<double>{3, 1, 0, -2}) ==
          doctest::Approx(1.5).epsilon(1e-14));

    Rng rng(11);
    for (int k : {1, 2, 3, 5}) {
        const Space s = Space::poly_k(k, 6);
        for (int t = 0; t < 200; ++t) {
            const Point v = rand_vec(rng, 6);
            CHECK(s.norm(v) == doctest::Approx(polyk_oracle(v, k)).epsilon(1e-13));
        }
    }
}

TEST_CASE("norm axioms hold across families") {
    const std::vector<Space> families = {
        Space::lp_seq(1, 5),
        Space::lp_seq(1.5, 6),
        Space::lp_seq(2, 6),
        Space::lp_seq(3, 4),
        Space::lp_seq(P_INF, 5),
        Space::lp_step(2.5, 6),
        Space::p_sum(2, {Space::lp_seq(1, 2), Space::lp_seq(3, 3)}),
        Space::p_sum(P_INF, {Space::lp_seq(2, 2), Space::lp_seq(1, 2)}),
        Space::poly_k(3, 7),
    };
    Rng rng(42);
    for (const Space& s : families) {
        int bad = 0;
        for (int t = 0; t < 2000; ++t) {
            const Point x = rand_vec(rng, s.dim());
            const Point y = rand_vec(rng, s.dim());
            const double t0 = 4.0 * (rng.uniform() - 0.5);
            const double nx = s.norm(x), ny = s.norm(y);
            if (!(nx >= 0.0)) ++bad;
            if (s.norm(scaled(x, t0)) > std::fabs(t0) * nx + 1e-12 * std::max(1.0, std::fabs(t0) * nx)) ++bad;
            if (s.norm(scaled(x, t0)) < std::fabs(t0) * nx - 1e-12 * std::max(1.0, std::fabs(t0) * nx)) ++bad;
            if (s.norm(add(x, y)) > nx + ny + 1e-12 * std::max(1.0, nx + ny)) ++bad;
            if (std::fabs(s.norm(scaled(x, -1.0)) - nx) > 1e-12 * std::max(1.0, nx)) ++bad;
        }
        CHECK(bad == 0);
        CHECK(s.norm(Point(s.dim(), 0.0)) == 0.0);
    }
}

TEST_CASE("factory validation") {
    CHECK_THROWS_AS(Space::lp_seq(0.5, 3), std::invalid_argument);
    CHECK_THROWS_AS(Space::lp_seq(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(Space::lp_step(P_INF, 4), std::invalid_argument);
    CHECK_THROWS_AS(Space::lp_step(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(Space::p_sum(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(Space::p_sum(0.9, {Space::lp_seq(2, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(Space::poly_k(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(Space::poly_k(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(Space::lp_seq(2, 2).norm(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("space equality") {
    CHECK(Space::lp_seq(2, 3) == Space::lp_seq(2, 3));
    CHECK(Space::lp_seq(2, 3) != Space::lp_seq(2.5, 3));
    CHECK(Space::lp_seq(P_INF, 3) == Space::lp_seq(P_INF, 3));
    CHECK(Space::lp_seq(2, 3) != Space::lp_step(2, 3));
    CHECK(Space::p_sum(2, {Space::lp_seq(1, 2)}) == Space::p_sum(2, {Space::lp_seq(1, 2)}));
    CHECK(Space::p_sum(2, {Space::lp_seq(1, 2)}) != Space::p_sum(2, {Space::lp_seq(1, 3)}));
}

TEST_CASE("normalize") {
    const Space s = Space::lp_seq(3, 4);
    const Point u = normalize(s, std::vector<double>{1, -2, 0.5, 4});
    CHECK(s.norm(u) == doctest::Approx(1).epsilon(1e-13));
    CHECK_THROWS_AS(normalize(s, Point(4, 0.0)), std::domain_error);
}

TEST_CASE("sample_ball stays in the ball and is seed-deterministic") {
    for (const Space& s : {Space::lp_seq(1.7, 5), Space::poly_k(2, 4),
                           Space::p_sum(1, {Space::lp_seq(2, 2), Space::lp_seq(P_INF, 3)})}) {
        bool moved = false;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const Point x = sample_ball(s, seed);
            CHECK(s.norm(x) <= 1.0 + 1e-12);
            CHECK(x == sample_ball(s, seed));
            if (seed > 0 && x != sample_ball(s, 0)) moved = true;
        }
        CHECK(moved);
    }
}

TEST_CASE("psum_split round-trips blocks") {
    const Space s = Space::p_sum(2, {Space::lp_seq(1, 2), Space::lp_seq(3, 3)});
    const Point x = {1, -2, 0.5, 0.25, 4};
    const auto blocks = psum_split(s, x);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].first == Space::lp_seq(1, 2));
    CHECK(blocks[0].second == Point{1, -2});
    CHECK(blocks[1].second == Point{0.5, 0.25, 4});
    // psum norm equals the lp-combination of the block norms
    const double combo = std::sqrt(std::pow(blocks[0].first.norm(blocks[0].second), 2) +
                                   std::pow(blocks[1].first.norm(blocks[1].second), 2));
    CHECK(s.norm(x) == doctest::Approx(combo).epsilon(1e-13));
    CHECK_THROWS_AS(psum_split(Space::lp_seq(2, 5), x), std::invalid_argument);
}

TEST_CASE("unit_point has norm one in every family") {
    for (const Space& s : {Space::lp_seq(2, 3), Space::lp_seq(P_INF, 2), Space::lp_step(2, 4),
                           Space::poly_k(2, 5),
                           Space::p_sum(2, {Space::poly_k(2, 3), Space::lp_seq(1, 2)})}) {
        const Point u = unit_point(s);
        CHECK(static_cast<int>(u.size()) == s.dim());
        CHECK(s.norm(u) == doctest::Approx(1).epsilon(1e-13));
    }
    // lp_seq unit point is literally e_1
    CHECK(unit_point(Space::lp_seq(2, 3)) == Point{1, 0, 0});
    // poly_k(2,5): e_1 alone has norm 1/2, so the unit point is 2 e_1
    CHECK(unit_point(Space::poly_k(2, 5))[0] == doctest::Approx(2).epsilon(1e-14));
}
