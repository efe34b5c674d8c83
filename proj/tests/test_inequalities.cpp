#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "thickness/inequalities.hpp"
#include "thickness/rng.hpp"

using namespace thickness;

namespace {

Point rand_vec(Rng& rng, int dim) {
    Point v(dim);
    for (auto& c : v) c = 2.0 * (rng.uniform() * 2.0 - 1.0);
    return v;
}

}  // namespace

TEST_CASE("clarkson_check") {
    const Space l2 = Space::lp_seq(2, 4);
    Rng rng(31);

    // p = q = 2 is the parallelogram law: equality
    for (int t = 0; t < 200; ++t) {
        const IneqCheck c = clarkson_check(l2, rand_vec(rng, 4), rand_vec(rng, 4));
        CHECK(c.holds);
        CHECK(std::fabs(c.slack) <= 1e-12 * std::max(1.0, c.rhs));
    }

    // g = 0 degenerates to equality for every p
    const Space l15 = Space::lp_seq(1.5, 8);
    const IneqCheck z = clarkson_check(l15, rand_vec(rng, 8), Point(8, 0.0));
    CHECK(z.holds);
    CHECK(std::fabs(z.slack) <= 1e-12 * std::max(1.0, z.rhs));

    // random pairs in l_1.5 and in the step variant
    for (int t = 0; t < 1000; ++t) {
        CHECK(clarkson_check(l15, rand_vec(rng, 8), rand_vec(rng, 8)).holds);
    }
    const Space step = Space::lp_step(1.25, 6);
    for (int t = 0; t < 1000; ++t) {
        CHECK(clarkson_check(step, rand_vec(rng, 6), rand_vec(rng, 6)).holds);
    }

    CHECK_THROWS_AS(clarkson_check(Space::lp_seq(1, 4), {1, 0, 0, 0}, {0, 1, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(clarkson_check(Space::lp_seq(2.5, 4), {1, 0, 0, 0}, {0, 1, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(clarkson_check(Space::poly_k(2, 4), {1, 0, 0, 0}, {0, 1, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("hanner_check") {
    Rng rng(32);

    const Space l2 = Space::lp_seq(2, 5);
    for (int t = 0; t < 200; ++t) {
        const IneqCheck c = hanner_check(l2, rand_vec(rng, 5), rand_vec(rng, 5));
        CHECK(c.holds);
        CHECK(std::fabs(c.slack) <= 1e-12 * std::max(1.0, c.rhs));
    }

    const Space step4 = Space::lp_step(4, 16);
    for (int t = 0; t < 1000; ++t) {
        CHECK(hanner_check(step4, rand_vec(rng, 16), rand_vec(rng, 16)).holds);
    }
    const Space l3 = Space::lp_seq(3, 6);
    const IneqCheck z = hanner_check(l3, rand_vec(rng, 6), Point(6, 0.0));
    CHECK(z.holds);
    CHECK(std::fabs(z.slack) <= 1e-12 * std::max(1.0, z.rhs));

    CHECK_THROWS_AS(hanner_check(Space::lp_seq(1.5, 4), {1, 0, 0, 0}, {0, 1, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(hanner_check(Space::lp_seq(P_INF, 4), {1, 0, 0, 0}, {0, 1, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("clarkson_net_bound") {
    CHECK(clarkson_net_bound(1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(clarkson_net_bound(2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(clarkson_net_bound(1.5) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(clarkson_net_bound(2.5), std::invalid_argument);
    CHECK_THROWS_AS(clarkson_net_bound(0.5), std::invalid_argument);
}

TEST_CASE("two-point corollary of Clarkson") {
    // for unit f, f0: min(|f+f0|, |f-f0|) <= 2^(1/p)
    Rng rng(33);
    for (double p : {1.25, 1.5, 2.0}) {
        const Space s = Space::lp_seq(p, 6);
        const double bound = clarkson_net_bound(p);
        for (int t = 0; t < 1000; ++t) {
            Point f = rand_vec(rng, 6);
            Point g = rand_vec(rng, 6);
            if (s.norm(f) < 1e-9 || s.norm(g) < 1e-9) continue;
            f = normalize(s, f);
            g = normalize(s, g);
            const double m = std::min(s.norm(add(f, g)), s.norm(sub(f, g)));
            CHECK(m <= bound + 1e-12);
        }
    }
}
