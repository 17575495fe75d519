#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pullback/moebius.hpp"

#include <random>

using namespace pullback;

namespace {

bool maps_to(const Moebius& m, const SpherePoint& z, const SpherePoint& w) {
    SpherePoint r = m.apply(z);
    if (w.infinite || r.infinite) return exactly_equal(r, w);
    return std::abs(r.value - w.value) < 1e-12;
}

const SpherePoint zero(0.0, 0.0);
const SpherePoint one(1.0, 0.0);
const SpherePoint inf = SpherePoint::infinity();

} // namespace

TEST_CASE("three-point interpolation fixtures") {
    CHECK(proportional(from_three_points(zero, one, inf), Moebius::identity()));

    // (1,0,inf) -> 1 - z, worked out from the interpolation conditions
    Moebius m1 = from_three_points(one, zero, inf);
    CHECK(proportional(m1, Moebius{-1.0, 1.0, 0.0, 1.0}));

    // (inf,1,0) -> 1/z
    Moebius m2 = from_three_points(inf, one, zero);
    CHECK(proportional(m2, Moebius{0.0, 1.0, 1.0, 0.0}));
}

TEST_CASE("interpolation reproduces (0,1,inf)") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int t = 0; t < 50; ++t) {
        SpherePoint p(u(rng), u(rng)), q(u(rng), u(rng)), r(u(rng), u(rng));
        Moebius m = from_three_points(p, q, r);
        CHECK(maps_to(m, p, zero));
        CHECK(maps_to(m, q, one));
        CHECK(maps_to(m, r, inf));
    }
}

TEST_CASE("degenerate input rejected") {
    CHECK_THROWS_AS(from_three_points(zero, zero, one), DegenerateInput);
    CHECK_THROWS_AS(from_three_points(inf, one, inf), DegenerateInput);
}

TEST_CASE("projective arithmetic at infinity and poles") {
    Moebius inv{0.0, 1.0, 1.0, 0.0}; // 1/z
    CHECK(exactly_equal(inv.apply(inf), zero));
    CHECK(exactly_equal(inv.apply(zero), inf));
    CHECK(maps_to(inv, SpherePoint(2.0, 0.0), SpherePoint(0.5, 0.0)));
}

TEST_CASE("group laws up to proportionality") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 50; ++t) {
        Moebius m{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)),
                  cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        if (std::abs(m.det()) < 1e-3) continue;
        CHECK(proportional(compose(m, m.inverse()), Moebius::identity()));
        CHECK(proportional(compose(m.inverse(), m), Moebius::identity()));
        Moebius n{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)),
                  cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        if (std::abs(n.det()) < 1e-3) continue;
        CHECK(proportional(compose(m, n).inverse(),
                           compose(n.inverse(), m.inverse())));
    }
}

TEST_CASE("connecting map closed forms") {
    CHECK(proportional(connecting_map(4, 1), Moebius{0.0, 1.0, 1.0, 0.0}));   // 1/z
    CHECK(proportional(connecting_map(4, 2), Moebius{1.0, -1.0, 1.0, 0.0}));  // (z-1)/z
    CHECK(proportional(connecting_map(4, 3), Moebius{-1.0, 1.0, 0.0, 1.0}));  // 1-z
    CHECK(proportional(connecting_map(4, 4), Moebius::identity()));
    CHECK(proportional(connecting_map(1, 2), Moebius{1.0, 0.0, 1.0, -1.0}));  // z/(z-1)
    CHECK(proportional(connecting_map(3, 2), Moebius{0.0, 1.0, 1.0, 0.0}));   // 1/z
    CHECK(proportional(connecting_map(2, 1), Moebius{1.0, 0.0, 1.0, -1.0}));  // z/(z-1)
}

TEST_CASE("all sixteen connecting maps permute {0,1,inf}") {
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            Moebius m = connecting_map(i, j);
            bool hit[3] = {false, false, false};
            const SpherePoint pts[3] = {zero, one, inf};
            for (const auto& z : pts) {
                SpherePoint w = m.apply(z);
                for (int t = 0; t < 3; ++t)
                    if (exactly_equal(w, pts[t]) ||
                        (!w.infinite && !pts[t].infinite &&
                         std::abs(w.value - pts[t].value) < 1e-12))
                        hit[t] = true;
            }
            CHECK(hit[0]);
            CHECK(hit[1]);
            CHECK(hit[2]);
        }
    }
    for (int i = 1; i <= 4; ++i)
        CHECK(proportional(connecting_map(i, i), Moebius::identity()));
}

TEST_CASE("formula printing") {
    CHECK(moebius_formula(connecting_map(4, 1)) == "1/z");
    CHECK(moebius_formula(connecting_map(4, 2)) == "(z - 1)/z");
    CHECK(moebius_formula(connecting_map(4, 3)) == "1 - z");
    CHECK(moebius_formula(connecting_map(4, 4)) == "z");
    CHECK(moebius_formula(connecting_map(1, 2)) == "z/(z - 1)");
}
