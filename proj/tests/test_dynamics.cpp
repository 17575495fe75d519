#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pullback/dynamics.hpp"

#include <cmath>
#include <random>

using namespace pullback;

namespace {

Portrait exp_portrait_p1p2() {
    Portrait p;
    p.images = {0, 2, 3, 2, 0};
    p.essential = 4;
    p.singular[1] = p.singular[4] = true;
    p.transcendental = true;
    return p;
}

Portrait exp_portrait_p2p1() {
    Portrait p;
    p.images = {0, 2, 3, 3, 0};
    p.essential = 4;
    p.singular[1] = p.singular[4] = true;
    p.transcendental = true;
    return p;
}

BSet b_periodic() { return find_b_sets(exp_portrait_p1p2()).at(0); }
BSet b_preperiodic() { return find_b_sets(exp_portrait_p2p1()).at(0); }

} // namespace

TEST_CASE("branch rules") {
    auto c = BranchRule::constant(3);
    CHECK(c.at(0) == 3);
    CHECK(c.at(999) == 3);
    auto p = BranchRule::periodic({1, 2});
    CHECK(p.at(0) == 1);
    CHECK(p.at(5) == 2);
    CHECK_THROWS_AS(BranchRule::periodic({}), std::invalid_argument);
    auto e = BranchRule::explicit_list({7});
    CHECK(e.at(0) == 7);
    CHECK_THROWS_AS(e.at(1), std::out_of_range);
}

TEST_CASE("branch at the cusp multiplier index is obstructed") {
    auto g = GMapFamily::exp_periodic(1);
    auto o = backward_orbit(g, b_periodic(), SpherePoint(0.5, 0.3),
                            BranchRule::constant(1));
    REQUIRE(o.verdict.kind == Verdict::Kind::Obstructed);
    CHECK(o.verdict.cusp_slot == 1);
    LevyClass expect;
    expect.pairs = {{{1, 4}, {2, 3}}};
    CHECK(o.verdict.levy == expect);
}

TEST_CASE("generic branch converges to an interior fixed point") {
    auto g = GMapFamily::exp_periodic(1);
    auto o = backward_orbit(g, b_periodic(), SpherePoint(0.5, 0.3),
                            BranchRule::constant(3));
    REQUIRE(o.verdict.kind == Verdict::Kind::Realized);
    cplx x = o.verdict.fixed_point.location;
    CHECK(o.verdict.fixed_point.residual < 1e-10);
    CHECK(std::abs(gmap_eval(g, SpherePoint(x)).finite() - x) < 1e-10);
    CHECK(o.verdict.fixed_point.classification == FixedPointClass::Repelling);

    // the independent grid search finds the same point
    bool hit = false;
    for (const auto& r : find_fixed_points(g, std::abs(x) + 1.0, 60))
        if (std::abs(r.location - x) < 1e-7) hit = true;
    CHECK(hit);
}

TEST_CASE("starting at a fixed point realizes immediately") {
    auto g = GMapFamily::exp_periodic(1);
    auto first = backward_orbit(g, b_periodic(), SpherePoint(0.5, 0.3),
                                BranchRule::constant(3));
    REQUIRE(first.verdict.kind == Verdict::Kind::Realized);
    auto o = backward_orbit(g, b_periodic(),
                            SpherePoint(first.verdict.fixed_point.location),
                            BranchRule::constant(3));
    REQUIRE(o.verdict.kind == Verdict::Kind::Realized);
    CHECK(o.points.size() <= 30); // one window, no transient
    for (const auto& s : o.steps) {
        if (!s.computed) continue;
        CHECK(s.value < 1e-10);
    }
}

TEST_CASE("orbit recursion invariant") {
    auto g = GMapFamily::exp_periodic(1);
    for (int m : {-2, 2, 3}) {
        auto o = backward_orbit(g, b_periodic(), SpherePoint(0.5, 0.3),
                                BranchRule::constant(m));
        auto rep = dichotomy_consistency_check(o, g);
        CHECK(rep.recursion_ok);
        CHECK(rep.passed());
    }
}

TEST_CASE("twist sweep of the periodic family") {
    auto g = GMapFamily::exp_periodic(1);
    auto rep = twist_sweep(g, b_periodic(), SpherePoint(0.5, 0.3), -5, 5);
    REQUIRE(rep.verdicts.size() == 11);
    CHECK(rep.obstructed_count == 1);
    CHECK(rep.realized_distinct);
    for (const auto& [m, v] : rep.verdicts) {
        if (m == 1) {
            CHECK(v.kind == Verdict::Kind::Obstructed);
            CHECK(v.cusp_slot == 1);
        } else if (m != 0) {
            CHECK(v.kind == Verdict::Kind::Realized);
        }
    }
}

TEST_CASE("preperiodic family is never obstructed") {
    auto g = GMapFamily::exp_preperiodic(1);
    auto rep = twist_sweep(g, b_preperiodic(), SpherePoint(0.5, 0.3), -5, 5);
    CHECK(rep.obstructed_count == 0);
    auto rep2 = twist_sweep(GMapFamily::exp_preperiodic(-2), b_preperiodic(),
                            SpherePoint(-0.4, 0.7), -3, 3);
    CHECK(rep2.obstructed_count == 0);
}

TEST_CASE("empty sweep range") {
    auto g = GMapFamily::exp_periodic(1);
    auto rep = twist_sweep(g, b_periodic(), SpherePoint(0.5, 0.3), 2, 1);
    CHECK(rep.verdicts.empty());
    CHECK(rep.obstructed_count == 0);
}

TEST_CASE("levy class does not depend on the starting point") {
    auto g = GMapFamily::exp_periodic(1);
    LevyClass seen{};
    bool first = true;
    for (cplx x0 : {cplx(0.5, 0.3), cplx(-1.2, 0.4), cplx(0.2, -0.9),
                    cplx(2.5, 1.5)}) {
        auto o = backward_orbit(g, b_periodic(), SpherePoint(x0),
                                BranchRule::constant(1));
        REQUIRE(o.verdict.kind == Verdict::Kind::Obstructed);
        if (first) {
            seen = o.verdict.levy;
            first = false;
        } else {
            CHECK(o.verdict.levy == seen);
        }
    }
}

TEST_CASE("consistency checks per verdict") {
    auto g = GMapFamily::exp_periodic(1);

    auto realized = backward_orbit(g, b_periodic(), SpherePoint(0.5, 0.3),
                                   BranchRule::constant(3));
    auto r1 = dichotomy_consistency_check(realized, g);
    CHECK(r1.passed());
    CHECK(r1.tail_ratio < 1.0);
    CHECK(r1.tail_ratio > 0.0);

    auto obstructed = backward_orbit(g, b_periodic(), SpherePoint(0.5, 0.3),
                                     BranchRule::constant(1));
    auto r2 = dichotomy_consistency_check(obstructed, g);
    CHECK(r2.passed());
    CHECK(r2.ladder_ok);

    auto truncated = backward_orbit(g, b_periodic(), SpherePoint(0.5, 0.3),
                                    BranchRule::constant(3), 1);
    CHECK(truncated.verdict.kind == Verdict::Kind::Undecided);
    CHECK(dichotomy_consistency_check(truncated, g).passed());

    auto broken = realized;
    broken.points[2] = SpherePoint(9.0, 9.0);
    CHECK_THROWS_AS(dichotomy_consistency_check(broken, g), InconsistentOrbit);
}

TEST_CASE("degenerate branch reports pole proximity instead of guessing") {
    auto g = GMapFamily::exp_periodic(1);
    // land exactly on the pole of branch 0 after one step
    auto o = backward_orbit(g, b_periodic(), SpherePoint(1.0, 0.0),
                            BranchRule::constant(0));
    CHECK(o.verdict.kind == Verdict::Kind::Undecided);
    CHECK(o.verdict.reason == "BranchPoleProximity");
}

TEST_CASE("small randomized campaign keeps the dichotomy exclusive") {
    auto g = GMapFamily::exp_periodic(1);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int undecided = 0, total = 0;
    for (int s = 0; s < 8; ++s) {
        cplx x0(u(rng), u(rng));
        if (std::abs(x0) < 0.1 || std::abs(x0 - cplx(1.0)) < 0.1) continue;
        for (int m = -2; m <= 2; ++m) {
            auto o = backward_orbit(g, b_periodic(), SpherePoint(x0),
                                    BranchRule::constant(m));
            ++total;
            if (o.verdict.kind == Verdict::Kind::Undecided) ++undecided;
            CHECK(o.verdict.reason != "SimultaneousCriteria");
        }
    }
    CHECK(total >= 30);
    CHECK(undecided <= total / 5);
}
