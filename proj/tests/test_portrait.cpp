#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pullback/portrait.hpp"

using namespace pullback;

namespace {

// a->b->c->b, d essential, S = {a, d}: the exponential portrait with
// pre-period 1 and period 2
Portrait exp_portrait_p1p2() {
    Portrait p;
    p.images = {0, 2, 3, 2, 0};
    p.essential = 4;
    p.singular[1] = p.singular[4] = true;
    p.transcendental = true;
    return p;
}

// a->b->c->c: pre-period 2, period 1
Portrait exp_portrait_p2p1() {
    Portrait p;
    p.images = {0, 2, 3, 3, 0};
    p.essential = 4;
    p.singular[1] = p.singular[4] = true;
    p.transcendental = true;
    return p;
}

// a->b, b<->c, d essential, S = {a, b, d}: middle portrait of the
// three-singular-value entire family
Portrait entire_middle(int deg_c) {
    Portrait p;
    p.images = {0, 2, 3, 2, 0};
    p.essential = 4;
    p.singular[1] = p.singular[2] = p.singular[4] = true;
    p.degrees[3] = deg_c;
    p.transcendental = true;
    return p;
}

} // namespace

TEST_CASE("validation accepts the exponential portrait") {
    CHECK(validate(exp_portrait_p1p2()).valid());
    CHECK(validate(exp_portrait_p2p1()).valid());
}

TEST_CASE("validation flags missing image") {
    Portrait p = exp_portrait_p1p2();
    p.images[1] = 0; // a has no image and is not essential
    auto rep = validate(p);
    CHECK(!rep.valid());
    CHECK(rep.problems.size() == 1);
}

TEST_CASE("validation flags degree against singular set") {
    Portrait p = exp_portrait_p1p2();
    p.degrees[2] = 2; // b critical, its image c is not a singular value
    CHECK(!validate(p).valid());

    // degree 2 is fine when the image is marked singular
    Portrait q = entire_middle(2); // c critical with image b in S
    CHECK(validate(q).valid());
}

TEST_CASE("validation flags essential on non-transcendental portrait") {
    Portrait p = exp_portrait_p1p2();
    p.transcendental = false;
    CHECK(!validate(p).valid());
}

TEST_CASE("b-sets of the exponential portraits") {
    auto bs = find_b_sets(exp_portrait_p1p2());
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].members == std::array<int, 3>{1, 2, 4});
    CHECK(bs[0].cset == std::array<int, 3>{1, 3, 4});
    CHECK(bs[0].i == 3);
    CHECK(bs[0].j == 2);

    auto bs2 = find_b_sets(exp_portrait_p2p1());
    REQUIRE(bs2.size() == 1);
    CHECK(bs2[0].members == std::array<int, 3>{1, 3, 4});
    CHECK(bs2[0].cset == std::array<int, 3>{2, 3, 4});
    CHECK(bs2[0].i == 2);
    CHECK(bs2[0].j == 1);
}

TEST_CASE("b-sets of the entire family") {
    auto bs = find_b_sets(entire_middle(1));
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].members == std::array<int, 3>{1, 2, 4});
    CHECK(bs[0].cset == std::array<int, 3>{1, 3, 4});
    CHECK(bs[0].i == 3);
    CHECK(bs[0].j == 2);
}

TEST_CASE("b-set members always contain the singular set") {
    // random-ish portraits over the entire3 family
    for (const auto& ep : enumerate_portraits(family_preset("entire3"))) {
        for (const auto& b : find_b_sets(ep.portrait)) {
            for (int s = 1; s <= 4; ++s) {
                if (!ep.portrait.singular[s]) continue;
                CHECK(std::count(b.members.begin(), b.members.end(), s) == 1);
            }
        }
    }
}

TEST_CASE("totally unobstructed fixtures") {
    auto r1 = totally_unobstructed(exp_portrait_p1p2());
    CHECK(!r1.totally_unobstructed);
    REQUIRE(r1.witness.has_value());
    CHECK(*r1.witness == std::array<int, 2>{2, 3}); // the 2-cycle {b, c}

    auto r2 = totally_unobstructed(exp_portrait_p2p1());
    CHECK(r2.totally_unobstructed);

    CHECK(!totally_unobstructed(entire_middle(1)).totally_unobstructed);
    CHECK(totally_unobstructed(entire_middle(2)).totally_unobstructed);
}

TEST_CASE("witness pairs satisfy the literal criterion") {
    for (const auto& ep : enumerate_portraits(family_preset("entire3"))) {
        if (!ep.condition_ii) continue;
        auto r = totally_unobstructed(ep.portrait);
        if (r.totally_unobstructed) continue;
        REQUIRE(r.witness.has_value());
        auto [x, y] = *r.witness;
        const auto& p = ep.portrait;
        CHECK(x != p.essential);
        CHECK(y != p.essential);
        CHECK(p.degrees[x] <= 1);
        CHECK(p.degrees[y] <= 1);
        std::set<int> im{p.images[x], p.images[y]};
        std::set<int> self{x, y};
        std::set<int> comp;
        for (int t = 1; t <= 4; ++t)
            if (!self.count(t)) comp.insert(t);
        CHECK((im == self || im == comp));
    }
}

TEST_CASE("enumeration counts") {
    auto entire = enumerate_portraits(family_preset("entire3"));
    CHECK(entire.size() == 7);
    int with_ii = 0;
    for (const auto& ep : entire) with_ii += ep.condition_ii ? 1 : 0;
    CHECK(with_ii == 3);

    auto expf = enumerate_portraits(family_preset("exponential"));
    CHECK(expf.size() == 2);
    for (const auto& ep : expf) CHECK(ep.condition_ii);

    FamilySpec empty_family;
    CHECK(enumerate_portraits(empty_family).empty());
}

TEST_CASE("cusp to levy class bookkeeping") {
    // C = {a1, a3, a4}, j = 2
    BSet b;
    b.members = {1, 2, 4};
    b.cset = {1, 3, 4};
    b.i = 3;
    b.j = 2;

    LevyClass c0 = cusp_to_levy_class(b, 0);
    CHECK(c0.pairs[0] == std::array<int, 2>{1, 2});
    CHECK(c0.pairs[1] == std::array<int, 2>{3, 4});

    LevyClass c1 = cusp_to_levy_class(b, 1);
    CHECK(c1.pairs[0] == std::array<int, 2>{1, 4});
    CHECK(c1.pairs[1] == std::array<int, 2>{2, 3});

    LevyClass c2 = cusp_to_levy_class(b, 2);
    CHECK(c2.pairs[0] == std::array<int, 2>{1, 3});
    CHECK(c2.pairs[1] == std::array<int, 2>{2, 4});

    // the three cusps give the three distinct pair partitions
    CHECK(!(c0 == c1));
    CHECK(!(c1 == c2));
    CHECK(!(c0 == c2));
}

TEST_CASE("json round trip") {
    Portrait p = exp_portrait_p1p2();
    p.degrees[1] = 1;
    Portrait q = portrait_from_json(portrait_to_json(p));
    CHECK(q.images == p.images);
    CHECK(q.essential == p.essential);
    CHECK(q.singular == p.singular);
    CHECK(q.degrees == p.degrees);
    CHECK(q.transcendental == p.transcendental);
}

TEST_CASE("json parse of the documented format") {
    const char* text = R"({"points":["a","b","c","d"],
        "images":{"a":"b","b":"c","c":"b"}, "essential":"d",
        "singular":["a","d"], "degrees":{"a":1}, "transcendental":true})";
    Portrait p = portrait_from_json(text);
    CHECK(validate(p).valid());
    CHECK(p.images[1] == 2);
    CHECK(p.images[3] == 2);
    CHECK(p.essential == 4);
    auto r = totally_unobstructed(p);
    CHECK(!r.totally_unobstructed);
}
