#pragma once

#include "pullback/sphere.hpp"

#include <array>
#include <stdexcept>

namespace pullback {

struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Fractional-linear map z -> (a z + b)/(c z + d), stored as an unnormalized
// projective matrix. Equality is up to scale.
struct Moebius {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static Moebius identity() { return {}; }

    SpherePoint apply(const SpherePoint& z) const;
    Moebius inverse() const;

    cplx det() const { return a * d - b * c; }
};

Moebius compose(const Moebius& m1, const Moebius& m2); // m1 after m2
bool proportional(const Moebius& m1, const Moebius& m2);

// Unique Moebius map with p -> 0, q -> 1, r -> infinity.
Moebius from_three_points(const SpherePoint& p, const SpherePoint& q,
                          const SpherePoint& r);

// The connecting map M_{i,j} between the i-th and j-th three-point
// normalizations of a four-point set, with the fixed ascending-index
// convention: dropping index i from {1,2,3,4} leaves (i1 < i2 < i3) which are
// sent to (0, 1, inf).
Moebius connecting_map(int i, int j);

// Human-readable formula such as "(z - 1)/z" for maps permuting {0,1,inf}.
std::string moebius_formula(const Moebius& m);

} // namespace pullback
