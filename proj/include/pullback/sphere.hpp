#pragma once

#include <complex>
#include <optional>
#include <string>

namespace pullback {

using cplx = std::complex<double>;

// A point on the Riemann sphere. Infinity is a distinct symbol, never a large
// float, so that cusp bookkeeping stays exact.
struct SpherePoint {
    cplx value{0.0, 0.0};
    bool infinite = false;

    SpherePoint() = default;
    SpherePoint(cplx v) : value(v) {}
    SpherePoint(double re, double im) : value(re, im) {}

    static SpherePoint infinity() {
        SpherePoint p;
        p.infinite = true;
        return p;
    }

    bool is_finite() const { return !infinite; }
    cplx finite() const { return value; }
};

inline bool exactly_equal(const SpherePoint& a, const SpherePoint& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
}

// Chordal metric on the sphere, normalized to diameter 2.
inline double chordal(const SpherePoint& a, const SpherePoint& b) {
    auto lift = [](const SpherePoint& p, double& n) {
        if (p.infinite) { n = 1.0; return cplx(0.0, 0.0); }
        n = std::sqrt(1.0 + std::norm(p.value));
        return p.value;
    };
    double na, nb;
    cplx za = lift(a, na), zb = lift(b, nb);
    if (a.infinite && b.infinite) return 0.0;
    if (a.infinite) return 2.0 / nb;
    if (b.infinite) return 2.0 / na;
    return 2.0 * std::abs(za - zb) / (na * nb);
}

std::string format_sphere_point(const SpherePoint& p);

} // namespace pullback
