#include "pullback/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pullback {

SpherePoint Moebius::apply(const SpherePoint& z) const {
    if (z.infinite) {
        if (c == cplx(0.0)) return SpherePoint::infinity();
        return SpherePoint(a / c);
    }
    cplx num = a * z.value + b;
    cplx den = c * z.value + d;
    if (den == cplx(0.0)) return SpherePoint::infinity();
    return SpherePoint(num / den);
}

Moebius Moebius::inverse() const {
    return Moebius{d, -b, -c, a};
}

Moebius compose(const Moebius& m1, const Moebius& m2) {
    return Moebius{
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    };
}

bool proportional(const Moebius& m1, const Moebius& m2) {
    // cross products of the two coefficient vectors must vanish
    const cplx u[4] = {m1.a, m1.b, m1.c, m1.d};
    const cplx v[4] = {m2.a, m2.b, m2.c, m2.d};
    double scale = 0.0;
    for (int i = 0; i < 4; ++i)
        scale = std::max(scale, std::abs(u[i]) * std::abs(v[i]));
    if (scale == 0.0) return false;
    for (int i = 0; i < 4; ++i)
        for (int k = i + 1; k < 4; ++k)
            if (std::abs(u[i] * v[k] - u[k] * v[i]) > 1e-12 * scale)
                return false;
    return true;
}

Moebius from_three_points(const SpherePoint& p, const SpherePoint& q,
                          const SpherePoint& r) {
    if (exactly_equal(p, q) || exactly_equal(q, r) || exactly_equal(p, r))
        throw DegenerateInput("from_three_points: coincident points");

    if (p.infinite)
        return Moebius{0.0, q.value - r.value, 1.0, -r.value};
    if (q.infinite)
        return Moebius{1.0, -p.value, 1.0, -r.value};
    if (r.infinite)
        return Moebius{1.0, -p.value, 0.0, q.value - p.value};
    cplx qr = q.value - r.value;
    cplx qp = q.value - p.value;
    return Moebius{qr, -p.value * qr, qp, -r.value * qp};
}

namespace {

// Möbius map sending (p1,p2,p3) to (q1,q2,q3).
Moebius interpolate(const SpherePoint p[3], const SpherePoint q[3]) {
    Moebius s = from_three_points(p[0], p[1], p[2]);
    Moebius t = from_three_points(q[0], q[1], q[2]);
    return compose(t.inverse(), s);
}

// Snap a matrix known to have entries proportional to small integers.
Moebius snap_integer(const Moebius& m) {
    cplx e[4] = {m.a, m.b, m.c, m.d};
    double mx = 0.0;
    for (auto& z : e) mx = std::max(mx, std::abs(z));
    cplx pivot = 0.0;
    for (auto& z : e)
        if (std::abs(z) > 0.5 * mx) { pivot = z; break; }
    Moebius out;
    cplx* slots[4] = {&out.a, &out.b, &out.c, &out.d};
    for (int i = 0; i < 4; ++i) {
        cplx ratio = e[i] / pivot;
        double rounded = std::round(ratio.real());
        if (std::abs(ratio - cplx(rounded)) > 1e-9)
            return m; // not an integer matrix after all, keep as computed
        *slots[i] = rounded;
    }
    return out;
}

} // namespace

Moebius connecting_map(int i, int j) {
    if (i < 1 || i > 4 || j < 1 || j > 4)
        throw DegenerateInput("connecting_map: indices must be in 1..4");
    if (i == j) return Moebius::identity();

    // Realize a four-point configuration with the j-complement triple at
    // (0, 1, inf) and the remaining point a_j at coordinate y; the map sends
    // y to the i-normalized coordinate of a_i. Interpolate through three
    // generic y values.
    int jc[3], n = 0;
    for (int t = 1; t <= 4; ++t)
        if (t != j) jc[n++] = t;

    const double ys[3] = {2.0, 3.0, 5.0};
    SpherePoint src[3], dst[3];
    for (int s = 0; s < 3; ++s) {
        SpherePoint pos[5]; // positions of a_1..a_4, 1-based
        pos[jc[0]] = SpherePoint(0.0, 0.0);
        pos[jc[1]] = SpherePoint(1.0, 0.0);
        pos[jc[2]] = SpherePoint::infinity();
        pos[j] = SpherePoint(ys[s], 0.0);

        int ic[3];
        n = 0;
        for (int t = 1; t <= 4; ++t)
            if (t != i) ic[n++] = t;
        Moebius hi = from_three_points(pos[ic[0]], pos[ic[1]], pos[ic[2]]);
        src[s] = SpherePoint(ys[s], 0.0);
        dst[s] = hi.apply(pos[i]);
    }
    return snap_integer(interpolate(src, dst));
}

std::string moebius_formula(const Moebius& m) {
    auto term = [](double coeff, bool with_z, bool leading) -> std::string {
        std::ostringstream os;
        if (coeff == 0.0) return "";
        std::string sign = coeff < 0 ? (leading ? "-" : " - ") : (leading ? "" : " + ");
        double mag = std::abs(coeff);
        os << sign;
        if (!with_z || mag != 1.0) {
            if (mag == std::round(mag))
                os << (long long)std::round(mag);
            else
                os << mag;
        }
        if (with_z) os << "z";
        return os.str();
    };
    auto linear = [&](double za, double zb) -> std::string {
        std::string s;
        if (za < 0.0 && zb > 0.0) { // prefer "1 - z" over "-z + 1"
            s = term(zb, false, true);
            s += term(za, true, false);
        } else {
            s = term(za, true, true);
            s += term(zb, false, s.empty());
        }
        if (s.empty()) s = "0";
        return s;
    };
    double a = m.a.real(), b = m.b.real(), c = m.c.real(), d = m.d.real();
    std::string num = linear(a, b);
    if (c == 0.0 && d != 0.0) {
        if (d != 1.0) return linear(a / d, b / d);
        return num;
    }
    std::string den = linear(c, d);
    bool num_comp = (a != 0.0 && b != 0.0);
    bool den_comp = (c != 0.0 && d != 0.0);
    std::string res;
    res += num_comp ? "(" + num + ")" : num;
    res += "/";
    res += den_comp ? "(" + den + ")" : den;
    return res;
}

std::string format_sphere_point(const SpherePoint& p) {
    if (p.infinite) return "inf";
    std::ostringstream os;
    os.precision(15);
    os << p.value.real() + 0.0; // drop a negative-zero sign
    if (p.value.imag() != 0.0) {
        os << (p.value.imag() < 0 ? " - " : " + ")
           << std::abs(p.value.imag()) << "i";
    }
    return os.str();
}

} // namespace pullback
