#include "pullback/gmap.hpp"

#include <algorithm>
#include <cmath>

namespace pullback {

namespace {

constexpr double kPi = 3.14159265358979323846;

cplx two_pi_ik(int k) { return cplx(0.0, 2.0 * kPi * k); }

cplx sing(const GMapFamily& g) {
    return g.kind == GMapKind::ExpPeriodic ? cplx(0.0) : cplx(1.0);
}

} // namespace

GMapFamily GMapFamily::exp_periodic(int k) {
    if (k == 0) throw std::invalid_argument("k must be nonzero");
    GMapFamily g{GMapKind::ExpPeriodic, k, {}, {}, {}};
    g.cusp0 = {CuspBehavior::Type::EssentialSingularity, {}, {}};
    g.cusp1 = {CuspBehavior::Type::FixedPoint, -two_pi_ik(k), {}};
    g.cuspInf = {CuspBehavior::Type::MapsTo, {}, SpherePoint(1.0, 0.0)};
    return g;
}

GMapFamily GMapFamily::exp_preperiodic(int k) {
    if (k == 0) throw std::invalid_argument("k must be nonzero");
    GMapFamily g{GMapKind::ExpPreperiodic, k, {}, {}, {}};
    g.cusp0 = {CuspBehavior::Type::MapsTo, {}, SpherePoint(1.0, 0.0)};
    g.cusp1 = {CuspBehavior::Type::EssentialSingularity, {}, {}};
    g.cuspInf = {CuspBehavior::Type::MapsTo, {}, SpherePoint(1.0, 0.0)};
    return g;
}

SpherePoint gmap_eval(const GMapFamily& g, const SpherePoint& z) {
    if (z.infinite) return SpherePoint(1.0, 0.0); // exp(0) for both families
    if (z.value == sing(g))
        throw UndefinedAt("evaluation at the essential singularity");
    cplx e = two_pi_ik(g.k) / (z.value - sing(g));
    if (e.real() > 700.0) return SpherePoint::infinity();
    return SpherePoint(std::exp(e));
}

cplx gmap_derivative(const GMapFamily& g, const SpherePoint& z) {
    if (z.infinite)
        throw UndefinedAt("derivative at infinity is not supported");
    if (z.value == sing(g))
        throw UndefinedAt("derivative at the essential singularity");
    cplx u = z.value - sing(g);
    return -two_pi_ik(g.k) / (u * u) * std::exp(two_pi_ik(g.k) / u);
}

SpherePoint inverse_branch(const GMapFamily& g, int m, const SpherePoint& w) {
    if (w.infinite || w.value == cplx(0.0))
        throw UndefinedAt("inverse branch needs a finite nonzero argument");
    cplx den = std::log(w.value) + cplx(0.0, 2.0 * kPi * m);
    if (std::abs(den) == 0.0)
        throw BranchPole("log w + 2 pi i m vanishes for this branch");
    return SpherePoint(sing(g) + two_pi_ik(g.k) / den);
}

std::vector<FixedPointRecord> find_fixed_points(const GMapFamily& g,
                                                double radius, int grid) {
    if (radius <= 0.0 || grid < 2)
        throw std::invalid_argument("bad search parameters");
    const cplx c = two_pi_ik(g.k);
    const cplx s0 = sing(g);
    const double inner = 1e-3; // stay clear of the essential singularity

    auto F = [&](cplx z, cplx& f, cplx& df) {
        cplx u = z - s0;
        cplx e = c / u;
        if (e.real() > 500.0 || std::abs(u) < 1e-12) return false;
        cplx ex = std::exp(e);
        f = ex - z;
        df = -c / (u * u) * ex - 1.0;
        return true;
    };

    std::vector<cplx> seeds;
    // absolute lattice, so the seed sets nest as the radius grows and the
    // reported counts are monotone in it
    double h = 100.0 / grid;
    int n = static_cast<int>(std::ceil(radius / h));
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j) {
            cplx z(i * h, j * h);
            if (std::abs(z) <= radius && std::abs(z - s0) > inner)
                seeds.push_back(z);
        }
    // refine towards the singularity, where the solutions accumulate
    for (double r = std::min(radius, 2.0); r > inner; r *= 0.7)
        for (int a = 0; a < 64; ++a) {
            double th = 2.0 * kPi * a / 64.0;
            seeds.push_back(s0 + cplx(r * std::cos(th), r * std::sin(th)));
        }

    std::vector<FixedPointRecord> out;
    for (cplx z : seeds) {
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            cplx f, df;
            if (!F(z, f, df)) break;
            if (std::abs(f) < 1e-13) {
                ok = true;
                break;
            }
            if (std::abs(df) < 1e-14) break;
            cplx step = f / df;
            if (std::abs(step) > 1.0) step *= 1.0 / std::abs(step);
            z -= step;
        }
        if (!ok) continue;
        if (std::abs(z) > radius || std::abs(z - s0) < inner) continue;
        bool dup = false;
        for (const auto& r : out)
            if (std::abs(r.location - z) < 1e-8) {
                dup = true;
                break;
            }
        if (dup) continue;
        cplx f, df;
        if (!F(z, f, df)) continue;
        cplx mult = df + 1.0; // multiplier of G, not of G(z)-z
        FixedPointClass cls;
        double am = std::abs(mult);
        if (am > 1.0 + 1e-9)
            cls = FixedPointClass::Repelling;
        else if (am < 1e-9)
            cls = FixedPointClass::Superattracting;
        else
            cls = FixedPointClass::Anomalous;
        out.push_back({z, mult, cls, std::abs(f)});
    }
    std::sort(out.begin(), out.end(),
              [](const FixedPointRecord& a, const FixedPointRecord& b) {
                  double ma = std::abs(a.location), mb = std::abs(b.location);
                  if (ma != mb) return ma < mb;
                  return std::arg(a.location) < std::arg(b.location);
              });
    return out;
}

GMapFamily family_for_portrait(const Portrait& p, const BSet& b, int k) {
    if (!p.transcendental)
        throw UnsupportedPortrait("only transcendental portraits have a "
                                  "built-in analytic family");
    bool known = false;
    for (const auto& cand : find_b_sets(p))
        if (cand.members == b.members && cand.i == b.i && cand.j == b.j)
            known = true;
    if (!known)
        throw UnsupportedPortrait("marked-point selection does not belong to "
                                  "this portrait");
    // a1 omitted, a2 -> a3 -> (a2 | a3), essential at a4, S = {a1, a4}
    if (!(p.singular[1] && !p.singular[2] && !p.singular[3] && p.singular[4]))
        throw UnsupportedPortrait("singular set is not the exponential one");
    bool periodic = p.images[1] == 2 && p.images[2] == 3 && p.images[3] == 2;
    bool preperiodic = p.images[1] == 2 && p.images[2] == 3 && p.images[3] == 3;
    if (p.essential != 4 || (!periodic && !preperiodic))
        throw UnsupportedPortrait("portrait is not one of the exponential "
                                  "shapes");
    return periodic ? GMapFamily::exp_periodic(k)
                    : GMapFamily::exp_preperiodic(k);
}

} // namespace pullback
