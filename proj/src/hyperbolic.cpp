#include "pullback/hyperbolic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <set>
#include <vector>

namespace pullback {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kImFloor = 0.05; // documented accuracy floor for theta sums

double dist_h(cplx z, cplx w) {
    double t = std::norm(z - w) / (2.0 * z.imag() * w.imag());
    return std::acosh(1.0 + t);
}

double dist_disk(cplx z, cplx w) {
    cplx num = z - w;
    cplx den = 1.0 - z * std::conj(w);
    return 2.0 * std::atanh(std::abs(num / den));
}

// lift of the punctured disk to H: w = exp(i tau)
cplx lift_punctured(cplx w) {
    return cplx(std::arg(w), -std::log(std::abs(w)));
}

} // namespace

double density(const HPoint& p) {
    switch (p.model) {
    case Model::UpperHalfPlane:
        if (p.value.imag() <= 0.0) throw OutOfModel("Im tau must be positive");
        return 1.0 / p.value.imag();
    case Model::UnitDisk: {
        double a = std::abs(p.value);
        if (a >= 1.0) throw OutOfModel("|w| must be < 1");
        return 2.0 / (1.0 - a * a);
    }
    case Model::PuncturedDisk: {
        double a = std::abs(p.value);
        if (a <= 0.0 || a >= 1.0) throw OutOfModel("need 0 < |w| < 1");
        return 1.0 / (a * std::abs(std::log(a)));
    }
    case Model::Sigma:
        return density_sigma(p.value);
    }
    throw OutOfModel("unknown model");
}

double distance(const HPoint& p, const HPoint& q) {
    if (p.model != q.model)
        throw OutOfModel("distance requires points in the same model");
    switch (p.model) {
    case Model::UpperHalfPlane:
        if (p.value.imag() <= 0.0 || q.value.imag() <= 0.0)
            throw OutOfModel("Im tau must be positive");
        return dist_h(p.value, q.value);
    case Model::UnitDisk:
        if (std::abs(p.value) >= 1.0 || std::abs(q.value) >= 1.0)
            throw OutOfModel("|w| must be < 1");
        return dist_disk(p.value, q.value);
    case Model::PuncturedDisk: {
        for (const cplx& v : {p.value, q.value}) {
            double a = std::abs(v);
            if (a <= 0.0 || a >= 1.0) throw OutOfModel("need 0 < |w| < 1");
        }
        cplx t1 = lift_punctured(p.value);
        cplx t2 = lift_punctured(q.value);
        double best = dist_h(t1, t2);
        for (int n = -3; n <= 3; ++n)
            best = std::min(best, dist_h(t1, t2 + cplx(2.0 * kPi * n, 0.0)));
        return best;
    }
    case Model::Sigma:
        return dist_sigma(p.value, q.value);
    }
    throw OutOfModel("unknown model");
}

double contraction_bound(double s) {
    if (s <= 0.0)
        throw DomainError("contraction bound needs positive separation");
    if (s > 500.0) // tanh saturates; the bound is 1 - O(s e^{-s})
        return std::nextafter(1.0, 0.0);
    double one_minus_r = 2.0 / (std::exp(s) + 1.0); // 1 - tanh(s/2), stable
    double r = 1.0 - one_minus_r;
    double log_r = std::log1p(-one_minus_r);
    double v = 2.0 * r * std::abs(log_r) / (one_minus_r * (1.0 + r));
    // the true value is < 1 but can round up to 1; report the nearest
    // representable value below
    return std::min(v, std::nextafter(1.0, 0.0));
}

Annulus Annulus::from_modulus(double m) {
    if (m <= 0.0) throw DomainError("modulus must be positive");
    return Annulus{m};
}

Annulus Annulus::from_radii(double r1, double r2) {
    if (r1 <= 0.0 || r2 <= r1)
        throw DomainError("need 0 < r1 < r2");
    return Annulus{std::log(r2 / r1) / (2.0 * kPi)};
}

double annulus_geodesic_length(const Annulus& a) {
    return kPi / a.modulus;
}

double ell_star() { return std::log(3.0 + 2.0 * std::sqrt(2.0)); }

double levy_modulus_threshold(double d0) {
    if (d0 < 0.0) throw DomainError("d0 must be nonnegative");
    return 5.0 * kPi * std::exp(d0) / ell_star();
}

double strip_diameter_bound(double zn_abs, double znp1_abs) {
    if (zn_abs <= 1.0 || znp1_abs <= 1.0)
        throw DomainError("strip bound needs both moduli > 1");
    return std::log(std::log(znp1_abs) / std::log(zn_abs)) +
           2.0 * kPi / std::log(zn_abs);
}

namespace {

struct ThetaPair {
    cplx t2, t3;     // theta_2(q), theta_3(q)
    cplx dt2, dt3;   // d/dtau
};

// theta_2 = 2 sum q^{(n+1/2)^2}, theta_3 = 1 + 2 sum q^{n^2}, q = e^{i pi tau}
ThetaPair theta_series(cplx tau) {
    if (tau.imag() < kImFloor)
        throw ConvergenceFailure("theta series below the Im floor");
    cplx q = std::exp(cplx(0.0, kPi) * tau);
    const cplx ipi(0.0, kPi);
    ThetaPair th{};
    th.t3 = 1.0;
    for (int n = 1; n < 400; ++n) {
        double e2 = (n - 0.5) * (n - 0.5);
        double e3 = double(n) * n;
        cplx term2 = 2.0 * std::pow(q, e2);
        cplx term3 = 2.0 * std::pow(q, e3);
        th.t2 += term2;
        th.t3 += term3;
        th.dt2 += ipi * e2 * term2;
        th.dt3 += ipi * e3 * term3;
        if (std::abs(term3) < 1e-18 * std::abs(th.t3) &&
            std::abs(term2) < 1e-18 * std::abs(th.t2))
            return th;
    }
    throw ConvergenceFailure("theta series did not converge");
}

cplx lambda_direct(cplx tau) {
    ThetaPair th = theta_series(tau);
    cplx r = th.t2 / th.t3;
    return r * r * r * r;
}

cplx lambda_direct_derivative(cplx tau) {
    ThetaPair th = theta_series(tau);
    cplx r = th.t2 / th.t3;
    cplx dr = (th.dt2 * th.t3 - th.t2 * th.dt3) / (th.t3 * th.t3);
    return 4.0 * r * r * r * dr;
}

// Evaluate lambda anywhere in H: if the reduced point sits near a cusp,
// route through lambda(-1/tau) = 1 - lambda(tau) and the period-2 relation
// lambda(tau + 1) = lambda/(lambda - 1).
cplx lambda_anywhere(cplx tau, int depth = 0) {
    tau = reduce_level2(tau);
    if (tau.imag() >= kImFloor) return lambda_direct(tau);
    if (depth > 3) throw ConvergenceFailure("lambda evaluation near a cusp");
    double d0 = std::abs(tau);
    double dm = std::abs(tau + 1.0);
    double dp = std::abs(tau - 1.0);
    if (d0 <= dm && d0 <= dp)
        return 1.0 - lambda_anywhere(-1.0 / tau, depth + 1);
    cplx sigma = (dp < dm) ? tau - 1.0 : tau + 1.0;
    cplx mu = 1.0 - lambda_anywhere(-1.0 / sigma, depth + 1);
    return mu / (mu - 1.0);
}

} // namespace

cplx reduce_level2(cplx tau) {
    if (tau.imag() <= 0.0) throw OutOfModel("Im tau must be positive");
    for (int iter = 0; iter < 500; ++iter) {
        double shift = std::floor((tau.real() + 1.0) / 2.0) * 2.0;
        tau -= shift;
        cplx den_p = 2.0 * tau + 1.0;
        cplx den_m = -2.0 * tau + 1.0;
        if (std::abs(den_p) < 1.0)
            tau = tau / den_p;
        else if (std::abs(den_m) < 1.0)
            tau = tau / den_m;
        else
            return tau;
    }
    return tau; // stuck hugging a circle boundary; good enough numerically
}

cplx modular_lambda(cplx tau) {
    if (tau.imag() <= 0.0) throw OutOfModel("Im tau must be positive");
    return lambda_anywhere(tau);
}

cplx modular_lambda_derivative(cplx tau) {
    if (tau.imag() <= 0.0) throw OutOfModel("Im tau must be positive");
    return lambda_direct_derivative(tau);
}

namespace {

cplx agm(cplx a, cplx b) {
    for (int n = 0; n < 80; ++n) {
        cplx am = 0.5 * (a + b);
        cplx gm = std::sqrt(a * b);
        if (std::abs(am - gm) > std::abs(am + gm)) gm = -gm; // right choice
        a = am;
        b = gm;
        if (std::abs(a - b) < 1e-17 * std::abs(a)) break;
    }
    return a;
}

} // namespace

cplx inverse_lambda(cplx z) {
    if (z == cplx(0.0) || z == cplx(1.0))
        throw DomainError("inverse lambda undefined at the punctures");
    cplx k = std::sqrt(z);
    cplx kp = std::sqrt(1.0 - z);
    cplx mk = agm(1.0, kp);  // ~ pi / (2 K)
    cplx mkp = agm(1.0, k);  // ~ pi / (2 K')
    if (std::abs(mk) == 0.0 || std::abs(mkp) == 0.0)
        throw ConvergenceFailure("degenerate period ratio");
    cplx tau = cplx(0.0, 1.0) * mk / mkp; // i K'(k)/K(k)
    if (tau.imag() <= 0.0) tau = -std::conj(tau);
    tau = reduce_level2(tau);

    // Newton polish against the theta evaluation when it is available
    if (tau.imag() >= kImFloor) {
        for (int n = 0; n < 30; ++n) {
            cplx f = lambda_direct(tau) - z;
            if (std::abs(f) < 1e-14) break;
            cplx d = lambda_direct_derivative(tau);
            if (std::abs(d) == 0.0) break;
            cplx step = f / d;
            if (std::abs(step) > 0.5) step *= 0.5 / std::abs(step);
            tau -= step;
            if (tau.imag() < kImFloor) {
                tau = reduce_level2(tau);
                break;
            }
        }
        tau = reduce_level2(tau);
    }
    return tau;
}

double density_sigma(cplx z) {
    cplx tau = inverse_lambda(z);
    cplx d = modular_lambda_derivative(tau);
    double ad = std::abs(d);
    if (ad == 0.0) throw ConvergenceFailure("vanishing covering derivative");
    return (1.0 / tau.imag()) / ad;
}

namespace {

struct Mat {
    // integer entries of a level-2 deck transformation
    long long a, b, c, d;
    bool operator<(const Mat& o) const {
        return std::array<long long, 4>{a, b, c, d} <
               std::array<long long, 4>{o.a, o.b, o.c, o.d};
    }
};

cplx mat_apply(const Mat& m, cplx tau) {
    return (double(m.a) * tau + double(m.b)) /
           (double(m.c) * tau + double(m.d));
}

const std::vector<Mat>& deck_elements(int depth) {
    static std::vector<Mat> cache;
    static int cached_depth = -1;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (cached_depth == depth) return cache;

    const Mat gens[4] = {
        {1, 2, 0, 1},   // tau + 2
        {1, -2, 0, 1},
        {1, 0, 2, 1},   // tau / (2 tau + 1)
        {1, 0, -2, 1},
    };
    std::set<Mat> seen;
    std::vector<Mat> frontier{{1, 0, 0, 1}};
    seen.insert(frontier[0]);
    for (int len = 0; len < depth; ++len) {
        std::vector<Mat> next;
        for (const Mat& m : frontier) {
            for (const Mat& g : gens) {
                Mat p{m.a * g.a + m.b * g.c, m.a * g.b + m.b * g.d,
                      m.c * g.a + m.d * g.c, m.c * g.b + m.d * g.d};
                if (p.a < 0 || (p.a == 0 && p.c < 0)) {
                    p = Mat{-p.a, -p.b, -p.c, -p.d};
                }
                if (seen.insert(p).second) next.push_back(p);
            }
        }
        frontier = std::move(next);
    }
    cache.assign(seen.begin(), seen.end());
    cached_depth = depth;
    return cache;
}

} // namespace

double dist_sigma(cplx z, cplx w, int search_depth) {
    cplx tz = inverse_lambda(z);
    cplx tw = inverse_lambda(w);
    double best = dist_h(tz, tw);
    for (const Mat& m : deck_elements(search_depth)) {
        cplx im = mat_apply(m, tw);
        if (im.imag() <= 0.0) continue;
        best = std::min(best, dist_h(tz, im));
    }
    return best;
}

} // namespace pullback
