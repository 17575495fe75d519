#include "pullback/dynamics.hpp"

#include "pullback/moebius.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <cmath>

namespace pullback {

namespace {

constexpr double kPi = 3.14159265358979323846;

const SpherePoint kCusps[3] = {SpherePoint(0.0, 0.0), SpherePoint(1.0, 0.0),
                               SpherePoint::infinity()};

int sphere_to_slot(const SpherePoint& p) {
    if (p.infinite) return 2;
    if (std::abs(p.value) < 1e-9) return 0;
    if (std::abs(p.value - cplx(1.0)) < 1e-9) return 1;
    throw std::logic_error("connecting map did not permute the cusps");
}

const CuspBehavior& cusp_behavior(const GMapFamily& g, int slot) {
    switch (slot) {
    case 0: return g.cusp0;
    case 1: return g.cusp1;
    default: return g.cuspInf;
    }
}

LevyClass levy_for_cusp(const GMapFamily&, const BSet& b, int slot) {
    // pull the cusp back through the connecting map before the bookkeeping
    Moebius mij = connecting_map(b.i, b.j);
    SpherePoint pre = mij.inverse().apply(kCusps[slot]);
    return cusp_to_levy_class(b, sphere_to_slot(pre));
}

FixedPointRecord make_record(const GMapFamily& g, const SpherePoint& x,
                             double residual) {
    cplx mult = gmap_derivative(g, x);
    double am = std::abs(mult);
    FixedPointClass cls;
    if (am > 1.0 + 1e-9)
        cls = FixedPointClass::Repelling;
    else if (am < 1e-9)
        cls = FixedPointClass::Superattracting;
    else
        cls = FixedPointClass::Anomalous;
    return {x.value, mult, cls, residual};
}

} // namespace

BranchRule BranchRule::constant(int m) {
    BranchRule r;
    r.kind = Kind::Constant;
    r.m = m;
    return r;
}

BranchRule BranchRule::periodic(std::vector<int> ms) {
    if (ms.empty()) throw std::invalid_argument("empty periodic branch rule");
    BranchRule r;
    r.kind = Kind::Periodic;
    r.list = std::move(ms);
    return r;
}

BranchRule BranchRule::explicit_list(std::vector<int> ms) {
    BranchRule r;
    r.kind = Kind::Explicit;
    r.list = std::move(ms);
    return r;
}

int BranchRule::at(int n) const {
    switch (kind) {
    case Kind::Constant: return m;
    case Kind::Periodic: return list[static_cast<size_t>(n) % list.size()];
    default: return list.at(static_cast<size_t>(n));
    }
}

OrbitRecord backward_orbit(const GMapFamily& g, const BSet& b,
                           const SpherePoint& x0, const BranchRule& rule,
                           int max_iter, const Tolerances& tol) {
    OrbitRecord rec;
    rec.points.push_back(x0);
    int conv_run = 0;
    int cusp_run[3] = {0, 0, 0};

    auto far_from_cusps = [](const SpherePoint& p) {
        for (const auto& c : kCusps)
            if (chordal(p, c) < 1e-4) return false;
        return true;
    };

    // continue the logarithm branch along the orbit instead of snapping to
    // the principal cut at every step; the rule index is relative to the
    // starting sheet. Orbit points hug the negative axis, so sheet changes
    // need a hysteresis margin beyond a half turn to avoid spurious slips.
    double theta = x0.is_finite() && x0.value != cplx(0.0)
                       ? std::arg(x0.value)
                       : 0.0;
    int wind = 0;
    bool started = false;
    for (int n = 0; n < max_iter; ++n) {
        SpherePoint w = rec.points.back();
        if (w.is_finite() && w.value != cplx(0.0)) {
            double a = std::arg(w.value);
            if (!started) {
                theta = a;
                started = true;
            } else {
                double cand = a + 2.0 * kPi * wind;
                double d = cand - theta;
                if (d > kPi + 0.3) {
                    --wind;
                    cand -= 2.0 * kPi;
                } else if (d < -(kPi + 0.3)) {
                    ++wind;
                    cand += 2.0 * kPi;
                }
                theta = cand;
            }
        }
        int m = rule.at(n) + wind;
        if (w.is_finite() && w.value != cplx(0.0) &&
            std::abs(std::log(w.value) + cplx(0.0, 2.0 * kPi * m)) < 1e-6) {
            rec.verdict.kind = Verdict::Kind::Undecided;
            rec.verdict.reason = "BranchPoleProximity";
            return rec;
        }
        SpherePoint x;
        try {
            x = inverse_branch(g, m, w);
        } catch (const BranchPole&) {
            rec.verdict.kind = Verdict::Kind::Undecided;
            rec.verdict.reason = "BranchPoleProximity";
            return rec;
        } catch (const UndefinedAt& e) {
            rec.verdict.kind = Verdict::Kind::Undecided;
            rec.verdict.reason = e.what();
            return rec;
        }
        rec.branches.push_back(m);
        rec.points.push_back(x);

        OrbitStep step;
        if (far_from_cusps(w) && far_from_cusps(x)) {
            try {
                // shallow deck search: consecutive points are close once the
                // run matters for convergence detection
                step.value = dist_sigma(w.value, x.value, 4);
            } catch (const ConvergenceFailure&) {
                step.value = chordal(w, x);
                rec.steps_degraded = true;
            }
            step.computed = true;
        }
        rec.steps.push_back(step);

        conv_run = (step.computed && step.value < tol.conv) ? conv_run + 1 : 0;
        for (int c = 0; c < 3; ++c)
            cusp_run[c] = chordal(x, kCusps[c]) < tol.cusp ? cusp_run[c] + 1 : 0;

        int cuspidal = -1;
        for (int c = 0; c < 3; ++c) {
            const CuspBehavior& beh = cusp_behavior(g, c);
            if (cusp_run[c] >= tol.window &&
                beh.type == CuspBehavior::Type::FixedPoint &&
                std::abs(beh.multiplier) > 1.0)
                cuspidal = c;
        }

        if (conv_run >= tol.window) {
            SpherePoint img = gmap_eval(g, x);
            if (img.is_finite() && x.is_finite()) {
                double res = std::abs(img.finite() - x.value);
                if (res < tol.fix) {
                    if (cuspidal >= 0) {
                        rec.verdict.kind = Verdict::Kind::Undecided;
                        rec.verdict.reason = "SimultaneousCriteria";
                        return rec;
                    }
                    rec.verdict.kind = Verdict::Kind::Realized;
                    rec.verdict.fixed_point = make_record(g, x, res);
                    return rec;
                }
            }
        }
        if (cuspidal >= 0) {
            rec.verdict.kind = Verdict::Kind::Obstructed;
            rec.verdict.cusp_slot = cuspidal;
            rec.verdict.levy = levy_for_cusp(g, b, cuspidal);
            return rec;
        }
    }
    rec.verdict.kind = Verdict::Kind::Undecided;
    rec.verdict.reason = "MaxIterations";
    return rec;
}

TwistSweepReport twist_sweep(const GMapFamily& g, const BSet& b,
                             const SpherePoint& x0, int m_lo, int m_hi,
                             int max_iter, const Tolerances& tol) {
    TwistSweepReport rep;
    rep.family = g.kind;
    rep.k = g.k;
    rep.m_lo = m_lo;
    rep.m_hi = m_hi;
    for (int m = m_lo; m <= m_hi; ++m) {
        Verdict v;
        try {
            v = backward_orbit(g, b, x0, BranchRule::constant(m), max_iter,
                               tol)
                    .verdict;
        } catch (const std::exception& e) {
            v.kind = Verdict::Kind::Undecided;
            v.reason = e.what();
        }
        if (v.kind == Verdict::Kind::Realized)
            rep.realized_fixed_points.push_back(v.fixed_point.location);
        if (v.kind == Verdict::Kind::Obstructed) ++rep.obstructed_count;
        rep.verdicts.emplace_back(m, v);
    }
    for (size_t a = 0; a < rep.realized_fixed_points.size(); ++a)
        for (size_t c = a + 1; c < rep.realized_fixed_points.size(); ++c)
            if (std::abs(rep.realized_fixed_points[a] -
                         rep.realized_fixed_points[c]) <= 1e-8)
                rep.realized_distinct = false;
    return rep;
}

CampaignResult run_campaign(const GMapFamily& g, const BSet& b,
                            const CampaignConfig& cfg) {
    CampaignResult res;
    res.family = g.kind;
    res.k = g.k;
    res.config = cfg;
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<cplx> starts;
    while (static_cast<int>(starts.size()) < cfg.starts) {
        cplx x0(u(rng), u(rng));
        if (std::abs(x0) < 0.1 || std::abs(x0 - cplx(1.0)) < 0.1) continue;
        // the starting sheet is ambiguous next to the logarithm cut
        if (x0.real() < 0.0 && std::abs(x0.imag()) < 0.35) continue;
        starts.push_back(x0);
    }
    for (cplx x0 : starts)
        for (int m = cfg.m_lo; m <= cfg.m_hi; ++m) {
            CampaignRun run;
            run.start = x0;
            run.m = m;
            try {
                run.verdict = backward_orbit(g, b, SpherePoint(x0),
                                             BranchRule::constant(m),
                                             cfg.max_iter, cfg.tol)
                                  .verdict;
            } catch (const std::exception& e) {
                run.verdict.kind = Verdict::Kind::Undecided;
                run.verdict.reason = e.what();
            }
            switch (run.verdict.kind) {
            case Verdict::Kind::Realized: ++res.realized; break;
            case Verdict::Kind::Obstructed: ++res.obstructed; break;
            default: ++res.undecided; break;
            }
            res.runs.push_back(std::move(run));
        }
    return res;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15e", v);
    return buf;
}

const char* cusp_name(int slot) {
    switch (slot) {
    case 0: return "0";
    case 1: return "1";
    default: return "inf";
    }
}

std::string levy_json(const LevyClass& l) {
    std::string out = "[";
    for (int p = 0; p < 2; ++p) {
        if (p) out += ",";
        out += "[";
        for (int q = 0; q < 2; ++q) {
            if (q) out += ",";
            out += '"';
            out += static_cast<char>('a' + l.pairs[p][q] - 1);
            out += '"';
        }
        out += "]";
    }
    return out + "]";
}

} // namespace

std::string campaign_json(const CampaignResult& r) {
    std::string out = "{";
    out += "\"family\":\"";
    out += r.family == GMapKind::ExpPeriodic ? "exp-periodic"
                                             : "exp-preperiodic";
    out += "\",\"k\":" + std::to_string(r.k);
    out += ",\"seed\":" + std::to_string(r.config.seed);
    out += ",\"starts\":" + std::to_string(r.config.starts);
    out += ",\"m_lo\":" + std::to_string(r.config.m_lo);
    out += ",\"m_hi\":" + std::to_string(r.config.m_hi);
    out += ",\"runs\":[";
    for (size_t i = 0; i < r.runs.size(); ++i) {
        const CampaignRun& run = r.runs[i];
        if (i) out += ",";
        out += "{\"start\":[" + num(run.start.real()) + "," +
               num(run.start.imag()) + "],\"m\":" + std::to_string(run.m);
        switch (run.verdict.kind) {
        case Verdict::Kind::Realized:
            out += ",\"verdict\":\"realized\",\"fixed_point\":[" +
                   num(run.verdict.fixed_point.location.real()) + "," +
                   num(run.verdict.fixed_point.location.imag()) +
                   "],\"abs_multiplier\":" +
                   num(std::abs(run.verdict.fixed_point.multiplier));
            break;
        case Verdict::Kind::Obstructed:
            out += ",\"verdict\":\"obstructed\",\"cusp\":\"";
            out += cusp_name(run.verdict.cusp_slot);
            out += "\",\"levy_pairs\":" + levy_json(run.verdict.levy);
            break;
        default:
            out += ",\"verdict\":\"undecided\",\"reason\":\"" +
                   run.verdict.reason + "\"";
            break;
        }
        out += "}";
    }
    out += "],\"realized\":" + std::to_string(r.realized);
    out += ",\"obstructed\":" + std::to_string(r.obstructed);
    out += ",\"undecided\":" + std::to_string(r.undecided);
    return out + "}";
}

CheckReport dichotomy_consistency_check(const OrbitRecord& o,
                                        const GMapFamily& g) {
    CheckReport rep;
    for (size_t n = 0; n + 1 < o.points.size(); ++n) {
        SpherePoint img = gmap_eval(g, o.points[n + 1]);
        double err;
        if (img.infinite || o.points[n].infinite)
            err = chordal(img, o.points[n]);
        else
            err = std::abs(img.finite() - o.points[n].value) /
                  std::max(1.0, std::abs(o.points[n].value));
        if (err > 1e-10)
            throw InconsistentOrbit("forward evaluation does not reproduce "
                                    "the orbit",
                                    static_cast<int>(n));
    }
    rep.recursion_ok = true;

    if (o.verdict.kind == Verdict::Kind::Realized) {
        std::vector<double> tail;
        for (const auto& s : o.steps)
            if (s.computed && s.value > 1e-300) tail.push_back(s.value);
        size_t keep = std::min<size_t>(40, tail.size());
        if (keep >= 4) {
            tail.erase(tail.begin(), tail.end() - keep);
            // least-squares slope of log steps
            double n = static_cast<double>(tail.size());
            double sx = 0, sy = 0, sxy = 0, sxx = 0;
            for (size_t i = 0; i < tail.size(); ++i) {
                double x = static_cast<double>(i), y = std::log(tail[i]);
                sx += x; sy += y; sxy += x * y; sxx += x * x;
            }
            double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            rep.tail_ratio = std::exp(slope);
            rep.tail_ok = rep.tail_ratio < 1.0;
            for (size_t i = tail.size() - std::min<size_t>(10, tail.size()) + 1;
                 i < tail.size(); ++i)
                if (tail[i] > tail[i - 1] * 1.000001) rep.tail_ok = false;
        } else {
            rep.tail_ok = false;
        }
    } else if (o.verdict.kind == Verdict::Kind::Obstructed) {
        const SpherePoint& cusp = kCusps[o.verdict.cusp_slot];
        for (int e = 1; e <= 6; ++e) {
            double thr = std::pow(10.0, -e);
            bool crossed = false;
            for (const auto& p : o.points)
                if (chordal(p, cusp) < thr) {
                    crossed = true;
                    break;
                }
            if (!crossed) rep.ladder_ok = false;
        }
    }
    return rep;
}

} // namespace pullback
