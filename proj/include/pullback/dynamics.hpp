#pragma once

#include "pullback/gmap.hpp"
#include "pullback/hyperbolic.hpp"
#include "pullback/portrait.hpp"
#include "pullback/sphere.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pullback {

struct InconsistentOrbit : std::runtime_error {
    int index;
    InconsistentOrbit(const std::string& msg, int idx)
        : std::runtime_error(msg), index(idx) {}
};

// Which inverse branch to take at step n.
struct BranchRule {
    enum class Kind { Constant, Periodic, Explicit };
    Kind kind = Kind::Constant;
    int m = 0;
    std::vector<int> list;

    static BranchRule constant(int m);
    static BranchRule periodic(std::vector<int> ms);
    static BranchRule explicit_list(std::vector<int> ms);

    int at(int n) const;
};

struct Tolerances {
    double conv = 1e-10; // hyperbolic step size for interior convergence
    double fix = 1e-10;  // fixed point residual
    double cusp = 1e-6;  // chordal distance for cusp convergence
    int window = 25;     // consecutive iterations a criterion must hold
};

struct Verdict {
    enum class Kind { Realized, Obstructed, Undecided };
    Kind kind = Kind::Undecided;
    FixedPointRecord fixed_point{}; // Realized
    int cusp_slot = -1;             // Obstructed: 0, 1 or 2 (infinity)
    LevyClass levy{};               // Obstructed
    std::string reason;             // Undecided
};

// Hyperbolic step length; not every step near a cusp is measurable.
struct OrbitStep {
    double value = 0.0;
    bool computed = false;
};

struct OrbitRecord {
    std::vector<SpherePoint> points; // points[0] = x0
    std::vector<int> branches;       // branches[n] produced points[n+1]
    std::vector<OrbitStep> steps;
    Verdict verdict;
    bool steps_degraded = false; // chordal proxy used after a distance failure
};

OrbitRecord backward_orbit(const GMapFamily& g, const BSet& b,
                           const SpherePoint& x0, const BranchRule& rule,
                           int max_iter = 2000, const Tolerances& tol = {});

struct TwistSweepReport {
    GMapKind family;
    int k = 0;
    int m_lo = 0, m_hi = -1;
    std::vector<std::pair<int, Verdict>> verdicts; // (m, verdict)
    std::vector<cplx> realized_fixed_points;
    int obstructed_count = 0;
    bool realized_distinct = true; // pairwise separated beyond 1e-8
};

TwistSweepReport twist_sweep(const GMapFamily& g, const BSet& b,
                             const SpherePoint& x0, int m_lo, int m_hi,
                             int max_iter = 2000, const Tolerances& tol = {});

struct CampaignConfig {
    int starts = 50;
    int m_lo = -5, m_hi = 5;
    unsigned seed = 1;
    int max_iter = 2000;
    Tolerances tol{};
};

struct CampaignRun {
    cplx start;
    int m = 0;
    Verdict verdict;
};

struct CampaignResult {
    GMapKind family;
    int k = 0;
    CampaignConfig config;
    std::vector<CampaignRun> runs; // ordered by (start index, m)
    int realized = 0, obstructed = 0, undecided = 0;
};

// Random starts sampled away from the cusps; fully determined by the seed.
CampaignResult run_campaign(const GMapFamily& g, const BSet& b,
                            const CampaignConfig& cfg);

// Deterministic serialization; every numeric at 16 significant digits.
std::string campaign_json(const CampaignResult& r);

struct CheckReport {
    bool recursion_ok = false;
    bool tail_ok = true;   // Realized: geometric envelope on the step tail
    bool ladder_ok = true; // Obstructed: cusp distance crosses 1e-1 .. 1e-6
    double tail_ratio = 0.0;
    bool passed() const { return recursion_ok && tail_ok && ladder_ok; }
};

CheckReport dichotomy_consistency_check(const OrbitRecord& o,
                                        const GMapFamily& g);

} // namespace pullback
