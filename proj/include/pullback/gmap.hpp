#pragma once

#include "pullback/moebius.hpp"
#include "pullback/portrait.hpp"
#include "pullback/sphere.hpp"

#include <stdexcept>
#include <variant>
#include <vector>

namespace pullback {

struct UndefinedAt : std::domain_error {
    using std::domain_error::domain_error;
};
struct BranchPole : std::domain_error {
    using std::domain_error::domain_error;
};
struct UnsupportedPortrait : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class GMapKind { ExpPeriodic, ExpPreperiodic };

struct CuspBehavior {
    enum class Type { EssentialSingularity, FixedPoint, MapsTo };
    Type type;
    cplx multiplier{};        // FixedPoint only; 0 means superattracting
    SpherePoint target{};     // MapsTo only
};

// Moduli-space map family. ExpPeriodic(k): G(z) = exp(2 pi i k / z);
// ExpPreperiodic(k): G(z) = exp(2 pi i k / (z - 1)).
struct GMapFamily {
    GMapKind kind;
    int k;                          // nonzero
    CuspBehavior cusp0, cusp1, cuspInf;

    static GMapFamily exp_periodic(int k);
    static GMapFamily exp_preperiodic(int k);
};

SpherePoint gmap_eval(const GMapFamily& g, const SpherePoint& z);
cplx gmap_derivative(const GMapFamily& g, const SpherePoint& z);

// Branch m of the inverse: 2 pi i k/(Log w + 2 pi i m), shifted by +1 for the
// preperiodic family. Log is the principal branch, Im in (-pi, pi].
SpherePoint inverse_branch(const GMapFamily& g, int m, const SpherePoint& w);

enum class FixedPointClass { Repelling, Superattracting, Anomalous };

struct FixedPointRecord {
    cplx location;
    cplx multiplier;
    FixedPointClass classification;
    double residual; // |G(z) - z|
};

// Grid-seeded Newton search for solutions of G(z) = z with |z| <= radius,
// keeping clear of the essential singularity. Results deduplicated to 1e-8
// and sorted by |location| (ties by argument).
std::vector<FixedPointRecord> find_fixed_points(const GMapFamily& g,
                                                double radius,
                                                int grid = 120);

// Built-in analytic family realizing one of the two exponential portraits.
GMapFamily family_for_portrait(const Portrait& p, const BSet& b, int k);

} // namespace pullback
