#pragma once

#include "pullback/sphere.hpp"

#include <stdexcept>

namespace pullback {

struct OutOfModel : std::domain_error {
    using std::domain_error::domain_error;
};
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Model { UpperHalfPlane, UnitDisk, PuncturedDisk, Sigma };

// Point of a hyperbolic model. All densities use the curvature -1
// normalization, rho_D(0) = 2.
struct HPoint {
    cplx value;
    Model model;
};

double density(const HPoint& p);
double distance(const HPoint& p, const HPoint& q);

// Upper bound for the contraction factor of an inclusion U in V at a point
// with d_V(z, V - U) = s: 2r|log r|/(1 - r^2), r = tanh(s/2).
double contraction_bound(double s);

struct Annulus {
    double modulus;
    static Annulus from_modulus(double m);
    static Annulus from_radii(double r1, double r2);
};
double annulus_geodesic_length(const Annulus& a);

// Shortest-geodesic constant log(3 + 2 sqrt 2).
double ell_star();

// Annulus-modulus threshold 5 pi e^{d0} / ell_star beyond which a fixed
// curve class is certified.
double levy_modulus_threshold(double d0);

// Hyperbolic-diameter bound log(log|z_{n+1}|/log|z_n|) + 2 pi / log|z_n| of
// one fundamental-strip cell.
double strip_diameter_bound(double zn_abs, double znp1_abs);

// The lambda covering H -> C - {0,1} and its inverse (lift in the standard
// level-2 fundamental domain). Values are accurate over all of H: the
// argument is fundamental-domain-reduced first, and near a cusp the
// evaluation is routed through a cusp-moving identity.
cplx modular_lambda(cplx tau);
cplx modular_lambda_derivative(cplx tau);
cplx inverse_lambda(cplx z);

// Reduce tau into the level-2 fundamental domain |Re| <= 1, |2 tau +- 1| >= 1.
cplx reduce_level2(cplx tau);

double density_sigma(cplx z);
// Distance on the thrice-punctured sphere: minimum over deck translates (word
// length <= search_depth in the standard level-2 generators) of the
// half-plane distance between reduced lifts.
double dist_sigma(cplx z, cplx w, int search_depth = 8);

} // namespace pullback
