#pragma once

#include "dbar/errors.hpp"
#include "dbar/types.hpp"

namespace dbar {

// Complex zero-energy geometry: the variety
//   Omega = { (k, p) : k in C^3, p in R^3, k^2 = 0, p^2 = 2 k p },
// the per-momentum frames theta(p), omega(p), the lambda coordinate on the
// fibers, the real shift circle S_k and the region predicates for the
// lambda-chart domains.

inline constexpr double kDefaultConeHalfAngle = 1e-3;  // rad, guard around the nu axis
inline constexpr double kTolGeom = 1e-10;              // relative variety-membership tolerance

struct Frame {
    Vec3 p;      // base momentum, not on the nu axis
    Vec3 theta;  // unit, orthogonal to p
    Vec3 omega;  // unit, = (p x theta)/|p|
    Vec3 nu;     // axis used to build theta
};

struct OmegaPoint {
    CVec3 k;
    Vec3 p;
};

struct RegionParams {
    double rho = 0.0;                                // boundary radius |Im k| = rho
    double tau = 0.0;                                // in (0,1); momentum ball radius 2*tau*rho
    Vec3 nu{0.0, 0.0, 1.0};                          // unit axis of the excluded line
    double cone_half_angle = kDefaultConeHalfAngle;  // positive-measure guard around the axis

    double ball_radius() const { return 2.0 * tau * rho; }
};

enum class Region { DPlus, DMinus, TPlus, TMinus, LambdaRTN, BLambdaRTN };

// True when p lies inside the exclusion cone around the nu axis (or p = 0).
bool in_axis_cone(const Vec3& p, const Vec3& nu, double cone_half_angle);

// theta = (nu x p)/|nu x p|, omega = (p x theta)/|p|.
// Throws AxisDegenerate when p is inside the exclusion cone of the axis.
Frame make_frame(const Vec3& p, const Vec3& nu, double cone_half_angle = kDefaultConeHalfAngle);

// k(lambda, p) = kappa1 theta + kappa2 omega + p/2 with
// kappa1 = (i|p|/4)(lambda + 1/lambda), kappa2 = (|p|/4)(lambda - 1/lambda).
CVec3 k_from_lambda(Complex lambda, const Frame& frame);

// Inverse chart: lambda = 2 k (theta + i omega) / (i |p|).
// Throws NotOnVariety when (k, p) fails the Omega membership tolerances.
Complex lambda_from_k(const CVec3& k, const Frame& frame);

// |Im k| = |Re k| = (|p|/4)(|lambda| + 1/|lambda|) on the variety.
double imk_abs(double abs_lambda, double abs_p);

// Real shift along the circle S_k = {xi real : xi^2 + 2 k xi = 0}:
//   xi(phi) = Re k (cos phi - 1) + kperp sin phi,  kperp = (Im k x Re k)/|Im k|.
Vec3 xi_shift(Complex lambda, const Frame& frame, double phi);

// lambda-coordinates of the two shifted evaluation points of the bilinear
// bracket: z1 is the lambda of (k, -xi) in the frame of -xi, z2 the lambda of
// (k + xi, p + xi) in the frame of p + xi.
struct ZCoords {
    Complex z1{};
    Complex z2{};
    Vec3 xi{};
    Vec3 p_shift{};  // p + xi
};

// Throws ShiftDegenerate when xi = 0 (phi = 0) or a shifted momentum falls in
// the exclusion cone.
ZCoords z_coords(Complex lambda, const Frame& frame, double phi,
                 double cone_half_angle = kDefaultConeHalfAngle);

// Defining inequalities of the lambda-chart regions at r = rho/|p|:
//   D_r^{+-} : (|lambda| + 1/|lambda|)/4 > r and |lambda|^{+-1} < 1,
//   T_r^{+-} : equality case,
//   Lambda / bLambda additionally require |p| < 2 tau rho and p off the axis.
// Throws ZeroMomentum for p = 0.
bool in_region(Complex lambda, const Vec3& p, const RegionParams& params, Region region);

// |lambda| on the circle T_r in the closed chart |lambda| <= 1 (the T^+ radius).
// The T^- radius is its reciprocal.  Requires r >= 1/2.
double contour_radius_plus(double r);

}  // namespace dbar
