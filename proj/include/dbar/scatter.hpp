#pragma once

#include <functional>
#include <vector>

#include "dbar/field.hpp"
#include "dbar/geometry.hpp"

namespace dbar {

// Forward problem: analytic test potentials, the generalized amplitude H via
// Born approximation and Neumann iteration of the linear integral equation,
// and sampling of boundary data on the contour circles of every fiber.

// ---------------------------------------------------------------------------
// Sum-of-Gaussians potential  v(x) = sum_j A_j exp(-|x - c_j|^2 / (2 w_j^2))
// with closed-form Fourier transform (normalization (2 pi)^{-3} int e^{ipx} v dx).
// ---------------------------------------------------------------------------

struct GaussianTerm {
    double amplitude = 0.0;
    Vec3 center{};
    double width = 1.0;  // > 0
};

struct PotentialModel {
    std::vector<GaussianTerm> terms;

    bool radial() const;  // all centers at the origin
    // |vhat| envelope drops below tol for |p| >= tail_radius(tol)
    double tail_radius(double tol) const;
    double value(const Vec3& x) const;  // v(x)
};

Complex vhat(const PotentialModel& model, const Vec3& p);

// Discrete sup of (1 + |p|)^mu |vhat(p)| over a radial sample grid; a lower
// estimate of the essential sup norm.
double norm_mu(const PotentialModel& model, double mu, const std::vector<double>& p_radii);

Complex born_H(const PotentialModel& model, const OmegaPoint& point);

// ---------------------------------------------------------------------------
// Singular integral  int g(xi) dxi / (xi^2 + 2 k xi).
// The denominator vanishes on the circle S_k (center -Re k, radius |Re k|, in
// the plane orthogonal to Im k, passing through the origin).  Quadrature runs
// in tube coordinates around S_k, where the volume element cancels the
// singular factor of the kernel exactly; node rings are symmetric about the
// singular radius.  When the circle is small relative to the support of g,
// the tube carries a smooth cutoff and the complement is integrated on a
// Cartesian Gauss grid.
// ---------------------------------------------------------------------------

enum class RefineMode { Off, Sample, Full };

struct QuadratureConfig {
    // minimum node counts; the engine raises them to keep a fixed node
    // density per feature length of the integrand, so cost and accuracy are
    // uniform in the circle radius
    int arc_nodes = 32;   // along the circle
    int rad_nodes = 16;   // transverse radial (distance from the circle)
    int ring_nodes = 16;  // transverse angular, even
    int cart_nodes = 32;  // per axis of the complement grid
    double density = 3.2;     // nodes per feature length
    double tol = 1e-4;        // relative Richardson agreement (tol_fwd)
    double tail_tol = 1e-12;  // integrand support cutoff
    RefineMode refine = RefineMode::Full;
};

struct SingularIntegralResult {
    Complex value{};
    double error_estimate = 0.0;  // |coarse - fine| when refinement ran
    bool refined = false;
};

SingularIntegralResult singular_circle_integral(const CVec3& k, double support_radius,
                                                const std::function<Complex(const Vec3&)>& g,
                                                const QuadratureConfig& quad,
                                                bool check_refinement, double feature_scale = 1.0);

// H(k, p) after `iterations` applications of the integral operator to the
// Born term (iterations = 0 returns born_H exactly).
// Throws QuadratureFailure when refinement disagrees beyond quad.tol.
Complex faddeev_H(const PotentialModel& model, const OmegaPoint& point, int iterations,
                  const QuadratureConfig& quad);

// ---------------------------------------------------------------------------
// Boundary data on the contour circles of every fiber over the momentum grid.
// ---------------------------------------------------------------------------

struct GridSpec {
    int shells = 16;
    int polar = 12;
    int azimuth = 24;
    LambdaGridSpec lambda;  // rings/angles for fields, contour_angles for data
};

struct ScatteringData {
    RegionParams params;
    MomentumGrid pgrid;
    int contour_angles = 64;
    std::vector<Complex> values;  // [momentum node][hemisphere][angle]

    std::size_t index(std::size_t ip, Hemisphere h, int angle) const {
        return (ip * 2 + static_cast<std::size_t>(h)) * contour_angles + angle;
    }
    Complex& at(std::size_t ip, Hemisphere h, int angle) {
        return values[index(ip, h, angle)];
    }
    Complex at(std::size_t ip, Hemisphere h, int angle) const {
        return values[index(ip, h, angle)];
    }
    // contour radius of the fiber over shell is (the |lambda| of T^+)
    double chart_radius(std::size_t is) const {
        return contour_radius_plus(params.rho / pgrid.radii[is]);
    }
    Complex lambda_node(std::size_t is, Hemisphere h, int angle) const {
        const Complex c = std::polar(chart_radius(is), 2.0 * kPi * angle / contour_angles);
        return h == Hemisphere::Plus ? c : 1.0 / c;
    }
    bool angular_invariant() const;
};

ScatteringData sample_boundary(const PotentialModel& model, const RegionParams& params,
                               const GridSpec& grid, int iterations,
                               const QuadratureConfig& quad, int workers = 1);

// |vhat(p) - H(k, p)| at a boundary point |Im k| = rho, one entry per rho.
std::vector<std::pair<double, double>> high_energy_limit_check(
    const PotentialModel& model, const Vec3& p, const std::vector<double>& rho_list,
    int iterations, const QuadratureConfig& quad, const Vec3& nu = {0.0, 0.0, 1.0});

}  // namespace dbar
