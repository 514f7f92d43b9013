#pragma once

#include <cstddef>
#include <vector>

#include "dbar/geometry.hpp"

namespace dbar {

// ---------------------------------------------------------------------------
// Momentum grid: spherical shells (Chebyshev-spaced radii in (0, 2 tau rho))
// times a polar x azimuth product grid with the nu-cone excluded.  Shell and
// angular weights realize the ball quadrature  int_B f(p) dp.
// ---------------------------------------------------------------------------

struct MomentumGrid {
    double ball_radius = 0.0;
    Vec3 nu{0.0, 0.0, 1.0};
    Vec3 e1{1.0, 0.0, 0.0};  // completes (e1, e2, nu) to a right-handed basis
    Vec3 e2{0.0, 1.0, 0.0};
    double cone_half_angle = kDefaultConeHalfAngle;

    std::vector<double> radii;          // increasing, in (0, ball_radius)
    std::vector<double> radial_weight;  // includes the r^2 factor
    std::vector<double> polar;          // bin centers in (cone, pi - cone)
    std::vector<double> polar_weight;   // includes the sin(theta) factor
    int n_azimuth = 0;

    static MomentumGrid make(const RegionParams& params, int n_shells, int n_polar,
                             int n_azimuth);

    std::size_t size() const { return radii.size() * polar.size() * n_azimuth; }
    std::size_t index(std::size_t is, std::size_t ip, std::size_t ia) const {
        return (is * polar.size() + ip) * n_azimuth + ia;
    }
    Vec3 direction(std::size_t ip, std::size_t ia) const;
    Vec3 node(std::size_t is, std::size_t ip, std::size_t ia) const {
        return radii[is] * direction(ip, ia);
    }
    // quadrature weight of node (is, ip, ia) for int_B f(p) dp
    double weight(std::size_t is, std::size_t ip) const {
        return radial_weight[is] * polar_weight[ip] * (2.0 * kPi / n_azimuth);
    }
};

// ---------------------------------------------------------------------------
// Per-momentum lambda grid.  Both hemispheres use the bounded chart
// coordinate (lambda on D^+, w = 1/lambda on D^-); ring radii are log-spaced
// between lambda_min = lambda_min_factor * x and the contour radius x, where
// x is the T^+ radius of the fiber.  The boundary circle is the outermost
// ring and carries its own angular resolution.
// ---------------------------------------------------------------------------

struct LambdaGridSpec {
    int rings = 16;           // interior rings per hemisphere
    int ring_angles = 32;     // even
    int contour_angles = 64;  // even, boundary circle nodes
    double lambda_min_factor = 1e-3;

    std::size_t nodes_per_hemisphere() const {
        return static_cast<std::size_t>(rings) * ring_angles + contour_angles;
    }
    // |coord| of interior ring i in a fiber with contour radius x
    double ring_radius(int i, double x) const {
        return x * std::pow(lambda_min_factor, 1.0 - static_cast<double>(i) / rings);
    }
};

enum class Hemisphere { Plus = 0, Minus = 1 };

// Anything that can be evaluated as an amplitude over the lambda-chart domain.
struct AmplitudeEvaluator {
    virtual Complex operator()(Complex lambda, const Vec3& q) const = 0;
    virtual ~AmplitudeEvaluator() = default;
};

// ---------------------------------------------------------------------------
// AmplitudeField: complex values on momentum grid x per-p lambda grid, with
// separable interpolation (bilinear in (log |coord|, arg) inside a hemisphere
// chart, trilinear in spherical momentum coordinates).
// ---------------------------------------------------------------------------

class AmplitudeField : public AmplitudeEvaluator {
  public:
    AmplitudeField() = default;
    AmplitudeField(RegionParams params, MomentumGrid pgrid, LambdaGridSpec lspec);

    const RegionParams& params() const { return params_; }
    const MomentumGrid& momentum_grid() const { return pgrid_; }
    const LambdaGridSpec& lambda_spec() const { return lspec_; }

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    std::size_t lambda_nodes() const { return lspec_.nodes_per_hemisphere(); }

    // ring in [0, rings] with ring == rings the boundary circle
    std::size_t value_index(std::size_t ip, Hemisphere h, int ring, int angle) const;

    Complex& at(std::size_t ip, Hemisphere h, int ring, int angle) {
        return values_[value_index(ip, h, ring, angle)];
    }
    Complex at(std::size_t ip, Hemisphere h, int ring, int angle) const {
        return values_[value_index(ip, h, ring, angle)];
    }
    std::vector<Complex>& values() { return values_; }
    const std::vector<Complex>& values() const { return values_; }

    int angles_of_ring(int ring) const {
        return ring == lspec_.rings ? lspec_.contour_angles : lspec_.ring_angles;
    }
    // contour radius x of the fiber over shell is
    double chart_radius(std::size_t is) const;
    // lambda of a grid node
    Complex lambda_node(std::size_t is, Hemisphere h, int ring, int angle) const;

    // Interpolating evaluation; throws OutOfDomain outside Lambda_{rho,tau,nu}.
    Complex operator()(Complex lambda, const Vec3& q) const override;

    // True when values are identical across the angular momentum indices
    // (holds exactly for rotation-invariant potentials); enables shell-level
    // deduplication in the transforms.
    bool angular_invariant() const;
    // copies shell representative (ip = index(is,0,0)) values to all angles
    void replicate_shell_values();

  private:
    RegionParams params_;
    MomentumGrid pgrid_;
    LambdaGridSpec lspec_;
    std::vector<Complex> values_;
};

// Adapter for closed-form amplitudes in tests and diagnostics.
template <typename F>
struct AnalyticAmplitude final : AmplitudeEvaluator {
    F f;
    explicit AnalyticAmplitude(F fn) : f(std::move(fn)) {}
    Complex operator()(Complex lambda, const Vec3& q) const override { return f(lambda, q); }
};

}  // namespace dbar
