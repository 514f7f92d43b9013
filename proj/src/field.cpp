#include "dbar/field.hpp"

#include <algorithm>
#include <cmath>

namespace dbar {

namespace {

// snap a clamped interpolation fraction to the nearest node
double snap_unit(double u) {
    if (u < 1e-12) return 0.0;
    if (u > 1.0 - 1e-12) return 1.0;
    return u;
}

}  // namespace

MomentumGrid MomentumGrid::make(const RegionParams& params, int n_shells, int n_polar,
                                int n_azimuth) {
    if (n_shells < 1 || n_polar < 1 || n_azimuth < 2) {
        throw EmptyGrid("MomentumGrid: degenerate grid spec");
    }
    MomentumGrid g;
    g.ball_radius = params.ball_radius();
    g.nu = (1.0 / norm(params.nu)) * params.nu;
    g.cone_half_angle = params.cone_half_angle;
    g.n_azimuth = n_azimuth;

    // deterministic transverse basis
    const Vec3 seed = std::abs(g.nu.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    Vec3 e1 = cross(g.nu, seed);
    e1 = (1.0 / norm(e1)) * e1;
    g.e1 = e1;
    g.e2 = cross(g.nu, e1);

    // Chebyshev radii r = tau rho (1 - cos t): clusters at both ends of (0, 2 tau rho).
    // Radial weights realize int_0^{2 tau rho} f(r) r^2 dr by midpoint in t.
    const double a = 0.5 * g.ball_radius;
    g.radii.resize(n_shells);
    g.radial_weight.resize(n_shells);
    for (int i = 0; i < n_shells; ++i) {
        const double t = (i + 0.5) * kPi / n_shells;
        const double r = a * (1.0 - std::cos(t));
        g.radii[i] = r;
        g.radial_weight[i] = r * r * a * std::sin(t) * (kPi / n_shells);
    }

    const double cone = params.cone_half_angle;
    const double span = kPi - 2.0 * cone;
    g.polar.resize(n_polar);
    g.polar_weight.resize(n_polar);
    for (int j = 0; j < n_polar; ++j) {
        const double th = cone + (j + 0.5) * span / n_polar;
        g.polar[j] = th;
        g.polar_weight[j] = std::sin(th) * (span / n_polar);
    }
    return g;
}

Vec3 MomentumGrid::direction(std::size_t ip, std::size_t ia) const {
    const double th = polar[ip];
    const double ph = 2.0 * kPi * ia / n_azimuth;
    const double st = std::sin(th);
    return st * std::cos(ph) * e1 + st * std::sin(ph) * e2 + std::cos(th) * nu;
}

AmplitudeField::AmplitudeField(RegionParams params, MomentumGrid pgrid, LambdaGridSpec lspec)
    : params_(params), pgrid_(std::move(pgrid)), lspec_(lspec) {
    values_.assign(pgrid_.size() * 2 * lspec_.nodes_per_hemisphere(), Complex(0.0, 0.0));
}

std::size_t AmplitudeField::value_index(std::size_t ip, Hemisphere h, int ring, int angle) const {
    const std::size_t per_hemi = lspec_.nodes_per_hemisphere();
    std::size_t off = ring == lspec_.rings
                          ? static_cast<std::size_t>(lspec_.rings) * lspec_.ring_angles + angle
                          : static_cast<std::size_t>(ring) * lspec_.ring_angles + angle;
    return (ip * 2 + static_cast<std::size_t>(h)) * per_hemi + off;
}

double AmplitudeField::chart_radius(std::size_t is) const {
    return contour_radius_plus(params_.rho / pgrid_.radii[is]);
}

Complex AmplitudeField::lambda_node(std::size_t is, Hemisphere h, int ring, int angle) const {
    const double x = chart_radius(is);
    const double rc = ring == lspec_.rings ? x : lspec_.ring_radius(ring, x);
    const double ang = 2.0 * kPi * angle / angles_of_ring(ring);
    const Complex coord = std::polar(rc, ang);
    return h == Hemisphere::Plus ? coord : 1.0 / coord;
}

Complex AmplitudeField::operator()(Complex lambda, const Vec3& q) const {
    const double qn = norm(q);
    if (qn == 0.0 || qn >= params_.ball_radius()) {
        throw OutOfDomain("AmplitudeField: momentum outside the ball");
    }
    if (in_axis_cone(q, params_.nu, params_.cone_half_angle)) {
        throw OutOfDomain("AmplitudeField: momentum inside the axis cone");
    }
    const double al = std::abs(lambda);
    if (al == 0.0) throw OutOfDomain("AmplitudeField: lambda = 0");
    const Hemisphere h = al <= 1.0 ? Hemisphere::Plus : Hemisphere::Minus;
    const Complex coord = h == Hemisphere::Plus ? lambda : 1.0 / lambda;

    // chart-membership tolerance: |coord| may exceed the fiber contour radius
    // by roundoff when evaluating on the boundary itself
    const double x_q = contour_radius_plus(params_.rho / qn);
    if (std::abs(coord) > x_q * (1.0 + 1e-9)) {
        throw OutOfDomain("AmplitudeField: lambda outside the fiber chart");
    }

    // momentum spherical coordinates in the grid basis
    const double ct = std::clamp(dot(q, pgrid_.nu) / qn, -1.0, 1.0);
    const double th = std::acos(ct);
    const double az = std::atan2(dot(q, pgrid_.e2), dot(q, pgrid_.e1));

    // radial bracket (clamped linear)
    const auto& rr = pgrid_.radii;
    std::size_t is0 = 0;
    double ur = 0.0;
    if (qn <= rr.front()) {
        is0 = 0;
        ur = 0.0;
    } else if (qn >= rr.back()) {
        is0 = rr.size() - 2 + (rr.size() == 1 ? 1 : 0);
        ur = 1.0;
        if (rr.size() == 1) {
            is0 = 0;
            ur = 0.0;
        }
    } else {
        const auto it = std::upper_bound(rr.begin(), rr.end(), qn);
        is0 = static_cast<std::size_t>(it - rr.begin()) - 1;
        ur = snap_unit((qn - rr[is0]) / (rr[is0 + 1] - rr[is0]));
    }
    const std::size_t is1 = std::min(is0 + 1, rr.size() - 1);

    // polar bracket (clamped linear over bin centers)
    const auto& pp = pgrid_.polar;
    std::size_t jp0 = 0;
    double up = 0.0;
    if (th <= pp.front()) {
        jp0 = 0;
        up = 0.0;
    } else if (th >= pp.back()) {
        jp0 = pp.size() >= 2 ? pp.size() - 2 : 0;
        up = pp.size() >= 2 ? 1.0 : 0.0;
    } else {
        const auto it = std::upper_bound(pp.begin(), pp.end(), th);
        jp0 = static_cast<std::size_t>(it - pp.begin()) - 1;
        up = snap_unit((th - pp[jp0]) / (pp[jp0 + 1] - pp[jp0]));
    }
    const std::size_t jp1 = std::min(jp0 + 1, pp.size() - 1);

    // azimuth (periodic linear)
    const int na = pgrid_.n_azimuth;
    double fa = az / (2.0 * kPi / na);
    fa -= std::floor(fa / na) * na;
    int ka0 = static_cast<int>(std::floor(fa));
    double ua = snap_unit(fa - ka0);
    ka0 = ((ka0 % na) + na) % na;
    const int ka1 = (ka0 + 1) % na;

    // normalized log-radial chart coordinate: t = 1 at the contour ring
    const double L = std::log(1.0 / lspec_.lambda_min_factor);
    const double angle = std::arg(coord);

    auto eval_fiber = [&](std::size_t is, std::size_t jp, int ka) -> Complex {
        const std::size_t ip = pgrid_.index(is, jp, ka);
        const double x = chart_radius(is);
        double t = 1.0 + std::log(std::abs(coord) / x) / L;
        t = std::clamp(t, 0.0, 1.0);
        double fr = snap_unit(t * lspec_.rings - std::floor(t * lspec_.rings)) +
                    std::floor(t * lspec_.rings);
        int r0 = static_cast<int>(std::floor(fr));
        double wlo = fr - r0;
        if (r0 >= lspec_.rings) {
            r0 = lspec_.rings;
            wlo = 0.0;
        }
        const int r1 = std::min(r0 + 1, lspec_.rings);

        auto ring_value = [&](int ring) -> Complex {
            const int nang = angles_of_ring(ring);
            double fb = angle / (2.0 * kPi / nang);
            fb -= std::floor(fb / nang) * nang;
            int b0 = static_cast<int>(std::floor(fb));
            const double ub = snap_unit(fb - b0);
            b0 = ((b0 % nang) + nang) % nang;
            const int b1 = (b0 + 1) % nang;
            return (1.0 - ub) * at(ip, h, ring, b0) + ub * at(ip, h, ring, b1);
        };
        return (1.0 - wlo) * ring_value(r0) + wlo * ring_value(r1);
    };

    auto lerp = [](Complex a, Complex b, double u) { return (1.0 - u) * a + u * b; };
    const Complex v00 = lerp(eval_fiber(is0, jp0, ka0), eval_fiber(is0, jp0, ka1), ua);
    const Complex v01 = lerp(eval_fiber(is0, jp1, ka0), eval_fiber(is0, jp1, ka1), ua);
    const Complex v10 = lerp(eval_fiber(is1, jp0, ka0), eval_fiber(is1, jp0, ka1), ua);
    const Complex v11 = lerp(eval_fiber(is1, jp1, ka0), eval_fiber(is1, jp1, ka1), ua);
    return lerp(lerp(v00, v01, up), lerp(v10, v11, up), ur);
}

bool AmplitudeField::angular_invariant() const {
    const std::size_t per_p = 2 * lspec_.nodes_per_hemisphere();
    const std::size_t n_ang = pgrid_.polar.size() * pgrid_.n_azimuth;
    for (std::size_t is = 0; is < pgrid_.radii.size(); ++is) {
        const std::size_t ref = pgrid_.index(is, 0, 0);
        for (std::size_t a = 1; a < n_ang; ++a) {
            const std::size_t ip = is * n_ang + a;
            for (std::size_t j = 0; j < per_p; ++j) {
                if (values_[ip * per_p + j] != values_[ref * per_p + j]) return false;
            }
        }
    }
    return true;
}

void AmplitudeField::replicate_shell_values() {
    const std::size_t per_p = 2 * lspec_.nodes_per_hemisphere();
    const std::size_t n_ang = pgrid_.polar.size() * pgrid_.n_azimuth;
    for (std::size_t is = 0; is < pgrid_.radii.size(); ++is) {
        const std::size_t ref = pgrid_.index(is, 0, 0);
        for (std::size_t a = 1; a < n_ang; ++a) {
            const std::size_t ip = is * n_ang + a;
            std::copy_n(values_.begin() + ref * per_p, per_p, values_.begin() + ip * per_p);
        }
    }
}

}  // namespace dbar
