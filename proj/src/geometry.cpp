#include "dbar/geometry.hpp"

#include <algorithm>

namespace dbar {

bool in_axis_cone(const Vec3& p, const Vec3& nu, double cone_half_angle) {
    const double pn = norm(p);
    if (pn == 0.0) return true;
    return norm(cross(nu, p)) < pn * std::sin(cone_half_angle);
}

Frame make_frame(const Vec3& p, const Vec3& nu, double cone_half_angle) {
    if (in_axis_cone(p, nu, cone_half_angle)) {
        throw AxisDegenerate("make_frame: momentum inside the axis exclusion cone");
    }
    const Vec3 nxp = cross(nu, p);
    const Vec3 theta = (1.0 / norm(nxp)) * nxp;
    const Vec3 omega = (1.0 / norm(p)) * cross(p, theta);
    return Frame{p, theta, omega, nu};
}

CVec3 k_from_lambda(Complex lambda, const Frame& frame) {
    if (lambda == Complex(0.0, 0.0)) throw ZeroLambda("k_from_lambda: lambda = 0");
    const double pn = norm(frame.p);
    const Complex inv = 1.0 / lambda;
    const Complex kappa1 = Complex(0.0, pn / 4.0) * (lambda + inv);
    const Complex kappa2 = (pn / 4.0) * (lambda - inv);
    return kappa1 * to_cvec(frame.theta) + kappa2 * to_cvec(frame.omega) +
           Complex(0.5) * to_cvec(frame.p);
}

Complex lambda_from_k(const CVec3& k, const Frame& frame) {
    const double kk = norm(k);
    const double pn = norm(frame.p);
    const Complex ksq = dot(k, k);
    const Complex mism = dot(frame.p, frame.p) - 2.0 * dot(k, frame.p);
    if (std::abs(ksq) > kTolGeom * (1.0 + kk * kk) ||
        std::abs(mism) > kTolGeom * (1.0 + pn * pn)) {
        throw NotOnVariety("lambda_from_k: (k, p) violates k^2 = 0, p^2 = 2 k p");
    }
    // Two algebraically equal forms: 2 k (theta + i omega) = i |p| lambda and
    // 2 k (theta - i omega) = i |p| / lambda.  Each cancels catastrophically in
    // the opposite half of the chart; pick by magnitude.
    const Complex a = dot(k, frame.theta) + Complex(0.0, 1.0) * dot(k, frame.omega);
    const Complex b = dot(k, frame.theta) - Complex(0.0, 1.0) * dot(k, frame.omega);
    if (std::abs(a) >= std::abs(b)) {
        return 2.0 * a / Complex(0.0, pn);
    }
    return Complex(0.0, pn) / (2.0 * b);
}

double imk_abs(double abs_lambda, double abs_p) {
    return (abs_p / 4.0) * (abs_lambda + 1.0 / abs_lambda);
}

Vec3 xi_shift(Complex lambda, const Frame& frame, double phi) {
    const CVec3 k = k_from_lambda(lambda, frame);
    const Vec3 rk = real(k);
    const Vec3 ik = imag(k);
    const Vec3 kperp = (1.0 / norm(ik)) * cross(ik, rk);
    return (std::cos(phi) - 1.0) * rk + std::sin(phi) * kperp;
}

ZCoords z_coords(Complex lambda, const Frame& frame, double phi, double cone_half_angle) {
    const Vec3 xi = xi_shift(lambda, frame, phi);
    if (norm(xi) == 0.0) throw ShiftDegenerate("z_coords: xi = 0 has no frame");
    const Vec3 p_shift = frame.p + xi;
    Frame f1, f2;
    try {
        f1 = make_frame(-xi, frame.nu, cone_half_angle);
        f2 = make_frame(p_shift, frame.nu, cone_half_angle);
    } catch (const AxisDegenerate&) {
        throw ShiftDegenerate("z_coords: shifted momentum inside the axis exclusion cone");
    }
    const CVec3 k = k_from_lambda(lambda, frame);
    ZCoords out;
    out.z1 = lambda_from_k(k, f1);
    out.z2 = lambda_from_k(k + xi, f2);
    out.xi = xi;
    out.p_shift = p_shift;
    return out;
}

double contour_radius_plus(double r) {
    // 2r - sqrt(4r^2 - 1) in the cancellation-free form.
    return 1.0 / (2.0 * r + std::sqrt(4.0 * r * r - 1.0));
}

bool in_region(Complex lambda, const Vec3& p, const RegionParams& params, Region region) {
    const double pn = norm(p);
    if (pn == 0.0) throw ZeroMomentum("in_region: p = 0");
    const double al = std::abs(lambda);
    if (al == 0.0) return false;
    const double r = params.rho / pn;
    const double s = 0.25 * (al + 1.0 / al);
    const double tol = kTolGeom * std::max(1.0, r);

    const bool on_contour = std::abs(s - r) <= tol;
    const bool in_disk = s > r + tol;
    const bool ball = pn < params.ball_radius();
    const bool off_axis = !in_axis_cone(p, params.nu, params.cone_half_angle);

    switch (region) {
        case Region::DPlus:
            return in_disk && al < 1.0;
        case Region::DMinus:
            return in_disk && al > 1.0;
        case Region::TPlus:
            return on_contour && al <= 1.0;
        case Region::TMinus:
            return on_contour && al >= 1.0;
        case Region::LambdaRTN:
            return in_disk && ball && off_axis;
        case Region::BLambdaRTN:
            return on_contour && ball && off_axis;
    }
    return false;
}

}  // namespace dbar
