#include "dbar/scatter.hpp"
#include <limits>

#include <algorithm>
#include <cmath>

#include "dbar/parallel.hpp"

namespace dbar {

namespace {

constexpr double kTwoPiPow = 15.749609945722419;  // (2 pi)^{3/2}

// Gauss-Legendre rule on [-1, 1] by Newton iteration on the Legendre
// recurrence; nodes ordered ascending.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[n - 1 - i] = t;
        x[i] = -t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

}  // namespace

bool PotentialModel::radial() const {
    for (const auto& t : terms) {
        if (norm(t.center) != 0.0) return false;
    }
    return true;
}

double PotentialModel::value(const Vec3& x) const {
    double v = 0.0;
    for (const auto& t : terms) {
        const Vec3 d = x - t.center;
        v += t.amplitude * std::exp(-dot(d, d) / (2.0 * t.width * t.width));
    }
    return v;
}

double PotentialModel::tail_radius(double tol) const {
    double r = 0.0;
    for (const auto& t : terms) {
        const double scale = std::abs(t.amplitude) * std::pow(t.width, 3.0) / kTwoPiPow *
                             std::max<std::size_t>(terms.size(), 1);
        if (scale <= tol) continue;
        r = std::max(r, std::sqrt(2.0 * std::log(scale / tol)) / t.width);
    }
    return r;
}

Complex vhat(const PotentialModel& model, const Vec3& p) {
    Complex v{};
    const double p2 = dot(p, p);
    for (const auto& t : model.terms) {
        const double mag =
            t.amplitude * std::pow(t.width, 3.0) / kTwoPiPow * std::exp(-0.5 * t.width * t.width * p2);
        v += mag * std::polar(1.0, dot(p, t.center));
    }
    return v;
}

double norm_mu(const PotentialModel& model, double mu, const std::vector<double>& p_radii) {
    if (p_radii.empty()) throw EmptyGrid("norm_mu: empty sample grid");
    // direction set: axes, face diagonals, corner diagonals
    std::vector<Vec3> dirs;
    for (int sx = -1; sx <= 1; ++sx)
        for (int sy = -1; sy <= 1; ++sy)
            for (int sz = -1; sz <= 1; ++sz) {
                if (sx == 0 && sy == 0 && sz == 0) continue;
                Vec3 d{static_cast<double>(sx), static_cast<double>(sy), static_cast<double>(sz)};
                dirs.push_back((1.0 / norm(d)) * d);
            }
    double best = std::pow(1.0, mu) * std::abs(vhat(model, {0.0, 0.0, 0.0}));
    for (double r : p_radii) {
        const double wgt = std::pow(1.0 + r, mu);
        if (model.radial()) {
            best = std::max(best, wgt * std::abs(vhat(model, {r, 0.0, 0.0})));
        } else {
            for (const auto& d : dirs) {
                best = std::max(best, wgt * std::abs(vhat(model, r * d)));
            }
        }
    }
    return best;
}

Complex born_H(const PotentialModel& model, const OmegaPoint& point) {
    return vhat(model, point.p);
}

namespace {

// C-infinity step: 1 for u <= 0, 0 for u >= 1
double smooth_step_down(double u) {
    if (u <= 0.0) return 1.0;
    if (u >= 1.0) return 0.0;
    const double f0 = std::exp(-1.0 / u);
    const double f1 = std::exp(-1.0 / (1.0 - u));
    return f1 / (f0 + f1);
}

}  // namespace

SingularIntegralResult singular_circle_integral(const CVec3& k, double support_radius,
                                                const std::function<Complex(const Vec3&)>& g,
                                                const QuadratureConfig& quad,
                                                bool check_refinement, double feature_scale) {
    const Vec3 rk = real(k);
    const Vec3 ik = imag(k);
    const double R = norm(rk);
    const double Ri = norm(ik);
    if (R == 0.0 || Ri == 0.0) {
        throw QuadratureFailure("singular_circle_integral: degenerate circle (|Re k| or |Im k| = 0)");
    }
    const Vec3 u1 = (1.0 / R) * rk;
    const Vec3 u3 = (1.0 / Ri) * ik;
    const Vec3 u2 = cross(u3, u1);
    const Vec3 center = -R * u1;  // circle passes through the origin

    const double W = 1.05 * support_radius;

    // Every point of the support ball is within W of the circle (the circle
    // passes through the origin).  If the tube of radius ~1.25 W stays clear
    // of the axis, it covers the whole support and no complement is needed.
    const bool tube_only = 0.9 * R >= 1.25 * W;
    const double t_max = tube_only ? 1.25 * W : std::min(0.9 * R, 1.25 * W);
    // cutoff bracket: chi = 1 below a, 0 above b
    const double cut_a = tube_only ? W : 0.45 * t_max;
    const double cut_b = tube_only ? 1.2 * W : 0.9 * t_max;

    // arc window: |c(alpha)| = 2 R sin(alpha/2) <= W + t_max
    double alpha_max = kPi;
    const double sa = (W + t_max) / (2.0 * R);
    const bool full_arc = sa >= 1.0 - 1e-12;
    if (!full_arc) alpha_max = std::min(kPi, 1.05 * 2.0 * std::asin(sa));

    // density-derived node counts (windows measured in feature lengths)
    const double scale = std::max(feature_scale, 1e-12);
    auto density_nodes = [&](int minimum, double window) {
        const double want = quad.density * window / scale;
        return std::max(minimum, static_cast<int>(std::ceil(want)));
    };
    const int base_arc = density_nodes(quad.arc_nodes, 2.0 * alpha_max * R);
    const int base_rad = density_nodes(quad.rad_nodes, t_max);
    const int base_ring = density_nodes(quad.ring_nodes, 2.0 * kPi * std::min(t_max, 0.5 * W));
    const int base_cart = density_nodes(quad.cart_nodes, 2.0 * W);

    auto chi = [&](double t) { return smooth_step_down((t - cut_a) / (cut_b - cut_a)); };

    // Tube part in coordinates (alpha, t, beta):
    //   xi = c(alpha) + t cos(beta) e_r(alpha) + t sin(beta) u3,
    // where the volume element t (R + t cos beta) cancels the kernel zero:
    //   xi^2 + 2 k xi = t (t + 2 R e^{i beta}).
    auto eval_tube = [&](int na, int nt, int nb) -> Complex {
        std::vector<double> xt, wt, xa, wa;
        gauss_legendre(nt, xt, wt);
        if (full_arc) {
            xa.resize(na);
            wa.assign(na, 2.0 * kPi / na);
            for (int j = 0; j < na; ++j) xa[j] = -kPi + 2.0 * kPi * (j + 0.5) / na;
        } else {
            gauss_legendre(na, xa, wa);
            for (int j = 0; j < na; ++j) {
                xa[j] *= alpha_max;
                wa[j] *= alpha_max;
            }
        }
        Complex acc{};
        for (int j = 0; j < na; ++j) {
            const Vec3 er = std::cos(xa[j]) * u1 + std::sin(xa[j]) * u2;
            const Vec3 c = center + R * er;
            for (int i = 0; i < nt; ++i) {
                const double t = 0.5 * t_max * (xt[i] + 1.0);
                const double wtt = 0.5 * t_max * wt[i] * chi(t);
                if (wtt == 0.0) continue;
                for (int l = 0; l < nb; ++l) {
                    const double beta = -kPi + 2.0 * kPi * (l + 0.5) / nb;
                    const double cb = std::cos(beta), sb = std::sin(beta);
                    const Vec3 xi = c + (t * cb) * er + (t * sb) * u3;
                    const Complex den(t + 2.0 * R * cb, 2.0 * R * sb);
                    acc += g(xi) * ((R + t * cb) * wtt * wa[j] * (2.0 * kPi / nb) / den);
                }
            }
        }
        return acc;
    };

    // Complement part: (1 - chi(dist)) g / kernel is smooth everywhere.
    auto eval_cart = [&](int n) -> Complex {
        std::vector<double> x, w;
        gauss_legendre(n, x, w);
        Complex acc{};
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int l = 0; l < n; ++l) {
                    const Vec3 xi{W * x[i], W * x[j], W * x[l]};
                    // distance to the circle
                    const Vec3 d = xi - center;
                    const double dz = dot(d, u3);
                    const double dr = std::sqrt(std::max(dot(d, d) - dz * dz, 0.0));
                    const double t = std::hypot(dr - R, dz);
                    const double one_minus = 1.0 - chi(t);
                    if (one_minus == 0.0) continue;
                    const Complex den = dot(xi, xi) + 2.0 * dot(k, xi);
                    acc += g(xi) * (one_minus * w[i] * w[j] * w[l] / den);
                }
            }
        }
        return acc * (W * W * W);
    };

    auto evaluate = [&](int na, int nt, int nb, int nc) -> Complex {
        Complex v = eval_tube(na, nt, nb);
        if (!tube_only) v += eval_cart(nc);
        return v;
    };

    SingularIntegralResult out;
    if (!check_refinement) {
        out.value = evaluate(base_arc, base_rad, base_ring, base_cart);
        return out;
    }
    const Complex coarse = evaluate(base_arc, base_rad, base_ring, base_cart);
    const Complex fine =
        evaluate(2 * base_arc, 2 * base_rad, 2 * base_ring, 2 * base_cart);
    out.value = fine;
    out.error_estimate = std::abs(fine - coarse);
    out.refined = true;
    return out;
}

Complex faddeev_H(const PotentialModel& model, const OmegaPoint& point, int iterations,
                  const QuadratureConfig& quad) {
    if (iterations <= 0) return born_H(model, point);
    if (norm(imag(point.k)) == 0.0) {
        throw QuadratureFailure("faddeev_H: |Im k| = 0");
    }
    double amp_scale = 0.0;
    double feature = std::numeric_limits<double>::infinity();
    for (const auto& t : model.terms) {
        amp_scale += std::abs(t.amplitude) * std::pow(t.width, 3.0) / kTwoPiPow;
        // vhat(q) varies on the scale 1/width
        feature = std::min(feature, 1.0 / t.width);
    }
    if (amp_scale == 0.0) return Complex(0.0, 0.0);
    if (!std::isfinite(feature)) feature = 1.0;

    const double support = norm(point.p) + model.tail_radius(quad.tail_tol * amp_scale) + 1.0;

    QuadratureConfig inner = quad;
    inner.refine = RefineMode::Off;
    auto g = [&](const Vec3& xi) -> Complex {
        const Complex a = vhat(model, point.p + xi);
        const Complex b = iterations == 1
                              ? vhat(model, -xi)
                              : faddeev_H(model, OmegaPoint{point.k, -xi}, iterations - 1, inner);
        return a * b;
    };

    const bool check = quad.refine == RefineMode::Full;
    const auto res = singular_circle_integral(point.k, support, g, quad, check, feature);
    if (res.refined) {
        const double floor = 1e-10 * amp_scale * amp_scale;
        if (res.error_estimate > quad.tol * std::max(std::abs(res.value), floor)) {
            throw QuadratureFailure("faddeev_H: quadrature refinement disagreement");
        }
    }
    return vhat(model, point.p) - res.value;
}

bool ScatteringData::angular_invariant() const {
    const std::size_t per_p = 2 * static_cast<std::size_t>(contour_angles);
    const std::size_t n_ang = pgrid.polar.size() * pgrid.n_azimuth;
    for (std::size_t is = 0; is < pgrid.radii.size(); ++is) {
        const std::size_t ref = pgrid.index(is, 0, 0);
        for (std::size_t a = 1; a < n_ang; ++a) {
            const std::size_t ip = is * n_ang + a;
            for (std::size_t j = 0; j < per_p; ++j) {
                if (values[ip * per_p + j] != values[ref * per_p + j]) return false;
            }
        }
    }
    return true;
}

ScatteringData sample_boundary(const PotentialModel& model, const RegionParams& params,
                               const GridSpec& grid, int iterations,
                               const QuadratureConfig& quad, int workers) {
    ScatteringData data;
    data.params = params;
    data.pgrid = MomentumGrid::make(params, grid.shells, grid.polar, grid.azimuth);
    data.contour_angles = grid.lambda.contour_angles;
    data.values.assign(data.pgrid.size() * 2 * grid.lambda.contour_angles, Complex{});

    const std::size_t n_shells = data.pgrid.radii.size();

    if (model.radial()) {
        // value is a function of (|p|, hemisphere) only; one evaluation per
        // shell and hemisphere, refinement-checked, then replicated
        std::vector<Complex> shell_values(n_shells * 2);
        QuadratureConfig q = quad;
        if (q.refine == RefineMode::Sample) q.refine = RefineMode::Full;
        parallel_for(n_shells * 2, workers, [&](std::size_t task) {
            const std::size_t is = task / 2;
            const Hemisphere h = static_cast<Hemisphere>(task % 2);
            const Vec3 p = data.pgrid.node(is, 0, 0);
            const Frame f = make_frame(p, params.nu, params.cone_half_angle);
            const Complex lam = data.lambda_node(is, h, 0);
            const OmegaPoint pt{k_from_lambda(lam, f), p};
            shell_values[task] = faddeev_H(model, pt, iterations, q);
        });
        for (std::size_t is = 0; is < n_shells; ++is) {
            for (std::size_t jp = 0; jp < data.pgrid.polar.size(); ++jp) {
                for (int ja = 0; ja < data.pgrid.n_azimuth; ++ja) {
                    const std::size_t ip = data.pgrid.index(is, jp, ja);
                    for (int h = 0; h < 2; ++h) {
                        for (int a = 0; a < grid.lambda.contour_angles; ++a) {
                            data.at(ip, static_cast<Hemisphere>(h), a) =
                                shell_values[is * 2 + h];
                        }
                    }
                }
            }
        }
        return data;
    }

    const std::size_t n_tasks = data.pgrid.size() * 2 * grid.lambda.contour_angles;
    parallel_for(n_tasks, workers, [&](std::size_t task) {
        const int a = static_cast<int>(task % grid.lambda.contour_angles);
        const std::size_t rest = task / grid.lambda.contour_angles;
        const Hemisphere h = static_cast<Hemisphere>(rest % 2);
        const std::size_t ip = rest / 2;
        const std::size_t is = ip / (data.pgrid.polar.size() * data.pgrid.n_azimuth);
        const std::size_t rem = ip % (data.pgrid.polar.size() * data.pgrid.n_azimuth);
        const std::size_t jp = rem / data.pgrid.n_azimuth;
        const std::size_t ja = rem % data.pgrid.n_azimuth;

        QuadratureConfig q = quad;
        if (q.refine == RefineMode::Sample) {
            // refinement check on the first node of each shell only
            q.refine = (jp == 0 && ja == 0 && a == 0) ? RefineMode::Full : RefineMode::Off;
        }
        const Vec3 p = data.pgrid.node(is, jp, ja);
        const Frame f = make_frame(p, params.nu, params.cone_half_angle);
        const Complex lam = data.lambda_node(is, h, a);
        const OmegaPoint pt{k_from_lambda(lam, f), p};
        data.values[data.index(ip, h, a)] = faddeev_H(model, pt, iterations, q);
    });
    return data;
}

std::vector<std::pair<double, double>> high_energy_limit_check(
    const PotentialModel& model, const Vec3& p, const std::vector<double>& rho_list,
    int iterations, const QuadratureConfig& quad, const Vec3& nu) {
    std::vector<std::pair<double, double>> out;
    out.reserve(rho_list.size());
    const Frame f = make_frame(p, nu);
    const Complex v = vhat(model, p);
    for (double rho : rho_list) {
        const double x = contour_radius_plus(rho / norm(p));
        const OmegaPoint pt{k_from_lambda(Complex(x, 0.0), f), p};
        const Complex H = faddeev_H(model, pt, iterations, quad);
        out.emplace_back(rho, std::abs(v - H));
    }
    return out;
}

}  // namespace dbar
