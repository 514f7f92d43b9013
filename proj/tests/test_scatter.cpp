#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dbar/scatter.hpp"

using namespace dbar;

namespace {

const double kInvTwoPiPow = 1.0 / std::pow(2.0 * kPi, 1.5);

PotentialModel unit_gaussian(double amplitude = 1.0) {
    return PotentialModel{{GaussianTerm{amplitude, {0.0, 0.0, 0.0}, 1.0}}};
}

// brute-force Cartesian midpoint evaluation of the singular integral; the
// kernel is absolutely integrable so a plain grid converges (slowly)
Complex cartesian_oracle(const CVec3& k, double box, int n,
                         const std::function<Complex(const Vec3&)>& g) {
    const double h = 2.0 * box / n;
    Complex acc{};
    for (int i = 0; i < n; ++i) {
        const double x = -box + (i + 0.5) * h + 0.37 * h / n;  // irrational-ish offset
        for (int j = 0; j < n; ++j) {
            const double y = -box + (j + 0.5) * h;
            for (int l = 0; l < n; ++l) {
                const double z = -box + (l + 0.5) * h;
                const Vec3 xi{x, y, z};
                const Complex den = dot(xi, xi) + 2.0 * dot(k, xi);
                acc += g(xi) / den;
            }
        }
    }
    return acc * (h * h * h);
}

}  // namespace

TEST_CASE("vhat: unit Gaussian closed form") {
    const auto m = unit_gaussian();
    CHECK(vhat(m, {0.0, 0.0, 0.0}).real() == doctest::Approx(kInvTwoPiPow).epsilon(1e-14));
    CHECK(vhat(m, {0.0, 0.0, 0.0}).real() == doctest::Approx(0.0634936359).epsilon(1e-8));
    const Vec3 p{1.3, -0.4, 0.2};
    const Complex expect = kInvTwoPiPow * std::exp(-0.5 * dot(p, p));
    CHECK(std::abs(vhat(m, p) - expect) < 1e-15);

    CHECK(std::abs(vhat(PotentialModel{}, p)) == 0.0);

    // shifted center contributes the plane-wave phase
    PotentialModel shifted{{GaussianTerm{1.0, {0.5, 0.0, -1.0}, 1.0}}};
    const Complex phase = std::polar(1.0, dot(p, shifted.terms[0].center));
    CHECK(std::abs(vhat(shifted, p) - phase * vhat(m, p)) < 1e-15);

    // real potential: vhat(-p) = conj(vhat(p))
    CHECK(std::abs(vhat(shifted, -p) - std::conj(vhat(shifted, p))) < 1e-16);
}

TEST_CASE("norm_mu: oracle maximum for the unit Gaussian at mu = 2") {
    CHECK(norm_mu(PotentialModel{}, 2.0, {0.5, 1.0}) == 0.0);
    CHECK_THROWS_AS(norm_mu(unit_gaussian(), 2.0, {}), EmptyGrid);

    // dense 1-D maximization of (1+r)^2 (2 pi)^{-3/2} e^{-r^2/2}
    double best = 0.0;
    for (int i = 0; i <= 400000; ++i) {
        const double r = 8.0 * i / 400000.0;
        best = std::max(best, std::pow(1.0 + r, 2.0) * kInvTwoPiPow * std::exp(-0.5 * r * r));
    }
    std::vector<double> radii;
    for (int i = 0; i <= 2000; ++i) radii.push_back(8.0 * i / 2000.0);
    const double coarse = norm_mu(unit_gaussian(), 2.0, {0.5, 1.0, 2.0});
    const double fine = norm_mu(unit_gaussian(), 2.0, radii);
    CHECK(fine == doctest::Approx(best).epsilon(1e-3));
    CHECK(fine >= coarse);  // max over a superset
}

TEST_CASE("born_H equals vhat and ignores k") {
    const auto m = unit_gaussian(0.3);
    const Frame f = make_frame({1.0, 0.2, 0.1}, {0.0, 0.0, 1.0});
    const OmegaPoint a{k_from_lambda(Complex(0.3, 0.1), f), f.p};
    const OmegaPoint b{k_from_lambda(Complex(0.0, 2.0), f), f.p};
    CHECK(born_H(m, a) == vhat(m, f.p));
    CHECK(born_H(m, a) == born_H(m, b));
    CHECK(std::abs(born_H(PotentialModel{}, a)) == 0.0);
}

TEST_CASE("singular integral: cross-check against a Cartesian grid oracle") {
    const auto m = unit_gaussian();
    const Vec3 p{1.2, 0.0, 0.4};
    const Frame f = make_frame(p, {0.0, 0.0, 1.0});
    const CVec3 k = k_from_lambda(Complex(0.0, 0.5), f);

    auto g = [&](const Vec3& xi) { return vhat(m, p + xi) * vhat(m, -xi); };

    QuadratureConfig quad;
    const double support = norm(p) + m.tail_radius(1e-12) + 1.0;
    const auto res = singular_circle_integral(k, support, g, quad, true);
    CHECK(res.error_estimate < 1e-6 * std::abs(res.value));

    const Complex brute = cartesian_oracle(k, support, 128, g);
    CHECK(std::abs(res.value - brute) < 5e-2 * std::abs(res.value));
}

TEST_CASE("faddeev_H: Born limit, quadratic scaling, Neumann contraction") {
    const auto m = unit_gaussian(0.05);
    const Vec3 p{1.0, -0.5, 0.3};
    const Frame f = make_frame(p, {0.0, 0.0, 1.0});
    const OmegaPoint pt{k_from_lambda(Complex(0.4, 0.3), f), p};

    QuadratureConfig quad;
    CHECK(faddeev_H(m, pt, 0, quad) == born_H(m, pt));

    // first-order correction scales as the square of the amplitude
    const Complex c1 = faddeev_H(m, pt, 1, quad) - born_H(m, pt);
    const auto m2 = unit_gaussian(0.1);
    const Complex c2 = faddeev_H(m2, pt, 1, quad) - born_H(m2, pt);
    CHECK(std::abs(c2 - 4.0 * c1) < 1e-10 * std::abs(c2));

    // successive Neumann iterates contract geometrically
    const Complex h0 = faddeev_H(m, pt, 0, quad);
    const Complex h1 = faddeev_H(m, pt, 1, quad);
    const Complex h2 = faddeev_H(m, pt, 2, quad);
    const double d1 = std::abs(h1 - h0);
    const double d2 = std::abs(h2 - h1);
    CHECK(d2 < d1);
    CHECK(d2 / d1 < 0.5);

    CHECK(std::abs(faddeev_H(PotentialModel{}, pt, 3, quad)) == 0.0);
}

TEST_CASE("sample_boundary: zero model, Born replication, radial fast path") {
    RegionParams params;
    params.rho = std::exp(2.0);
    params.tau = 0.25;

    GridSpec grid;
    grid.shells = 3;
    grid.polar = 4;
    grid.azimuth = 6;
    grid.lambda.contour_angles = 8;

    QuadratureConfig quad;

    const auto zero = sample_boundary(PotentialModel{}, params, grid, 2, quad);
    for (const auto& v : zero.values) CHECK(std::abs(v) == 0.0);

    // Born data is lambda-independent: the value on every circle equals vhat(p)
    const auto m = unit_gaussian(0.1);
    const auto born = sample_boundary(m, params, grid, 0, quad);
    for (std::size_t is = 0; is < born.pgrid.radii.size(); ++is) {
        const Complex expect = vhat(m, born.pgrid.node(is, 0, 0));
        for (std::size_t jp = 0; jp < born.pgrid.polar.size(); ++jp) {
            for (int ja = 0; ja < born.pgrid.n_azimuth; ++ja) {
                for (int a = 0; a < grid.lambda.contour_angles; ++a) {
                    const std::size_t ip = born.pgrid.index(is, jp, ja);
                    CHECK(std::abs(born.at(ip, Hemisphere::Plus, a) - expect) == 0.0);
                    CHECK(std::abs(born.at(ip, Hemisphere::Minus, a) - expect) == 0.0);
                }
            }
        }
    }
    CHECK(born.angular_invariant());

    // radial fast path agrees with direct evaluation at a non-trivial node
    const auto data = sample_boundary(m, params, grid, 1, quad);
    const std::size_t is = 1, jp = 2, ja = 3;
    const int a = 5;
    const std::size_t ip = data.pgrid.index(is, jp, ja);
    const Vec3 p = data.pgrid.node(is, jp, ja);
    const Frame f = make_frame(p, params.nu, params.cone_half_angle);
    const Complex lam = data.lambda_node(is, Hemisphere::Minus, a);
    const Complex direct = faddeev_H(m, OmegaPoint{k_from_lambda(lam, f), p}, 1, quad);
    CHECK(std::abs(data.at(ip, Hemisphere::Minus, a) - direct) <
          1e-9 * std::abs(direct));

    // hermitian symmetry of Born data for a real non-radial potential
    PotentialModel off{{GaussianTerm{0.1, {0.4, -0.2, 0.3}, 1.0}}};
    const auto born_off = sample_boundary(off, params, grid, 0, quad);
    const std::size_t n_pol = born_off.pgrid.polar.size();
    for (std::size_t isx = 0; isx < born_off.pgrid.radii.size(); ++isx) {
        const std::size_t ipa = born_off.pgrid.index(isx, 0, 0);
        const std::size_t ipb =
            born_off.pgrid.index(isx, n_pol - 1, born_off.pgrid.n_azimuth / 2);
        const Vec3 pa = born_off.pgrid.node(isx, 0, 0);
        const Vec3 pb = born_off.pgrid.node(isx, n_pol - 1, born_off.pgrid.n_azimuth / 2);
        CHECK(norm(pa + pb) < 1e-12 * norm(pa));  // grid is symmetric under p -> -p
        CHECK(std::abs(born_off.at(ipa, Hemisphere::Plus, 0) -
                       std::conj(born_off.at(ipb, Hemisphere::Plus, 0))) < 1e-15);
    }
}

TEST_CASE("high_energy_limit_check: deviation decays roughly like 1/rho") {
    const auto m = unit_gaussian(0.05);
    const Vec3 p{1.0, 0.0, 0.5};
    QuadratureConfig quad;
    std::vector<double> ladder{8.0, 16.0, 32.0, 64.0};
    const auto rows = high_energy_limit_check(m, p, ladder, 1, quad);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].second >= 0.0);
        if (i > 0) CHECK(rows[i].second < rows[i - 1].second);
    }
    const double slope = std::log(rows.back().second / rows.front().second) /
                         std::log(ladder.back() / ladder.front());
    CHECK(slope < -0.5);
    CHECK(slope > -1.5);

    const auto zero = high_energy_limit_check(PotentialModel{}, p, ladder, 1, quad);
    for (const auto& r : zero) CHECK(r.second == 0.0);
}
