#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pcas/energy.hpp"

using namespace pcas;
using core::QuadratureSpec;
using core::ScaledParams;
using energy::SplitScheme;
using Catch::Approx;

namespace {
ScaledParams op(double v) { return ScaledParams::from_omega_p(v); }
}  // namespace

TEST_CASE("plasmonic correction factor, closed form") {
    struct Ref { double omega_p, eta; };
    const Ref refs[] = {{0.2, 0.04242357428},  {0.5, -0.0112334273}, {1.0, -0.5397014238},
                        {2.0, -3.098783336},   {5.0, -15.66324461},  {10.0, -37.35409535},
                        {20.0, -73.22255764}};
    for (const auto& r : refs)
        CHECK(energy::eta_plasmonic(op(r.omega_p)).total == Approx(r.eta).epsilon(2e-7));
}

TEST_CASE("breakdown of the closed form") {
    const auto b = energy::eta_plasmonic(op(1.0));
    CHECK(b.evanescent_sum == Approx(0.046567602146).epsilon(1e-6));
    CHECK(b.propagating_integral == Approx(-1.998678627898).epsilon(1e-6));
    CHECK(b.boundary_term == Approx(1.412409601907).epsilon(1e-9));
    CHECK(b.total == b.evanescent_sum + b.propagating_integral + b.boundary_term);

    const double zp = dispersion::solve_z_plus(op(1.0));
    CHECK(b.boundary_term == Approx(core::aleph() / 3.0 * std::pow(zp, 1.5)).epsilon(1e-12));
}

TEST_CASE("closed form vs direct mode-sum oracle") {
    for (double v : {0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const double a = energy::eta_plasmonic(op(v)).total;
        const double b = energy::eta_plasmonic_oracle(op(v));
        CHECK(std::abs(a - b) <= 1e-4 * std::abs(a));
    }
}

TEST_CASE("oracle tail handling") {
    const double base = energy::eta_plasmonic_oracle(op(1.0), 40.0, 200);
    const double doubled = energy::eta_plasmonic_oracle(op(1.0), 80.0, 200);
    CHECK(std::abs(doubled - base) < 1e-8);

    // integrand decays below e^{-K} well before the default cut
    const double s30 = dispersion::omega_of_k(dispersion::Branch::Plus, 30.0, op(1.0)) +
                       dispersion::omega_of_k(dispersion::Branch::Minus, 30.0, op(1.0)) -
                       2.0 * dispersion::omega_of_k(dispersion::Branch::Single, 30.0, op(1.0));
    CHECK(std::abs(30.0 * s30) < std::exp(-30.0));

    CHECK_THROWS_AS(energy::eta_plasmonic_oracle(op(1.0), 40.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(energy::eta_plasmonic_oracle(op(100.0), 5.0), std::invalid_argument);
}

TEST_CASE("short-distance constants") {
    const auto& a = energy::alpha_constants();
    CHECK(a.alpha == Approx(1.7900160784).epsilon(1e-7));
    CHECK(a.alpha_plus == Approx(-12.2250127539).epsilon(1e-7));
    CHECK(a.alpha_minus == Approx(14.0150288323).epsilon(1e-7));
    CHECK(a.alpha_plus + a.alpha_minus - a.alpha == Approx(0.0).margin(1e-9));

    const double b = core::aleph() / (4.0 * std::sqrt(2.0));
    CHECK(b == Approx(1.026).margin(1e-3));
    CHECK(energy::fitted_short_distance_a() == Approx(0.6397).margin(0.013));

    // the truncated expansion closes onto the full integral as Omega_p -> 0
    double prev = 1e9;
    for (double v : {0.1, 0.05, 0.02}) {
        const double diff = std::abs(energy::eta_short_distance(op(v)) -
                                     energy::eta_plasmonic(op(v)).total) /
                            (v * v * v);
        CHECK(diff < prev);
        prev = diff;
    }
    CHECK(prev < 0.32);
}

TEST_CASE("large-distance constants") {
    const auto& g = energy::gamma_constant();
    CHECK(g.gamma == Approx(29.752789).epsilon(1e-6));
    CHECK(g.parts[0] == Approx(8.889256).epsilon(1e-5));
    CHECK(g.parts[1] == Approx(-7.229281).epsilon(1e-5));
    CHECK(g.parts[2] == Approx(28.092815).epsilon(1e-5));
    CHECK(g.parts[0] + g.parts[1] + g.parts[2] == Approx(g.gamma).epsilon(1e-9));

    CHECK(energy::eta_large_distance(op(7.0)) < 0.0);
    CHECK(energy::eta_large_distance(op(4.0)) ==
          Approx(2.0 * energy::eta_large_distance(op(1.0))).epsilon(1e-12));

    // full integral approaches -Gamma sqrt(Omega_p) from above
    double prev = 0.0;
    for (double v : {30.0, 100.0, 300.0}) {
        const double ratio =
            energy::eta_plasmonic(op(v)).total / energy::eta_large_distance(op(v));
        CHECK(ratio > prev);
        CHECK(ratio < 1.0);
        prev = ratio;
    }
    CHECK(prev == Approx(0.881).margin(0.01));
}

TEST_CASE("alternative splitting schemes") {
    const QuadratureSpec spec{};
    CHECK(energy::eta_split(op(1.0), SplitScheme::Adiabatic, spec) ==
          Approx(energy::eta_plasmonic(op(1.0), spec).total).epsilon(1e-12));

    CHECK(energy::eta_split(op(1.0), SplitScheme::Bordag, spec) ==
          Approx(0.2449596794).epsilon(1e-7));
    CHECK(energy::eta_split(op(1.0), SplitScheme::LenacLightLine, spec) ==
          Approx(0.0465676021).epsilon(1e-7));
    CHECK(energy::eta_split(op(1.0), SplitScheme::LenacEvanescent, spec) ==
          Approx(1.099898306).epsilon(1e-7));
    CHECK(energy::eta_split(op(100.0), SplitScheme::Bordag, spec) ==
          Approx(15.64821551).epsilon(1e-7));
    CHECK(energy::eta_split(op(100.0), SplitScheme::LenacLightLine, spec) ==
          Approx(-15.70874466).epsilon(1e-7));

    // light-line segment identity between the Lenac cuts
    const double kc = 1.0 / std::sqrt(1.5);
    CHECK(energy::eta_split(op(1.0), SplitScheme::LenacEvanescent, spec) -
              energy::eta_split(op(1.0), SplitScheme::LenacLightLine, spec) ==
          Approx(core::aleph() / 3.0 * kc * kc * kc).epsilon(1e-12));

    // the Bordag cut merges with the adiabatic count at short distance
    double prev = 1e9;
    for (double v : {0.2, 0.05}) {
        const double d = (energy::eta_split(op(v), SplitScheme::Bordag, spec) -
                          energy::eta_plasmonic(op(v), spec).total) /
                         (v / (2.0 * core::pi));
        CHECK(d > 0.0);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 0.03);
}

TEST_CASE("large-distance hierarchy of the splittings") {
    const QuadratureSpec spec{};
    const double pl = energy::eta_plasmonic(op(100.0), spec).total;
    const double lb = energy::eta_split(op(100.0), SplitScheme::Bordag, spec);
    const double ll = energy::eta_split(op(100.0), SplitScheme::LenacLightLine, spec);
    CHECK(pl < ll);
    CHECK(ll < 0.0);
    CHECK(0.0 < lb);
    CHECK(std::abs(ll) > std::abs(lb));

    const double s = std::sqrt(400.0);
    const double lb4 = energy::eta_split(op(400.0), SplitScheme::Bordag, spec) / s;
    const double ll4 = energy::eta_split(op(400.0), SplitScheme::LenacLightLine, spec) / s;
    CHECK(lb4 > 1.60);
    CHECK(lb4 < 1.65);
    CHECK(ll4 > -1.69);
    CHECK(ll4 < -1.63);
    CHECK(lb4 == Approx(1.609001).margin(2e-4));
    CHECK(ll4 == Approx(-1.637109).margin(2e-4));

    const auto& c = energy::large_distance_coefficients();
    CHECK(c.bordag == Approx(1.6239856).margin(2e-5));
    CHECK(c.lenac_light_line == Approx(-1.6599746).margin(2e-5));
}

TEST_CASE("total correction factor from the rotated Lifshitz integral") {
    CHECK(energy::eta_total(op(2.0 * core::pi)) == Approx(0.6040795416).epsilon(1e-5));
    CHECK(energy::eta_total(op(1e4)) == Approx(0.9996001).margin(1e-3));

    // same alpha as the plasmonic term at short distance
    const double a_tot = 2.0 * core::pi * energy::eta_total(op(0.01), {1e-9, 1e-9, 4000}) / 0.01;
    CHECK(a_tot == Approx(energy::alpha_constants().alpha).margin(0.005));

    double prev = 0.0;
    for (double v : {0.01, 0.1, 1.0, 10.0, 100.0, 1e4}) {
        const double eta = energy::eta_total(op(v));
        CHECK(eta > prev);
        CHECK(eta < 1.0);
        prev = eta;
    }
}

TEST_CASE("duplicate imaginary-frequency integrator") {
    // independent route: outer integral over the imaginary frequency itself,
    // inner over kappa in [Xi, inf)
    const double v = 2.0 * core::pi;
    const double op2 = v * v;
    const QuadratureSpec spec{1e-12, 1e-10, 4000};
    auto inner = [&](double xi) {
        const double e1 = 1.0 + op2 / (xi * xi);
        return core::integrate_or_throw(
            [&](double k) {
                const double km = std::sqrt(k * k + op2);
                const double rte = (k - km) / (k + km);
                const double rtm = (e1 * k - km) / (e1 * k + km);
                const double damp = std::exp(-2.0 * k);
                return k * (std::log1p(-rte * rte * damp) + std::log1p(-rtm * rtm * damp));
            },
            xi, xi + 45.0, spec);
    };
    const double total = core::integrate_or_throw(inner, 0.0, 42.0, spec);
    const double dup = -(180.0 / std::pow(core::pi, 4)) * total;
    CHECK(energy::eta_total(op(v), spec) == Approx(dup).epsilon(1e-6));
}

TEST_CASE("energy decomposition") {
    const auto d = energy::decompose(op(0.01));
    CHECK(d.eta_photonic == d.eta_total - d.eta_plasmonic);
    // photonic part approaches a constant binding energy at short distance:
    // eta_ph ~ 1.74 Omega_p^3
    CHECK(d.eta_photonic > 1.6e-6);
    CHECK(d.eta_photonic < 1.9e-6);

    for (double r : {0.1, 1.0, 10.0}) {
        const auto dd = energy::decompose(ScaledParams::from_distance_ratio(r));
        CHECK(dd.eta_photonic > 0.0);  // attraction at every distance
        CHECK(dd.eta_photonic == dd.eta_total - dd.eta_plasmonic);
    }

    // zero crossing of the plasmonic term
    auto eta_of_ratio = [](double r) {
        return energy::eta_plasmonic(ScaledParams::from_distance_ratio(r)).total;
    };
    CHECK(eta_of_ratio(0.07) > 0.0);
    CHECK(eta_of_ratio(0.09) < 0.0);
    const double crossing = core::find_root(eta_of_ratio, {0.05, 0.12, 1e-7, 200});
    CHECK(crossing == Approx(0.0756815).margin(2e-4));

    // repulsive maximum of E_pl(L), located by golden section
    const double rmax = core::find_min_golden(
        [](double r) {
            const auto p = ScaledParams::from_distance_ratio(r);
            return energy::eta_plasmonic(p).total / std::pow(p.omega_p_scaled, 3);
        },
        0.09, 0.5, 1e-5);
    CHECK(rmax == Approx(0.1600909).margin(1e-3));
}

TEST_CASE("quadrature failures propagate") {
    CHECK_THROWS_AS(energy::eta_plasmonic(op(1.0), QuadratureSpec{1e-30, 1e-30, 2}),
                    std::runtime_error);
    CHECK_THROWS_AS(energy::eta_total(op(1.0), QuadratureSpec{1e-30, 1e-30, 2}),
                    std::runtime_error);
}
