// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Criteria are pinned to the published values with their stated tolerances.

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>

#include "pcas/energy.hpp"
#include "pcas/optics.hpp"
#include "pcas/report.hpp"

using namespace pcas;
using core::ScaledParams;
using dispersion::Branch;

namespace {

int failures = 0;

void line(const std::string& id, bool ok, const std::string& detail) {
    std::printf("[%s] %-36s %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    if (!ok) ++failures;
}

void check_value(const std::string& id, double value, double target, double tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "value %.8g, target %.8g +- %.2g", value, target, tol);
    line(id, std::isfinite(value) && std::abs(value - target) <= tol, buf);
}

ScaledParams op(double v) { return ScaledParams::from_omega_p(v); }

}  // namespace

int main() {
    // 1. the perfect-mirror constant
    check_value("01 aleph", core::aleph(), 5.8052762, 1e-6);

    // 2. short-distance constant alpha, from the defining integral and from
    //    the short-distance limit of the total correction factor
    const auto& al = energy::alpha_constants();
    check_value("02a alpha integral", al.alpha, 1.790, 0.002);
    const double alpha_tot =
        2.0 * core::pi * energy::eta_total(op(0.01), {1e-9, 1e-9, 4000}) / 0.01;
    check_value("02b alpha from eta_total", alpha_tot, al.alpha, 0.005);

    // 3. per-branch split of alpha
    check_value("03a alpha_plus", al.alpha_plus, -12.225, 0.01);
    check_value("03b alpha_minus", al.alpha_minus, 14.015, 0.01);
    check_value("03c additivity", al.alpha_plus + al.alpha_minus - al.alpha, 0.0, 1e-3);

    // 4. next-order coefficients of the short-distance expansion
    check_value("04a b = aleph/(4 sqrt 2)", core::aleph() / (4.0 * std::sqrt(2.0)), 1.026,
                0.001);
    check_value("04b fitted a", energy::fitted_short_distance_a(), 0.63, 0.02);

    // 5. large-distance constant and its parts
    const auto& g = energy::gamma_constant();
    check_value("05a Gamma", g.gamma, 29.75, 0.05);
    check_value("05b + evanescent part", g.parts[0], 8.90, 0.05);
    check_value("05c - evanescent part", g.parts[1], -7.23, 0.05);
    check_value("05d + propagating part", g.parts[2], 28.09, 0.05);

    // 6. sign change of the plasmonic term
    const double crossing = core::find_root(
        [](double r) {
            return energy::eta_plasmonic(ScaledParams::from_distance_ratio(r)).total;
        },
        {0.05, 0.12, 1e-7, 200});
    check_value("06 eta_pl zero crossing (L/lambda)", crossing, 0.08, 0.01);

    // 7. maximum of the plasmonic energy
    const double rmax = core::find_min_golden(
        [](double r) {
            const auto p = ScaledParams::from_distance_ratio(r);
            return energy::eta_plasmonic(p).total / std::pow(p.omega_p_scaled, 3);
        },
        0.09, 0.5, 1e-5);
    check_value("07 E_pl maximum (L/lambda)", rmax, 0.16, 0.01);

    // 8. alternative splittings: large-distance coefficients of eta_B and
    //    eta_L.  The published four-digit values are the Omega_p -> infinity
    //    limits; the exact integrals carry O(10/Omega_p) corrections (still
    //    ~0.02 at Omega_p = 400), so the limits are extracted at a reference
    //    Omega_p = 1e10 where the residual sits below 1e-8.
    const auto& coef = energy::large_distance_coefficients();
    check_value("08a eta_B/sqrt(Omega_p) limit", coef.bordag, 1.6240, 0.003);
    check_value("08b eta_L/sqrt(Omega_p) limit", coef.lenac_light_line, -1.6600, 0.003);

    // 9. closed form vs direct mode-sum oracle
    for (double v : {0.2, 1.0, 5.0, 20.0}) {
        const double a = energy::eta_plasmonic(op(v)).total;
        const double b = energy::eta_plasmonic_oracle(op(v));
        char id[48];
        std::snprintf(id, sizeof id, "09 oracle equivalence Op=%g", v);
        check_value(id, b / a, 1.0, 1e-4);
    }

    // 10. limits of the light-line parameter z_+
    check_value("10a z_plus small limit", dispersion::solve_z_plus(op(0.01)) / 1e-4, 1.0,
                1e-3);
    check_value("10b z_plus large limit",
                dispersion::solve_z_plus(op(1e4)) / (core::pi * core::pi), 1.0, 1e-3);

    // 11. factorization of the TM dispersion function through g_{+,-,0}
    {
        const auto p = op(1.0);
        std::mt19937 rng(424242);
        std::uniform_real_distribution<double> uk(0.05, 8.0), uf(0.02, 0.98);
        int bad = 0, n = 0;
        double worst = 0.0;
        while (n < 1000) {
            const double K = uk(rng);
            const double w = uf(rng) * K;
            const double z = K * K - w * w;
            const double w2 = w * w;
            const double d0 = dispersion::g_eval(Branch::Single, z, p) - w2;
            const double dp = dispersion::g_eval(Branch::Plus, z, p) - w2;
            const double dm = dispersion::g_eval(Branch::Minus, z, p) - w2;
            if (std::abs(d0) < 1e-3 || std::abs(dp) < 1e-3 || std::abs(dm) < 1e-3) continue;
            const optics::FieldPoint pt{std::complex<double>(w, 0.0), K};
            const double lhs =
                optics::dispersion_D(pt, optics::Polarization::TM, p).value.real();
            const double rhs =
                optics::dispersion_D(pt, optics::Polarization::TE, p).value.real() *
                (dp / d0) * (dm / d0);
            const double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
            worst = std::max(worst, rel);
            if (rel > 1e-10) ++bad;
            ++n;
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "worst relative deviation %.3g over %d points", worst, n);
        line("11 TM factorization identity", bad == 0, buf);
    }

    // 12. exponential tail law of the branch splitting
    {
        const double d = std::pow(dispersion::omega_of_k(Branch::Plus, 25.0, op(1.0)), 2) -
                         std::pow(dispersion::omega_of_k(Branch::Single, 25.0, op(1.0)), 2);
        check_value("12 tail law at K=25", d * std::exp(25.0) / 0.5, 1.0, 0.05);
    }

    // 13. density-of-states structure at L = 1.75 lambda_p
    {
        const auto p = op(2.0 * core::pi * 1.75);
        const double wsp = p.omega_p_scaled / std::sqrt(2.0);
        const double gap_w = 0.5 * std::sqrt(dispersion::solve_z_plus(p));
        check_value("13a gap region: delta_rho_+ = -rho_0",
                    dispersion::dos_delta(Branch::Plus, gap_w, p) /
                        -dispersion::dos_rho_single(gap_w, p),
                    1.0, 1e-12);
        const double w_small = 0.01 * p.omega_p_scaled;
        check_value("13b delta_rho_- linear in omega",
                    dispersion::dos_delta(Branch::Minus, w_small, p) /
                        (2.0 * w_small / p.omega_p_scaled),
                    1.0, 0.05);
        const double dplus = dispersion::dos_delta(Branch::Plus, 0.99 * wsp, p);
        const double dminus = dispersion::dos_delta(Branch::Minus, 0.99 * wsp, p);
        char buf[96];
        std::snprintf(buf, sizeof buf, "delta_rho_+ = %.3g, delta_rho_- = %.3g", dplus, dminus);
        line("13c finite at 0.99 omega_sp",
             std::isfinite(dplus) && std::isfinite(dminus) && std::abs(dplus) < 1e-6 &&
                 std::abs(dminus) < 1e-6,
             buf);
    }

    // 14. perfect-mirror limit of the total correction factor
    check_value("14 eta_total at Omega_p = 1e4", energy::eta_total(op(1e4)), 1.0, 0.01);

    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion checks FAILED\n", failures);
    return 1;
}
