#pragma once

// Plasmonic correction factor eta_pl to the Casimir energy (closed-form
// z-integrals and a direct mode-sum oracle), its short- and large-distance
// asymptotics, the alternative branch-splitting schemes, and the total
// Casimir correction factor from the imaginary-frequency Lifshitz integral.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pcas/core.hpp"
#include "pcas/dispersion.hpp"

namespace pcas::energy {

using core::QuadratureSpec;
using core::ScaledParams;
using dispersion::Branch;

/// eta_pl split into its three closed-form pieces; total is their exact sum.
/// evanescent_sum = -(aleph/2) Int_0^inf sum_a c_a sqrt(g_a) dz,
/// propagating_integral = -(aleph/2) Int_{-z_+}^0 sqrt(g_+) dz,
/// boundary_term = +(aleph/3) z_+^{3/2}.
struct EtaBreakdown {
    double evanescent_sum = 0.0;
    double propagating_integral = 0.0;
    double boundary_term = 0.0;
    double total = 0.0;
};

enum class SplitScheme { Adiabatic, Bordag, LenacLightLine, LenacEvanescent };

struct EnergyDecomposition {
    double eta_plasmonic = 0.0;
    double eta_total = 0.0;
    double eta_photonic = 0.0;
    ScaledParams params;
};

struct AlphaConstants {
    double alpha = 0.0;        // ~  1.790
    double alpha_plus = 0.0;   // ~ -12.225
    double alpha_minus = 0.0;  // ~  14.015
};

struct GammaConstant {
    double gamma = 0.0;            // ~ 29.75
    std::array<double, 3> parts{}; // + evanescent (~8.90), - evanescent (~-7.23), + propagating (~28.09)
};

/// Limits of eta/sqrt(Omega_p) for the alternative splittings.
struct LargeDistanceCoefficients {
    double bordag = 0.0;            // ~ +1.6240
    double lenac_light_line = 0.0;  // ~ -1.6600
};

namespace detail {

// Evanescent integral Int_0^inf sum_a c_a sqrt(g_a(z)) dz after u = sqrt(z).
// The integrand decays like e^{-2u}; past the cut the remainder is added from
// the analytic tail law sum ~ -Op e^{-2 sqrt z}/(4 sqrt 2).
inline double evanescent_integral(const ScaledParams& params, const QuadratureSpec& spec) {
    const double op = params.omega_p_scaled;
    auto f = [&](double u) { return 2.0 * u * dispersion::branch_sum_sqrt_g(u * u, params); };
    const double cutoff = std::max(spec.abs_tol, 1e-14) / 50.0;
    double umax = 12.0;
    while (umax < 400.0 && std::abs(f(umax)) > cutoff) umax += 2.0;
    const double value = core::integrate_or_throw(f, 0.0, umax, spec);
    const double tail = -(op / (2.0 * std::sqrt(2.0))) * std::exp(-2.0 * umax) *
                        (0.5 * umax + 0.25);
    return value + tail;
}

// Int_{-z_+}^0 sqrt(g_+(z)) dz with z = -y^2, which keeps the integrand real
// and analytic up to the K = 0 endpoint.
inline double propagating_integral(const ScaledParams& params, double z_plus,
                                   const QuadratureSpec& spec) {
    auto f = [&](double y) {
        return 2.0 * y * std::sqrt(dispersion::g_eval(Branch::Plus, -y * y, params));
    };
    return core::integrate_or_throw(f, 0.0, std::sqrt(z_plus), spec);
}

inline double lenac_cut_wavevector(const ScaledParams& params) {
    const double op = params.omega_p_scaled;
    return op / std::sqrt(1.0 + 0.5 * op);
}

// Omega_0^3(K) - K^3 without the near cancellation at large Omega_p:
// Omega_0^2 - K^2 = -2 K^4 / (Op^2 + sqrt(Op^4 + 4 K^4)).
inline double omega0_cubed_minus_k3(double k, const ScaledParams& params) {
    const double op2 = params.omega_p_scaled * params.omega_p_scaled;
    const double k2 = k * k;
    const double d2 = -2.0 * k2 * k2 / (op2 + std::sqrt(op2 * op2 + 4.0 * k2 * k2));
    const double o0 = std::sqrt(k2 + d2);
    return d2 / (o0 + k) * (o0 * o0 + o0 * k + k2);
}

inline double eta_lenac_light_line(const ScaledParams& params, const QuadratureSpec& spec) {
    return -(core::aleph() / 2.0) * evanescent_integral(params, spec);
}

inline double eta_bordag(const ScaledParams& params, const QuadratureSpec& spec) {
    const double kc = lenac_cut_wavevector(params);
    const double kc2 = kc * kc;
    // z_c where the isolated branch reaches the cut wavevector: z + g_0(z) = K_c^2
    const double zc = core::find_root(
        [&](double z) { return z + dispersion::g_eval(Branch::Single, z, params) - kc2; },
        {0.0, kc2, 1e-13 * std::max(1.0, kc2), 200});
    auto f = [&](double x) {
        return 2.0 * x * std::sqrt(dispersion::g_eval(Branch::Single, x * x, params));
    };
    const double seg = core::integrate_or_throw(f, 0.0, std::sqrt(zc), spec);
    const double correction = seg + (2.0 / 3.0) * omega0_cubed_minus_k3(kc, params);
    return eta_lenac_light_line(params, spec) - (core::aleph() / 2.0) * correction;
}

inline QuadratureSpec tight_spec() { return {1e-12, 1e-11, 4000}; }

}  // namespace detail

/// Plasmonic correction factor eta_pl = E_pl / E_Cas from the closed-form
/// z-parametrized integrals.
inline EtaBreakdown eta_plasmonic(const ScaledParams& params, const QuadratureSpec& spec = {}) {
    const double half_aleph = core::aleph() / 2.0;
    const double zp = dispersion::solve_z_plus(params);
    EtaBreakdown out;
    out.evanescent_sum = -half_aleph * detail::evanescent_integral(params, spec);
    out.propagating_integral = -half_aleph * detail::propagating_integral(params, zp, spec);
    out.boundary_term = (core::aleph() / 3.0) * std::pow(zp, 1.5);
    out.total = out.evanescent_sum + out.propagating_integral + out.boundary_term;
    return out;
}

/// Independent route to eta_pl: direct K-integration of
/// K [Omega_+ + Omega_- - 2 Omega_0] with root-finding on each branch, on a
/// fixed composite Gauss-Kronrod grid, plus the analytic e^{-2K} tail.
inline double eta_plasmonic_oracle(const ScaledParams& params, double k_max = 0.0,
                                   int grid = 160) {
    const double op = params.omega_p_scaled;
    if (k_max <= 0.0) k_max = std::max(40.0, 3.0 * op);
    if (grid < 2) throw std::invalid_argument("eta_plasmonic_oracle: grid must be >= 2");
    if (!(k_max > std::max(1.0, op)))
        throw std::invalid_argument("eta_plasmonic_oracle: k_max must exceed max(1, Omega_p)");

    auto f = [&](double k) {
        return k * (dispersion::omega_of_k(Branch::Plus, k, params) +
                    dispersion::omega_of_k(Branch::Minus, k, params) -
                    2.0 * dispersion::omega_of_k(Branch::Single, k, params));
    };
    // fixed panels, split at the light-line crossing of the upper branch
    const double kc = detail::lenac_cut_wavevector(params);
    double sum = 0.0;
    const int n1 = std::max(8, grid / 8);
    for (int i = 0; i < n1; ++i) {
        const double a = kc * i / n1, b = kc * (i + 1) / n1;
        sum += core::detail::gk15(f, a, b).value;
    }
    for (int i = 0; i < grid; ++i) {
        const double a = kc + (k_max - kc) * i / grid;
        const double b = kc + (k_max - kc) * (i + 1) / grid;
        sum += core::detail::gk15(f, a, b).value;
    }
    const double tail = -(op / (4.0 * std::sqrt(2.0))) * std::exp(-2.0 * k_max) *
                        (0.5 * k_max + 0.25);
    return -core::aleph() * (sum + tail);
}

/// Short-distance constant alpha ~ 1.790 and its per-branch split.
inline const AlphaConstants& alpha_constants() {
    static const AlphaConstants cached = [] {
        const auto spec = detail::tight_spec();
        const double inf = std::numeric_limits<double>::infinity();
        auto plus = [](double u) { return 2.0 * u * (std::sqrt(1.0 + std::exp(-u)) - 1.0); };
        auto minus = [](double u) { return 2.0 * u * (std::sqrt(1.0 - std::exp(-u)) - 1.0); };
        auto full = [&](double u) { return plus(u) + minus(u); };
        const double c = -core::pi * core::aleph() / std::sqrt(2.0);
        AlphaConstants a;
        a.alpha = c * core::integrate_or_throw(full, 0.0, inf, spec);
        a.alpha_plus = c * core::integrate_or_throw(plus, 0.0, inf, spec);
        a.alpha_minus = c * core::integrate_or_throw(minus, 0.0, inf, spec);
        return a;
    }();
    return cached;
}

namespace detail {

struct ShortDistanceFit {
    double a = 0.0;       // the constant of the cubic correction
    double c_half = 0.0;  // fitted Omega_p^{1/2} nuisance coefficient
    double d_lin = 0.0;   // fitted Omega_p^1 nuisance coefficient
};

// Fit (eta_pl - alpha Op/2pi)/Op^3 - b ln Op = a + c sqrt(Op) + d Op over
// Op in [0.02, 0.2].  The two nuisance terms absorb the next corrections of
// the expansion, which are not negligible on this window; without them the
// fitted a drifts far from its Op -> 0 limit.
inline const ShortDistanceFit& short_distance_fit() {
    static const ShortDistanceFit cached = [] {
        const auto spec = tight_spec();
        const double alpha = alpha_constants().alpha;
        const double b = core::aleph() / (4.0 * std::sqrt(2.0));
        constexpr int n = 9;
        double m[3][3] = {};
        double rhs[3] = {};
        for (int i = 0; i < n; ++i) {
            const double op = 0.02 * std::pow(10.0, static_cast<double>(i) / (n - 1));
            const auto params = ScaledParams::from_omega_p(op);
            const double eta = eta_plasmonic(params, spec).total;
            const double y = (eta - alpha * op / (2.0 * core::pi)) / (op * op * op) -
                             b * std::log(op);
            const double row[3] = {1.0, std::sqrt(op), op};
            for (int r = 0; r < 3; ++r) {
                for (int cidx = 0; cidx < 3; ++cidx) m[r][cidx] += row[r] * row[cidx];
                rhs[r] += row[r] * y;
            }
        }
        // 3x3 Gaussian elimination with partial pivoting
        int order[3] = {0, 1, 2};
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int r = col + 1; r < 3; ++r)
                if (std::abs(m[order[r]][col]) > std::abs(m[order[piv]][col])) piv = r;
            std::swap(order[col], order[piv]);
            for (int r = col + 1; r < 3; ++r) {
                const double fct = m[order[r]][col] / m[order[col]][col];
                for (int cidx = col; cidx < 3; ++cidx) m[order[r]][cidx] -= fct * m[order[col]][cidx];
                rhs[order[r]] -= fct * rhs[order[col]];
            }
        }
        double sol[3];
        for (int col = 2; col >= 0; --col) {
            double s = rhs[order[col]];
            for (int cidx = col + 1; cidx < 3; ++cidx) s -= m[order[col]][cidx] * sol[cidx];
            sol[col] = s / m[order[col]][col];
        }
        return ShortDistanceFit{sol[0], sol[1], sol[2]};
    }();
    return cached;
}

}  // namespace detail

/// The fitted constant a ~ 0.63 of the cubic short-distance correction.
inline double fitted_short_distance_a() { return detail::short_distance_fit().a; }

/// Short-distance expansion alpha Op/(2 pi) + (a + b ln Op) Op^3 with
/// b = aleph/(4 sqrt 2) and a from the numerical fit.
inline double eta_short_distance(const ScaledParams& params) {
    const double op = params.omega_p_scaled;
    const double b = core::aleph() / (4.0 * std::sqrt(2.0));
    return alpha_constants().alpha * op / (2.0 * core::pi) +
           (fitted_short_distance_a() + b * std::log(op)) * op * op * op;
}

/// Large-distance constant Gamma ~ 29.75 from the two scaled integrals, with
/// the (+ evanescent, - evanescent, + propagating) parts.
inline const GammaConstant& gamma_constant() {
    static const GammaConstant cached = [] {
        const auto spec = detail::tight_spec();
        const double inf = std::numeric_limits<double>::infinity();
        auto coth_part = [](double y) {
            if (y < 1e-8) return std::sqrt(2.0) * y - y * std::sqrt(y);
            return std::pow(y, 1.5) * (std::sqrt(1.0 / std::tanh(0.5 * y)) - 1.0);
        };
        auto tanh_part = [](double y) {
            if (y < 1e-8) return y * y / std::sqrt(2.0) - y * std::sqrt(y);
            return std::pow(y, 1.5) * (std::sqrt(std::tanh(0.5 * y)) - 1.0);
        };
        auto cot_part = [](double y) {
            if (y < 1e-8) return std::sqrt(2.0) * y;
            return std::pow(y, 1.5) * std::sqrt(std::cos(0.5 * y) / std::sin(0.5 * y));
        };
        GammaConstant g;
        const double al = core::aleph();
        g.parts[0] = al * core::integrate_or_throw(coth_part, 0.0, inf, spec);
        g.parts[1] = al * core::integrate_or_throw(tanh_part, 0.0, inf, spec);
        g.parts[2] = al * core::integrate_or_throw(cot_part, 0.0, core::pi, spec);
        g.gamma = al * core::integrate_or_throw(
                           [&](double y) { return coth_part(y) + tanh_part(y); }, 0.0, inf, spec) +
                  g.parts[2];
        return g;
    }();
    return cached;
}

/// Leading large-distance form eta_pl ~ -Gamma sqrt(Omega_p).
inline double eta_large_distance(const ScaledParams& params) {
    return -gamma_constant().gamma * std::sqrt(params.omega_p_scaled);
}

/// eta under the selectable renormalization of the upper branch.
inline double eta_split(const ScaledParams& params, SplitScheme scheme,
                        const QuadratureSpec& spec = {}) {
    switch (scheme) {
        case SplitScheme::Adiabatic:
            return eta_plasmonic(params, spec).total;
        case SplitScheme::Bordag:
            return detail::eta_bordag(params, spec);
        case SplitScheme::LenacLightLine:
            return detail::eta_lenac_light_line(params, spec);
        case SplitScheme::LenacEvanescent:
        default: {
            const double kc = detail::lenac_cut_wavevector(params);
            return detail::eta_lenac_light_line(params, spec) +
                   (core::aleph() / 3.0) * kc * kc * kc;
        }
    }
}

/// eta_B/sqrt(Omega_p) and eta_L/sqrt(Omega_p) in the large-distance limit,
/// extracted at a reference Omega_p large enough that the O(1/Omega_p)
/// corrections are below 1e-8.
inline const LargeDistanceCoefficients& large_distance_coefficients() {
    static const LargeDistanceCoefficients cached = [] {
        const auto params = ScaledParams::from_omega_p(1e10);
        const auto spec = QuadratureSpec{1e-6, 1e-11, 4000};
        const double scale = 1.0 / std::sqrt(params.omega_p_scaled);
        LargeDistanceCoefficients c;
        c.lenac_light_line = detail::eta_lenac_light_line(params, spec) * scale;
        c.bordag = detail::eta_bordag(params, spec) * scale;
        return c;
    }();
    return cached;
}

/// Total Casimir correction factor eta = E/E_Cas for the plasma model, from
/// the imaginary-frequency Lifshitz integral in polar coordinates
/// (kappa L = rho, Xi = rho u).  The TE integrand is independent of u, so its
/// angular integral is exact; eta is in (0, 1) and -> 1 for perfect mirrors.
inline double eta_total(const ScaledParams& params, const QuadratureSpec& spec = {}) {
    const double op = params.omega_p_scaled;
    const double op2 = op * op;

    double rmax = 16.0;
    for (int i = 0; i < 3; ++i)
        rmax = 0.5 * std::log(40.0 * (0.5 * rmax * rmax + 0.5 * rmax + 0.25) /
                              std::max(spec.abs_tol, 1e-14));
    rmax = std::max(rmax, 16.0);

    QuadratureSpec outer = spec;
    outer.abs_tol = std::max(spec.abs_tol, 1e-14) / 4.0;
    const QuadratureSpec inner{1e-13, 1e-9, 800};

    auto te_term = [&](double rho) {
        const double km = std::sqrt(rho * rho + op2);
        const double r = (rho - km) / (rho + km);
        return rho * rho * std::log1p(-r * r * std::exp(-2.0 * rho));
    };
    auto tm_inner = [&](double rho) {
        const double km = std::sqrt(rho * rho + op2);
        const double damp = std::exp(-2.0 * rho);
        auto f = [&](double u) {
            const double xi = rho * u;
            const double ek = (1.0 + op2 / (xi * xi)) * rho;
            const double r = (ek - km) / (ek + km);
            return std::log1p(-r * r * damp);
        };
        return core::integrate_or_throw(f, 0.0, 1.0, inner);
    };
    const double ite = core::integrate_or_throw(te_term, 0.0, rmax, outer);
    const double itm = core::integrate_or_throw(
        [&](double rho) { return rho * rho * tm_inner(rho); }, 0.0, rmax, outer);
    return -(180.0 / std::pow(core::pi, 4)) * (ite + itm);
}

/// eta_pl, eta_total and the photonic remainder eta_ph = eta_total - eta_pl.
inline EnergyDecomposition decompose(const ScaledParams& params,
                                     const QuadratureSpec& spec = {}) {
    EnergyDecomposition d;
    d.params = params;
    d.eta_plasmonic = eta_plasmonic(params, spec).total;
    d.eta_total = eta_total(params, spec);
    d.eta_photonic = d.eta_total - d.eta_plasmonic;
    return d;
}

}  // namespace pcas::energy
