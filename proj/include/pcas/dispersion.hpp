#pragma once

// Parametrization of the coupled surface-plasmon branches.  With
// z = (kappa L)^2 the two-mirror TM modes and the isolated-interface mode
// take the form K_a = sqrt(z + g_a(z)), Omega_a = sqrt(g_a(z)) with
//
//   g_+(z) = Op^2 sqrt(z) / (sqrt(z) + sqrt(z+Op^2) tanh(sqrt(z)/2))
//   g_-(z) = Op^2 sqrt(z) / (sqrt(z) + sqrt(z+Op^2) coth(sqrt(z)/2))
//   g_0(z) = Op^2 sqrt(z) / (sqrt(z) + sqrt(z+Op^2))
//
// z runs negative over the in-cavity propagating segment of the upper
// branch, down to -z_+ where it reaches K = 0; there the tanh turns into a
// tangent and all arithmetic stays real.

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "pcas/core.hpp"

namespace pcas::dispersion {

using core::ScaledParams;

enum class Branch { Plus, Minus, Single };

struct DispersionSample {
    double z = 0.0;
    double k_scaled = 0.0;
    double omega_scaled = 0.0;
    Branch branch = Branch::Single;
};

struct DosSample {
    double omega_scaled = 0.0;
    double delta_rho = 0.0;
    Branch branch = Branch::Plus;
};

namespace detail {

// Negative-control hook for the validate command: scales the upper branch
// when PLASMON_CASIMIR_TEST_CORRUPT_GPLUS is set.  Inert otherwise.
inline double gplus_corrupt_factor() {
    static const double factor = [] {
        const char* v = std::getenv("PLASMON_CASIMIR_TEST_CORRUPT_GPLUS");
        return (v && v[0] != '\0' && !(v[0] == '0' && v[1] == '\0')) ? 1.05 : 1.0;
    }();
    return factor;
}

// tanh(sqrt(z)/2)/sqrt(z), continued to tan(sqrt(-z)/2)/sqrt(-z) for z < 0.
// Even in sqrt(z), so a short series bridges the removable point at z = 0.
inline double tanh_ratio(double z) {
    if (std::abs(z) < 1e-2)
        return 0.5 + z * (-1.0 / 24.0 + z * (1.0 / 240.0 + z * (-17.0 / 40320.0 + z * 31.0 / 725760.0)));
    if (z > 0.0) {
        const double s = std::sqrt(z);
        return std::tanh(0.5 * s) / s;
    }
    const double y = std::sqrt(-z);
    return std::tan(0.5 * y) / y;
}

// d/dz of tanh_ratio.
inline double tanh_ratio_deriv(double z) {
    if (std::abs(z) < 1e-2)
        return -1.0 / 24.0 + z * (1.0 / 120.0 + z * (-17.0 / 13440.0 + z * 31.0 / 181440.0));
    if (z > 0.0) {
        const double u = std::sqrt(z);
        const double ch = std::cosh(0.5 * u);
        return (0.5 * u / (ch * ch) - std::tanh(0.5 * u)) / (2.0 * u * u * u);
    }
    const double y = std::sqrt(-z);
    const double co = std::cos(0.5 * y);
    return -(0.5 * y / (co * co) - std::tan(0.5 * y)) / (2.0 * y * y * y);
}

// coth(sqrt(z)/2)/sqrt(z) and its derivative; the 2/z pole carries the
// Omega_-(K) ~ K acoustic start.
inline double coth_ratio(double z) {
    if (z < 1e-2)
        return 2.0 / z + 1.0 / 6.0 + z * (-1.0 / 360.0 + z / 15120.0);
    const double s = std::sqrt(z);
    return 1.0 / (std::tanh(0.5 * s) * s);
}

inline double coth_ratio_deriv(double z) {
    if (z < 1e-2)
        return -2.0 / (z * z) - 1.0 / 360.0 + z / 7560.0;
    const double u = std::sqrt(z);
    const double sh = std::sinh(0.5 * u);
    return (-0.5 * u / (sh * sh) - 1.0 / std::tanh(0.5 * u)) / (2.0 * u * u * u);
}

inline void require_domain(Branch branch, double z, const ScaledParams& params);

}  // namespace detail

/// z_+ > 0 solving sqrt(z) = Omega_p cos(sqrt(z)/2); the upper branch reaches
/// K = 0 at z = -z_+.  Always bracketed by [0, min(Omega_p^2, pi^2)].
inline double solve_z_plus(const ScaledParams& params) {
    const double op = params.omega_p_scaled;
    const double hi = std::min(op, core::pi);
    const double s = core::find_root(
        [op](double x) { return x - op * std::cos(0.5 * x); },
        {0.0, hi, 1e-14, 200});
    return s * s;
}

/// g_a(z) per the parametrized closed forms; Plus admits z in [-z_+, inf),
/// Minus/Single require z >= 0.
inline double g_eval(Branch branch, double z, const ScaledParams& params) {
    detail::require_domain(branch, z, params);
    const double op = params.omega_p_scaled;
    const double op2 = op * op;
    switch (branch) {
        case Branch::Plus:
            return detail::gplus_corrupt_factor() * op2 /
                   (1.0 + std::sqrt(z + op2) * detail::tanh_ratio(z));
        case Branch::Minus:
            if (z == 0.0) return 0.0;
            return op2 / (1.0 + std::sqrt(z + op2) * detail::coth_ratio(z));
        case Branch::Single:
        default: {
            if (z == 0.0) return 0.0;
            const double s = std::sqrt(z);
            return op2 * s / (s + std::sqrt(z + op2));
        }
    }
}

/// Analytic dg_a/dz, consistent with central differences of g_eval.
/// g_0'(z) diverges as z^{-1/2} at z = 0 (returned as +inf there).
inline double g_deriv(Branch branch, double z, const ScaledParams& params) {
    detail::require_domain(branch, z, params);
    const double op = params.omega_p_scaled;
    const double op2 = op * op;
    const double w = std::sqrt(z + op2);
    switch (branch) {
        case Branch::Plus: {
            const double t = detail::tanh_ratio(z);
            const double dt = detail::tanh_ratio_deriv(z);
            const double den = 1.0 + w * t;
            return -detail::gplus_corrupt_factor() * op2 * (t / (2.0 * w) + w * dt) / (den * den);
        }
        case Branch::Minus: {
            if (z == 0.0) return 0.5 * op;
            const double c = detail::coth_ratio(z);
            const double dc = detail::coth_ratio_deriv(z);
            const double den = 1.0 + w * c;
            return -op2 * (c / (2.0 * w) + w * dc) / (den * den);
        }
        case Branch::Single:
        default: {
            // (2z+Op^2)/(2 sqrt(z(z+Op^2))) - 1, rewritten free of cancellation
            const double s = std::sqrt(z);
            const double sum = w + s;
            return op2 * op2 / (2.0 * w * s * sum * sum);
        }
    }
}

namespace detail {

inline void require_domain(Branch branch, double z, const ScaledParams& params) {
    if (!std::isfinite(z)) throw std::domain_error("g: z must be finite");
    if (branch == Branch::Plus) {
        if (z < 0.0) {
            const double zp = solve_z_plus(params);
            if (z < -zp * (1.0 + 1e-12) - 1e-300)
                throw std::domain_error("g_plus: z below -z_+");
        }
        return;
    }
    if (z < 0.0) throw std::domain_error("g: negative z only on the Plus branch");
}

}  // namespace detail

/// One point of a parametrized branch: K = sqrt(z + g), Omega = sqrt(g).
inline DispersionSample sample(Branch branch, double z, const ScaledParams& params) {
    const double g = g_eval(branch, z, params);
    const double k2 = z + g;
    if (k2 < -1e-12 * (1.0 + std::abs(z)))
        throw std::domain_error("sample: z + g(z) negative");
    return {z, std::sqrt(std::max(0.0, k2)), std::sqrt(g), branch};
}

/// Branch frequency at a given wavevector.  The Single branch carries the
/// explicit radical; Plus/Minus invert the monotone map K^2 = z + g_a(z).
inline double omega_of_k(Branch branch, double k_scaled, const ScaledParams& params) {
    if (k_scaled < 0.0) throw std::domain_error("omega_of_k: K must be nonnegative");
    const double op = params.omega_p_scaled;
    if (branch == Branch::Single) {
        const double k2 = k_scaled * k_scaled;
        const double op4 = op * op * op * op;
        const double hyp = std::sqrt(op4 + 4.0 * k2 * k2);
        return std::sqrt(2.0 * k2 * op * op / (op * op + 2.0 * k2 + hyp));
    }
    if (k_scaled == 0.0)
        return branch == Branch::Plus ? std::sqrt(solve_z_plus(params)) : 0.0;
    const double k2 = k_scaled * k_scaled;
    double lo = 0.0;
    if (branch == Branch::Plus) {
        const double zp = solve_z_plus(params);
        // below the residual of the z_+ root the endpoint value is the answer
        if (k2 <= 1e-10 * (1.0 + zp)) return std::sqrt(g_eval(Branch::Plus, -zp, params));
        lo = -zp;
    }
    const double z = core::find_root(
        [&](double zz) { return zz + g_eval(branch, zz, params) - k2; },
        {lo, k2, 1e-13 * std::max(1.0, k2), 200});
    return std::sqrt(g_eval(branch, z, params));
}

/// Stable evaluation of sqrt(g_+) + sqrt(g_-) - 2 sqrt(g_0), the evanescent
/// summand of the plasmonic energy integrals.  Uses the exact rewriting
/// g_pm = g_0 (1 +- t)/(1 +- rho), t = e^{-sqrt z}, rho = t (S-W)/(S+W),
/// which survives the e^{-2 sqrt z} cancellation at large z.
inline double branch_sum_sqrt_g(double z, const ScaledParams& params) {
    if (!(z > 0.0)) throw std::domain_error("branch_sum_sqrt_g: requires z > 0");
    const double op = params.omega_p_scaled;
    const double op2 = op * op;
    const double s = std::sqrt(z);
    const double w = std::sqrt(z + op2);
    const double t = std::exp(-s);
    const double rho = t * (s - w) / (s + w);
    const double am1 = (t - rho) / (1.0 + rho);  // (1+t)/(1+rho) - 1
    const double bm1 = (rho - t) / (1.0 - rho);  // (1-t)/(1-rho) - 1
    const double cf = detail::gplus_corrupt_factor();
    const double cam1 = cf == 1.0 ? am1 : cf * am1 + (cf - 1.0);
    const double bracket_plus = cam1 / (std::sqrt(cf * (1.0 + am1)) + 1.0);
    const double bracket_minus = bm1 / (std::sqrt(1.0 + bm1) + 1.0);
    const double g0 = op2 * s / (s + w);
    return std::sqrt(g0) * (bracket_plus + bracket_minus);
}

// ---------------------------------------------------------------------------
// density of states (per unit area, scaled: rho = K |dK/dOmega|)

/// Isolated-interface mode density, closed form; defined for Omega below the
/// surface-plasmon asymptote Omega_p/sqrt(2) and zero above it.
inline double dos_rho_single(double omega_scaled, const ScaledParams& params) {
    const double op2 = params.omega_p_scaled * params.omega_p_scaled;
    const double x = omega_scaled * omega_scaled;
    if (!(omega_scaled > 0.0) || 2.0 * x >= op2) return 0.0;
    const double d = op2 - 2.0 * x;
    return omega_scaled * (op2 * op2 - 2.0 * x * op2 + 2.0 * x * x) / (d * d);
}

namespace detail {

// All z-roots of g_a(z) = target over the branch domain, by sign-change scan.
// The coupled branches are monotone in practice, but a scan keeps the DOS
// correct if a branch ever retraces a frequency.
inline std::vector<double> frequency_roots(Branch branch, double target,
                                           const ScaledParams& params) {
    std::vector<double> grid;
    const double op2 = params.omega_p_scaled * params.omega_p_scaled;
    if (branch == Branch::Plus) {
        const double zp = solve_z_plus(params);
        for (int i = 0; i <= 48; ++i) grid.push_back(-zp + zp * i / 48.0);
    } else {
        grid.push_back(0.0);
    }
    const double gap = op2 / 2.0 - target;  // distance to the flat asymptote
    double zmax = 4.0e3 * std::max(1.0, op2);
    if (gap > 0.0) zmax = std::max(zmax, 2.5 * op2 * op2 / gap);
    const double z0 = 1e-9 * std::max(1.0, op2);
    const int n = 360;
    for (int i = 0; i <= n; ++i)
        grid.push_back(z0 * std::pow(zmax / z0, static_cast<double>(i) / n));

    std::vector<double> roots;
    auto h = [&](double z) { return g_eval(branch, z, params) - target; };
    double prev = grid.front();
    double hprev = branch == Branch::Plus ? h(prev) : -target;  // g(0)=0 on Minus
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = grid[i];
        const double hcur = h(cur);
        if (hprev == 0.0)
            roots.push_back(prev);
        else if ((hprev < 0.0) != (hcur < 0.0))
            roots.push_back(core::find_root(h, {prev, cur, 1e-13 * std::max(1.0, cur), 200}));
        prev = cur;
        hprev = hcur;
    }
    if (hprev == 0.0) roots.push_back(prev);
    return roots;
}

}  // namespace detail

/// delta rho_a(omega) = rho_a(omega) - rho_0(omega), computed parametrically
/// as rho = Omega |1 + g'| / |g'| at the matched z.  Where the coupled branch
/// has a spectral gap the result is the bare -rho_0.  Refuses omega within a
/// guard band of the common asymptote omega_sp, where both densities diverge.
inline double dos_delta(Branch branch, double omega_scaled, const ScaledParams& params) {
    if (branch == Branch::Single)
        throw std::invalid_argument("dos_delta: branch must be Plus or Minus");
    if (!(omega_scaled > 0.0)) throw std::domain_error("dos_delta: omega must be positive");
    const double wsp = params.omega_p_scaled / std::sqrt(2.0);
    if (std::abs(omega_scaled - wsp) <= 1e-8 * std::max(1.0, wsp))
        throw std::domain_error("dos_delta: omega inside the omega_sp guard band");

    double rho = 0.0;
    for (double z : detail::frequency_roots(branch, omega_scaled * omega_scaled, params)) {
        const double gp = g_deriv(branch, z, params);
        if (gp == 0.0) continue;
        rho += omega_scaled * std::abs((1.0 + gp) / gp);
    }
    return rho - dos_rho_single(omega_scaled, params);
}

}  // namespace pcas::dispersion
