#pragma once

// Scaled/physical parameter types and the shared numerical toolbox
// (adaptive Gauss-Kronrod quadrature, Brent root bracketing, golden-section
// minimization) used by the optics/dispersion/energy modules.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcas::core {

inline constexpr double pi = std::numbers::pi;

/// hbar in J s (CODATA 2018) and c in m/s (exact).
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double c_light = 299792458.0;

/// aleph = 180/pi^3, the constant of the perfect-mirror Casimir energy
/// E = -hbar c A / (4 pi aleph L^3).
inline constexpr double aleph() { return 180.0 / (pi * pi * pi); }

/// Everything dimensionless: Omega_p = omega_p L / c and L/lambda_p = Omega_p/(2 pi).
struct ScaledParams {
    double omega_p_scaled = 0.0;
    double distance_ratio = 0.0;

    static ScaledParams from_omega_p(double omega_p_scaled) {
        if (!(omega_p_scaled > 0.0))
            throw std::invalid_argument("ScaledParams: omega_p_scaled must be positive");
        return {omega_p_scaled, omega_p_scaled / (2.0 * pi)};
    }
    static ScaledParams from_distance_ratio(double distance_ratio) {
        if (!(distance_ratio > 0.0))
            throw std::invalid_argument("ScaledParams: distance_ratio must be positive");
        return {2.0 * pi * distance_ratio, distance_ratio};
    }
};

/// Mirror geometry in SI units.
struct PhysicalConfig {
    double plasma_wavelength = 0.0;  // m
    double mirror_separation = 0.0;  // m
    double mirror_area = 0.0;        // m^2
};

inline void validate(const PhysicalConfig& config) {
    if (!(config.plasma_wavelength > 0.0) || !(config.mirror_separation > 0.0) ||
        !(config.mirror_area > 0.0))
        throw std::invalid_argument("PhysicalConfig: all fields must be positive");
}

inline ScaledParams scale(const PhysicalConfig& config) {
    validate(config);
    return ScaledParams::from_omega_p(2.0 * pi * config.mirror_separation /
                                      config.plasma_wavelength);
}

/// Perfect-mirror Casimir energy -hbar c A/(4 pi aleph L^3), in joules.
inline double e_casimir_perfect(const PhysicalConfig& config) {
    validate(config);
    const double L = config.mirror_separation;
    return -hbar * c_light * config.mirror_area / (4.0 * pi * aleph() * L * L * L);
}

// ---------------------------------------------------------------------------
// quadrature

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = std::numeric_limits<double>::infinity();
    int subdivisions = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 abscissae and weights).
inline constexpr double gk_xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk_wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

template <typename F>
PanelEstimate gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resg = gk_wg[3] * fc;
    double resk = gk_wgk[7] * fc;
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * gk_xgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += gk_wg[j / 2] * fsum;
        resk += gk_wgk[j] * fsum;
        resabs += gk_wgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }
    const double reskh = resk * 0.5;
    double resasc = gk_wgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += gk_wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double habs = std::abs(half);
    resabs *= habs;
    resasc *= habs;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(eps50 * resabs, err);
    return {resk * half, err};
}

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [lo, hi]; hi may be
/// +infinity, in which case the tail is folded in through the rational map
/// z = lo + (1-t)/t.  Returns the estimate together with the achieved error
/// bound; converged=false signals that max_subdivisions was exhausted first.
template <typename F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureSpec& spec = {}) {
    if (!(spec.abs_tol > 0.0) && !(spec.rel_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: need a positive tolerance");
    if (spec.max_subdivisions < 1)
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be positive");
    if (!std::isfinite(lo)) throw std::invalid_argument("integrate: lower limit must be finite");
    if (std::isinf(hi) && hi < 0.0)
        throw std::invalid_argument("integrate: only an upper limit of +infinity is supported");

    double sign = 1.0;
    if (!(std::isinf(hi)) && hi < lo) {
        std::swap(lo, hi);
        sign = -1.0;
    }
    if (lo == hi) return {0.0, 0.0, 0, true};

    QuadratureResult out;
    auto run = [&](auto&& g, double a, double b) {
        std::vector<detail::Interval> heap;
        std::vector<detail::Interval> settled;  // too narrow to split further
        auto push = [&](double x0, double x1) {
            auto est = detail::gk15(g, x0, x1);
            heap.push_back({x0, x1, est.value, est.error});
            std::push_heap(heap.begin(), heap.end());
        };
        push(a, b);
        int splits = 0;
        auto totals = [&] {
            double v = 0.0, e = 0.0;
            for (const auto& iv : settled) { v += iv.value; e += iv.error; }
            for (const auto& iv : heap) { v += iv.value; e += iv.error; }
            return std::pair{v, e};
        };
        while (true) {
            auto [value, error] = totals();
            const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
            out.value = sign * value;
            out.error = error;
            out.subdivisions = splits;
            if (!std::isfinite(value)) { out.converged = false; return; }
            if (error <= tol) { out.converged = true; return; }
            if (splits >= spec.max_subdivisions || heap.empty()) { out.converged = false; return; }

            std::pop_heap(heap.begin(), heap.end());
            detail::Interval worst = heap.back();
            heap.pop_back();
            const double mid = 0.5 * (worst.a + worst.b);
            if (mid <= worst.a || mid >= worst.b) {
                settled.push_back(worst);  // roundoff-limited width
                continue;
            }
            push(worst.a, mid);
            push(mid, worst.b);
            ++splits;
        }
    };

    if (std::isinf(hi)) {
        const double base = lo;
        auto g = [&](double t) {
            const double z = base + (1.0 - t) / t;
            const double fz = f(z);
            return fz / (t * t);
        };
        run(g, 0.0, 1.0);
    } else {
        run(f, lo, hi);
    }
    return out;
}

/// integrate(), but a failed error target becomes an exception.
template <typename F>
double integrate_or_throw(F&& f, double lo, double hi, const QuadratureSpec& spec = {}) {
    auto r = integrate(std::forward<F>(f), lo, hi, spec);
    if (!r.converged)
        throw std::runtime_error("quadrature did not converge: error estimate " +
                                 std::to_string(r.error) + " after " +
                                 std::to_string(r.subdivisions) + " subdivisions");
    return r.value;
}

// ---------------------------------------------------------------------------
// root finding

struct RootSpec {
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double tol = 1e-12;
    int max_iter = 200;
};

/// Brent's method on a sign-changing bracket.  Throws std::invalid_argument
/// when f does not change sign over [bracket_lo, bracket_hi].
template <typename F>
double find_root(F&& f, const RootSpec& spec) {
    if (!(spec.bracket_lo < spec.bracket_hi))
        throw std::invalid_argument("RootSpec: bracket_lo must be below bracket_hi");
    if (!(spec.tol > 0.0)) throw std::invalid_argument("RootSpec: tol must be positive");

    double a = spec.bracket_lo, b = spec.bracket_hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("find_root: no sign change over bracket");

    double c = a, fc = fa;
    double d = b - a, e = d;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < spec.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * spec.tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

/// Golden-section search for a minimum of a unimodal f on [lo, hi].
template <typename F>
double find_min_golden(F&& f, double lo, double hi, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace pcas::core
