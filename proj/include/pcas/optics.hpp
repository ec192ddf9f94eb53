#pragma once

// Plasma-model dielectric response, perpendicular wavevectors with the
// retarded branch convention, Fresnel reflection amplitudes and the cavity
// dispersion function D_mu, all in scaled variables (Omega = omega L/c,
// K = |k| L).

#include <complex>
#include <limits>
#include <stdexcept>

#include "pcas/core.hpp"

namespace pcas::optics {

using core::ScaledParams;
using cplx = std::complex<double>;

enum class Polarization { TE, TM };

/// One point of the (Omega, K) plane; K is real and nonnegative, Omega may
/// sit anywhere in the complex plane.
struct FieldPoint {
    cplx omega_scaled;
    double k_scaled = 0.0;
};

/// Real-axis taxonomy: evanescent below the light line, guided cavity modes
/// between light line and bulk edge, bulk continuum above.
enum class Sector { Evanescent, Cavity, Bulk };

inline Sector classify(const FieldPoint& point, const ScaledParams& params) {
    if (point.omega_scaled.imag() != 0.0)
        throw std::invalid_argument("classify: sector taxonomy is defined on the real axis");
    const double w = point.omega_scaled.real();
    const double k = point.k_scaled;
    const double op = params.omega_p_scaled;
    if (w * w >= k * k + op * op) return Sector::Bulk;
    if (w > k) return Sector::Cavity;
    return Sector::Evanescent;
}

/// Plasma-model dielectric function 1 - Omega_p^2/Omega^2.
inline cplx epsilon(cplx omega_scaled, const ScaledParams& params) {
    if (omega_scaled == cplx(0.0, 0.0))
        throw std::domain_error("epsilon: undefined at Omega = 0");
    const double op = params.omega_p_scaled;
    return 1.0 - op * op / (omega_scaled * omega_scaled);
}

namespace detail {

// sqrt(w) on the branch fixed by Re kappa > 0, Im kappa < 0 for Im Omega > 0;
// real-axis values are the limits from the upper half plane.  Both sign
// candidates are tested explicitly rather than trusting the principal branch.
inline cplx branch_sqrt(cplx w, cplx omega) {
    if (omega.imag() == 0.0) {
        const double wr = w.real();
        if (wr >= 0.0) return {std::sqrt(wr), 0.0};
        return {0.0, -std::sqrt(-wr)};
    }
    cplx s = std::sqrt(w);
    const bool want_negative_im = omega.imag() > 0.0;
    if (want_negative_im ? s.imag() > 0.0 : s.imag() < 0.0) s = -s;
    if (s.imag() == 0.0 && s.real() < 0.0) s = -s;
    return s;
}

}  // namespace detail

namespace detail {
inline void require_k(const FieldPoint& point) {
    if (!(point.k_scaled >= 0.0))
        throw std::invalid_argument("FieldPoint: k_scaled must be nonnegative");
}
}  // namespace detail

/// kappa L = sqrt(K^2 - Omega^2); real and nonnegative in the evanescent
/// sector, -i |k_z| L on the propagating side of the real axis.
inline cplx kappa(const FieldPoint& point) {
    detail::require_k(point);
    const cplx w = cplx(point.k_scaled * point.k_scaled, 0.0) -
                   point.omega_scaled * point.omega_scaled;
    return detail::branch_sqrt(w, point.omega_scaled);
}

/// kappa_m L = sqrt(kappa^2 L^2 + Omega_p^2), same branch rule.
inline cplx kappa_m(const FieldPoint& point, const ScaledParams& params) {
    detail::require_k(point);
    const double op = params.omega_p_scaled;
    const cplx w = cplx(point.k_scaled * point.k_scaled + op * op, 0.0) -
                   point.omega_scaled * point.omega_scaled;
    return detail::branch_sqrt(w, point.omega_scaled);
}

/// Fresnel amplitude plus a tag for the single-interface plasmon pole of the
/// TM denominator, which callers probe legitimately.
struct Reflection {
    cplx value;
    bool pole_at_plasmon = false;
};

inline Reflection reflection(const FieldPoint& point, Polarization pol,
                             const ScaledParams& params) {
    const cplx k = kappa(point);
    const cplx km = kappa_m(point, params);
    if (pol == Polarization::TE) return {(k - km) / (k + km), false};
    const cplx ek = epsilon(point.omega_scaled, params) * k;
    const cplx den = km + ek;
    if (std::abs(den) <= 1e-9 * (std::abs(km) + std::abs(ek)))
        return {std::numeric_limits<double>::infinity(), true};
    return {(km - ek) / den, false};
}

/// Cavity dispersion function D_mu = 1 - r^2 e^{-2 kappa L}; its zeros in the
/// evanescent TM sector are the coupled surface-plasmon modes.
struct DispersionValue {
    cplx value;
    bool pole_at_plasmon = false;
};

inline DispersionValue dispersion_D(const FieldPoint& point, Polarization pol,
                                    const ScaledParams& params) {
    const Reflection r = reflection(point, pol, params);
    if (r.pole_at_plasmon) return {cplx(0.0, 0.0), true};
    const cplx k = kappa(point);
    return {1.0 - r.value * r.value * std::exp(-2.0 * k), false};
}

}  // namespace pcas::optics
