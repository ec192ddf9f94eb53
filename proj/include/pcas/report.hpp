#pragma once

// Sweep engines behind the command-line front end: tabular data products for
// dispersion curves, correction-factor and energy sweeps, DOS differences,
// the asymptotic-constants table, and the self-check report.  Output is CSV
// (with '#' metadata comments) or JSON {meta, rows}; both are deterministic
// for fixed flags.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pcas/core.hpp"
#include "pcas/dispersion.hpp"
#include "pcas/energy.hpp"

namespace pcas::report {

using core::QuadratureSpec;
using core::ScaledParams;
using dispersion::Branch;
using energy::SplitScheme;

enum class OutputFormat { CSV, JSON };

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;  // ordered key/value
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct SweepRequest {
    std::optional<double> omega_p;  // exactly one of omega_p / distance_ratio
    std::optional<double> distance_ratio;
    int grid_points = 50;
    double grid_min = 0.01;  // sweep range; L/lambda_p for eta and energy
    double grid_max = 10.0;
    bool grid_range_set = false;
    SplitScheme scheme = SplitScheme::Adiabatic;
    OutputFormat format = OutputFormat::CSV;
    QuadratureSpec quad;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline ScaledParams params_of(const SweepRequest& req) {
    if (req.omega_p && req.distance_ratio)
        throw UsageError("--omega-p and --distance-ratio are mutually exclusive");
    if (req.omega_p) return ScaledParams::from_omega_p(*req.omega_p);
    if (req.distance_ratio) return ScaledParams::from_distance_ratio(*req.distance_ratio);
    throw UsageError("one of --omega-p or --distance-ratio is required");
}

inline const char* scheme_name(SplitScheme s) {
    switch (s) {
        case SplitScheme::Adiabatic: return "adiabatic";
        case SplitScheme::Bordag: return "bordag";
        case SplitScheme::LenacLightLine: return "lenac-light";
        case SplitScheme::LenacEvanescent: default: return "lenac-evanescent";
    }
}

inline int thread_budget() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("PLASMON_CASIMIR_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return static_cast<int>(n);
}

// Rows are computed concurrently but assembled in grid order.
template <typename Fn>
void parallel_rows(int n, Fn&& fn) {
    const int threads = std::min(thread_budget(), n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

inline bool row_finite(const std::vector<Cell>& row) {
    for (const auto& c : row)
        if (const double* v = std::get_if<double>(&c); v && !std::isfinite(*v)) return false;
    return true;
}

inline void append_meta(Table& t, const SweepRequest& req, const char* quantity) {
    t.meta.emplace_back("tool", "plasmon-casimir 0.1.0");
    t.meta.emplace_back("quantity", quantity);
    if (req.omega_p) t.meta.emplace_back("omega_p", fmt(*req.omega_p));
    if (req.distance_ratio) t.meta.emplace_back("distance_ratio", fmt(*req.distance_ratio));
    t.meta.emplace_back("scheme", scheme_name(req.scheme));
    t.meta.emplace_back("abs_tol", fmt(req.quad.abs_tol));
    t.meta.emplace_back("rel_tol", fmt(req.quad.rel_tol));
}

}  // namespace detail

inline void write_csv(const Table& t, std::ostream& os) {
    for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : t.rows) {
        if (!detail::row_finite(row)) continue;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const double* v = std::get_if<double>(&row[i]))
                os << detail::fmt(*v);
            else
                os << std::get<std::string>(row[i]);
            os << (i + 1 < row.size() ? "," : "");
        }
        os << "\n";
    }
}

inline void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json doc;
    auto& meta = doc["meta"];
    for (const auto& [k, v] : t.meta) meta[k] = v;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        if (!detail::row_finite(row)) continue;
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const double* v = std::get_if<double>(&row[i]))
                obj[t.columns[i]] = *v;
            else
                obj[t.columns[i]] = std::get<std::string>(row[i]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(2) << "\n";
}

inline void write(const Table& t, OutputFormat f, std::ostream& os) {
    f == OutputFormat::CSV ? write_csv(t, os) : write_json(t, os);
}

// ---------------------------------------------------------------------------
// sweep runners

/// Branch curves (plus/minus/single) over a z-grid, with the light line and
/// bulk edge as reference series on the matching K range.
inline Table run_dispersion(const SweepRequest& req) {
    const auto params = detail::params_of(req);
    if (req.grid_points < 2) throw UsageError("dispersion: --grid must be at least 2");
    const double op = params.omega_p_scaled;
    const double zp = dispersion::solve_z_plus(params);
    const double kmax_target = std::max(10.0, 3.0 * op);
    double zmax = kmax_target * kmax_target;
    if (req.grid_range_set) zmax = req.grid_max;

    Table t;
    detail::append_meta(t, req, "dispersion");
    t.meta.emplace_back("z_plus", detail::fmt(zp));
    t.columns = {"branch", "z", "K", "Omega"};

    const int n = req.grid_points;
    auto add_branch = [&](Branch b, const char* name, double zlo) {
        for (int i = 0; i < n; ++i) {
            // quadratic spacing resolves the small-z region
            const double x = static_cast<double>(i) / (n - 1);
            const double z = zlo + (zmax - zlo) * x * x;
            const auto s = dispersion::sample(b, z, params);
            t.rows.push_back({std::string(name), s.z, s.k_scaled, s.omega_scaled});
        }
    };
    add_branch(Branch::Plus, "plus", -zp * (1.0 - 1e-14));
    add_branch(Branch::Minus, "minus", 0.0);
    add_branch(Branch::Single, "single", 0.0);
    const double kmax = std::sqrt(zmax + op * op / 2.0);
    for (int i = 0; i < n; ++i) {
        const double k = kmax * i / (n - 1);
        t.rows.push_back({std::string("light_line"), 0.0, k, k});
        t.rows.push_back(
            {std::string("bulk_edge"), -op * op, k, std::sqrt(k * k + op * op)});
    }
    return t;
}

/// eta under the requested scheme vs L/lambda_p, alongside the short- and
/// large-distance approximations.
inline Table run_eta(const SweepRequest& req) {
    Table t;
    detail::append_meta(t, req, "eta");
    t.columns = {"L_over_lambda_p", "eta", "eta_short_approx", "eta_large_approx"};

    std::vector<double> ratios;
    if (req.omega_p || req.distance_ratio) {
        ratios.push_back(detail::params_of(req).distance_ratio);
    } else {
        if (req.grid_points < 2) throw UsageError("eta sweep: --grid must be at least 2");
        if (!(req.grid_min > 0.0) || !(req.grid_max > req.grid_min))
            throw UsageError("eta sweep: need 0 < --grid-min < --grid-max");
        for (int i = 0; i < req.grid_points; ++i)
            ratios.push_back(req.grid_min * std::pow(req.grid_max / req.grid_min,
                                                     static_cast<double>(i) /
                                                         (req.grid_points - 1)));
    }
    t.rows.resize(ratios.size());
    detail::parallel_rows(static_cast<int>(ratios.size()), [&](int i) {
        const auto p = ScaledParams::from_distance_ratio(ratios[i]);
        t.rows[i] = {ratios[i], energy::eta_split(p, req.scheme, req.quad),
                     energy::eta_short_distance(p), energy::eta_large_distance(p)};
    });
    return t;
}

/// DOS differences vs omega/omega_p, skipping the omega_sp guard band.
inline Table run_dos(const SweepRequest& req) {
    const auto params = detail::params_of(req);
    if (req.grid_points < 2) throw UsageError("dos: --grid must be at least 2");
    const double op = params.omega_p_scaled;
    const double wsp_frac = 1.0 / std::sqrt(2.0);
    double lo = 0.005, hi = wsp_frac - 1e-3;
    if (req.grid_range_set) {
        lo = req.grid_min;
        hi = req.grid_max;
    }
    if (!(lo > 0.0) || !(hi > lo)) throw UsageError("dos: need 0 < --grid-min < --grid-max");

    Table t;
    detail::append_meta(t, req, "dos");
    t.columns = {"omega_over_omega_p", "delta_rho_plus", "delta_rho_minus"};
    std::vector<double> fracs;
    const double guard = 1e-8;
    for (int i = 0; i < req.grid_points; ++i) {
        const double f = lo + (hi - lo) * i / (req.grid_points - 1);
        if (std::abs(f * op - op * wsp_frac) <= guard * std::max(1.0, op * wsp_frac)) continue;
        fracs.push_back(f);
    }
    t.rows.resize(fracs.size());
    detail::parallel_rows(static_cast<int>(fracs.size()), [&](int i) {
        const double w = fracs[i] * op;
        const dispersion::DosSample plus{w, dispersion::dos_delta(Branch::Plus, w, params),
                                         Branch::Plus};
        const dispersion::DosSample minus{
            w, dispersion::dos_delta(Branch::Minus, w, params), Branch::Minus};
        t.rows[i] = {fracs[i], plus.delta_rho, minus.delta_rho};
    });
    return t;
}

/// Plasmonic, photonic and total energy vs L/lambda_p, normalized to
/// (2 pi)^3 hbar c pi^2 A/(720 lambda_p^3); in these units E_X = -eta_X/Omega_p^3.
inline Table run_energy(const SweepRequest& req) {
    Table t;
    detail::append_meta(t, req, "energy");
    t.columns = {"L_over_lambda_p", "E_pl", "E_ph", "E_total"};
    if (req.grid_points < 2) throw UsageError("energy sweep: --grid must be at least 2");
    if (!(req.grid_min > 0.0) || !(req.grid_max > req.grid_min))
        throw UsageError("energy sweep: need 0 < --grid-min < --grid-max");

    std::vector<double> ratios;
    for (int i = 0; i < req.grid_points; ++i)
        ratios.push_back(req.grid_min * std::pow(req.grid_max / req.grid_min,
                                                 static_cast<double>(i) / (req.grid_points - 1)));
    t.rows.resize(ratios.size());
    detail::parallel_rows(static_cast<int>(ratios.size()), [&](int i) {
        const auto p = ScaledParams::from_distance_ratio(ratios[i]);
        const auto d = energy::decompose(p, req.quad);
        const double op3 = std::pow(p.omega_p_scaled, 3);
        t.rows[i] = {ratios[i], -d.eta_plasmonic / op3, -d.eta_photonic / op3,
                     -d.eta_total / op3};
    });
    return t;
}

/// Table of the asymptotic constants the sweeps are checked against.
inline Table run_asymptotics(const SweepRequest& req) {
    Table t;
    detail::append_meta(t, req, "asymptotics");
    t.columns = {"name", "value"};
    const auto& a = energy::alpha_constants();
    const auto& g = energy::gamma_constant();
    const auto& c = energy::large_distance_coefficients();
    const double b = core::aleph() / (4.0 * std::sqrt(2.0));
    auto row = [&](const char* n, double v) { t.rows.push_back({std::string(n), v}); };
    row("aleph", core::aleph());
    row("alpha", a.alpha);
    row("alpha_plus", a.alpha_plus);
    row("alpha_minus", a.alpha_minus);
    row("a", energy::fitted_short_distance_a());
    row("b", b);
    row("gamma", g.gamma);
    row("gamma_plus_evanescent", g.parts[0]);
    row("gamma_minus_evanescent", g.parts[1]);
    row("gamma_plus_propagating", g.parts[2]);
    row("eta_bordag_coefficient", c.bordag);
    row("eta_lenac_coefficient", c.lenac_light_line);
    return t;
}

// ---------------------------------------------------------------------------
// validate

struct CheckLine {
    std::string name;
    double value;
    double target;
    double tol;
    bool pass;
};

/// Recompute the published constants and limit behaviors; exit status of the
/// CLI follows all_pass.
struct ValidationReport {
    std::vector<CheckLine> checks;
    bool all_pass = true;
};

inline ValidationReport run_validate(const QuadratureSpec& user_spec) {
    ValidationReport rep;
    auto check = [&](const std::string& name, double value, double target, double tol) {
        const bool ok = std::isfinite(value) && std::abs(value - target) <= tol;
        rep.checks.push_back({name, value, target, tol, ok});
        rep.all_pass = rep.all_pass && ok;
    };
    // a computation that blows up is a failed check, not a crashed report
    auto guarded = [](auto&& fn) -> double {
        try {
            return fn();
        } catch (const std::exception&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    // delicate steps keep their own ceiling; loose user tolerances stay usable
    auto capped = [&](double cap) {
        QuadratureSpec s = user_spec;
        s.abs_tol = std::min(s.abs_tol, cap);
        s.rel_tol = std::min(s.rel_tol, 1e-8);
        return s;
    };

    check("aleph", core::aleph(), 5.8052762, 1e-6);

    const auto& a = energy::alpha_constants();
    check("alpha", a.alpha, 1.790, 0.002);
    check("alpha_plus", a.alpha_plus, -12.225, 0.01);
    check("alpha_minus", a.alpha_minus, 14.015, 0.01);
    check("alpha_sum_minus_alpha", a.alpha_plus + a.alpha_minus - a.alpha, 0.0, 1e-3);

    {
        const double at = guarded([&] {
            const auto p = ScaledParams::from_omega_p(0.01);
            return 2.0 * core::pi * energy::eta_total(p, capped(1e-8)) / 0.01;
        });
        check("alpha_from_eta_total", at, a.alpha, 0.005);
    }

    check("b", core::aleph() / (4.0 * std::sqrt(2.0)), 1.026, 0.001);
    check("a_fit", energy::fitted_short_distance_a(), 0.63, 0.02);

    const auto& g = energy::gamma_constant();
    check("gamma", g.gamma, 29.75, 0.05);
    check("gamma_plus_evanescent", g.parts[0], 8.90, 0.05);
    check("gamma_minus_evanescent", g.parts[1], -7.23, 0.05);
    check("gamma_plus_propagating", g.parts[2], 28.09, 0.05);
    {
        // the full integrals must reproduce the asymptotic constant
        const double gref = guarded([&] {
            const auto p = ScaledParams::from_omega_p(1e7);
            return -energy::eta_plasmonic(p, capped(1e-6)).total / std::sqrt(p.omega_p_scaled);
        });
        check("gamma_from_eta_pl", gref, g.gamma, 0.05);
    }

    const auto& coef = energy::large_distance_coefficients();
    check("eta_bordag_coefficient", coef.bordag, 1.6240, 0.003);
    check("eta_lenac_coefficient", coef.lenac_light_line, -1.6600, 0.003);

    {
        const auto spec = user_spec;
        auto eta_of_ratio = [&](double r) {
            return energy::eta_plasmonic(ScaledParams::from_distance_ratio(r), spec).total;
        };
        const double crossing = guarded(
            [&] { return core::find_root(eta_of_ratio, {0.05, 0.12, 1e-6, 200}); });
        check("eta_pl_zero_crossing", crossing, 0.08, 0.01);

        const auto mspec = capped(1e-8);
        const double rmax = guarded([&] {
            return core::find_min_golden(
                [&](double r) {
                    const auto p = ScaledParams::from_distance_ratio(r);
                    return energy::eta_plasmonic(p, mspec).total /
                           std::pow(p.omega_p_scaled, 3);
                },
                0.09, 0.5, 1e-5);
        });
        check("e_pl_maximum", rmax, 0.16, 0.01);
    }

    {
        const auto p = ScaledParams::from_omega_p(0.01);
        check("z_plus_small_limit", dispersion::solve_z_plus(p) / (0.01 * 0.01), 1.0, 1e-3);
        const auto q = ScaledParams::from_omega_p(1e4);
        check("z_plus_large_limit",
              dispersion::solve_z_plus(q) / (core::pi * core::pi), 1.0, 1e-3);
    }

    check("eta_total_perfect_mirror",
          energy::eta_total(ScaledParams::from_omega_p(1e4), user_spec), 1.0, 0.01);
    return rep;
}

inline void print_validation(const ValidationReport& rep, std::ostream& os) {
    for (const auto& c : rep.checks) {
        char line[160];
        std::snprintf(line, sizeof line, "%s %-26s %14.7g   (target %.7g +- %.2g)",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.target, c.tol);
        os << line << "\n";
    }
    os << (rep.all_pass ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
}

}  // namespace pcas::report
