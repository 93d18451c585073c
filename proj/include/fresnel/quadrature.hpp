#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

// Self-contained globally adaptive Gauss-Kronrod 7-15 integrator used by
// the independent reference oracles.  Deterministic: panel selection uses
// a strict worst-first scan, so results are identical run to run.

namespace fresnel {

/// Tunables for the adaptive integrator and the oracle integrals built on
/// it.  T is the upper endpoint standing in for +infinity: integrands
/// carry an e^{-t^2} factor, so e^{-T^2} < 1e-32 already at T = 8.6.
struct QuadSettings {
    double rel_tol = 1e-15;
    double abs_tol = 1e-300;
    int max_depth = 60;
    double upper_limit = 8.6;

    /// Throws std::invalid_argument unless 1e-16 <= rel_tol <= 1e-6,
    /// upper_limit >= 8 and max_depth >= 1.
    void validate() const {
        if (!(rel_tol >= 1e-16 && rel_tol <= 1e-6))
            throw std::invalid_argument("QuadSettings: rel_tol out of [1e-16, 1e-6]");
        if (!(upper_limit >= 8.0))
            throw std::invalid_argument("QuadSettings: upper_limit must be >= 8");
        if (max_depth < 1)
            throw std::invalid_argument("QuadSettings: max_depth must be >= 1");
    }
};

namespace gk {

// 15-point Kronrod abscissae (non-negative half) and weights, plus the
// embedded 7-point Gauss weights.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

inline double abs_value(double v) { return std::abs(v); }
inline double abs_value(const std::complex<double>& v) { return std::abs(v); }

/// One Gauss-Kronrod 7-15 panel on [a, b].  Returns the Kronrod estimate
/// and writes an error estimate sharpened in the usual (200 e)^{3/2} way.
template <typename F, typename V = std::invoke_result_t<F, double>>
V kronrod_panel(F&& f, double a, double b, double& err) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    V fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(mid - half * xgk[j]);
        fv[14 - j] = f(mid + half * xgk[j]);
    }
    fv[7] = f(mid);

    V i15 = wgk[7] * fv[7];
    V i7 = wg[3] * fv[7];
    double resabs = wgk[7] * abs_value(fv[7]);
    for (int j = 0; j < 7; ++j) {
        i15 += wgk[j] * (fv[j] + fv[14 - j]);
        resabs += wgk[j] * (abs_value(fv[j]) + abs_value(fv[14 - j]));
    }
    for (int j = 0; j < 3; ++j)
        i7 += wg[j] * (fv[1 + 2 * j] + fv[13 - 2 * j]);

    const V mean = i15 * 0.5;
    double resasc = wgk[7] * abs_value(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (abs_value(fv[j] - mean) + abs_value(fv[14 - j] - mean));
    resasc *= half;
    (void)resabs;

    err = abs_value(i15 - i7) * half;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return i15 * half;
}

}  // namespace gk

/// Globally adaptive integration of f over [a, b].  Splits the current
/// worst panel until the total error estimate drops below
/// max(abs_tol, rel_tol * |integral|).  Throws std::runtime_error
/// (reporting the achieved estimate) if a panel would exceed max_depth
/// bisections or the panel count explodes.
template <typename F, typename V = std::invoke_result_t<F, double>>
V integrate_adaptive(F&& f, double a, double b, const QuadSettings& settings = {}) {
    settings.validate();

    struct Panel {
        double a, b;
        V value;
        double err;
        int depth;
    };

    std::vector<Panel> panels;
    panels.reserve(256);
    {
        double e0 = 0.0;
        V v0 = gk::kronrod_panel(f, a, b, e0);
        panels.push_back({a, b, v0, e0, 0});
    }

    for (;;) {
        V total = panels[0].value;
        double errtot = panels[0].err;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            total += panels[i].value;
            errtot += panels[i].err;
        }
        const double budget =
            std::max(settings.abs_tol, settings.rel_tol * gk::abs_value(total));
        if (errtot <= budget) return total;

        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;

        const Panel p = panels[worst];
        if (p.depth >= settings.max_depth || panels.size() >= 100000)
            throw std::runtime_error(
                "integrate_adaptive: tolerance not reached (error estimate " +
                std::to_string(errtot) + ")");

        const double mid = 0.5 * (p.a + p.b);
        double e_left = 0.0, e_right = 0.0;
        V v_left = gk::kronrod_panel(f, p.a, mid, e_left);
        V v_right = gk::kronrod_panel(f, mid, p.b, e_right);
        panels[worst] = {p.a, mid, v_left, e_left, p.depth + 1};
        panels.push_back({mid, p.b, v_right, e_right, p.depth + 1});
    }
}

}  // namespace fresnel
