#include "fresnel/oracle.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace fresnel {

namespace {

using detail::eighth_turn;
using detail::inv_sqrt2;
using detail::pi;
using detail::sqrt_pi;
using detail::unit_phase;

}  // namespace

// ----------------------------------------------------------------- model

WeidemanModel::WeidemanModel(int M) : M_(M), L_(0.0) {
    if (M < 4 || M > 128)
        throw std::invalid_argument("WeidemanModel: degree must be in [4, 128]");
    // Fourier coefficients of the mapped Gaussian f(theta) =
    // e^{-t^2} (L^2 + t^2), t = L tan(theta/2), sampled at 4M equispaced
    // angles over a full period; the sample at theta = pi (t -> infinity)
    // is the limit value 0.  The sums are accumulated in extended
    // precision: the coefficients feed differences near the rounding
    // level, and plain double accumulation would leave the evaluated
    // model with an error floor of a few 1e-15 near z = 0 instead of
    // the sub-ulp floor the truncation level allows.
    const long double pil = 3.141592653589793238462643383279502884L;
    const long double Ll = sqrtl(static_cast<long double>(M) / sqrtl(2.0L));
    L_ = static_cast<double>(Ll);
    const int samples = 4 * M;
    std::vector<long double> f(static_cast<std::size_t>(samples), 0.0L);
    for (int j = 0; j < samples; ++j) {
        if (j == 2 * M) continue;  // theta = pi
        const long double theta = pil * static_cast<long double>(j) /
                                  (2.0L * static_cast<long double>(M));
        const long double t = Ll * tanl(0.5L * theta);
        f[static_cast<std::size_t>(j)] = expl(-t * t) * (Ll * Ll + t * t);
    }
    coeff_.assign(static_cast<std::size_t>(M) + 1, 0.0);
    for (int n = 0; n <= M; ++n) {
        long double acc = 0.0L;
        for (int j = 0; j < samples; ++j) {
            const long double theta = pil * static_cast<long double>(j) /
                                      (2.0L * static_cast<long double>(M));
            acc += f[static_cast<std::size_t>(j)] *
                   cosl(static_cast<long double>(n) * theta);
        }
        coeff_[static_cast<std::size_t>(n)] =
            static_cast<double>(acc / static_cast<long double>(samples));
    }

    // Construction self-check against the independent quadrature route: the
    // rational model and the integral have no shared code, so agreement here
    // certifies both the coefficient layout and the evaluation form.
    const double tol =
        (M >= 36) ? 1e-13 : std::min(1.0, 10.0 * std::exp(-0.895 * static_cast<double>(M)));
    for (const double t : {0.5, 1.0, 2.0, 4.0}) {
        const complex ref = quad_w(complex(0.0, t));
        const complex got = faddeeva(complex(0.0, t));
        if (!(std::abs(got - ref) <= tol * std::abs(ref)))
            throw std::runtime_error("WeidemanModel: self-check failed at degree " +
                                     std::to_string(M));
    }
}

complex WeidemanModel::faddeeva(complex z) const {
    const complex iz(-z.imag(), z.real());
    const complex dm = complex(L_, 0.0) - iz;  // L - iz
    const complex dp = complex(L_, 0.0) + iz;  // L + iz
    const complex Z = dp / dm;
    complex p(0.0, 0.0);
    for (int n = M_; n >= 1; --n) p = p * Z + coeff_[static_cast<std::size_t>(n)];
    return 2.0 * p / (dm * dm) + (1.0 / sqrt_pi) / dm;
}

complex WeidemanModel::fresnel(double x) const {
    if (!std::isfinite(x)) throw std::invalid_argument("WeidemanModel::fresnel: non-finite argument");
    if (x < 0.0) {
        const complex f = fresnel(-x);
        return {1.0 - f.real(), -f.imag()};
    }
    const complex w = faddeeva(complex(inv_sqrt2 * x, inv_sqrt2 * x));
    return 0.5 * (unit_phase(x * x) * w);
}

const WeidemanModel& weideman_model(int M) {
    static std::mutex mu;
    static std::map<int, WeidemanModel> cache;
    const std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it == cache.end()) it = cache.emplace(M, WeidemanModel(M)).first;
    return it->second;
}

complex weideman_F(double x, int M) { return weideman_model(M).fresnel(x); }

// ---------------------------------------------------------------- series

FresnelPair cs_power_series(double x, int terms) {
    if (terms < 1) throw std::invalid_argument("cs_power_series: terms must be >= 1");
    if (!std::isfinite(x)) throw std::invalid_argument("cs_power_series: non-finite argument");
    if (std::abs(x) > 2.0) {
        static std::atomic<bool> warned{false};
        if (!warned.exchange(true))
            std::fprintf(stderr,
                         "cs_power_series: |x| > 2 is outside the numerically reliable range\n");
    }
    const double q = 0.25 * pi * pi;  // (pi/2)^2
    std::vector<double> c(static_cast<std::size_t>(terms));
    std::vector<double> s(static_cast<std::size_t>(terms));
    c[0] = 1.0;
    s[0] = pi / 6.0;
    for (int n = 1; n < terms; ++n) {
        const double dn = static_cast<double>(n);
        c[static_cast<std::size_t>(n)] =
            -c[static_cast<std::size_t>(n - 1)] * q * (4.0 * dn - 3.0) /
            ((2.0 * dn) * (2.0 * dn - 1.0) * (4.0 * dn + 1.0));
        s[static_cast<std::size_t>(n)] =
            -s[static_cast<std::size_t>(n - 1)] * q * (4.0 * dn - 1.0) /
            ((2.0 * dn + 1.0) * (2.0 * dn) * (4.0 * dn + 3.0));
    }
    const double u = (x * x) * (x * x);
    double pc = 0.0;
    double ps = 0.0;
    for (int n = terms - 1; n >= 0; --n) {
        pc = pc * u + c[static_cast<std::size_t>(n)];
        ps = ps * u + s[static_cast<std::size_t>(n)];
    }
    return {x * pc, (x * x * x) * ps};
}

complex fresnel_from_series(double x, int terms) {
    const double t = x * std::sqrt(2.0 / pi);
    return convert_CS_to_F(cs_power_series(t, terms));
}

// ------------------------------------------------------------ quadrature

complex quad_F(double x, const QuadSettings& settings) {
    settings.validate();
    if (!std::isfinite(x)) throw std::invalid_argument("quad_F: non-finite argument");
    if (x < 0.0) {
        const complex f = quad_F(-x, settings);
        return {1.0 - f.real(), -f.imag()};
    }
    if (x < 0.1) return fresnel_from_series(x);
    const double x2 = x * x;
    const double x4 = x2 * x2;
    const auto integrand = [x2, x4](double t) {
        const double t2 = t * t;
        const double w = std::exp(-t2) / (x4 + t2 * t2);
        return complex(x2 * w, -t2 * w);
    };
    const complex I = integrate_adaptive(integrand, 0.0, settings.upper_limit, settings);
    return (x / pi) * (eighth_turn * unit_phase(x2)) * I;
}

complex quad_w(complex z, const QuadSettings& settings) {
    settings.validate();
    if (!(z.imag() > 0.0)) throw std::domain_error("quad_w: requires Im z > 0");
    const complex z2 = z * z;
    const auto integrand = [z2](double t) { return std::exp(-t * t) / (z2 - t * t); };
    const complex I = integrate_adaptive(integrand, 0.0, settings.upper_limit, settings);
    return (2.0 * complex(0.0, 1.0) * z / pi) * I;
}

complex quad_F_complex(complex z, const QuadSettings& settings) {
    const complex w = quad_w(eighth_turn * z, settings);
    const complex z2 = z * z;
    return 0.5 * (std::exp(complex(-z2.imag(), z2.real())) * w);
}

// ------------------------------------------------------ imaginary axis

double dawson_like(double y) {
    if (!(y >= 0.0 && y <= 6.5)) throw std::domain_error("dawson_like: requires 0 <= y <= 6.5");
    double term = y;
    double sum = y;
    for (int n = 1;; ++n) {
        const double dn = static_cast<double>(n);
        term *= y * y * (2.0 * dn - 1.0) / (dn * (2.0 * dn + 1.0));
        sum += term;
        if (term <= 1e-18 * sum) break;
    }
    return sum;
}

complex erfc_imag_axis(double y) {
    const double a = std::abs(y);
    if (!(a <= 6.5)) throw std::domain_error("erfc_imag_axis: requires |y| <= 6.5");
    const double v = (2.0 / sqrt_pi) * dawson_like(a);
    return (y >= 0.0) ? complex(1.0, -v) : complex(1.0, v);
}

double G_magnitude(double y) {
    if (!(y >= 0.0 && y <= 6.5)) throw std::domain_error("G_magnitude: requires 0 <= y <= 6.5");
    const double d = dawson_like(y);
    const double mag2 = 1.0 + (4.0 / pi) * d * d;  // |erfc(iy)|^2
    return std::sqrt((1.0 + pi * y * y) * std::exp(-2.0 * y * y) * mag2);
}

}  // namespace fresnel
