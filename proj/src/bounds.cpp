#include "fresnel/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fresnel {

namespace {

using detail::inv_sqrt2;
using detail::pi;
using detail::sqrt2;
using detail::sqrt_pi;

// Decay rate of the envelope factor in the transition-region estimate.
const double beta = 1.0 - sqrt2 / 2.0 - (2.0 * sqrt2 + 1.0) / 16.0;

// Quantities shared by every bound at a given N.  A2 = (N + 1/2) pi is the
// square of the cutoff A_N; g and den collect the two slowly varying
// correction factors (both tend to 1 as N grows).
struct NConstants {
    double A2 = 0.0;
    double A = 0.0;
    double g = 0.0;    // 1 + 2 sqrt(pi) exp(-beta A^2)
    double den = 0.0;  // 1 - exp(-2 A^2)
};

NConstants n_constants(int N) {
    if (N < 1) throw std::invalid_argument("error bounds: N must be >= 1");
    NConstants c;
    c.A2 = (static_cast<double>(N) + 0.5) * pi;
    c.A = std::sqrt(c.A2);
    c.g = 1.0 + 2.0 * sqrt_pi * std::exp(-beta * c.A2);
    c.den = 1.0 - std::exp(-2.0 * c.A2);
    return c;
}

void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(who) + ": non-finite argument");
}

}  // namespace

PointwiseBound pointwise_bound(double x, int N) {
    require_finite(x, "pointwise_bound");
    const NConstants nc = n_constants(N);
    const double ax = std::abs(x);
    if (ax == 0.0) return {0.0, 0.0, 0.0, BoundRegion::inner};

    const double eA2 = std::exp(-nc.A2);
    const double u = ax * inv_sqrt2;  // |x|/sqrt(2), compared against A_N
    PointwiseBound b;
    if (u <= 0.75 * nc.A) {
        b.region = BoundRegion::inner;
        b.discretization = ax * eA2 / (sqrt_pi * (nc.A2 - 0.5 * ax * ax) * nc.den);
    } else if (u < 1.25 * nc.A) {
        b.region = BoundRegion::transition;
        b.discretization =
            4.0 * ax * eA2 * nc.g / (sqrt_pi * nc.A * (nc.A + u) * nc.den);
    } else {
        b.region = BoundRegion::outer;
        const double q = std::exp(-sqrt2 * nc.A * ax);
        b.discretization = ax * eA2 / (sqrt_pi * (0.5 * ax * ax - nc.A2) * nc.den) +
                           q / (1.0 - q);
    }
    const double x2 = ax * ax;
    b.truncation = (2.0 * pi + 1.0) * ax * eA2 /
                   (2.0 * pi * nc.A * std::sqrt(x2 * x2 + nc.A2 * nc.A2));
    b.total = b.discretization + b.truncation;
    return b;
}

double pointwise_relative_bound(double x, int N) {
    const double eta = pointwise_bound(x, N).total;
    return (x >= 0.0) ? 2.0 * (1.0 + sqrt_pi * x) * eta : 2.0 * eta;
}

double hunter_regan_bound(double x, double h) {
    if (!(x > 0.0)) throw std::invalid_argument("hunter_regan_bound: requires x > 0");
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("hunter_regan_bound: requires h > 0");
    const double P = (pi / h) * (pi / h);
    const double eP = std::exp(-P);
    return x * eP /
           (sqrt_pi * (1.0 - std::exp(-2.0 * P)) * std::abs(0.5 * x * x - P));
}

UniformConstants uniform_constants(int N) {
    const NConstants nc = n_constants(N);
    const double epih = std::exp(-0.5 * pi);
    const double two_pi_1 = 2.0 * pi + 1.0;
    UniformConstants k;
    k.c = 20.0 * sqrt2 * epih * nc.g / (9.0 * pi * nc.den) +
          two_pi_1 * epih / (2.0 * sqrt2 * pi * sqrt_pi * nc.A);
    k.c_star = 10.0 * sqrt2 * (4.0 + 5.0 * std::sqrt(2.0 * pi) * nc.A) * nc.g * epih /
                   (9.0 * sqrt_pi * nc.A * nc.den) +
               two_pi_1 * epih / (pi * nc.A) * (1.0 / (sqrt2 * nc.A) + sqrt_pi);
    k.c_tilde = 8.0 * epih / (3.0 * pi * sqrt_pi * nc.den) +
                two_pi_1 * epih / (pi * pi * nc.A);
    k.c_hat = k.c + sqrt2 * two_pi_1 * epih /
                        (pi * sqrt_pi * std::sqrt(static_cast<double>(N) + 0.5));
    return k;
}

UniformConstants uniform_constant_limits() {
    const double epih = std::exp(-0.5 * pi);
    const double c_limit = 20.0 * sqrt2 * epih / (9.0 * pi);
    return {c_limit, 100.0 * epih / 9.0, 8.0 * epih / (3.0 * pi * sqrt_pi), c_limit};
}

UniformBounds uniform_bounds(int N) {
    const UniformConstants k = uniform_constants(N);
    const double decay = std::exp(-pi * static_cast<double>(N));
    const double root = std::sqrt(static_cast<double>(N) + 0.5);
    UniformBounds b;
    b.abs = k.c * decay / root;
    b.rel_pos = k.c_star * decay;
    b.rel_neg = 2.0 * k.c * decay / root;
    b.cs_abs = 2.0 * k.c * decay / std::sqrt(2.0 * static_cast<double>(N) + 1.0);
    return b;
}

SmallXBounds small_x_bounds(double x, int N) {
    require_finite(x, "small_x_bounds");
    const NConstants nc = n_constants(N);
    const double ax = std::abs(x);
    if (ax > nc.A * inv_sqrt2)
        throw std::domain_error("small_x_bounds: requires |x| <= A_N/sqrt(2)");
    const UniformConstants k = uniform_constants(N);
    const double decay = std::exp(-pi * static_cast<double>(N));
    const double inf = std::numeric_limits<double>::infinity();
    SmallXBounds b;
    b.f = k.c_tilde * ax * decay / (2.0 * static_cast<double>(N) + 1.0);
    b.cs = (ax > std::sqrt(static_cast<double>(N) + 0.5)) ? inf : sqrt_pi * b.f;
    const double ax3 = ax * ax * ax;
    b.s_strong = (ax >= 1.0)
                     ? inf
                     : (ax3 / (1.0 - ax3 * ax)) * sqrt2 * k.c_hat *
           std::exp(-pi * (static_cast<double>(N) - 0.25)) /
           std::sqrt(static_cast<double>(N) + 0.5);
    return b;
}

double fresnel_magnitude_lower(double x) {
    require_finite(x, "fresnel_magnitude_lower");
    return (x >= 0.0) ? 1.0 / (2.0 + 2.0 * sqrt_pi * x) : 0.5;
}

ErfcBounds erfc_magnitude_bounds(complex z) {
    const double x = z.real();
    const double y = z.imag();
    require_finite(x, "erfc_magnitude_bounds");
    require_finite(y, "erfc_magnitude_bounds");
    if (!(x >= 0.0)) throw std::domain_error("erfc_magnitude_bounds: requires Re z >= 0");
    const double e = std::exp(y * y - x * x);
    const double lp = 1.0 + sqrt_pi * x;
    ErfcBounds b;
    b.lower = e / std::sqrt(lp * lp + pi * y * y);
    b.loose = e / (1.0 + sqrt_pi * std::abs(z));
    b.upper = e;
    return b;
}

double strip_bound(complex z, int N) {
    const double x = z.real();
    const double y = z.imag();
    require_finite(x, "strip_bound");
    require_finite(y, "strip_bound");
    if (x * y >= 0.0) return uniform_bounds(N).abs;
    const NConstants nc = n_constants(N);
    if (!(std::abs(y) <= nc.A / (2.0 * sqrt2)))
        throw std::domain_error("strip_bound: requires |Im z| <= A_N/(2 sqrt 2)");
    const UniformConstants k = uniform_constants(N);
    return k.c_hat * std::exp(-x * y) * std::exp(-pi * static_cast<double>(N)) /
           std::sqrt(static_cast<double>(N) + 0.5);
}

double maclaurin_coefficient_bound(int n, int N) {
    if (n < 0) throw std::invalid_argument("maclaurin_coefficient_bound: requires n >= 0");
    if (N < 4) throw std::domain_error("maclaurin_coefficient_bound: requires N >= 4");
    const UniformConstants k = uniform_constants(N);
    return k.c_hat * std::pow(2.0 / pi, 0.5 * static_cast<double>(n)) *
           std::exp(-pi * (static_cast<double>(N) - 0.25)) /
           std::sqrt(static_cast<double>(N) + 0.5);
}

double maclaurin_coefficient_bound_cs(int n, int N) {
    return sqrt2 * maclaurin_coefficient_bound(n, N);
}

}  // namespace fresnel
