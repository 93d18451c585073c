#pragma once

#include <complex>

#include "fresnel/core.hpp"

// Explicit, fully computable error bounds for the N-point Fresnel rule
// and related quantities: pointwise discretisation + truncation envelopes,
// uniform bounds with explicit constants, small-argument bounds, bounds on
// the analytic continuation in the right half-plane, and elementary
// two-sided estimates for |F| and |erfc| used as sanity floors.

namespace fresnel {

/// Which of the three pointwise discretisation-error regimes applies at x:
/// inner      x/sqrt(2) <= 0.75 A_N,
/// transition 0.75 A_N < x/sqrt(2) < 1.25 A_N,
/// outer      x/sqrt(2) >= 1.25 A_N.
enum class BoundRegion { inner, transition, outer };

/// Pointwise error envelope for fresnel_F at a given x >= 0 (even in x).
struct PointwiseBound {
    double discretization = 0.0;  ///< pole-sum part delta_N(x)
    double truncation = 0.0;      ///< dropped-tail part
    double total = 0.0;           ///< eta_N(x) = discretization + truncation
    BoundRegion region = BoundRegion::inner;
};

/// Explicit constants in the uniform bounds; all are decreasing in N and
/// converge to finite limits as N -> infinity.
struct UniformConstants {
    double c = 0.0;        ///< absolute-error constant
    double c_star = 0.0;   ///< relative-error constant, x >= 0
    double c_tilde = 0.0;  ///< small-x constant
    double c_hat = 0.0;    ///< continuation / Maclaurin constant
};

/// Uniform error bounds for an N-point rule.
struct UniformBounds {
    double abs = 0.0;      ///< sup_x |F_N - F|
    double rel_pos = 0.0;  ///< sup_{x>=0} |F_N - F|/|F|
    double rel_neg = 0.0;  ///< sup_{x<0} |F_N - F|/|F|
    double cs_abs = 0.0;   ///< sup_x max(|C_N - C|, |S_N - S|)
};

/// Bounds tailored to |x| <= A_N/sqrt(2), where F_N - F vanishes linearly.
struct SmallXBounds {
    double f = 0.0;         ///< |F_N(x) - F(x)|
    double cs = 0.0;        ///< max(|C_N - C|, |S_N - S|) for |x| <= sqrt(N+1/2)
    double s_strong = 0.0;  ///< sharper |S_N - S| bound for |x| < 1
};

/// Two-sided elementary bounds for |erfc(z)| in the closed right half-plane.
struct ErfcBounds {
    double lower = 0.0;   ///< sharp lower bound
    double loose = 0.0;   ///< weaker but simpler lower bound
    double upper = 0.0;   ///< e^{y^2 - x^2}
};

/// eta_N(x) and its two parts; even in x, zero at x = 0.
PointwiseBound pointwise_bound(double x, int N);

/// Pointwise relative-error bound |F_N - F|/|F|:
/// 2 (1 + sqrt(pi) x) eta_N(x) for x >= 0, and 2 eta_N(x) for x < 0.
double pointwise_relative_bound(double x, int N);

/// Discretisation-error bound for a plain trapezium sum with step h at
/// x > 0, valid safely away from x = sqrt(2) pi/h.
double hunter_regan_bound(double x, double h);

/// The four explicit constants at a given N >= 1.
UniformConstants uniform_constants(int N);

/// Limits of the four constants as N -> infinity.
UniformConstants uniform_constant_limits();

/// Uniform bounds assembled from the constants:
///   abs     = c_N exp(-pi N)/sqrt(N + 1/2),
///   rel_pos = c*_N exp(-pi N),
///   rel_neg = 2 c_N exp(-pi N)/sqrt(N + 1/2),
///   cs_abs  = 2 c_N exp(-pi N)/sqrt(2N + 1).
UniformBounds uniform_bounds(int N);

/// Small-argument bounds at x.  The F-form requires |x| <= A_N/sqrt(2)
/// (std::domain_error otherwise); the cs field is +infinity for
/// |x| > sqrt(N + 1/2) and s_strong is +infinity for |x| >= 1.
SmallXBounds small_x_bounds(double x, int N);

/// Lower bound on |F(x)| for real x: 1/(2 + 2 sqrt(pi) x) for x >= 0,
/// and 1/2 for x < 0.
double fresnel_magnitude_lower(double x);

/// Two-sided bounds on |erfc(x + iy)| for Re z >= 0 (std::domain_error
/// for Re z < 0).
ErfcBounds erfc_magnitude_bounds(complex z);

/// Uniform bound on |F_N - F| over the strip |Im z| <= y around the real
/// axis, for the analytic continuation.  In the quadrant where
/// Re z * Im z >= 0 the real-axis bound applies unchanged; otherwise the
/// bound grows like e^{|xy|} and requires |y| <= A_N/(2 sqrt 2)
/// (std::domain_error beyond).
double strip_bound(complex z, int N);

/// Bound on the error of the n-th Maclaurin coefficient of F_N at 0,
/// from the continuation bound on a circle of radius sqrt(2/pi):
///   c^_N (2/pi)^{n/2} exp(-pi (N - 1/4))/sqrt(N + 1/2).
/// Requires N >= 4 (std::domain_error otherwise) so that the circle fits
/// inside the pole-free disc with margin.
double maclaurin_coefficient_bound(int n, int N);

/// Same form for the Maclaurin coefficients of C_N + i S_N (an extra
/// factor sqrt(2)).
double maclaurin_coefficient_bound_cs(int n, int N);

}  // namespace fresnel
