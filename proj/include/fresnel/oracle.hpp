#pragma once

#include <complex>
#include <vector>

#include "fresnel/core.hpp"
#include "fresnel/quadrature.hpp"

// Independent reference oracles: a Maclaurin power series for C and S, a
// Faddeeva-function rational model on the real line, direct adaptive
// quadrature of the defining integrals, and imaginary-axis erfc values
// via a Dawson-type series.  None of them share code paths with the
// trapezium rule beyond elementary constants, so agreement between rule
// and oracle is meaningful evidence of correctness.

namespace fresnel {

/// Rational (Fourier-Chebyshev) model of the Faddeeva function
/// w(z) = e^{-z^2} erfc(-iz), accurate in the upper half-plane; degree M
/// trades speed for accuracy (relative error roughly e^{-0.9 M} along the
/// rotated real line used for F).  Construction self-checks against
/// adaptive quadrature and throws std::runtime_error on disagreement.
class WeidemanModel {
  public:
    /// Build the degree-M model, 4 <= M <= 128 (std::invalid_argument
    /// otherwise).  M = 36 reaches ~1e-15 relative accuracy.
    explicit WeidemanModel(int M);

    int degree() const { return M_; }

    /// Evaluate w(z).  Intended for Im z >= 0.
    complex faddeeva(complex z) const;

    /// F(x) = (1/2) e^{i x^2} w(e^{i pi/4} x) with the model's w; handles
    /// negative x via F(-x) = 1 - F(x).
    complex fresnel(double x) const;

  private:
    int M_;
    double L_;
    std::vector<double> coeff_;  ///< a_0 .. a_M
};

/// Shared, lazily constructed model cache (thread-safe).  Returns a
/// reference valid for the program lifetime.
const WeidemanModel& weideman_model(int M);

/// Convenience wrapper: F(x) through the cached degree-M model.
complex weideman_F(double x, int M);

/// Maclaurin series for the Fresnel pair, summed by Horner in x^4:
///   C(x) = x   sum c_n x^{4n},  S(x) = x^3 sum s_n x^{4n}.
/// terms >= 1 required (std::invalid_argument).  The series is only
/// numerically trustworthy for |x| <~ 2; the first call beyond that prints
/// a one-time warning to stderr.
FresnelPair cs_power_series(double x, int terms);

/// F(x) by a Maclaurin series in t = x sqrt(2/pi) with the given number
/// of terms; used by quad_F below small |x| where the integral route
/// loses relative accuracy.
complex fresnel_from_series(double x, int terms = 30);

/// F(x) by adaptive quadrature of
///   F(x) = B(x) + (x/pi) e^{i(x^2+pi/4)} int_0^inf e^{-t^2}/(x^2+i t^2) dt
/// rearranged into two real integrals; |x| < 0.1 falls back to the series
/// route, x < 0 to the reflection F(-x) = 1 - F(x).
complex quad_F(double x, const QuadSettings& settings = {});

/// Faddeeva function w(z) for Im z > 0 (std::domain_error otherwise) by
/// adaptive quadrature of (iz/pi) int_{-inf}^{inf} e^{-t^2}/(z^2-t^2) dt.
complex quad_w(complex z, const QuadSettings& settings = {});

/// F(z) for complex z with Im(e^{i pi/4} z) > 0, via quad_w.
complex quad_F_complex(complex z, const QuadSettings& settings = {});

/// int_0^y e^{s^2} ds by its everywhere-positive Maclaurin series
/// sum_{n>=0} y^{2n+1} / (n! (2n+1)); no cancellation for any y.  Domain
/// 0 <= y <= 6.5 (std::domain_error otherwise; beyond that callers would
/// overflow when squaring the result).
double dawson_like(double y);

/// erfc on the imaginary axis: erfc(iy) = 1 - (2i/sqrt(pi)) int_0^y e^{s^2} ds,
/// with exact conjugate symmetry in y.
complex erfc_imag_axis(double y);

/// G(y) = |erfc(iy)| sqrt(1 + pi y^2) e^{-y^2}, the ratio of |erfc| on the
/// imaginary axis to its claimed sharp lower bound.  G(0) = 1 exactly and
/// G(y) > 1 for y != 0; evaluated in a combined form that cannot overflow
/// for 0 <= y <= 6.5.
double G_magnitude(double y);

}  // namespace fresnel
