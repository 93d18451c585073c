#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

// Evaluation of the normalized complex Fresnel integral
//
//     F(x) = (1/2) erfc(e^{-i pi/4} x),   F(-x) = 1 - F(x),  F(0) = 1/2,
//
// and of the classical Fresnel cosine/sine integrals C(x), S(x), by an
// N-point midpoint trapezium sum plus a pole-correction boundary term.
// The rule converges like exp(-pi N): N = 12 already reaches double
// precision on the whole real line.

namespace fresnel {

using complex = std::complex<double>;

namespace detail {

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;
inline constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
// sqrt(pi), correctly rounded to double
inline constexpr double sqrt_pi = 1.7724538509055160273;
// e^{i pi/4}
inline constexpr complex eighth_turn{inv_sqrt2, inv_sqrt2};

// Step and cutoff used by make_rule; bound formulas reuse these so that
// rule construction and bound evaluation agree on A_N to the last bit.
inline double rule_step(double n) { return std::sqrt(pi / (n + 0.5)); }
inline double rule_cutoff(double n) { return pi / rule_step(n); }

// e^{i s} for real s
inline complex unit_phase(double s) { return {std::cos(s), std::sin(s)}; }

}  // namespace detail

/// Midpoint quadrature nodes t_k = (k - 1/2) h, k = 1..N, with the step
/// h = sqrt(pi/(N + 1/2)) that balances discretisation and truncation
/// error.  The cutoff A_N = pi/h = (N + 1/2) h is both the scale of the
/// first dropped node and the width of the pole-free strip.
struct QuadratureRule {
    int N = 0;
    double h = 0.0;
    double cutoff = 0.0;         ///< A_N = pi / h
    std::vector<double> nodes;   ///< t_k, ascending
    // Cached per-node values shared by every evaluation.
    std::vector<double> t2;      ///< t_k^2
    std::vector<double> t4;      ///< t_k^4
    std::vector<double> et2;     ///< exp(-t_k^2)
};

/// Fresnel cosine/sine pair (C(x), S(x)).
struct FresnelPair {
    double c = 0.0;
    double s = 0.0;
};

/// (sinh t + sin t)/(cosh t + cos t) and (sinh t - sin t)/(cosh t + cos t).
struct EdgeRatios {
    double plus = 0.0;
    double minus = 0.0;
};

/// Slowly varying auxiliary node sums used by fresnel_CS.
struct AuxSums {
    double a = 0.0;
    double b = 0.0;
};

/// Build the N-point rule.  Throws std::invalid_argument unless 1 <= N <= 1000.
QuadratureRule make_rule(int N);

/// Pole-correction term 1/(exp(2 A_N x e^{-i pi/4}) + 1).  Evaluated for
/// x >= 0 in the decaying form ez/(ez + 1), ez = exp(2 A_N e^{i 3pi/4} x),
/// whose exponent has non-positive real part; x < 0 via 1 - value(-x).
/// Never overflows for finite x.
complex boundary_term(double x, const QuadratureRule& rule);

/// N-point approximation to F(x): boundary term plus the phased node sum
///   (x/A_N) e^{i(x^2 + pi/4)} sum_{k=N..1} e^{-t_k^2}/(x^2 + i t_k^2).
/// The sum runs from the smallest to the largest term to limit rounding.
/// Negative x is routed through F(-x) = 1 - F(x) bit-exactly.
/// Throws std::invalid_argument for non-finite x.
complex fresnel_F(double x, const QuadratureRule& rule);

/// Analytic continuation of the rule off the real axis.  The continued
/// function is meromorphic with poles at +-e^{-i pi/4} t_k for k > N;
/// arguments closer than 1e-8 to a pole raise std::domain_error with the
/// offending distance.  On the real axis it matches fresnel_F exactly.
complex fresnel_F_complex(complex z, const QuadratureRule& rule);

/// Stable evaluation of (sinh t +- sin t)/(cosh t + cos t).  For |t| >= 39
/// both ratios saturate to sign(t) (exact in double precision); for
/// |t| < 1 the difference sinh t - sin t uses a four-term odd Taylor
/// expansion to avoid cancellation.
EdgeRatios edge_ratios(double t);

/// a(s) = s * sum_k e^{-t_k^2}/(s^2 + t_k^4) and
/// b(s) =     sum_k t_k^2 e^{-t_k^2}/(s^2 + t_k^4), summed k = N..1.
/// Requires s >= 0.
AuxSums aux_ab(double s, const QuadratureRule& rule);

/// N-point approximations to C(x) and S(x), sharing edge_ratios at
/// sqrt(pi) A_N x and aux_ab at s = (pi/2) x^2.  Odd in x bit-exactly.
/// Throws std::invalid_argument for non-finite x.
FresnelPair fresnel_CS(double x, const QuadratureRule& rule);

/// Convert a value F(sqrt(pi/2) x) into (C(x), S(x)):
///   C + iS = (1 + i)(1/2 - F).
FresnelPair convert_F_to_CS(complex f);

/// Inverse of convert_F_to_CS: F = 1/2 - (1 - i)(C + iS)/2.
complex convert_CS_to_F(FresnelPair cs);

/// Plain midpoint trapezium sum with general step h and K nodes:
///   (x h / pi) e^{i(x^2 + pi/4)} sum_{k=1..K} e^{-tau_k^2}/(x^2 + i tau_k^2),
/// tau_k = (k - 1/2) h.  Accurate only for x well away from 0; requires
/// x > 0 (std::invalid_argument otherwise).
complex plain_trapezium_F(double x, double h, int K);

/// Plain rule plus the pole correction R(h, x), which is the boundary term
/// for 0 < x < sqrt(2) pi / h, half of it at equality, and zero beyond.
/// Coincides with fresnel_F when h = rule.h and K = N and x is below the
/// threshold.  Requires x > 0.
complex hunter_regan_F(double x, double h, int K);

}  // namespace fresnel
