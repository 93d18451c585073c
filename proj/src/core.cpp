#include "fresnel/core.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace fresnel {

namespace {

using detail::eighth_turn;
using detail::pi;
using detail::unit_phase;

// Midpoint nodes t_k = (k - 1/2) h for k = 1..K and the per-node caches.
// Shared by make_rule and plain_trapezium_F so that a rule and a plain sum
// with the same (h, K) see bit-identical tables.
void fill_tables(double h, int K, std::vector<double>& nodes, std::vector<double>& t2,
                 std::vector<double>& t4, std::vector<double>& et2) {
    nodes.resize(static_cast<std::size_t>(K));
    t2.resize(static_cast<std::size_t>(K));
    t4.resize(static_cast<std::size_t>(K));
    et2.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const double t = (static_cast<double>(k) + 0.5) * h;
        nodes[static_cast<std::size_t>(k)] = t;
        t2[static_cast<std::size_t>(k)] = t * t;
        t4[static_cast<std::size_t>(k)] = t2[static_cast<std::size_t>(k)] * t2[static_cast<std::size_t>(k)];
        et2[static_cast<std::size_t>(k)] = std::exp(-t2[static_cast<std::size_t>(k)]);
    }
}

// (x/A) e^{i(x^2 + pi/4)} sum_k e^{-t_k^2}/(x^2 + i t_k^2), summed from the
// largest node down so the smallest contributions accumulate first.  The
// oscillatory factor is evaluated as the product eighth_turn *
// unit_phase(x*x); every other evaluation path in this library that
// carries the e^{i x^2} phase uses the same expression, so the (identical)
// rounding of the phase argument cancels when two paths are subtracted.
complex phased_node_sum(double x, double A, const std::vector<double>& t2,
                        const std::vector<double>& t4, const std::vector<double>& et2) {
    const double x2 = x * x;
    const double x4 = x2 * x2;
    if (!std::isfinite(x4)) return {0.0, 0.0};  // every node term underflows
    double sre = 0.0;
    double sim = 0.0;
    for (std::size_t k = t2.size(); k-- > 0;) {
        const double d = et2[k] / (x4 + t4[k]);
        sre += x2 * d;
        sim -= t2[k] * d;
    }
    return (x / A) * (eighth_turn * unit_phase(x2)) * complex(sre, sim);
}

// Pole-correction term for x >= 0 with cutoff A: 1/(exp(2 A x e^{-i pi/4}) + 1)
// in the decaying form ez/(ez + 1), ez = exp((-u, u)), u = sqrt(2) A x.
complex boundary_from_A(double x, double A) {
    const double u = std::sqrt(2.0) * A * x;
    const complex ez = std::exp(complex(-u, u));
    return ez / (ez + 1.0);
}

void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(who) + ": non-finite argument");
}

}  // namespace

QuadratureRule make_rule(int N) {
    if (N < 1 || N > 1000) throw std::invalid_argument("make_rule: N must be in [1, 1000]");
    QuadratureRule rule;
    rule.N = N;
    rule.h = detail::rule_step(static_cast<double>(N));
    rule.cutoff = pi / rule.h;
    fill_tables(rule.h, N, rule.nodes, rule.t2, rule.t4, rule.et2);
    return rule;
}

complex boundary_term(double x, const QuadratureRule& rule) {
    require_finite(x, "boundary_term");
    if (x < 0.0) {
        const complex b = boundary_from_A(-x, rule.cutoff);
        return {1.0 - b.real(), -b.imag()};
    }
    return boundary_from_A(x, rule.cutoff);
}

complex fresnel_F(double x, const QuadratureRule& rule) {
    require_finite(x, "fresnel_F");
    if (x < 0.0) {
        const complex f = fresnel_F(-x, rule);
        return {1.0 - f.real(), -f.imag()};
    }
    const complex bnd = boundary_from_A(x, rule.cutoff);
    return bnd + phased_node_sum(x, rule.cutoff, rule.t2, rule.t4, rule.et2);
}

complex fresnel_F_complex(complex z, const QuadratureRule& rule) {
    require_finite(z.real(), "fresnel_F_complex");
    require_finite(z.imag(), "fresnel_F_complex");
    if (z.imag() == 0.0) return fresnel_F(z.real(), rule);

    // The continued rule is meromorphic with simple poles at +-e^{-i pi/4} t_k
    // for k > N (the node sum cancels the k <= N boundary poles).  Refuse
    // arguments within 1e-8 of a pole: both constituent terms blow up there
    // and the cancellation leaves no correct digits.
    const complex zeta = z * eighth_turn;  // pole families sit at +-t_k on the real zeta axis
    const double h = rule.h;
    const double kmin = static_cast<double>(rule.N + 1);
    double dist = std::numeric_limits<double>::infinity();
    for (const complex w : {zeta, -zeta}) {
        double k0 = std::round(w.real() / h + 0.5);
        if (!(k0 >= kmin)) k0 = kmin;
        for (int j = -1; j <= 1; ++j) {
            const double k = k0 + static_cast<double>(j);
            if (k < kmin) continue;
            const double tk = (k - 0.5) * h;
            dist = std::min(dist, std::abs(w - complex(tk, 0.0)));
        }
    }
    if (dist <= 1e-8) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "fresnel_F_complex: argument within %.3e of a rule pole", dist);
        throw std::domain_error(msg);
    }

    const double A = rule.cutoff;
    const complex z2 = z * z;
    const double z2r = z2.real();
    const double z2i = z2.imag();
    double sre = 0.0;
    double sim = 0.0;
    for (std::size_t k = rule.t2.size(); k-- > 0;) {
        const double a = z2i + rule.t2[k];  // Im(z^2 + i t_k^2)
        const double den = z2r * z2r + a * a;
        const double d = rule.et2[k] / den;
        sre += z2r * d;
        sim -= a * d;
    }

    // Boundary term 1/(e^w + 1), w = 2 A z e^{-i pi/4}, in whichever of the
    // two algebraically equal forms keeps the exponential decaying.
    const complex w = (2.0 * A) * (z * complex(detail::inv_sqrt2, -detail::inv_sqrt2));
    complex bnd;
    if (w.real() >= 0.0) {
        const complex e = std::exp(-w);
        bnd = e / (e + 1.0);
    } else {
        const complex e = std::exp(w);
        bnd = 1.0 / (e + 1.0);
    }

    // e^{i z^2} = e^{-Im z^2} (cos Re z^2 + i sin Re z^2)
    const complex q = eighth_turn * (std::exp(-z2i) * unit_phase(z2r));
    return bnd + (z / A) * (q * complex(sre, sim));
}

EdgeRatios edge_ratios(double t) {
    require_finite(t, "edge_ratios");
    const double a = std::abs(t);
    if (a >= 39.0) {
        // cosh and sinh agree to the last bit here and the cos/sin parts are
        // below one ulp of the ratio, so both ratios saturate at sign(t).
        const double s = (t < 0.0) ? -1.0 : 1.0;
        return {s, s};
    }
    const double den = std::cosh(t) + std::cos(t);  // >= 2 - ulp, never small
    const double sh = std::sinh(t);
    const double sn = std::sin(t);
    double diff;
    if (a < 1.0) {
        // sinh t - sin t = t^3/3 + t^7/2520 + t^11/19958400 + t^15/653837184000 + ...
        // evaluated directly to dodge the t^3-scale cancellation.
        const double t2 = t * t;
        const double t4 = t2 * t2;
        diff = t * t2 *
               (1.0 / 3.0 +
                t4 * (1.0 / 2520.0 + t4 * (1.0 / 19958400.0 + t4 * (0.001 / 653837184.0))));
    } else {
        diff = sh - sn;
    }
    return {(sh + sn) / den, diff / den};
}

AuxSums aux_ab(double s, const QuadratureRule& rule) {
    if (!(s >= 0.0)) throw std::invalid_argument("aux_ab: s must be >= 0");
    const double s2 = s * s;
    double a = 0.0;
    double b = 0.0;
    for (std::size_t k = rule.t2.size(); k-- > 0;) {
        const double d = rule.et2[k] / (s2 + rule.t4[k]);
        a += d;
        b += rule.t2[k] * d;
    }
    return {s * a, b};
}

FresnelPair fresnel_CS(double x, const QuadratureRule& rule) {
    require_finite(x, "fresnel_CS");
    if (x < 0.0) {
        const FresnelPair p = fresnel_CS(-x, rule);
        return {-p.c, -p.s};
    }
    const double A = rule.cutoff;
    const double s = 0.5 * pi * x * x;
    const EdgeRatios r = edge_ratios(detail::sqrt_pi * A * x);
    const AuxSums ab = aux_ab(s, rule);
    const double w = detail::sqrt_pi * x / A;
    const double cs = std::cos(s);
    const double sn = std::sin(s);
    return {0.5 * r.plus + w * (ab.a * sn - ab.b * cs),
            0.5 * r.minus - w * (ab.a * cs + ab.b * sn)};
}

FresnelPair convert_F_to_CS(complex f) {
    // C + iS = (1 + i)(1/2 - F)
    const double ur = 0.5 - f.real();
    const double ui = -f.imag();
    return {ur - ui, ur + ui};
}

complex convert_CS_to_F(FresnelPair cs) {
    // F = 1/2 - (1 - i)(C + iS)/2
    return {0.5 - 0.5 * (cs.c + cs.s), 0.5 * (cs.c - cs.s)};
}

complex plain_trapezium_F(double x, double h, int K) {
    if (!(x > 0.0)) throw std::invalid_argument("plain_trapezium_F: requires x > 0");
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("plain_trapezium_F: requires h > 0");
    if (K < 1) throw std::invalid_argument("plain_trapezium_F: requires K >= 1");
    std::vector<double> nodes, t2, t4, et2;
    fill_tables(h, K, nodes, t2, t4, et2);
    return phased_node_sum(x, pi / h, t2, t4, et2);
}

complex hunter_regan_F(double x, double h, int K) {
    const complex plain = plain_trapezium_F(x, h, K);  // validates x, h, K
    const double threshold = std::sqrt(2.0) * (pi / h);
    if (x < threshold) return boundary_from_A(x, pi / h) + plain;
    if (x == threshold) return 0.5 * boundary_from_A(x, pi / h) + plain;
    return plain;
}

}  // namespace fresnel
