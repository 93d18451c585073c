#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fresnel/bounds.hpp"
#include "fresnel/core.hpp"
#include "fresnel/oracle.hpp"

using namespace fresnel;

namespace {

double abs_err(complex a, complex b) { return std::abs(a - b); }

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return xs;
}

}  // namespace

TEST_CASE("rule construction validates and tabulates the midpoint nodes") {
    CHECK_THROWS_AS(make_rule(0), std::invalid_argument);
    CHECK_THROWS_AS(make_rule(-3), std::invalid_argument);
    CHECK_THROWS_AS(make_rule(1001), std::invalid_argument);

    const QuadratureRule rule = make_rule(12);
    CHECK(rule.N == 12);
    CHECK(rule.h == std::sqrt(detail::pi / 12.5));
    CHECK(rule.cutoff == detail::pi / rule.h);
    REQUIRE(rule.nodes.size() == 12);
    REQUIRE(rule.t2.size() == 12);
    REQUIRE(rule.t4.size() == 12);
    REQUIRE(rule.et2.size() == 12);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double t = (static_cast<double>(k) + 0.5) * rule.h;
        CHECK(rule.nodes[k] == t);
        CHECK(rule.t2[k] == t * t);
        CHECK(rule.t4[k] == (t * t) * (t * t));
        CHECK(rule.et2[k] == std::exp(-(t * t)));
    }
    // the cutoff is also where an (N+1)-th node would sit
    CHECK(rule.cutoff == doctest::Approx(12.5 * rule.h).epsilon(1e-15));
}

TEST_CASE("12-node values match independently computed references") {
    const QuadratureRule rule = make_rule(12);

    // frozen reference values of the 12-node approximant itself
    const complex f12_1(0.01536789402789203489428, 0.2370738183204971225955);
    const complex f12_half(0.2852234178749161970773, 0.1816795132949207964311);
    CHECK(abs_err(fresnel_F(1.0, rule), f12_1) <= 1e-16);
    CHECK(abs_err(fresnel_F(0.5, rule), f12_half) <= 1e-16);

    // frozen true values (the approximation error at N=12 is ~1e-19 here,
    // far below double rounding)
    const complex f_1(0.01536789402789203480925, 0.2370738183204971225808);
    const complex f_2(-0.005155856012744745821231, -0.1369628797317699495106);
    const complex f_10(0.02733474814191149633069, 0.006963252214327807557448);
    const complex f_m1(0.9846321059721079651907, -0.2370738183204971225808);
    CHECK(abs_err(fresnel_F(1.0, rule), f_1) <= 5e-17);
    CHECK(abs_err(fresnel_F(2.0, rule), f_2) <= 5e-17);
    CHECK(abs_err(fresnel_F(10.0, rule), f_10) <= 5e-17);
    CHECK(abs_err(fresnel_F(-1.0, rule), f_m1) <= 1e-16);

    const complex f0 = fresnel_F(0.0, rule);
    CHECK(f0.real() == 0.5);
    CHECK(f0.imag() == 0.0);
}

TEST_CASE("reflection identity holds at the bit level") {
    for (const int N : {5, 12}) {
        const QuadratureRule rule = make_rule(N);
        for (const double x : linspace(0.0, 30.0, 101)) {
            const complex fp = fresnel_F(x, rule);
            const complex fm = fresnel_F(-x, rule);
            CHECK(fm.real() == 1.0 - fp.real());
            CHECK(fm.imag() == -fp.imag());
        }
    }
}

TEST_CASE("C and S are odd at the bit level") {
    for (const int N : {5, 12}) {
        const QuadratureRule rule = make_rule(N);
        for (const double x : linspace(0.0, 30.0, 101)) {
            const FresnelPair p = fresnel_CS(x, rule);
            const FresnelPair m = fresnel_CS(-x, rule);
            CHECK(m.c == -p.c);
            CHECK(m.s == -p.s);
        }
    }
}

TEST_CASE("the full approximant is the plain node sum plus the boundary term, bit for bit") {
    for (const int N : {5, 12}) {
        const QuadratureRule rule = make_rule(N);
        for (const double x : linspace(0.01, 40.0, 101)) {
            const complex whole = fresnel_F(x, rule);
            const complex parts =
                boundary_term(x, rule) + plain_trapezium_F(x, rule.h, rule.N);
            CHECK(whole.real() == parts.real());
            CHECK(whole.imag() == parts.imag());
        }
    }
}

TEST_CASE("the boundary-weighted truncated rule coincides with the approximant below the cutoff") {
    for (const int N : {5, 12}) {
        const QuadratureRule rule = make_rule(N);
        const double threshold = std::sqrt(2.0) * rule.cutoff;
        for (const double x : linspace(0.01, 40.0, 101)) {
            if (!(x < threshold)) continue;
            const complex a = hunter_regan_F(x, rule.h, rule.N);
            const complex b = fresnel_F(x, rule);
            CHECK(a.real() == b.real());
            CHECK(a.imag() == b.imag());
        }
        // exactly at the switch point the boundary term carries weight 1/2
        const complex at = hunter_regan_F(threshold, rule.h, rule.N);
        const complex half = 0.5 * boundary_term(threshold, rule) +
                             plain_trapezium_F(threshold, rule.h, rule.N);
        CHECK(at.real() == half.real());
        CHECK(at.imag() == half.imag());
        // beyond it the boundary term is dropped entirely
        const double beyond = threshold * 1.25;
        const complex far = hunter_regan_F(beyond, rule.h, rule.N);
        const complex plain = plain_trapezium_F(beyond, rule.h, rule.N);
        CHECK(far.real() == plain.real());
        CHECK(far.imag() == plain.imag());
    }
}

TEST_CASE("edge ratio helper matches frozen references and saturates") {
    struct Row {
        double t, plus, minus;
    };
    const Row rows[] = {
        {0.25, 0.249967453129922825787, 0.002603754987590639933334},
        {0.5, 0.4989609961147318313235, 0.02078076485634940130529},
        {1.0, 0.9679795965835242381711, 0.1601866859514727584316},
        {2.0, 1.355675912658206260005, 0.8121707420191828269469},
        {10.0, 1.000026788455109196252, 1.000125590063255422002},
        {38.5, 1.000000000000000000834, 0.9999999999999999461538},
    };
    for (const Row& r : rows) {
        const EdgeRatios e = edge_ratios(r.t);
        CHECK(std::abs(e.plus - r.plus) <= 5e-16 * std::abs(r.plus));
        CHECK(std::abs(e.minus - r.minus) <= 5e-16 * std::abs(r.minus) + 1e-18);
        // both ratios are odd functions of t
        const EdgeRatios o = edge_ratios(-r.t);
        CHECK(o.plus == -e.plus);
        CHECK(o.minus == -e.minus);
    }
    // hyperbolic terms dominate in double precision from |t| = 39 on
    CHECK(edge_ratios(39.0).plus == 1.0);
    CHECK(edge_ratios(39.0).minus == 1.0);
    CHECK(edge_ratios(500.0).plus == 1.0);
    CHECK(edge_ratios(-500.0).minus == -1.0);
    const EdgeRatios z = edge_ratios(0.0);
    CHECK(z.plus == 0.0);
    CHECK(z.minus == 0.0);
}

TEST_CASE("C and S match frozen references") {
    const QuadratureRule rule = make_rule(12);
    struct Row {
        double x, c, s;
    };
    const Row rows[] = {
        {0.5, 0.4923442258714463928788, 0.06473243285999927761148},
        {1.0, 0.7798934003768228294742, 0.4382591473903547660768},
        {1.5, 0.4452611760398215350646, 0.6975049600820930130807},
        {2.0, 0.4882534060753407545002, 0.3434156783636982421953},
        {5.0, 0.5636311887040122311021, 0.4991913819171168867519},
    };
    for (const Row& r : rows) {
        const FresnelPair p = fresnel_CS(r.x, rule);
        CHECK(std::abs(p.c - r.c) <= 1e-15);
        CHECK(std::abs(p.s - r.s) <= 1e-15);
    }
    const FresnelPair zero = fresnel_CS(0.0, rule);
    CHECK(zero.c == 0.0);
    CHECK(zero.s == 0.0);
}

TEST_CASE("C and S have the right leading behavior at small arguments") {
    const QuadratureRule rule = make_rule(12);
    const double pi_sixth = detail::pi / 6.0;
    for (const double x : {1e-3, 1e-2}) {
        const FresnelPair p = fresnel_CS(x, rule);
        const double x4 = x * x * x * x;
        // the next series terms are (pi^2/40) x^4 for C and (pi^3/336) x^4
        // relative for S, so deviations must shrink quartically
        CHECK(std::abs(p.c / x - 1.0) <= 0.5 * x4 + 1e-12);
        CHECK(std::abs(p.s / (x * x * x) - pi_sixth) <= 0.2 * x4 + 1e-12);
    }
}

TEST_CASE("the C/S route and the F route agree through the argument change") {
    const QuadratureRule rule = make_rule(12);
    const double scale = std::sqrt(0.5 * detail::pi);
    for (const double x : linspace(0.0, 20.0, 1000)) {
        const FresnelPair direct = fresnel_CS(x, rule);
        const FresnelPair via_f = convert_F_to_CS(fresnel_F(scale * x, rule));
        CHECK(std::abs(direct.c - via_f.c) <= 1e-14);
        CHECK(std::abs(direct.s - via_f.s) <= 1e-14);
    }
}

TEST_CASE("the two conversions are mutually inverse to rounding") {
    const QuadratureRule rule = make_rule(12);
    for (const double x : linspace(0.1, 10.0, 37)) {
        const complex f = fresnel_F(x, rule);
        const complex back = convert_CS_to_F(convert_F_to_CS(f));
        CHECK(std::abs(back - f) <= 4e-16);
    }
}

TEST_CASE("complex evaluation dispatches exactly to the real path on the real axis") {
    const QuadratureRule rule = make_rule(12);
    for (const double x : {0.0, 0.5, 1.0, -2.0, 17.0}) {
        const complex a = fresnel_F_complex(complex(x, 0.0), rule);
        const complex b = fresnel_F(x, rule);
        CHECK(a.real() == b.real());
        CHECK(a.imag() == b.imag());
    }
}

TEST_CASE("complex evaluation agrees with adaptive quadrature off the axis") {
    const QuadratureRule rule = make_rule(12);
    for (const complex z : {complex(1.0, 1.0), complex(0.3, 0.2), complex(2.0, -0.5),
                            complex(0.5, 2.0)}) {
        const complex got = fresnel_F_complex(z, rule);
        const complex ref = quad_F_complex(z);
        CHECK(std::abs(got - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("complex evaluation rejects arguments beside its poles") {
    const QuadratureRule rule = make_rule(12);
    // first pole beyond the tabulated nodes sits at distance (N + 1/2) h
    // along the direction (1 - i)/sqrt(2)
    const double t13 = 12.5 * rule.h;
    const complex dir(detail::inv_sqrt2, -detail::inv_sqrt2);
    const complex pole = t13 * dir;
    CHECK_THROWS_AS(fresnel_F_complex(pole, rule), std::domain_error);
    CHECK_THROWS_AS(fresnel_F_complex(pole + complex(1e-9, 0.0), rule),
                    std::domain_error);
    CHECK_THROWS_AS(fresnel_F_complex(-pole, rule), std::domain_error);
    CHECK_NOTHROW(fresnel_F_complex(pole + complex(2e-8, 0.0), rule));
    // tabulated-node directions are regular points of the corrected rule
    const double t5 = 4.5 * rule.h;
    CHECK_NOTHROW(fresnel_F_complex(t5 * dir + complex(1e-3, 0.0), rule));
}

TEST_CASE("complex evaluation satisfies the reflection conjugation symmetry") {
    const QuadratureRule rule = make_rule(12);
    for (const double x : linspace(0.1, 6.0, 10)) {
        for (const double y : linspace(0.05, 0.45, 10)) {
            const complex z(x, y);
            const complex a = std::conj(fresnel_F_complex(z, rule));
            const complex b = fresnel_F_complex(complex(0.0, 1.0) * std::conj(z), rule);
            CHECK(std::abs(a - b) <= 1e-13 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("a 5-node rule already meets its error bound on a coarse grid") {
    const QuadratureRule rule = make_rule(5);
    for (const double x : linspace(0.0, 50.0, 200)) {
        const double measured = std::abs(fresnel_F(x, rule) - quad_F(x));
        const double eta = pointwise_bound(x, 5).total;
        CHECK(measured <= eta + 10.0 * std::numeric_limits<double>::epsilon());
    }
}

TEST_CASE("non-finite and invalid arguments are rejected") {
    const QuadratureRule rule = make_rule(4);
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(fresnel_F(inf, rule), std::invalid_argument);
    CHECK_THROWS_AS(fresnel_F(nan, rule), std::invalid_argument);
    CHECK_THROWS_AS(fresnel_CS(nan, rule), std::invalid_argument);
    CHECK_THROWS_AS(fresnel_F_complex(complex(nan, 0.0), rule), std::invalid_argument);
    CHECK_THROWS_AS(plain_trapezium_F(0.0, rule.h, 4), std::invalid_argument);
    CHECK_THROWS_AS(plain_trapezium_F(-1.0, rule.h, 4), std::invalid_argument);
    CHECK_THROWS_AS(plain_trapezium_F(1.0, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(plain_trapezium_F(1.0, rule.h, 0), std::invalid_argument);
    CHECK_THROWS_AS(hunter_regan_F(0.0, rule.h, 4), std::invalid_argument);
}
