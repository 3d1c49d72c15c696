#include <doctest.h>

#include "fixtures.hpp"
#include "orbivol/error.hpp"
#include "orbivol/zeta.hpp"

using namespace orbivol;

namespace {

struct Oracle {
    const char* label;
    const char* z1;  // zeta_k(-1)
    const char* z3;  // zeta_k(-3)
};

// Values computed independently with PARI/GP (lfun on nfinit).
const Oracle kOracles[] = {
    {"2.2.8.1", "1/12", "11/120"},       {"2.2.12.1", "1/6", "23/60"},
    {"2.2.13.1", "1/6", "29/60"},        {"2.2.17.1", "1/3", "41/30"},
    {"3.3.49.1", "-1/21", "79/210"},     {"3.3.81.1", "-1/9", "199/90"},
    {"3.3.148.1", "-1/3", "577/30"},     {"3.3.169.1", "-1/3", "11227/390"},
    {"4.4.725.1", "2/15", "541/15"},     {"4.4.1125.1", "4/15", "2522/15"},
    {"4.4.2048.1", "5/6", "87439/60"},   {"5.5.14641.1", "-20/33", "1695622/165"},
};

}  // namespace

TEST_SUITE("zeta") {

TEST_CASE("Riemann zeta at negative odd integers") {
    CHECK(riemann_zeta_negative(1) == Rational(-1, 12));
    CHECK(riemann_zeta_negative(2) == Rational(1, 120));
    CHECK(riemann_zeta_negative(3) == Rational(-1, 252));
}

TEST_CASE("Kronecker characters") {
    auto c5 = kronecker_character(Integer(5));
    CHECK(c5.conductor == 5);
    CHECK(c5(1) == 1);
    CHECK(c5(4) == 1);
    CHECK(c5(2) == -1);
    CHECK(c5(3) == -1);
    CHECK(c5(5) == 0);
    auto c8 = kronecker_character(Integer(8));
    CHECK(c8(1) == 1);
    CHECK(c8(7) == 1);
    CHECK(c8(3) == -1);
    CHECK(c8(5) == -1);
    auto c12 = kronecker_character(Integer(12));
    CHECK(c12(1) == 1);
    CHECK(c12(11) == 1);
    CHECK(c12(5) == -1);
    CHECK(c12(7) == -1);
    CHECK(c12.is_even());
    CHECK_THROWS_AS(kronecker_character(Integer(3)), NotFundamental);
    CHECK_THROWS_AS(kronecker_character(Integer(20)), NotFundamental);
    CHECK(is_fundamental_discriminant(Integer(24)));
    CHECK_FALSE(is_fundamental_discriminant(Integer(16)));
}

TEST_CASE("characters are completely multiplicative") {
    for (long D : {5L, 8L, 12L, 13L, 17L, 21L, 24L, 28L, 29L, 33L, 40L, 41L, 44L}) {
        auto chi = kronecker_character(Integer(D));
        for (long a = 0; a < D; ++a)
            for (long b = 0; b < D; ++b) REQUIRE(chi(a * b) == chi(a) * chi(b));
    }
}

TEST_CASE("generalized Bernoulli numbers and L-values") {
    auto c5 = kronecker_character(Integer(5));
    CHECK(generalized_bernoulli(c5, 2) == Rational(4, 5));
    CHECK(dirichlet_l_negative(c5, 1) == Rational(-2, 5));
    CHECK(riemann_zeta_negative(2) * dirichlet_l_negative(c5, 2) == Rational(1, 60));
    CHECK(dirichlet_l_negative(trivial_character(), 1) == Rational(-1, 12));
    DirichletCharacter odd{4, {0, 1, 0, -1}};
    CHECK_THROWS_AS(dirichlet_l_negative(odd, 1), OddCharacter);
}

TEST_CASE("Dedekind zeta of Q(sqrt5)") {
    ZetaValue z1 = dedekind_zeta_negative(fixtures::sqrt5(), 1);
    CHECK(z1.exact == Rational(1, 30));
    CHECK(z1.method == ZetaMethod::bernoulli_exact);
    CHECK(dedekind_zeta_negative(fixtures::sqrt5(), 2).exact == Rational(1, 60));
    CHECK(dedekind_zeta_negative(fixtures::sqrt5(), 3).exact == Rational(67, 630));
    CHECK(dedekind_zeta_negative(rational_field(), 2).exact == Rational(1, 120));
}

TEST_CASE("frozen oracle values") {
    for (const auto& o : kOracles) {
        CAPTURE(o.label);
        const auto& k = fixtures::field(o.label);
        CHECK(dedekind_zeta_negative(k, 1).exact == Rational::parse(o.z1));
        CHECK(dedekind_zeta_negative(k, 2).exact == Rational::parse(o.z3));
    }
}

TEST_CASE("higher degree values come from the functional equation") {
    ZetaValue z = dedekind_zeta_negative(fixtures::field("3.3.49.1"), 1);
    CHECK(z.method == ZetaMethod::functional_equation_reconstructed);
    REQUIRE(z.enclosure.has_value());
    CHECK(z.enclosure->contains(*z.exact));
    CHECK(z.prime_bound >= 10000);
}

TEST_CASE("explicit denominator bound goes through continued fractions") {
    ZetaValue z = dedekind_zeta_negative(fixtures::field("3.3.81.1"), 2, Integer(1000));
    CHECK(z.exact == Rational(199, 90));
}

TEST_CASE("known-denominator bounds") {
    CHECK(zeta_denominator_bound(2, 4) == 480);
    CHECK(zeta_denominator_bound(4, 4) == 16320);
    for (const auto& o : kOracles) {
        const auto& k = fixtures::field(o.label);
        for (unsigned n : {2u, 4u}) {
            Rational z = Rational::parse(n == 2 ? o.z1 : o.z3);
            Rational scaled = z * Rational(zeta_denominator_bound(n, k.degree));
            CHECK(scaled.is_integer());
        }
    }
}

TEST_CASE("sign of zeta_k(1-2i) is (-1)^{di}") {
    for (const char* label : {"2.2.5.1", "3.3.49.1", "3.3.81.1", "4.4.725.1", "5.5.14641.1"}) {
        const auto& k = fixtures::field(label);
        for (unsigned i = 1; i <= 2; ++i) {
            int want = (k.degree * i) % 2 == 0 ? 1 : -1;
            CHECK(dedekind_zeta_negative(k, i).exact->sign() == want);
        }
    }
}

TEST_CASE("zeta(2) and large-argument enclosures") {
    RealInterval z2 = dedekind_zeta_positive_enclosure(rational_field(), 2);
    RealInterval pi2_6 = RealInterval::pi().pow(2) / RealInterval(6);
    CHECK(z2.intersect(pi2_6).has_value());
    CHECK(z2.relative_width() < 1e-30);
    RealInterval z40 = dedekind_zeta_positive_enclosure(fixtures::sqrt5(), 40);
    CHECK(z40.certainly_greater(RealInterval(1)));
    CHECK(z40.certainly_less(RealInterval(1) + RealInterval(Rational(1, 10000000000L))));
    CHECK_THROWS_AS(dedekind_zeta_positive_enclosure(rational_field(), 2, 50), InvariantViolation);
}

TEST_CASE("both routes agree for quadratic fields") {
    for (const char* label : {"2.2.5.1", "2.2.8.1", "2.2.12.1", "2.2.13.1", "2.2.17.1"}) {
        const auto& k = fixtures::field(label);
        for (unsigned i = 1; i <= 8; ++i) {
            CAPTURE(label);
            CAPTURE(i);
            Rational exact = dedekind_zeta_negative(k, i).exact->abs();
            RealInterval analytic =
                dedekind_zeta_positive_enclosure(k, 2 * i) * functional_equation_factor(k.discriminant, k.degree, i);
            CHECK(analytic.contains(exact));
        }
    }
}

TEST_CASE("the pure Euler product also contains the exact value") {
    const auto& k = fixtures::sqrt5();
    RealInterval e = euler_product_enclosure(k, 2, 10000);
    RealInterval via_fe = RealInterval(Rational(1, 30)) / functional_equation_factor(k.discriminant, 2, 1);
    CHECK(e.contains(via_fe));
    CHECK(e.certainly_greater(RealInterval(1)));
}

TEST_CASE("zeta(n) <= 1 + 2/2^n for n >= 4") {
    for (unsigned n = 4; n <= 40; n += 2) {
        RealInterval z = dedekind_zeta_positive_enclosure(rational_field(), n);
        Rational bound = Rational(1) + Rational(Integer(2), ipow(Integer(2), n));
        CHECK(z.certainly_less(RealInterval(bound)));
    }
}

TEST_CASE("Hurwitz zeta at a = 1 is the Riemann zeta") {
    RealInterval h = hurwitz_zeta(4, Rational(1));
    RealInterval pi4_90 = RealInterval::pi().pow(4) / RealInterval(90);
    CHECK(h.intersect(pi4_90).has_value());
    CHECK(h.relative_width() < 1e-30);
}

TEST_CASE("product of negative values") {
    CHECK(zeta_negative_product(fixtures::sqrt5(), 2) == Rational(1, 1800));
    RealInterval p = zeta_product_enclosure(fixtures::sqrt5(), 2);
    CHECK(p.certainly_greater(RealInterval(1)));
    CHECK(p.certainly_less(RealInterval(2)));
}

}
