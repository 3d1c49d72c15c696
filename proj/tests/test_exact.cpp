#include <doctest.h>

#include <functional>
#include <random>

#include "orbivol/error.hpp"
#include "orbivol/exact.hpp"

using namespace orbivol;

TEST_SUITE("exact") {

TEST_CASE("rationals stay reduced with a positive denominator") {
    Rational q(Integer(6), Integer(-4));
    CHECK(q.num() == -3);
    CHECK(q.den() == 2);
    CHECK(q.str() == "-3/2");
    CHECK(Rational(Integer(10), Integer(5)).str() == "2");
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), InvariantViolation);
    CHECK(Rational::parse("-12/8") == Rational(-3, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/2x"), ParseError);
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK(Rational(-2, 3).inverse() == Rational(-3, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(3) == Rational(0));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    for (unsigned m = 3; m <= 61; m += 2) CHECK(bernoulli(m) == Rational(0));
}

TEST_CASE("bernoulli sign pattern for even indices") {
    for (unsigned m = 2; m <= 60; m += 2) {
        int want = (m / 2) % 2 == 1 ? 1 : -1;
        CHECK(bernoulli(m).sign() == want);
    }
}

TEST_CASE("bernoulli polynomial values") {
    CHECK(bernoulli_polynomial(1, Rational(0)) == Rational(-1, 2));
    CHECK(bernoulli_polynomial(2, Rational(0)) == Rational(1, 6));
    CHECK(bernoulli_polynomial(2, Rational(1, 2)) == Rational(-1, 12));
}

TEST_CASE("bernoulli polynomial difference identity") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
    for (unsigned m = 0; m <= 30; ++m)
        for (int k = 0; k < 100; ++k) {
            Rational x(Integer(num(rng)), Integer(den(rng)));
            Rational lhs = bernoulli_polynomial(m, x + Rational(1)) - bernoulli_polynomial(m, x);
            Rational rhs = m == 0 ? Rational(0) : Rational(static_cast<long>(m)) * x.pow(m - 1);
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("integer helpers") {
    CHECK(factorial(10) == 3628800);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 10) == 0);
    CHECK(ipow(Integer(3), 4) == 81);
}

TEST_CASE("interval enclosures of constants") {
    RealInterval pi = RealInterval::pi(256);
    CHECK(pi.certainly_greater(RealInterval(Rational(314159, 100000))));
    CHECK(pi.certainly_less(RealInterval(Rational(314160, 100000))));
    CHECK(pi.width_double() < 1e-70);
    RealInterval third(Rational(1, 3), 128);
    CHECK(third.contains(Rational(1, 3)));
    CHECK_FALSE(third.contains(Rational(333, 1000)));
    CHECK((third * RealInterval(3)).contains(Rational(1)));
    CHECK(RealInterval(2).sqrt().pow(2).contains(Rational(2)));
    CHECK(RealInterval(Rational(1, 2)).log().exp().contains(Rational(1, 2)));
    CHECK_THROWS_AS(RealInterval(1) / RealInterval::hull(Rational(-1), Rational(1)), InvariantViolation);
    CHECK_THROWS_AS(RealInterval(-1).log(), InvariantViolation);
}

TEST_CASE("interval hex round trip is exact") {
    RealInterval x = RealInterval::pi(200);
    RealInterval y = RealInterval::from_hex(x.lower_hex(), x.upper_hex(), x.precision());
    CHECK(x.lower_rational() == y.lower_rational());
    CHECK(x.upper_rational() == y.upper_rational());
}

TEST_CASE("certified digits") {
    int n = 0;
    std::string s = RealInterval::pi(256).certified_digits(&n);
    CHECK(s.rfind("3.14159265358979323846", 0) == 0);
    CHECK(n > 60);
}

TEST_CASE("rational reconstruction examples") {
    RealInterval x(Rational(1, 30), 140);
    CHECK(rational_reconstruct(x, Integer(1000000)) == Rational(1, 30));
    RealInterval y(Rational(11, 5760), 140);
    CHECK(rational_reconstruct(y, Integer(1000000)) == Rational(11, 5760));
    RealInterval wide = RealInterval::hull(Rational(0), Rational(1, 10));
    CHECK_THROWS_AS(rational_reconstruct(wide, Integer(1000000)), AmbiguousInterval);
    // an interval that holds no small-denominator rational
    RealInterval gap = RealInterval::hull(Rational::parse("1000000001/3000000000"), Rational::parse("1000000002/3000000000"));
    CHECK_FALSE(rational_reconstruct(gap, Integer(10)).has_value());
}

TEST_CASE("rational reconstruction round trip on random rationals") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-9999999999L, 9999999999L), den(1, 9999999999L);
    for (int k = 0; k < 1000; ++k) {
        Rational q(Integer(num(rng)), Integer(den(rng)));
        RealInterval x(q, 256);
        auto back = rational_reconstruct(x, Integer(10000000000L));
        REQUIRE(back.has_value());
        REQUIRE(*back == q);
    }
}

TEST_CASE("random expression trees stay enclosed") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> small(-50, 50), pos(1, 50);
    std::uniform_int_distribution<int> op(0, 3), depth(1, 6);
    struct Value {
        Rational exact;
        RealInterval approx;
    };
    std::function<Value(int)> build = [&](int d) -> Value {
        if (d == 0) {
            Rational q(Integer(small(rng)), Integer(pos(rng)));
            return {q, RealInterval(q, 64)};
        }
        Value a = build(d - 1), b = build(d - 1);
        switch (op(rng)) {
            case 0: return {a.exact + b.exact, a.approx + b.approx};
            case 1: return {a.exact - b.exact, a.approx - b.approx};
            case 2: return {a.exact * b.exact, a.approx * b.approx};
            default:
                if (b.exact.sign() == 0 || !(b.approx.certainly_positive() || (-b.approx).certainly_positive()))
                    return {a.exact * b.exact, a.approx * b.approx};
                return {a.exact / b.exact, a.approx / b.approx};
        }
    };
    for (int k = 0; k < 1000; ++k) {
        Value v = build(depth(rng));
        REQUIRE(v.approx.contains(v.exact));
    }
}

TEST_CASE("floor of an interval") {
    RealInterval x = RealInterval::hull(Rational(5, 2), Rational(7, 2));
    CHECK(x.floor_lower() == 2);
    CHECK(x.floor_upper() == 3);
    CHECK(RealInterval(Rational(-1, 2)).floor_lower() == -1);
}

}
