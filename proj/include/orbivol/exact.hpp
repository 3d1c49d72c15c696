#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace orbivol {

using Integer = mpz_class;

// Big rational, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose
    Rational(const Integer& n) : v_(n) {}  // NOLINT
    template <class U>
    Rational(const __gmp_expr<mpz_t, U>& e) : v_(mpz_class(e)) {}  // NOLINT
    Rational(const Integer& n, const Integer& d);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // "p/q" or "p"; throws ParseError(0, ...) on malformed input.
    static Rational parse(const std::string& s);

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }
    Rational abs() const { return Rational(::abs(v_)); }
    Rational inverse() const;
    Rational pow(long e) const;
    std::string str() const;
    double to_double() const { return v_.get_d(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_;
};

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);
Integer ipow(const Integer& b, unsigned long e);

// B_m with B_1 = -1/2. Memoized; thread-safe.
Rational bernoulli(unsigned long m);
// B_m(x) = sum_j C(m,j) B_j x^{m-j}
Rational bernoulli_polynomial(unsigned long m, const Rational& x);

mpfr_prec_t default_precision();
void set_default_precision(mpfr_prec_t bits);

// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds the
// lower endpoint down and the upper endpoint up.
class RealInterval {
public:
    RealInterval() : RealInterval(Prec{0}) {}
    static RealInterval zero(mpfr_prec_t prec = 0) { return RealInterval(Prec{prec}); }
    RealInterval(const Rational& q, mpfr_prec_t prec = 0);  // NOLINT
    RealInterval(long n, mpfr_prec_t prec = 0);             // NOLINT
    static RealInterval hull(const Rational& a, const Rational& b, mpfr_prec_t prec = 0);
    static RealInterval pi(mpfr_prec_t prec = 0);
    static RealInterval e(mpfr_prec_t prec = 0);
    // from %Ra hex strings, exact
    static RealInterval from_hex(const std::string& lo, const std::string& hi, mpfr_prec_t prec);

    RealInterval(const RealInterval& o);
    RealInterval(RealInterval&& o) noexcept;
    RealInterval& operator=(const RealInterval& o);
    RealInterval& operator=(RealInterval&& o) noexcept;
    ~RealInterval();

    mpfr_prec_t precision() const { return prec_; }
    mpfr_srcptr lower() const { return lo_; }
    mpfr_srcptr upper() const { return hi_; }
    mpfr_ptr lower_mut() { return lo_; }
    mpfr_ptr upper_mut() { return hi_; }

    RealInterval& operator+=(const RealInterval& o);
    RealInterval& operator-=(const RealInterval& o);
    RealInterval& operator*=(const RealInterval& o);
    RealInterval& operator/=(const RealInterval& o);
    friend RealInterval operator+(RealInterval a, const RealInterval& b) { return a += b; }
    friend RealInterval operator-(RealInterval a, const RealInterval& b) { return a -= b; }
    friend RealInterval operator*(RealInterval a, const RealInterval& b) { return a *= b; }
    friend RealInterval operator/(RealInterval a, const RealInterval& b) { return a /= b; }
    RealInterval operator-() const;

    RealInterval pow(long e) const;
    RealInterval exp() const;
    RealInterval log() const;  // requires lo > 0
    RealInterval sqrt() const;
    // x^y for x > 0
    RealInterval pow(const RealInterval& y) const;
    RealInterval abs() const;
    // widen both endpoints by |delta| (outward)
    RealInterval widened(const RealInterval& delta) const;
    std::optional<RealInterval> intersect(const RealInterval& o) const;

    bool contains(const Rational& q) const;
    bool contains(const RealInterval& o) const;
    bool certainly_less(const RealInterval& o) const;  // hi < o.lo
    bool certainly_greater(const RealInterval& o) const { return o.certainly_less(*this); }
    bool certainly_positive() const;

    RealInterval width() const;   // upper bound on hi - lo as an interval [w, w]
    double width_double() const;
    // upper bound on width / |x|, +inf if the interval contains 0
    double relative_width() const;
    Rational lower_rational() const;
    Rational upper_rational() const;
    Rational midpoint_rational() const;
    double mid_double() const;

    // floor(lo) and floor(hi) as integers
    Integer floor_lower() const;
    Integer floor_upper() const;

    std::string lower_hex() const;
    std::string upper_hex() const;
    // "[lo, hi]" in decimal with the given number of significant digits
    std::string str(int digits = 20) const;
    // shortest decimal prefix shared by both endpoints, e.g. "1.64493406684822643647"
    std::string certified_digits(int* count = nullptr) const;

    friend std::ostream& operator<<(std::ostream& os, const RealInterval& x) { return os << x.str(); }

private:
    struct Prec {
        mpfr_prec_t bits;
    };
    explicit RealInterval(Prec p);
    void set_prec(mpfr_prec_t p);
    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

// Best rational p/q with q <= denominator_bound inside x, via continued
// fractions of the exact midpoint. Throws AmbiguousInterval when
// width(x) >= 1/(2*bound^2); nullopt when no such rational lies in x.
std::optional<Rational> rational_reconstruct(const RealInterval& x, const Integer& denominator_bound);

}  // namespace orbivol
