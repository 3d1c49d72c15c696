#include "orbivol/exact.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include "orbivol/error.hpp"

namespace orbivol {

// ---------------------------------------------------------------- Rational

Rational::Rational(const Integer& n, const Integer& d) {
    if (d == 0) throw InvariantViolation("zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    auto digits = [](const std::string& t, std::size_t from) {
        if (from >= t.size()) return false;
        return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(from), t.end(),
                           [](unsigned char c) { return std::isdigit(c) != 0; });
    };
    std::size_t slash = s.find('/');
    std::string n = s.substr(0, slash);
    std::size_t sign = (!n.empty() && (n[0] == '-' || n[0] == '+')) ? 1 : 0;
    if (!digits(n, sign)) throw ParseError(0, "malformed rational '" + s + "'");
    Integer num(n[0] == '+' ? n.substr(1) : n);
    if (slash == std::string::npos) return Rational(num);
    std::string d = s.substr(slash + 1);
    if (!digits(d, 0)) throw ParseError(0, "malformed rational '" + s + "'");
    Integer den(d);
    if (den == 0) throw ParseError(0, "zero denominator in '" + s + "'");
    return Rational(num, den);
}

Rational Rational::inverse() const {
    if (sign() == 0) throw InvariantViolation("inverse of zero");
    return Rational(v_.get_den(), v_.get_num());
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) throw InvariantViolation("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// --------------------------------------------------------------- Bernoulli

namespace {
std::mutex bernoulli_mutex;
std::vector<Rational> bernoulli_memo{Rational(1)};
}  // namespace

Rational bernoulli(unsigned long m) {
    std::lock_guard<std::mutex> lock(bernoulli_mutex);
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    for (unsigned long n = bernoulli_memo.size(); n <= m; ++n) {
        if (n >= 3 && n % 2 == 1) {
            bernoulli_memo.emplace_back(0);
            continue;
        }
        Rational s(0);
        for (unsigned long j = 0; j < n; ++j) {
            if (bernoulli_memo[j].sign() == 0) continue;
            s += Rational(binomial(n + 1, j)) * bernoulli_memo[j];
        }
        bernoulli_memo.push_back(-s / Rational(static_cast<long>(n + 1)));
    }
    return bernoulli_memo[m];
}

Rational bernoulli_polynomial(unsigned long m, const Rational& x) {
    Rational acc(0);
    Rational xp(1);  // x^{m-j}, built from j = m downwards
    for (unsigned long k = 0; k <= m; ++k) {
        unsigned long j = m - k;
        Rational b = bernoulli(j);
        if (b.sign() != 0) acc += Rational(binomial(m, j)) * b * xp;
        xp *= x;
    }
    return acc;
}

// ------------------------------------------------------------ RealInterval

namespace {
std::atomic<mpfr_prec_t> g_default_prec{256};

mpfr_prec_t resolve(mpfr_prec_t p) { return p > 0 ? p : g_default_prec.load(); }
}  // namespace

mpfr_prec_t default_precision() { return g_default_prec.load(); }

void set_default_precision(mpfr_prec_t bits) {
    if (bits < MPFR_PREC_MIN || bits > 1 << 20) throw InvariantViolation("precision out of range");
    g_default_prec.store(bits);
}

RealInterval::RealInterval(Prec p) : prec_(resolve(p.bits)) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(const Rational& q, mpfr_prec_t prec) : RealInterval(Prec{prec}) {
    mpfr_set_q(lo_, q.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.raw().get_mpq_t(), MPFR_RNDU);
}

RealInterval::RealInterval(long n, mpfr_prec_t prec) : RealInterval(Prec{prec}) {
    mpfr_set_si(lo_, n, MPFR_RNDD);
    mpfr_set_si(hi_, n, MPFR_RNDU);
}

RealInterval RealInterval::hull(const Rational& a, const Rational& b, mpfr_prec_t prec) {
    RealInterval r(Prec{prec});
    const Rational& lo = std::min(a, b);
    const Rational& hi = std::max(a, b);
    mpfr_set_q(r.lo_, lo.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.raw().get_mpq_t(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::pi(mpfr_prec_t prec) {
    RealInterval r(Prec{prec});
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::e(mpfr_prec_t prec) { return RealInterval(1, prec).exp(); }

RealInterval RealInterval::from_hex(const std::string& lo, const std::string& hi, mpfr_prec_t prec) {
    RealInterval r(Prec{prec});
    if (mpfr_set_str(r.lo_, lo.c_str(), 0, MPFR_RNDD) != 0 ||
        mpfr_set_str(r.hi_, hi.c_str(), 0, MPFR_RNDU) != 0)
        throw ParseError(0, "malformed interval endpoint");
    if (mpfr_cmp(r.lo_, r.hi_) > 0) throw ParseError(0, "interval endpoints out of order");
    return r;
}

RealInterval::RealInterval(const RealInterval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& o) noexcept : RealInterval(Prec{o.prec_}) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

RealInterval& RealInterval::operator=(const RealInterval& o) {
    if (this == &o) return *this;
    prec_ = o.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    return *this;
}

RealInterval& RealInterval::operator=(RealInterval&& o) noexcept {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

RealInterval::~RealInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

void RealInterval::set_prec(mpfr_prec_t p) {
    if (p <= prec_) return;
    mpfr_prec_round(lo_, p, MPFR_RNDD);
    mpfr_prec_round(hi_, p, MPFR_RNDU);
    prec_ = p;
}

RealInterval& RealInterval::operator+=(const RealInterval& o) {
    set_prec(o.prec_);
    mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
    return *this;
}

RealInterval& RealInterval::operator-=(const RealInterval& o) {
    set_prec(o.prec_);
    mpfr_sub(lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
    return *this;
}

RealInterval RealInterval::operator-() const {
    RealInterval r(Prec{prec_});
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

RealInterval& RealInterval::operator*=(const RealInterval& o) {
    set_prec(o.prec_);
    mpfr_t t, lo, hi;
    mpfr_inits2(prec_, t, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_inf(lo, 1);
    mpfr_set_inf(hi, -1);
    for (mpfr_srcptr a : {static_cast<mpfr_srcptr>(lo_), static_cast<mpfr_srcptr>(hi_)}) {
        for (mpfr_srcptr b : {o.lo_, o.hi_}) {
            mpfr_mul(t, a, b, MPFR_RNDD);
            mpfr_min(lo, lo, t, MPFR_RNDD);
            mpfr_mul(t, a, b, MPFR_RNDU);
            mpfr_max(hi, hi, t, MPFR_RNDU);
        }
    }
    mpfr_swap(lo_, lo);
    mpfr_swap(hi_, hi);
    mpfr_clears(t, lo, hi, static_cast<mpfr_ptr>(nullptr));
    return *this;
}

RealInterval& RealInterval::operator/=(const RealInterval& o) {
    if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0) throw InvariantViolation("interval division by an interval containing zero");
    set_prec(o.prec_);
    mpfr_t t, lo, hi;
    mpfr_inits2(prec_, t, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_inf(lo, 1);
    mpfr_set_inf(hi, -1);
    for (mpfr_srcptr a : {static_cast<mpfr_srcptr>(lo_), static_cast<mpfr_srcptr>(hi_)}) {
        for (mpfr_srcptr b : {o.lo_, o.hi_}) {
            mpfr_div(t, a, b, MPFR_RNDD);
            mpfr_min(lo, lo, t, MPFR_RNDD);
            mpfr_div(t, a, b, MPFR_RNDU);
            mpfr_max(hi, hi, t, MPFR_RNDU);
        }
    }
    mpfr_swap(lo_, lo);
    mpfr_swap(hi_, hi);
    mpfr_clears(t, lo, hi, static_cast<mpfr_ptr>(nullptr));
    return *this;
}

RealInterval RealInterval::abs() const {
    RealInterval r(*this);
    if (mpfr_sgn(lo_) >= 0) return r;
    if (mpfr_sgn(hi_) <= 0) return -r;
    mpfr_t a;
    mpfr_init2(a, prec_);
    mpfr_neg(a, lo_, MPFR_RNDU);
    mpfr_max(r.hi_, a, hi_, MPFR_RNDU);
    mpfr_set_zero(r.lo_, 1);
    mpfr_clear(a);
    return r;
}

RealInterval RealInterval::pow(long e) const {
    if (e == 0) return RealInterval(1, prec_);
    if (e < 0) return RealInterval(1, prec_) / pow(-e);
    RealInterval base = (e % 2 == 0) ? abs() : *this;
    RealInterval r(Prec{prec_});
    // x -> x^e is nondecreasing on the relevant domain
    mpfr_pow_si(r.lo_, base.lo_, e, MPFR_RNDD);
    mpfr_pow_si(r.hi_, base.hi_, e, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::exp() const {
    RealInterval r(Prec{prec_});
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::log() const {
    if (mpfr_sgn(lo_) <= 0) throw InvariantViolation("log of an interval not contained in (0, inf)");
    RealInterval r(Prec{prec_});
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw InvariantViolation("sqrt of an interval with negative part");
    RealInterval r(Prec{prec_});
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::pow(const RealInterval& y) const { return (y * log()).exp(); }

RealInterval RealInterval::widened(const RealInterval& delta) const {
    RealInterval d = delta.abs();
    RealInterval r(*this);
    r.set_prec(d.prec_);
    mpfr_sub(r.lo_, r.lo_, d.hi_, MPFR_RNDD);
    mpfr_add(r.hi_, r.hi_, d.hi_, MPFR_RNDU);
    return r;
}

std::optional<RealInterval> RealInterval::intersect(const RealInterval& o) const {
    RealInterval r(*this);
    r.set_prec(o.prec_);
    mpfr_max(r.lo_, r.lo_, o.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, r.hi_, o.hi_, MPFR_RNDU);
    if (mpfr_cmp(r.lo_, r.hi_) > 0) return std::nullopt;
    return r;
}

bool RealInterval::contains(const Rational& q) const {
    return mpfr_cmp_q(lo_, q.raw().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.raw().get_mpq_t()) >= 0;
}

bool RealInterval::contains(const RealInterval& o) const {
    return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
}

bool RealInterval::certainly_less(const RealInterval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }

bool RealInterval::certainly_positive() const { return mpfr_sgn(lo_) > 0; }

RealInterval RealInterval::width() const {
    RealInterval r(Prec{prec_});
    mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
    mpfr_set(r.lo_, r.hi_, MPFR_RNDD);
    return r;
}

double RealInterval::width_double() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

double RealInterval::relative_width() const {
    if (mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0) return std::numeric_limits<double>::infinity();
    mpfr_t w, m;
    mpfr_inits2(prec_, w, m, static_cast<mpfr_ptr>(nullptr));
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    if (mpfr_sgn(lo_) > 0) mpfr_set(m, lo_, MPFR_RNDD);
    else mpfr_neg(m, hi_, MPFR_RNDD);
    mpfr_div(w, w, m, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clears(w, m, static_cast<mpfr_ptr>(nullptr));
    return d;
}

namespace {
Rational exact_value(mpfr_srcptr x) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), x);
    return Rational(q);
}

Integer floor_of(mpfr_srcptr x) {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), x, MPFR_RNDD);
    return z;
}

std::string hex_of(mpfr_srcptr x) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%Ra", x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string sci(mpfr_srcptr x, int digits, bool up) {
    char* buf = nullptr;
    if (up) mpfr_asprintf(&buf, "%.*RUe", digits - 1, x);
    else mpfr_asprintf(&buf, "%.*RDe", digits - 1, x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}
}  // namespace

Rational RealInterval::lower_rational() const { return exact_value(lo_); }
Rational RealInterval::upper_rational() const { return exact_value(hi_); }
Rational RealInterval::midpoint_rational() const {
    return (exact_value(lo_) + exact_value(hi_)) / Rational(2);
}
double RealInterval::mid_double() const { return midpoint_rational().to_double(); }

Integer RealInterval::floor_lower() const { return floor_of(lo_); }
Integer RealInterval::floor_upper() const { return floor_of(hi_); }

std::string RealInterval::lower_hex() const { return hex_of(lo_); }
std::string RealInterval::upper_hex() const { return hex_of(hi_); }

std::string RealInterval::str(int digits) const {
    return "[" + sci(lo_, digits, false) + ", " + sci(hi_, digits, true) + "]";
}

std::string RealInterval::certified_digits(int* count) const {
    // Largest n such that both endpoints truncate (towards -inf) to the same
    // n-digit decimal; the exact value then starts with those digits.
    int best = 0;
    std::string out;
    int cap = static_cast<int>(static_cast<double>(prec_) * 0.30103) + 2;
    for (int n = 1; n <= cap; ++n) {
        std::string a = sci(lo_, n, false), b = sci(hi_, n, false);
        if (a != b) break;
        best = n;
        out = a;
    }
    if (count) *count = best;
    return out;
}

// ---------------------------------------------------- rational reconstruct

std::optional<Rational> rational_reconstruct(const RealInterval& x, const Integer& denominator_bound) {
    if (denominator_bound < 1) throw InvariantViolation("denominator bound must be positive");
    Rational w = x.upper_rational() - x.lower_rational();
    Rational limit = Rational(Integer(1), 2 * denominator_bound * denominator_bound);
    if (w >= limit) throw AmbiguousInterval("interval of width " + std::to_string(w.to_double()) +
                                            " cannot isolate a rational with denominator <= " +
                                            denominator_bound.get_str());
    // Any p/q in x with q <= B satisfies |m - p/q| < 1/(2q^2), hence is a
    // convergent of the midpoint m (Legendre).
    Rational m = x.midpoint_rational();
    Integer n = m.num(), d = m.den();
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    while (d != 0) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > denominator_bound) break;
        Rational c(p2, q2);
        if (x.contains(c)) return c;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        Integer r = n - a * d;
        n = d;
        d = r;
    }
    return std::nullopt;
}

}  // namespace orbivol
