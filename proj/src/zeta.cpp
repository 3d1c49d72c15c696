#include "orbivol/zeta.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <mutex>
#include <unordered_map>

#include "orbivol/error.hpp"

namespace orbivol {

int DirichletCharacter::operator()(long n) const {
    long f = static_cast<long>(conductor);
    long r = ((n % f) + f) % f;
    return values[static_cast<std::size_t>(r)];
}

std::string to_string(ZetaMethod m) {
    switch (m) {
        case ZetaMethod::bernoulli_exact: return "bernoulli_exact";
        case ZetaMethod::functional_equation_reconstructed: return "functional_equation_reconstructed";
        case ZetaMethod::euler_product_enclosure: return "euler_product_enclosure";
    }
    return "unknown";
}

Rational riemann_zeta_negative(unsigned i) {
    if (i < 1) throw InvariantViolation("riemann_zeta_negative needs i >= 1");
    return -bernoulli(2 * i) / Rational(2 * static_cast<long>(i));
}

bool is_fundamental_discriminant(const Integer& D) {
    if (D == 1 || D == 0) return false;
    auto squarefree = [](Integer m) {
        if (m < 0) m = -m;
        for (unsigned long p = 2; Integer(p) * p <= m; ++p) {
            if (mpz_divisible_ui_p(m.get_mpz_t(), p * p)) return false;
        }
        return true;
    };
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), D.get_mpz_t(), 4);
    if (r == 1) return squarefree(D);
    if (r != 0) return false;
    Integer m = D / 4;
    mpz_fdiv_r_ui(r.get_mpz_t(), m.get_mpz_t(), 4);
    return (r == 2 || r == 3) && squarefree(m);
}

DirichletCharacter kronecker_character(const Integer& D) {
    if (D <= 1 || !is_fundamental_discriminant(D))
        throw NotFundamental(D.get_str() + " is not a positive fundamental discriminant");
    DirichletCharacter chi;
    chi.conductor = D.get_ui();
    chi.values.assign(chi.conductor, 0);
    for (unsigned long a = 0; a < chi.conductor; ++a) chi.values[a] = mpz_kronecker_ui(D.get_mpz_t(), a);
    return chi;
}

DirichletCharacter trivial_character() { return {}; }

Rational generalized_bernoulli(const DirichletCharacter& chi, unsigned n) {
    Integer f(chi.conductor);
    Rational sum(0);
    for (unsigned long a = 1; a <= chi.conductor; ++a) {
        int c = chi(static_cast<long>(a));
        if (c == 0) continue;
        Rational b = bernoulli_polynomial(n, Rational(Integer(a), f));
        sum += c > 0 ? b : -b;
    }
    return sum * Rational(ipow(f, n - 1));
}

Rational dirichlet_l_negative(const DirichletCharacter& chi, unsigned i) {
    if (!chi.is_even()) throw OddCharacter("L(1-2i, chi) here needs an even character");
    if (i < 1) throw InvariantViolation("dirichlet_l_negative needs i >= 1");
    return -generalized_bernoulli(chi, 2 * i) / Rational(2 * static_cast<long>(i));
}

Integer zeta_denominator_bound(unsigned n, int degree) {
    if (n == 0 || n % 2 == 1 || degree < 1) throw InvariantViolation("zeta_denominator_bound needs even n and degree >= 1");
    Integer w = 1;
    // 2-part: 2^a with 2^{a-2} | n 2^{v_2(d)}
    unsigned v2n = 0, v2d = 0;
    for (unsigned m = n; m % 2 == 0; m /= 2) ++v2n;
    for (int m = degree; m % 2 == 0; m /= 2) ++v2d;
    w *= ipow(2, 2 + v2n + v2d);
    // odd l: largest a with phi(l^a) | n * gcd(d, phi(l^a))
    unsigned long limit = static_cast<unsigned long>(n) * static_cast<unsigned long>(degree) + 1;
    for (unsigned long l : primes_up_to(limit)) {
        if (l == 2) continue;
        unsigned long phi = l - 1;
        while (true) {
            unsigned long g = std::gcd(static_cast<unsigned long>(degree), phi);
            if ((static_cast<unsigned long>(n) * g) % phi != 0) break;
            w *= l;
            phi *= l;
        }
    }
    return w;
}

// ------------------------------------------------------ analytic side

namespace {

std::mutex primes_mu;
std::vector<unsigned long> prime_list;
unsigned long prime_list_bound = 0;

std::vector<unsigned long> primes_through(unsigned long P) {
    std::lock_guard<std::mutex> lock(primes_mu);
    if (P > prime_list_bound) {
        prime_list = primes_up_to(P);
        prime_list_bound = P;
    }
    auto end = std::upper_bound(prime_list.begin(), prime_list.end(), P);
    return {prime_list.begin(), end};
}

// residue degrees of the places above each prime, flattened
struct SplitTable {
    unsigned long bound = 0;
    std::vector<std::uint8_t> degs;
    std::vector<std::uint32_t> offsets{0};
};

std::mutex split_mu;
std::unordered_map<std::string, std::shared_ptr<const SplitTable>> split_tables;

std::shared_ptr<const SplitTable> split_table(const FieldDescriptor& field, unsigned long P,
                                              const std::vector<unsigned long>& primes) {
    std::string key = field_fingerprint(field);
    std::shared_ptr<const SplitTable> have;
    {
        std::lock_guard<std::mutex> lock(split_mu);
        auto it = split_tables.find(key);
        if (it != split_tables.end()) have = it->second;
    }
    if (have && have->bound >= P) return have;
    auto t = std::make_shared<SplitTable>(have ? *have : SplitTable{});
    std::size_t start = t->offsets.size() - 1;
    for (std::size_t k = start; k < primes.size(); ++k) {
        unsigned long p = primes[k];
        SplittingType st = compute_splitting(field, p);
        if (!st.certified) throw UncertifiedPrime(p, field.label);
        for (auto [f, e] : st.factors) t->degs.push_back(static_cast<std::uint8_t>(f));
        t->offsets.push_back(static_cast<std::uint32_t>(t->degs.size()));
    }
    t->bound = P;
    std::lock_guard<std::mutex> lock(split_mu);
    auto& slot = split_tables[key];
    if (!slot || slot->bound < t->bound) slot = t;
    return slot;
}

}  // namespace

RealInterval euler_product_enclosure(const FieldDescriptor& field, unsigned s, unsigned long prime_bound,
                                     mpfr_prec_t prec) {
    if (s < 2) throw InvariantViolation("Euler product needs s >= 2");
    if (prime_bound < 2) throw InvariantViolation("prime bound too small");
    RealInterval out = RealInterval::zero(prec);
    mpfr_prec_t pr = out.precision();
    std::vector<unsigned long> primes = primes_through(prime_bound);
    std::shared_ptr<const SplitTable> table;
    if (field.degree > 1) table = split_table(field, prime_bound, primes);

    mpfr_t lo, hi, xl, xh;
    mpfr_inits2(pr, lo, hi, xl, xh, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(lo, 1, MPFR_RNDD);
    mpfr_set_ui(hi, 1, MPFR_RNDU);
    auto factor = [&](unsigned long p, unsigned f) {
        // (1 - p^{-sf})^{-1} = 1 + 1/(p^{sf} - 1)
        mpfr_ui_pow_ui(xl, p, static_cast<unsigned long>(s) * f, MPFR_RNDD);
        mpfr_ui_pow_ui(xh, p, static_cast<unsigned long>(s) * f, MPFR_RNDU);
        mpfr_sub_ui(xh, xh, 1, MPFR_RNDU);
        mpfr_ui_div(xh, 1, xh, MPFR_RNDD);
        mpfr_add_ui(xh, xh, 1, MPFR_RNDD);
        mpfr_mul(lo, lo, xh, MPFR_RNDD);
        mpfr_sub_ui(xl, xl, 1, MPFR_RNDD);
        mpfr_ui_div(xl, 1, xl, MPFR_RNDU);
        mpfr_add_ui(xl, xl, 1, MPFR_RNDU);
        mpfr_mul(hi, hi, xl, MPFR_RNDU);
    };
    for (std::size_t k = 0; k < primes.size(); ++k) {
        if (!table) {
            factor(primes[k], 1);
            continue;
        }
        for (std::uint32_t j = table->offsets[k]; j < table->offsets[k + 1]; ++j) factor(primes[k], table->degs[j]);
    }
    mpfr_set(out.lower_mut(), lo, MPFR_RNDD);
    mpfr_set(out.upper_mut(), hi, MPFR_RNDU);
    mpfr_clears(lo, hi, xl, xh, static_cast<mpfr_ptr>(nullptr));

    RealInterval P(static_cast<long>(prime_bound), pr);
    RealInterval one(1, pr);
    long sl = static_cast<long>(s);
    RealInterval tail = RealInterval(field.degree, pr) * P.pow(1 - sl) /
                        (RealInterval(sl - 1, pr) * (one - P.pow(-sl)));
    RealInterval grow = tail.exp();
    // true value lies in [lo, hi * exp(tail)]
    RealInterval upper = RealInterval(out) * grow;
    mpfr_set(out.upper_mut(), upper.upper(), MPFR_RNDU);
    return out;
}

RealInterval hurwitz_zeta(unsigned s, const Rational& a, mpfr_prec_t prec) {
    if (s < 2) throw InvariantViolation("hurwitz_zeta needs s >= 2");
    if (a <= Rational(0) || a > Rational(1)) throw InvariantViolation("hurwitz_zeta needs 0 < a <= 1");
    RealInterval acc = RealInterval::zero(prec);
    mpfr_prec_t pr = acc.precision();
    long N = std::max<long>(24, static_cast<long>(pr) / 4);
    long M = N;
    long sl = static_cast<long>(s);
    for (long n = 0; n < N; ++n) acc += RealInterval(Rational(n) + a, pr).pow(-sl);
    RealInterval x(Rational(N) + a, pr);
    acc += x.pow(1 - sl) / RealInterval(sl - 1, pr);
    acc += x.pow(-sl) / RealInterval(2, pr);
    // rising factorial (s)_{2k-1}, updated incrementally
    Integer rising = s;  // (s)_1
    auto coeff = [&](long k) {
        return bernoulli(static_cast<unsigned long>(2 * k)) * Rational(rising) /
               Rational(factorial(static_cast<unsigned long>(2 * k)));
    };
    for (long k = 1; k <= M; ++k) {
        if (k > 1) rising *= Integer(sl + 2 * k - 3) * Integer(sl + 2 * k - 2);
        acc += RealInterval(coeff(k), pr) * x.pow(-sl - 2 * k + 1);
    }
    // |remainder| <= 2 |first omitted term|
    rising *= Integer(sl + 2 * M - 1) * Integer(sl + 2 * M);
    RealInterval rem = RealInterval(coeff(M + 1).abs() * Rational(2), pr) * x.pow(-sl - 2 * M - 1);
    return acc.widened(rem);
}

namespace {

RealInterval riemann_zeta_enclosure(unsigned s, mpfr_prec_t prec) {
    RealInterval z = RealInterval::zero(prec);
    mpfr_zeta_ui(z.lower_mut(), s, MPFR_RNDD);
    mpfr_zeta_ui(z.upper_mut(), s, MPFR_RNDU);
    return z;
}

RealInterval quadratic_zeta_enclosure(const FieldDescriptor& field, unsigned s, mpfr_prec_t prec) {
    RealInterval z = riemann_zeta_enclosure(s, prec);
    if (field.degree == 1) return z;
    DirichletCharacter chi = kronecker_character(field.discriminant);
    Integer f(chi.conductor);
    RealInterval L(0L, prec);
    for (unsigned long a = 1; a <= chi.conductor; ++a) {
        int c = chi(static_cast<long>(a));
        if (c == 0) continue;
        RealInterval h = hurwitz_zeta(s, Rational(Integer(a), f), prec);
        if (c > 0) L += h;
        else L -= h;
    }
    L *= RealInterval(Rational(f), prec).pow(-static_cast<long>(s));
    return z * L;
}

}  // namespace

RealInterval dedekind_zeta_positive_enclosure(const FieldDescriptor& field, unsigned s, unsigned long prime_bound,
                                              mpfr_prec_t prec) {
    if (s < 2 || s % 2 == 1) throw InvariantViolation("positive argument must be even and >= 2");
    if (prime_bound < 100) throw InvariantViolation("prime bound must be at least 100");
    RealInterval euler = euler_product_enclosure(field, s, prime_bound, prec);
    if (field.degree > 2 || s > 40) return euler;
    RealInterval analytic = quadratic_zeta_enclosure(field, s, prec);
    auto both = euler.intersect(analytic);
    if (!both) throw InvariantViolation("Euler product and Euler-Maclaurin enclosures of zeta_k(" + std::to_string(s) +
                                        ") are disjoint for " + field.label);
    return *both;
}

RealInterval functional_equation_factor(const Integer& D, int degree, unsigned i, mpfr_prec_t prec) {
    RealInterval Dk(Rational(D), prec);
    long two_i = 2 * static_cast<long>(i);
    RealInterval gamma = RealInterval(Rational(2 * factorial(static_cast<unsigned long>(two_i - 1))), prec) /
                         (RealInterval::pi(prec) * RealInterval(2, prec)).pow(two_i);
    return Dk.pow(two_i) / Dk.sqrt() * gamma.pow(degree);
}

RealInterval zeta_product_enclosure(const FieldDescriptor& field, unsigned r, unsigned long prime_bound,
                                    mpfr_prec_t prec) {
    RealInterval prod(1, prec);
    for (unsigned i = 1; i <= r; ++i) prod *= dedekind_zeta_positive_enclosure(field, 2 * i, prime_bound, prec);
    return prod;
}

// ------------------------------------------------------- exact values

namespace {

std::mutex exact_mu;
std::map<std::pair<std::string, unsigned>, ZetaValue> exact_cache;

ZetaValue reconstruct(const FieldDescriptor& field, unsigned i, const Integer& denominator_bound, mpfr_prec_t prec) {
    prec = std::max<mpfr_prec_t>(prec > 0 ? prec : default_precision(), 128);
    int sign = ((field.degree * static_cast<int>(i)) % 2 == 0) ? 1 : -1;
    Integer W = denominator_bound == 0 ? zeta_denominator_bound(2 * i, field.degree) : Integer(0);
    RealInterval fe = functional_equation_factor(field.discriminant, field.degree, i, prec);
    std::string last;
    for (unsigned long P = 10000; P <= 10000000; P *= 10) {
        RealInterval z = euler_product_enclosure(field, 2 * i, P, prec);
        RealInterval v = z * fe;  // |zeta_k(1-2i)|
        ZetaValue out;
        out.argument = 1 - 2 * static_cast<int>(i);
        out.method = ZetaMethod::functional_equation_reconstructed;
        out.prime_bound = P;
        if (W != 0) {
            RealInterval t = v * RealInterval(Rational(W), prec);
            if (t.width_double() >= 1.0) {
                last = "W-scaled enclosure width " + std::to_string(t.width_double());
                continue;
            }
            Integer lo_int;
            Rational lo = t.lower_rational();
            mpz_cdiv_q(lo_int.get_mpz_t(), lo.num().get_mpz_t(), lo.den().get_mpz_t());
            Integer hi_int = t.floor_upper();
            if (hi_int < lo_int)
                throw ReconstructionFailed("no integer multiple of 1/" + W.get_str() + " in the enclosure of zeta_k(" +
                                           std::to_string(out.argument) + ") for " + field.label);
            if (hi_int > lo_int) {
                last = "two integers in W-scaled enclosure";
                continue;
            }
            out.exact = Rational(sign * lo_int, W);
        } else {
            std::optional<Rational> q;
            try {
                q = rational_reconstruct(v, denominator_bound);
            } catch (const AmbiguousInterval& e) {
                last = e.what();
                continue;
            }
            if (!q) throw ReconstructionFailed("no rational with denominator <= " + denominator_bound.get_str() +
                                               " in the enclosure for " + field.label);
            out.exact = Rational(sign) * *q;
        }
        out.enclosure = v * RealInterval(sign, prec);
        return out;
    }
    throw ReconstructionFailed("zeta_k(" + std::to_string(1 - 2 * static_cast<int>(i)) + ") for " + field.label +
                               ": prime bound exhausted (" + last + ")");
}

}  // namespace

ZetaValue dedekind_zeta_negative(const FieldDescriptor& field, unsigned i, const Integer& denominator_bound,
                                 mpfr_prec_t prec) {
    if (i < 1) throw InvariantViolation("dedekind_zeta_negative needs i >= 1");
    ZetaValue out;
    out.argument = 1 - 2 * static_cast<int>(i);
    out.method = ZetaMethod::bernoulli_exact;
    if (field.degree == 1) {
        out.exact = riemann_zeta_negative(i);
        return out;
    }
    if (field.degree == 2) {
        out.exact = riemann_zeta_negative(i) * dirichlet_l_negative(kronecker_character(field.discriminant), i);
        return out;
    }
    auto key = std::make_pair(field_fingerprint(field) + "|" + denominator_bound.get_str(), i);
    {
        std::lock_guard<std::mutex> lock(exact_mu);
        auto it = exact_cache.find(key);
        if (it != exact_cache.end()) return it->second;
    }
    out = reconstruct(field, i, denominator_bound, prec);
    std::lock_guard<std::mutex> lock(exact_mu);
    exact_cache.emplace(key, out);
    return out;
}

Rational zeta_negative_product(const FieldDescriptor& field, unsigned r) {
    Rational prod(1);
    for (unsigned i = 1; i <= r; ++i) prod *= *dedekind_zeta_negative(field, i).exact;
    return prod;
}

}  // namespace orbivol
