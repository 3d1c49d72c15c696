#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbivol/exact.hpp"
#include "orbivol/numberfields.hpp"

namespace orbivol {

// Real character mod conductor; values[a] for a = 0..conductor-1.
struct DirichletCharacter {
    unsigned long conductor = 1;
    std::vector<int> values{1};

    int operator()(long n) const;
    bool is_even() const { return (*this)(-1) == 1; }
};

enum class ZetaMethod { bernoulli_exact, functional_equation_reconstructed, euler_product_enclosure };
std::string to_string(ZetaMethod m);

struct ZetaValue {
    int argument = 0;
    std::optional<Rational> exact;
    std::optional<RealInterval> enclosure;
    ZetaMethod method = ZetaMethod::bernoulli_exact;
    unsigned long prime_bound = 0;  // Euler product cutoff actually used, 0 if none
};

// zeta(1-2i) = -B_{2i}/(2i)
Rational riemann_zeta_negative(unsigned i);

bool is_fundamental_discriminant(const Integer& D);
// Kronecker symbol (D | .) as a character mod D. Throws NotFundamental.
DirichletCharacter kronecker_character(const Integer& D);
DirichletCharacter trivial_character();

// B_{n,chi} = f^{n-1} sum_{a=1}^{f} chi(a) B_n(a/f)
Rational generalized_bernoulli(const DirichletCharacter& chi, unsigned n);
// L(1-2i, chi) = -B_{2i,chi}/(2i). Throws OddCharacter.
Rational dirichlet_l_negative(const DirichletCharacter& chi, unsigned i);

// Upper bound W_n(d) for w_n(k) over all totally real k of degree d:
// w_n(k) * zeta_k(1-n) is an integer, and w_n(k) divides W_n(d).
Integer zeta_denominator_bound(unsigned n, int degree);

// Exact zeta_k(1-2i). Degree <= 2 takes the Bernoulli path. Degree >= 3 goes
// through the functional equation and an Euler product enclosure of
// zeta_k(2i); with denominator_bound == 0 the known-denominator bound
// W_{2i}(d) is used, otherwise the value is recovered by
// rational_reconstruct with the given bound. The prime bound starts at
// 10^4 and grows tenfold up to 10^7 before ReconstructionFailed.
ZetaValue dedekind_zeta_negative(const FieldDescriptor& field, unsigned i, const Integer& denominator_bound = 0,
                                 mpfr_prec_t prec = 0);

// Truncated Euler product over primes <= prime_bound with rigorous tail:
// log(tail) <= d * P^{1-s} / ((s-1)(1 - P^{-s})).
RealInterval euler_product_enclosure(const FieldDescriptor& field, unsigned s, unsigned long prime_bound,
                                     mpfr_prec_t prec = 0);

// Enclosure of zeta_k(s), s >= 2 even. The Euler product is always used;
// for degree <= 2 and s <= 40 it is intersected with an Euler-Maclaurin
// evaluation of zeta(s) L(s, chi_D).
RealInterval dedekind_zeta_positive_enclosure(const FieldDescriptor& field, unsigned s,
                                              unsigned long prime_bound = 10000, mpfr_prec_t prec = 0);

// Hurwitz zeta(s, a) for 0 < a <= 1, s >= 2, via Euler-Maclaurin.
RealInterval hurwitz_zeta(unsigned s, const Rational& a, mpfr_prec_t prec = 0);

// |zeta_k(1-2i)| / zeta_k(2i) = D^{2i-1/2} (2 (2i-1)! / (2 pi)^{2i})^d
RealInterval functional_equation_factor(const Integer& D, int degree, unsigned i, mpfr_prec_t prec = 0);

// prod_{i=1}^{r} zeta_k(2i)
RealInterval zeta_product_enclosure(const FieldDescriptor& field, unsigned r, unsigned long prime_bound = 10000,
                                    mpfr_prec_t prec = 0);

// prod_{i=1}^{r} zeta_k(1-2i), exact
Rational zeta_negative_product(const FieldDescriptor& field, unsigned r);

}  // namespace orbivol
