#include "orbivol/covolume.hpp"

#include <algorithm>
#include <map>

#include "orbivol/error.hpp"
#include "orbivol/zeta.hpp"

namespace orbivol {

namespace {

FieldDescriptor golden_field() { return make_field("2.2.5.1", {-1, -1, 1}, 5, 1); }

Rational abs_zeta_product(const FieldDescriptor& field, int r) {
    return zeta_negative_product(field, static_cast<unsigned>(r)).abs();
}

}  // namespace

long GroupSpec::nonsplit_count() const {
    return std::count_if(bad_places.begin(), bad_places.end(), [](const LocalPlaceData& v) { return !v.split(); });
}

void GroupSpec::validate() const {
    if (rank < 2) throw InvariantViolation("rank must be at least 2");
    std::map<unsigned long, int> used;
    for (const auto& v : bad_places) {
        if (v.type.rank != rank || !v.type.legal())
            throw IllegalType("type " + v.type.name() + " does not belong to rank " + std::to_string(rank));
        auto pp = prime_power(v.q);
        if (!pp) throw InvariantViolation(std::to_string(v.q) + " is not a prime power");
        ++used[v.q];
    }
    for (auto [q, n] : used) {
        auto [p, f] = *prime_power(q);
        SplittingType st = splitting_type(field, p);
        if (!st.certified) throw UncertifiedPrime(p, field.label);
        long avail = std::count_if(st.factors.begin(), st.factors.end(),
                                   [f = f](const PrimeFactor& pf) { return pf.first == f; });
        if (avail < n)
            throw InvariantViolation(field.label + " has " + std::to_string(avail) + " place(s) of norm " +
                                     std::to_string(q) + ", T uses " + std::to_string(n));
    }
    if (!parity_check(rank, field.degree, nonsplit_count()))
        throw ParityViolation("parity condition fails: rank " + std::to_string(rank) + ", degree " +
                              std::to_string(field.degree) + ", " + std::to_string(nonsplit_count()) +
                              " nonsplit place(s)");
}

StructureConstants structure_constants(int r) {
    if (r < 2) throw InvariantViolation("rank must be at least 2");
    StructureConstants s;
    s.dim = 2 * r * r + r;
    for (int i = 1; i <= r; ++i) s.exponents.push_back(2 * i - 1);
    return s;
}

RealInterval c_of_r(int r, mpfr_prec_t prec) {
    if (r < 1) throw InvariantViolation("C(r) needs r >= 1");
    RealInterval two_pi = RealInterval::pi(prec) * RealInterval(2, prec);
    RealInterval c(1, prec);
    for (int i = 1; i <= r; ++i)
        c *= RealInterval(Rational(factorial(static_cast<unsigned long>(2 * i - 1))), prec) / two_pi.pow(2 * i);
    return c;
}

RealInterval discriminant_power(const RealInterval& D, int r) {
    long twice = 2L * r * r + r;
    if (twice % 2 == 0) return D.pow(twice / 2);
    return D.pow((twice - 1) / 2) * D.sqrt();
}

Integer index_bound(const GroupSpec& spec) {
    Integer b = spec.field.class_number;
    b *= ipow(2, static_cast<unsigned long>(spec.field.degree + spec.nonsplit_count()));
    for (const auto& v : spec.bad_places) b *= xi_order(v);
    return b;
}

ChiResult chi_principal(const GroupSpec& spec, ZetaMode mode, unsigned long prime_bound, mpfr_prec_t prec) {
    spec.validate();
    const FieldDescriptor& k = spec.field;
    int r = spec.rank;
    ChiResult res;
    Rational lam(1);
    for (const auto& v : spec.bad_places) {
        Rational l = lambda_factor(v, r);
        res.trace.push_back("lambda(" + v.str() + ") = " + l.str());
        lam *= l;
    }
    res.index_bound = index_bound(spec);
    if (mode == ZetaMode::exact) {
        // chi = 4 * 2^{-rd} * prod |zeta_k(1-2i)| * prod lambda
        Rational z(1);
        for (int i = 1; i <= r; ++i) {
            ZetaValue zv = dedekind_zeta_negative(k, static_cast<unsigned>(i), 0, prec);
            res.trace.push_back("zeta_k(" + std::to_string(1 - 2 * i) + ") = " + zv.exact->str() + " [" +
                                to_string(zv.method) + "]");
            z *= zv.exact->abs();
        }
        Rational chi = Rational(4) * z * lam / Rational(ipow(2, static_cast<unsigned long>(r * k.degree)));
        res.exact = chi;
        res.enclosure = RealInterval(chi, prec);
        res.chi_maximal_lower = chi / Rational(res.index_bound);
        res.chi_maximal_lower_enclosure = RealInterval(*res.chi_maximal_lower, prec);
        return res;
    }
    // chi = 4 * D^{r^2+r/2} * C(r)^d * prod zeta_k(2i) * prod lambda
    RealInterval E = zeta_product_enclosure(k, static_cast<unsigned>(r), prime_bound, prec);
    res.trace.push_back("prod zeta_k(2i) in " + E.str(25) + " (prime bound " + std::to_string(prime_bound) + ")");
    RealInterval D(Rational(k.discriminant), prec);
    res.enclosure = RealInterval(4, prec) * discriminant_power(D, r) * c_of_r(r, prec).pow(k.degree) * E *
                    RealInterval(lam, prec);
    res.chi_maximal_lower_enclosure = res.enclosure / RealInterval(Rational(res.index_bound), prec);
    return res;
}

Rational lambda_compact(int r) {
    if (r % 2 == 0) return Rational(1);
    return Rational(ipow(4, static_cast<unsigned long>(r)) - 1, 2);
}

Rational lambda_noncompact(int r) {
    if (r % 4 == 0 || r % 4 == 1) return Rational(1);
    return Rational(ipow(2, static_cast<unsigned long>(r)) - 1, 2);
}

Rational chi_closed_form_compact(int r) {
    if (r < 2) throw InvariantViolation("rank must be at least 2");
    return lambda_compact(r) / Rational(ipow(4, static_cast<unsigned long>(r - 1))) * abs_zeta_product(golden_field(), r);
}

Rational chi_closed_form_noncompact(int r) {
    if (r < 2) throw InvariantViolation("rank must be at least 2");
    return lambda_noncompact(r) / Rational(ipow(2, static_cast<unsigned long>(r - 2))) *
           abs_zeta_product(rational_field(), r);
}

Rational unimodular_branch_factor(int r) {
    if (r % 4 == 0 || r % 4 == 1) return Rational(1);
    return Rational(ipow(2, static_cast<unsigned long>(2 * r)) - 1, 6);
}

Rational chi_unimodular_stabilizer(int r) {
    if (r < 2) throw InvariantViolation("rank must be at least 2");
    Rational p(4);
    for (int i = 1; i <= r; ++i) p *= bernoulli(static_cast<unsigned long>(2 * i)).abs() / Rational(4L * i);
    return p * unimodular_branch_factor(r);
}

RealInterval hyperbolic_volume(const Rational& chi, int r, mpfr_prec_t prec) {
    if (chi.sign() <= 0) throw InvariantViolation("hyperbolic_volume needs chi > 0");
    Integer odd = 1;
    for (int i = 1; i <= r; ++i) odd *= 2 * i - 1;
    RealInterval two_pi = RealInterval::pi(prec) * RealInterval(2, prec);
    return two_pi.pow(r) / RealInterval(Rational(odd), prec) * RealInterval(chi, prec);
}

RealInterval class_number_bound(int degree, const RealInterval& D) {
    mpfr_prec_t prec = D.precision();
    RealInterval base = RealInterval::pi(prec) / RealInterval(12, prec);
    return RealInterval(100, prec) * base.pow(degree) * D;
}

RealInterval class_number_bound(const FieldDescriptor& field, mpfr_prec_t prec) {
    return class_number_bound(field.degree, RealInterval(Rational(field.discriminant), prec));
}

LowerBound chi_lower_bound(const GroupSpec& spec, bool use_exact_h, unsigned long prime_bound, mpfr_prec_t prec) {
    spec.validate();
    const FieldDescriptor& k = spec.field;
    int r = spec.rank;
    Rational lam(1);
    long xi = 1;
    for (const auto& v : spec.bad_places) {
        lam *= lambda_factor(v, r);
        xi *= xi_order(v);
    }
    LowerBound out;
    RealInterval E = zeta_product_enclosure(k, static_cast<unsigned>(r), prime_bound, prec);
    out.composite = E * RealInterval(lam / Rational(Integer(xi) * ipow(2, static_cast<unsigned long>(spec.nonsplit_count()))), prec);
    out.composite_exceeds_one = out.composite.certainly_greater(RealInterval(1, prec));
    if (out.composite.certainly_less(RealInterval(1, prec)))
        throw InvariantViolation("composite factor below 1 for " + k.label);
    RealInterval H = use_exact_h ? RealInterval(k.class_number, prec) : class_number_bound(k, prec);
    RealInterval D(Rational(k.discriminant), prec);
    out.bound = RealInterval(4, prec) / (RealInterval(Rational(ipow(2, static_cast<unsigned long>(k.degree))), prec) * H) *
                discriminant_power(D, r) * c_of_r(r, prec).pow(k.degree) * out.composite;
    return out;
}

RealInterval field_chi_lower_bound(const FieldDescriptor& field, int r, bool use_exact_h, mpfr_prec_t prec) {
    RealInterval H = use_exact_h ? RealInterval(field.class_number, prec) : class_number_bound(field, prec);
    RealInterval D(Rational(field.discriminant), prec);
    RealInterval base = RealInterval(4, prec) /
                        (RealInterval(Rational(ipow(2, static_cast<unsigned long>(field.degree))), prec) * H) *
                        discriminant_power(D, r) * c_of_r(r, prec).pow(field.degree);
    if (parity_check(r, field.degree, 0)) return base;
    // Some nonsplit place is forced. Each place of T contributes lambda/Xi
    // (split) or lambda/2 (nonsplit), all > 1 except the norm-2 case at r=2.
    unsigned long norm_bound = 1UL << std::min(field.degree, 20);
    std::vector<unsigned long> qs = residue_sizes(field, std::max(norm_bound, 2UL));
    if (r == 2 && std::find(qs.begin(), qs.end(), 2UL) != qs.end()) return base;
    std::optional<Rational> lam_min;
    for (unsigned long q : qs) {
        for (const auto& t : legal_types(r)) {
            if (t.form != Form::nonsplit) continue;
            Rational l = lambda_factor({q, t}, r);
            if (!lam_min || l < *lam_min) lam_min = l;
        }
    }
    if (!lam_min) return base;
    RealInterval E = euler_product_enclosure(field, 2, 1000, prec);
    for (int i = 2; i <= r; ++i) E *= euler_product_enclosure(field, static_cast<unsigned>(2 * i), 1000, prec);
    RealInterval E_lo(E.lower_rational(), prec);
    RealInterval composite = E_lo * RealInterval(*lam_min / Rational(2), prec);
    if (!composite.certainly_greater(RealInterval(1, prec))) return base;
    return base * RealInterval(composite.lower_rational(), prec);
}

std::vector<LocalPlaceData> minimal_bad_places(const FieldDescriptor& field, int r, unsigned long norm_bound) {
    if (parity_check(r, field.degree, 0)) return {};
    std::optional<LocalPlaceData> best;
    Rational best_lam;
    for (unsigned long q : residue_sizes(field, norm_bound)) {
        for (const auto& t : legal_types(r)) {
            if (t.form != Form::nonsplit) continue;
            LocalPlaceData v{q, t};
            Rational l = lambda_factor(v, r);
            if (!best || l < best_lam) {
                best = v;
                best_lam = l;
            }
        }
    }
    if (!best) throw InvariantViolation("no residue size <= " + std::to_string(norm_bound) + " in " + field.label);
    return {*best};
}

}  // namespace orbivol
