#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbivol/exact.hpp"
#include "orbivol/localdata.hpp"
#include "orbivol/numberfields.hpp"

namespace orbivol {

struct GroupSpec {
    int rank = 2;
    FieldDescriptor field;
    std::vector<LocalPlaceData> bad_places;  // the set T

    long nonsplit_count() const;
    bool cocompact() const { return field.degree >= 2; }
    // rank/type consistency, places exist in the field, parity. Throws
    // IllegalType, InvariantViolation or ParityViolation.
    void validate() const;
};

enum class ZetaMode { exact, enclosure };

struct ChiResult {
    std::optional<Rational> exact;         // exact mode
    RealInterval enclosure;                // always present
    Integer index_bound = 1;
    std::optional<Rational> chi_maximal_lower;  // exact mode: chi / index_bound
    RealInterval chi_maximal_lower_enclosure;
    std::vector<std::string> trace;
};

struct StructureConstants {
    int dim = 0;
    std::vector<int> exponents;
    int c_inf = 2;
    int tamagawa = 2;
};

StructureConstants structure_constants(int r);

// prod_{i=1}^{r} (2i-1)! / (2 pi)^{2i}
RealInterval c_of_r(int r, mpfr_prec_t prec = 0);

// D^{r^2 + r/2} as an interval (half-integral exponent for odd r)
RealInterval discriminant_power(const RealInterval& D, int r);

ChiResult chi_principal(const GroupSpec& spec, ZetaMode mode, unsigned long prime_bound = 10000,
                        mpfr_prec_t prec = 0);

// lambda(r)/4^{r-1} prod |zeta_{Q(sqrt5)}(1-2i)|
Rational chi_closed_form_compact(int r);
// lambda'(r)/2^{r-2} prod |zeta(1-2i)|
Rational chi_closed_form_noncompact(int r);
Rational lambda_compact(int r);
Rational lambda_noncompact(int r);
// 4 prod |B_{2i}|/(4i) times 1 (r = 0,1 mod 4) or (2^{2r}-1)/6
Rational chi_unimodular_stabilizer(int r);
Rational unimodular_branch_factor(int r);

// (2 pi)^r / (1*3*...*(2r-1)) * chi
RealInterval hyperbolic_volume(const Rational& chi, int r, mpfr_prec_t prec = 0);

Integer index_bound(const GroupSpec& spec);
RealInterval class_number_bound(const FieldDescriptor& field, mpfr_prec_t prec = 0);
RealInterval class_number_bound(int degree, const RealInterval& D);

struct LowerBound {
    RealInterval bound;
    // E * prod lambda * prod Xi^{-1} * 2^{-#T_ns}
    RealInterval composite;
    bool composite_exceeds_one = false;
};

// (4 / (2^{d + #T_ns} h)) D^{r^2+r/2} C(r)^d E prod lambda prod Xi^{-1};
// h replaced by the Zimmert-type bound when use_exact_h is false.
LowerBound chi_lower_bound(const GroupSpec& spec, bool use_exact_h, unsigned long prime_bound = 10000,
                           mpfr_prec_t prec = 0);

// Lower bound for chi/index over every maximal group of rank r defined over
// the field, whatever its bad places: 4 D^{r^2+r/2} C(r)^d / (2^d h) times a
// lower bound on the composite factor (1 in general; E * min lambda / 2 when
// parity forces a nonsplit place and no place of norm 2 can absorb it).
RealInterval field_chi_lower_bound(const FieldDescriptor& field, int r, bool use_exact_h = true,
                                   mpfr_prec_t prec = 0);

// T minimising prod lambda subject to parity: empty when parity already
// holds, otherwise one nonsplit place of minimal lambda over residue sizes
// q <= norm_bound (ties: smaller q, then table order).
std::vector<LocalPlaceData> minimal_bad_places(const FieldDescriptor& field, int r, unsigned long norm_bound = 100);

}  // namespace orbivol
