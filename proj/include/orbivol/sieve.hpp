#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbivol/covolume.hpp"

namespace orbivol {

struct SieveConfig {
    Rational chi_max = Rational(24);
    int rank = 2;
    std::vector<FieldDescriptor> field_table;
    // default to floor(chi_max) and floor(chi_max / 2)
    std::optional<long> numerator_even_max;
    std::optional<long> numerator_odd_max;
    unsigned workers = 0;  // 0: hardware concurrency
    unsigned long norm_bound = 100;

    long even_max() const;
    long odd_max() const;
};

enum class Verdict { survives, discarded_by_bound, discarded_by_numerator, needs_data };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct CandidateReport {
    FieldDescriptor field;
    std::optional<Rational> chi_principal;
    Integer numerator = 0;
    std::vector<LocalPlaceData> bad_places;
    Verdict verdict = Verdict::discarded_by_bound;
    std::vector<std::string> trace;
};

struct SieveOutcome {
    std::vector<CandidateReport> reports;  // stage-1 fields, sorted
    std::map<int, long> stage1_by_degree;
    std::map<int, long> stage2_by_degree;
    std::map<int, long> survivors_by_degree;
    std::vector<std::pair<int, Integer>> ranges;

    long stage1_total() const;
    long stage2_total() const;
    long needs_data() const;
    std::vector<const CandidateReport*> survivors() const;
};

struct ManifoldCandidate {
    std::string group;  // Gamma_1, Gamma_2, ... in survivor order
    std::string field_label;
    Rational chi_group;
    long chi_manifold = 0;
    Integer index = 0;
};

// Lower discriminant bound for totally real fields of degree d used to end
// the range search.
RealInterval minimal_discriminant_lower_bound(int degree, mpfr_prec_t prec = 0);

// (d, floor(B_d)) with B_d = (25 chi_max (2^6 pi^7 / 6^2)^d)^{1/4}, for d = 2, 3, ...
// until B_d drops below the minimal discriminant of degree d.
std::vector<std::pair<int, Integer>> discriminant_ranges(const Rational& chi_max);

SieveOutcome run_sieve(const SieveConfig& config);

// Even chi(M) <= chi_max with chi(M)/chi_principal integral, per survivor.
std::vector<ManifoldCandidate> manifold_candidates(const std::vector<CandidateReport>& reports,
                                                   const Rational& chi_max);

}  // namespace orbivol
