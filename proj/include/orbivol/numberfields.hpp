#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbivol/exact.hpp"

namespace orbivol {

// (residue degree f, ramification index e) of one prime above p
using PrimeFactor = std::pair<int, int>;

struct FieldDescriptor {
    std::string label;
    int degree = 1;
    Integer discriminant = 1;
    long class_number = 1;
    std::vector<Integer> polynomial;  // ascending coefficients, monic
    // true splitting data for primes dividing the polynomial index
    std::map<unsigned long, std::vector<PrimeFactor>> splitting_overrides;
    std::string source;

    // sqrt(disc(poly) / D); filled in by validate()
    Integer index = 1;

    // Checks monicity, degree, disc(poly) = index^2 * D, and total realness
    // for degree 2. Throws InvariantViolation.
    void validate();
    bool is_rational() const { return degree == 1; }

    friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
        return a.label == b.label && a.degree == b.degree && a.discriminant == b.discriminant &&
               a.class_number == b.class_number && a.polynomial == b.polynomial &&
               a.splitting_overrides == b.splitting_overrides && a.source == b.source;
    }
};

struct SplittingType {
    unsigned long prime = 2;
    std::vector<PrimeFactor> factors;  // sorted
    // false when p divides the polynomial index and no override is given
    bool certified = true;
    bool from_override = false;

    int degree_sum() const;
};

// Cache key covering label, discriminant, polynomial and overrides.
std::string field_fingerprint(const FieldDescriptor& f);

FieldDescriptor rational_field();
FieldDescriptor make_field(const std::string& label, const std::vector<long>& poly, long disc, long h);

// JSON Lines; '#' lines and blank lines skipped. Sorted by (degree, disc, label).
std::vector<FieldDescriptor> ingest_field_table(std::istream& source);
std::vector<FieldDescriptor> load_field_table(const std::string& path);
std::string serialize_field(const FieldDescriptor& f);
std::string serialize_field_table(const std::vector<FieldDescriptor>& fields);

// Memoized per field (keyed by label, polynomial and discriminant).
SplittingType splitting_type(const FieldDescriptor& field, unsigned long p);
// Uncached variant, used by bulk Euler products.
SplittingType compute_splitting(const FieldDescriptor& field, unsigned long p);

// True iff some certified prime of the field has norm q = p^f.
// Throws UncertifiedPrime if p is not certified.
bool has_place_of_residue_size(const FieldDescriptor& field, unsigned long q, unsigned long prime_bound);

// Residue sizes q <= norm_bound realised by some certified prime of the field,
// ascending. Primes lacking certified data throw UncertifiedPrime.
std::vector<unsigned long> residue_sizes(const FieldDescriptor& field, unsigned long norm_bound);

Integer polynomial_discriminant(const std::vector<Integer>& poly);

// q = p^f with p prime; nullopt otherwise
std::optional<std::pair<unsigned long, int>> prime_power(unsigned long q);
bool is_prime(unsigned long n);
std::vector<unsigned long> primes_up_to(unsigned long n);

const FieldDescriptor* find_field(const std::vector<FieldDescriptor>& table, const std::string& label_or_disc);

}  // namespace orbivol
