#pragma once

#include <string>
#include <vector>

#include "orbivol/exact.hpp"

namespace orbivol {

enum class Form { split, nonsplit };

// Maximal parahoric type of a group of type B_r over a nonarchimedean field.
// Split types delete alpha_0 (alpha_1 is identified with it), the pair
// {alpha_0, alpha_1} (vertex == kPair01), or alpha_i for 2 <= i <= r.
// Nonsplit types delete alpha_i for 0 <= i <= r-1.
struct ParahoricType {
    static constexpr int kPair01 = -1;

    Form form = Form::split;
    int vertex = 0;
    int rank = 2;

    static ParahoricType make(Form form, int vertex, int rank);  // canonicalises, throws IllegalType
    bool legal() const;
    bool is_hyperspecial() const { return form == Form::split && vertex == 0; }
    std::string vertex_str() const;  // "0", "0-1", "3"
    std::string name() const;        // e.g. "Delta1\{alpha0,alpha1}"

    friend bool operator==(const ParahoricType&, const ParahoricType&) = default;
};

// All legal maximal types for rank r, in table order: split rows first.
std::vector<ParahoricType> legal_types(int rank);

struct LocalPlaceData {
    unsigned long q = 2;
    ParahoricType type;

    // "q:split|nonsplit:vertex", e.g. "4:nonsplit:1" or "9:split:0-1"
    static LocalPlaceData parse(const std::string& s, int rank);
    std::string str() const;
    bool split() const { return type.form == Form::split; }

    friend bool operator==(const LocalPlaceData&, const LocalPlaceData&) = default;
};

enum class FiniteGroup { so_odd, o_even_plus, o_even_minus, gl1 };

struct FiniteGroupOrder {
    FiniteGroup group = FiniteGroup::so_odd;
    int m = 0;  // SO_{2m+1}, O^{+-}_{2m}
    Integer order = 1;
    int positive_roots = 0;
};

FiniteGroupOrder finite_group_order(FiniteGroup g, int m, unsigned long q);
// components of the reductive quotient for a maximal type
std::vector<FiniteGroupOrder> reductive_quotient(const ParahoricType& t, unsigned long q);

// Closed forms of the lambda table.
Rational lambda_factor(const LocalPlaceData& place, int r);
// lambda = q^{-N(Gqs)} #Gqs(F_q) / (q^{-N(G)} #G(F_q)) with Gqs = SO_{2r+1}.
Rational lambda_factor_via_orders(const LocalPlaceData& place, int r);

// Bound on the order of Xi_theta: 1 for nonsplit or hyperspecial types, else 2.
int xi_order(const LocalPlaceData& place);

int epsilon_finite(bool split);
int epsilon_archimedean(int r, bool is_identity_place);
bool parity_check(int r, int degree, long finite_nonsplit_count);

}  // namespace orbivol
