#include "orbivol/localdata.hpp"

#include "orbivol/error.hpp"
#include "orbivol/numberfields.hpp"

namespace orbivol {

namespace {

Integer qpow(unsigned long q, unsigned long e) { return ipow(Integer(q), e); }

// prod_{nu=a}^{b} (q^{2 nu} - 1)
Integer even_product(unsigned long q, int a, int b) {
    Integer p = 1;
    for (int nu = a; nu <= b; ++nu) p *= qpow(q, 2 * static_cast<unsigned long>(nu)) - 1;
    return p;
}

}  // namespace

ParahoricType ParahoricType::make(Form form, int vertex, int rank) {
    ParahoricType t{form, vertex, rank};
    if (form == Form::split && vertex == 1) t.vertex = 0;  // alpha_1 ~ alpha_0
    if (!t.legal())
        throw IllegalType("no maximal type deleting vertex " + std::to_string(vertex) + " in the " +
                          (form == Form::split ? "split" : "nonsplit") + " form of rank " + std::to_string(rank));
    return t;
}

bool ParahoricType::legal() const {
    if (rank < 2) return false;
    if (form == Form::split) return vertex == 0 || vertex == kPair01 || (vertex >= 2 && vertex <= rank);
    return vertex >= 0 && vertex <= rank - 1;
}

std::string ParahoricType::vertex_str() const { return vertex == kPair01 ? "0-1" : std::to_string(vertex); }

std::string ParahoricType::name() const {
    std::string d = form == Form::split ? "Delta1" : "Delta2";
    if (vertex == kPair01) return d + "\\{alpha0,alpha1}";
    return d + "\\{alpha" + std::to_string(vertex) + "}";
}

std::vector<ParahoricType> legal_types(int rank) {
    if (rank < 2) throw IllegalType("rank must be at least 2");
    std::vector<ParahoricType> out;
    out.push_back({Form::split, 0, rank});
    out.push_back({Form::split, ParahoricType::kPair01, rank});
    for (int i = 2; i <= rank; ++i) out.push_back({Form::split, i, rank});
    for (int i = 0; i <= rank - 1; ++i) out.push_back({Form::nonsplit, i, rank});
    return out;
}

LocalPlaceData LocalPlaceData::parse(const std::string& s, int rank) {
    auto a = s.find(':');
    auto b = a == std::string::npos ? std::string::npos : s.find(':', a + 1);
    if (b == std::string::npos) throw ParseError(0, "place must look like q:split|nonsplit:vertex, got '" + s + "'");
    LocalPlaceData pl;
    try {
        pl.q = std::stoul(s.substr(0, a));
    } catch (const std::exception&) {
        throw ParseError(0, "bad residue size in '" + s + "'");
    }
    if (!prime_power(pl.q)) throw ParseError(0, "residue size must be a prime power in '" + s + "'");
    std::string form = s.substr(a + 1, b - a - 1);
    std::string vtx = s.substr(b + 1);
    Form f;
    if (form == "split") f = Form::split;
    else if (form == "nonsplit") f = Form::nonsplit;
    else throw ParseError(0, "form must be split or nonsplit in '" + s + "'");
    int v;
    if (vtx == "0-1" || vtx == "0,1") {
        v = ParahoricType::kPair01;
    } else {
        try {
            std::size_t used = 0;
            v = std::stoi(vtx, &used);
            if (used != vtx.size()) throw std::invalid_argument(vtx);
        } catch (const std::exception&) {
            throw ParseError(0, "bad vertex in '" + s + "'");
        }
    }
    pl.type = ParahoricType::make(f, v, rank);
    return pl;
}

std::string LocalPlaceData::str() const {
    return std::to_string(q) + ":" + (split() ? "split" : "nonsplit") + ":" + type.vertex_str();
}

FiniteGroupOrder finite_group_order(FiniteGroup g, int m, unsigned long q) {
    FiniteGroupOrder o;
    o.group = g;
    o.m = m;
    auto mu = static_cast<unsigned long>(m);
    switch (g) {
        case FiniteGroup::so_odd:
            o.order = qpow(q, mu * mu) * even_product(q, 1, m);
            o.positive_roots = m * m;
            break;
        case FiniteGroup::o_even_plus:
        case FiniteGroup::o_even_minus: {
            if (m < 1) throw InvariantViolation("O_{2m} needs m >= 1");
            Integer qm = qpow(q, mu);
            Integer mid = g == FiniteGroup::o_even_plus ? Integer(qm - 1) : Integer(qm + 1);
            o.order = 2 * qpow(q, mu * (mu - 1)) * mid * even_product(q, 1, m - 1);
            o.positive_roots = m * (m - 1);
            break;
        }
        case FiniteGroup::gl1:
            o.order = Integer(q) - 1;
            o.positive_roots = 0;
            break;
    }
    return o;
}

std::vector<FiniteGroupOrder> reductive_quotient(const ParahoricType& t, unsigned long q) {
    if (!t.legal()) throw IllegalType("illegal parahoric type " + t.name());
    int r = t.rank;
    using G = FiniteGroup;
    if (t.form == Form::split) {
        if (t.vertex == 0) return {finite_group_order(G::so_odd, r, q)};
        if (t.vertex == ParahoricType::kPair01)
            return {finite_group_order(G::gl1, 0, q), finite_group_order(G::so_odd, r - 1, q)};
        if (t.vertex == r) return {finite_group_order(G::o_even_plus, r, q)};
        int i = t.vertex;
        return {finite_group_order(G::o_even_plus, i, q), finite_group_order(G::so_odd, r - i, q)};
    }
    // nonsplit: O^-_{2(i+1)} x SO_{2(r-i)-1}
    int i = t.vertex;
    return {finite_group_order(G::o_even_minus, i + 1, q), finite_group_order(G::so_odd, r - i - 1, q)};
}

Rational lambda_factor(const LocalPlaceData& place, int r) {
    const ParahoricType& t = place.type;
    if (t.rank != r || !t.legal()) throw IllegalType("type " + t.name() + " is not a maximal type of rank " + std::to_string(r));
    unsigned long q = place.q;
    auto ru = static_cast<unsigned long>(r);
    if (t.form == Form::split) {
        if (t.vertex == 0) return Rational(1);
        if (t.vertex == ParahoricType::kPair01) return Rational(qpow(q, 2 * ru) - 1, Integer(q) - 1);
        if (t.vertex == r) return Rational(qpow(q, ru) + 1, 2);
        int i = t.vertex;
        Integer num = (qpow(q, static_cast<unsigned long>(i)) + 1) * even_product(q, i + 1, r);
        return Rational(num, 2 * even_product(q, 1, r - i));
    }
    if (t.vertex == 0) return Rational(qpow(q, 2 * ru) - 1, 2 * (Integer(q) + 1));
    if (t.vertex == r - 1) return Rational(qpow(q, ru) - 1, 2);
    int i = t.vertex;
    Integer num = (qpow(q, static_cast<unsigned long>(i + 1)) - 1) * even_product(q, i + 2, r);
    return Rational(num, 2 * even_product(q, 1, r - i - 1));
}

Rational lambda_factor_via_orders(const LocalPlaceData& place, int r) {
    const ParahoricType& t = place.type;
    if (t.rank != r || !t.legal()) throw IllegalType("type " + t.name() + " is not a maximal type of rank " + std::to_string(r));
    unsigned long q = place.q;
    FiniteGroupOrder qs = finite_group_order(FiniteGroup::so_odd, r, q);
    Integer order = 1;
    int n = 0;
    for (const auto& c : reductive_quotient(t, q)) {
        order *= c.order;
        n += c.positive_roots;
    }
    // q^{-N(Gqs)} #Gqs / (q^{-N} #G)
    return Rational(qs.order * qpow(q, static_cast<unsigned long>(n)),
                    order * qpow(q, static_cast<unsigned long>(qs.positive_roots)));
}

int xi_order(const LocalPlaceData& place) {
    if (!place.type.legal()) throw IllegalType("illegal parahoric type " + place.type.name());
    return (place.type.form == Form::nonsplit || place.type.is_hyperspecial()) ? 1 : 2;
}

int epsilon_finite(bool split) { return split ? 1 : -1; }

int epsilon_archimedean(int r, bool is_identity_place) {
    if (r < 2) throw InvariantViolation("rank must be at least 2");
    int m = r % 4;
    if (is_identity_place) return (m == 0 || m == 1) ? 1 : -1;
    return (m == 0 || m == 3) ? 1 : -1;
}

bool parity_check(int r, int degree, long finite_nonsplit_count) {
    if (r < 2 || degree < 1 || finite_nonsplit_count < 0) throw InvariantViolation("parity_check: bad arguments");
    long minus = finite_nonsplit_count;
    if (epsilon_archimedean(r, true) < 0) ++minus;
    if (epsilon_archimedean(r, false) < 0) minus += degree - 1;
    return minus % 2 == 0;
}

}  // namespace orbivol
