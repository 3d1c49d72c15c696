#include "orbivol/report.hpp"

#include <sstream>

#include "orbivol/error.hpp"

namespace orbivol {

Json to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw ParseError(0, "rational must be a \"p/q\" string");
    return Rational::parse(j.get<std::string>());
}

Json to_json(const RealInterval& x) {
    Json j;
    j["lower"] = x.lower_hex();
    j["upper"] = x.upper_hex();
    j["precision"] = x.precision();
    j["approx"] = x.str(20);
    return j;
}

RealInterval interval_from_json(const Json& j) {
    return RealInterval::from_hex(j.at("lower").get<std::string>(), j.at("upper").get<std::string>(),
                                  j.at("precision").get<mpfr_prec_t>());
}

Json to_json(const LocalPlaceData& v) {
    Json j;
    j["place"] = v.str();
    j["type"] = v.type.name();
    return j;
}

LocalPlaceData place_from_json(const Json& j, int rank) { return LocalPlaceData::parse(j.at("place").get<std::string>(), rank); }

Json to_json(const ZetaValue& z) {
    Json j;
    j["argument"] = z.argument;
    if (z.exact) j["exact"] = to_json(*z.exact);
    if (z.enclosure) j["enclosure"] = to_json(*z.enclosure);
    j["method"] = to_string(z.method);
    if (z.prime_bound) j["prime_bound"] = z.prime_bound;
    return j;
}

ZetaValue zeta_value_from_json(const Json& j) {
    ZetaValue z;
    z.argument = j.at("argument").get<int>();
    if (j.contains("exact")) z.exact = rational_from_json(j["exact"]);
    if (j.contains("enclosure")) z.enclosure = interval_from_json(j["enclosure"]);
    std::string m = j.at("method").get<std::string>();
    for (ZetaMethod cand : {ZetaMethod::bernoulli_exact, ZetaMethod::functional_equation_reconstructed,
                            ZetaMethod::euler_product_enclosure})
        if (to_string(cand) == m) z.method = cand;
    if (j.contains("prime_bound")) z.prime_bound = j["prime_bound"].get<unsigned long>();
    return z;
}

Json to_json(const ChiResult& c) {
    Json j;
    if (c.exact) j["chi"] = to_json(*c.exact);
    j["enclosure"] = to_json(c.enclosure);
    j["index_bound"] = c.index_bound.get_str();
    if (c.chi_maximal_lower) j["chi_maximal_lower"] = to_json(*c.chi_maximal_lower);
    else j["chi_maximal_lower"] = to_json(c.chi_maximal_lower_enclosure);
    j["trace"] = c.trace;
    return j;
}

Json to_json(const CandidateReport& r, int /*rank*/) {
    Json j;
    j["field"] = Json::parse(serialize_field(r.field));
    if (r.chi_principal) j["chi"] = to_json(*r.chi_principal);
    j["numerator"] = r.numerator.get_str();
    j["bad_places"] = Json::array();
    for (const auto& v : r.bad_places) j["bad_places"].push_back(to_json(v));
    j["verdict"] = to_string(r.verdict);
    j["trace"] = r.trace;
    return j;
}

CandidateReport candidate_from_json(const Json& j, int rank) {
    CandidateReport r;
    std::istringstream in(j.at("field").dump());
    auto fields = ingest_field_table(in);
    if (fields.size() != 1) throw ParseError(0, "report must carry exactly one field");
    r.field = fields.front();
    if (j.contains("chi")) r.chi_principal = rational_from_json(j["chi"]);
    r.numerator = Integer(j.at("numerator").get<std::string>());
    for (const auto& v : j.at("bad_places")) r.bad_places.push_back(place_from_json(v, rank));
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.trace = j.at("trace").get<std::vector<std::string>>();
    return r;
}

Json to_json(const ManifoldCandidate& m) {
    Json j;
    j["group"] = m.group;
    j["field"] = m.field_label;
    j["chi_group"] = to_json(m.chi_group);
    j["chi_manifold"] = m.chi_manifold;
    j["index"] = m.index.get_str();
    return j;
}

ManifoldCandidate manifold_candidate_from_json(const Json& j) {
    ManifoldCandidate m;
    m.group = j.at("group").get<std::string>();
    m.field_label = j.at("field").get<std::string>();
    m.chi_group = rational_from_json(j.at("chi_group"));
    m.chi_manifold = j.at("chi_manifold").get<long>();
    m.index = Integer(j.at("index").get<std::string>());
    return m;
}

std::string decimal(const Rational& q, int digits) {
    RealInterval x(q, 128);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNe", digits - 1, x.lower());
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) w[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size() && c < w.size(); ++c) w[c] = std::max(w[c], row[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            s += cells[c];
            if (c + 1 < cells.size()) s += std::string(w[c] - cells[c].size() + 2, ' ');
        }
        s.erase(s.find_last_not_of(' ') + 1);
        return s + "\n";
    };
    std::string out = line(header);
    for (const auto& row : rows) out += line(row);
    return out;
}

namespace {
std::string by_degree(const std::map<int, long>& m) {
    std::string s;
    for (auto [d, c] : m) s += (s.empty() ? "" : ", ") + std::string("d=") + std::to_string(d) + ": " + std::to_string(c);
    return s.empty() ? "none" : s;
}

std::string places_str(const std::vector<LocalPlaceData>& T) {
    if (T.empty()) return "-";
    std::string s;
    for (const auto& v : T) s += (s.empty() ? "" : " ") + v.str();
    return s;
}
}  // namespace

std::string render_sieve_text(const SieveOutcome& outcome, const std::vector<ManifoldCandidate>& candidates) {
    std::ostringstream os;
    os << "discriminant ranges:";
    for (const auto& [d, D] : outcome.ranges) os << " d=" << d << ":" << D.get_str();
    os << "\n";
    os << "stage 1 (ranges): " << outcome.stage1_total() << " fields (" << by_degree(outcome.stage1_by_degree) << ")\n";
    os << "stage 2 (class-number bound): " << outcome.stage2_total() << " fields (" << by_degree(outcome.stage2_by_degree)
       << ")\n";
    os << "stage 3 (numerator filter): " << outcome.survivors().size() << " survivor(s)\n";
    if (outcome.needs_data()) os << "needs data: " << outcome.needs_data() << " field(s)\n";
    os << "\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : outcome.reports) {
        if (r.verdict == Verdict::discarded_by_bound) continue;
        rows.push_back({r.field.label, std::to_string(r.field.class_number), r.chi_principal ? r.chi_principal->str() : "-",
                        r.chi_principal ? decimal(*r.chi_principal, 6) : "-", r.numerator.get_str(),
                        places_str(r.bad_places), to_string(r.verdict)});
    }
    os << render_table({"field", "h", "chi", "approx", "nu", "T", "verdict"}, rows);
    if (!candidates.empty()) {
        os << "\nmanifold candidates:\n";
        std::vector<std::vector<std::string>> crow;
        for (const auto& c : candidates)
            crow.push_back({c.group, c.field_label, c.chi_group.str(), std::to_string(c.chi_manifold), c.index.get_str()});
        os << render_table({"group", "field", "chi", "chi(M)", "index"}, crow);
    }
    return os.str();
}

std::string render_sieve_jsonl(const SieveOutcome& outcome, const std::vector<ManifoldCandidate>& candidates, int rank) {
    std::ostringstream os;
    Json summary;
    summary["kind"] = "summary";
    Json ranges = Json::array();
    for (const auto& [d, D] : outcome.ranges) ranges.push_back({d, D.get_str()});
    summary["ranges"] = ranges;
    auto counts = [](const std::map<int, long>& m) {
        Json j = Json::object();
        for (auto [d, c] : m) j[std::to_string(d)] = c;
        return j;
    };
    summary["stage1"] = counts(outcome.stage1_by_degree);
    summary["stage2"] = counts(outcome.stage2_by_degree);
    summary["survivors"] = counts(outcome.survivors_by_degree);
    summary["needs_data"] = outcome.needs_data();
    os << summary.dump() << "\n";
    for (const auto& r : outcome.reports) {
        Json j = to_json(r, rank);
        j["kind"] = "report";
        os << j.dump() << "\n";
    }
    for (const auto& c : candidates) {
        Json j = to_json(c);
        j["kind"] = "candidate";
        os << j.dump() << "\n";
    }
    return os.str();
}

}  // namespace orbivol
