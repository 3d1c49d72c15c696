#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "orbivol/error.hpp"
#include "orbivol/report.hpp"

using namespace orbivol;

namespace {

const SieveOutcome& small_run() {
    static const SieveOutcome out = [] {
        SieveConfig cfg;
        for (const auto& f : fixtures::table())
            if (f.degree <= 3 && f.discriminant <= 200) cfg.field_table.push_back(f);
        return run_sieve(cfg);
    }();
    return out;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("rationals travel as strings") {
    CHECK(to_json(Rational(11, 5760)).get<std::string>() == "11/5760");
    CHECK(rational_from_json(Json("-3/4")) == Rational(-3, 4));
    CHECK_THROWS_AS(rational_from_json(Json(0.75)), ParseError);
}

TEST_CASE("intervals round trip exactly") {
    RealInterval x = dedekind_zeta_positive_enclosure(fixtures::sqrt5(), 2);
    RealInterval y = interval_from_json(Json::parse(to_json(x).dump()));
    CHECK(x.lower_rational() == y.lower_rational());
    CHECK(x.upper_rational() == y.upper_rational());
    CHECK(x.precision() == y.precision());
}

TEST_CASE("zeta values round trip") {
    for (const char* label : {"2.2.5.1", "3.3.49.1"}) {
        ZetaValue z = dedekind_zeta_negative(fixtures::field(label), 2);
        ZetaValue w = zeta_value_from_json(Json::parse(to_json(z).dump()));
        CHECK(w.argument == z.argument);
        CHECK(w.exact == z.exact);
        CHECK(w.method == z.method);
        CHECK(w.prime_bound == z.prime_bound);
        CHECK(w.enclosure.has_value() == z.enclosure.has_value());
        CHECK(to_json(w).dump() == to_json(z).dump());
    }
}

TEST_CASE("candidate reports round trip") {
    int n = 0;
    for (const auto& r : small_run().reports) {
        Json j = Json::parse(to_json(r, 2).dump());
        CandidateReport back = candidate_from_json(j, 2);
        CHECK(back.field == r.field);
        CHECK(back.chi_principal == r.chi_principal);
        CHECK(back.numerator == r.numerator);
        CHECK(back.bad_places == r.bad_places);
        CHECK(back.verdict == r.verdict);
        CHECK(back.trace == r.trace);
        CHECK(to_json(back, 2).dump() == to_json(r, 2).dump());
        ++n;
    }
    CHECK(n > 10);
}

TEST_CASE("manifold candidates round trip") {
    for (const auto& m : manifold_candidates(small_run().reports, Rational(24))) {
        ManifoldCandidate back = manifold_candidate_from_json(Json::parse(to_json(m).dump()));
        CHECK(back.group == m.group);
        CHECK(back.field_label == m.field_label);
        CHECK(back.chi_group == m.chi_group);
        CHECK(back.chi_manifold == m.chi_manifold);
        CHECK(back.index == m.index);
    }
}

TEST_CASE("text and JSON carry the same rationals") {
    const auto& out = small_run();
    auto cands = manifold_candidates(out.reports, Rational(24));
    std::string text = render_sieve_text(out, cands);
    std::string jsonl = render_sieve_jsonl(out, cands, 2);
    std::istringstream lines(jsonl);
    std::string line;
    int reports = 0;
    while (std::getline(lines, line)) {
        Json j = Json::parse(line);
        if (j["kind"] == "report" && j.contains("chi")) {
            std::string chi = j["chi"].get<std::string>();
            CHECK(text.find(" " + chi + " ") != std::string::npos);
            ++reports;
        }
        if (j["kind"] == "candidate") CHECK(text.find(j["chi_group"].get<std::string>()) != std::string::npos);
    }
    CHECK(reports > 0);
}

TEST_CASE("chi results serialize exact values") {
    GroupSpec s;
    s.field = fixtures::sqrt5();
    Json j = to_json(chi_principal(s, ZetaMode::exact));
    CHECK(j["chi"] == "1/7200");
    CHECK(j["index_bound"] == "4");
    CHECK(j["chi_maximal_lower"] == "1/28800");
}

TEST_CASE("decimal annotations and tables") {
    CHECK(decimal(Rational(1, 7200), 6) == "1.38889e-04");
    std::string t = render_table({"a", "bb"}, {{"xyz", "1"}, {"p", "22"}});
    CHECK(t == "a    bb\nxyz  1\np    22\n");
}

}
