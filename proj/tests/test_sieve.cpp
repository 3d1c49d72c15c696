#include <doctest.h>

#include "fixtures.hpp"
#include "orbivol/error.hpp"
#include "orbivol/report.hpp"
#include "orbivol/sieve.hpp"

using namespace orbivol;

namespace {

const SieveOutcome& default_run() {
    static const SieveOutcome out = [] {
        SieveConfig cfg;
        cfg.field_table = fixtures::table();
        cfg.workers = 4;
        return run_sieve(cfg);
    }();
    return out;
}

}  // namespace

TEST_SUITE("sieve") {

TEST_CASE("discriminant ranges for chi <= 24") {
    auto got = discriminant_ranges(Rational(24));
    REQUIRE(got.size() == 5);
    CHECK(got[0] == std::pair<int, Integer>{2, 362});
    CHECK(got[1] == std::pair<int, Integer>{3, 3104});
    CHECK(got[3] == std::pair<int, Integer>{5, 227481});
    CHECK(got[4] == std::pair<int, Integer>{6, 1947276});
    CHECK_THROWS_AS(discriminant_ranges(Rational(0)), InvariantViolation);
}

TEST_CASE("discriminant ranges are monotone in chi_max") {
    const Rational steps[] = {Rational(1, 100), Rational(1), Rational(2), Rational(12), Rational(24),
                              Rational(26), Rational(1000), Rational(100000)};
    std::vector<std::pair<int, Integer>> prev;
    for (const auto& c : steps) {
        auto cur = discriminant_ranges(c);
        REQUIRE(cur.size() >= prev.size());
        for (std::size_t i = 0; i < prev.size(); ++i) {
            CHECK(cur[i].first == prev[i].first);
            CHECK(cur[i].second >= prev[i].second);
        }
        prev = cur;
    }
}

TEST_CASE("numerator thresholds follow chi_max") {
    SieveConfig cfg;
    CHECK(cfg.even_max() == 24);
    CHECK(cfg.odd_max() == 12);
    cfg.chi_max = Rational(2);
    CHECK(cfg.even_max() == 2);
    CHECK(cfg.odd_max() == 1);
    cfg.numerator_odd_max = 5;
    CHECK(cfg.odd_max() == 5);
}

TEST_CASE("default sieve leaves two groups") {
    const auto& out = default_run();
    auto s = out.survivors();
    REQUIRE(s.size() == 2);
    CHECK(s[0]->field.label == "2.2.5.1");
    CHECK(*s[0]->chi_principal == Rational(1, 7200));
    CHECK(s[0]->bad_places.empty());
    CHECK(s[1]->field.label == "2.2.8.1");
    CHECK(*s[1]->chi_principal == Rational(11, 5760));
    CHECK(out.needs_data() == 0);
    CHECK(out.stage1_total() == static_cast<long>(out.reports.size()));
    CHECK(out.stage1_by_degree.at(2) == 109);
    for (const auto* r : s) {
        long nu = r->numerator.get_si();
        CHECK((nu <= 24 && (nu % 2 == 0 || nu <= 12)));
    }
}

TEST_CASE("no compact report beats the golden field") {
    for (const auto& r : default_run().reports) {
        if (!r.chi_principal || r.field.degree < 2) continue;
        CHECK(*r.chi_principal >= Rational(1, 7200));
    }
}

TEST_CASE("reports are ordered by chi") {
    std::optional<Rational> prev;
    bool seen_unset = false;
    for (const auto& r : default_run().reports) {
        if (!r.chi_principal) {
            seen_unset = true;
            continue;
        }
        CHECK_FALSE(seen_unset);
        if (prev) CHECK(*prev <= *r.chi_principal);
        prev = r.chi_principal;
    }
}

TEST_CASE("manifold candidates") {
    auto c = manifold_candidates(default_run().reports, Rational(24));
    std::vector<ManifoldCandidate> g1, g2;
    for (const auto& m : c) (m.group == "Gamma_1" ? g1 : g2).push_back(m);
    REQUIRE(g1.size() == 12);
    CHECK(g1.front().chi_manifold == 2);
    CHECK(g1.front().index == 14400);
    CHECK(g1.back().chi_manifold == 24);
    CHECK(g1.back().index == 172800);
    REQUIRE(g2.size() == 1);
    CHECK(g2[0].field_label == "2.2.8.1");
    CHECK(g2[0].chi_manifold == 22);
    CHECK(g2[0].index == 11520);
    for (const auto& m : c) CHECK(m.chi_group * Rational(m.index) == Rational(m.chi_manifold));
}

TEST_CASE("tighter chi_max keeps only the first group") {
    SieveConfig cfg;
    cfg.field_table = fixtures::table();
    cfg.chi_max = Rational(2);
    cfg.workers = 2;
    auto out = run_sieve(cfg);
    auto s = out.survivors();
    REQUIRE(s.size() == 1);
    CHECK(s[0]->field.label == "2.2.5.1");
}

TEST_CASE("chi_max below the global minimum leaves nothing") {
    SieveConfig cfg;
    cfg.field_table = fixtures::table();
    cfg.chi_max = Rational(1, 10000);
    CHECK(run_sieve(cfg).survivors().empty());
}

TEST_CASE("results do not depend on the worker count") {
    SieveConfig cfg;
    cfg.field_table = fixtures::table();
    cfg.workers = 1;
    std::string one = render_sieve_jsonl(run_sieve(cfg), {}, 2);
    cfg.workers = 5;
    std::string five = render_sieve_jsonl(run_sieve(cfg), {}, 2);
    CHECK(one == five);
    CHECK(one == render_sieve_jsonl(default_run(), {}, 2));
}

TEST_CASE("uncertified primes become needs_data") {
    SieveConfig cfg;
    // y^3 - 2y^2 - 8y + 8 generates the cubic field of discriminant 49 with index 8
    cfg.field_table = {fixtures::sqrt5(), make_field("3.3.49.9", {8, -8, -2, 1}, 49, 1)};
    auto out = run_sieve(cfg);
    CHECK(out.needs_data() == 1);
    CHECK(out.survivors().size() == 1);
    bool found = false;
    for (const auto& r : out.reports)
        if (r.verdict == Verdict::needs_data) {
            found = true;
            CHECK(r.field.label == "3.3.49.9");
        }
    CHECK(found);
}

TEST_CASE("empty table is rejected") {
    SieveConfig cfg;
    CHECK_THROWS_AS(run_sieve(cfg), InvariantViolation);
}

TEST_CASE("verdict strings") {
    for (Verdict v : {Verdict::survives, Verdict::discarded_by_bound, Verdict::discarded_by_numerator, Verdict::needs_data})
        CHECK(verdict_from_string(to_string(v)) == v);
    CHECK_THROWS_AS(verdict_from_string("maybe"), ParseError);
}

}
