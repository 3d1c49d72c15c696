// One PASS/FAIL line per acceptance criterion.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orbivol/covolume.hpp"
#include "orbivol/error.hpp"
#include "orbivol/localdata.hpp"
#include "orbivol/numberfields.hpp"
#include "orbivol/sieve.hpp"
#include "orbivol/zeta.hpp"

using namespace orbivol;

namespace {

const FieldDescriptor& golden() {
    static const FieldDescriptor f = make_field("2.2.5.1", {-1, -1, 1}, 5, 1);
    return f;
}

std::string field_table_path() {
    if (const char* p = std::getenv("ORBIVOL_FIELD_TABLE")) return p;
    return ORBIVOL_FIELD_TABLE;
}

// Collects failure messages; empty means pass.
struct Outcome {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

int run(int id, const std::string& name, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
        std::ostringstream os;
        os << "took " << secs << " s, budget " << budget_s << " s";
        out.failures.push_back(os.str());
    }
    bool ok = out.failures.empty();
    std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << static_cast<long>(secs * 1000)
              << " ms)";
    for (const auto& f : out.failures) std::cout << "; " << f;
    std::cout << "\n";
    for (const auto& n : out.notes) std::cout << "     note: " << n << "\n";
    std::cout.flush();
    return ok ? 0 : 1;
}

// Bad places realising the closed forms: one 2-adic nonsplit place deleting
// alpha_{r-1} whenever parity needs it.
GroupSpec closed_form_spec(const FieldDescriptor& field, int r) {
    GroupSpec spec;
    spec.rank = r;
    spec.field = field;
    if (!parity_check(r, field.degree, 0)) {
        unsigned long q = field.is_rational() ? 2 : 4;
        spec.bad_places.push_back({q, ParahoricType::make(Form::nonsplit, r - 1, r)});
    }
    return spec;
}

}  // namespace

int main() {
    int failed = 0;

    failed += run(1, "minimal compact chi closed forms r=2..6", 1.0, [](Outcome& o) {
        const char* want[] = {"1/7200", "67/576000", "24187/8709120000", "309479461547/3483648000000",
                              "7939510008126649607/3766102179840000000"};
        for (int r = 2; r <= 6; ++r) {
            Rational got = chi_closed_form_compact(r);
            o.expect(got == Rational::parse(want[r - 2]), "r=" + std::to_string(r) + " gave " + got.str());
        }
    });

    failed += run(2, "minimal non-compact chi closed forms r=2..9", 1.0, [](Outcome& o) {
        const char* want[] = {"1/960",
                              "1/207360",
                              "1/348364800",
                              "1/91968307200",
                              "691/191294078976000",
                              "87757/289236647411712000",
                              "2499347/2360171042879569920000",
                              "109638854849/67802993719844284661760000"};
        for (int r = 2; r <= 9; ++r) {
            Rational got = chi_closed_form_noncompact(r);
            o.expect(got == Rational::parse(want[r - 2]), "r=" + std::to_string(r) + " gave " + got.str());
        }
    });

    failed += run(3, "minimal-volume dimensions and compact/non-compact ordering", 1.0, [](Outcome& o) {
        int best_c = 2, best_n = 2;
        for (int r = 2; r <= 9; ++r) {
            if (chi_closed_form_compact(r) < chi_closed_form_compact(best_c)) best_c = r;
            if (chi_closed_form_noncompact(r) < chi_closed_form_noncompact(best_n)) best_n = r;
        }
        o.expect(2 * best_c == 8, "compact minimum at n=" + std::to_string(2 * best_c));
        o.expect(2 * best_n == 16, "non-compact minimum at n=" + std::to_string(2 * best_n));
        o.expect(chi_closed_form_compact(2) < chi_closed_form_noncompact(2), "compact(4) >= noncompact(4)");
        for (int r = 3; r <= 9; ++r)
            o.expect(chi_closed_form_noncompact(r) < chi_closed_form_compact(r),
                     "noncompact >= compact at n=" + std::to_string(2 * r));
    });

    failed += run(4, "volume formula vs closed forms r=2..9 (exact and enclosure)", 30.0, [](Outcome& o) {
        for (int r = 2; r <= 9; ++r) {
            for (bool compact : {true, false}) {
                GroupSpec spec = closed_form_spec(compact ? golden() : rational_field(), r);
                Rational want = compact ? chi_closed_form_compact(r) : chi_closed_form_noncompact(r);
                std::string tag = std::string(compact ? "compact" : "noncompact") + " r=" + std::to_string(r);
                ChiResult ex = chi_principal(spec, ZetaMode::exact);
                o.expect(ex.exact && *ex.exact == want, tag + " exact mismatch");
                ChiResult en = chi_principal(spec, ZetaMode::enclosure, 10000, 256);
                o.expect(en.enclosure.contains(want), tag + " enclosure misses the closed form");
                o.expect(en.enclosure.relative_width() < 1e-20,
                         tag + " relative width " + std::to_string(en.enclosure.relative_width()));
            }
        }
    });

    failed += run(5, "lambda table vs finite group orders; positivity bounds", 5.0, [](Outcome& o) {
        const unsigned long qs[] = {2, 3, 4, 5, 7, 8, 9, 11};
        long cases = 0, exceptions = 0;
        for (int r = 2; r <= 6; ++r)
            for (unsigned long q : qs)
                for (const auto& t : legal_types(r)) {
                    LocalPlaceData v{q, t};
                    Rational a = lambda_factor(v, r);
                    Rational b = lambda_factor_via_orders(v, r);
                    ++cases;
                    o.expect(a == b, "mismatch at " + v.str() + " r=" + std::to_string(r));
                    if (t.is_hyperspecial()) {
                        o.expect(a == Rational(1), "hyperspecial lambda != 1");
                        continue;
                    }
                    o.expect(a > Rational(1), "lambda <= 1 at " + v.str());
                    if (!(a > Rational(2))) {
                        ++exceptions;
                        bool expected = r == 2 && q == 2 && t.form == Form::nonsplit && t.vertex == 1 &&
                                        a == Rational(3, 2);
                        o.expect(expected, "lambda <= 2 at " + v.str() + " r=" + std::to_string(r));
                    }
                }
        o.expect(exceptions == 1, "expected exactly one lambda <= 2 case, saw " + std::to_string(exceptions));
        o.notes.push_back(std::to_string(cases) + " (type, q, r) cases");
    });

    failed += run(6, "discriminant ranges for chi <= 24", 1.0, [](Outcome& o) {
        auto got = discriminant_ranges(Rational(24));
        std::vector<std::pair<int, Integer>> want = {
            {2, 362}, {3, 3104}, {4, 26574}, {5, 227481}, {6, 1947276}};
        o.expect(got == want, "ranges differ");
        if (!got.empty()) o.expect(got.back().first == 6, "does not stop before d=7");
    });

    failed += run(7, "sieve end to end on the bundled table", 600.0, [](Outcome& o) {
        SieveConfig cfg;
        cfg.field_table = load_field_table(field_table_path());
        cfg.workers = 4;
        SieveOutcome out = run_sieve(cfg);
        auto surv = out.survivors();
        o.expect(surv.size() == 2, "survivor count " + std::to_string(surv.size()));
        if (surv.size() == 2) {
            o.expect(surv[0]->field.discriminant == 5 && surv[0]->field.degree == 2 &&
                         surv[0]->chi_principal == Rational(1, 7200),
                     "first survivor is not Q(sqrt5) with 1/7200");
            o.expect(surv[1]->field.discriminant == 8 && surv[1]->field.degree == 2 &&
                         surv[1]->chi_principal == Rational(11, 5760),
                     "second survivor is not Q(sqrt2) with 11/5760");
        }
        o.expect(out.needs_data() == 0, std::to_string(out.needs_data()) + " needs_data verdicts");
        bool found = false;
        for (const auto& c : manifold_candidates(out.reports, cfg.chi_max))
            if (c.group == "Gamma_2") {
                o.expect(c.chi_manifold == 22 && c.index == 11520, "Gamma_2 row is not (22, 11520)");
                found = true;
            }
        o.expect(found, "no Gamma_2 candidate");
        std::ostringstream diag;
        diag << "stage-1 fields: " << out.stage1_total() << " (reference count 466";
        if (out.stage1_total() != 466) diag << "; differs, table provenance diagnostic only";
        diag << ")";
        o.notes.push_back(diag.str());
    });

    failed += run(8, "zeta product bound over Q(sqrt5) below 2", 10.0, [](Outcome& o) {
        RealInterval prod(1);
        RealInterval two(2);
        for (unsigned r = 1; r <= 100; ++r) {
            prod *= dedekind_zeta_positive_enclosure(golden(), 2 * r);
            o.expect(prod.certainly_less(two), "product not below 2 at r=" + std::to_string(r));
        }
        RealInterval z2e = dedekind_zeta_positive_enclosure(golden(), 2) * RealInterval(Rational(1, 3)).exp();
        o.expect(z2e.certainly_less(two), "zeta(2) e^{1/3} not below 2");
    });

    failed += run(9, "parity condition property suite", 5.0, [](Outcome& o) {
        for (int r = 2; r <= 9; ++r)
            for (long n = 0; n <= 6; ++n)
                o.expect(parity_check(r, 2, n) == (n % 2 == r % 2),
                         "quadratic statement fails at r=" + std::to_string(r) + " n=" + std::to_string(n));
        std::mt19937_64 rng(20240917);
        std::uniform_int_distribution<int> rr(2, 40), dd(1, 12);
        std::uniform_int_distribution<long> nn(0, 1000);
        long bad = 0;
        for (int k = 0; k < 10000; ++k) {
            int r = rr(rng), d = dd(rng);
            long n = nn(rng);
            if (parity_check(r, d, n) != parity_check(r, d, n + 2)) ++bad;
            if (parity_check(r, d, n) == parity_check(r, d, n + 1)) ++bad;
        }
        o.expect(bad == 0, std::to_string(bad) + " random cases broke invariance");
    });

    failed += run(10, "minimality sweep r=2 over the bundled table", 120.0, [](Outcome& o) {
        auto table = load_field_table(field_table_path());
        RealInterval target(Rational(1, 7200));
        long checked = 0;
        for (const auto& f : table) {
            if (f.degree == 2 && f.discriminant == 5) continue;
            RealInterval lb = field_chi_lower_bound(f, 2, true);
            ++checked;
            o.expect(lb.certainly_greater(target), "bound not above 1/7200 for " + f.label);
        }
        o.notes.push_back(std::to_string(checked) + " fields checked");
    });

    failed += run(11, "unimodular stabilizer example", 1.0, [](Outcome& o) {
        o.expect(chi_unimodular_stabilizer(2) == Rational(1, 576), "r=2 gave " + chi_unimodular_stabilizer(2).str());
        for (int r : {2, 3, 6, 7}) {
            Rational want = Rational(ipow(Integer(2), 2 * r) - 1, 6);
            o.expect(unimodular_branch_factor(r) == want, "branch factor wrong at r=" + std::to_string(r));
        }
        for (int r : {4, 5, 8, 9}) o.expect(unimodular_branch_factor(r) == Rational(1), "r=0,1 branch not 1");
    });

    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
