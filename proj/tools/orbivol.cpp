// Command-line driver: tables, covolumes, zeta values and the sieve.
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "orbivol/covolume.hpp"
#include "orbivol/error.hpp"
#include "orbivol/localdata.hpp"
#include "orbivol/numberfields.hpp"
#include "orbivol/report.hpp"
#include "orbivol/sieve.hpp"
#include "orbivol/zeta.hpp"

using namespace orbivol;

namespace {

constexpr int kOk = 0;
constexpr int kIncomplete = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "text";
    std::string fields = ORBIVOL_FIELD_TABLE;
    long precision = 256;

    bool json() const { return format == "json"; }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    sub->add_option("--fields", c.fields, "field table (JSON Lines)")->capture_default_str();
    sub->add_option("--precision-bits", c.precision, "working precision in bits")
        ->envname("ORBIVOL_PRECISION_BITS")
        ->check(CLI::Range(32L, 1L << 20))
        ->capture_default_str();
}

FieldDescriptor lookup_field(const Common& c, const std::string& key) {
    if (key == "Q" || key == "1") return rational_field();
    auto table = load_field_table(c.fields);
    const FieldDescriptor* f = find_field(table, key);
    if (!f) throw UsageError("no field '" + key + "' in " + c.fields);
    return *f;
}

std::string interval_text(const RealInterval& x) {
    int n = 0;
    std::string digits = x.certified_digits(&n);
    return digits + "  (" + std::to_string(n) + " certified digits)";
}

// ------------------------------------------------------------- table2

struct Table2Args {
    int max_rank = 9;
    std::string variant = "both";
};

int cmd_table2(const Common& c, const Table2Args& a) {
    if (a.max_rank < 2) throw UsageError("--max-rank must be at least 2");
    std::vector<std::pair<std::string, Rational (*)(int)>> variants;
    if (a.variant != "noncompact") variants.emplace_back("compact", chi_closed_form_compact);
    if (a.variant != "compact") variants.emplace_back("noncompact", chi_closed_form_noncompact);
    Json out = Json::object();
    std::string text;
    for (const auto& [name, fn] : variants) {
        int best = 2;
        std::vector<Rational> vals;
        for (int r = 2; r <= a.max_rank; ++r) {
            vals.push_back(fn(r));
            if (vals.back() < vals[static_cast<std::size_t>(best - 2)]) best = r;
        }
        Json rows = Json::array();
        std::vector<std::vector<std::string>> trows;
        for (int r = 2; r <= a.max_rank; ++r) {
            const Rational& v = vals[static_cast<std::size_t>(r - 2)];
            rows.push_back({{"n", 2 * r}, {"r", r}, {"chi", v.str()}, {"minimum", r == best}});
            trows.push_back({std::to_string(2 * r), v.str(), decimal(v, 6), r == best ? "*" : ""});
        }
        out[name] = {{"rows", rows}, {"minimum_n", 2 * best}};
        text += name + ":\n" + render_table({"n", "chi", "approx", ""}, trows);
        text += "* smallest " + name + " value among the rows shown (n = " + std::to_string(2 * best) + ")\n\n";
    }
    if (c.json()) std::cout << out.dump() << "\n";
    else std::cout << text;
    return kOk;
}

// ------------------------------------------------------------- chi

struct ChiArgs {
    std::string field = "2.2.5.1";
    int rank = 2;
    std::vector<std::string> places;
    bool minimal = false;
    std::string mode = "exact";
    unsigned long prime_bound = 10000;
};

int cmd_chi(const Common& c, const ChiArgs& a) {
    GroupSpec spec;
    spec.rank = a.rank;
    spec.field = lookup_field(c, a.field);
    if (a.minimal && !a.places.empty()) throw UsageError("--place and --minimal-places are exclusive");
    if (a.minimal) spec.bad_places = minimal_bad_places(spec.field, a.rank);
    for (const auto& p : a.places) spec.bad_places.push_back(LocalPlaceData::parse(p, a.rank));
    ChiResult res = chi_principal(spec, a.mode == "exact" ? ZetaMode::exact : ZetaMode::enclosure, a.prime_bound,
                                  static_cast<mpfr_prec_t>(c.precision));
    if (c.json()) {
        Json j;
        j["field"] = spec.field.label;
        j["rank"] = a.rank;
        j["bad_places"] = Json::array();
        for (const auto& v : spec.bad_places) j["bad_places"].push_back(to_json(v));
        j["result"] = to_json(res);
        if (res.exact) j["volume"] = to_json(hyperbolic_volume(*res.exact, a.rank, static_cast<mpfr_prec_t>(c.precision)));
        std::cout << j.dump() << "\n";
        return kOk;
    }
    std::cout << "field        " << spec.field.label << "\n";
    std::cout << "rank         " << a.rank << " (n = " << 2 * a.rank << ")\n";
    std::string T;
    for (const auto& v : spec.bad_places) T += (T.empty() ? "" : " ") + v.str();
    std::cout << "bad places   " << (T.empty() ? "-" : T) << "\n";
    if (res.exact) {
        std::cout << "chi          " << res.exact->str() << "  (" << decimal(*res.exact) << ")\n";
        std::cout << "volume       " << interval_text(hyperbolic_volume(*res.exact, a.rank, static_cast<mpfr_prec_t>(c.precision)))
                  << "\n";
    } else {
        std::cout << "chi          " << interval_text(res.enclosure) << "\n";
    }
    std::cout << "index bound  " << res.index_bound.get_str() << "\n";
    if (res.chi_maximal_lower) std::cout << "chi/index    " << res.chi_maximal_lower->str() << "\n";
    else std::cout << "chi/index    " << interval_text(res.chi_maximal_lower_enclosure) << "\n";
    for (const auto& t : res.trace) std::cout << "  " << t << "\n";
    return kOk;
}

// ------------------------------------------------------------- lambda-table

struct LambdaArgs {
    int rank = 2;
    std::vector<unsigned long> qs{2, 3, 4, 5};
};

int cmd_lambda(const Common& c, const LambdaArgs& a) {
    if (a.rank < 2) throw UsageError("--rank must be at least 2");
    Json rows = Json::array();
    std::vector<std::vector<std::string>> trows;
    for (unsigned long q : a.qs) {
        if (!prime_power(q)) throw UsageError(std::to_string(q) + " is not a prime power");
        for (const auto& t : legal_types(a.rank)) {
            LocalPlaceData v{q, t};
            Rational l = lambda_factor(v, a.rank);
            Rational o = lambda_factor_via_orders(v, a.rank);
            bool agree = l == o;
            rows.push_back({{"q", q}, {"type", t.name()}, {"place", v.str()}, {"lambda", l.str()},
                            {"lambda_via_orders", o.str()}, {"agree", agree}, {"xi", xi_order(v)}});
            trows.push_back({std::to_string(q), t.name(), l.str(), o.str(), std::to_string(xi_order(v))});
            if (!agree) throw InvariantViolation("lambda closed form and group orders disagree at " + v.str());
        }
    }
    if (c.json()) std::cout << Json{{"rank", a.rank}, {"rows", rows}}.dump() << "\n";
    else std::cout << render_table({"q", "type", "lambda", "via orders", "xi"}, trows);
    return kOk;
}

// ------------------------------------------------------------- lemma-bounds

int cmd_lemma(const Common& c, const std::string& chi_max) {
    auto ranges = discriminant_ranges(Rational::parse(chi_max));
    if (c.json()) {
        Json rows = Json::array();
        for (const auto& [d, D] : ranges) rows.push_back({{"degree", d}, {"max_discriminant", D.get_str()}});
        std::cout << Json{{"chi_max", Rational::parse(chi_max).str()}, {"ranges", rows}}.dump() << "\n";
        return kOk;
    }
    std::vector<std::vector<std::string>> trows;
    for (const auto& [d, D] : ranges) trows.push_back({std::to_string(d), D.get_str()});
    std::cout << render_table({"degree", "max discriminant"}, trows);
    int stop = ranges.empty() ? 2 : ranges.back().first + 1;
    std::cout << "degree " << stop << " and above: bound below the smallest discriminant\n";
    return kOk;
}

// ------------------------------------------------------------- sieve

struct SieveArgs {
    std::string chi_max = "24";
    unsigned workers = 0;
    unsigned long norm_bound = 100;
};

int cmd_sieve(const Common& c, const SieveArgs& a) {
    SieveConfig cfg;
    cfg.chi_max = Rational::parse(a.chi_max);
    if (cfg.chi_max.sign() <= 0) throw UsageError("--chi-max must be positive");
    cfg.workers = a.workers;
    cfg.norm_bound = a.norm_bound;
    cfg.field_table = load_field_table(c.fields);
    SieveOutcome out = run_sieve(cfg);
    auto cands = manifold_candidates(out.reports, cfg.chi_max);
    std::cout << (c.json() ? render_sieve_jsonl(out, cands, cfg.rank) : render_sieve_text(out, cands));
    return out.needs_data() ? kIncomplete : kOk;
}

// ------------------------------------------------------------- zeta

struct ZetaArgs {
    std::string field = "2.2.5.1";
    int argument = -1;
    unsigned long prime_bound = 10000;
};

int cmd_zeta(const Common& c, const ZetaArgs& a) {
    FieldDescriptor k = lookup_field(c, a.field);
    auto prec = static_cast<mpfr_prec_t>(c.precision);
    ZetaValue z;
    z.argument = a.argument;
    if (a.argument < 0 && a.argument % 2 != 0) {
        z = dedekind_zeta_negative(k, static_cast<unsigned>((1 - a.argument) / 2), 0, prec);
    } else if (a.argument >= 2 && a.argument % 2 == 0) {
        z.enclosure = dedekind_zeta_positive_enclosure(k, static_cast<unsigned>(a.argument), a.prime_bound, prec);
        z.method = ZetaMethod::euler_product_enclosure;
        z.prime_bound = a.prime_bound;
    } else {
        throw UsageError("argument must be a negative odd integer or an even integer >= 2");
    }
    if (c.json()) {
        Json j = to_json(z);
        j["field"] = k.label;
        std::cout << j.dump() << "\n";
        return kOk;
    }
    std::cout << "zeta_" << k.label << "(" << a.argument << ") = ";
    if (z.exact) std::cout << z.exact->str() << "  (" << decimal(*z.exact) << ")";
    else std::cout << interval_text(*z.enclosure);
    std::cout << "  [" << to_string(z.method) << "]\n";
    return kOk;
}

// ------------------------------------------------------------- example34

int cmd_example34(const Common& c, int max_rank) {
    if (max_rank < 2) throw UsageError("--max-rank must be at least 2");
    Json rows = Json::array();
    std::vector<std::vector<std::string>> trows;
    for (int r = 2; r <= max_rank; ++r) {
        Rational chi = chi_unimodular_stabilizer(r);
        Rational branch = unimodular_branch_factor(r);
        rows.push_back({{"n", 2 * r}, {"r", r}, {"chi", chi.str()}, {"branch_factor", branch.str()}});
        trows.push_back({std::to_string(2 * r), chi.str(), decimal(chi, 6), branch.str()});
    }
    if (c.json()) std::cout << Json{{"rows", rows}}.dump() << "\n";
    else std::cout << render_table({"n", "chi", "approx", "branch"}, trows);
    return kOk;
}

// ------------------------------------------------------------- volume

int cmd_volume(const Common& c, const std::string& chi_s, int rank) {
    if (rank < 1) throw UsageError("--rank must be positive");
    Rational chi = Rational::parse(chi_s);
    if (chi.sign() <= 0) throw UsageError("--chi must be positive");
    RealInterval v = hyperbolic_volume(chi, rank, static_cast<mpfr_prec_t>(c.precision));
    if (c.json()) std::cout << Json{{"chi", chi.str()}, {"rank", rank}, {"volume", to_json(v)}}.dump() << "\n";
    else std::cout << "volume " << interval_text(v) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euler characteristics and volumes of arithmetic hyperbolic orbifolds"};
    app.require_subcommand(1, 1);
    Common common;

    Table2Args t2;
    auto* table2 = app.add_subcommand("table2", "closed-form minimal Euler characteristics");
    table2->add_option("--max-rank", t2.max_rank, "largest rank r (n = 2r)")->capture_default_str();
    table2->add_option("--variant", t2.variant)->check(CLI::IsMember({"compact", "noncompact", "both"}))->capture_default_str();

    ChiArgs ca;
    auto* chi = app.add_subcommand("chi", "Euler characteristic of a principal arithmetic group");
    chi->add_option("--field", ca.field, "field label or discriminant (Q for the rationals)")->capture_default_str();
    chi->add_option("--rank", ca.rank)->check(CLI::Range(2, 64))->capture_default_str();
    chi->add_option("--place", ca.places, "bad place q:split|nonsplit:vertex (repeatable)");
    chi->add_flag("--minimal-places", ca.minimal, "choose the bad places minimising chi");
    chi->add_option("--mode", ca.mode)->check(CLI::IsMember({"exact", "enclosure"}))->capture_default_str();
    chi->add_option("--prime-bound", ca.prime_bound)->check(CLI::Range(100UL, 100000000UL))->capture_default_str();

    LambdaArgs la;
    auto* lambda = app.add_subcommand("lambda-table", "local lambda factors of all maximal types");
    lambda->add_option("--rank", la.rank)->capture_default_str();
    lambda->add_option("--q", la.qs, "residue field sizes")->capture_default_str();

    std::string lemma_chi = "24";
    auto* lemma = app.add_subcommand("lemma-bounds", "discriminant ranges for a chi bound");
    lemma->add_option("--chi-max", lemma_chi)->capture_default_str();

    SieveArgs sa;
    auto* sieve = app.add_subcommand("sieve", "search for the smallest compact groups in dimension 4");
    sieve->add_option("--chi-max", sa.chi_max)->capture_default_str();
    sieve->add_option("--workers", sa.workers, "0 = available parallelism")->capture_default_str();
    sieve->add_option("--norm-bound", sa.norm_bound, "largest residue size tried for bad places")->capture_default_str();

    ZetaArgs za;
    auto* zeta = app.add_subcommand("zeta", "Dedekind zeta value");
    zeta->add_option("--field", za.field, "field label or discriminant (Q for the rationals)")->capture_default_str();
    zeta->add_option("--argument", za.argument, "negative odd or positive even integer")->required();
    zeta->add_option("--prime-bound", za.prime_bound)->check(CLI::Range(100UL, 100000000UL))->capture_default_str();

    int ex_rank = 9;
    auto* example34 = app.add_subcommand("example34", "stabilizer of the odd unimodular lattice");
    example34->add_option("--max-rank", ex_rank)->capture_default_str();

    std::string vol_chi;
    int vol_rank = 2;
    auto* volume = app.add_subcommand("volume", "hyperbolic volume from an Euler characteristic");
    volume->add_option("--chi", vol_chi)->required();
    volume->add_option("--rank", vol_rank)->capture_default_str();

    for (auto* sub : {table2, chi, lambda, lemma, sieve, zeta, example34, volume}) add_common(sub, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        set_default_precision(static_cast<mpfr_prec_t>(common.precision));
        if (*table2) return cmd_table2(common, t2);
        if (*chi) return cmd_chi(common, ca);
        if (*lambda) return cmd_lambda(common, la);
        if (*lemma) return cmd_lemma(common, lemma_chi);
        if (*sieve) return cmd_sieve(common, sa);
        if (*zeta) return cmd_zeta(common, za);
        if (*example34) return cmd_example34(common, ex_rank);
        if (*volume) return cmd_volume(common, vol_chi, vol_rank);
    } catch (const UncertifiedPrime& e) {
        std::cerr << "incomplete: " << e.what() << "\n";
        return kIncomplete;
    } catch (const ReconstructionFailed& e) {
        std::cerr << "incomplete: " << e.what() << "\n";
        return kIncomplete;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
