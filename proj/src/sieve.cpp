#include "orbivol/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "orbivol/error.hpp"

namespace orbivol {

namespace {

Integer floor_of(const Rational& q) {
    Integer z;
    mpz_fdiv_q(z.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
    return z;
}

bool passes_numerator(const Integer& nu, long even_max, long odd_max) {
    if (nu > even_max) return false;
    return nu % 2 == 0 || nu <= odd_max;
}

bool field_order(const FieldDescriptor& a, const FieldDescriptor& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.discriminant != b.discriminant) return a.discriminant < b.discriminant;
    return a.label < b.label;
}

}  // namespace

long SieveConfig::even_max() const {
    return numerator_even_max ? *numerator_even_max : floor_of(chi_max).get_si();
}

long SieveConfig::odd_max() const {
    return numerator_odd_max ? *numerator_odd_max : floor_of(chi_max / Rational(2)).get_si();
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::survives: return "survives";
        case Verdict::discarded_by_bound: return "discarded_by_bound";
        case Verdict::discarded_by_numerator: return "discarded_by_numerator";
        case Verdict::needs_data: return "needs_data";
    }
    return "unknown";
}

Verdict verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::survives, Verdict::discarded_by_bound, Verdict::discarded_by_numerator, Verdict::needs_data})
        if (to_string(v) == s) return v;
    throw ParseError(0, "unknown verdict '" + s + "'");
}

long SieveOutcome::stage1_total() const {
    long n = 0;
    for (auto [d, c] : stage1_by_degree) n += c;
    return n;
}

long SieveOutcome::stage2_total() const {
    long n = 0;
    for (auto [d, c] : stage2_by_degree) n += c;
    return n;
}

long SieveOutcome::needs_data() const {
    return std::count_if(reports.begin(), reports.end(),
                         [](const CandidateReport& r) { return r.verdict == Verdict::needs_data; });
}

std::vector<const CandidateReport*> SieveOutcome::survivors() const {
    std::vector<const CandidateReport*> out;
    for (const auto& r : reports)
        if (r.verdict == Verdict::survives) out.push_back(&r);
    return out;
}

RealInterval minimal_discriminant_lower_bound(int degree, mpfr_prec_t prec) {
    switch (degree) {
        case 1: return RealInterval(1, prec);
        case 2: return RealInterval(5, prec);
        case 3: return RealInterval(49, prec);
        case 4: return RealInterval(5, prec).pow(4);
        case 5: return RealInterval(Rational(13, 2), prec).pow(5);
        case 6: return RealInterval(Rational(79, 10), prec).pow(6);
        case 7: return RealInterval(20134393, prec);
        default: return RealInterval(10, prec).pow(degree);
    }
}

std::vector<std::pair<int, Integer>> discriminant_ranges(const Rational& chi_max) {
    if (chi_max.sign() <= 0) throw InvariantViolation("chi_max must be positive");
    std::vector<std::pair<int, Integer>> out;
    for (int d = 2;; ++d) {
        for (mpfr_prec_t prec = 128;; prec *= 2) {
            if (prec > 1 << 16) throw AmbiguousInterval("discriminant range for degree " + std::to_string(d) + " undecidable");
            RealInterval pi = RealInterval::pi(prec);
            RealInterval ratio = RealInterval(64, prec) * pi.pow(7) / RealInterval(36, prec);
            // B_d^4 = 25 chi_max ratio^d
            RealInterval b4 = RealInterval(Rational(25) * chi_max, prec) * ratio.pow(d);
            RealInterval L = minimal_discriminant_lower_bound(d, prec);
            RealInterval L4 = L.pow(4);
            if (b4.certainly_less(L4)) return out;
            if (!b4.certainly_greater(L4)) continue;  // straddles L^4: refine
            // floor(b4^{1/4}) via integer fourth-power checks on the exact endpoints
            RealInterval B = b4.sqrt().sqrt();
            Integer lo = B.floor_lower(), hi = B.floor_upper();
            if (lo != hi) continue;
            Integer n4 = ipow(lo, 4), m4 = ipow(lo + 1, 4);
            if (!(b4.lower_rational() >= Rational(n4) && b4.upper_rational() < Rational(m4))) continue;
            out.emplace_back(d, lo);
            break;
        }
    }
}

SieveOutcome run_sieve(const SieveConfig& config) {
    if (config.field_table.empty()) throw InvariantViolation("empty field table");
    if (config.chi_max.sign() <= 0) throw InvariantViolation("chi_max must be positive");
    int r = config.rank;
    SieveOutcome out;
    out.ranges = discriminant_ranges(config.chi_max);
    std::map<int, Integer> range_of(out.ranges.begin(), out.ranges.end());

    // stage 1: discriminant ranges
    std::vector<const FieldDescriptor*> stage1;
    for (const auto& f : config.field_table) {
        auto it = range_of.find(f.degree);
        if (it == range_of.end() || f.discriminant > it->second) continue;
        stage1.push_back(&f);
        ++out.stage1_by_degree[f.degree];
    }
    std::sort(stage1.begin(), stage1.end(), [](auto* a, auto* b) { return field_order(*a, *b); });

    // stage 2 (cheap, sequential) and stage 3 (exact chi, parallel)
    std::vector<CandidateReport> reports(stage1.size());
    RealInterval chi_max_iv(config.chi_max);
    std::vector<std::size_t> stage3;
    for (std::size_t k = 0; k < stage1.size(); ++k) {
        CandidateReport& rep = reports[k];
        rep.field = *stage1[k];
        try {
            RealInterval lb = field_chi_lower_bound(rep.field, r, true);
            rep.trace.push_back("field lower bound " + lb.str(12));
            if (lb.certainly_greater(chi_max_iv)) {
                rep.verdict = Verdict::discarded_by_bound;
                continue;
            }
        } catch (const UncertifiedPrime& e) {
            rep.verdict = Verdict::needs_data;
            rep.trace.push_back(e.what());
            continue;
        }
        ++out.stage2_by_degree[rep.field.degree];
        stage3.push_back(k);
    }

    long even_max = config.even_max(), odd_max = config.odd_max();
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr failure;
    auto worker = [&]() {
        for (;;) {
            std::size_t j = next.fetch_add(1);
            if (j >= stage3.size()) return;
            CandidateReport& rep = reports[stage3[j]];
            try {
                GroupSpec spec{r, rep.field, minimal_bad_places(rep.field, r, config.norm_bound)};
                rep.bad_places = spec.bad_places;
                ChiResult res = chi_principal(spec, ZetaMode::exact);
                rep.chi_principal = *res.exact;
                rep.numerator = res.exact->num();
                rep.trace.insert(rep.trace.end(), res.trace.begin(), res.trace.end());
                rep.verdict = passes_numerator(rep.numerator, even_max, odd_max) ? Verdict::survives
                                                                                  : Verdict::discarded_by_numerator;
            } catch (const UncertifiedPrime& e) {
                rep.verdict = Verdict::needs_data;
                rep.trace.push_back(e.what());
            } catch (const ReconstructionFailed& e) {
                rep.verdict = Verdict::needs_data;
                rep.trace.push_back(e.what());
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    unsigned n = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(stage3.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    for (const auto& rep : reports)
        if (rep.verdict == Verdict::survives) ++out.survivors_by_degree[rep.field.degree];

    std::stable_sort(reports.begin(), reports.end(), [](const CandidateReport& a, const CandidateReport& b) {
        if (a.chi_principal.has_value() != b.chi_principal.has_value()) return a.chi_principal.has_value();
        if (a.chi_principal && *a.chi_principal != *b.chi_principal) return *a.chi_principal < *b.chi_principal;
        return field_order(a.field, b.field);
    });
    out.reports = std::move(reports);
    return out;
}

std::vector<ManifoldCandidate> manifold_candidates(const std::vector<CandidateReport>& reports, const Rational& chi_max) {
    std::vector<ManifoldCandidate> out;
    int group = 0;
    long top = floor_of(chi_max).get_si();
    for (const auto& rep : reports) {
        if (rep.verdict != Verdict::survives || !rep.chi_principal) continue;
        ++group;
        for (long m = 2; m <= top; m += 2) {
            Rational idx = Rational(m) / *rep.chi_principal;
            if (!idx.is_integer()) continue;
            out.push_back({"Gamma_" + std::to_string(group), rep.field.label, *rep.chi_principal, m, idx.num()});
        }
    }
    return out;
}

}  // namespace orbivol
