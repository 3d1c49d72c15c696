#include "orbivol/numberfields.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "orbivol/error.hpp"

namespace orbivol {

namespace {

// ---------------------------------------------------------- F_p[x] kernel
// Polynomials are ascending coefficient vectors with no trailing zeros.

using Poly = std::vector<std::uint64_t>;

struct Fp {
    std::uint64_t p;

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }
    std::uint64_t inv(std::uint64_t a) const {
        // a^(p-2)
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    static void trim(Poly& f) {
        while (!f.empty() && f.back() == 0) f.pop_back();
    }
    static int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

    Poly sub(Poly a, const Poly& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
        trim(a);
        return a;
    }

    Poly mul(const Poly& a, const Poly& b) const {
        if (a.empty() || b.empty()) return {};
        Poly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mul(a[i], b[j])) % p;
        }
        trim(r);
        return r;
    }

    // returns (quotient, remainder)
    std::pair<Poly, Poly> divmod(Poly a, const Poly& b) const {
        if (b.empty()) throw InvariantViolation("polynomial division by zero");
        int db = deg(b);
        if (deg(a) < db) return {{}, a};
        std::uint64_t lead_inv = inv(b.back());
        Poly q(a.size() - b.size() + 1, 0);
        for (int i = deg(a); i >= db; --i) {
            std::uint64_t c = mul(a[i], lead_inv);
            q[i - db] = c;
            if (!c) continue;
            for (int j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + p - mul(c, b[j])) % p;
        }
        trim(a);
        trim(q);
        return {q, a};
    }

    Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
    Poly div(const Poly& a, const Poly& b) const { return divmod(a, b).first; }

    Poly monic(Poly a) const {
        if (a.empty()) return a;
        std::uint64_t li = inv(a.back());
        for (auto& c : a) c = mul(c, li);
        return a;
    }

    Poly gcd(Poly a, Poly b) const {
        while (!b.empty()) {
            Poly r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    Poly derivative(const Poly& f) const {
        Poly r;
        for (std::size_t i = 1; i < f.size(); ++i) r.push_back(mul(f[i], i % p));
        trim(r);
        return r;
    }

    // base^e mod m
    Poly powmod(Poly base, std::uint64_t e, const Poly& m) const {
        Poly r{1};
        base = mod(base, m);
        while (e) {
            if (e & 1) r = mod(mul(r, base), m);
            e >>= 1;
            if (e) base = mod(mul(base, base), m);
        }
        return r;
    }

    // f(x) = g(x^p) -> g(x); over F_p coefficients are their own p-th roots
    Poly pth_root(const Poly& f) const {
        Poly r;
        for (std::size_t i = 0; i < f.size(); i += p) r.push_back(f[i]);
        trim(r);
        return r;
    }

    // squarefree decomposition: list of (squarefree factor, multiplicity)
    void squarefree(const Poly& f, std::uint64_t mult, std::vector<std::pair<Poly, int>>& out) const {
        if (deg(f) < 1) return;
        Poly d = derivative(f);
        if (d.empty()) {
            squarefree(pth_root(f), mult * p, out);
            return;
        }
        Poly c = gcd(f, d);
        Poly w = div(f, c);
        std::uint64_t i = 1;
        while (deg(w) > 0) {
            Poly y = gcd(w, c);
            Poly fac = div(w, y);
            if (deg(fac) > 0) out.emplace_back(monic(fac), static_cast<int>(i * mult));
            w = y;
            c = div(c, y);
            ++i;
        }
        if (deg(c) > 0) squarefree(pth_root(c), mult * p, out);
    }

    // distinct-degree factorisation of a monic squarefree g: residue degrees
    std::vector<int> ddf(Poly g) const {
        std::vector<int> degs;
        Poly x{0, 1};
        Poly h = x;
        int i = 0;
        while (deg(g) > 0) {
            ++i;
            if (2 * i > deg(g)) {
                degs.push_back(deg(g));
                break;
            }
            h = powmod(h, p, g);
            Poly t = gcd(g, sub(h, x));
            int dt = deg(t);
            if (dt > 0) {
                for (int k = 0; k < dt / i; ++k) degs.push_back(i);
                g = div(g, t);
                h = mod(h, g);
            }
        }
        return degs;
    }
};

Integer bareiss_det(std::vector<std::vector<Integer>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && m[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(m[k], m[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace

// ------------------------------------------------------------- utilities

std::string field_fingerprint(const FieldDescriptor& f) {
    std::string k = f.label + "|" + f.discriminant.get_str() + "|";
    for (const auto& c : f.polynomial) k += c.get_str() + ",";
    for (const auto& [p, fac] : f.splitting_overrides) {
        k += "|" + std::to_string(p) + ":";
        for (auto [fd, e] : fac) k += std::to_string(fd) + "^" + std::to_string(e) + ",";
    }
    return k;
}

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d : {2ul, 3ul, 5ul, 7ul}) {
        if (n % d == 0) return n == d;
    }
    for (unsigned long d = 11; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<unsigned long> primes_up_to(unsigned long n) {
    std::vector<unsigned long> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (unsigned long i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

std::optional<std::pair<unsigned long, int>> prime_power(unsigned long q) {
    if (q < 2) return std::nullopt;
    unsigned long p = 0;
    for (unsigned long d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return std::make_pair(q, 1);
    int f = 0;
    while (q % p == 0) {
        q /= p;
        ++f;
    }
    if (q != 1) return std::nullopt;
    return std::make_pair(p, f);
}

Integer polynomial_discriminant(const std::vector<Integer>& poly) {
    int n = static_cast<int>(poly.size()) - 1;
    if (n < 1) throw InvariantViolation("discriminant of a constant polynomial");
    if (n == 1) return 1;
    // Sylvester matrix of f and f', both written high-to-low
    std::vector<Integer> f(poly.rbegin(), poly.rend());
    std::vector<Integer> df;
    for (int i = n; i >= 1; --i) df.push_back(poly[i] * i);
    int size = 2 * n - 1;
    std::vector<std::vector<Integer>> m(size, std::vector<Integer>(size, 0));
    for (int r = 0; r < n - 1; ++r)
        for (int j = 0; j <= n; ++j) m[r][r + j] = f[j];
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j) m[n - 1 + r][r + j] = df[j];
    Integer res = bareiss_det(std::move(m));
    // disc = (-1)^{n(n-1)/2} Res(f, f') / lc(f)
    Integer lc = poly.back();
    Integer d = res / lc;
    if ((n * (n - 1) / 2) % 2 == 1) d = -d;
    return d;
}

// ------------------------------------------------------------ descriptors

void FieldDescriptor::validate() {
    if (degree < 1) throw InvariantViolation(label + ": degree must be positive");
    if (static_cast<int>(polynomial.size()) != degree + 1)
        throw InvariantViolation(label + ": polynomial degree does not match field degree");
    if (polynomial.back() != 1) throw InvariantViolation(label + ": polynomial is not monic");
    if (discriminant < 1) throw InvariantViolation(label + ": discriminant must be positive");
    if (class_number < 1) throw InvariantViolation(label + ": class number must be positive");
    if (degree == 1) {
        if (discriminant != 1) throw InvariantViolation(label + ": degree 1 requires discriminant 1");
        index = 1;
        return;
    }
    Integer pd = polynomial_discriminant(polynomial);
    if (degree == 2 && pd <= 0) throw InvariantViolation(label + ": quadratic polynomial is not totally real");
    if (pd % discriminant != 0) throw InvariantViolation(label + ": D does not divide disc(poly)");
    Integer sq = pd / discriminant;
    if (sq < 0 || !mpz_perfect_square_p(sq.get_mpz_t()))
        throw InvariantViolation(label + ": disc(poly)/D is not a square");
    mpz_sqrt(index.get_mpz_t(), sq.get_mpz_t());
    for (const auto& [p, factors] : splitting_overrides) {
        int s = 0;
        for (auto [f, e] : factors) s += f * e;
        if (s != degree) throw InvariantViolation(label + ": splitting override for " + std::to_string(p) + " does not sum to the degree");
    }
}

int SplittingType::degree_sum() const {
    int s = 0;
    for (auto [f, e] : factors) s += f * e;
    return s;
}

FieldDescriptor rational_field() { return make_field("1.1.1.1", {0, 1}, 1, 1); }

FieldDescriptor make_field(const std::string& label, const std::vector<long>& poly, long disc, long h) {
    FieldDescriptor f;
    f.label = label;
    f.degree = static_cast<int>(poly.size()) - 1;
    f.discriminant = disc;
    f.class_number = h;
    for (long c : poly) f.polynomial.emplace_back(c);
    f.validate();
    return f;
}

namespace {

Integer json_integer(const nlohmann::json& v) {
    if (v.is_number_integer()) return Integer(static_cast<long>(v.get<long long>()));
    if (v.is_number_unsigned()) return Integer(std::to_string(v.get<unsigned long long>()));
    if (v.is_string()) return Integer(v.get<std::string>());
    throw std::invalid_argument("expected an integer");
}

FieldDescriptor parse_record(const std::string& line, std::size_t lineno) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(lineno, e.what());
    }
    FieldDescriptor f;
    try {
        f.label = j.at("label").get<std::string>();
        f.degree = j.at("degree").get<int>();
        f.discriminant = json_integer(j.at("disc"));
        f.class_number = j.at("h").get<long>();
        for (const auto& c : j.at("poly")) f.polynomial.push_back(json_integer(c));
        if (j.contains("splitting_overrides")) {
            for (const auto& o : j["splitting_overrides"]) {
                std::vector<PrimeFactor> fac;
                for (const auto& fe : o.at("factors")) fac.emplace_back(fe.at(0).get<int>(), fe.at(1).get<int>());
                std::sort(fac.begin(), fac.end());
                f.splitting_overrides[o.at("p").get<unsigned long>()] = fac;
            }
        }
        if (j.contains("source")) f.source = j["source"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(lineno, std::string("bad field record: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, std::string("bad field record: ") + e.what());
    }
    f.validate();
    return f;
}

}  // namespace

std::vector<FieldDescriptor> ingest_field_table(std::istream& source) {
    std::vector<FieldDescriptor> out;
    std::set<std::string> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(source, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        FieldDescriptor f = parse_record(line, lineno);
        if (!labels.insert(f.label).second) throw ParseError(lineno, "duplicate label " + f.label);
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const FieldDescriptor& a, const FieldDescriptor& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.discriminant != b.discriminant) return a.discriminant < b.discriminant;
        return a.label < b.label;
    });
    return out;
}

std::vector<FieldDescriptor> load_field_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open field table " + path);
    return ingest_field_table(in);
}

std::string serialize_field(const FieldDescriptor& f) {
    nlohmann::ordered_json j;
    j["label"] = f.label;
    j["degree"] = f.degree;
    auto num = [](const Integer& z) -> nlohmann::ordered_json {
        if (z.fits_slong_p()) return z.get_si();
        return z.get_str();
    };
    j["disc"] = num(f.discriminant);
    j["h"] = f.class_number;
    j["poly"] = nlohmann::ordered_json::array();
    for (const auto& c : f.polynomial) j["poly"].push_back(num(c));
    if (!f.splitting_overrides.empty()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& [p, fac] : f.splitting_overrides) {
            nlohmann::ordered_json o;
            o["p"] = p;
            o["factors"] = nlohmann::ordered_json::array();
            for (auto [fd, e] : fac) o["factors"].push_back({fd, e});
            arr.push_back(o);
        }
        j["splitting_overrides"] = arr;
    }
    if (!f.source.empty()) j["source"] = f.source;
    return j.dump();
}

std::string serialize_field_table(const std::vector<FieldDescriptor>& fields) {
    std::string out;
    for (const auto& f : fields) out += serialize_field(f) + "\n";
    return out;
}

// -------------------------------------------------------------- splitting

SplittingType compute_splitting(const FieldDescriptor& field, unsigned long p) {
    SplittingType st;
    st.prime = p;
    if (field.degree == 1) {
        st.factors = {{1, 1}};
        return st;
    }
    Integer pz(p);
    bool divides_index = mpz_divisible_p(field.index.get_mpz_t(), pz.get_mpz_t()) != 0;
    if (divides_index) {
        auto it = field.splitting_overrides.find(p);
        if (it != field.splitting_overrides.end()) {
            st.factors = it->second;
            st.from_override = true;
            return st;
        }
        st.certified = false;
    }
    Fp fp{p};
    Poly f;
    for (const auto& c : field.polynomial) {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
        f.push_back(r.get_ui());
    }
    Fp::trim(f);
    std::vector<std::pair<Poly, int>> parts;
    fp.squarefree(f, 1, parts);
    for (const auto& [g, e] : parts) {
        for (int d : fp.ddf(g)) st.factors.emplace_back(d, e);
    }
    std::sort(st.factors.begin(), st.factors.end());
    return st;
}

SplittingType splitting_type(const FieldDescriptor& field, unsigned long p) {
    static std::mutex mu;
    static std::unordered_map<std::string, std::unordered_map<unsigned long, SplittingType>> cache;
    std::string key = field_fingerprint(field);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            auto jt = it->second.find(p);
            if (jt != it->second.end()) return jt->second;
        }
    }
    SplittingType st = compute_splitting(field, p);
    std::lock_guard<std::mutex> lock(mu);
    cache[key].emplace(p, st);
    return st;
}

bool has_place_of_residue_size(const FieldDescriptor& field, unsigned long q, unsigned long prime_bound) {
    auto pp = prime_power(q);
    if (!pp) throw InvariantViolation(std::to_string(q) + " is not a prime power");
    auto [p, f] = *pp;
    if (p > prime_bound) throw InvariantViolation("prime " + std::to_string(p) + " exceeds the prime bound");
    SplittingType st = splitting_type(field, p);
    if (!st.certified) throw UncertifiedPrime(p, field.label);
    return std::any_of(st.factors.begin(), st.factors.end(), [f = f](const PrimeFactor& pf) { return pf.first == f; });
}

std::vector<unsigned long> residue_sizes(const FieldDescriptor& field, unsigned long norm_bound) {
    std::set<unsigned long> qs;
    for (unsigned long p : primes_up_to(norm_bound)) {
        SplittingType st = splitting_type(field, p);
        if (!st.certified) throw UncertifiedPrime(p, field.label);
        for (auto [f, e] : st.factors) {
            unsigned long q = 1;
            bool ok = true;
            for (int i = 0; i < f && ok; ++i) {
                q *= p;
                ok = q <= norm_bound;
            }
            if (ok) qs.insert(q);
        }
    }
    return {qs.begin(), qs.end()};
}

const FieldDescriptor* find_field(const std::vector<FieldDescriptor>& table, const std::string& key) {
    for (const auto& f : table)
        if (f.label == key) return &f;
    bool numeric = !key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isdigit(c); });
    if (numeric) {
        Integer d(key);
        for (const auto& f : table)
            if (f.discriminant == d) return &f;
    }
    return nullptr;
}

}  // namespace orbivol
