#include "regcert/poly.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace regcert {

std::string var_name(int var) {
    if (var >= 0 && var < kNumConstants) return "c" + std::to_string(var + 1);
    if (var == kVarY) return "y";
    if (var == kVarX) return "x";
    fail(ErrKind::Internal, "bad variable index " + std::to_string(var));
}

// Significance: x, y, c1, c2, ..., c9.
static constexpr int kSignificance[kNumVars] = {
    kVarX, kVarY, 0, 1, 2, 3, 4, 5, 6, 7, 8};

int Monomial::cmp(const Monomial& a, const Monomial& b) {
    for (int v : kSignificance) {
        if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? -1 : 1;
    }
    return 0;
}

bool Monomial::divides(const Monomial& o) const {
    for (int v = 0; v < kNumVars; v++)
        if (e[v] > o.e[v]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    for (int v = 0; v < kNumVars; v++) {
        unsigned s = unsigned(e[v]) + unsigned(o.e[v]);
        if (s > 0xffff) fail(ErrKind::SizeLimit, "monomial exponent overflow");
        r.e[v] = uint16_t(s);
    }
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r;
    for (int v = 0; v < kNumVars; v++) {
        if (e[v] < o.e[v]) fail(ErrKind::Internal, "monomial division mismatch");
        r.e[v] = uint16_t(e[v] - o.e[v]);
    }
    return r;
}

long Monomial::total_degree() const {
    long d = 0;
    for (int v = 0; v < kNumVars; v++) d += e[v];
    return d;
}

bool Monomial::is_one() const {
    for (int v = 0; v < kNumVars; v++)
        if (e[v]) return false;
    return true;
}

void Poly::push_term(const Monomial& m, mpz_class c) {
    if (c != 0) terms_.emplace_back(m, std::move(c));
}

Poly Poly::from_term_map(std::map<Monomial, mpz_class>& acc) {
    Poly r;
    r.terms_.reserve(acc.size());
    // map is ascending; we store descending
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (it->second != 0) r.terms_.emplace_back(it->first, std::move(it->second));
    return r;
}

Poly Poly::from_int(long v) { return from_mpz(mpz_class(v)); }

Poly Poly::from_mpz(const mpz_class& v) {
    Poly r;
    r.push_term(Monomial{}, v);
    return r;
}

Poly Poly::variable(int var, unsigned power) {
    if (var < 0 || var >= kNumVars) fail(ErrKind::Internal, "bad variable");
    if (power > 0xffff) fail(ErrKind::SizeLimit, "exponent too large");
    Poly r;
    Monomial m;
    m.e[var] = uint16_t(power);
    if (power == 0) return from_int(1);
    r.push_term(m, 1);
    return r;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

bool Poly::is_one() const {
    return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

bool Poly::is_single_primary() const {
    if (is_constant()) return true;
    if (terms_.size() != 1) return false;
    const auto& [m, c] = terms_[0];
    if (c != 1) return false;
    int nvars = 0;
    for (int v = 0; v < kNumVars; v++)
        if (m.e[v]) nvars++;
    return nvars == 1;
}

mpz_class Poly::constant_value() const {
    if (terms_.empty()) return 0;
    return terms_[0].second;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = Monomial::cmp(terms_[i].first, o.terms_[j].first);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            mpz_class s = terms_[i].second + o.terms_[j].second;
            if (s != 0) r.terms_.emplace_back(terms_[i].first, std::move(s));
            i++, j++;
        }
    }
    while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
    while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    // single-term fast path
    if (terms_.size() == 1) {
        Poly r;
        r.terms_.reserve(o.terms_.size());
        for (const auto& t : o.terms_)
            r.terms_.emplace_back(terms_[0].first * t.first, terms_[0].second * t.second);
        return r;
    }
    if (o.terms_.size() == 1) return o * *this;
    std::map<Monomial, mpz_class> acc;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_)
            acc[a.first * b.first] += a.second * b.second;
    return from_term_map(acc);
}

Poly Poly::pow(unsigned long n) const {
    Poly r = from_int(1);
    Poly base = *this;
    while (n) {
        if (n & 1) r = r * base;
        base = (n >>= 1) ? base * base : base;
    }
    return r;
}

long Poly::deg(int var) const {
    long d = -1;
    for (const auto& t : terms_) d = std::max<long>(d, t.first.e[var]);
    return d;
}

long Poly::ord(int var) const {
    if (terms_.empty()) return LONG_MAX;
    long d = LONG_MAX;
    for (const auto& t : terms_) d = std::min<long>(d, t.first.e[var]);
    return d;
}

long Poly::total_degree() const {
    long d = -1;
    for (const auto& t : terms_) d = std::max(d, t.first.total_degree());
    return d;
}

int Poly::top_variable() const {
    for (int i = 0; i < kNumVars; i++) {
        int v = kSignificance[i];
        if (deg(v) > 0) return v;
    }
    return -1;
}

Poly Poly::derivative(int var) const {
    Poly r;
    for (const auto& t : terms_) {
        if (t.first.e[var] == 0) continue;
        Monomial m = t.first;
        long e = m.e[var];
        m.e[var] = uint16_t(e - 1);
        r.terms_.emplace_back(m, t.second * e);
    }
    // descending order is preserved termwise but merging is needed if two
    // monomials collide -- they cannot: the map m -> m/var is injective.
    return r;
}

Poly Poly::theta(int var) const {
    Poly r;
    for (const auto& t : terms_) {
        if (t.first.e[var] == 0) continue;
        r.terms_.emplace_back(t.first, t.second * long(t.first.e[var]));
    }
    return r;
}

Poly Poly::coeff_of(int var, long k) const {
    Poly r;
    for (const auto& t : terms_) {
        if (t.first.e[var] != k) continue;
        Monomial m = t.first;
        m.e[var] = 0;
        r.terms_.emplace_back(m, t.second);
    }
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) {
        return Monomial::cmp(a.first, b.first) > 0;
    });
    return r;
}

std::vector<Poly> Poly::coeffs_in(int var) const {
    long d = deg(var);
    std::vector<Poly> cs(size_t(std::max<long>(d, 0) + 1));
    if (is_zero()) return {Poly()};
    for (long k = 0; k <= d; k++) cs[size_t(k)] = coeff_of(var, k);
    return cs;
}

Poly Poly::from_coeffs_in(int var, const std::vector<Poly>& cs) {
    Poly r;
    Poly v = variable(var);
    for (size_t k = 0; k < cs.size(); k++) {
        if (cs[k].is_zero()) continue;
        r += cs[k] * v.pow(k);
    }
    return r;
}

Poly Poly::leading_coeff_in(int var) const {
    return coeff_of(var, deg(var));
}

Poly Poly::stretch(int var, unsigned factor) const {
    if (factor == 0) fail(ErrKind::Internal, "stretch factor 0");
    if (factor == 1) return *this;
    Poly r(*this);
    for (auto& t : r.terms_) {
        unsigned long e = (unsigned long)t.first.e[var] * factor;
        if (e > 0xffff) fail(ErrKind::SizeLimit, "exponent overflow in ramification");
        t.first.e[var] = uint16_t(e);
    }
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) {
        return Monomial::cmp(a.first, b.first) > 0;
    });
    return r;
}

Poly Poly::swap_vars(int a, int b) const {
    Poly r(*this);
    for (auto& t : r.terms_) std::swap(t.first.e[a], t.first.e[b]);
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) {
        return Monomial::cmp(x.first, y.first) > 0;
    });
    return r;
}

Poly Poly::substitute(const std::map<int, Poly>& sub) const {
    // simultaneous substitution; variables not in `sub` stay themselves
    std::array<std::vector<Poly>, kNumVars> powers;
    auto power_of = [&](int var, unsigned e) -> const Poly& {
        auto& cache = powers[var];
        if (cache.empty()) {
            cache.push_back(from_int(1));
            auto it = sub.find(var);
            cache.push_back(it != sub.end() ? it->second : variable(var));
        }
        while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
        return cache[e];
    };
    Poly acc;
    for (const auto& t : terms_) {
        Poly term = from_mpz(t.second);
        for (int v = 0; v < kNumVars; v++)
            if (t.first.e[v]) term = term * power_of(v, t.first.e[v]);
        acc += term;
    }
    return acc;
}

mpz_class Poly::content() const {
    mpz_class g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::content_in(int var) const {
    if (is_zero()) return Poly();
    Poly g;
    for (const auto& c : coeffs_in(var)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

Poly Poly::primitive_part_in(int var) const {
    if (is_zero()) return *this;
    return exact_div(*this, content_in(var));
}

Poly Poly::normalized() const {
    if (is_zero()) return *this;
    mpz_class c = content();
    if (terms_[0].second < 0) c = -c;
    Poly r(*this);
    for (auto& t : r.terms_) t.second /= c;
    return r;
}

const mpz_class& Poly::leading_coeff() const {
    if (is_zero()) fail(ErrKind::Internal, "leading_coeff of zero");
    return terms_[0].second;
}

bool Poly::divides(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero();
    if (b.is_zero()) return true;
    // exact_div throws on failure; probe cheaply first
    Poly rem = b;
    const Term& lt = a.terms_[0];
    Poly q;
    while (!rem.is_zero()) {
        const Term& rt = rem.terms_[0];
        if (!lt.first.divides(rt.first)) return false;
        if (!mpz_divisible_p(rt.second.get_mpz_t(), lt.second.get_mpz_t())) return false;
        Poly t;
        t.push_term(rt.first / lt.first, rt.second / lt.second);
        rem -= t * a;
        q += t;
    }
    return true;
}

Poly Poly::exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrKind::Internal, "exact_div by zero");
    if (a.is_zero()) return Poly();
    Poly rem = a, q;
    const Term& lt = b.terms_[0];
    while (!rem.is_zero()) {
        const Term& rt = rem.terms_[0];
        if (!lt.first.divides(rt.first) ||
            !mpz_divisible_p(rt.second.get_mpz_t(), lt.second.get_mpz_t()))
            fail(ErrKind::Internal, "exact_div: not divisible");
        Poly t;
        t.push_term(rt.first / lt.first, rt.second / lt.second);
        rem -= t * b;
        q += t;
    }
    return q;
}

Poly Poly::prem(const Poly& a, const Poly& b, int var) {
    long db = b.deg(var);
    if (db < 0) fail(ErrKind::Internal, "prem by zero");
    Poly lcb = b.leading_coeff_in(var);
    Poly r = a;
    long dr = r.deg(var);
    long steps = dr - db + 1;
    if (steps <= 0) return r;
    Poly xv = variable(var);
    while (!r.is_zero() && (dr = r.deg(var)) >= db) {
        Poly lcr = r.leading_coeff_in(var);
        r = lcb * r - lcr * b * xv.pow(unsigned(dr - db));
        steps--;
    }
    // match the standard lc(b)^(da-db+1) * a scaling
    while (steps-- > 0) r = lcb * r;
    return r;
}

// Subresultant PRS gcd of primitive parts, with recursive content handling.
static Poly gcd_rec(const Poly& a, const Poly& b);

// gcd results are canonicalized by sign only; integer content is part of
// the gcd over Z.
static Poly sign_fix(Poly p) {
    if (!p.is_zero() && p.leading_coeff() < 0) return -p;
    return p;
}

static Poly gcd_primitive_prs(Poly A, Poly B, int var) {
    if (A.deg(var) < B.deg(var)) std::swap(A, B);
    Poly g = Poly::from_int(1), h = Poly::from_int(1);
    while (true) {
        long delta = A.deg(var) - B.deg(var);
        Poly R = Poly::prem(A, B, var);
        if (R.is_zero()) break;
        if (R.deg(var) == 0) return Poly::from_int(1);
        A = B;
        Poly divisor = g * h.pow(unsigned(delta));
        B = Poly::exact_div(R, divisor);
        g = A.leading_coeff_in(var);
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = Poly::exact_div(g.pow(unsigned(delta)), h.pow(unsigned(delta - 1)));
        }
    }
    return sign_fix(B.primitive_part_in(var));
}

static Poly gcd_rec(const Poly& a, const Poly& b) {
    if (a.is_zero()) return sign_fix(b);
    if (b.is_zero()) return sign_fix(a);
    // fast paths
    if (a == b) return sign_fix(a);
    if (a.is_constant() && b.is_constant()) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.constant_value().get_mpz_t(), b.constant_value().get_mpz_t());
        return Poly::from_mpz(g);
    }
    if (a.terms().size() == 1 && b.terms().size() == 1) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.terms()[0].second.get_mpz_t(), b.terms()[0].second.get_mpz_t());
        Poly mono = Poly::from_mpz(g);
        for (int v = 0; v < kNumVars; v++) {
            unsigned e = std::min(a.terms()[0].first.e[v], b.terms()[0].first.e[v]);
            if (e) mono = mono * Poly::variable(v, e);
        }
        return mono;
    }
    // main variable: highest-significance variable present in either
    int var = -1;
    for (int i = 0; i < kNumVars && var < 0; i++) {
        int v = kSignificance[i];
        if (a.deg(v) > 0 || b.deg(v) > 0) var = v;
    }
    if (var < 0) fail(ErrKind::Internal, "gcd_rec: constants slipped through");
    if (a.deg(var) == 0 || b.deg(var) == 0) {
        // one argument is free of the main variable: gcd with contents
        const Poly& flat = a.deg(var) == 0 ? a : b;
        const Poly& tall = a.deg(var) == 0 ? b : a;
        return gcd_rec(flat, tall.content_in(var));
    }
    Poly ca = a.content_in(var), cb = b.content_in(var);
    Poly c = gcd_rec(ca, cb);
    Poly A = Poly::exact_div(a, ca), B = Poly::exact_div(b, cb);
    Poly prim = gcd_primitive_prs(A, B, var);
    return sign_fix(c * prim);
}

Poly Poly::gcd(const Poly& a, const Poly& b) { return gcd_rec(a, b); }

Poly Poly::resultant(const Poly& a, const Poly& b, int var) {
    long da = a.deg(var), db = b.deg(var);
    if (da < 0 || db < 0) return Poly(); // resultant with 0 is 0
    if (da == 0) return a.pow(unsigned(db));
    if (db == 0) return b.pow(unsigned(da));
    std::vector<Poly> ac = a.coeffs_in(var), bc = b.coeffs_in(var);
    long n = da + db;
    // Sylvester matrix, then Bareiss fraction-free elimination.
    std::vector<std::vector<Poly>> m{size_t(n), std::vector<Poly>(size_t(n))};
    for (long i = 0; i < db; i++)
        for (long j = 0; j <= da; j++) m[size_t(i)][size_t(i + j)] = ac[size_t(da - j)];
    for (long i = 0; i < da; i++)
        for (long j = 0; j <= db; j++) m[size_t(db + i)][size_t(i + j)] = bc[size_t(db - j)];
    Poly prev = from_int(1);
    int sign = 1;
    for (long k = 0; k < n - 1; k++) {
        if (m[size_t(k)][size_t(k)].is_zero()) {
            long swap_row = -1;
            for (long i = k + 1; i < n; i++)
                if (!m[size_t(i)][size_t(k)].is_zero()) { swap_row = i; break; }
            if (swap_row < 0) return Poly(); // singular: resultant 0
            std::swap(m[size_t(k)], m[size_t(swap_row)]);
            sign = -sign;
        }
        for (long i = k + 1; i < n; i++) {
            for (long j = k + 1; j < n; j++) {
                Poly num = m[size_t(k)][size_t(k)] * m[size_t(i)][size_t(j)] -
                           m[size_t(i)][size_t(k)] * m[size_t(k)][size_t(j)];
                m[size_t(i)][size_t(j)] = exact_div(num, prev);
            }
            m[size_t(i)][size_t(k)] = Poly();
        }
        prev = m[size_t(k)][size_t(k)];
    }
    Poly det = m[size_t(n - 1)][size_t(n - 1)];
    return sign < 0 ? -det : det;
}

bool Poly::divides_power_of(const Poly& a, const Poly& modulus) {
    Poly d = a.normalized();
    // drop variable-free content: units of the coefficient field
    while (!d.is_constant()) {
        Poly g = gcd(d, modulus);
        if (g.is_constant()) return false;
        d = exact_div(d, g).normalized();
    }
    return true;
}

std::string Poly::to_string() const {
    std::array<std::string, kNumVars> names;
    for (int v = 0; v < kNumVars; v++) names[size_t(v)] = var_name(v);
    return to_string(names);
}

std::string Poly::to_string(const std::array<std::string, kNumVars>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        mpz_class mag = c < 0 ? mpz_class(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool printed = false;
        if (mag != 1 || m.is_one()) {
            os << mag.get_str();
            printed = true;
        }
        // variable factors in significance order: x, y, c1..c9
        for (int v : kSignificance) {
            if (!m.e[v]) continue;
            if (printed) os << "*";
            os << names[size_t(v)];
            if (m.e[v] > 1) os << "^" << m.e[v];
            printed = true;
        }
    }
    return os.str();
}

} // namespace regcert
