#include "regcert/roots.hpp"

#include <algorithm>
#include <set>

namespace regcert {

std::vector<std::pair<ScalarPoly, long>> squarefree_decomposition(const ScalarPoly& p) {
    if (p.is_zero()) fail(ErrKind::Internal, "squarefree decomposition of zero");
    std::vector<std::pair<ScalarPoly, long>> out;
    ScalarPoly f = p.monic();
    if (f.degree() == 0) return out;
    ScalarPoly fp = f.derivative();
    ScalarPoly a = ScalarPoly::gcd(f, fp);
    ScalarPoly b, c, q, r;
    ScalarPoly::divrem(f, a, b, r);
    ScalarPoly::divrem(fp, a, c, r);
    ScalarPoly d = c - b.derivative();
    long i = 1;
    while (b.degree() > 0) {
        ScalarPoly ai = ScalarPoly::gcd(b, d);
        if (ai.degree() > 0) out.emplace_back(ai, i);
        ScalarPoly::divrem(b, ai, b, r);
        ScalarPoly::divrem(d, ai, c, r);
        d = c - b.derivative();
        i++;
    }
    return out;
}

namespace {

// divisors of |n| by trial division; the flag is cleared if the
// factorization budget ran out (candidates may then be incomplete).
std::vector<mpz_class> divisors_of(mpz_class n, bool& exhaustive) {
    if (n < 0) n = -n;
    std::vector<std::pair<mpz_class, int>> factors;
    mpz_class p = 2;
    long budget = 200000;
    while (n > 1 && budget-- > 0) {
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            int e = 0;
            while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
                n /= p;
                e++;
            }
            factors.emplace_back(p, e);
        }
        if (p * p > n) break;
        p = (p == 2) ? mpz_class(3) : mpz_class(p + 2);
    }
    if (budget <= 0 && n > 1) exhaustive = false;
    if (n > 1) factors.emplace_back(n, 1); // prime or unfactored cofactor
    std::vector<mpz_class> divs{1};
    for (const auto& [q, e] : factors) {
        size_t base = divs.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; k++) {
            pk *= q;
            for (size_t i = 0; i < base; i++) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > 4096) { exhaustive = false; return divs; }
            }
        }
    }
    return divs;
}

bool all_coeffs_rational(const ScalarPoly& p) {
    for (const auto& c : p.coeffs())
        if (!c.is_rational()) return false;
    return true;
}

// rational roots of a rational-coefficient polynomial, verified exactly
std::vector<Scalar> rational_roots_of(const ScalarPoly& p) {
    std::vector<Scalar> out;
    if (p.degree() < 1) return out;
    // clear denominators to an integer-coefficient polynomial
    mpz_class lcm = 1;
    for (const auto& c : p.coeffs()) {
        if (c.is_zero()) continue;
        mpz_class den = c.rational_value().get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
    }
    std::vector<mpz_class> ic(size_t(p.degree()) + 1);
    for (long i = 0; i <= p.degree(); i++) {
        if (p.coeff(i).is_zero()) continue;
        mpq_class q = p.coeff(i).rational_value() * mpq_class(lcm);
        ic[size_t(i)] = q.get_num();
    }
    long low = 0;
    while (low <= p.degree() && ic[size_t(low)] == 0) low++;
    if (low > 0) out.push_back(Scalar());
    if (low > p.degree()) return out;
    bool exhaustive = true;
    auto ps = divisors_of(ic[size_t(low)], exhaustive);
    auto qs = divisors_of(ic[size_t(p.degree())], exhaustive);
    std::set<std::pair<mpz_class, mpz_class>> seen;
    for (const auto& pn : ps)
        for (const auto& qd : qs) {
            mpq_class cand(pn, qd);
            cand.canonicalize();
            for (int sgn = 0; sgn < 2; sgn++) {
                mpq_class r = sgn ? mpq_class(-cand) : cand;
                if (!seen.insert({r.get_num(), r.get_den()}).second) continue;
                Scalar s{r};
                if (p.eval(s).is_zero()) out.push_back(s);
            }
        }
    return out;
}

std::vector<int> variables_of(const ScalarPoly& p) {
    std::vector<int> vars;
    for (int v = 0; v < kNumVars; v++) {
        for (const auto& c : p.coeffs())
            if (c.involves(v)) {
                vars.push_back(v);
                break;
            }
    }
    return vars;
}

// Specialize all variables of p at the rational point `at` (a shift of the
// all-zero point chosen so no denominator vanishes and the degree is kept).
bool specialize(const ScalarPoly& p, const std::vector<int>& vars, long shift,
                ScalarPoly& out) {
    std::map<int, Scalar> sub;
    for (size_t i = 0; i < vars.size(); i++) sub[vars[i]] = Scalar(shift);
    std::vector<Scalar> cs(p.coeffs().size());
    for (size_t i = 0; i < cs.size(); i++) {
        try {
            cs[i] = p.coeffs()[i].substitute(sub);
        } catch (const Error&) {
            return false; // denominator vanished; try another point
        }
    }
    out = ScalarPoly::from_coeffs(std::move(cs));
    return out.degree() == p.degree();
}

bool specialize_shifted(const ScalarPoly& p, const std::vector<int>& vars, long shift,
                        int bump_var, ScalarPoly& out) {
    std::map<int, Scalar> sub;
    for (int v : vars) sub[v] = Scalar(shift + (v == bump_var ? 1 : 0));
    std::vector<Scalar> cs(p.coeffs().size());
    for (size_t i = 0; i < cs.size(); i++) {
        try {
            cs[i] = p.coeffs()[i].substitute(sub);
        } catch (const Error&) {
            return false;
        }
    }
    out = ScalarPoly::from_coeffs(std::move(cs));
    return out.degree() == p.degree();
}

// Candidate roots of a square-free factor whose coefficients involve
// symbolic constants: Q-affine Ansatz root = r0 + sum q_v * v over the
// constants present, recovered from rational specializations. Every
// candidate is verified exactly by the caller.
std::vector<Scalar> affine_candidates(const ScalarPoly& f) {
    std::vector<int> vars = variables_of(f);
    // only constants may appear in an affine root; y- or x-dependent factors
    // are out of reach of this Ansatz (their roots are not Q-affine in c)
    ScalarPoly base;
    long shift = 0;
    bool ok = false;
    for (; shift < 8; shift++)
        if (specialize(f, vars, shift, base)) { ok = true; break; }
    if (!ok) return {};
    std::vector<Scalar> base_roots = rational_roots_of(base);
    if (base_roots.empty()) return {};
    std::vector<Scalar> cands;
    std::vector<int> cvars;
    for (int v : vars)
        if (v < kNumConstants) cvars.push_back(v);
    for (const Scalar& r0 : base_roots) {
        // affine reconstruction: root(c) = r0 + sum q_v (c_v - shift)
        std::vector<std::vector<Scalar>> deltas(cvars.size());
        bool feasible = true;
        for (size_t i = 0; i < cvars.size(); i++) {
            ScalarPoly bumped;
            if (!specialize_shifted(f, vars, shift, cvars[i], bumped)) {
                feasible = false;
                break;
            }
            for (const Scalar& r1 : rational_roots_of(bumped))
                deltas[i].push_back(r1 - r0);
            if (deltas[i].empty()) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        // cartesian product of slope choices, capped
        std::vector<Scalar> pool{r0};
        for (size_t i = 0; i < cvars.size(); i++) {
            std::vector<Scalar> next;
            for (const Scalar& acc : pool)
                for (const Scalar& q : deltas[i]) {
                    Scalar cv = Scalar::variable(cvars[i]);
                    next.push_back(acc + q * (cv - Scalar(shift)));
                    if (next.size() > 512) break;
                }
            pool = std::move(next);
        }
        for (auto& c : pool) cands.push_back(std::move(c));
        if (cands.size() > 2048) break;
    }
    return cands;
}

} // namespace

std::vector<Scalar> rational_root_candidates(const ScalarPoly& p) {
    if (!all_coeffs_rational(p)) fail(ErrKind::Internal, "rational_root_candidates: coefficients not rational");
    return rational_roots_of(p);
}

RootSearch find_linear_roots(const ScalarPoly& p) {
    RootSearch out;
    out.leftover = ScalarPoly(Scalar(1L));
    if (p.is_zero()) fail(ErrKind::Internal, "find_linear_roots of zero");
    ScalarPoly f = p.monic();
    long zeros = f.trailing_zero_count();
    if (zeros > 0) {
        out.roots.emplace_back(Scalar(), zeros);
        f = f.shift_down(zeros);
    }
    if (f.degree() == 0) return out;
    for (auto& [factor, mult] : squarefree_decomposition(f)) {
        ScalarPoly g = factor;
        while (g.degree() > 0) {
            if (g.degree() == 1) {
                Scalar root = -(g.coeff(0) / g.coeff(1));
                out.roots.emplace_back(root, mult);
                g = ScalarPoly(Scalar(1L));
                break;
            }
            std::vector<Scalar> cands = all_coeffs_rational(g)
                                            ? rational_roots_of(g)
                                            : affine_candidates(g);
            bool found = false;
            for (const Scalar& cand : cands) {
                if (g.eval(cand).is_zero()) {
                    out.roots.emplace_back(cand, mult);
                    g = g.deflate(cand);
                    found = true;
                    break;
                }
            }
            if (!found) break;
        }
        if (g.degree() > 0) {
            ScalarPoly piece = g;
            for (long k = 1; k < mult; k++) piece = piece * g;
            out.leftover = out.leftover * piece;
        }
    }
    return out;
}

} // namespace regcert
