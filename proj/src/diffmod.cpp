#include "regcert/diffmod.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <sstream>

namespace regcert {

DiffModule::DiffModule(int rank_, Matrix theta_, bool generic_y_)
    : rank(rank_), theta(std::move(theta_)), generic_y(generic_y_) {
    if (rank < 1) fail(ErrKind::SizeLimit, "module rank must be >= 1");
    if (rank > kMaxRank) fail(ErrKind::SizeLimit, "module rank exceeds " + std::to_string(kMaxRank));
    if (theta.rows() != rank || theta.cols() != rank)
        fail(ErrKind::Internal, "theta matrix shape mismatch");
}

DiffModule DiffModule::rank_one(const Scalar& theta_action) {
    Matrix m(1, 1);
    m.at(0, 0) = theta_action;
    return DiffModule(1, m);
}

DiffModule DiffModule::companion(const ScalarPoly& op) {
    long mu = op.degree();
    if (mu < 1) fail(ErrKind::SizeLimit, "operator degree must be >= 1");
    if (!op.leading().is_one()) fail(ErrKind::Internal, "companion of non-monic operator");
    Matrix m{int(mu), int(mu)};
    for (long j = 0; j + 1 < mu; j++) m.at(int(j + 1), int(j)) = Scalar(1L);
    for (long i = 0; i < mu; i++) m.at(int(i), int(mu - 1)) = -op.coeff(i);
    return DiffModule(int(mu), m);
}

DiffModule DiffModule::direct_sum(const DiffModule& a, const DiffModule& b) {
    Matrix m(a.rank + b.rank, a.rank + b.rank);
    for (int i = 0; i < a.rank; i++)
        for (int j = 0; j < a.rank; j++) m.at(i, j) = a.theta.at(i, j);
    for (int i = 0; i < b.rank; i++)
        for (int j = 0; j < b.rank; j++) m.at(a.rank + i, a.rank + j) = b.theta.at(i, j);
    return DiffModule(a.rank + b.rank, m, a.generic_y || b.generic_y);
}

DiffModule DiffModule::gauge(const Matrix& g) const {
    Matrix ginv = g.inverse();
    Matrix tg = g.map([](const Scalar& s) { return s.theta(kVarX); });
    return DiffModule(rank, ginv * theta * g + ginv * tg, generic_y);
}

mpq_class SlopeData::max_slope() const {
    if (parts.empty()) return 0;
    return parts.back().first;
}

long SlopeData::rank() const {
    long r = 0;
    for (const auto& [s, m] : parts) r += m;
    return r;
}

static std::string mpq_str(const mpq_class& q) {
    return q.get_str();
}

std::string SlopeData::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < parts.size(); i++) {
        if (i) os << ", ";
        os << "(" << mpq_str(parts[i].first) << ", " << parts[i].second << ")";
    }
    os << "]";
    return os.str();
}

long KatzCertificate::slope_multiplicity() const {
    for (const auto& [s, m] : slopes.parts)
        if (s == rho) return m;
    return 0;
}

std::string KatzCertificate::to_string() const {
    std::ostringstream os;
    os << "rho = " << mpq_str(rho) << "\n";
    os << "ramification = " << ramification << "\n";
    os << "slopes = " << slopes.to_string() << "\n";
    os << "cyclic_vector = [";
    for (size_t i = 0; i < cyclic_vector.size(); i++) {
        if (i) os << ", ";
        os << cyclic_vector[i].to_string();
    }
    os << "]\n";
    if (H0) os << "H0 = " << H0->to_string() << "\n";
    os << "leading_poly = " << leading_poly.to_string("x") << "\n";
    return os.str();
}

// ----------------------------------------------------------- exponent class

ExponentClass ExponentClass::from_scalar(const Scalar& s) {
    ExponentClass e;
    if (s.is_zero()) return e;
    // must be q0 + sum q_i c_i with rational q's
    if (!s.is_polynomial() || s.involves(kVarX) || s.involves(kVarY))
        fail(ErrKind::IrrationalExponents,
             "exponent is not a Q-affine combination of the constants: " + s.to_string());
    mpz_class den = s.den().constant_value();
    for (const auto& [mono, coeff] : s.num().terms()) {
        if (mono.is_one()) {
            e.q0 = mpq_class(coeff, den);
            e.q0.canonicalize();
            continue;
        }
        int var = -1;
        for (int v = 0; v < kNumConstants; v++)
            if (mono.e[size_t(v)]) {
                if (var >= 0 || mono.e[size_t(v)] > 1)
                    fail(ErrKind::IrrationalExponents,
                         "exponent is not affine in the constants: " + s.to_string());
                var = v;
            }
        if (var < 0)
            fail(ErrKind::IrrationalExponents, "exponent involves x or y: " + s.to_string());
        e.qc[size_t(var)] = mpq_class(coeff, den);
        e.qc[size_t(var)].canonicalize();
    }
    return e;
}

ExponentClass ExponentClass::mod_int() const {
    ExponentClass e(*this);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), e.q0.get_num().get_mpz_t(), e.q0.get_den().get_mpz_t());
    e.q0 -= mpq_class(fl);
    e.q0.canonicalize();
    return e;
}

bool ExponentClass::is_rational() const {
    for (const auto& q : qc)
        if (q != 0) return false;
    return true;
}

std::vector<mpq_class> ExponentClass::c_coordinates() const {
    return std::vector<mpq_class>(qc.begin(), qc.end());
}

bool ExponentClass::operator==(const ExponentClass& o) const {
    return q0 == o.q0 && qc == o.qc;
}

bool ExponentClass::operator<(const ExponentClass& o) const {
    if (q0 != o.q0) return q0 < o.q0;
    for (int i = 0; i < kNumConstants; i++)
        if (qc[size_t(i)] != o.qc[size_t(i)]) return qc[size_t(i)] < o.qc[size_t(i)];
    return false;
}

std::string ExponentClass::to_string() const {
    std::ostringstream os;
    bool any = false;
    if (q0 != 0) {
        os << mpq_str(q0);
        any = true;
    }
    for (int i = 0; i < kNumConstants; i++) {
        const mpq_class& q = qc[size_t(i)];
        if (q == 0) continue;
        if (any) os << (q < 0 ? " - " : " + ");
        else if (q < 0) os << "-";
        mpq_class mag = q < 0 ? mpq_class(-q) : q;
        if (mag != 1) os << mpq_str(mag) << "*";
        os << "c" << (i + 1);
        any = true;
    }
    if (!any) os << "0";
    return os.str();
}

std::string exponent_set_to_string(const ExponentSet& s) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < s.size(); i++) {
        if (i) os << ", ";
        os << s[i].to_string();
    }
    os << "}";
    return os.str();
}

// --------------------------------------------------------------- operations

DiffModule ramify(const DiffModule& m, long e) {
    if (e < 1) fail(ErrKind::SizeLimit, "ramification index must be >= 1");
    if (e > kMaxInputDegree) fail(ErrKind::SizeLimit, "ramification index too large");
    if (e == 1) return m;
    Matrix t = m.theta.map([&](const Scalar& s) {
        return s.stretch(kVarX, unsigned(e)) * Scalar(e);
    });
    return DiffModule(m.rank, std::move(t), m.generic_y);
}

std::vector<Scalar> apply_nabla(const DiffModule& m, const std::vector<Scalar>& v) {
    std::vector<Scalar> out(size_t(m.rank));
    for (int i = 0; i < m.rank; i++) {
        Scalar acc = v[size_t(i)].theta(kVarX);
        for (int j = 0; j < m.rank; j++) acc += m.theta.at(i, j) * v[size_t(j)];
        out[size_t(i)] = acc;
    }
    return out;
}

// transition matrix with columns m, nabla m, ..., nabla^{mu-1} m
static Matrix iterate_matrix(const DiffModule& m, const std::vector<Scalar>& v0) {
    Matrix t(m.rank, m.rank);
    std::vector<Scalar> v = v0;
    for (int j = 0; j < m.rank; j++) {
        for (int i = 0; i < m.rank; i++) t.at(i, j) = v[size_t(i)];
        if (j + 1 < m.rank) v = apply_nabla(m, v);
    }
    return t;
}

std::vector<Scalar> cyclic_vector(const DiffModule& m) {
    int mu = m.rank;
    auto is_cyclic = [&](const std::vector<Scalar>& v) {
        return !iterate_matrix(m, v).det().is_zero();
    };
    // 1. standard basis vectors
    for (int i = 0; i < mu; i++) {
        auto v = std::vector<Scalar>(size_t(mu));
        v[size_t(i)] = Scalar(1L);
        if (is_cyclic(v)) return v;
    }
    // 2. sums of distinct basis vectors, by subset size then index order
    for (int size = 2; size <= mu; size++) {
        for (unsigned mask = 0; mask < (1u << mu); mask++) {
            if (__builtin_popcount(mask) != size) continue;
            auto v = std::vector<Scalar>(size_t(mu));
            for (int i = 0; i < mu; i++)
                if (mask & (1u << i)) v[size_t(i)] = Scalar(1L);
            if (is_cyclic(v)) return v;
        }
    }
    // 3. polynomial coefficients (1, x^k, x^{2k}, ...)
    for (int k = 1; k <= mu + 1; k++) {
        auto v = std::vector<Scalar>(size_t(mu));
        for (int i = 0; i < mu; i++) v[size_t(i)] = Scalar::x().pow(long(i) * k);
        if (is_cyclic(v)) return v;
    }
    fail(ErrKind::CyclicSearchExhausted,
         "no cyclic vector in the documented candidate schedule (rank " +
             std::to_string(mu) + ")");
}

ScalarPoly to_operator(const DiffModule& m, std::vector<Scalar>* cyclic) {
    std::vector<Scalar> v0 = cyclic_vector(m);
    if (cyclic) *cyclic = v0;
    Matrix t = iterate_matrix(m, v0);
    // nabla^mu m in the iterate basis
    std::vector<Scalar> v = v0;
    for (int j = 0; j < m.rank; j++) v = apply_nabla(m, v);
    Matrix rhs(m.rank, 1);
    for (int i = 0; i < m.rank; i++) rhs.at(i, 0) = v[size_t(i)];
    Matrix a = t.solve(rhs);
    std::vector<Scalar> coeffs(size_t(m.rank) + 1);
    for (int i = 0; i < m.rank; i++) coeffs[size_t(i)] = -a.at(i, 0);
    coeffs[size_t(m.rank)] = Scalar(1L);
    return ScalarPoly::from_coeffs(std::move(coeffs));
}

SlopeData newton_polygon(const ScalarPoly& op) {
    long mu = op.degree();
    if (mu < 1) fail(ErrKind::Internal, "newton_polygon needs degree >= 1");
    if (!op.leading().is_one()) fail(ErrKind::Internal, "newton_polygon of non-monic operator");
    // finite points (i, ord_x a_i)
    std::vector<std::pair<long, long>> pts;
    for (long i = 0; i <= mu; i++) {
        if (op.coeff(i).is_zero()) continue;
        Valuation v = op.coeff(i).ord(kVarX);
        pts.emplace_back(i, v.v);
    }
    // lower convex hull, left to right (monotone chain on sorted abscissae)
    std::vector<std::pair<long, long>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // drop b if it lies on or above segment a-p
            // cross((b-a),(p-a)) <= 0 keeps the hull convex from below
            long long cross = (long long)(b.first - a.first) * (p.second - a.second) -
                              (long long)(b.second - a.second) * (p.first - a.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    SlopeData out;
    long positive_extent = 0;
    std::vector<std::pair<mpq_class, long>> positive;
    for (size_t k = 1; k < hull.size(); k++) {
        long dx = hull[k].first - hull[k - 1].first;
        long dy = hull[k].second - hull[k - 1].second;
        if (dy <= 0) continue; // nonpositive hull slopes belong to slope 0
        mpq_class slope(dy, dx);
        slope.canonicalize();
        if (!positive.empty() && positive.back().first == slope)
            positive.back().second += dx;
        else
            positive.emplace_back(slope, dx);
        positive_extent += dx;
    }
    long zero_mult = mu - positive_extent;
    if (zero_mult > 0) out.parts.emplace_back(mpq_class(0), zero_mult);
    // hull slopes increase left to right; slope-sigma parts must be
    // reported in increasing slope order
    for (auto& p : positive) out.parts.push_back(std::move(p));
    return out;
}

KatzCertificate katz_rank(const DiffModule& m) {
    KatzCertificate cert;
    std::vector<Scalar> cyc;
    ScalarPoly op = to_operator(m, &cyc);
    cert.slopes = newton_polygon(op);
    cert.rho = cert.slopes.max_slope();
    cert.leading_poly = ScalarPoly(Scalar(1L));
    if (cert.rho == 0) {
        cert.ramification = 1;
        cert.cyclic_vector = std::move(cyc);
        return cert;
    }
    long e = long(cert.rho.get_den().get_si());
    long p = long(cert.rho.get_num().get_si());
    cert.ramification = e;
    long r = p; // rho * e
    DiffModule rm = ramify(m, e);
    std::vector<Scalar> rcyc;
    ScalarPoly rop = to_operator(rm, &rcyc);
    cert.cyclic_vector = rcyc;
    long mu = rm.rank;
    // theta matrix in the basis (m, x^r nabla m, ..., x^{(mu-1)r} nabla^{mu-1} m)
    // equals x^{-r} H with H regular at x = 0 (spec of the ramified polygon)
    Matrix H{int(mu), int(mu)};
    Scalar xr = Scalar::x().pow(r);
    for (long j = 0; j + 1 < mu; j++) {
        H.at(int(j), int(j)) = Scalar(j * r) * xr;
        H.at(int(j + 1), int(j)) = Scalar(1L);
    }
    H.at(int(mu - 1), int(mu - 1)) = Scalar((mu - 1) * r) * xr;
    for (long i = 0; i < mu; i++) {
        Scalar term = -rop.coeff(i) * Scalar::x().pow((mu - i) * r);
        if (!term.is_zero() && !term.ord(kVarX).operator>=(0))
            fail(ErrKind::Internal, "H entry has a pole: slope bookkeeping is broken");
        H.at(int(i), int(mu - 1)) += term;
    }
    Matrix H0 = H.map([](const Scalar& s) { return s.at_zero(kVarX); });
    cert.H0 = H0;
    ScalarPoly ch = charpoly(H0);
    long zero_mult = ch.trailing_zero_count();
    long mu_rho = cert.slope_multiplicity();
    if (zero_mult != mu - mu_rho)
        fail(ErrKind::NondescendableLeadingPoly,
             "zero-eigenvalue multiplicity of H(0) disagrees with the slope multiplicity");
    ScalarPoly g = ch.shift_down(zero_mult); // g(0) != 0, degree mu_(rho)
    // Galois descent: g(T) must be a polynomial in T^e
    for (long i = 0; i <= g.degree(); i++) {
        if (!g.coeff(i).is_zero() && i % e != 0)
            fail(ErrKind::NondescendableLeadingPoly,
                 "leading polynomial does not descend through the ramification");
    }
    // phi(x) = g-hat(x^p) where g(T) = g-hat(T^e)
    std::vector<Scalar> phi(size_t(g.degree() / e * p) + 1);
    for (long i = 0; i <= g.degree(); i += e) phi[size_t(i / e * p)] = g.coeff(i);
    cert.leading_poly = ScalarPoly::from_coeffs(std::move(phi));
    return cert;
}

std::string LeadingDivisor::to_string() const {
    return phi.to_string("x");
}

LeadingDivisor leading_divisor(const DiffModule& m) {
    KatzCertificate cert = katz_rank(m);
    // declared localization: product over entries of the x-unit part of the
    // denominator evaluated at x = 0 (covers both y-content and specialized
    // x-mixed factors)
    Poly delta = Poly::from_int(1);
    for (int i = 0; i < m.rank; i++)
        for (int j = 0; j < m.rank; j++) {
            const Scalar& s = m.theta.at(i, j);
            if (s.is_zero()) continue;
            Poly den = s.den();
            long k = den.ord(kVarX);
            if (k > 0) den = Poly::exact_div(den, Poly::variable(kVarX, unsigned(k)));
            Poly at0 = den.coeff_of(kVarX, 0);
            if (!at0.is_constant()) delta = delta * at0;
        }
    for (long i = 0; i <= cert.leading_poly.degree(); i++) {
        const Scalar& coeff = cert.leading_poly.coeff(i);
        if (coeff.is_zero()) continue;
        if (coeff.involves(kVarX))
            fail(ErrKind::Internal, "leading_poly coefficient involves x");
        const Poly& den = coeff.den();
        if (den.is_constant()) continue;
        if (!Poly::divides_power_of(den, delta))
            fail(ErrKind::CoefficientNotInA,
                 "turning point: coefficient denominator " + den.to_string() +
                     " is not invertible in the declared localization");
    }
    LeadingDivisor d;
    d.phi = cert.leading_poly;
    d.degree = d.phi.degree();
    mpq_class expect = cert.rho * cert.slope_multiplicity();
    if (mpq_class(d.degree) != expect)
        fail(ErrKind::Internal, "leading divisor degree mismatch");
    return d;
}

bool is_regular(const DiffModule& m) {
    return katz_rank(m).rho == 0;
}

static long max_pole_order(const DiffModule& m) {
    long q = 0;
    for (int i = 0; i < m.rank; i++)
        for (int j = 0; j < m.rank; j++) {
            Valuation v = m.theta.at(i, j).ord(kVarX);
            if (!v.infinite) q = std::max(q, -v.v);
        }
    return q;
}

long default_saturation_cap(const DiffModule& m) {
    return long(m.rank) * (max_pole_order(m) + 1) + m.rank;
}

// --- truncated saturation engine -------------------------------------------
//
// The chain Lambda_0 = R^mu, Lambda_{k+1} = Lambda_k + nabla(Lambda_k) over
// the DVR R = K(x)_(x) is computed on x-adic jets. Through step cap+1 every
// lattice lies between x^{-D} R^mu and R^mu with D = q (cap + 2), so after
// scaling by x^D everything lives in R^mu and contains the tail x^E R^mu
// with E = D + q + 2. Arithmetic modulo that tail is exact for the whole
// chain: errors land inside a lattice that is already contained in every
// Lambda_k, so sums and equality tests are unaffected. This keeps entry
// degrees bounded by E instead of compounding rational-function growth.

namespace {

struct JetContext {
    long E;    // tail exponent: entries live in K[x]/x^E
    Matrix mt; // theta matrix of the scaled chain, Laurent-truncated
};

Scalar jet_truncate(const Scalar& s, long hi) {
    if (s.is_zero()) return s;
    // s must be a Laurent element: every denominator term carries the same
    // power of x (an x-power times a unit of K)
    long a = s.den().deg(kVarX);
    if (a != s.den().ord(kVarX))
        fail(ErrKind::Internal, "jet_truncate on a non-Laurent scalar");
    Poly kept;
    for (const auto& [mono, coeff] : s.num().terms()) {
        if (long(mono.e[kVarX]) - a >= hi) continue;
        Poly term = Poly::from_mpz(coeff);
        for (int v = 0; v < kNumVars; v++)
            if (mono.e[v]) term = term * Poly::variable(v, mono.e[v]);
        kept += term;
    }
    return Scalar(kept, s.den());
}

// Laurent expansion of a rational f modulo x^hi: returns a scalar whose
// denominator is a pure x-power (times an integer).
Scalar laurent_expand(const Scalar& f, long hi) {
    if (f.is_zero()) return f;
    long a = f.den().ord(kVarX);
    Poly unit = a > 0 ? Poly::exact_div(f.den(), Poly::variable(kVarX, unsigned(a)))
                      : f.den();
    if (unit.deg(kVarX) == 0) return jet_truncate(f, hi);
    // series inverse of the unit to enough precision
    long prec = hi + a + 1;
    if (prec < 1) return Scalar();
    std::vector<Poly> uc = unit.coeffs_in(kVarX);
    auto ucoeff = [&](long k) {
        return k < long(uc.size()) ? Scalar(uc[size_t(k)]) : Scalar();
    };
    auto inv = std::vector<Scalar>(size_t(prec));
    inv[0] = Scalar(1L) / ucoeff(0);
    for (long k = 1; k < prec; k++) {
        Scalar acc;
        for (long j = 1; j <= k; j++) acc += ucoeff(j) * inv[size_t(k - j)];
        inv[size_t(k)] = -(acc / ucoeff(0));
    }
    Scalar series;
    for (long k = 0; k < prec; k++)
        series += inv[size_t(k)] * Scalar::x().pow(k);
    Scalar result = Scalar(f.num()) * series / Scalar::x().pow(a);
    return jet_truncate(result, hi);
}

std::vector<Scalar> jet_column(const JetContext& ctx, const Matrix& basis, int j) {
    std::vector<Scalar> u(size_t(basis.rows()));
    for (int i = 0; i < basis.rows(); i++) u[size_t(i)] = basis.at(i, j);
    return u;
}

// f / g modulo x^E where g = x^k * unit; requires ord f >= ord g.
Scalar jet_divide(const JetContext& ctx, const Scalar& f, const Scalar& g) {
    Scalar q = laurent_expand(f / g, ctx.E);
    if (!q.is_zero() && q.ord(kVarX).v < 0)
        fail(ErrKind::Internal, "jet_divide produced a pole");
    return q;
}

// Insert u into the triangular basis; returns true if the lattice grew.
bool jet_insert(const JetContext& ctx, Matrix& basis, std::vector<Scalar> u) {
    int mu = basis.rows();
    bool changed = false;
    for (int i = 0; i < mu; i++) {
        u[size_t(i)] = jet_truncate(u[size_t(i)], ctx.E);
        if (u[size_t(i)].is_zero()) continue;
        long oi = u[size_t(i)].ord(kVarX).v;
        if (oi >= ctx.E) continue;
        long ki = basis.at(i, i).is_zero() ? ctx.E : basis.at(i, i).ord(kVarX).v;
        if (oi < ki) {
            for (int r = 0; r < mu; r++) std::swap(basis.at(r, i), u[size_t(r)]);
            changed = true;
            if (u[size_t(i)].is_zero()) continue;
        }
        Scalar f = jet_divide(ctx, u[size_t(i)], basis.at(i, i));
        for (int r = 0; r < mu; r++)
            u[size_t(r)] = jet_truncate(u[size_t(r)] - f * basis.at(r, i), ctx.E);
    }
    return changed;
}

// nabla image of a basis column in the scaled chain, truncated.
std::vector<Scalar> jet_nabla(const JetContext& ctx, const Matrix& basis, int j) {
    int mu = basis.rows();
    auto out = std::vector<Scalar>(size_t(mu));
    for (int i = 0; i < mu; i++) {
        Scalar acc = basis.at(i, j).theta(kVarX);
        for (int k = 0; k < mu; k++) acc += ctx.mt.at(i, k) * basis.at(k, j);
        acc = jet_truncate(acc, ctx.E);
        if (!acc.is_zero() && acc.ord(kVarX).v < 0)
            fail(ErrKind::Internal, "saturation image left the depth window");
        out[size_t(i)] = acc;
    }
    return out;
}

} // namespace

bool saturation_oracle(const DiffModule& m, long cap) {
    long minimum = default_saturation_cap(m) - m.rank; // mu * (1 + q)
    if (cap < minimum)
        fail(ErrKind::CapTooSmall,
             "saturation cap " + std::to_string(cap) + " is below mu*(1+q) = " +
                 std::to_string(minimum));
    long q = max_pole_order(m);
    long D = q * (cap + 2);
    JetContext ctx;
    ctx.E = D + q + 2;
    // scaled chain: x^D Lambda_k, with derivation theta + (M - D)
    ctx.mt = Matrix(m.rank, m.rank);
    for (int i = 0; i < m.rank; i++)
        for (int j = 0; j < m.rank; j++) {
            Scalar entry = laurent_expand(m.theta.at(i, j), ctx.E + q + 1);
            if (i == j) entry -= Scalar(D);
            ctx.mt.at(i, j) = entry;
        }
    Matrix basis = Matrix::identity(m.rank).scaled(Scalar::x().pow(D));
    for (long step = 0; step < cap; step++) {
        std::vector<std::vector<Scalar>> images;
        for (int j = 0; j < m.rank; j++) images.push_back(jet_nabla(ctx, basis, j));
        bool changed = false;
        for (auto& u : images) changed |= jet_insert(ctx, basis, std::move(u));
        if (!changed) return true;
    }
    // one more image pass decides stabilization exactly at the cap
    std::vector<std::vector<Scalar>> images;
    for (int j = 0; j < m.rank; j++) images.push_back(jet_nabla(ctx, basis, j));
    bool changed = false;
    for (auto& u : images) changed |= jet_insert(ctx, basis, std::move(u));
    return !changed;
}

// Rational-arithmetic saturation, used for residue computations where the
// module is known to be regular and the chain stabilizes quickly.
static Matrix saturate_lattice(const DiffModule& m, long cap, bool* stabilized) {
    Matrix b = Matrix::identity(m.rank);
    for (long step = 0; step <= cap; step++) {
        Matrix tb = b.map([](const Scalar& s) { return s.theta(kVarX); });
        Matrix nb = tb + m.theta * b;
        Matrix s = b.inverse() * nb;
        bool stable = true;
        for (int i = 0; i < m.rank && stable; i++)
            for (int j = 0; j < m.rank && stable; j++)
                if (!s.at(i, j).ord(kVarX).operator>=(0)) stable = false;
        if (stable) {
            *stabilized = true;
            return b;
        }
        // Lambda_{k+1} = Lambda_k + nabla(Lambda_k): column-reduce [B | nb]
        Matrix w(m.rank, 2 * m.rank);
        for (int i = 0; i < m.rank; i++)
            for (int j = 0; j < m.rank; j++) {
                w.at(i, j) = b.at(i, j);
                w.at(i, m.rank + j) = nb.at(i, j);
            }
        int rows = w.rows(), cols = w.cols();
        int placed = 0;
        for (int row = 0; row < rows && placed < cols; row++) {
            int best = -1;
            long best_ord = LONG_MAX;
            for (int j = placed; j < cols; j++) {
                const Scalar& sc = w.at(row, j);
                if (sc.is_zero()) continue;
                long o = sc.ord(kVarX).v;
                if (o < best_ord) {
                    best_ord = o;
                    best = j;
                }
            }
            if (best < 0) continue;
            if (best != placed)
                for (int i = 0; i < rows; i++) std::swap(w.at(i, placed), w.at(i, best));
            for (int j = placed + 1; j < cols; j++) {
                if (w.at(row, j).is_zero()) continue;
                Scalar f = w.at(row, j) / w.at(row, placed); // ord >= 0 by pivot choice
                for (int i = 0; i < rows; i++) w.at(i, j) -= f * w.at(i, placed);
            }
            placed++;
        }
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < rows; j++) b.at(i, j) = w.at(i, j);
    }
    *stabilized = false;
    return b;
}

ExponentSet residue_exponents(const DiffModule& m) {
    if (!is_regular(m)) fail(ErrKind::NotRegular, "residue exponents of an irregular module");
    bool stabilized = false;
    Matrix b = saturate_lattice(m, default_saturation_cap(m), &stabilized);
    if (!stabilized)
        fail(ErrKind::Internal, "regular module failed to saturate within the default cap");
    Matrix binv = b.inverse();
    Matrix tb = b.map([](const Scalar& s) { return s.theta(kVarX); });
    Matrix log_theta = binv * m.theta * b + binv * tb;
    Matrix residue = log_theta.map([](const Scalar& s) { return s.at_zero(kVarX); });
    ScalarPoly ch = charpoly(residue);
    RootSearch rs = find_linear_roots(ch);
    if (!rs.complete())
        fail(ErrKind::IrrationalExponents,
             "residue characteristic polynomial has an unsplit factor " +
                 rs.leftover.to_string("t"));
    ExponentSet out;
    for (const auto& [root, mult] : rs.roots) {
        ExponentClass cls = ExponentClass::from_scalar(root).mod_int();
        for (long k = 0; k < mult; k++) out.push_back(cls);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace regcert
