#include "regcert/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <sstream>

namespace regcert {

Scalar::Scalar(const mpq_class& v) {
    mpq_class q(v);
    q.canonicalize();
    num_ = Poly::from_mpz(q.get_num());
    den_ = Poly::from_mpz(q.get_den());
}

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(ErrKind::DivisionByZero, "zero denominator");
    normalize();
}

Scalar Scalar::c(int i) {
    if (i < 1 || i > kNumConstants) fail(ErrKind::Internal, "constant index out of range");
    return variable(i - 1);
}

void Scalar::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::from_int(1);
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = Poly::exact_div(num_, g);
        den_ = Poly::exact_div(den_, g);
    }
    if (den_.leading_coeff() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

mpq_class Scalar::rational_value() const {
    if (!is_rational()) fail(ErrKind::Internal, "not a rational constant");
    mpq_class q(num_.constant_value(), den_.constant_value());
    q.canonicalize();
    return q;
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return Scalar(num_ + o.num_, den_);
    return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_zero() || o.is_zero()) return Scalar();
    return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) fail(ErrKind::DivisionByZero, "division by zero scalar");
    if (is_zero()) return Scalar();
    return Scalar(num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::inverse() const { return Scalar(long(1)) / *this; }

Scalar Scalar::pow(long n) const {
    if (n == 0) return Scalar(long(1));
    if (n < 0) return inverse().pow(-n);
    Scalar r(long(1)), base = *this;
    unsigned long k = (unsigned long)n;
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

Scalar Scalar::derivative(int var) const {
    // (n/d)' = (n' d - n d') / d^2
    Poly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return Scalar(std::move(n), den_ * den_);
}

Scalar Scalar::theta(int var) const {
    Poly n = num_.theta(var) * den_ - num_ * den_.theta(var);
    return Scalar(std::move(n), den_ * den_);
}

Valuation Scalar::ord(int var) const {
    if (is_zero()) return Valuation::infinity();
    return Valuation::of(num_.ord(var) - den_.ord(var));
}

Scalar Scalar::substitute(const std::map<int, Scalar>& sub) const {
    std::array<std::vector<Scalar>, kNumVars> powers;
    auto power_of = [&](int var, unsigned e) -> const Scalar& {
        auto& cache = powers[size_t(var)];
        if (cache.empty()) {
            cache.push_back(Scalar(long(1)));
            auto it = sub.find(var);
            cache.push_back(it != sub.end() ? it->second : Scalar::variable(var));
        }
        while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
        return cache[e];
    };
    auto eval_poly = [&](const Poly& p) {
        Scalar acc;
        for (const auto& [m, coeff] : p.terms()) {
            Scalar term{coeff};
            for (int v = 0; v < kNumVars; v++)
                if (m.e[v]) term = term * power_of(v, m.e[v]);
            acc = acc + term;
        }
        return acc;
    };
    Scalar n = eval_poly(num_);
    Scalar d = eval_poly(den_);
    if (d.is_zero()) fail(ErrKind::DivisionByZero, "denominator vanishes under substitution");
    return n / d;
}

Scalar Scalar::stretch(int var, unsigned factor) const {
    Scalar r;
    r.num_ = num_.stretch(var, factor);
    r.den_ = den_.stretch(var, factor);
    return r; // canonical form is preserved by v -> v^e
}

Scalar Scalar::swap_xy() const {
    Scalar r;
    r.num_ = num_.swap_vars(kVarX, kVarY);
    r.den_ = den_.swap_vars(kVarX, kVarY);
    if (!r.den_.is_zero() && r.den_.leading_coeff() < 0) {
        r.num_ = -r.num_;
        r.den_ = -r.den_;
    }
    return r;
}

Scalar Scalar::at_zero(int var) const {
    if (is_zero()) return Scalar();
    if (!ord(var).operator>=(0))
        fail(ErrKind::Internal, "at_zero on a scalar with a pole at " + var_name(var) + "=0");
    // canonical form: ord >= 0 forces den(0) != 0
    Poly n = num_.coeff_of(var, 0);
    Poly d = den_.coeff_of(var, 0);
    return Scalar(n, d);
}

long Scalar::max_total_degree() const {
    return std::max(num_.total_degree(), den_.total_degree());
}

void check_input_entry(const Scalar& s) {
    if (s.max_total_degree() > kMaxInputDegree)
        fail(ErrKind::SizeLimit,
             "input entry exceeds total degree " + std::to_string(kMaxInputDegree));
}

std::string Scalar::to_string() const {
    std::array<std::string, kNumVars> names;
    for (int v = 0; v < kNumVars; v++) names[size_t(v)] = var_name(v);
    return to_string(names);
}

std::string Scalar::to_string(const std::array<std::string, kNumVars>& names) const {
    if (den_.is_one()) return num_.to_string(names);
    std::string n = num_.to_string(names);
    if (num_.terms().size() > 1) n = "(" + n + ")";
    std::string d = den_.to_string(names);
    if (!den_.is_single_primary()) d = "(" + d + ")";
    return n + "/" + d;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) pos++;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void err(const std::string& msg) {
        fail(ErrKind::ParseError, msg + " at position " + std::to_string(pos));
    }
};

struct Parser {
    Lexer lx;
    const std::map<std::string, int>& vars;

    Scalar parse_expr() {
        Scalar v = parse_term();
        while (true) {
            char c = lx.peek();
            if (c == '+') {
                lx.pos++;
                v = v + parse_term();
            } else if (c == '-') {
                lx.pos++;
                v = v - parse_term();
            } else {
                return v;
            }
        }
    }

    Scalar parse_term() {
        Scalar v = parse_signed_factor();
        while (true) {
            char c = lx.peek();
            if (c == '*') {
                lx.pos++;
                v = v * parse_signed_factor();
            } else if (c == '/') {
                size_t at = lx.pos;
                lx.pos++;
                Scalar rhs = parse_signed_factor();
                if (rhs.is_zero()) {
                    lx.pos = at;
                    lx.err("division by zero");
                }
                v = v / rhs;
            } else {
                return v;
            }
        }
    }

    Scalar parse_signed_factor() {
        int sign = 1;
        while (true) {
            char c = lx.peek();
            if (c == '-') {
                sign = -sign;
                lx.pos++;
            } else if (c == '+') {
                lx.pos++;
            } else {
                break;
            }
        }
        Scalar v = parse_power();
        return sign < 0 ? -v : v;
    }

    Scalar parse_power() {
        Scalar base = parse_atom();
        if (lx.peek() != '^') return base;
        lx.pos++;
        long e = parse_exponent();
        if (e < 0 && base.is_zero()) lx.err("zero raised to a negative power");
        return base.pow(e);
    }

    long parse_exponent() {
        char c = lx.peek();
        if (c == '(') {
            lx.pos++;
            long e = parse_exponent();
            if (lx.peek() != ')') lx.err("expected ')' in exponent");
            lx.pos++;
            return e;
        }
        long sign = 1;
        if (c == '-') {
            sign = -1;
            lx.pos++;
        } else if (c == '+') {
            lx.pos++;
        }
        if (!std::isdigit((unsigned char)lx.peek())) lx.err("expected integer exponent");
        long e = 0;
        while (lx.pos < lx.s.size() && std::isdigit((unsigned char)lx.s[lx.pos])) {
            e = e * 10 + (lx.s[lx.pos] - '0');
            if (e > 4096) lx.err("exponent too large");
            lx.pos++;
        }
        return sign * e;
    }

    Scalar parse_atom() {
        char c = lx.peek();
        if (c == '(') {
            lx.pos++;
            Scalar v = parse_expr();
            if (lx.peek() != ')') lx.err("expected ')'");
            lx.pos++;
            return v;
        }
        if (std::isdigit((unsigned char)c)) {
            std::string digits;
            while (lx.pos < lx.s.size() && std::isdigit((unsigned char)lx.s[lx.pos]))
                digits += lx.s[lx.pos++];
            return Scalar(mpz_class(digits));
        }
        if (std::isalpha((unsigned char)c)) {
            std::string ident;
            while (lx.pos < lx.s.size() &&
                   (std::isalnum((unsigned char)lx.s[lx.pos]) || lx.s[lx.pos] == '_'))
                ident += lx.s[lx.pos++];
            auto it = vars.find(ident);
            if (it == vars.end()) lx.err("unknown identifier '" + ident + "'");
            return Scalar::variable(it->second);
        }
        lx.err("unexpected character");
    }
};

} // namespace

Scalar Scalar::parse(const std::string& text) {
    std::map<std::string, int> vars;
    vars["x"] = kVarX;
    vars["y"] = kVarY;
    for (int i = 1; i <= kNumConstants; i++) vars["c" + std::to_string(i)] = i - 1;
    return parse(text, vars);
}

Scalar Scalar::parse(const std::string& text, const std::map<std::string, int>& vars) {
    Parser p{Lexer{text}, vars};
    Scalar v = p.parse_expr();
    if (!p.lx.eof()) p.lx.err("trailing input");
    return v;
}

// ------------------------------------------------------------- ScalarPoly

void ScalarPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ScalarPoly::ScalarPoly(Scalar constant) {
    c_.push_back(std::move(constant));
    trim();
}

ScalarPoly ScalarPoly::variable() {
    ScalarPoly p;
    p.c_ = {Scalar(), Scalar(long(1))};
    return p;
}

ScalarPoly ScalarPoly::from_coeffs(std::vector<Scalar> cs) {
    ScalarPoly p;
    p.c_ = std::move(cs);
    p.trim();
    return p;
}

const Scalar& ScalarPoly::coeff(long k) const {
    static const Scalar zero;
    if (k < 0 || k >= long(c_.size())) return zero;
    return c_[size_t(k)];
}

const Scalar& ScalarPoly::leading() const {
    if (c_.empty()) fail(ErrKind::Internal, "leading coefficient of zero polynomial");
    return c_.back();
}

ScalarPoly ScalarPoly::operator-() const {
    ScalarPoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

ScalarPoly ScalarPoly::operator+(const ScalarPoly& o) const {
    ScalarPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.c_.size(); i++) r.c_[i] = coeff(long(i)) + o.coeff(long(i));
    r.trim();
    return r;
}

ScalarPoly ScalarPoly::operator-(const ScalarPoly& o) const { return *this + (-o); }

ScalarPoly ScalarPoly::operator*(const ScalarPoly& o) const {
    if (is_zero() || o.is_zero()) return ScalarPoly();
    ScalarPoly r;
    r.c_.resize(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); i++)
        for (size_t j = 0; j < o.c_.size(); j++) r.c_[i + j] += c_[i] * o.c_[j];
    r.trim();
    return r;
}

ScalarPoly ScalarPoly::monic() const {
    if (is_zero()) return *this;
    ScalarPoly r(*this);
    Scalar lead = c_.back();
    for (auto& x : r.c_) x = x / lead;
    return r;
}

void ScalarPoly::divrem(const ScalarPoly& a, const ScalarPoly& b, ScalarPoly& q, ScalarPoly& r) {
    if (b.is_zero()) fail(ErrKind::DivisionByZero, "polynomial division by zero");
    q = ScalarPoly();
    r = a;
    long db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
        long shift = r.degree() - db;
        Scalar f = r.leading() / b.leading();
        std::vector<Scalar> mono(size_t(shift) + 1);
        mono[size_t(shift)] = f;
        ScalarPoly m = from_coeffs(std::move(mono));
        q += m;
        r -= m * b;
    }
}

ScalarPoly ScalarPoly::gcd(const ScalarPoly& a, const ScalarPoly& b) {
    ScalarPoly x = a, y = b;
    while (!y.is_zero()) {
        ScalarPoly q, r;
        divrem(x, y, q, r);
        x = y;
        y = r;
    }
    return x.monic();
}

ScalarPoly ScalarPoly::derivative() const {
    ScalarPoly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); i++) r.c_[i - 1] = c_[i] * Scalar(long(i));
    r.trim();
    return r;
}

Scalar ScalarPoly::eval(const Scalar& v) const {
    Scalar acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
    return acc;
}

ScalarPoly ScalarPoly::deflate(const Scalar& root) const {
    // synthetic division by (t - root)
    if (is_zero()) fail(ErrKind::Internal, "deflate zero polynomial");
    std::vector<Scalar> q(c_.size() - 1);
    Scalar carry = c_.back();
    for (size_t i = c_.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = c_[i] + carry * root;
    }
    if (!carry.is_zero()) fail(ErrKind::Internal, "deflate: not a root");
    return from_coeffs(std::move(q));
}

long ScalarPoly::trailing_zero_count() const {
    long k = 0;
    while (k < long(c_.size()) && c_[size_t(k)].is_zero()) k++;
    return k;
}

ScalarPoly ScalarPoly::shift_down(long k) const {
    if (trailing_zero_count() < k) fail(ErrKind::Internal, "shift_down: not divisible");
    std::vector<Scalar> q(c_.begin() + k, c_.end());
    return from_coeffs(std::move(q));
}

std::string ScalarPoly::to_string(const std::string& varname) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string coeff = c_[i].to_string();
        bool needs_parens = coeff.find(' ') != std::string::npos;
        if (i == 0) {
            os << coeff;
        } else {
            if (coeff == "1") {
                // bare power
            } else if (needs_parens) {
                os << "(" << coeff << ")*";
            } else {
                os << coeff << "*";
            }
            os << varname;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ----------------------------------------------------------------- Matrix

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = Scalar(long(1));
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& s : a_)
        if (!s.is_zero()) return false;
    return true;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrKind::Internal, "matrix shape mismatch");
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); i++) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrKind::Internal, "matrix shape mismatch");
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); i++) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) fail(ErrKind::Internal, "matrix shape mismatch");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; i++)
        for (int k = 0; k < cols_; k++) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.cols_; j++)
                r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

Matrix Matrix::scaled(const Scalar& s) const {
    return map([&](const Scalar& v) { return v * s; });
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < cols_; j++) r.at(j, i) = at(i, j);
    return r;
}

Scalar Matrix::det() const {
    if (rows_ != cols_) fail(ErrKind::Internal, "det of non-square matrix");
    Matrix m(*this);
    int n = rows_;
    Scalar result(long(1));
    for (int k = 0; k < n; k++) {
        int pivot = -1;
        for (int i = k; i < n; i++)
            if (!m.at(i, k).is_zero()) { pivot = i; break; }
        if (pivot < 0) return Scalar();
        if (pivot != k) {
            for (int j = 0; j < n; j++) std::swap(m.at(k, j), m.at(pivot, j));
            result = -result;
        }
        result = result * m.at(k, k);
        Scalar inv = m.at(k, k).inverse();
        for (int i = k + 1; i < n; i++) {
            if (m.at(i, k).is_zero()) continue;
            Scalar f = m.at(i, k) * inv;
            for (int j = k; j < n; j++) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return result;
}

std::optional<Matrix> Matrix::try_inverse() const {
    if (rows_ != cols_) fail(ErrKind::Internal, "inverse of non-square matrix");
    int n = rows_;
    Matrix m(*this), inv = identity(n);
    for (int k = 0; k < n; k++) {
        int pivot = -1;
        for (int i = k; i < n; i++)
            if (!m.at(i, k).is_zero()) { pivot = i; break; }
        if (pivot < 0) return std::nullopt;
        if (pivot != k)
            for (int j = 0; j < n; j++) {
                std::swap(m.at(k, j), m.at(pivot, j));
                std::swap(inv.at(k, j), inv.at(pivot, j));
            }
        Scalar f = m.at(k, k).inverse();
        for (int j = 0; j < n; j++) {
            m.at(k, j) *= f;
            inv.at(k, j) *= f;
        }
        for (int i = 0; i < n; i++) {
            if (i == k || m.at(i, k).is_zero()) continue;
            Scalar g = m.at(i, k);
            for (int j = 0; j < n; j++) {
                m.at(i, j) -= g * m.at(k, j);
                inv.at(i, j) -= g * inv.at(k, j);
            }
        }
    }
    return inv;
}

Matrix Matrix::inverse() const {
    auto inv = try_inverse();
    if (!inv) fail(ErrKind::Internal, "matrix is singular");
    return *inv;
}

Matrix Matrix::solve(const Matrix& b) const { return inverse() * b; }

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; i++) {
        if (i) os << "; ";
        os << "[";
        for (int j = 0; j < cols_; j++) {
            if (j) os << ", ";
            os << at(i, j).to_string();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

ScalarPoly charpoly(const Matrix& m) {
    if (m.rows() != m.cols()) fail(ErrKind::Internal, "charpoly of non-square matrix");
    int n = m.rows();
    // Faddeev-LeVerrier: c_n = 1; M_1 = M; c_{n-k} = -tr(M A_k)/k
    std::vector<Scalar> c(size_t(n) + 1);
    c[size_t(n)] = Scalar(long(1));
    Matrix mk = m;
    for (int k = 1; k <= n; k++) {
        Scalar tr;
        for (int i = 0; i < n; i++) tr += mk.at(i, i);
        Scalar ck = -(tr / Scalar(long(k)));
        c[size_t(n - k)] = ck;
        if (k < n) {
            Matrix adj = mk;
            for (int i = 0; i < n; i++) adj.at(i, i) += ck;
            mk = m * adj;
        }
    }
    return ScalarPoly::from_coeffs(std::move(c));
}

// --------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(int(rows.size()));
    for (size_t i = 0; i < rows.size(); i++) {
        if (rows[i].size() != rows.size()) fail(ErrKind::Internal, "ragged matrix");
        for (size_t j = 0; j < rows.size(); j++) m.at(int(i), int(j)) = long(rows[i][j]);
    }
    return m;
}

bool IntMatrix::is_symmetric() const {
    for (int i = 0; i < n_; i++)
        for (int j = i + 1; j < n_; j++)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

mpz_class IntMatrix::leading_minor(int k) const {
    if (k < 1 || k > n_) fail(ErrKind::Internal, "minor index out of range");
    std::vector<std::vector<mpz_class>> m{size_t(k), std::vector<mpz_class>(size_t(k))};
    for (int i = 0; i < k; i++)
        for (int j = 0; j < k; j++) m[size_t(i)][size_t(j)] = at(i, j);
    mpz_class prev = 1;
    int sign = 1;
    for (int p = 0; p < k - 1; p++) {
        if (m[size_t(p)][size_t(p)] == 0) {
            int swap_row = -1;
            for (int i = p + 1; i < k; i++)
                if (m[size_t(i)][size_t(p)] != 0) { swap_row = i; break; }
            if (swap_row < 0) return 0;
            std::swap(m[size_t(p)], m[size_t(swap_row)]);
            sign = -sign;
        }
        for (int i = p + 1; i < k; i++) {
            for (int j = p + 1; j < k; j++) {
                mpz_class num = m[size_t(p)][size_t(p)] * m[size_t(i)][size_t(j)] -
                                m[size_t(i)][size_t(p)] * m[size_t(p)][size_t(j)];
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                m[size_t(i)][size_t(j)] = q;
            }
            m[size_t(i)][size_t(p)] = 0;
        }
        prev = m[size_t(p)][size_t(p)];
    }
    mpz_class d = m[size_t(k - 1)][size_t(k - 1)];
    return sign < 0 ? mpz_class(-d) : d;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n_; i++) {
        if (i) os << "; ";
        os << "[";
        for (int j = 0; j < n_; j++) {
            if (j) os << ", ";
            os << at(i, j).get_str();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

bool is_negative_definite(const IntMatrix& a) {
    if (!a.is_symmetric()) fail(ErrKind::NotSymmetric, "definiteness test needs a symmetric matrix");
    for (int k = 1; k <= a.dim(); k++) {
        mpz_class d = a.leading_minor(k);
        bool positive = (k % 2 == 0) ? d > 0 : d < 0; // (-1)^k det > 0
        if (!positive) return false;
    }
    return true;
}

} // namespace regcert
