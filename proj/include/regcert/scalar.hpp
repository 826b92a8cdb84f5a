#ifndef REGCERT_SCALAR_HPP
#define REGCERT_SCALAR_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regcert/poly.hpp"

namespace regcert {

// Exact x-adic / y-adic valuation. +infinity encodes ord(0).
struct Valuation {
    bool infinite = false;
    long v = 0;

    static Valuation of(long value) { return Valuation{false, value}; }
    static Valuation infinity() { return Valuation{true, 0}; }
    bool operator==(const Valuation& o) const {
        return infinite == o.infinite && (infinite || v == o.v);
    }
    bool operator>=(long b) const { return infinite || v >= b; }
    std::string to_string() const { return infinite ? "+inf" : std::to_string(v); }
};

// Element of the field Q(c1..c9)(y)(x), stored as a canonical fraction:
// gcd(num, den) = 1 (integer content included) and the leading coefficient
// of the denominator is a positive integer.
class Scalar {
public:
    Scalar() : num_(), den_(Poly::from_int(1)) {}
    explicit Scalar(long v) : num_(Poly::from_int(v)), den_(Poly::from_int(1)) {}
    explicit Scalar(const mpz_class& v) : num_(Poly::from_mpz(v)), den_(Poly::from_int(1)) {}
    explicit Scalar(const mpq_class& v);
    explicit Scalar(Poly p) : num_(std::move(p)), den_(Poly::from_int(1)) {}
    Scalar(Poly num, Poly den);

    static Scalar variable(int var) { return Scalar(Poly::variable(var)); }
    static Scalar x() { return variable(kVarX); }
    static Scalar y() { return variable(kVarY); }
    static Scalar c(int i); // i in 1..9

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    mpq_class rational_value() const; // requires is_rational
    bool involves(int var) const { return num_.involves(var) || den_.involves(var); }

    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // DivisionByZero
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }
    Scalar inverse() const;
    Scalar pow(long n) const;

    Scalar derivative(int var) const;
    Scalar theta(int var) const; // v d/dv

    Valuation ord(int var) const;

    // simultaneous substitution of variables by scalars; unmapped variables
    // stay themselves. Throws DivisionByZero if a denominator vanishes.
    Scalar substitute(const std::map<int, Scalar>& sub) const;
    Scalar stretch(int var, unsigned factor) const; // v -> v^factor
    Scalar swap_xy() const;
    // evaluate at var = 0 (requires ord(var) >= 0)
    Scalar at_zero(int var) const;

    long max_total_degree() const; // max of num/den total degrees

    std::string to_string() const;
    std::string to_string(const std::array<std::string, kNumVars>& names) const;

    // Parse an expression in the shared grammar over the given identifier
    // table. Throws ParseError with a position on malformed input.
    static Scalar parse(const std::string& text);
    static Scalar parse(const std::string& text, const std::map<std::string, int>& vars);

private:
    Poly num_, den_;
    void normalize();
};

// Univariate polynomial over the Scalar field; used for differential
// operators in theta, characteristic polynomials in lambda, and the
// leading divisor phi in x.
class ScalarPoly {
public:
    ScalarPoly() = default;
    explicit ScalarPoly(Scalar constant);
    static ScalarPoly variable();
    static ScalarPoly from_coeffs(std::vector<Scalar> cs);

    long degree() const { return long(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Scalar& coeff(long k) const;
    const std::vector<Scalar>& coeffs() const { return c_; }
    const Scalar& leading() const;

    bool operator==(const ScalarPoly& o) const { return c_ == o.c_; }
    bool operator!=(const ScalarPoly& o) const { return !(*this == o); }

    ScalarPoly operator-() const;
    ScalarPoly operator+(const ScalarPoly& o) const;
    ScalarPoly operator-(const ScalarPoly& o) const;
    ScalarPoly operator*(const ScalarPoly& o) const;
    ScalarPoly& operator+=(const ScalarPoly& o) { *this = *this + o; return *this; }
    ScalarPoly& operator-=(const ScalarPoly& o) { *this = *this - o; return *this; }

    ScalarPoly monic() const;
    static void divrem(const ScalarPoly& a, const ScalarPoly& b, ScalarPoly& q, ScalarPoly& r);
    static ScalarPoly gcd(const ScalarPoly& a, const ScalarPoly& b); // monic
    ScalarPoly derivative() const;
    Scalar eval(const Scalar& v) const;
    // divide by (t - root); throws Internal if the remainder is nonzero
    ScalarPoly deflate(const Scalar& root) const;
    long trailing_zero_count() const; // multiplicity of the root 0
    ScalarPoly shift_down(long k) const; // divide by t^k

    std::string to_string(const std::string& varname) const;

private:
    std::vector<Scalar> c_; // c_[i] is the coefficient of t^i; no trailing zeros
    void trim();
};

// Small dense matrix over the Scalar field.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols)) {}
    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Scalar& at(int i, int j) { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }
    const Scalar& at(int i, int j) const { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool is_zero() const;

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix scaled(const Scalar& s) const;
    Matrix transpose() const;

    template <typename F>
    Matrix map(F f) const {
        Matrix r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); i++) r.a_[i] = f(a_[i]);
        return r;
    }

    Scalar det() const;
    Matrix inverse() const;                 // throws Internal if singular
    std::optional<Matrix> try_inverse() const;
    // solve A X = B for X (A square invertible)
    Matrix solve(const Matrix& b) const;

    std::string to_string() const;

private:
    int rows_, cols_;
    std::vector<Scalar> a_;
};

// det(lambda I - M), computed exactly by the Faddeev-LeVerrier recursion.
ScalarPoly charpoly(const Matrix& m);

// Square integer matrix; intersection matrices live here.
class IntMatrix {
public:
    IntMatrix() : n_(0) {}
    explicit IntMatrix(int n) : n_(n), a_(size_t(n) * size_t(n)) {}
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    int dim() const { return n_; }
    mpz_class& at(int i, int j) { return a_[size_t(i) * size_t(n_) + size_t(j)]; }
    const mpz_class& at(int i, int j) const { return a_[size_t(i) * size_t(n_) + size_t(j)]; }
    bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

    bool is_symmetric() const;
    // determinant of the leading k x k minor, exact (Bareiss)
    mpz_class leading_minor(int k) const;
    std::string to_string() const;

private:
    int n_;
    std::vector<mpz_class> a_;
};

// Sylvester test on -A: true iff (-1)^k det(A_k) > 0 for all k.
// Throws NotSymmetric if A is not symmetric.
bool is_negative_definite(const IntMatrix& a);

// degree guardrails for user-facing inputs (spec: desk-scale artifact)
inline constexpr int kMaxRank = 8;
inline constexpr long kMaxInputDegree = 64;
void check_input_entry(const Scalar& s);

} // namespace regcert

#endif
