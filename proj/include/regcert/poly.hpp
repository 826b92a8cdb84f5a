#ifndef REGCERT_POLY_HPP
#define REGCERT_POLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "regcert/errors.hpp"

namespace regcert {

// The fixed variable universe of the scalar tower Q(c1..c9)(y)(x).
// Indices 0..8 are the symbolic constants c1..c9, 9 is y, 10 is x.
inline constexpr int kNumConstants = 9;
inline constexpr int kVarY = 9;
inline constexpr int kVarX = 10;
inline constexpr int kNumVars = 11;

std::string var_name(int var);

struct Monomial {
    std::array<uint16_t, kNumVars> e{};

    // Term order: x most significant, then y, then c1 > c2 > ... > c9.
    // Total order, multiplicative, 1 is least.
    static int cmp(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator<(const Monomial& o) const { return cmp(*this, o) < 0; }

    bool divides(const Monomial& o) const;
    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const; // requires divides
    long total_degree() const;
    bool is_one() const;
};

// Sparse multivariate polynomial over Z in the fixed variable universe.
// Terms are kept sorted in strictly decreasing monomial order with nonzero
// coefficients; the zero polynomial has no terms.
class Poly {
public:
    using Term = std::pair<Monomial, mpz_class>;

    Poly() = default;
    static Poly from_int(long v);
    static Poly from_mpz(const mpz_class& v);
    static Poly variable(int var, unsigned power = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    // single term x^k / y^k / c_i^k with coefficient +-1 or a bare integer
    bool is_single_primary() const;
    mpz_class constant_value() const; // requires is_constant

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly pow(unsigned long n) const;

    // Degrees. deg() of the zero polynomial is -1 by convention; ord()
    // of zero is reported through the bool* flag (or LONG_MAX).
    long deg(int var) const;
    long ord(int var) const; // min exponent; zero poly -> LONG_MAX
    long total_degree() const; // zero poly -> -1
    bool involves(int var) const { return deg(var) > 0; }
    int top_variable() const; // highest-index variable present, -1 if constant

    Poly derivative(int var) const;
    Poly theta(int var) const; // v * d/dv: multiplies each term by its exponent

    // Coefficient of var^k, as a polynomial in the remaining variables.
    Poly coeff_of(int var, long k) const;
    // Univariate view: coefficient list c[0..deg] in `var`.
    std::vector<Poly> coeffs_in(int var) const;
    static Poly from_coeffs_in(int var, const std::vector<Poly>& cs);
    Poly leading_coeff_in(int var) const;

    // x -> x^factor (exponent scaling); factor >= 1.
    Poly stretch(int var, unsigned factor) const;
    // exchange the roles of two variables
    Poly swap_vars(int a, int b) const;
    // v -> v + shift (constant integer shift is not enough for Q(c) work;
    // use Scalar-level substitution for that). Polynomial substitution:
    Poly substitute(const std::map<int, Poly>& sub) const;

    mpz_class content() const; // gcd of coefficients, >= 0; 0 for zero poly
    // content with respect to a main variable: gcd of coeffs_in(var)
    Poly content_in(int var) const;
    Poly primitive_part_in(int var) const;
    // divide by integer content and fix the sign of the leading coefficient
    Poly normalized() const;
    const mpz_class& leading_coeff() const; // requires nonzero

    static Poly gcd(const Poly& a, const Poly& b);
    // exact division; throws Internal if not divisible
    static Poly exact_div(const Poly& a, const Poly& b);
    static bool divides(const Poly& a, const Poly& b); // a | b ?
    // pseudo-remainder of a by b in variable var (deg_var b >= 1)
    static Poly prem(const Poly& a, const Poly& b, int var);
    static Poly resultant(const Poly& a, const Poly& b, int var);

    // true iff every irreducible factor of `a` divides `modulus`
    // (i.e. a | modulus^N for some N), ignoring integer content.
    static bool divides_power_of(const Poly& a, const Poly& modulus);

    std::string to_string() const;
    std::string to_string(const std::array<std::string, kNumVars>& names) const;

private:
    std::vector<Term> terms_;
    void push_term(const Monomial& m, mpz_class c);
    static Poly from_term_map(std::map<Monomial, mpz_class>& acc);
};

} // namespace regcert

#endif
