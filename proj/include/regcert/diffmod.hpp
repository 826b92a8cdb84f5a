#ifndef REGCERT_DIFFMOD_HPP
#define REGCERT_DIFFMOD_HPP

#include <optional>
#include <string>
#include <vector>

#include "regcert/roots.hpp"
#include "regcert/scalar.hpp"

namespace regcert {

// Differential module over K((x)) with K = Q(c1..c9)(y): the matrix of the
// action of theta_x = x d/dx on a chosen basis. For a coordinate vector v,
// nabla(theta)(v) = theta_x(v) + M v, so column j holds the coordinates of
// nabla(theta) applied to the j-th basis vector.
struct DiffModule {
    int rank = 0;
    Matrix theta; // rank x rank, entries in Q(c)(y)(x)
    bool generic_y = true; // coefficient profile: y free / absent

    DiffModule() = default;
    DiffModule(int rank_, Matrix theta_, bool generic_y_ = true);

    static DiffModule rank_one(const Scalar& theta_action);
    static DiffModule companion(const ScalarPoly& op); // monic operator in theta
    static DiffModule direct_sum(const DiffModule& a, const DiffModule& b);
    DiffModule gauge(const Matrix& g) const; // M -> G^-1 M G + G^-1 theta(G)
};

struct SlopeData {
    // (slope, multiplicity), slopes strictly increasing, all >= 0,
    // multiplicities positive and summing to the rank
    std::vector<std::pair<mpq_class, long>> parts;

    bool operator==(const SlopeData& o) const { return parts == o.parts; }
    mpq_class max_slope() const; // 0 for empty (impossible for valid data)
    long rank() const;
    std::string to_string() const;
};

struct KatzCertificate {
    mpq_class rho;                 // Poincare-Katz rank = highest slope
    long ramification = 1;         // e with rho * e integral (minimal)
    std::vector<Scalar> cyclic_vector; // in the (possibly ramified) module
    std::optional<Matrix> H0;      // present iff rho > 0; entries free of x
    ScalarPoly leading_poly;       // phi(x), coefficients free of x; 1 if rho = 0
    SlopeData slopes;

    long slope_multiplicity() const; // mu_(rho)
    std::string to_string() const;
};

// Exponent class: q0 + q1 c1 + ... + q9 c9 taken modulo Z (q0 normalized
// into [0,1)); the mod-Q projection drops q0.
struct ExponentClass {
    mpq_class q0;
    std::array<mpq_class, kNumConstants> qc{};

    static ExponentClass from_scalar(const Scalar& s); // s must be Q-affine in c
    ExponentClass mod_int() const;
    bool is_rational() const;
    std::vector<mpq_class> c_coordinates() const;
    bool operator==(const ExponentClass& o) const;
    bool operator<(const ExponentClass& o) const;
    std::string to_string() const;
};

using ExponentSet = std::vector<ExponentClass>; // sorted multiset

std::string exponent_set_to_string(const ExponentSet& s);

// --- operations -----------------------------------------------------------

// x -> x'^e: entries become e * M(x'^e).
DiffModule ramify(const DiffModule& m, long e);

// Deterministic cyclic-vector search: standard basis vectors, then sums of
// distinct basis vectors, then vectors with polynomial coefficients
// (1, x^k, x^{2k}, ...). Throws CyclicSearchExhausted after the schedule.
std::vector<Scalar> cyclic_vector(const DiffModule& m);

// nabla(theta) on a coordinate vector.
std::vector<Scalar> apply_nabla(const DiffModule& m, const std::vector<Scalar>& v);

// Monic operator theta^mu + a_{mu-1} theta^{mu-1} + ... + a_0 annihilating
// the cyclic vector (returned through `cyclic` when non-null).
ScalarPoly to_operator(const DiffModule& m, std::vector<Scalar>* cyclic = nullptr);

// Newton polygon of a monic theta-operator: lower hull of (i, ord_x a_i);
// positive hull slopes give the positive slopes with their horizontal
// extents, everything else contributes to slope 0.
SlopeData newton_polygon(const ScalarPoly& op);

KatzCertificate katz_rank(const DiffModule& m);

struct LeadingDivisor {
    ScalarPoly phi;   // phi(x) over A
    long degree;      // deg_x phi = mu_(rho) * rho
    std::string to_string() const;
};

// phi(x) with coefficients verified to lie in A = Q(c)[y] localized at the
// denominators declared by the entries of m. Throws CoefficientNotInA at a
// genuine turning point.
LeadingDivisor leading_divisor(const DiffModule& m);

bool is_regular(const DiffModule& m);

// Independent regularity oracle: saturates the standard lattice under
// nabla(theta) and reports whether it stabilizes within `cap` steps.
long default_saturation_cap(const DiffModule& m);
bool saturation_oracle(const DiffModule& m, long cap);

// For a regular module: saturate to a logarithmic lattice, take the
// residue at x = 0, and return its eigenvalue classes mod Z.
ExponentSet residue_exponents(const DiffModule& m);

} // namespace regcert

#endif
