#ifndef REGCERT_ROOTS_HPP
#define REGCERT_ROOTS_HPP

#include <utility>
#include <vector>

#include "regcert/scalar.hpp"

namespace regcert {

// Square-free decomposition over the Scalar field (Yun): pairs of
// (monic square-free factor, multiplicity). Input must be nonzero.
std::vector<std::pair<ScalarPoly, long>> squarefree_decomposition(const ScalarPoly& p);

struct RootSearch {
    std::vector<std::pair<Scalar, long>> roots; // root, multiplicity
    ScalarPoly leftover;                        // monic product of unsplit factors
    bool complete() const { return leftover.degree() <= 0; }
};

// Extract every root of p that lies in the scalar tower and is reachable
// without factoring into irreducibles: the root 0, roots of linear factors
// of the square-free decomposition, rational roots, and roots that are
// Q-affine combinations of the symbolic constants (recovered from rational
// specializations and verified exactly). Unreached factors are returned as
// `leftover` for the caller to classify.
RootSearch find_linear_roots(const ScalarPoly& p);

// Rational roots of a polynomial with rational coefficients (with
// multiplicity if p is not square-free, candidates verified exactly).
std::vector<Scalar> rational_root_candidates(const ScalarPoly& p);

} // namespace regcert

#endif
