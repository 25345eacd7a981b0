#ifndef PEA_POLY_HPP
#define PEA_POLY_HPP

#include <vector>

#include "pea/matrix.hpp"

namespace pea {

// Polynomials with rational coefficients, coeffs[k] = coefficient of X^k,
// normalized so the vector is empty (zero poly) or has nonzero back().
using Poly = std::vector<Rational>;

Poly poly_normalize(Poly p);
Poly poly_monic(Poly p);
int poly_deg(const Poly& p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_derivative(const Poly& p);
// division with remainder: returns (q, r) with a = q b + r
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);
Poly poly_squarefree_part(const Poly& p);

Mat poly_eval_matrix(const Poly& p, const Mat& a);

// Minimal polynomial of a real or Gaussian-rational matrix whose minimal
// polynomial has rational coefficients (throws otherwise).
Poly minimal_polynomial(const Mat& a);

// Rational roots of a rational-coefficient polynomial (exact).
std::vector<Rational> poly_rational_roots(const Poly& p);

// True when the (squarefree) polynomial splits over the reals into more than
// one irreducible factor: degree >= 3, a rational root with degree >= 2, or a
// quadratic with nonnegative discriminant.
bool splits_over_reals(const Poly& squarefree);

// Irreducibility over Q, decided for degree <= 3 (root search); degrees above
// return nullopt (undecided).
std::optional<bool> irreducible_over_Q(const Poly& p);

bool is_nilpotent(const Mat& a);

}  // namespace pea

#endif
