#pragma once

// Solver for equivalence of degree-2 translation-module cochains with
// polynomial exponents: finds a 1-cochain beta(x;p) with
//   exp(C1) - exp(C2) = beta(x;p) + beta(x+p;q) - beta(x;p+q)   (mod 1)
// on lattice arguments p, q, or reports failure with a residual witness.

#include "magtrans/cochain.hpp"
#include "magtrans/polynomial.hpp"

#include <optional>
#include <string>

namespace magtrans {

struct EquivalenceResult {
  bool found = false;
  // beta as a polynomial in (x_0..x_{n-1}, p_0..p_{n-1}); meaningful iff found
  Polynomial beta;
  // largest fractional part of the verification residual (0 when found)
  double residual = 0.0;
  std::string failure_reason;
};

// Both cochains must carry closed-form exponent polynomials in the
// (u, arg1, arg2) variable layout; total degree of the difference must not
// exceed ansatz_degree.
EquivalenceResult cocycle_equivalence(const GroupCochain<Rational>& C1,
                                      const GroupCochain<Rational>& C2,
                                      int ansatz_degree = 3);

// Exponent-level entry point used by the cochain overload and the tests.
EquivalenceResult solve_equivalence_poly(int n, const Polynomial& difference,
                                         int ansatz_degree = 3);

// delta beta exponent on a concrete sample, for residual reporting:
// beta(x;p) + beta(x+p;q) - beta(x;p+q)
Rational coboundary1_eval(int n, const Polynomial& beta,
                          const std::vector<Rational>& x,
                          const std::vector<Rational>& p,
                          const std::vector<Rational>& q);

}  // namespace magtrans
