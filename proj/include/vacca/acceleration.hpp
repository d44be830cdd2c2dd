#pragma once

#include <cstdint>
#include <vector>

#include "vacca/enclosure.hpp"
#include "vacca/rational.hpp"

namespace vacca {

// The acceleration polynomial P_q(x) = (qx+1)(qx+2)...(qx+q-1) *
// sum_{m=1}^{q-1} m(q-m)/(qx+m), expanded exactly.  Degree q-2 with all
// coefficients positive; for q = 2 it is the constant 1.  Leading
// coefficient is q^(q-2) * q(q^2-1)/6.
struct PPoly {
  unsigned q = 2;
  std::vector<mpz_class> coefficients;  // ascending degree, length q-1

  unsigned degree() const { return static_cast<unsigned>(coefficients.size()) - 1; }
  const mpz_class& leading() const { return coefficients.back(); }
  mpz_class eval(const mpz_class& x) const;

  bool operator==(const PPoly&) const = default;
};

PPoly build_p_poly(unsigned q);

// Unexpanded evaluation sum_m m(q-m) * prod_{j != m} (qx+j) at x = n; the
// independent check that the expanded coefficients are right.
mpz_class p_poly_direct_eval(unsigned q, const mpz_class& n);

// Exact residual of the averaging identity behind the accelerated family:
//   [(q-1)/(qn) - sum_{m=1}^{q-1} 2/(qn+m) + (q-1)/(qn+q)]
//     - 2 P_q(n) / ((qn)(qn+1)...(qn+q))
// which is identically zero.  The overload taking a PPoly lets callers
// substitute a perturbed polynomial to confirm the residual reacts.
Rational averaged_identity_residual(unsigned q, std::uint64_t n);
Rational averaged_identity_residual(const PPoly& poly, std::uint64_t n);

// sum_{m=1}^{q-1} (2m - q); zero by the m <-> q-m symmetry.
long two_m_minus_q_sum(unsigned q);

// Enclosure of (1 - q^(-2))/ln q, the q-dependent factor of the asymptotic
// term size; strictly decreasing in q.  ln q is assembled from certified
// log_ratio enclosures via ln q = sum_{j=1}^{q-1} ln((j+1)/j).
Enclosure speedup_factor(unsigned q, mpfr_prec_t precision_bits);

// Exact ratio of the floor-free part of the n-th accelerated term to its
// asymptotic model (1 - q^(-2))/(6n^3); tends to 1 as n grows.
Rational shape_ratio(unsigned q, std::uint64_t n);
Rational shape_ratio(const PPoly& poly, std::uint64_t n);

}  // namespace vacca
