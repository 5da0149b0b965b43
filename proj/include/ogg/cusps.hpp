#pragma once

// Cusps of X_0(N) for square-free N, divisors of eta quotients from the
// Ligozat formula, the cuspidal group Div^0 / div(U), the residue map
// R(f_d) = div(h_d), the Hecke action transported through R, and the
// functional lambda(x) = a_1(g) on the p-part of C.

#include "ogg/hecke.hpp"

#include <vector>

namespace ogg {

/// Cusps indexed by the divisors c of N (increasing), c = 1 is 0 and c = N
/// is infinity; the cusp with denominator c has width N / c.
struct CuspSet {
  std::int64_t level = 1;
  std::vector<std::int64_t> denominators;
  std::vector<std::int64_t> widths;

  Index size() const { return static_cast<Index>(denominators.size()); }
  Index index_of(std::int64_t c) const;
  Index infinity() const { return size() - 1; }
};

CuspSet cusp_set(std::int64_t N);

/// (N/24) sum_d r_d gcd(c, d)^2 / (c d).
Rational ligozat_order(const EtaExponent& e, std::int64_t c);
/// Orders at every cusp.
RatVector eta_divisor(const EtaExponent& e);
/// div(h_d) = div((eta(dz) / eta(z))^{12N}).
IntVector hd_divisor(std::int64_t N, std::int64_t d);

/// sum r_d = 0, 24 | sum d r_d, 24 | sum (N/d) r_d, prod d^{r_d} a square.
bool ligozat_admissible(const EtaExponent& e);

struct UnitDivisorLattices {
  Lattice hd_span;     // span of the div(h_d)
  Lattice admissible;  // divisors of all admissible eta quotients
  Integer index;       // [admissible : hd_span]
};

UnitDivisorLattices unit_divisor_lattice(std::int64_t N);

/// Coordinates of a degree-zero divisor in the basis e_c - e_infinity, c != N.
RatVector degree_zero_coordinates(const RatVector& D);

struct CuspidalGroup {
  std::int64_t level = 1;
  std::int64_t p = 0;
  AbelianInvariants full;        // Div^0 / span{div(h_d)}
  AbelianInvariants invariants;  // p-part
  /// Degree-zero divisors generating the p-part, of orders invariants[i].
  std::vector<IntVector> generators;
  int valuation = 0;

  /// Coordinates in Z/p^{a_1} + ... of a p-integral degree-zero divisor.
  IntVector coordinates(const RatVector& D) const;

  // SNF data: D = U A V with A the div(h_d) rows in degree-zero coordinates
  std::vector<Integer> diagonal;
  IntMatrix V;
  std::vector<Index> p_slots;  // diagonal positions carrying p
};

CuspidalGroup cuspidal_group(std::int64_t N, std::int64_t p);

/// Rows R(f_d) = div(h_d) for d in eisenstein_indices(N).
RatMatrix residue_matrix(std::int64_t N);
/// Rows R(E_d).
RatMatrix residue_matrix_e(std::int64_t N);
/// Rows R(m_j) for the basis of M (cusp forms have zero residue).
RatMatrix residue_on_basis(const JointBasis& M);

/// T_n on Div^0 (x) Q in the coordinates of degree_zero_coordinates,
/// defined by R(f) H = R(T_n f).
RatMatrix transported_hecke_on_cusps(std::int64_t N, std::int64_t n);

struct LambdaResult {
  /// lambda on the generators of C_p, as fractions u / p^e with 0 <= u < p^e.
  std::vector<Rational> values;
  /// ord_p of the order of the subgroup of the dual spanned by the
  /// lambda o t, t running over a basis of the Hecke algebra.
  int orbit_valuation = 0;
  bool cyclic = true;
};

LambdaResult lambda_and_cyclicity(const HeckeLevel& H, const CuspidalGroup& C);
LambdaResult lambda_and_cyclicity(std::int64_t N, std::int64_t p);

}  // namespace ogg
