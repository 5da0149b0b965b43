#pragma once

// Hecke algebras on M_2(N, Z) and S_2(N, Z) as lattices of integer
// matrices, the Eisenstein ideals, the ideal J generated by the T_q - q - 1,
// the polynomial presentation of the Eisenstein quotient, the group
// M / (S + E), and the pairing (f, T) -> a_1(T f).

#include "ogg/eisenstein.hpp"
#include "ogg/modsym.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ogg {

/// An integral basis of M_2(N, Z) with the Hecke action on it.
struct JointBasis {
  std::int64_t level = 1;
  Index precision = 0;
  Index genus = 0;
  Index eisenstein_rank = 0;
  std::vector<Series> forms;
  /// Row j: forms[j] in the basis (cusp echelon forms, then E_d by increasing d).
  RatMatrix adapted;
  /// Rows: bases of S_2(N, Z) and E_2(N, Z) in coordinates of `forms`.
  IntMatrix cusp_sublattice;
  IntMatrix eis_sublattice;
  /// hecke[n], row j = T_n(forms[j]) in coordinates of `forms`. Entry 0 unused.
  std::vector<IntMatrix> hecke;

  Index rank() const { return static_cast<Index>(forms.size()); }
  std::int64_t hecke_bound() const { return static_cast<std::int64_t>(hecke.size()) - 1; }
  const IntMatrix& hecke_matrix(std::int64_t n) const;
  /// a_1 of each basis form.
  IntVector a1() const;
};

/// Default Hecke range: max(B, N, 50).
std::int64_t default_hecke_bound(std::int64_t N);

/// Saturation of the cusp forms and the f_d in coefficient space, to
/// precision max(P, B), with T_n for n <= hecke_bound (0 selects the default).
JointBasis m_integral_basis(const ManinSpace& ms, Index P = 0, std::int64_t hecke_bound = 0);
JointBasis m_integral_basis(std::int64_t N, Index P = 0, std::int64_t hecke_bound = 0);

/// R with sub * t == R * sub, for a t-stable saturated sublattice given by
/// independent rows `sub`. Throws InvariantError if not stable.
IntMatrix restrict_to(const IntMatrix& t, const IntMatrix& sub);

/// A commutative ring of n x n integer matrices, stored as the lattice of
/// flattened matrices with structure constants on its HNF basis.
class MatrixAlgebra {
 public:
  /// The Z-span of gens closed under multiplication. While the rank stays
  /// below target_rank, generators from `extra` are added one at a time.
  static MatrixAlgebra generate(std::vector<IntMatrix> gens, Index matrix_size, Index target_rank,
                                const std::vector<IntMatrix>& extra = {});

  Index rank() const { return static_cast<Index>(basis_.size()); }
  Index matrix_size() const { return size_; }
  const std::vector<IntMatrix>& basis() const { return basis_; }
  const Lattice& lattice() const { return lattice_; }
  int closure_rounds() const { return rounds_; }

  std::optional<IntVector> coordinates(const IntMatrix& t) const;
  bool contains(const IntMatrix& t) const { return coordinates(t).has_value(); }
  IntMatrix element(const IntVector& c) const;
  IntVector product(const IntVector& a, const IntVector& b) const;
  IntVector one() const;

 private:
  Index size_ = 0;
  std::vector<IntMatrix> basis_;
  Lattice lattice_;
  std::vector<std::vector<IntVector>> structure_;  // structure_[i][j]: b_i b_j
  int rounds_ = 0;
};

enum class Space { full, cuspidal };

/// Z-span of the T_n, n <= B, and the U_l, closed under products and
/// enlarged by T_{B+1}, T_{B+2}, ... until the rank equals the dimension.
MatrixAlgebra hecke_algebra(const JointBasis& M, Space space);

/// An ideal of a MatrixAlgebra, as a sublattice of algebra coordinates.
struct IdealLattice {
  Lattice lattice;
  std::vector<std::string> generators;

  Index rank() const { return lattice.rank(); }
};

/// The ideal generated by `gens` (algebra coordinates).
IdealLattice ideal_generated(const MatrixAlgebra& A, const std::vector<IntVector>& gens,
                             std::vector<std::string> tags);

/// Everything derived from the Hecke algebra at one level.
struct HeckeLevel {
  ManinSpace ms;
  JointBasis M;
  MatrixAlgebra Ttilde;
  IdealLattice Itilde;
  /// Images of T~ and I~ in End(S_2(N, Z)) and of T~ in End(E_2(N, Z)),
  /// flattened.
  Lattice T;
  Lattice I;
  Lattice eis_image;
};

HeckeLevel hecke_level(std::int64_t N, std::int64_t hecke_bound = 0);

/// I~ = {t : t E = 0} and the invariants of T~ / I~.
IdealLattice eisenstein_ideal(const JointBasis& M, const MatrixAlgebra& Ttilde);
AbelianInvariants eisenstein_quotient(const HeckeLevel& H);

/// ord_p [T : I]. Zero when g = 0.
int cuspidal_ideal_index(const HeckeLevel& H, std::int64_t p);
int cuspidal_ideal_index(std::int64_t N, std::int64_t p);

struct Membership {
  std::string name;
  bool in_Itilde = false;  // exact
  bool in_J = false;       // after localizing at p
};

struct JReport {
  std::int64_t p = 0;
  std::int64_t qmax = 0;
  std::vector<std::int64_t> primes;  // the q used
  IdealLattice J;
  bool contained = false;          // J ⊆ I~
  std::optional<int> index_ppart;  // ord_p [I~ : J]; empty if J has lower rank
  std::vector<Membership> memberships;

  bool equals_ppart() const { return contained && index_ppart == 0; }
  bool memberships_ok() const;
};

JReport ideal_J(const HeckeLevel& H, std::int64_t p, std::int64_t qmax = 50);

/// R / (x_i (x_i + 1 - l_i), x_1 ... x_r) for the primes l_i | N, with
/// basis the square-free monomials other than x_1 ... x_r.
class PresentationRing {
 public:
  explicit PresentationRing(std::int64_t N);

  std::int64_t level() const { return level_; }
  const std::vector<std::int64_t>& primes() const { return primes_; }
  Index rank() const { return static_cast<Index>(monomials_.size()); }
  /// Bit i set: x_i divides the monomial.
  unsigned monomial(Index k) const { return monomials_[static_cast<std::size_t>(k)]; }
  /// x_a x_b = coefficient * x_c, with c = -1 for zero.
  std::pair<Integer, Index> multiply(Index a, Index b) const;
  std::string name(Index k) const;

 private:
  std::int64_t level_;
  std::vector<std::int64_t> primes_;
  std::vector<unsigned> monomials_;
};

struct PresentationReport {
  Index ring_rank = 0;
  Index quotient_rank = 0;
  bool relations_ok = false;
  bool multiplicative_ok = false;
  Integer cokernel_order = 0;  // 0 if the image has lower rank
  bool support_ok = false;
  bool plocal_iso = false;

  bool ok() const { return relations_ok && multiplicative_ok && support_ok && plocal_iso; }
};

/// Checks x_i -> U_{l_i} - 1 against T~ / I~.
PresentationReport presentation_check(const HeckeLevel& H, std::int64_t p);

/// M / (S + E), and its p-part.
AbelianInvariants x_group(const JointBasis& M);
AbelianInvariants x_group(const HeckeLevel& H, std::int64_t p);

/// det (a_1(t_i m_j)) over the bases of T~ and M; throws if zero.
Integer duality_gram_determinant(const HeckeLevel& H);
Factorization duality_gram_check(const HeckeLevel& H);

}  // namespace ogg
