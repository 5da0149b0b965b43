#pragma once

// Weight-2 modular symbols for Gamma0(N), N square-free, in the Manin
// symbol presentation. Hecke operators come from Merel's matrices of
// determinant p. The cuspidal Hecke algebra recovered here also yields the
// integral basis of S_2(N, Z) through the pairing (f, T) -> a_1(T f).

#include "ogg/linalg.hpp"
#include "ogg/qexp.hpp"

#include <array>
#include <vector>

namespace ogg {

/// The projective line over Z/N with O(1) normalization of pairs.
class P1List {
 public:
  explicit P1List(std::int64_t N);

  std::int64_t level() const { return N_; }
  Index size() const { return static_cast<Index>(reps_.size()); }
  /// Index of (c : d), or -1 if gcd(c, d, N) != 1.
  Index index(std::int64_t c, std::int64_t d) const;
  const std::pair<std::int64_t, std::int64_t>& operator[](Index i) const {
    return reps_[static_cast<std::size_t>(i)];
  }

 private:
  std::int64_t N_;
  std::vector<std::pair<std::int64_t, std::int64_t>> reps_;
  std::vector<int> table_;
};

struct ManinSpace {
  std::int64_t level = 1;
  P1List p1{1};
  /// Row i: class of the i-th Manin symbol in the relation quotient.
  RatMatrix symbol_classes;
  /// Manin symbols whose classes form the quotient basis.
  std::vector<Index> generators;
  /// Quotient basis -> free module on the cusps (indexed like divisors(N)).
  RatMatrix boundary;
  /// Rows: basis of the cuspidal subspace, in quotient coordinates.
  RatMatrix cuspidal_basis;

  Index dimension() const { return static_cast<Index>(generators.size()); }
  Index cuspidal_dimension() const { return cuspidal_basis.rows(); }
  Index genus() const { return cuspidal_dimension() / 2; }
};

/// Genus of X0(N) for square-free N from the classical formula.
std::int64_t genus_x0(std::int64_t N);

ManinSpace build_manin_space(std::int64_t N);

/// Merel's set: [[a, b], [c, d]] with ad - bc = n, a > b >= 0, d > c >= 0.
std::vector<std::array<std::int64_t, 4>> merel_matrices(std::int64_t n);

/// T_n on the full quotient (row vectors, x -> x * A).
RatMatrix hecke_on_quotient(const ManinSpace& ms, std::int64_t n);

struct HeckeMatrix {
  std::int64_t index = 1;
  RatMatrix matrix;  // on ms.cuspidal_basis, row convention
};

HeckeMatrix hecke_matrix(const ManinSpace& ms, std::int64_t n);

/// T_1..T_nmax on the cuspidal subspace, built from prime indices with the
/// usual recurrences. Entry 0 is unused.
std::vector<RatMatrix> cuspidal_hecke_table(const ManinSpace& ms, std::int64_t nmax);

/// The monic P with charpoly(T_n | cuspidal) = P^2.
IntPoly cuspidal_charpoly_sqrt(const ManinSpace& ms, std::int64_t n);

/// The Z-algebra generated by the T_n acting on cuspidal modular symbols,
/// with a Z-basis and exact coordinate maps.
class CuspidalHeckeAlgebra {
 public:
  static CuspidalHeckeAlgebra build(const ManinSpace& ms);

  Index rank() const { return static_cast<Index>(basis_.size()); }
  const std::vector<RatMatrix>& basis() const { return basis_; }
  /// Integer coordinates of an element; throws InvariantError if t is not
  /// in the algebra.
  IntVector coordinates(const RatMatrix& t) const;

 private:
  std::vector<RatMatrix> basis_;
  Integer scale_ = 1;  // scale_ * (any element) is an integer matrix
  Lattice lattice_;    // scaled, flattened
  Index size_ = 0;
};

/// Integral basis of S_2(N, Z) and its Hecke action.
struct CuspformBasis {
  std::int64_t level = 1;
  Index precision = 0;
  std::vector<Series> forms;  // echelonized, integral
  /// Row i of the matrix is T_n(forms[i]) in the basis `forms`.
  std::vector<IntMatrix> hecke;  // index n, for 1 <= n <= hecke_bound
};

/// Echelonized integral cusp forms to precision P with Hecke matrices on
/// them for n <= hecke_bound.
CuspformBasis cuspform_basis(const ManinSpace& ms, Index P, std::int64_t hecke_bound = 0);

std::vector<Series> integral_cuspform_basis(std::int64_t N, Index P);

/// |J0(N)(F_q)| = P_q(q + 1), P_q the square root of the cuspidal charpoly.
Integer jacobian_point_count(const ManinSpace& ms, std::int64_t q);
Integer jacobian_point_count(std::int64_t N, std::int64_t q);

}  // namespace ogg
