#pragma once

// Weight-2 Eisenstein series of square-free level N: the eigenforms E_d,
// the dlog basis f_d, the saturated integral lattice E_2(N, Z) and the
// functionals l_d that diagonalize the f_d.

#include "ogg/linalg.hpp"
#include "ogg/qexp.hpp"

#include <utility>
#include <vector>

namespace ogg {

struct EisensteinBasis {
  enum class Flavor { f_basis, e_basis };

  std::int64_t level = 1;
  Flavor flavor = Flavor::f_basis;
  /// (d, series) for every divisor d > 1 of N, increasing d.
  std::vector<std::pair<std::int64_t, Series>> forms;

  std::size_t size() const { return forms.size(); }
  /// Rows (a_0..a_P) of every form.
  RatMatrix coefficient_matrix(Index P) const;
};

/// The divisors d > 1 of N, increasing.
std::vector<std::int64_t> eisenstein_indices(std::int64_t N);

/// Normalized eigenvalue a_n(E_d) for n >= 1.
Integer ed_coefficient(std::int64_t N, std::int64_t d, std::int64_t n);

Series ed_series(std::int64_t N, std::int64_t d, Index precision);

EisensteinBasis f_basis(std::int64_t N, Index precision);
EisensteinBasis e_basis(std::int64_t N, Index precision);

struct EisLattice {
  std::int64_t level = 1;
  std::int64_t precision = 0;  // the Sturm bound
  Lattice lattice;             // coefficient vectors (a_0..a_B)
};

EisLattice eis_integral_lattice(std::int64_t N);

/// sum_{t | d} mu(d/t) sigma_1(d/t) a_t(f).
Rational l_functional(std::int64_t d, const Series& f);

/// [E_2(N, Z) : span{f_d}], factored.
Factorization fd_basis_index(std::int64_t N);

}  // namespace ogg
