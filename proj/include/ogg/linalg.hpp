#pragma once

// Exact integer and rational linear algebra: Hermite and Smith normal
// forms, integer kernels, lattices with canonical bases, characteristic
// polynomials and index valuations. Row vectors throughout: a lattice is
// the row space of its basis matrix and matrices act on the right.

#include "ogg/scalar.hpp"

#include <optional>
#include <vector>

namespace ogg {

/// Coefficients c[0] + c[1] x + ... (low degree first).
using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

struct HnfResult {
  IntMatrix H;  // rank x cols, canonical row HNF
  IntMatrix U;  // rows x rows, unimodular; first `rank` rows of U*A equal H
  Index rank = 0;
};

/// Canonical row-style Hermite normal form with transform. Rows of U past
/// `rank` form a basis of the integer left kernel of A.
HnfResult hnf(const IntMatrix& A);

/// Same HNF without accumulating the transform.
IntMatrix hnf_basis(const IntMatrix& A);

/// The structure Z^r ⊕ Z/d_1 ⊕ ... of a finitely generated abelian group.
/// Stored factors satisfy d_1 | d_2 | ... and each is > 1, or 0 for a free
/// summand (zeros come last).
struct AbelianInvariants {
  std::vector<Integer> invariant_factors;

  Index free_rank() const;
  /// Product of the nonzero factors.
  Integer torsion_order() const;
  /// The p-primary part of the torsion, as powers of p in increasing order.
  AbelianInvariants p_part(std::int64_t p) const;
  /// ord_p of the torsion order.
  int torsion_valuation(std::int64_t p) const;
  bool trivial() const { return invariant_factors.empty(); }

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

struct SmithResult {
  AbelianInvariants invariants;
  IntMatrix D;  // diagonal, U * A * V
  IntMatrix U;  // rows x rows unimodular
  IntMatrix V;  // cols x cols unimodular
  Index rank = 0;
};

/// Invariants of the cokernel Z^cols / rowspace(A).
AbelianInvariants snf(const IntMatrix& A);
/// Smith form with transforms; diagonal entries are non-negative and form
/// a divisibility chain.
SmithResult smith(const IntMatrix& A);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& A);

/// Basis (in HNF) of {x in Z^rows : x * A = 0}.
IntMatrix left_kernel(const IntMatrix& A);

/// A full-rank sublattice of Z^n given by a canonical HNF basis.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(Index ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  /// The lattice spanned by the rows of `rows`.
  static Lattice span(const IntMatrix& rows);
  static Lattice standard(Index ambient_dim);

  Index ambient_dim() const { return ambient_; }
  Index rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(const IntVector& v) const;
  bool contains(const Lattice& other) const;
  /// Integer coordinates of v in the stored basis, if v is in the lattice.
  std::optional<IntVector> coordinates(const IntVector& v) const;
  /// Rational coordinates of v in the stored basis, if v is in the Q-span.
  std::optional<RatVector> rational_coordinates(const RatVector& v) const;

  Lattice operator+(const Lattice& other) const;
  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Index ambient_ = 0;
  IntMatrix basis_;
  std::vector<Index> pivots_;
};

/// {v in Z^n : k v in L for some k >= 1}.
Lattice saturate(const Lattice& L);

/// [big : small] for small ⊆ big of equal rank. Throws PreconditionError
/// otherwise.
Integer lattice_index(const Lattice& big, const Lattice& small);
/// ord_p of lattice_index.
int index_ppart(const Lattice& big, const Lattice& small, std::int64_t p);

/// Integer z with z * rows == target, if one exists.
std::optional<IntVector> solve_integer_combination(const IntMatrix& rows, const IntVector& target);

/// True if k v lies in L for some k prime to p (v in L ⊗ Z_(p)).
bool contains_plocal(const Lattice& L, const IntVector& v, std::int64_t p);

// -- conversions -----------------------------------------------------------

RatMatrix to_rational(const IntMatrix& A);
/// Entrywise conversion; throws InvariantError on a non-integral entry.
IntMatrix to_integer(const RatMatrix& A);
/// Least common multiple of the denominators of A.
Integer common_denominator(const RatMatrix& A);
bool is_integral(const RatMatrix& A);

template <class Scalar>
RowVector<Scalar> flatten(const Matrix<Scalar>& A) {
  RowVector<Scalar> v(A.size());
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) v(i * A.cols() + j) = A(i, j);
  return v;
}

template <class Scalar>
Matrix<Scalar> unflatten(const RowVector<Scalar>& v, Index n) {
  Matrix<Scalar> A(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) A(i, j) = v(i * n + j);
  return A;
}

// -- linear algebra over a field -------------------------------------------

template <class Field>
struct Rref {
  Matrix<Field> R;
  std::vector<Index> pivots;
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Reduced row echelon form over an exact field.
template <class Field>
Rref<Field> rref(Matrix<Field> A) {
  Rref<Field> out;
  Index row = 0;
  for (Index col = 0; col < A.cols() && row < A.rows(); ++col) {
    Index piv = row;
    while (piv < A.rows() && A(piv, col) == 0) ++piv;
    if (piv == A.rows()) continue;
    if (piv != row) A.row(piv).swap(A.row(row));
    Field inv = Field(1) / A(row, col);
    A.row(row) *= inv;
    for (Index i = 0; i < A.rows(); ++i) {
      if (i == row || A(i, col) == 0) continue;
      Field f = A(i, col);
      A.row(i) -= f * A.row(row);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.R = std::move(A);
  return out;
}

template <class Field>
Index rank(const Matrix<Field>& A) {
  return rref(A).rank();
}

/// Y with Y * basis == targets, for a basis with independent rows. Returns
/// nullopt if some target row is outside the row space.
template <class Field>
std::optional<Matrix<Field>> solve_left(const Matrix<Field>& basis, const Matrix<Field>& targets) {
  const Index k = basis.rows(), t = targets.rows();
  Matrix<Field> aug(basis.cols(), k + t);
  aug.leftCols(k) = basis.transpose();
  aug.rightCols(t) = targets.transpose();
  auto r = rref(aug);
  if (r.rank() < k) throw InvariantError("solve_left: basis rows are dependent");
  for (Index p : r.pivots)
    if (p >= k) return std::nullopt;
  return Matrix<Field>(r.R.topRightCorner(k, t).transpose());
}

/// Inverse of a square matrix over the field; throws InvariantError if singular.
template <class Field>
Matrix<Field> inverse(const Matrix<Field>& A) {
  if (A.rows() != A.cols()) throw PreconditionError("inverse: matrix is not square");
  Matrix<Field> id = Matrix<Field>::Identity(A.rows(), A.cols());
  return *solve_left(A, id);
}

/// Basis of {x : x * A = 0} over the field.
template <class Field>
Matrix<Field> rational_left_kernel(const Matrix<Field>& A) {
  // right kernel of A^T from its RREF
  auto r = rref(Matrix<Field>(A.transpose()));
  const Index n = A.rows();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<Field> K(n - r.rank(), n);
  K.setZero();
  Index row = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    K(row, free) = 1;
    for (Index i = 0; i < r.rank(); ++i) K(row, r.pivots[static_cast<std::size_t>(i)]) = -r.R(i, free);
    ++row;
  }
  return K;
}

/// Characteristic polynomial det(x I - A) via Hessenberg reduction over an
/// exact field.
template <class Field>
std::vector<Field> charpoly_field(Matrix<Field> H) {
  if (H.rows() != H.cols()) throw PreconditionError("charpoly: matrix is not square");
  const Index n = H.rows();
  for (Index m = 1; m + 1 < n; ++m) {
    Index i = m;
    while (i < n && H(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      H.row(i).swap(H.row(m));
      H.col(i).swap(H.col(m));
    }
    const Field t = H(m, m - 1);
    for (i = m + 1; i < n; ++i) {
      if (H(i, m - 1) == 0) continue;
      const Field u = H(i, m - 1) / t;
      H.row(i) -= u * H.row(m);
      H.col(m) += u * H.col(i);
    }
  }
  std::vector<std::vector<Field>> p(static_cast<std::size_t>(n + 1));
  p[0] = {Field(1)};
  for (Index m = 1; m <= n; ++m) {
    auto& pm = p[static_cast<std::size_t>(m)];
    const auto& prev = p[static_cast<std::size_t>(m - 1)];
    pm.assign(static_cast<std::size_t>(m + 1), Field(0));
    for (std::size_t k = 0; k < prev.size(); ++k) {
      pm[k + 1] += prev[k];
      pm[k] -= H(m - 1, m - 1) * prev[k];
    }
    Field t = 1;
    for (Index i = 1; i < m; ++i) {
      t *= H(m - i, m - i - 1);
      const Field c = t * H(m - i - 1, m - 1);
      const auto& q = p[static_cast<std::size_t>(m - i - 1)];
      for (std::size_t k = 0; k < q.size(); ++k) pm[k] -= c * q[k];
    }
  }
  return p[static_cast<std::size_t>(n)];
}

/// Characteristic polynomial of an integer matrix.
IntPoly charpoly(const IntMatrix& A);
/// Characteristic polynomial of a rational matrix; throws InvariantError if
/// it is not integral.
IntPoly charpoly(const RatMatrix& A);

/// Evaluate an integer polynomial.
Integer evaluate(const IntPoly& f, const Integer& x);
/// The monic P with P^2 == f, if one exists.
std::optional<IntPoly> poly_sqrt(const IntPoly& f);

std::string to_string(const IntPoly& f, const std::string& var = "x");

}  // namespace ogg
