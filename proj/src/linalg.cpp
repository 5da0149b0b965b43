#include "ogg/linalg.hpp"

#include <algorithm>

namespace ogg {

namespace {

struct Xgcd {
  Integer g, s, t;  // g = s a + t b, g >= 0
};

Xgcd xgcd(const Integer& a, const Integer& b) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Replace rows (i, j) of M by (s r_i + t r_j, -b r_i + a r_j); unimodular
// because s a + t b = 1.
void combine_rows(IntMatrix& M, Index i, Index j, const Integer& s, const Integer& t, const Integer& a,
                  const Integer& b) {
  IntVector ri = M.row(i), rj = M.row(j);
  M.row(i) = s * ri + t * rj;
  M.row(j) = a * rj - b * ri;
}

void combine_cols(IntMatrix& M, Index i, Index j, const Integer& s, const Integer& t, const Integer& a,
                  const Integer& b) {
  Vector<Integer> ci = M.col(i), cj = M.col(j);
  M.col(i) = s * ci + t * cj;
  M.col(j) = a * cj - b * ci;
}

template <bool WithTransform>
HnfResult hnf_impl(const IntMatrix& A) {
  HnfResult out;
  IntMatrix H = A;
  IntMatrix U;
  if constexpr (WithTransform) U = IntMatrix::Identity(A.rows(), A.rows());
  const Index n = H.rows(), m = H.cols();
  Index row = 0;
  for (Index col = 0; col < m && row < n; ++col) {
    for (Index i = row + 1; i < n; ++i) {
      if (H(i, col) == 0) continue;
      if (H(row, col) == 0) {
        H.row(row).swap(H.row(i));
        if constexpr (WithTransform) U.row(row).swap(U.row(i));
        continue;
      }
      const Xgcd x = xgcd(H(row, col), H(i, col));
      const Integer a = H(row, col) / x.g, b = H(i, col) / x.g;
      combine_rows(H, row, i, x.s, x.t, a, b);
      if constexpr (WithTransform) combine_rows(U, row, i, x.s, x.t, a, b);
    }
    if (H(row, col) == 0) continue;
    if (H(row, col) < 0) {
      H.row(row) *= Integer(-1);
      if constexpr (WithTransform) U.row(row) *= Integer(-1);
    }
    for (Index i = 0; i < row; ++i) {
      const Integer q = floor_div(H(i, col), H(row, col));
      if (q == 0) continue;
      H.row(i) -= q * H.row(row);
      if constexpr (WithTransform) U.row(i) -= q * U.row(row);
    }
    ++row;
  }
  out.rank = row;
  out.H = H.topRows(row);
  if constexpr (WithTransform) out.U = std::move(U);
  return out;
}

}  // namespace

HnfResult hnf(const IntMatrix& A) { return hnf_impl<true>(A); }

IntMatrix hnf_basis(const IntMatrix& A) { return hnf_impl<false>(A).H; }

Index AbelianInvariants::free_rank() const {
  return std::count(invariant_factors.begin(), invariant_factors.end(), Integer(0));
}

Integer AbelianInvariants::torsion_order() const {
  Integer o = 1;
  for (const auto& d : invariant_factors)
    if (d != 0) o *= d;
  return o;
}

AbelianInvariants AbelianInvariants::p_part(std::int64_t p) const {
  AbelianInvariants out;
  for (const auto& d : invariant_factors) {
    if (d == 0 || d % p != 0) continue;
    Integer q = 1;
    Integer r = d;
    while (r % p == 0) {
      r /= p;
      q *= p;
    }
    out.invariant_factors.push_back(q);
  }
  return out;
}

int AbelianInvariants::torsion_valuation(std::int64_t p) const { return valuation(torsion_order(), p); }

SmithResult smith(const IntMatrix& A) {
  SmithResult out;
  IntMatrix D = A;
  const Index n = D.rows(), m = D.cols();
  IntMatrix U = IntMatrix::Identity(n, n), V = IntMatrix::Identity(m, m);
  Index t = 0;
  while (t < std::min(n, m)) {
    // smallest nonzero entry of the trailing block becomes the pivot
    Index pi = -1, pj = -1;
    for (Index i = t; i < n; ++i)
      for (Index j = t; j < m; ++j)
        if (D(i, j) != 0 && (pi < 0 || abs(D(i, j)) < abs(D(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != t) {
      D.row(pi).swap(D.row(t));
      U.row(pi).swap(U.row(t));
    }
    if (pj != t) {
      D.col(pj).swap(D.col(t));
      V.col(pj).swap(V.col(t));
    }
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (Index i = t + 1; i < n; ++i) {
        if (D(i, t) == 0) continue;
        if (D(i, t) % D(t, t) == 0) {
          const Integer q = D(i, t) / D(t, t);
          D.row(i) -= q * D.row(t);
          U.row(i) -= q * U.row(t);
          continue;
        }
        const Xgcd x = xgcd(D(t, t), D(i, t));
        const Integer a = D(t, t) / x.g, b = D(i, t) / x.g;
        combine_rows(D, t, i, x.s, x.t, a, b);
        combine_rows(U, t, i, x.s, x.t, a, b);
      }
      for (Index j = t + 1; j < m; ++j) {
        if (D(t, j) == 0) continue;
        if (D(t, j) % D(t, t) == 0) {
          const Integer q = D(t, j) / D(t, t);
          D.col(j) -= q * D.col(t);
          V.col(j) -= q * V.col(t);
          continue;
        }
        const Xgcd x = xgcd(D(t, t), D(t, j));
        const Integer a = D(t, t) / x.g, b = D(t, j) / x.g;
        combine_cols(D, t, j, x.s, x.t, a, b);
        combine_cols(V, t, j, x.s, x.t, a, b);
        dirty = true;
      }
      if (dirty) continue;
      // divisibility: fold an offending row into the pivot row
      for (Index i = t + 1; i < n && !dirty; ++i)
        for (Index j = t + 1; j < m; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.row(t) += D.row(i);
            U.row(t) += U.row(i);
            dirty = true;
            break;
          }
    }
    if (D(t, t) < 0) {
      D.row(t) *= Integer(-1);
      U.row(t) *= Integer(-1);
    }
    ++t;
  }
  out.rank = t;
  for (Index i = 0; i < t; ++i)
    if (D(i, i) != 1) out.invariants.invariant_factors.push_back(D(i, i));
  for (Index i = t; i < m; ++i) out.invariants.invariant_factors.push_back(0);
  out.D = std::move(D);
  out.U = std::move(U);
  out.V = std::move(V);
  return out;
}

AbelianInvariants snf(const IntMatrix& A) { return smith(A).invariants; }

Integer determinant(const IntMatrix& A) {
  require(A.rows() == A.cols(), "determinant: matrix is not square");
  const Index n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  Integer sign = 1, prev = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (M(k, k) == 0) {
      Index i = k + 1;
      while (i < n && M(i, k) == 0) ++i;
      if (i == n) return 0;
      M.row(i).swap(M.row(k));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

IntMatrix left_kernel(const IntMatrix& A) {
  HnfResult h = hnf(A);
  return hnf_basis(h.U.bottomRows(A.rows() - h.rank));
}

Lattice Lattice::span(const IntMatrix& rows) {
  Lattice L(rows.cols());
  L.basis_ = hnf_basis(rows);
  for (Index i = 0; i < L.basis_.rows(); ++i) {
    Index c = 0;
    while (L.basis_(i, c) == 0) ++c;
    L.pivots_.push_back(c);
  }
  return L;
}

Lattice Lattice::standard(Index ambient_dim) { return span(IntMatrix::Identity(ambient_dim, ambient_dim)); }

std::optional<IntVector> Lattice::coordinates(const IntVector& v) const {
  require(v.cols() == ambient_, "Lattice: dimension mismatch");
  IntVector r = v;
  IntVector x(rank());
  for (Index i = 0; i < rank(); ++i) {
    const Index c = pivots_[static_cast<std::size_t>(i)];
    if (r(c) % basis_(i, c) != 0) return std::nullopt;
    x(i) = r(c) / basis_(i, c);
    if (x(i) != 0) r -= x(i) * basis_.row(i);
  }
  for (Index j = 0; j < ambient_; ++j)
    if (r(j) != 0) return std::nullopt;
  return x;
}

std::optional<RatVector> Lattice::rational_coordinates(const RatVector& v) const {
  require(v.cols() == ambient_, "Lattice: dimension mismatch");
  RatVector r = v;
  RatVector x(rank());
  for (Index i = 0; i < rank(); ++i) {
    const Index c = pivots_[static_cast<std::size_t>(i)];
    x(i) = r(c) / Rational(basis_(i, c));
    if (x(i) != 0) r -= x(i) * basis_.row(i).cast<Rational>();
  }
  for (Index j = 0; j < ambient_; ++j)
    if (r(j) != 0) return std::nullopt;
  return x;
}

bool Lattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  if (other.ambient_ != ambient_) return false;
  for (Index i = 0; i < other.rank(); ++i)
    if (!contains(IntVector(other.basis_.row(i)))) return false;
  return true;
}

Lattice Lattice::operator+(const Lattice& other) const {
  require(other.ambient_ == ambient_, "Lattice sum: dimension mismatch");
  IntMatrix rows(rank() + other.rank(), ambient_);
  rows << basis_, other.basis_;
  return span(rows);
}

Lattice saturate(const Lattice& L) {
  const Index n = L.ambient_dim();
  if (L.rank() == 0) return Lattice(n);
  IntMatrix kernel = left_kernel(IntMatrix(L.basis().transpose()));  // (n - r) x n
  if (kernel.rows() == 0) return Lattice::standard(n);
  return Lattice::span(left_kernel(IntMatrix(kernel.transpose())));
}

Integer lattice_index(const Lattice& big, const Lattice& small) {
  require(big.ambient_dim() == small.ambient_dim(), "lattice_index: dimension mismatch");
  require(big.rank() == small.rank(), "lattice_index: ranks differ");
  const Index k = big.rank();
  IntMatrix C(k, k);
  for (Index i = 0; i < k; ++i) {
    auto x = big.coordinates(IntVector(small.basis().row(i)));
    require(x.has_value(), "lattice_index: small lattice is not contained in big lattice");
    C.row(i) = *x;
  }
  return abs(determinant(C));
}

int index_ppart(const Lattice& big, const Lattice& small, std::int64_t p) {
  return valuation(lattice_index(big, small), p);
}

std::optional<IntVector> solve_integer_combination(const IntMatrix& rows, const IntVector& target) {
  HnfResult h = hnf(rows);
  Lattice L = Lattice::span(rows);
  auto w = L.coordinates(target);
  if (!w) return std::nullopt;
  // L.basis() equals h.H, so w combines the first `rank` rows of U.
  IntVector z = IntVector::Zero(rows.rows());
  for (Index i = 0; i < h.rank; ++i) z += (*w)(i) * h.U.row(i);
  return z;
}

bool contains_plocal(const Lattice& L, const IntVector& v, std::int64_t p) {
  auto x = L.rational_coordinates(v.cast<Rational>());
  if (!x) return false;
  for (Index i = 0; i < x->cols(); ++i)
    if (!is_plocal_integral((*x)(i), p)) return false;
  return true;
}

RatMatrix to_rational(const IntMatrix& A) { return A.cast<Rational>(); }

IntMatrix to_integer(const RatMatrix& A) {
  IntMatrix out(A.rows(), A.cols());
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) {
      ensure(denominator(A(i, j)) == 1, "to_integer: non-integral entry " + to_string(A(i, j)));
      out(i, j) = numerator(A(i, j));
    }
  return out;
}

Integer common_denominator(const RatMatrix& A) {
  Integer d = 1;
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) d = lcm(d, denominator(A(i, j)));
  return d;
}

bool is_integral(const RatMatrix& A) { return common_denominator(A) == 1; }

IntPoly charpoly(const IntMatrix& A) { return charpoly(to_rational(A)); }

IntPoly charpoly(const RatMatrix& A) {
  auto f = charpoly_field(A);
  IntPoly out;
  out.reserve(f.size());
  for (const auto& c : f) {
    ensure(denominator(c) == 1, "charpoly: non-integral coefficient");
    out.push_back(numerator(c));
  }
  return out;
}

Integer evaluate(const IntPoly& f, const Integer& x) {
  Integer acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::optional<IntPoly> poly_sqrt(const IntPoly& f) {
  if (f.empty() || f.back() != 1 || (f.size() - 1) % 2 != 0) return std::nullopt;
  const std::size_t g = (f.size() - 1) / 2;
  IntPoly P(g + 1, Integer(0));
  P[g] = 1;
  for (std::size_t k = 1; k <= g; ++k) {
    const std::size_t deg = 2 * g - k;
    Integer rest = 0;
    for (std::size_t i = g - k + 1; i <= g; ++i) {
      const std::size_t j = deg - i;
      if (j > g - k && j <= g) rest += P[i] * P[j];
    }
    Integer twice = f[deg] - rest;
    if (twice % 2 != 0) return std::nullopt;
    P[g - k] = twice / 2;
  }
  IntPoly sq(2 * g + 1, Integer(0));
  for (std::size_t i = 0; i <= g; ++i)
    for (std::size_t j = 0; j <= g; ++j) sq[i + j] += P[i] * P[j];
  if (sq != f) return std::nullopt;
  return P;
}

std::string to_string(const IntPoly& f, const std::string& var) {
  std::string s;
  for (std::size_t k = f.size(); k-- > 0;) {
    const Integer& c = f[k];
    if (c == 0 && !(f.size() == 1)) continue;
    const bool neg = c < 0;
    const Integer a = abs(c);
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (k == 0 || a != 1) s += a.str();
    if (k >= 1) s += var;
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

}  // namespace ogg
