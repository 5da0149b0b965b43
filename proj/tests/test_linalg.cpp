#include "doctest.h"
#include "ogg/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace ogg;

namespace {

IntMatrix M(std::initializer_list<std::initializer_list<int>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  IntMatrix A(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (int v : row) A(i, j++) = v;
    ++i;
  }
  return A;
}

IntMatrix random_matrix(std::mt19937& rng, Index r, Index c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix A(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) A(i, j) = dist(rng);
  return A;
}

// Product of random elementary operations.
IntMatrix random_unimodular(std::mt19937& rng, Index n) {
  IntMatrix P = IntMatrix::Identity(n, n);
  std::uniform_int_distribution<Index> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int k = 0; k < 4 * n; ++k) {
    Index i = idx(rng), j = idx(rng);
    if (i == j) {
      P.row(i) *= Integer(-1);
    } else {
      P.row(i) += Integer(coef(rng)) * P.row(j);
    }
  }
  return P;
}

// Oracle: det(x I - A) by permutation expansion with polynomial entries.
IntPoly brute_charpoly(const IntMatrix& A) {
  const Index n = A.rows();
  auto entry = [&](Index i, Index j) {
    IntPoly p{Integer(-A(i, j))};
    if (i == j) p.push_back(1);
    return p;
  };
  auto mul = [](const IntPoly& a, const IntPoly& b) {
    IntPoly c(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  IntPoly total(static_cast<std::size_t>(n + 1), Integer(0));
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    IntPoly term{Integer(inversions % 2 == 0 ? 1 : -1)};
    for (Index i = 0; i < n; ++i) term = mul(term, entry(i, perm[static_cast<std::size_t>(i)]));
    for (std::size_t k = 0; k < term.size(); ++k) total[k] += term[k];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("hnf examples") {
  auto id = hnf(IntMatrix::Identity(2, 2));
  CHECK(id.H == IntMatrix::Identity(2, 2));
  CHECK(id.U == IntMatrix::Identity(2, 2));

  auto h = hnf(M({{2, 4}, {6, 8}}));
  CHECK(h.H == M({{2, 0}, {0, 4}}));
  CHECK(h.U * M({{2, 4}, {6, 8}}) == h.H);
  CHECK(abs(determinant(h.U)) == 1);

  auto z = hnf(M({{0, 0}}));
  CHECK(z.rank == 0);
  CHECK(z.H.rows() == 0);
}

TEST_CASE("hnf is canonical under unimodular row operations") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Index r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
    IntMatrix A = random_matrix(rng, r, c, -6, 6);
    IntMatrix P = random_unimodular(rng, r);
    auto h = hnf(A);
    CHECK(hnf_basis(P * A) == h.H);
    CHECK(abs(determinant(h.U)) == 1);
    CHECK(IntMatrix((h.U * A).topRows(h.rank)) == h.H);
    // rows past the rank span the left kernel
    CHECK(IntMatrix(h.U.bottomRows(r - h.rank) * A).isZero());
  }
}

TEST_CASE("snf examples") {
  CHECK(snf(M({{2, 0}, {0, 4}})).invariant_factors == std::vector<Integer>{2, 4});
  CHECK(snf(IntMatrix::Identity(3, 3)).invariant_factors.empty());
  CHECK(snf(M({{0, 0}})).invariant_factors == std::vector<Integer>{0, 0});
  CHECK(snf(M({{2, 4}, {6, 8}})).invariant_factors == std::vector<Integer>{2, 4});
  CHECK(snf(M({{6, 0}, {0, 10}})).invariant_factors == std::vector<Integer>{2, 30});
}

TEST_CASE("snf factors multiply to |det| and transforms are consistent") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + trial % 5;
    IntMatrix A = random_matrix(rng, n, n, -9, 9);
    auto s = smith(A);
    CHECK(s.U * A * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    const auto& f = s.invariants.invariant_factors;
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      if (f[i + 1] != 0) CHECK(f[i + 1] % f[i] == 0);
    const Integer det = abs(determinant(A));
    if (det != 0) CHECK(s.invariants.torsion_order() == det);
    else CHECK(s.invariants.free_rank() > 0);
  }
}

TEST_CASE("saturate") {
  CHECK(saturate(Lattice::span(M({{2, 0}}))) == Lattice::span(M({{1, 0}})));
  CHECK(saturate(Lattice::span(M({{2, 4}, {6, 8}}))) == Lattice::standard(2));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Lattice L = Lattice::span(random_matrix(rng, 1 + trial % 3, 4, -5, 5));
    Lattice S = saturate(L);
    CHECK(S.rank() == L.rank());
    CHECK(S.contains(L));
    CHECK(saturate(S) == S);
  }
}

TEST_CASE("index_ppart") {
  Lattice Z2 = Lattice::standard(2);
  Lattice L = Lattice::span(M({{2, 4}, {6, 8}}));
  CHECK(index_ppart(L, L, 2) == 0);
  CHECK(index_ppart(Z2, L, 2) == 3);
  CHECK(index_ppart(Z2, L, 5) == 0);
  CHECK_THROWS_AS(index_ppart(L, Z2, 2), PreconditionError);
  CHECK_THROWS_AS(index_ppart(Z2, Lattice::span(M({{1, 0}})), 2), PreconditionError);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix A = random_matrix(rng, 3, 3, -4, 4), B = random_matrix(rng, 3, 3, -4, 4);
    if (determinant(A) == 0 || determinant(B) == 0) continue;
    Lattice L1 = Lattice::standard(3), L2 = Lattice::span(A), L3 = Lattice::span(B * A);
    for (std::int64_t p : {2, 3, 5, 7})
      CHECK(index_ppart(L1, L3, p) == index_ppart(L1, L2, p) + index_ppart(L2, L3, p));
  }
}

TEST_CASE("charpoly examples") {
  CHECK(charpoly(IntMatrix(0, 0)) == IntPoly{1});
  CHECK(charpoly(M({{0, 1}, {1, 0}})) == IntPoly{-1, 0, 1});
  CHECK(charpoly(IntMatrix(IntMatrix::Identity(3, 3))) == IntPoly{-1, 3, -3, 1});
  CHECK_THROWS_AS(charpoly(M({{1, 2}})), PreconditionError);
}

TEST_CASE("charpoly agrees with cofactor expansion") {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 1200; ++trial) {
    const Index n = 1 + trial % 4;
    IntMatrix A = random_matrix(rng, n, n, -3, 3);
    CHECK(charpoly(A) == brute_charpoly(A));
    ++checked;
  }
  CHECK(checked >= 1000);
}

TEST_CASE("poly_sqrt") {
  CHECK(poly_sqrt(IntPoly{4, 4, 1}) == IntPoly{2, 1});
  CHECK(poly_sqrt(IntPoly{1}) == IntPoly{1});
  CHECK_FALSE(poly_sqrt(IntPoly{3, 4, 1}).has_value());
  CHECK_FALSE(poly_sqrt(IntPoly{0, 1}).has_value());
}

TEST_CASE("integer combinations and p-local membership") {
  IntMatrix rows = M({{2, 4}, {6, 8}});
  auto z = solve_integer_combination(rows, IntVector(M({{2, 0}})));
  REQUIRE(z.has_value());
  CHECK(IntMatrix(*z * rows) == M({{2, 0}}));
  CHECK_FALSE(solve_integer_combination(rows, IntVector(M({{1, 0}}))).has_value());
  Lattice L = Lattice::span(rows);
  CHECK(contains_plocal(L, IntVector(M({{1, 0}})), 5));
  CHECK_FALSE(contains_plocal(L, IntVector(M({{1, 0}})), 2));
}

TEST_CASE("left kernel is saturated") {
  IntMatrix A = M({{2, 4}, {1, 2}, {3, 6}});
  IntMatrix K = left_kernel(A);
  CHECK(K.rows() == 2);
  CHECK(IntMatrix(K * A).isZero());
  CHECK(saturate(Lattice::span(K)) == Lattice::span(K));
}
