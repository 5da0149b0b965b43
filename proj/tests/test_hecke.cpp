#include "doctest.h"
#include "ogg/hecke.hpp"

using namespace ogg;

namespace {

std::vector<std::int64_t> squarefree_levels(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t N = lo; N <= hi; ++N)
    if (is_squarefree(N)) out.push_back(N);
  return out;
}

// coefficient rows of sum_j c_j forms[j]
Series combination(const JointBasis& M, const IntVector& c) {
  Series f(M.precision);
  for (Index j = 0; j < M.rank(); ++j) f = f + Rational(c(j)) * M.forms[static_cast<std::size_t>(j)];
  return f;
}

// ord_p of the numerator of (N - 1) / 12, the order of the cuspidal group for
// prime level
int prime_level_order(std::int64_t N, std::int64_t p) {
  const Rational x(N - 1, 12);
  return valuation(Integer(numerator(x)), p);
}

}  // namespace

TEST_CASE("integral basis of M_2(N)") {
  CHECK(m_integral_basis(11).rank() == 2);
  CHECK(m_integral_basis(15).rank() == 4);
  CHECK(m_integral_basis(6).rank() == 3);

  for (std::int64_t N : {11, 15, 30, 35}) {
    const JointBasis M = m_integral_basis(N);
    const Index B = sturm_bound(N);
    CHECK(M.rank() == M.genus + M.eisenstein_rank);
    // saturated in coefficient space
    IntMatrix rows(M.rank(), B + 1);
    for (Index j = 0; j < M.rank(); ++j)
      for (Index n = 0; n <= B; ++n) rows(j, n) = numerator(M.forms[static_cast<std::size_t>(j)][n]);
    const Lattice L = Lattice::span(rows);
    CHECK(saturate(L) == L);
    // the Eisenstein sublattice is E_2(N, Z)
    IntMatrix E = M.eis_sublattice * rows;
    CHECK(Lattice::span(E) == eis_integral_lattice(N).lattice);
  }
}

TEST_CASE("Hecke matrices on M agree with the action on q-expansions") {
  for (std::int64_t N : {11, 14, 15, 26, 30}) {
    const std::int64_t B = sturm_bound(N);
    const JointBasis M = m_integral_basis(N, std::max<std::int64_t>(working_precision(N), N * B));
    for (std::int64_t n = 1; n <= B; ++n) {
      const IntMatrix& T = M.hecke_matrix(n);
      for (Index j = 0; j < M.rank(); ++j) {
        const Series image = hecke_on_series(M.forms[static_cast<std::size_t>(j)], n, N);
        CHECK(image.precision() >= B);
        CHECK(agree(image, combination(M, IntVector(T.row(j)))));
      }
    }
    for (auto l : prime_divisors(N)) {
      const Series image = hecke_on_series(M.forms.back(), l, N);
      CHECK(agree(image, combination(M, IntVector(M.hecke_matrix(l).row(M.rank() - 1)))));
    }
  }
}

TEST_CASE("Hecke operators on series commute on the integral basis") {
  for (std::int64_t N : {11, 15}) {
    const JointBasis M = m_integral_basis(N, 300);
    for (const auto& f : M.forms)
      for (std::int64_t n = 2; n <= 12; ++n)
        for (std::int64_t m = n + 1; m <= 12; ++m)
          CHECK(agree(hecke_on_series(hecke_on_series(f, n, N), m, N), hecke_on_series(hecke_on_series(f, m, N), n, N)));
  }
}

TEST_CASE("Hecke algebras") {
  const JointBasis M11 = m_integral_basis(11);
  const MatrixAlgebra full = hecke_algebra(M11, Space::full);
  const MatrixAlgebra cusp = hecke_algebra(M11, Space::cuspidal);
  CHECK(full.rank() == 2);
  CHECK(cusp.rank() == 1);
  CHECK(full.contains(IntMatrix::Identity(2, 2)));
  CHECK(cusp.contains(IntMatrix::Identity(1, 1)));
  CHECK(cusp.basis()[0] == IntMatrix::Identity(1, 1));
  for (std::int64_t n = 1; n <= 30; ++n) CHECK(full.contains(M11.hecke_matrix(n)));

  for (std::int64_t N : {6, 30, 42}) {
    const JointBasis M = m_integral_basis(N);
    const MatrixAlgebra A = hecke_algebra(M, Space::full);
    CHECK(A.rank() == M.rank());
    const IntVector one = A.one();
    for (Index i = 0; i < A.rank(); ++i) {
      IntVector e = IntVector::Zero(A.rank());
      e(i) = 1;
      CHECK(A.product(one, e) == e);
      for (Index j = 0; j < A.rank(); ++j) {
        IntVector f = IntVector::Zero(A.rank());
        f(j) = 1;
        CHECK(A.element(A.product(e, f)) == A.basis()[static_cast<std::size_t>(i)] * A.basis()[static_cast<std::size_t>(j)]);
      }
    }
  }
}

TEST_CASE("Eisenstein ideal") {
  CHECK(eisenstein_quotient(hecke_level(11)).free_rank() == 1);
  CHECK(eisenstein_quotient(hecke_level(15)).free_rank() == 3);
  const HeckeLevel H30 = hecke_level(30);
  CHECK(eisenstein_quotient(H30).free_rank() == 7);
  CHECK(eisenstein_quotient(H30).torsion_order() == 1);

  // I~ kills every E_d, written in coordinates of the basis of M
  for (std::int64_t N : {15, 35}) {
    const HeckeLevel H = hecke_level(N);
    const RatMatrix to_M = inverse(H.M.adapted);
    for (Index j = 0; j < H.M.eisenstein_rank; ++j) {
      const RatVector e = to_M.row(H.M.genus + j);
      for (Index i = 0; i < H.Itilde.rank(); ++i) {
        const IntMatrix t = H.Ttilde.element(IntVector(H.Itilde.lattice.basis().row(i)));
        CHECK((e * to_rational(t)).isZero());
      }
    }
  }
}

TEST_CASE("index of I in T") {
  const HeckeLevel H11 = hecke_level(11);
  CHECK(cuspidal_ideal_index(H11, 5) == 1);
  CHECK(cuspidal_ideal_index(H11, 7) == 0);
  CHECK(cuspidal_ideal_index(6, 5) == 0);
  CHECK_THROWS_AS(cuspidal_ideal_index(H11, 3), PreconditionError);
  CHECK_THROWS_AS(cuspidal_ideal_index(H11, 11), PreconditionError);

  for (std::int64_t N : {17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59}) {
    const HeckeLevel H = hecke_level(N);
    for (auto p : primes_up_to(100))
      if ((6 * N) % p != 0) CHECK_MESSAGE(cuspidal_ideal_index(H, p) == prime_level_order(N, p), "N = " << N << ", p = " << p);
  }
}

TEST_CASE("ideal J") {
  const HeckeLevel H11 = hecke_level(11);
  const JReport rep = ideal_J(H11, 5);
  CHECK(rep.contained);
  CHECK(rep.index_ppart == 0);
  CHECK(rep.equals_ppart());
  CHECK(rep.memberships.size() == 2);
  CHECK(rep.memberships_ok());
  CHECK(rep.memberships[0].name == "(U_11-1)(U_11-11)");
  CHECK(std::find(rep.primes.begin(), rep.primes.end(), 5) == rep.primes.end());
  CHECK_THROWS_AS(ideal_J(H11, 5, 10), PreconditionError);

  for (std::int64_t N : {15, 30, 35}) {
    const HeckeLevel H = hecke_level(N);
    for (std::int64_t p : {7, 11, 13, 17}) {
      if (N % p == 0) continue;
      const JReport r = ideal_J(H, p);
      CHECK(r.equals_ppart());
      CHECK(r.memberships_ok());
    }
  }
}

TEST_CASE("presentation ring") {
  const PresentationRing R(30);
  CHECK(R.rank() == 7);
  CHECK(R.name(0) == "1");
  CHECK(R.name(3) == "x2*x3");
  // x3 * x3 = 2 x3, x2 * x3 * x5 = 0
  CHECK(R.multiply(2, 2) == std::pair<Integer, Index>(Integer(2), 2));
  CHECK(R.multiply(3, 4).second == -1);

  const PresentationReport r11 = presentation_check(hecke_level(11), 7);
  CHECK(r11.ring_rank == 1);
  CHECK(r11.quotient_rank == 1);
  CHECK(r11.ok());
  const PresentationReport r15 = presentation_check(hecke_level(15), 7);
  CHECK(r15.ring_rank == 3);
  CHECK(r15.quotient_rank == 3);
  CHECK(r15.ok());
  const PresentationReport r30 = presentation_check(hecke_level(30), 11);
  CHECK(r30.quotient_rank == 7);
  CHECK(r30.ok());
}

TEST_CASE("M / (S + E)") {
  const HeckeLevel H11 = hecke_level(11);
  CHECK(x_group(H11, 5).invariant_factors == std::vector<Integer>{5});
  CHECK(x_group(H11, 7).trivial());
  for (std::int64_t N : {26, 35, 39}) {
    const HeckeLevel H = hecke_level(N);
    for (std::int64_t p : {5, 7, 11, 13})
      if ((6 * N) % p != 0) CHECK(x_group(H, p).torsion_valuation(p) == cuspidal_ideal_index(H, p));
  }
}

TEST_CASE("duality pairing") {
  const Factorization f11 = duality_gram_check(hecke_level(11));
  CHECK(support_within_6N(f11, 11));
  for (auto N : squarefree_levels(2, 30)) {
    const HeckeLevel H = hecke_level(N);
    CHECK(H.Ttilde.rank() == H.M.rank());
    CHECK_MESSAGE(support_within_6N(duality_gram_check(H), N), "N = " << N);
  }
}
